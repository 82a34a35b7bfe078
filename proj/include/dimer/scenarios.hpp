// Copyright 2026 The dimer-dynamics Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "dimer/entanglement.hpp"
#include "dimer/model.hpp"
#include "dimer/propagation.hpp"
#include "dimer/errors.hpp"

#include <string>
#include <utility>
#include <vector>

namespace dimer {

enum class InitialFamily {
    ground,        ///< |00>
    psi_alpha,     ///< sqrt(alpha)|01> + e^{i phi} sqrt(1-alpha)|10>
    psi_zero_one,  ///< sqrt(alpha)|00> + e^{i phi} sqrt(1-alpha)|11>
    product,       ///< product of single-qubit superpositions (gamma, zeta)
    x_family,      ///< X state (a/3, 1/3, 1/3, (1-a)/3, w = 0, z = 1/3)
    x_state,       ///< general X state
    werner,        ///< p |psi+><psi+| + (1-p) I/4
};

std::string to_string(InitialFamily f);
InitialFamily initial_family_from_string(const std::string& name);

/// Initial-state family with all of its parameters; only those relevant to
/// `family` are read.
struct InitialState {
    InitialFamily family = InitialFamily::ground;
    double alpha = 0.5;
    double phi = 0.0;
    double gamma = 1.0;
    double zeta = 1.0;
    double phase1 = 0.0;
    double phase2 = 0.0;
    double a = 0.0;
    double p = 1.0;
    XStateSpec x{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};

    DensityMatrix build() const;

    bool operator==(const InitialState& o) const;
};

enum class PresetKind { spectrum, dynamics };

struct AxisRange {
    std::string name;
    double start = 0.0;
    double stop = 1.0;
    int points = 51;

    std::vector<double> values() const;
};

struct ScenarioPreset {
    std::string name;
    std::string description;
    PresetKind kind = PresetKind::dynamics;
    DimerParams params;
    InitialState initial;
    AxisRange axis;                  ///< default sweep axis
    double horizon_gamma_units = 10; ///< horizon in units of 1 / mean_gamma
    int samples = 400;
    double grid_start_mhz = -2500;   ///< spectrum presets: delta_plus / 2 grid
    double grid_stop_mhz = 2500;
    double grid_step_mhz = 5;

    double horizon_us() const { return horizon_gamma_units / params.mean_gamma(); }
};

/// Throws LookupError listing the registered names.
const ScenarioPreset& preset(const std::string& name);
std::vector<std::string> preset_names();

/// Sweep axes: initial-state parameters (alpha, gamma, zeta, a, p) or
/// generator parameters in MHz (ell_mhz sets both couplings, ell1_mhz,
/// ell2_mhz, v12_mhz, delta_e_mhz, delta_plus_mhz, delta_minus_mhz).
std::vector<std::string> axis_names();

/// Applies one axis value to a copy of the parameters and initial state.
/// Throws InvalidParameter for an unknown axis or one that does not belong
/// to the preset's family.
void apply_axis(const std::string& axis, double value, DimerParams& params, InitialState& initial);

struct SweepOptions {
    double tol = 1e-9;
    int threads = 1;
    int samples = 0;                  ///< 0 keeps the preset's sample count
    double horizon_gamma_units = 0;   ///< 0 keeps the preset's horizon
};

struct SweepGrid {
    std::string preset;
    std::string axis;
    std::vector<double> axis_values;
    std::vector<double> times;
    std::vector<EntanglementSeries> rows;  ///< one per axis value
    double tol = 0.0;

    double value(std::size_t row, std::size_t col) const { return rows[row].values[col]; }
};

/// Evolves every axis point concurrently and records its concurrence series.
/// Integration failures are rethrown with the axis value and failure time.
SweepGrid run_sweep(const ScenarioPreset& preset, const std::string& axis, const std::vector<double>& values,
                    const SweepOptions& opts = {});

/// Horizon-dependent data shared by a sweep row and a direct run.
std::vector<double> sweep_times(const ScenarioPreset& preset, const SweepOptions& opts);

class NonStationary : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

struct StationaryConcurrence {
    double steady;     ///< concurrence of the steady state
    double tail_mean;  ///< mean concurrence over the last 10% of the horizon
};

/// Steady-state concurrence for one axis value, cross-checked against the
/// tail of an evolved trajectory. Needs horizon >= 20 / mean_gamma; throws
/// NonStationary when the two differ by more than 0.01.
StationaryConcurrence stationary_concurrence(const ScenarioPreset& preset, const std::string& axis,
                                             double axis_value, double horizon_us, double tol = 1e-9);

}  // namespace dimer
