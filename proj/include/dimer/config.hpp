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

#include "dimer/model.hpp"
#include "dimer/scenarios.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dimer {

/// The [system] block in quoted MHz. Rates carry the `_mhz_over_2pi` suffix,
/// frequencies the `_mhz` suffix; both scale by 2pi on conversion. Unset
/// fields fall back to the preset, if any.
struct SystemBlock {
    std::optional<double> gamma1_mhz_over_2pi;
    std::optional<double> gamma2_mhz_over_2pi;
    std::optional<double> gamma12_mhz_over_2pi;
    std::optional<double> v12_mhz;
    std::optional<double> delta_minus_mhz;
    std::optional<double> delta_plus_mhz;
    std::optional<double> delta_e_mhz;
    std::optional<double> ell1_mhz;
    std::optional<double> ell2_mhz;

    bool operator==(const SystemBlock&) const = default;
};

struct GridBlock {
    std::optional<double> t_end_us;
    std::optional<double> t_end_gamma_units;
    std::optional<int> samples;
    std::optional<double> tol;
    std::optional<double> detuning_start_mhz;  ///< delta_plus / 2 grid for spectra
    std::optional<double> detuning_stop_mhz;
    std::optional<double> detuning_step_mhz;
    std::optional<std::string> axis;
    std::optional<double> axis_start;
    std::optional<double> axis_stop;
    std::optional<int> axis_points;
    std::optional<double> esd_eps;

    bool operator==(const GridBlock&) const = default;
};

struct OutputBlock {
    std::optional<std::string> path;
    std::optional<std::string> sidecar;

    bool operator==(const OutputBlock&) const = default;
};

struct RunConfig {
    std::optional<std::string> preset;
    SystemBlock system;
    std::optional<InitialState> initial;
    GridBlock grid;
    OutputBlock output;

    bool operator==(const RunConfig&) const = default;

    /// Preset parameters with the [system] overrides applied, in rad/us.
    DimerParams params() const;
    /// [initial_state], else the preset's initial state, else |00>.
    InitialState initial_state() const;
    /// The named preset, or a dynamics preset built from this config.
    ScenarioPreset base_preset() const;

    double tol() const { return grid.tol.value_or(1e-9); }
    /// Horizon in us; defaults to the preset's horizon.
    double horizon_us() const;
    int samples() const;
    double esd_eps() const { return grid.esd_eps.value_or(1e-6); }
    std::vector<double> detuning_grid_mhz() const;
    AxisRange axis() const;
};

struct ParseOptions {
    bool permissive = false;  ///< ignore unknown keys instead of rejecting them
};

/// Parses an INI document with [system], [initial_state], [grid] and
/// [output] sections. Throws ConfigError carrying the offending key path.
RunConfig parse_config(const std::string& text, const ParseOptions& opts = {});

RunConfig load_config(const std::string& path, const ParseOptions& opts = {});

/// INI text that parse_config maps back to an identical RunConfig.
std::string serialize(const RunConfig& config);

/// Config reproducing a registered preset.
RunConfig config_for_preset(const std::string& name);

/// Keys required in [system] when no preset is named.
std::vector<std::string> required_system_keys();

}  // namespace dimer
