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
#include "dimer/propagation.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace dimer {

/// (sigma_y (x) sigma_y) rho^* (sigma_y (x) sigma_y)
Mat4 spin_flip(const Mat4& rho);

struct ConcurrenceDetail {
    Eigen::Vector4d lambdas;  ///< descending
    double margin;            ///< lambda1 - lambda2 - lambda3 - lambda4, may be negative
    double concurrence;       ///< max(0, margin), clamped to [0, 1]
};

/// Wootters concurrence. The lambdas are the singular values of
/// sqrt(rho) (sigma_y (x) sigma_y) sqrt(rho)^*, i.e. the square roots of the
/// eigenvalues of rho rho~, obtained without squaring so small values stay
/// accurate. Throws NumericalFailure if rho has an eigenvalue below -1e-8.
ConcurrenceDetail concurrence_detail(const Mat4& rho);

inline double concurrence(const DensityMatrix& rho) { return concurrence_detail(rho.matrix()).concurrence; }

struct EntanglementSeries {
    std::vector<double> times;
    std::vector<double> values;   ///< concurrence, clamped to [0, 1]
    std::vector<double> margins;  ///< signed lambda1 - lambda2 - lambda3 - lambda4; may be empty
};

/// Concurrence at every sample; errors name the failing sample index.
EntanglementSeries concurrence_series(const Trajectory& traj);

enum class EventKind { death, birth };

std::string to_string(EventKind k);

struct EsdEvent {
    EventKind kind;
    double time_us;
    bool resolved;  ///< true when bisection refinement converged
};

/// Recomputes the signed Wootters margin at an arbitrary time so a crossing
/// can be bracketed more finely than the sample grid.
struct Refinement {
    std::function<double(double)> margin_at;
    double resolution_us;
};

/// Refinement backed by exact propagation from the nearest earlier sample.
Refinement make_refinement(const Trajectory& traj, const DimerParams& params, double resolution_us);

/// First death: the concurrence drops from above eps to at most eps and stays
/// there for three consecutive samples. When margins are present the run
/// must also contain a sample with margin < -eps; asymptotic decay keeps the
/// margin non-negative and is not reported. The event time is the margin
/// zero crossing (linear interpolation, or bisection with `refine`), falling
/// back to the eps crossing without margins.
std::optional<EsdEvent> detect_death(const EntanglementSeries& series, double eps = 1e-6,
                                     const Refinement* refine = nullptr);

/// First birth in a series that starts at or below eps: the concurrence rises
/// above eps and stays above for three consecutive samples. Returns nullopt
/// when no birth happens or the series starts entangled.
std::optional<EsdEvent> detect_birth(const EntanglementSeries& series, double eps = 1e-6);

/// Samples with time >= t_us.
EntanglementSeries tail_from(const EntanglementSeries& series, double t_us);

/// Alternating deaths and births in time order: a death is sought while the
/// series is above eps, a birth while it is at or below, each in the tail
/// after the previous event.
std::vector<EsdEvent> detect_events(const EntanglementSeries& series, double eps = 1e-6,
                                    const Refinement* refine = nullptr);

/// Death time of the X family (a/3, 1/3, 1/3, (1-a)/3, w = 0, z = 1/3) under
/// independent decay at rate gamma:
///   t = ln[(1 - a)/(2 - 3a) (2 - a + sqrt(a^2 - a + 2))] / gamma,  a < 2/3.
std::optional<double> esd_time_x_family(double a, double gamma);

/// Death time of sqrt(alpha)|00> + sqrt(1-alpha)|11> under independent decay:
///   t = ln|(1 - alpha) / (1 - alpha - sqrt(alpha - alpha^2))| / gamma,  alpha < 1/2.
std::optional<double> esd_time_pair_superposition(double alpha, double gamma);

}  // namespace dimer
