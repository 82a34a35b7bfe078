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

#include "dimer/generator.hpp"
#include "dimer/model.hpp"

#include <string>
#include <vector>

namespace dimer {

enum class Method {
    dormand_prince45,  ///< adaptive embedded 4(5) pair
    rk4_fixed,         ///< classical RK4 with a fixed step, for convergence checks
};

std::string to_string(Method m);

struct EvolveOptions {
    double tol = 1e-9;          ///< error tolerance (relative and absolute); steps target tol / 512
    Method method = Method::dormand_prince45;
    double fixed_step_us = 0.0; ///< rk4_fixed only; must be > 0
};

struct TrajectoryMeta {
    Method method = Method::dormand_prince45;
    double tol = 0.0;
    double fixed_step_us = 0.0;
    long accepted_steps = 0;
    long rejected_steps = 0;
};

struct Trajectory {
    std::vector<double> times;  // us, times[0] == 0
    std::vector<DensityMatrix> states;
    TrajectoryMeta meta;
};

/// Uniform grid of `samples` points on [0, horizon].
std::vector<double> uniform_times(double horizon_us, int samples);

/// Integrates d rho / dt = -i [H, rho] + L(rho) and samples the solution at
/// `times`, stepping exactly onto every sample. Throws InvalidParameter for a
/// bad grid or tolerance and IntegrationFailure on step-size underflow.
Trajectory evolve(const DensityMatrix& rho0, const DimerParams& params,
                  const std::vector<double>& times, const EvolveOptions& opts = {});

/// Same, reusing an already assembled generator.
Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& generator,
                  const std::vector<double>& times, const EvolveOptions& opts = {});

/// unvec(exp(L t) vec(rho0)).
DensityMatrix propagate_expm(const DensityMatrix& rho0, const DimerParams& params, double t_us);

/// Closed-form state for the undriven, uncoupled pair (v12 = gamma12 = ell = 0,
/// gamma1 = gamma2 = gamma) started from sqrt(alpha)|00> + sqrt(1-alpha)|11>.
/// The |00><11| coherence decays as e^{-gamma t} and rotates at the energy of
/// |11> in the laser frame, delta_plus + delta_e.
DensityMatrix analytic_undriven_state(double alpha, double t_us, double gamma, double delta_e,
                                      double delta_plus);

}  // namespace dimer
