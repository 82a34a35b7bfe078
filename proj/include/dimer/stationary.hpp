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

#include <vector>

namespace dimer {

/// Unique normalized kernel vector of the Liouvillian. One diagonal row of
/// L vec(rho) = 0 is replaced by the trace condition and the system is LU
/// solved; a least-squares solve of the stacked system is the fallback.
/// Throws NonUniqueSteadyState when the second-smallest singular value of L
/// is below 1e-8 ||L||, NumericalFailure if no solve meets the residual bound.
DensityMatrix steady_state(const DimerParams& params);

/// max |L vec(rho)|
double steady_state_residual(const DimerParams& params, const DensityMatrix& rho);

/// rho_01,01 + rho_10,10 + 2 rho_11,11
double fluorescence_signal(const DensityMatrix& rho);

struct SpectrumCurve {
    std::vector<double> detuning_mhz;  ///< delta_plus / 2 in MHz
    std::vector<double> signal;
    std::vector<double> p01, p10, p11;
};

/// Steady state for every delta_plus / 2 in `detuning_grid_mhz` (increasing).
/// Failures are rethrown with the offending grid point in the message.
SpectrumCurve spectrum_scan(const DimerParams& base, const std::vector<double>& detuning_grid_mhz,
                            int threads = 1);

struct Peak {
    double location_mhz;
    double height;
};

/// Strict local maxima of `values` over `axis`, refined with a three-point
/// parabola, sorted by location.
std::vector<Peak> find_peaks(const std::vector<double>& axis, const std::vector<double>& values);

inline std::vector<Peak> find_peaks(const SpectrumCurve& c) { return find_peaks(c.detuning_mhz, c.signal); }

/// Inclusive grid start, start + step, ..., stop (within half a step).
std::vector<double> linear_grid(double start, double stop, double step);

}  // namespace dimer
