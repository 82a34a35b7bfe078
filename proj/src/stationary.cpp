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

#include "dimer/stationary.hpp"

#include "dimer/errors.hpp"
#include "dimer/parallel.hpp"

#include <fmt/format.h>

#include <cmath>

namespace dimer {

namespace {

constexpr double kResidualBound = 1e-10;
constexpr double kKernelGap = 1e-8;

double residual(const Mat16& l, const Vec16& x) { return max_abs(l * x); }

}  // namespace

DensityMatrix steady_state(const DimerParams& params) {
    const Mat16 l = build_liouvillian(params).matrix;

    const Eigen::JacobiSVD<Mat16> svd(l);
    const auto& sigma = svd.singularValues();
    if (sigma(14) < kKernelGap * sigma(0) || sigma(0) == 0.0)
        throw NonUniqueSteadyState(fmt::format(
            "generator kernel is not one-dimensional (second smallest singular value {:.3g}, norm {:.3g})",
            sigma(14), sigma(0)));

    // Row 0 is the d/dt rho_00,00 equation; the trace row is a left null
    // vector, so swapping it in keeps the system non-singular.
    Mat16 a = l;
    a.row(0).setZero();
    for (int i = 0; i < 4; ++i) a(0, 5 * i) = 1.0;
    Vec16 rhs = Vec16::Zero();
    rhs(0) = 1.0;

    Vec16 x = a.partialPivLu().solve(rhs);
    if (!x.allFinite() || residual(l, x) > kResidualBound) {
        Eigen::Matrix<cplx, 17, 16> stacked;
        stacked.topRows<16>() = l;
        stacked.row(16).setZero();
        for (int i = 0; i < 4; ++i) stacked(16, 5 * i) = 1.0;
        Eigen::Matrix<cplx, 17, 1> b = Eigen::Matrix<cplx, 17, 1>::Zero();
        b(16) = 1.0;
        x = stacked.completeOrthogonalDecomposition().solve(b);
        if (!x.allFinite() || residual(l, x) > kResidualBound)
            throw NumericalFailure(fmt::format("steady-state solve failed (residual {:.3g})", residual(l, x)));
    }

    Mat4 rho = unvec(x);
    rho = 0.5 * (rho + rho.adjoint());
    return DensityMatrix::unchecked(rho / rho.trace().real());
}

double steady_state_residual(const DimerParams& params, const DensityMatrix& rho) {
    return residual(build_liouvillian(params).matrix, vec(rho.matrix()));
}

double fluorescence_signal(const DensityMatrix& rho) {
    return rho.population(k01) + rho.population(k10) + 2.0 * rho.population(k11);
}

SpectrumCurve spectrum_scan(const DimerParams& base, const std::vector<double>& grid, int threads) {
    if (grid.empty()) throw InvalidParameter("detuning grid is empty");
    for (std::size_t k = 1; k < grid.size(); ++k)
        if (!(grid[k] > grid[k - 1])) throw InvalidParameter("detuning grid must be increasing");

    const std::size_t n = grid.size();
    SpectrumCurve curve{grid, std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
                        std::vector<double>(n)};
    parallel_for(n, threads, [&](std::size_t k) {
        DimerParams p = base;
        p.delta_plus = to_angular(2.0 * grid[k], QuotedAs::frequency);
        try {
            const auto rho = steady_state(p);
            curve.signal[k] = fluorescence_signal(rho);
            curve.p01[k] = rho.population(k01);
            curve.p10[k] = rho.population(k10);
            curve.p11[k] = rho.population(k11);
        } catch (const NonUniqueSteadyState& e) {
            throw NonUniqueSteadyState(fmt::format("at delta_plus/2 = {} MHz: {}", grid[k], e.what()));
        } catch (const NumericalFailure& e) {
            throw NumericalFailure(fmt::format("at delta_plus/2 = {} MHz: {}", grid[k], e.what()));
        }
    });
    return curve;
}

std::vector<Peak> find_peaks(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        if (!(y[i] > y[i - 1] && y[i] > y[i + 1])) continue;
        // Vertex of the parabola through the three samples.
        const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
        const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
        const double d01 = (y1 - y0) / (x1 - x0);
        const double d12 = (y2 - y1) / (x2 - x1);
        const double curvature = (d12 - d01) / (x2 - x0);
        const double slope = d01 - curvature * (x0 + x1);
        double loc = x1, height = y1;
        if (curvature < 0.0) {
            loc = -slope / (2.0 * curvature);
            height = y0 + d01 * (loc - x0) + curvature * (loc - x0) * (loc - x1);
        }
        peaks.push_back({loc, height});
    }
    return peaks;
}

std::vector<double> linear_grid(double start, double stop, double step) {
    if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop))
        throw InvalidParameter("grid needs start <= stop and a positive step");
    const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 0.5)) + 1;
    std::vector<double> g(n);
    for (std::size_t k = 0; k < n; ++k) g[k] = start + static_cast<double>(k) * step;
    return g;
}

}  // namespace dimer
