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

#include "dimer/propagation.hpp"

#include "dimer/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace dimer {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

void check_times(const std::vector<double>& times) {
    if (times.empty()) throw InvalidParameter("time grid is empty");
    if (times.front() != 0.0) throw InvalidParameter("time grid must start at 0");
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!std::isfinite(times[k]) || !(times[k] > times[k - 1]))
            throw InvalidParameter("time grid must be finite and strictly increasing");
    }
}

double error_norm(const Vec16& err, const Vec16& y0, const Vec16& y1, double tol) {
    double worst = 0.0;
    for (int i = 0; i < 16; ++i) {
        const double scale = tol * (1.0 + std::sqrt(std::max(std::norm(y0(i)), std::norm(y1(i)))));
        const double r = std::norm(err(i)) / (scale * scale);
        if (!std::isfinite(r)) return std::numeric_limits<double>::infinity();
        worst = std::max(worst, r);
    }
    return std::sqrt(worst);
}

// Nonzero entries of the generator in row order. Undriven generators have
// about 30 nonzeros out of 256, so the stepper's matrix-vector products skip
// the rest.
class SparseGenerator {
public:
    explicit SparseGenerator(const Mat16& l) {
        for (int r = 0; r < 16; ++r) {
            for (int c = 0; c < 16; ++c) {
                if (l(r, c) == cplx(0.0, 0.0)) continue;
                cols_.push_back(c);
                values_.push_back(l(r, c));
            }
            row_end_[r] = static_cast<int>(cols_.size());
        }
    }

    Vec16 operator*(const Vec16& y) const {
        Vec16 out;
        int k = 0;
        for (int r = 0; r < 16; ++r) {
            cplx acc(0.0, 0.0);
            for (; k < row_end_[r]; ++k) acc += values_[k] * y(cols_[k]);
            out(r) = acc;
        }
        return out;
    }

    double max_row_sum() const {
        double worst = 0.0;
        int k = 0;
        for (int r = 0; r < 16; ++r) {
            double sum = 0.0;
            for (; k < row_end_[r]; ++k) sum += std::abs(values_[k]);
            worst = std::max(worst, sum);
        }
        return worst;
    }

private:
    std::vector<int> cols_;
    std::vector<cplx> values_;
    std::array<int, 16> row_end_{};
};

// Per-step error target as a fraction of the requested tolerance. Phase
// errors on fast coherences add up coherently, roughly steps * target / 200
// in total, so the controller works well below tol to keep the accumulated
// error over thousands of oscillation periods within a few tol.
constexpr double kStepTolerance = 1.0 / 512;
// Below this the error estimate is round-off.
constexpr double kStepToleranceFloor = 1e-15;

class AdaptiveStepper {
public:
    AdaptiveStepper(const Mat16& l, double tol) : l_(l), tol_(std::max(tol * kStepTolerance, kStepToleranceFloor)) {}

    /// Advances y from t to t_end exactly.
    void advance(Vec16& y, double& t, double t_end, TrajectoryMeta& meta) {
        if (h_ <= 0.0) {
            const double norm = l_.max_row_sum();
            h_ = norm > 0.0 ? 0.1 * std::pow(tol_, 0.2) / norm : (t_end - t);
        }
        if (!have_k1_) {
            k1_ = l_ * y;
            have_k1_ = true;
        }
        while (t < t_end) {
            const double min_step = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
            if (h_ < min_step)
                throw IntegrationFailure(fmt::format("step size underflow at t = {} us", t), t);

            bool hits_end = false;
            double h = h_;
            if (t + h >= t_end) {
                h = t_end - t;
                hits_end = true;
            }

            const Vec16 k2 = l_ * (y + h * (a21 * k1_));
            const Vec16 k3 = l_ * (y + h * (a31 * k1_ + a32 * k2));
            const Vec16 k4 = l_ * (y + h * (a41 * k1_ + a42 * k2 + a43 * k3));
            const Vec16 k5 = l_ * (y + h * (a51 * k1_ + a52 * k2 + a53 * k3 + a54 * k4));
            const Vec16 k6 = l_ * (y + h * (a61 * k1_ + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            const Vec16 y_new = y + h * (b1 * k1_ + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
            const Vec16 k7 = l_ * y_new;
            const Vec16 err = h * (e1 * k1_ + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

            const double en = error_norm(err, y, y_new, tol_);
            const double factor =
                en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
            if (en <= 1.0) {
                y = y_new;
                k1_ = k7;
                t = hits_end ? t_end : t + h;
                ++meta.accepted_steps;
                // A step shortened to land on a sample says nothing about the
                // admissible size, so keep the unclipped one.
                if (!hits_end || h == h_) h_ = h * factor;
            } else {
                ++meta.rejected_steps;
                h_ = h * std::min(1.0, factor);
            }
        }
    }

private:
    SparseGenerator l_;
    double tol_;
    double h_ = 0.0;
    Vec16 k1_;
    bool have_k1_ = false;
};

void rk4_advance(const Mat16& l, Vec16& y, double t, double t_end, double step, TrajectoryMeta& meta) {
    const double span = t_end - t;
    const long n = std::max(1L, static_cast<long>(std::ceil(span / step - 1e-9)));
    const double h = span / static_cast<double>(n);
    for (long k = 0; k < n; ++k) {
        const Vec16 k1 = l * y;
        const Vec16 k2 = l * (y + 0.5 * h * k1);
        const Vec16 k3 = l * (y + 0.5 * h * k2);
        const Vec16 k4 = l * (y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        ++meta.accepted_steps;
    }
}

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::dormand_prince45: return "dormand_prince45";
        case Method::rk4_fixed: return "rk4_fixed";
    }
    return "unknown";
}

std::vector<double> uniform_times(double horizon_us, int samples) {
    if (samples < 1) throw InvalidParameter("sample count must be positive");
    if (samples == 1) return {0.0};
    if (!(horizon_us > 0.0) || !std::isfinite(horizon_us))
        throw InvalidParameter("time horizon must be positive");
    std::vector<double> t(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) t[static_cast<std::size_t>(k)] = horizon_us * k / (samples - 1);
    return t;
}

Trajectory evolve(const DensityMatrix& rho0, const DimerParams& params, const std::vector<double>& times,
                  const EvolveOptions& opts) {
    return evolve(rho0, build_liouvillian(params), times, opts);
}

Trajectory evolve(const DensityMatrix& rho0, const Liouvillian& generator, const std::vector<double>& times,
                  const EvolveOptions& opts) {
    check_times(times);
    if (opts.method == Method::dormand_prince45 && !(opts.tol >= 1e-13 && opts.tol <= 1e-3))
        throw InvalidParameter(fmt::format("tolerance {} outside [1e-13, 1e-3]", opts.tol));
    if (opts.method == Method::rk4_fixed && !(opts.fixed_step_us > 0.0))
        throw InvalidParameter("rk4_fixed needs a positive step");

    Trajectory traj;
    traj.meta.method = opts.method;
    traj.meta.tol = opts.method == Method::dormand_prince45 ? opts.tol : 0.0;
    traj.meta.fixed_step_us = opts.method == Method::rk4_fixed ? opts.fixed_step_us : 0.0;
    traj.times = times;
    traj.states.reserve(times.size());
    traj.states.push_back(rho0);

    Vec16 y = vec(rho0.matrix());
    double t = 0.0;
    AdaptiveStepper stepper(generator.matrix, opts.tol);
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (opts.method == Method::dormand_prince45) {
            stepper.advance(y, t, times[k], traj.meta);
        } else {
            rk4_advance(generator.matrix, y, t, times[k], opts.fixed_step_us, traj.meta);
            t = times[k];
        }
        traj.states.push_back(DensityMatrix::unchecked(unvec(y)));
    }
    return traj;
}

DensityMatrix propagate_expm(const DensityMatrix& rho0, const DimerParams& params, double t_us) {
    if (!(t_us >= 0.0) || !std::isfinite(t_us)) throw InvalidParameter("propagation time must be >= 0");
    if (t_us == 0.0) return rho0;
    const Mat16 propagator = expm(build_liouvillian(params).matrix * t_us);
    return DensityMatrix::unchecked(unvec(propagator * vec(rho0.matrix())));
}

DensityMatrix analytic_undriven_state(double alpha, double t_us, double gamma, double delta_e,
                                      double delta_plus) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidParameter("alpha must lie in [0, 1]");
    if (!(t_us >= 0.0)) throw InvalidParameter("time must be >= 0");
    if (!(gamma > 0.0)) throw InvalidParameter("gamma must be positive");

    const double beta = 1.0 - alpha;
    const double decay = std::exp(-gamma * t_us);
    const double decay2 = decay * decay;

    Mat4 m = Mat4::Zero();
    m(k11, k11) = beta * decay2;
    m(k01, k01) = m(k10, k10) = beta * (decay - decay2);
    m(k00, k00) = 1.0 - beta * (2.0 * decay - decay2);
    const double phase = (delta_e + delta_plus) * t_us;
    m(k00, k11) = std::sqrt(alpha * beta) * decay * std::polar(1.0, phase);
    m(k11, k00) = std::conj(m(k00, k11));
    return DensityMatrix::unchecked(m);
}

}  // namespace dimer
