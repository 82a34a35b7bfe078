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

#include "dimer/entanglement.hpp"

#include "dimer/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace dimer {

namespace {

constexpr int kPersistence = 3;
constexpr double kNegativeEigenvalueLimit = -1e-8;

const Mat4& sigma_yy() {
    static const Mat4 m = [] {
        Mat4 y = Mat4::Zero();
        y(0, 3) = -1.0;
        y(1, 2) = 1.0;
        y(2, 1) = 1.0;
        y(3, 0) = -1.0;
        return y;
    }();
    return m;
}

double interpolate_zero(double t0, double f0, double t1, double f1) {
    if (f0 == f1) return t1;
    return t0 + (t1 - t0) * f0 / (f0 - f1);
}

bool all_at_most(const std::vector<double>& v, std::size_t from, double eps) {
    if (from + kPersistence > v.size()) return false;
    for (std::size_t k = from; k < from + kPersistence; ++k)
        if (v[k] > eps) return false;
    return true;
}

bool all_above(const std::vector<double>& v, std::size_t from, double eps) {
    if (from + kPersistence > v.size()) return false;
    for (std::size_t k = from; k < from + kPersistence; ++k)
        if (!(v[k] > eps)) return false;
    return true;
}

}  // namespace

Mat4 spin_flip(const Mat4& rho) { return sigma_yy() * rho.conjugate() * sigma_yy(); }

ConcurrenceDetail concurrence_detail(const Mat4& rho) {
    const Mat4 h = 0.5 * (rho + rho.adjoint());
    const auto eig = jacobi_eigen(h);
    if (eig.values(0) < kNegativeEigenvalueLimit)
        throw NumericalFailure(fmt::format("state is not positive semidefinite (eigenvalue {:.3g})", eig.values(0)));

    // Eigenvalues below the round-off floor are zeroed so that rank-deficient
    // states do not pick up sqrt(1e-16)-sized artifacts.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, eig.values(3));
    Mat4 root = Mat4::Zero();
    for (int k = 0; k < 4; ++k) {
        if (eig.values(k) <= floor) continue;
        const Vec4 col = eig.vectors.col(k);
        root += std::sqrt(eig.values(k)) * col * col.adjoint();
    }

    ConcurrenceDetail out{};
    out.lambdas = singular_values(root * sigma_yy() * root.conjugate());
    out.margin = out.lambdas(0) - out.lambdas(1) - out.lambdas(2) - out.lambdas(3);
    out.concurrence = std::clamp(out.margin, 0.0, 1.0);
    return out;
}

EntanglementSeries concurrence_series(const Trajectory& traj) {
    EntanglementSeries s;
    s.times = traj.times;
    s.values.reserve(traj.states.size());
    s.margins.reserve(traj.states.size());
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
        try {
            const auto d = concurrence_detail(traj.states[k].matrix());
            s.values.push_back(d.concurrence);
            s.margins.push_back(d.margin);
        } catch (const NumericalFailure& e) {
            throw NumericalFailure(fmt::format("sample {} (t = {} us): {}", k, traj.times[k], e.what()));
        }
    }
    return s;
}

std::string to_string(EventKind k) { return k == EventKind::death ? "death" : "birth"; }

Refinement make_refinement(const Trajectory& traj, const DimerParams& params, double resolution_us) {
    const Mat16 l = build_liouvillian(params).matrix;
    auto margin_at = [l, times = traj.times, states = traj.states](double t) {
        const auto it = std::upper_bound(times.begin(), times.end(), t);
        const std::size_t k = it == times.begin() ? 0 : static_cast<std::size_t>(it - times.begin()) - 1;
        const double dt = t - times[k];
        Mat4 rho = states[k].matrix();
        if (dt > 0.0) rho = unvec(expm(l * dt) * vec(rho));
        return concurrence_detail(rho).margin;
    };
    return Refinement{margin_at, resolution_us};
}

std::optional<EsdEvent> detect_death(const EntanglementSeries& s, double eps, const Refinement* refine) {
    if (!(eps > 0.0)) throw InvalidParameter("eps must be positive");
    const auto& c = s.values;
    const bool have_margins = s.margins.size() == c.size();

    for (std::size_t i = 1; i < c.size(); ++i) {
        if (!(c[i - 1] > eps && c[i] <= eps)) continue;
        if (!all_at_most(c, i, eps)) continue;

        if (!have_margins) {
            const double t = interpolate_zero(s.times[i - 1], c[i - 1] - eps, s.times[i], c[i] - eps);
            return EsdEvent{EventKind::death, t, false};
        }

        // Within the run below eps, look for a genuinely negative margin and
        // the first sign change that leads to it.
        std::size_t end = i;
        while (end < c.size() && c[end] <= eps) ++end;
        std::size_t zero = c.size();
        bool negative = false;
        for (std::size_t k = i; k < end; ++k) {
            if (zero == c.size() && s.margins[k] <= 0.0) zero = k;
            if (s.margins[k] < -eps) {
                negative = true;
                break;
            }
        }
        if (!negative || zero == c.size()) continue;

        double lo = s.times[zero - 1], hi = s.times[zero];
        double f_lo = s.margins[zero - 1], f_hi = s.margins[zero];
        if (refine == nullptr)
            return EsdEvent{EventKind::death, interpolate_zero(lo, f_lo, hi, f_hi), false};

        bool converged = false;
        for (int iter = 0; iter < 200; ++iter) {
            if (hi - lo <= refine->resolution_us) {
                converged = true;
                break;
            }
            const double mid = 0.5 * (lo + hi);
            const double f_mid = refine->margin_at(mid);
            if (f_mid > 0.0) {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
                f_hi = f_mid;
            }
        }
        return EsdEvent{EventKind::death, interpolate_zero(lo, f_lo, hi, f_hi), converged};
    }
    return std::nullopt;
}

std::optional<EsdEvent> detect_birth(const EntanglementSeries& s, double eps) {
    if (!(eps > 0.0)) throw InvalidParameter("eps must be positive");
    const auto& c = s.values;
    if (c.empty() || c.front() > eps) return std::nullopt;
    for (std::size_t i = 1; i < c.size(); ++i) {
        if (!(c[i - 1] <= eps && c[i] > eps)) continue;
        if (!all_above(c, i, eps)) continue;
        const double t = interpolate_zero(s.times[i - 1], c[i - 1] - eps, s.times[i], c[i] - eps);
        return EsdEvent{EventKind::birth, t, false};
    }
    return std::nullopt;
}

EntanglementSeries tail_from(const EntanglementSeries& s, double t_us) {
    const auto first = std::lower_bound(s.times.begin(), s.times.end(), t_us) - s.times.begin();
    EntanglementSeries out;
    out.times.assign(s.times.begin() + first, s.times.end());
    out.values.assign(s.values.begin() + first, s.values.end());
    if (s.margins.size() == s.values.size()) out.margins.assign(s.margins.begin() + first, s.margins.end());
    return out;
}

std::vector<EsdEvent> detect_events(const EntanglementSeries& s, double eps, const Refinement* refine) {
    std::vector<EsdEvent> events;
    EntanglementSeries rest = s;
    while (!rest.values.empty()) {
        const bool entangled = rest.values.front() > eps;
        const auto e = entangled ? detect_death(rest, eps, refine) : detect_birth(rest, eps);
        if (!e) break;
        events.push_back(*e);
        // The next search starts at the first sample past the crossing.
        const auto next = std::upper_bound(rest.times.begin(), rest.times.end(), e->time_us);
        const double t_next = next == rest.times.end() ? rest.times.back() : *next;
        if (next == rest.times.end() || t_next <= rest.times.front()) break;
        rest = tail_from(rest, t_next);
    }
    return events;
}

std::optional<double> esd_time_x_family(double a, double gamma) {
    if (!(a >= 0.0 && a <= 1.0)) throw InvalidParameter("a must lie in [0, 1]");
    if (!(gamma > 0.0)) throw InvalidParameter("gamma must be positive");
    if (a >= 2.0 / 3.0) return std::nullopt;
    const double arg = (1.0 - a) / (2.0 - 3.0 * a) * (2.0 - a + std::sqrt(a * a - a + 2.0));
    return std::log(arg) / gamma;
}

std::optional<double> esd_time_pair_superposition(double alpha, double gamma) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidParameter("alpha must lie in [0, 1]");
    if (!(gamma > 0.0)) throw InvalidParameter("gamma must be positive");
    if (alpha >= 0.5) return std::nullopt;
    const double beta = 1.0 - alpha;
    return std::log(std::abs(beta / (beta - std::sqrt(alpha - alpha * alpha)))) / gamma;
}

}  // namespace dimer
