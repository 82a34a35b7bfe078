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

#include "dimer/model.hpp"

#include "dimer/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <string_view>

namespace dimer {

namespace {

void require_unit_interval(std::string_view name, double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw InvalidParameter(fmt::format("{} must lie in [0, 1], got {}", name, x));
}

void require_finite(std::string_view name, double x) {
    if (!std::isfinite(x)) throw InvalidParameter(fmt::format("{} must be finite", name));
}

DensityMatrix pure(const Vec4& psi) {
    return DensityMatrix::unchecked(psi * psi.adjoint());
}

}  // namespace

double to_angular(double mhz, QuotedAs /*kind*/) {
    if (!std::isfinite(mhz)) throw InvalidParameter("frequency value must be finite");
    return kTwoPi * mhz;
}

double to_mhz(double angular) { return angular / kTwoPi; }

void DimerParams::validate() const {
    const std::pair<std::string_view, double> fields[] = {
        {"gamma1", gamma1},           {"gamma2", gamma2},         {"gamma12", gamma12},
        {"v12", v12},                 {"delta_minus", delta_minus}, {"delta_plus", delta_plus},
        {"delta_e", delta_e},         {"ell1", ell1},             {"ell2", ell2},
    };
    for (const auto& [name, value] : fields) require_finite(name, value);
    if (gamma1 < 0.0 || gamma2 < 0.0)
        throw InvalidParameter("individual decay rates must be non-negative");
    const double bound = std::sqrt(gamma1 * gamma2);
    if (std::abs(gamma12) > bound * (1.0 + 1e-12))
        throw InvalidParameter(fmt::format(
            "|gamma12| = {} exceeds sqrt(gamma1 * gamma2) = {}", std::abs(gamma12), bound));
}

StateDiagnostics diagnose(const Mat4& m) {
    StateDiagnostics d{};
    d.hermiticity_error = max_abs(m - m.adjoint());
    d.trace_error = std::abs(m.trace() - 1.0);
    const Mat4 h = 0.5 * (m + m.adjoint());
    d.min_eigenvalue = jacobi_eigen(h).values(0);
    return d;
}

DensityMatrix DensityMatrix::checked(const Mat4& m) {
    if (!m.allFinite()) throw InvalidState("density matrix has non-finite elements");
    const auto d = diagnose(m);
    if (d.hermiticity_error > kHermitianTol)
        throw InvalidState(fmt::format("not Hermitian (deviation {:.3g})", d.hermiticity_error));
    if (d.trace_error > kTraceTol)
        throw InvalidState(fmt::format("trace differs from 1 by {:.3g}", d.trace_error));
    if (d.min_eigenvalue < -kPositivitySlack)
        throw InvalidState(fmt::format("not positive semidefinite (eigenvalue {:.3g})", d.min_eigenvalue));
    return DensityMatrix(m);
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

XStateSpec XStateSpec::mixed_family(double a) {
    require_unit_interval("a", a);
    return XStateSpec{a / 3.0, 1.0 / 3.0, 1.0 / 3.0, (1.0 - a) / 3.0, 0.0, 1.0 / 3.0};
}

DensityMatrix psi_alpha(double alpha, double phi) {
    require_unit_interval("alpha", alpha);
    require_finite("phi", phi);
    Vec4 psi = Vec4::Zero();
    psi(k01) = std::sqrt(alpha);
    psi(k10) = std::polar(std::sqrt(1.0 - alpha), phi);
    return pure(psi);
}

DensityMatrix psi_zero_one(double alpha, double phi) {
    require_unit_interval("alpha", alpha);
    require_finite("phi", phi);
    Vec4 psi = Vec4::Zero();
    psi(k00) = std::sqrt(alpha);
    psi(k11) = std::polar(std::sqrt(1.0 - alpha), phi);
    return pure(psi);
}

DensityMatrix product_state(double gamma, double zeta, double phase1, double phase2) {
    require_unit_interval("gamma", gamma);
    require_unit_interval("zeta", zeta);
    require_finite("phase1", phase1);
    require_finite("phase2", phase2);
    const Eigen::Vector2cd q1(std::sqrt(gamma), std::polar(std::sqrt(1.0 - gamma), phase1));
    const Eigen::Vector2cd q2(std::sqrt(zeta), std::polar(std::sqrt(1.0 - zeta), phase2));
    Vec4 psi;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) psi(2 * i + j) = q1(i) * q2(j);
    return pure(psi);
}

DensityMatrix x_state(const XStateSpec& s) {
    constexpr double tol = 1e-12;
    const std::pair<std::string_view, double> pops[] = {{"a", s.a}, {"b", s.b}, {"c", s.c}, {"d", s.d}};
    for (const auto& [name, value] : pops) {
        if (!std::isfinite(value)) throw InvalidState(fmt::format("population {} is not finite", name));
        if (value < 0.0) throw InvalidState(fmt::format("population {} is negative", name));
    }
    if (std::abs(s.a + s.b + s.c + s.d - 1.0) > tol)
        throw InvalidState("populations a + b + c + d must sum to 1");
    if (std::norm(s.w) > s.a * s.d + tol) throw InvalidState("|w|^2 <= a d violated");
    if (std::norm(s.z) > s.b * s.c + tol) throw InvalidState("|z|^2 <= b c violated");

    Mat4 m = Mat4::Zero();
    m(k00, k00) = s.a;
    m(k01, k01) = s.b;
    m(k10, k10) = s.c;
    m(k11, k11) = s.d;
    m(k00, k11) = s.w;
    m(k11, k00) = std::conj(s.w);
    m(k01, k10) = s.z;
    m(k10, k01) = std::conj(s.z);
    return DensityMatrix::unchecked(m);
}

DensityMatrix werner_state(double p) {
    require_unit_interval("p", p);
    Vec4 bell = Vec4::Zero();
    bell(k01) = bell(k10) = std::sqrt(0.5);
    return DensityMatrix::unchecked(p * bell * bell.adjoint() + (1.0 - p) * 0.25 * Mat4::Identity());
}

DensityMatrix ground_state() {
    Mat4 m = Mat4::Zero();
    m(k00, k00) = 1.0;
    return DensityMatrix::unchecked(m);
}

}  // namespace dimer
