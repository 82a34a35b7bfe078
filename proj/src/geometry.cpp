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

#include "dimer/geometry.hpp"

#include "dimer/errors.hpp"

#include <cmath>
#include <numbers>

namespace dimer {

namespace {

struct Brackets {
    double transverse;  // mu1.mu2 - (mu1.r)(mu2.r)
    double static_;     // mu1.mu2 - 3 (mu1.r)(mu2.r)
    double parallel;    // mu1.mu2
};

Brackets brackets(const DipoleGeometry& g) {
    const double m12 = g.mu1_hat.dot(g.mu2_hat);
    const double p = g.mu1_hat.dot(g.r12_hat) * g.mu2_hat.dot(g.r12_hat);
    return {m12 - p, m12 - 3.0 * p, m12};
}

void check_rates(double gamma1, double gamma2) {
    if (!(gamma1 >= 0.0 && gamma2 >= 0.0) || !std::isfinite(gamma1) || !std::isfinite(gamma2))
        throw InvalidParameter("decay rates must be finite and non-negative");
}

}  // namespace

void DipoleGeometry::validate() const {
    constexpr double tol = 1e-12;
    if (std::abs(mu1_hat.norm() - 1.0) > tol || std::abs(mu2_hat.norm() - 1.0) > tol ||
        std::abs(r12_hat.norm() - 1.0) > tol)
        throw InvalidGeometry("dipole and separation directions must be unit vectors");
    if (!(z > 0.0) || !std::isfinite(z))
        throw InvalidGeometry("scaled separation z must be positive");
}

Coupling coupling_near_field(const DipoleGeometry& geom, double gamma1, double gamma2) {
    geom.validate();
    check_rates(gamma1, gamma2);
    const double root = std::sqrt(gamma1 * gamma2);
    const auto b = brackets(geom);
    const double z3 = geom.z * geom.z * geom.z;
    return {3.0 * root / (8.0 * std::numbers::pi * z3) * b.static_, root * b.parallel};
}

Coupling coupling_general(const DipoleGeometry& geom, double gamma1, double gamma2) {
    geom.validate();
    check_rates(gamma1, gamma2);
    const double root = std::sqrt(gamma1 * gamma2);
    const auto b = brackets(geom);
    const double z = geom.z;
    const double s = std::sin(z), c = std::cos(z);

    const double v_scale = 3.0 * root / (8.0 * std::numbers::pi);
    const double g_scale = 1.5 * root;
    const double v12 = v_scale * (-b.transverse * c / z + b.static_ * (c / (z * z * z) + s / (z * z)));
    const double gamma12 = g_scale * (b.transverse * s / z + b.static_ * (c / (z * z) - s / (z * z * z)));
    return {v12, gamma12};
}

}  // namespace dimer
