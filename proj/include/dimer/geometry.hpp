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

#include <Eigen/Dense>

namespace dimer {

/// Orientation of the two transition dipoles and their separation.
struct DipoleGeometry {
    Eigen::Vector3d mu1_hat;
    Eigen::Vector3d mu2_hat;
    Eigen::Vector3d r12_hat;
    double z = 0.0;  ///< scaled separation n * k0 * r12

    /// Throws InvalidGeometry unless all vectors are unit-norm within 1e-12 and z > 0.
    void validate() const;
};

struct Coupling {
    double v12;
    double gamma12;
};

/// Near-field (z << 1) forms:
///   v12     = 3 sqrt(g1 g2) / (8 pi z^3) * [mu1.mu2 - 3 (mu1.r)(mu2.r)]
///   gamma12 = sqrt(g1 g2) * mu1.mu2
/// Outputs carry the unit of the input rates.
Coupling coupling_near_field(const DipoleGeometry& geom, double gamma1, double gamma2);

/// Retarded forms with cos z / z, sin z / z^2 and cos z / z^3 kernels. The
/// v12 channel is scaled by 3 sqrt(g1 g2) / (8 pi) and the gamma12 channel by
/// (3/2) sqrt(g1 g2), so both reduce to coupling_near_field as z -> 0.
Coupling coupling_general(const DipoleGeometry& geom, double gamma1, double gamma2);

}  // namespace dimer
