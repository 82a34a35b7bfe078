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

#include "dimer/linalg.hpp"
#include "dimer/model.hpp"

namespace dimer {

/// Lowering operator of qubit 1 or 2 on the two-qubit space.
Mat4 lowering(int qubit);

/// H / hbar in the frame rotating at the laser frequency:
///   d1 n1 + d2 n2 + delta_e |11><11| + v12 (s1+ s2- + s1- s2+)
///   + ell1 (s1+ + s1-) + ell2 (s2+ + s2-)
/// with d1,2 = (delta_plus +- delta_minus) / 2. An excited qubit sits at +d_i.
Mat4 build_hamiltonian(const DimerParams& params);

/// Dissipator with individual rates gamma1, gamma2 and the real collective
/// rate gamma12 = gamma21:
///   L(rho) = -sum_{ij} gamma_ij / 2 (rho s_i+ s_j- + s_i+ s_j- rho - 2 s_i- rho s_j+)
Mat4 lindblad_dissipator(const Mat4& rho, const DimerParams& params);

/// -i [H, rho] + L(rho), evaluated with 4x4 products.
Mat4 generator_action(const Mat4& rho, const DimerParams& params);

/// Superoperator acting on column-stacked density matrices:
/// unvec(L * vec(rho)) == generator_action(rho).
struct Liouvillian {
    Mat16 matrix;

    Vec16 apply(const Vec16& v) const { return matrix * v; }
};

Liouvillian build_liouvillian(const DimerParams& params);

}  // namespace dimer
