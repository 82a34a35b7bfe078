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

#include "dimer/generator.hpp"

#include <array>

namespace dimer {

namespace {

struct DecayChannel {
    double rate;
    int i;
    int j;
};

std::array<DecayChannel, 4> channels(const DimerParams& p) {
    return {{{p.gamma1, 1, 1}, {p.gamma2, 2, 2}, {p.gamma12, 1, 2}, {p.gamma12, 2, 1}}};
}

}  // namespace

Mat4 lowering(int qubit) {
    Mat4 s = Mat4::Zero();
    if (qubit == 1) {
        s(k00, k10) = 1.0;
        s(k01, k11) = 1.0;
    } else {
        s(k00, k01) = 1.0;
        s(k10, k11) = 1.0;
    }
    return s;
}

Mat4 build_hamiltonian(const DimerParams& p) {
    p.validate();
    const Mat4 s1 = lowering(1), s2 = lowering(2);
    const Mat4 n1 = s1.adjoint() * s1, n2 = s2.adjoint() * s2;

    Mat4 h = p.detuning1() * n1 + p.detuning2() * n2;
    h(k11, k11) += p.delta_e;
    h += p.v12 * (s1.adjoint() * s2 + s1 * s2.adjoint());
    h += p.ell1 * (s1 + s1.adjoint()) + p.ell2 * (s2 + s2.adjoint());
    return h;
}

Mat4 lindblad_dissipator(const Mat4& rho, const DimerParams& p) {
    const Mat4 s[3] = {Mat4::Zero(), lowering(1), lowering(2)};
    Mat4 out = Mat4::Zero();
    for (const auto& ch : channels(p)) {
        if (ch.rate == 0.0) continue;
        const Mat4 up_down = s[ch.i].adjoint() * s[ch.j];
        out -= 0.5 * ch.rate * (rho * up_down + up_down * rho - 2.0 * s[ch.i] * rho * s[ch.j].adjoint());
    }
    return out;
}

Mat4 generator_action(const Mat4& rho, const DimerParams& p) {
    const Mat4 h = build_hamiltonian(p);
    return -kI * (h * rho - rho * h) + lindblad_dissipator(rho, p);
}

Liouvillian build_liouvillian(const DimerParams& p) {
    // vec(A X B) = (B^T kron A) vec(X) for column stacking.
    const Mat4 id = Mat4::Identity();
    const Mat4 h = build_hamiltonian(p);
    Mat16 l = -kI * (kron(id, h) - kron(h.transpose(), id));

    const Mat4 s[3] = {Mat4::Zero(), lowering(1), lowering(2)};
    for (const auto& ch : channels(p)) {
        if (ch.rate == 0.0) continue;
        const Mat4 up_down = s[ch.i].adjoint() * s[ch.j];
        const Mat4 jump_right = s[ch.j].adjoint();
        l -= 0.5 * ch.rate *
             (kron(up_down.transpose(), id) + kron(id, up_down) -
              2.0 * kron(jump_right.transpose(), s[ch.i]));
    }
    return Liouvillian{l};
}

}  // namespace dimer
