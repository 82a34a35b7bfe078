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

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

namespace dimer::test {

inline std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64(seed); }

inline Eigen::MatrixXcd ginibre(std::mt19937_64& rng, int rows, int cols) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::MatrixXcd g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = cplx(n(rng), n(rng));
    return g;
}

/// Random density matrix of the given rank (induced measure).
inline Mat4 random_density(std::mt19937_64& rng, int rank = 4) {
    const Eigen::MatrixXcd g = ginibre(rng, 4, rank);
    Mat4 rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint());
}

/// Random Hermitian matrix with unit trace, not necessarily positive.
inline Mat4 random_hermitian(std::mt19937_64& rng) {
    const Eigen::MatrixXcd g = ginibre(rng, 4, 4);
    Mat4 h = 0.5 * (g + g.adjoint());
    h += (1.0 - h.trace().real()) / 4.0 * Mat4::Identity();
    return h;
}

/// Haar-random unitary via QR with the phase correction on R's diagonal.
inline Eigen::MatrixXcd random_unitary(std::mt19937_64& rng, int n) {
    const Eigen::MatrixXcd g = ginibre(rng, n, n);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR();
    for (int k = 0; k < n; ++k) q.col(k) *= r(k, k) / std::abs(r(k, k));
    return q;
}

/// Characteristic polynomial coefficients c[0..n] of det(x I - A) with
/// c[n] = 1, by the Faddeev-LeVerrier recursion.
inline std::vector<cplx> characteristic_polynomial(const Eigen::MatrixXcd& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<cplx> c(static_cast<std::size_t>(n + 1));
    c[static_cast<std::size_t>(n)] = 1.0;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (int k = 1; k <= n; ++k) {
        m = a * m + c[static_cast<std::size_t>(n - k + 1)] * Eigen::MatrixXcd::Identity(n, n);
        c[static_cast<std::size_t>(n - k)] = -(a * m).trace() / static_cast<double>(k);
    }
    return c;
}

inline cplx horner(const std::vector<cplx>& c, cplx x) {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

/// Roots of a monic polynomial by Durand-Kerner iteration, polished with
/// Newton steps.
inline std::vector<cplx> polynomial_roots(const std::vector<cplx>& c) {
    const std::size_t n = c.size() - 1;
    std::vector<cplx> z(n);
    const cplx seed(0.4, 0.9);
    for (std::size_t k = 0; k < n; ++k) z[k] = std::pow(seed, static_cast<double>(k));
    for (int iter = 0; iter < 500; ++iter) {
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cplx denom = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) denom *= z[i] - z[j];
            const cplx step = horner(c, z[i]) / denom;
            z[i] -= step;
            change = std::max(change, std::abs(step));
        }
        if (change < 1e-17) break;
    }
    std::vector<cplx> d(n);
    for (std::size_t k = 1; k <= n; ++k) d[k - 1] = static_cast<double>(k) * c[k];
    for (auto& r : z) {
        for (int k = 0; k < 3; ++k) {
            const cplx dp = horner(d, r);
            if (std::abs(dp) == 0.0) break;
            r -= horner(c, r) / dp;
        }
    }
    return z;
}

/// Concurrence from the roots of the characteristic polynomial of rho rho~.
inline double concurrence_by_polynomial(const Mat4& rho) {
    Mat4 yy = Mat4::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Mat4 tilde = yy * rho.conjugate() * yy;
    const auto roots = polynomial_roots(characteristic_polynomial(rho * tilde));
    std::array<double, 4> lam{};
    for (std::size_t k = 0; k < 4; ++k) lam[k] = std::sqrt(std::max(0.0, roots[k].real()));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

/// Outer product |v><v|.
inline Mat4 projector(const Vec4& v) { return v * v.adjoint(); }

inline Vec4 basis_vector(int k) {
    Vec4 v = Vec4::Zero();
    v(k) = 1.0;
    return v;
}

}  // namespace dimer::test
