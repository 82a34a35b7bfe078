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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dimer/linalg.hpp"
#include "support.hpp"

#include <unsupported/Eigen/MatrixFunctions>

using namespace dimer;

TEST_CASE("jacobi_eigen diagonalizes random Hermitian matrices") {
    auto rng = test::make_rng(10);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 7;
        const Eigen::MatrixXcd g = test::ginibre(rng, n, n);
        const Eigen::MatrixXcd h = 0.5 * (g + g.adjoint());
        const auto e = jacobi_eigen(h);
        for (int k = 1; k < n; ++k) CHECK(e.values(k) >= e.values(k - 1));
        const Eigen::MatrixXcd back = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
        CHECK(max_abs(back - h) < 1e-12);
        CHECK(max_abs(e.vectors.adjoint() * e.vectors - Eigen::MatrixXcd::Identity(n, n)) < 1e-12);

        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(h);
        CHECK((e.values - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("jacobi_eigen handles the 2x2 case by hand") {
    // [[a, b], [b*, d]] has eigenvalues (a + d)/2 -+ sqrt((a - d)^2/4 + |b|^2).
    Eigen::MatrixXcd h(2, 2);
    h << 1.0, cplx(0.3, -0.4), cplx(0.3, 0.4), -2.0;
    const auto e = jacobi_eigen(h);
    const double r = std::sqrt(2.25 + 0.25);
    CHECK(e.values(0) == doctest::Approx(-0.5 - r).epsilon(1e-14));
    CHECK(e.values(1) == doctest::Approx(-0.5 + r).epsilon(1e-14));
}

TEST_CASE("singular_values match Eigen's SVD") {
    auto rng = test::make_rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const Mat4 a = test::ginibre(rng, 4, 4);
        const Eigen::JacobiSVD<Mat4> svd(a);
        CHECK((singular_values(a) - svd.singularValues()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("vec and unvec stack columns") {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = cplx(i, j);
    const Vec16 v = vec(m);
    CHECK(v(1) == m(1, 0));
    CHECK(v(4) == m(0, 1));
    CHECK(unvec(v) == m);
}

TEST_CASE("kron satisfies vec(A X B) = (B^T kron A) vec(X)") {
    auto rng = test::make_rng(12);
    const Mat4 a = test::ginibre(rng, 4, 4), x = test::ginibre(rng, 4, 4), b = test::ginibre(rng, 4, 4);
    CHECK(max_abs(vec(a * x * b) - kron(b.transpose(), a) * vec(x)) < 1e-12);
}

TEST_CASE("expm agrees with Eigen's matrix exponential across norms") {
    auto rng = test::make_rng(13);
    for (double scale : {1e-6, 0.1, 1.0, 10.0, 300.0}) {
        const Mat16 g = test::ginibre(rng, 16, 16);
        // Dissipative spectrum keeps the reference well conditioned at large scale.
        const Mat16 a = scale * (kI * 0.5 * (g + g.adjoint()) - 0.2 * Mat16::Identity()) / g.norm();
        const Mat16 mine = expm(a);
        const Mat16 ref = a.exp();
        CHECK(max_abs(mine - ref) <= 1e-12 * std::max(1.0, max_abs(ref)));
    }
    CHECK(max_abs(expm(Mat16::Zero()) - Mat16::Identity()) <= 1e-15);
}

TEST_CASE("expm of a Hermitian generator is unitary") {
    auto rng = test::make_rng(14);
    const Mat16 g = test::ginibre(rng, 16, 16);
    const Mat16 u = expm(kI * 5.0 * (g + g.adjoint()));
    CHECK(max_abs(u.adjoint() * u - Mat16::Identity()) < 1e-11);
}
