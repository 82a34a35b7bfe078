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

#include <complex>

namespace dimer {

using cplx = std::complex<double>;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;
using Mat16 = Eigen::Matrix<cplx, 16, 16>;
using Vec16 = Eigen::Matrix<cplx, 16, 1>;

inline constexpr cplx kI{0.0, 1.0};

/// Eigen-decomposition of a Hermitian matrix: values ascending, columns of
/// `vectors` orthonormal.
struct HermitianEigen {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

/// Cyclic complex Jacobi sweeps until the off-diagonal Frobenius norm drops
/// below `tol` times the matrix norm. Only the upper triangle is trusted.
/// Throws NumericalFailure if `max_sweeps` is exhausted.
HermitianEigen jacobi_eigen(const Eigen::MatrixXcd& a, double tol = 1e-13,
                            int max_sweeps = 60);

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues at or below `floor` are treated as zero.
Mat4 hermitian_sqrt(const Mat4& a, double floor);

/// Singular values (descending) computed from the spectrum of the Hermitian
/// dilation [[0, A], [A^H, 0]], which keeps small values accurate to
/// machine precision in absolute terms.
Eigen::Vector4d singular_values(const Mat4& a);

/// Column-stacking vectorization.
Vec16 vec(const Mat4& m);
Mat4 unvec(const Vec16& v);

/// Kronecker product of two 4x4 blocks.
Mat16 kron(const Mat4& a, const Mat4& b);

/// exp(A) by scaling and squaring with a [13/13] Pade approximant.
Mat16 expm(const Mat16& a);

double max_abs(const Eigen::MatrixXcd& m);

}  // namespace dimer
