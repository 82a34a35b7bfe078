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

#include "dimer/linalg.hpp"

#include "dimer/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dimer {

namespace {

double off_diagonal_norm(const Eigen::MatrixXcd& a) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

HermitianEigen jacobi_eigen(const Eigen::MatrixXcd& input, double tol, int max_sweeps) {
    const Eigen::Index n = input.rows();
    // Symmetrize from the upper triangle so round-off in the lower half is ignored.
    Eigen::MatrixXcd a = input.triangularView<Eigen::Upper>();
    a.triangularView<Eigen::StrictlyLower>() = input.triangularView<Eigen::StrictlyUpper>().adjoint();
    for (Eigen::Index i = 0; i < n; ++i) a(i, i) = a(i, i).real();

    Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(n, n);
    const double scale = a.norm();

    int sweep = 0;
    while (scale > 0.0 && off_diagonal_norm(a) > tol * scale) {
        if (++sweep > max_sweeps)
            throw NumericalFailure("Jacobi eigensolver did not converge");
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0) continue;
                const cplx phase = a(p, q) / mag;
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // U = diag(1, conj(phase)) * [[c, s], [-s, c]]
                const cplx u00 = c, u01 = s;
                const cplx u10 = -s * std::conj(phase), u11 = c * std::conj(phase);

                for (Eigen::Index k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * u00 + akq * u10;
                    a(k, q) = akp * u01 + akq * u11;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(u00) * apk + std::conj(u10) * aqk;
                    a(q, k) = std::conj(u01) * apk + std::conj(u11) * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (Eigen::Index k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * u00 + vkq * u10;
                    v(k, q) = vkp * u01 + vkq * u11;
                }
            }
        }
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
        return a(i, i).real() < a(j, j).real();
    });

    HermitianEigen out{Eigen::VectorXd(n), Eigen::MatrixXcd(n, n)};
    for (Eigen::Index k = 0; k < n; ++k) {
        out.values(k) = a(order[k], order[k]).real();
        out.vectors.col(k) = v.col(order[k]);
    }
    return out;
}

Mat4 hermitian_sqrt(const Mat4& a, double floor) {
    const auto eig = jacobi_eigen(a);
    Mat4 out = Mat4::Zero();
    for (int k = 0; k < 4; ++k) {
        const double lambda = eig.values(k);
        if (lambda <= floor) continue;
        const Vec4 col = eig.vectors.col(k);
        out += std::sqrt(lambda) * col * col.adjoint();
    }
    return out;
}

Eigen::Vector4d singular_values(const Mat4& a) {
    Eigen::MatrixXcd dilation = Eigen::MatrixXcd::Zero(8, 8);
    dilation.topRightCorner<4, 4>() = a;
    dilation.bottomLeftCorner<4, 4>() = a.adjoint();
    const auto eig = jacobi_eigen(dilation);
    Eigen::Vector4d out;
    for (int k = 0; k < 4; ++k) out(k) = std::abs(eig.values(7 - k));
    std::sort(out.data(), out.data() + 4, std::greater<>());
    return out;
}

Vec16 vec(const Mat4& m) {
    return Eigen::Map<const Vec16>(m.data());
}

Mat4 unvec(const Vec16& v) {
    return Eigen::Map<const Mat4>(v.data());
}

Mat16 kron(const Mat4& a, const Mat4& b) {
    Mat16 out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    return out;
}

Mat16 expm(const Mat16& input) {
    static constexpr double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                   1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                   670442572800.0,      33522128640.0,       1323241920.0,
                                   40840800.0,          960960.0,            16380.0,
                                   182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;

    const double norm1 = input.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > theta13) squarings = static_cast<int>(std::ceil(std::log2(norm1 / theta13)));
    const Mat16 a = input / std::ldexp(1.0, squarings);

    const Mat16 id = Mat16::Identity();
    const Mat16 a2 = a * a;
    const Mat16 a4 = a2 * a2;
    const Mat16 a6 = a4 * a2;
    const Mat16 u =
        a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    const Mat16 v =
        a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

    Mat16 r = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < squarings; ++k) r = r * r;
    return r;
}

double max_abs(const Eigen::MatrixXcd& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace dimer
