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

namespace dimer {

// Units: every rate, detuning and coupling is an angular frequency in
// rad/us (1 MHz ordinary frequency == 2*pi rad/us); times are in us.

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// How a quoted MHz figure should be read.
enum class QuotedAs {
    frequency,        ///< nu = omega / 2pi, e.g. "V12 = 950 MHz"
    rate_over_2pi,    ///< rate quoted after division by 2pi, e.g. "Gamma = 2pi x 50 MHz"
};

/// Converts a quoted MHz value to rad/us. Both conventions scale by 2pi; the
/// tag documents the call site. Throws InvalidParameter on non-finite input.
double to_angular(double mhz, QuotedAs kind);

/// Inverse of to_angular.
double to_mhz(double angular);

/// Basis ordering {|00>, |01>, |10>, |11>}, qubit 1 is the left factor.
enum Basis : int { k00 = 0, k01 = 1, k10 = 2, k11 = 3 };

struct DimerParams {
    double gamma1 = 0.0;       // individual decay, qubit 1
    double gamma2 = 0.0;       // individual decay, qubit 2
    double gamma12 = 0.0;      // collective decay (real)
    double v12 = 0.0;          // dipole-dipole coupling
    double delta_minus = 0.0;  // nu1 - nu2
    double delta_plus = 0.0;   // (nu1 + nu2) - 2 nu_L, the full sum detuning
    double delta_e = 0.0;      // shift of |11>
    double ell1 = 0.0;         // laser coupling, qubit 1
    double ell2 = 0.0;         // laser coupling, qubit 2

    /// Detuning of qubit 1 (2) from the laser: (delta_plus +- delta_minus) / 2.
    double detuning1() const { return 0.5 * (delta_plus + delta_minus); }
    double detuning2() const { return 0.5 * (delta_plus - delta_minus); }

    /// Mean individual decay rate; the natural time unit is 1 / mean_gamma().
    double mean_gamma() const { return 0.5 * (gamma1 + gamma2); }

    /// Throws InvalidParameter on non-finite fields, negative rates or
    /// |gamma12| > sqrt(gamma1 gamma2).
    void validate() const;

    bool operator==(const DimerParams&) const = default;
};

/// Diagnostics of the density-matrix constraints for a 4x4 matrix.
struct StateDiagnostics {
    double hermiticity_error;   // max |rho - rho^H|
    double trace_error;         // |tr rho - 1|
    double min_eigenvalue;
};

StateDiagnostics diagnose(const Mat4& m);

/// A two-qubit density matrix. Instances built through `checked` satisfy
/// Hermiticity and unit trace within 1e-12 and have eigenvalues >= -1e-9.
class DensityMatrix {
public:
    static constexpr double kHermitianTol = 1e-12;
    static constexpr double kTraceTol = 1e-12;
    static constexpr double kPositivitySlack = 1e-9;

    /// Validates; throws InvalidState naming the violated constraint.
    static DensityMatrix checked(const Mat4& m);
    /// No validation: used for integrator output, which tests audit separately.
    static DensityMatrix unchecked(const Mat4& m) { return DensityMatrix(m); }

    const Mat4& matrix() const { return m_; }
    cplx operator()(int row, int col) const { return m_(row, col); }
    double population(Basis b) const { return m_(b, b).real(); }

    /// tr(rho^2)
    double purity() const;

private:
    explicit DensityMatrix(const Mat4& m) : m_(m) {}
    Mat4 m_;
};

/// The X-form initial state: populations a..d, coherences w (|00><11|) and
/// z (|01><10|).
struct XStateSpec {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;
    cplx w{0.0, 0.0};
    cplx z{0.0, 0.0};

    /// The one-parameter family (a/3, 1/3, 1/3, (1-a)/3, w=0, z=1/3).
    static XStateSpec mixed_family(double a);
};

/// sqrt(alpha)|01> + e^{i phi} sqrt(1-alpha)|10>
DensityMatrix psi_alpha(double alpha, double phi = 0.0);

/// sqrt(alpha)|00> + e^{i phi} sqrt(1-alpha)|11>
DensityMatrix psi_zero_one(double alpha, double phi = 0.0);

/// (sqrt(g)|0> + e^{i p1} sqrt(1-g)|1>) (x) (sqrt(z)|0> + e^{i p2} sqrt(1-z)|1>)
DensityMatrix product_state(double gamma, double zeta, double phase1 = 0.0, double phase2 = 0.0);

DensityMatrix x_state(const XStateSpec& spec);

/// p |psi+><psi+| + (1 - p) I / 4
DensityMatrix werner_state(double p);

/// |00><00|
DensityMatrix ground_state();

}  // namespace dimer
