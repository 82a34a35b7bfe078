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

#include "dimer/entanglement.hpp"
#include "dimer/errors.hpp"
#include "dimer/scenarios.hpp"
#include "support.hpp"

#include <cmath>

using namespace dimer;

namespace {

DimerParams undriven_pair(double gamma_over_2pi, double delta_e_mhz, double delta_plus_mhz) {
    DimerParams p;
    p.gamma1 = p.gamma2 = to_angular(gamma_over_2pi, QuotedAs::rate_over_2pi);
    p.delta_e = to_angular(delta_e_mhz, QuotedAs::frequency);
    p.delta_plus = to_angular(delta_plus_mhz, QuotedAs::frequency);
    p.delta_minus = to_angular(2320, QuotedAs::frequency);
    return p;
}

/// Shortcut for X states with vanishing |01><10| coherence.
double x_shortcut(const DensityMatrix& r) {
    return 2.0 * std::max(0.0, std::abs(r(k00, k11)) - r(k01, k01).real());
}

EntanglementSeries synthetic(const std::vector<double>& values, const std::vector<double>& margins = {}) {
    EntanglementSeries s;
    for (std::size_t k = 0; k < values.size(); ++k) s.times.push_back(0.1 * static_cast<double>(k));
    s.values = values;
    s.margins = margins;
    return s;
}

std::optional<EsdEvent> numeric_death(const DensityMatrix& rho0, const DimerParams& p, double horizon_gamma_units) {
    const auto times = uniform_times(horizon_gamma_units / p.mean_gamma(), 400);
    const auto traj = evolve(rho0, p, times);
    const auto refine = make_refinement(traj, p, 1e-4 / p.mean_gamma());
    return detect_death(concurrence_series(traj), 1e-6, &refine);
}

}  // namespace

TEST_CASE("spin flip") {
    CHECK(max_abs(spin_flip(0.25 * Mat4::Identity()) - 0.25 * Mat4::Identity()) < 1e-15);
    const Mat4 bell = psi_alpha(0.5).matrix();
    CHECK(max_abs(spin_flip(bell) - bell) < 1e-15);
    auto rng = test::make_rng(40);
    for (int k = 0; k < 50; ++k) {
        const Mat4 rho = test::random_density(rng);
        CHECK(max_abs(spin_flip(spin_flip(rho)) - rho) <= 1e-14);
        CHECK(std::abs(spin_flip(rho).trace() - 1.0) <= 1e-14);
    }
}

TEST_CASE("concurrence examples") {
    CHECK(concurrence(psi_alpha(0.5)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(concurrence(product_state(0.3, 0.6, 0.2, 1.0)) <= 1e-10);
    CHECK(concurrence(werner_state(0.5)) == doctest::Approx(0.25).epsilon(1e-10));
    // Triply degenerate spectrum: polynomial roots lose half the digits.
    CHECK(test::concurrence_by_polynomial(werner_state(0.5).matrix()) == doctest::Approx(0.25).epsilon(1e-6));
    CHECK(concurrence(werner_state(1.0 / 3.0)) <= 1e-10);
}

TEST_CASE("concurrence of closed-form X states matches the shortcut") {
    const double g = to_angular(50, QuotedAs::rate_over_2pi);
    for (double alpha : {0.05, 0.25, 0.5, 0.75, 0.95}) {
        for (double tg : {0.0, 0.3, 1.0, 2.5, 4.0}) {
            const auto r = analytic_undriven_state(alpha, tg / g, g, -1000.0, 1.2e5);
            CHECK(std::abs(concurrence(r) - x_shortcut(r)) <= 1e-10);
        }
    }
}

TEST_CASE("two independent concurrence routes agree on random states") {
    auto rng = test::make_rng(41);
    for (int k = 0; k < 1000; ++k) {
        const Mat4 rho = test::random_density(rng);
        CHECK(std::abs(concurrence_detail(rho).concurrence - test::concurrence_by_polynomial(rho)) <= 1e-9);
    }
}

TEST_CASE("concurrence is invariant under local unitaries") {
    auto rng = test::make_rng(42);
    for (int k = 0; k < 200; ++k) {
        const Mat4 rho = test::random_density(rng, 1 + k % 4);
        const Eigen::MatrixXcd u1 = test::random_unitary(rng, 2), u2 = test::random_unitary(rng, 2);
        Mat4 u;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) u.block<2, 2>(2 * i, 2 * j) = u1(i, j) * u2;
        const Mat4 rotated = u * rho * u.adjoint();
        CHECK(std::abs(concurrence_detail(rho).concurrence - concurrence_detail(rotated).concurrence) <= 1e-9);
    }
}

TEST_CASE("pure-state concurrence closed form") {
    for (double alpha = 0.0; alpha <= 1.0; alpha += 0.01)
        CHECK(std::abs(concurrence(psi_alpha(alpha, 0.7)) - 2 * std::sqrt(alpha * (1 - alpha))) <= 1e-10);
}

TEST_CASE("clearly non-positive input is a numerical failure") {
    Mat4 m = psi_alpha(0.5).matrix();
    m(k00, k00) = -1e-6;
    m(k11, k11) = 1e-6;
    CHECK_THROWS_AS(concurrence_detail(m), NumericalFailure);
}

TEST_CASE("concurrence series") {
    const auto p = preset("fig2a").params;
    const auto times = uniform_times(1.0 / p.mean_gamma(), 20);
    DimerParams undriven = p;
    undriven.ell1 = undriven.ell2 = 0.0;
    const auto ground = concurrence_series(evolve(ground_state(), undriven, times));
    for (double c : ground.values) CHECK(c == 0.0);

    const auto bell = concurrence_series(evolve(psi_alpha(0.5), p, times));
    CHECK(bell.values.front() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bell.margins.size() == bell.values.size());
}

TEST_CASE("concurrence series of the closed-form trajectory") {
    const double g = to_angular(50, QuotedAs::rate_over_2pi);
    Trajectory traj;
    traj.times = uniform_times(5.0 / g, 100);
    for (double t : traj.times) traj.states.push_back(analytic_undriven_state(0.25, t, g, -1000.0, 1.2e5));
    const auto s = concurrence_series(traj);
    for (std::size_t k = 0; k < s.values.size(); ++k)
        CHECK(std::abs(s.values[k] - x_shortcut(traj.states[k])) <= 1e-10);
}

TEST_CASE("concurrence series errors name the sample") {
    Trajectory traj;
    traj.times = {0.0, 1.0, 2.0};
    Mat4 bad = Mat4::Zero();
    bad(0, 0) = 1.5;
    bad(3, 3) = -0.5;
    traj.states = {ground_state(), ground_state(), DensityMatrix::unchecked(bad)};
    CHECK_THROWS_WITH_AS(concurrence_series(traj), doctest::Contains("sample 2"), NumericalFailure);
}

TEST_CASE("detect_death on synthetic series") {
    // Asymptotic decay keeps the margin non-negative and never dies; without
    // margins the eps crossing alone decides.
    std::vector<double> decay;
    for (int k = 0; k < 100; ++k) decay.push_back(std::exp(-0.5 * k));
    CHECK_FALSE(detect_death(synthetic(decay, decay)).has_value());
    const auto crossing = detect_death(synthetic(decay));
    REQUIRE(crossing.has_value());
    CHECK(crossing->time_us == doctest::Approx(2.0 * std::log(1e6) * 0.1).epsilon(0.01));

    // Grazing below eps for fewer than three samples is not a death.
    const std::vector<double> graze{0.5, 0.1, 5e-7, 5e-7, 0.2, 0.3, 0.3};
    CHECK_FALSE(detect_death(synthetic(graze)).has_value());

    // A real crossing: margin goes linearly through zero between samples 3 and 4.
    const std::vector<double> margin{0.3, 0.2, 0.1, 0.02, -0.06, -0.14, -0.22};
    std::vector<double> clamped;
    for (double m : margin) clamped.push_back(std::max(0.0, m));
    const auto e = detect_death(synthetic(clamped, margin));
    REQUIRE(e.has_value());
    CHECK(e->kind == EventKind::death);
    CHECK(e->time_us == doctest::Approx(0.325).epsilon(1e-12));
    CHECK_FALSE(e->resolved);

    CHECK_THROWS_AS(detect_death(synthetic(clamped), 0.0), InvalidParameter);
}

TEST_CASE("detect_birth on synthetic series") {
    CHECK_FALSE(detect_birth(synthetic(std::vector<double>(20, 0.0))).has_value());
    CHECK_FALSE(detect_birth(synthetic(std::vector<double>(20, 1.0))).has_value());
    const std::vector<double> rise{0, 0, 0, 0.1, 0.2, 0.3, 0.3};
    const auto b = detect_birth(synthetic(rise));
    REQUIRE(b.has_value());
    CHECK(b->kind == EventKind::birth);
    CHECK(b->time_us > 0.2);
    CHECK(b->time_us < 0.3);
}

TEST_CASE("closed-form death times") {
    const double g = to_angular(50, QuotedAs::rate_over_2pi);
    CHECK(*esd_time_x_family(0.0, g) * 1e3 == doctest::Approx(1.702).epsilon(1e-3));
    CHECK(*esd_time_x_family(0.0, g) == doctest::Approx(std::log((2 + std::sqrt(2.0)) / 2) / g).epsilon(1e-14));
    CHECK_FALSE(esd_time_x_family(2.0 / 3.0, g).has_value());
    CHECK(*esd_time_x_family(0.5, g) == doctest::Approx(std::log(1.5 + std::sqrt(1.75)) / g).epsilon(1e-14));
    CHECK(*esd_time_x_family(0.5, g) * 1e3 == doctest::Approx(3.304).epsilon(1e-3));

    CHECK_FALSE(esd_time_pair_superposition(0.5, g).has_value());
    CHECK_FALSE(esd_time_pair_superposition(0.8, g).has_value());
    CHECK(*esd_time_pair_superposition(0.0, g) == 0.0);
    CHECK(*esd_time_pair_superposition(0.25, g) * 1e3 == doctest::Approx(2.740).epsilon(1e-3));

    CHECK_THROWS_AS(esd_time_x_family(1.5, g), InvalidParameter);
    CHECK_THROWS_AS(esd_time_pair_superposition(0.2, 0.0), InvalidParameter);
}

TEST_CASE("X-family death time grows with a") {
    double last = 0.0;
    for (double a = 0.0; a < 2.0 / 3.0; a += 0.01) {
        const double t = *esd_time_x_family(a, 1.0);
        CHECK(t > last);
        last = t;
    }
}

TEST_CASE("numeric death times reproduce the X-family closed form") {
    const auto p = undriven_pair(50, 0, 0);
    for (double a = 0.0; a <= 0.6 + 1e-9; a += 0.1) {
        CAPTURE(a);
        const auto e = numeric_death(x_state(XStateSpec::mixed_family(a)), p, 10);
        REQUIRE(e.has_value());
        CHECK(e->resolved);
        CHECK(std::abs(e->time_us / *esd_time_x_family(a, p.gamma1) - 1.0) <= 0.01);
    }
    const auto e0 = numeric_death(x_state(XStateSpec::mixed_family(0.0)), p, 10);
    CHECK(std::abs(e0->time_us * 1e3 - 1.70) <= 0.02);
    for (double a : {2.0 / 3.0, 0.8, 1.0})
        CHECK_FALSE(numeric_death(x_state(XStateSpec::mixed_family(a)), p, 10).has_value());
}

TEST_CASE("numeric death times reproduce the pair-superposition closed form") {
    const auto p = undriven_pair(50, -160, 300);
    for (double alpha : {0.05, 0.15, 0.25, 0.35, 0.45}) {
        CAPTURE(alpha);
        const auto e = numeric_death(psi_zero_one(alpha), p, 4);
        REQUIRE(e.has_value());
        CHECK(std::abs(e->time_us / *esd_time_pair_superposition(alpha, p.gamma1) - 1.0) <= 0.01);
    }
}

TEST_CASE("narrow-line undriven pair: alpha = 1/4 dies on schedule") {
    const auto& p = preset("fig-interplay-inset").params;
    const auto e = numeric_death(psi_zero_one(0.25), p, 4);
    REQUIRE(e.has_value());
    CHECK(std::abs(e->time_us / *esd_time_pair_superposition(0.25, p.gamma1) - 1.0) <= 0.01);
}

TEST_CASE("ESB from a separable preparation") {
    const auto& s = preset("fig3a");
    InitialState init = s.initial;
    init.zeta = 0.0;
    const auto times = uniform_times(s.horizon_us(), 400);
    const auto series = concurrence_series(evolve(init.build(), s.params, times));
    const auto b = detect_birth(series);
    REQUIRE(b.has_value());
    CHECK(b->time_us > 0.0);
}

TEST_CASE("collapse and revival come out as death then birth") {
    const auto& s = preset("fig-collapse-revival");
    const auto times = uniform_times(s.horizon_us(), 400);
    const auto traj = evolve(psi_alpha(0.5), s.params, times);
    const auto series = concurrence_series(traj);
    const auto refine = make_refinement(traj, s.params, 1e-4 / s.params.mean_gamma());
    const auto events = detect_events(series, 1e-6, &refine);
    REQUIRE(events.size() >= 2);
    CHECK(events[0].kind == EventKind::death);
    CHECK(events[1].kind == EventKind::birth);
    CHECK(events[0].time_us < events[1].time_us);

    const auto death = detect_death(series, 1e-6, &refine);
    const auto birth = detect_birth(tail_from(series, death->time_us));
    REQUIRE(birth.has_value());
    CHECK(death->time_us < birth->time_us);
}

TEST_CASE("tail_from keeps samples at and after the cut") {
    const auto s = synthetic({1, 2, 3, 4, 5}, {1, 2, 3, 4, 5});
    const auto t = tail_from(s, 0.2);
    CHECK(t.values == std::vector<double>{3, 4, 5});
    CHECK(t.margins.size() == 3);
    CHECK(t.times.front() == doctest::Approx(0.2));
}
