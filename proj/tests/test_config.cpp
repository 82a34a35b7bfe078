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

#include "dimer/config.hpp"
#include "dimer/errors.hpp"
#include "support.hpp"

#include <cmath>
#include <random>

using namespace dimer;

namespace {

constexpr const char* kFig1a = R"([system]
gamma1_mhz_over_2pi = 50
gamma2_mhz_over_2pi = 50
gamma12_mhz_over_2pi = 9
v12_mhz = 950
delta_minus_mhz = 2320
delta_plus_mhz = 0
delta_e_mhz = -160
ell1_mhz = 200
ell2_mhz = 200
)";

std::string fig1a_with(const std::string& key, const std::string& value) {
    std::string text = kFig1a;
    const auto at = text.find(key + " = ");
    const auto end = text.find('\n', at);
    return text.replace(at, end - at, key + " = " + value);
}

template <class T>
std::optional<T> maybe(std::mt19937_64& rng, T value) {
    return std::bernoulli_distribution(0.5)(rng) ? std::optional<T>(value) : std::nullopt;
}

RunConfig random_config(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RunConfig c;
    const auto names = preset_names();
    c.preset = names[rng() % names.size()];
    c.system.ell1_mhz = maybe(rng, 1000 * u(rng));
    c.system.delta_e_mhz = maybe(rng, -500 + 1000 * u(rng));
    c.system.v12_mhz = maybe(rng, 1000 * u(rng) / 3.0);
    InitialState init;
    switch (rng() % 4) {
        case 0: init.family = InitialFamily::psi_alpha; init.alpha = u(rng); init.phi = u(rng); break;
        case 1: init.family = InitialFamily::product; init.gamma = u(rng); init.zeta = u(rng); init.phase2 = 3 * u(rng); break;
        case 2: init.family = InitialFamily::x_family; init.a = u(rng); break;
        default: init.family = InitialFamily::werner; init.p = u(rng); break;
    }
    if (std::bernoulli_distribution(0.7)(rng)) c.initial = init;
    c.grid.t_end_gamma_units = maybe(rng, 1 + 20 * u(rng));
    c.grid.samples = maybe(rng, 2 + static_cast<int>(rng() % 1000));
    c.grid.tol = maybe(rng, std::pow(10.0, -12 + 8 * u(rng)));
    c.grid.axis_points = maybe(rng, 1 + static_cast<int>(rng() % 100));
    c.grid.esd_eps = maybe(rng, 1e-7 * (1 + u(rng)));
    c.output.path = maybe(rng, std::string("out dir/run.csv"));
    return c;
}

}  // namespace

TEST_CASE("a full [system] block reproduces the preset") {
    const auto c = parse_config(kFig1a);
    CHECK_FALSE(c.preset.has_value());
    const auto p = c.params();
    const auto& ref = preset("fig1a").params;
    CHECK(p.gamma1 == doctest::Approx(ref.gamma1).epsilon(1e-15));
    CHECK(p.gamma12 == doctest::Approx(ref.gamma12).epsilon(1e-15));
    CHECK(p.v12 == doctest::Approx(ref.v12).epsilon(1e-15));
    CHECK(p.delta_minus == doctest::Approx(ref.delta_minus).epsilon(1e-15));
    CHECK(p.delta_e == doctest::Approx(ref.delta_e).epsilon(1e-15));
    CHECK(p.ell1 == doctest::Approx(ref.ell1).epsilon(1e-15));
    CHECK(p.gamma1 == doctest::Approx(kTwoPi * 50));
}

TEST_CASE("collective decay above the Cauchy-Schwarz bound is rejected") {
    CHECK_THROWS_WITH_AS(parse_config(fig1a_with("gamma12_mhz_over_2pi", "60")),
                         doctest::Contains("system.gamma12_mhz_over_2pi"), ConfigError);
    CHECK_NOTHROW(parse_config(fig1a_with("gamma12_mhz_over_2pi", "-50")));
    CHECK_THROWS_AS(parse_config(fig1a_with("gamma1_mhz_over_2pi", "-1")), ConfigError);
}

TEST_CASE("an empty document lists the missing keys") {
    try {
        parse_config("");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        for (const auto& key : required_system_keys()) CHECK(msg.find(key) != std::string::npos);
    }
}

TEST_CASE("unit-suffix mismatch names the expected spelling") {
    std::string text = kFig1a;
    text.replace(text.find("gamma1_mhz_over_2pi"), 19, "gamma1_mhz");
    CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("gamma1_mhz_over_2pi"), ConfigError);
    text = kFig1a;
    text.replace(text.find("v12_mhz"), 7, "v12_mhz_over_2pi");
    CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("unit-suffix"), ConfigError);
}

TEST_CASE("unknown keys: strict rejects, permissive ignores") {
    const std::string text = std::string(kFig1a) + "colour = blue\n";
    CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains("system.colour"), ConfigError);
    CHECK(parse_config(text, {true}).params() == parse_config(kFig1a).params());
    CHECK_THROWS_AS(parse_config("[sytem]\npreset = fig1a\n"), ConfigError);
    CHECK_NOTHROW(parse_config("[sytem]\n[system]\npreset = fig1a\n", {true}));
}

TEST_CASE("config errors carry the key path") {
    CHECK_THROWS_WITH_AS(parse_config("[system]\npreset = nope\n"), doctest::Contains("system.preset"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(fig1a_with("v12_mhz", "abc")), doctest::Contains("system.v12_mhz"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[system]\npreset = fig2a\n[grid]\nt_end_us = 0\n"),
                         doctest::Contains("grid.t_end_us"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[system]\npreset = fig2a\n[grid]\nsamples = 1\n"),
                         doctest::Contains("grid.samples"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[system]\npreset = fig2a\n[grid]\ntol = 1\n"), doctest::Contains("grid.tol"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[system]\npreset = fig2a\n[grid]\naxis = beta\n"),
                         doctest::Contains("grid.axis"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[system]\npreset = fig2a\n[initial_state]\nfamily = psi_alpha\nzeta = 1\n"),
                         doctest::Contains("initial_state.zeta"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[system]\npreset = fig2a\n[initial_state]\nfamily = psi_alpha\nalpha = 2\n"),
                         doctest::Contains("initial_state"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config("[system]\npreset = fig2a\n[output]\npath =\n"),
                         doctest::Contains("output.path"), ConfigError);
    CHECK_THROWS_AS(parse_config("[system\npreset = fig2a\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/dimer.ini"), IoError);
}

TEST_CASE("preset overrides") {
    const auto c = parse_config("[system]\npreset = fig2a\nell1_mhz = 300\n[initial_state]\nfamily = psi_alpha\nalpha = 0.25\n");
    CHECK(c.params().ell1 == doctest::Approx(kTwoPi * 300));
    CHECK(c.params().ell2 == preset("fig2a").params.ell2);
    CHECK(c.initial_state().alpha == 0.25);
    CHECK(c.horizon_us() == doctest::Approx(preset("fig2a").horizon_us()));
    CHECK(c.samples() == preset("fig2a").samples);
    CHECK(c.axis().name == "alpha");
    CHECK(c.tol() == 1e-9);
}

TEST_CASE("serialized presets parse back to the same config") {
    for (const auto& name : preset_names()) {
        CAPTURE(name);
        const auto c = config_for_preset(name);
        CHECK(parse_config(serialize(c)) == c);
    }
}

TEST_CASE("random configs round-trip") {
    auto rng = test::make_rng(70);
    for (int k = 0; k < 300; ++k) {
        const auto c = random_config(rng);
        const auto text = serialize(c);
        CAPTURE(text);
        CHECK(parse_config(text) == c);
    }
}

TEST_CASE("a full custom config round-trips") {
    auto c = parse_config(kFig1a);
    InitialState x;
    x.family = InitialFamily::x_state;
    x.x = {0.1, 0.2, 0.3, 0.4, {0.1, -0.05}, {0.05, 0.02}};
    c.initial = x;
    c.grid.t_end_us = 0.02;
    c.grid.detuning_step_mhz = 2.5;
    c.output.sidecar = "side.json";
    CHECK(parse_config(serialize(c)) == c);
}
