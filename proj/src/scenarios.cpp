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

#include "dimer/scenarios.hpp"

#include "dimer/parallel.hpp"
#include "dimer/stationary.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>

namespace dimer {

namespace {

double mhz(double v) { return to_angular(v, QuotedAs::frequency); }
double rate(double v) { return to_angular(v, QuotedAs::rate_over_2pi); }

/// Measured pair: decay 2pi x 50 MHz, collective 2pi x 9 MHz, V12 = 950 MHz,
/// nu1 - nu2 = 2320 MHz, |11> shifted by -160 MHz.
DimerParams measured_pair(double ell1_mhz, double ell2_mhz, double delta_plus_mhz, double delta_e_mhz) {
    DimerParams p;
    p.gamma1 = p.gamma2 = rate(50);
    p.gamma12 = rate(9);
    p.v12 = mhz(950);
    p.delta_minus = mhz(2320);
    p.delta_plus = mhz(delta_plus_mhz);
    p.delta_e = mhz(delta_e_mhz);
    p.ell1 = mhz(ell1_mhz);
    p.ell2 = mhz(ell2_mhz);
    return p;
}

/// Far-apart pair: no coupling, no collective decay.
DimerParams uncoupled_pair(double gamma_over_2pi, double ell_mhz, double delta_plus_mhz, double delta_e_mhz) {
    DimerParams p;
    p.gamma1 = p.gamma2 = rate(gamma_over_2pi);
    p.delta_minus = mhz(2320);
    p.delta_plus = mhz(delta_plus_mhz);
    p.delta_e = mhz(delta_e_mhz);
    p.ell1 = p.ell2 = mhz(ell_mhz);
    return p;
}

InitialState family(InitialFamily f) {
    InitialState s;
    s.family = f;
    return s;
}

InitialState product(double gamma, double zeta) {
    InitialState s = family(InitialFamily::product);
    s.gamma = gamma;
    s.zeta = zeta;
    return s;
}

ScenarioPreset spectrum_preset(std::string name, std::string description, DimerParams p) {
    ScenarioPreset s;
    s.name = std::move(name);
    s.description = std::move(description);
    s.kind = PresetKind::spectrum;
    s.params = p;
    s.axis = {"ell_mhz", 10, 300, 30};
    s.horizon_gamma_units = 50;
    return s;
}

ScenarioPreset dynamics_preset(std::string name, std::string description, DimerParams p, InitialState init,
                               AxisRange axis, double horizon) {
    ScenarioPreset s;
    s.name = std::move(name);
    s.description = std::move(description);
    s.kind = PresetKind::dynamics;
    s.params = p;
    s.initial = init;
    s.axis = std::move(axis);
    s.horizon_gamma_units = horizon;
    return s;
}

std::map<std::string, ScenarioPreset> make_registry() {
    std::map<std::string, ScenarioPreset> r;
    auto add = [&r](ScenarioPreset s) { r.emplace(s.name, std::move(s)); };

    const AxisRange alpha_axis{"alpha", 0.0, 1.0, 51};
    const AxisRange gamma_axis{"gamma", 0.0, 1.0, 51};
    const AxisRange zeta_axis{"zeta", 0.0, 1.0, 51};

    add(spectrum_preset("fig1a", "fluorescence spectrum of the measured pair, ell = 200 MHz",
                        measured_pair(200, 200, 0, -160)));
    {
        DimerParams p = measured_pair(200, 200, 0, -160);
        p.delta_minus = 0.0;
        add(spectrum_preset("fig1b", "degenerate pair (delta_minus = 0), ell = 200 MHz", p));
    }
    {
        DimerParams p = measured_pair(100, 100, 0, -160);
        p.gamma1 = p.gamma2 = rate(9);
        p.gamma12 = rate(4.5);
        add(spectrum_preset("fig1cd", "narrow-line pair (gamma = 18 pi MHz), ell = 100 MHz", p));
    }

    add(dynamics_preset("fig2a", "strong symmetric driving at the mean resonance",
                        measured_pair(500, 500, 0, 0), family(InitialFamily::psi_alpha), alpha_axis, 10));
    add(dynamics_preset("fig2b", "asymmetric driving (300 / 500 MHz) at the mean resonance",
                        measured_pair(300, 500, 0, 0), family(InitialFamily::psi_alpha), alpha_axis, 50));
    add(dynamics_preset("fig2c", "asymmetric driving, laser resonant with qubit 2",
                        measured_pair(300, 500, 2320, 0), family(InitialFamily::psi_alpha), alpha_axis, 50));
    add(dynamics_preset("fig2d", "asymmetric driving, laser resonant with qubit 1",
                        measured_pair(300, 500, -2320, 0), family(InitialFamily::psi_alpha), alpha_axis, 50));

    add(dynamics_preset("fig3a", "|1> (x) superposition, weak driving, laser on qubit 2",
                        measured_pair(100, 100, 2320, -160), product(0.0, 0.5), zeta_axis, 50));
    add(dynamics_preset("fig3b", "|1> (x) superposition, asymmetric driving, laser on qubit 2",
                        measured_pair(300, 500, 2320, -160), product(0.0, 0.5), zeta_axis, 50));
    add(dynamics_preset("fig3c", "|1> (x) superposition, weak driving, laser on qubit 1",
                        measured_pair(100, 100, -2320, -160), product(0.0, 0.5), zeta_axis, 50));
    add(dynamics_preset("fig3d", "|1> (x) superposition, asymmetric driving, laser on qubit 1",
                        measured_pair(300, 500, -2320, -160), product(0.0, 0.5), zeta_axis, 50));

    {
        // Undriven, so the optical sum detuning only rotates coherences the
        // X family never populates; it is left at zero.
        DimerParams p;
        p.gamma1 = p.gamma2 = rate(50);
        p.delta_minus = mhz(2320);
        InitialState init = family(InitialFamily::x_family);
        add(dynamics_preset("fig4-vacuum", "X-state family under independent spontaneous emission", p, init,
                            {"a", 0.0, 1.0, 51}, 10));
    }

    const double zetas[] = {0.0, 0.5, 1.0};
    const char* suffix[] = {"a", "b", "c"};
    for (int k = 0; k < 3; ++k) {
        add(dynamics_preset(fmt::format("fig5{}", suffix[k]),
                            fmt::format("product states, coupled pair, zeta = {}", zetas[k]),
                            measured_pair(100, 100, 0, -160), product(0.5, zetas[k]), gamma_axis, 50));
        add(dynamics_preset(fmt::format("fig6{}", suffix[k]),
                            fmt::format("product states, uncoupled pair (gamma = 10 pi MHz), zeta = {}", zetas[k]),
                            uncoupled_pair(5, 200, 2638, -160), product(0.5, zetas[k]), gamma_axis, 10));
    }

    add(dynamics_preset("fig7a", "laser-strength sweep, gamma = zeta = 1/2, V12 = 950 MHz",
                        measured_pair(100, 100, 0, -160), product(0.5, 0.5), {"ell_mhz", 0, 1000, 51}, 50));
    {
        DimerParams p = measured_pair(100, 100, 0, -160);
        p.v12 = mhz(50);
        add(dynamics_preset("fig7b", "laser-strength sweep, gamma = zeta = 1/2, V12 = 50 MHz", p,
                            product(0.5, 0.5), {"ell_mhz", 0, 1000, 51}, 50));
    }

    add(dynamics_preset("fig8a", "uncoupled pair (gamma = 10 pi MHz), alpha sweep at ell = 200 MHz",
                        uncoupled_pair(5, 200, 2638, -160), family(InitialFamily::psi_alpha), alpha_axis, 10));
    add(dynamics_preset("fig8b", "uncoupled pair (gamma = 10 pi MHz), laser sweep at alpha = 1/2",
                        uncoupled_pair(5, 200, 2638, -160), family(InitialFamily::psi_alpha),
                        {"ell_mhz", 0, 500, 51}, 10));

    add(dynamics_preset("fig-collapse-revival", "uncoupled pair (gamma = 4 pi MHz) with the |11> shift",
                        uncoupled_pair(2, 200, 2638, -160), family(InitialFamily::psi_alpha), alpha_axis, 10));
    add(dynamics_preset("fig-interplay", "laser strength against the |11> shift, alpha = 1/2",
                        uncoupled_pair(2, 200, 2638, -160), family(InitialFamily::psi_alpha),
                        {"ell_mhz", 1, 200, 2}, 10));
    add(dynamics_preset("fig-interplay-inset", "undriven |00>/|11> superpositions, gamma = 4 pi MHz",
                        uncoupled_pair(2, 0, 20000, -160), family(InitialFamily::psi_zero_one), alpha_axis, 10));
    return r;
}

const std::map<std::string, ScenarioPreset>& registry() {
    static const auto r = make_registry();
    return r;
}

bool is_family_axis(const std::string& axis) {
    return axis == "alpha" || axis == "gamma" || axis == "zeta" || axis == "a" || axis == "p";
}

}  // namespace

std::string to_string(InitialFamily f) {
    switch (f) {
        case InitialFamily::ground: return "ground";
        case InitialFamily::psi_alpha: return "psi_alpha";
        case InitialFamily::psi_zero_one: return "psi_zero_one";
        case InitialFamily::product: return "product";
        case InitialFamily::x_family: return "x_family";
        case InitialFamily::x_state: return "x_state";
        case InitialFamily::werner: return "werner";
    }
    return "unknown";
}

InitialFamily initial_family_from_string(const std::string& name) {
    for (auto f : {InitialFamily::ground, InitialFamily::psi_alpha, InitialFamily::psi_zero_one,
                   InitialFamily::product, InitialFamily::x_family, InitialFamily::x_state, InitialFamily::werner})
        if (to_string(f) == name) return f;
    throw InvalidParameter(fmt::format("unknown initial-state family '{}'", name));
}

DensityMatrix InitialState::build() const {
    switch (family) {
        case InitialFamily::ground: return ground_state();
        case InitialFamily::psi_alpha: return psi_alpha(alpha, phi);
        case InitialFamily::psi_zero_one: return psi_zero_one(alpha, phi);
        case InitialFamily::product: return product_state(gamma, zeta, phase1, phase2);
        case InitialFamily::x_family: return x_state(XStateSpec::mixed_family(a));
        case InitialFamily::x_state: return x_state(x);
        case InitialFamily::werner: return werner_state(p);
    }
    throw InvalidParameter("unknown initial-state family");
}

bool InitialState::operator==(const InitialState& o) const {
    return family == o.family && alpha == o.alpha && phi == o.phi && gamma == o.gamma && zeta == o.zeta &&
           phase1 == o.phase1 && phase2 == o.phase2 && a == o.a && p == o.p && x.a == o.x.a && x.b == o.x.b &&
           x.c == o.x.c && x.d == o.x.d && x.w == o.x.w && x.z == o.x.z;
}

std::vector<double> AxisRange::values() const {
    if (points < 1) throw InvalidParameter("axis needs at least one point");
    if (points == 1) return {start};
    std::vector<double> v(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k)
        v[static_cast<std::size_t>(k)] = start + (stop - start) * k / (points - 1);
    return v;
}

const ScenarioPreset& preset(const std::string& name) {
    const auto& r = registry();
    const auto it = r.find(name);
    if (it == r.end())
        throw LookupError(fmt::format("unknown preset '{}'; available: {}", name, fmt::join(preset_names(), ", ")));
    return it->second;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, _] : registry()) names.push_back(name);
    return names;
}

std::vector<std::string> axis_names() {
    return {"alpha",   "gamma",   "zeta",        "a",           "p",           "ell_mhz", "ell1_mhz",
            "ell2_mhz", "v12_mhz", "delta_e_mhz", "delta_plus_mhz", "delta_minus_mhz"};
}

void apply_axis(const std::string& axis, double value, DimerParams& params, InitialState& init) {
    if (!std::isfinite(value)) throw InvalidParameter(fmt::format("axis value for {} must be finite", axis));
    if (is_family_axis(axis)) {
        const auto f = init.family;
        const bool ok = (axis == "alpha" && (f == InitialFamily::psi_alpha || f == InitialFamily::psi_zero_one)) ||
                        ((axis == "gamma" || axis == "zeta") && f == InitialFamily::product) ||
                        (axis == "a" && f == InitialFamily::x_family) || (axis == "p" && f == InitialFamily::werner);
        if (!ok)
            throw InvalidParameter(
                fmt::format("axis '{}' does not parametrize the {} family", axis, to_string(f)));
        if (axis == "alpha") init.alpha = value;
        if (axis == "gamma") init.gamma = value;
        if (axis == "zeta") init.zeta = value;
        if (axis == "a") init.a = value;
        if (axis == "p") init.p = value;
        return;
    }
    const double v = mhz(value);
    if (axis == "ell_mhz") params.ell1 = params.ell2 = v;
    else if (axis == "ell1_mhz") params.ell1 = v;
    else if (axis == "ell2_mhz") params.ell2 = v;
    else if (axis == "v12_mhz") params.v12 = v;
    else if (axis == "delta_e_mhz") params.delta_e = v;
    else if (axis == "delta_plus_mhz") params.delta_plus = v;
    else if (axis == "delta_minus_mhz") params.delta_minus = v;
    else
        throw InvalidParameter(fmt::format("unknown sweep axis '{}'; available: {}", axis, fmt::join(axis_names(), ", ")));
}

std::vector<double> sweep_times(const ScenarioPreset& preset, const SweepOptions& opts) {
    const double horizon_units = opts.horizon_gamma_units > 0 ? opts.horizon_gamma_units : preset.horizon_gamma_units;
    const int samples = opts.samples > 0 ? opts.samples : preset.samples;
    return uniform_times(horizon_units / preset.params.mean_gamma(), samples);
}

SweepGrid run_sweep(const ScenarioPreset& preset, const std::string& axis, const std::vector<double>& values,
                    const SweepOptions& opts) {
    if (values.empty()) throw InvalidParameter("sweep axis has no values");
    if (preset.kind != PresetKind::dynamics)
        throw InvalidParameter(fmt::format("preset '{}' describes a spectrum, not dynamics", preset.name));

    SweepGrid grid;
    grid.preset = preset.name;
    grid.axis = axis;
    grid.axis_values = values;
    grid.times = sweep_times(preset, opts);
    grid.tol = opts.tol;
    grid.rows.resize(values.size());

    // Validate every point up front so configuration errors surface before work starts.
    std::vector<std::pair<DimerParams, InitialState>> points(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        points[k] = {preset.params, preset.initial};
        apply_axis(axis, values[k], points[k].first, points[k].second);
        points[k].first.validate();
    }

    EvolveOptions eo;
    eo.tol = opts.tol;
    parallel_for(values.size(), opts.threads, [&](std::size_t k) {
        const auto& [params, init] = points[k];
        try {
            grid.rows[k] = concurrence_series(evolve(init.build(), params, grid.times, eo));
        } catch (const IntegrationFailure& e) {
            throw IntegrationFailure(fmt::format("{} = {}: {}", axis, values[k], e.what()), e.time_us());
        }
    });
    return grid;
}

StationaryConcurrence stationary_concurrence(const ScenarioPreset& preset, const std::string& axis,
                                             double axis_value, double horizon_us, double tol) {
    DimerParams params = preset.params;
    InitialState init = preset.initial;
    apply_axis(axis, axis_value, params, init);
    params.validate();
    if (!(horizon_us * params.mean_gamma() >= 20.0 * (1.0 - 1e-12)))
        throw InvalidParameter("stationary check needs a horizon of at least 20 / gamma");

    StationaryConcurrence out{};
    out.steady = concurrence(steady_state(params));

    EvolveOptions eo;
    eo.tol = tol;
    const auto times = uniform_times(horizon_us, preset.samples);
    const auto series = concurrence_series(evolve(init.build(), params, times, eo));
    double sum = 0.0;
    int count = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (times[k] >= 0.9 * horizon_us) {
            sum += series.values[k];
            ++count;
        }
    }
    out.tail_mean = sum / count;
    if (std::abs(out.tail_mean - out.steady) > 0.01)
        throw NonStationary(fmt::format("steady-state concurrence {:.4f} differs from trajectory tail {:.4f}",
                                        out.steady, out.tail_mean));
    return out;
}

}  // namespace dimer
