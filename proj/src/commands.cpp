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

#include "dimer/commands.hpp"

#include "dimer/entanglement.hpp"
#include "dimer/errors.hpp"
#include "dimer/propagation.hpp"
#include "dimer/scenarios.hpp"
#include "dimer/stationary.hpp"
#include "dimer/version.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

namespace dimer {

namespace {

using json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr double kRefineResolutionGammaUnits = 1e-4;

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError(fmt::format("cannot open '{}' for writing", path));
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) throw IoError(fmt::format("write to '{}' failed", path));
}

/// Writes the CSV and returns the stream for the human-readable summary.
std::ostream& emit_csv(const RunConfig& config, const std::string& csv, CommandStreams io) {
    if (config.output.path) {
        write_file(*config.output.path, csv);
        return io.out;
    }
    io.out << csv;
    io.out.flush();
    return io.err;
}

std::optional<std::string> sidecar_path(const RunConfig& config) {
    if (config.output.sidecar) return config.output.sidecar;
    if (config.output.path) return *config.output.path + ".json";
    return std::nullopt;
}

/// Undriven, uncoupled pair with equal decay rates: the setting in which the
/// closed-form X-state solutions hold.
bool closed_form_setting(const DimerParams& p) {
    return p.v12 == 0.0 && p.gamma12 == 0.0 && p.ell1 == 0.0 && p.ell2 == 0.0 && p.gamma1 == p.gamma2 &&
           p.gamma1 > 0.0;
}

std::optional<double> closed_form_death(const DimerParams& p, const InitialState& init) {
    if (!closed_form_setting(p)) return std::nullopt;
    if (init.family == InitialFamily::x_family) return esd_time_x_family(init.a, p.gamma1);
    if (init.family == InitialFamily::psi_zero_one) return esd_time_pair_superposition(init.alpha, p.gamma1);
    return std::nullopt;
}

json params_json(const DimerParams& p) {
    json j;
    j["gamma1_mhz_over_2pi"] = to_mhz(p.gamma1);
    j["gamma2_mhz_over_2pi"] = to_mhz(p.gamma2);
    j["gamma12_mhz_over_2pi"] = to_mhz(p.gamma12);
    j["v12_mhz"] = to_mhz(p.v12);
    j["delta_minus_mhz"] = to_mhz(p.delta_minus);
    j["delta_plus_mhz"] = to_mhz(p.delta_plus);
    j["delta_e_mhz"] = to_mhz(p.delta_e);
    j["ell1_mhz"] = to_mhz(p.ell1);
    j["ell2_mhz"] = to_mhz(p.ell2);
    return j;
}

json event_json(const EsdEvent& e, double gamma) {
    json j;
    j["kind"] = to_string(e.kind);
    j["time_us"] = e.time_us;
    j["time_ns"] = e.time_us * 1e3;
    if (gamma > 0.0) j["time_gamma_units"] = e.time_us * gamma;
    j["resolved"] = e.resolved;
    return j;
}

json provenance_json(const RunConfig& config, const char* command) {
    json j;
    j["tool"] = "dimer";
    j["version"] = kVersion;
    j["command"] = command;
    j["preset"] = config.preset ? json(*config.preset) : json(nullptr);
    j["config"] = serialize(config);
    return j;
}

std::string describe(const EsdEvent& e, double gamma) {
    return fmt::format("{} at t = {:.6g} us ({:.6g} ns, {:.6g} / gamma)", to_string(e.kind), e.time_us,
                       e.time_us * 1e3, e.time_us * gamma);
}

}  // namespace

void cmd_spectrum(const RunConfig& config, const CommandOptions& opts, CommandStreams io) {
    const DimerParams params = config.params();
    params.validate();
    const auto grid = config.detuning_grid_mhz();
    const auto curve = spectrum_scan(params, grid, opts.threads);

    fmt::memory_buffer csv;
    fmt::format_to(std::back_inserter(csv), "delta_plus_half_mhz,signal,p01,p10,p11\n");
    for (std::size_t k = 0; k < grid.size(); ++k)
        fmt::format_to(std::back_inserter(csv), "{},{},{},{},{}\n", grid[k], curve.signal[k], curve.p01[k],
                       curve.p10[k], curve.p11[k]);
    std::ostream& summary = emit_csv(config, fmt::to_string(csv), io);

    const auto peaks = find_peaks(curve);
    summary << fmt::format("{} peaks\n", peaks.size());
    for (const auto& p : peaks)
        summary << fmt::format("  delta_plus/2 = {:.2f} MHz  signal = {:.6g}\n", p.location_mhz, p.height);
}

void cmd_evolve(const RunConfig& config, const CommandOptions&, CommandStreams io) {
    const DimerParams params = config.params();
    params.validate();
    const InitialState init = config.initial_state();
    const auto times = uniform_times(config.horizon_us(), config.samples());

    EvolveOptions eo;
    eo.tol = config.tol();
    const auto traj = evolve(init.build(), params, times, eo);
    const auto series = concurrence_series(traj);

    const double gamma = params.mean_gamma();
    const double resolution = gamma > 0.0 ? kRefineResolutionGammaUnits / gamma : times.back() * 1e-6;
    const auto refine = make_refinement(traj, params, resolution);
    const auto events = detect_events(series, config.esd_eps(), &refine);

    fmt::memory_buffer csv;
    fmt::format_to(std::back_inserter(csv),
                   "time_us,concurrence,p00,p01,p10,p11,re_rho0011,im_rho0011,re_rho0110,im_rho0110\n");
    for (std::size_t k = 0; k < times.size(); ++k) {
        const auto& r = traj.states[k];
        fmt::format_to(std::back_inserter(csv), "{},{},{},{},{},{},{},{},{},{}\n", times[k], series.values[k],
                       r.population(k00), r.population(k01), r.population(k10), r.population(k11),
                       r(k00, k11).real(), r(k00, k11).imag(), r(k01, k10).real(), r(k01, k10).imag());
    }
    std::ostream& summary = emit_csv(config, fmt::to_string(csv), io);

    json side;
    side["schema_version"] = kSchemaVersion;
    side["provenance"] = provenance_json(config, "evolve");
    json meta;
    meta["method"] = to_string(traj.meta.method);
    meta["tol"] = traj.meta.tol;
    meta["samples"] = times.size();
    meta["horizon_us"] = times.back();
    meta["accepted_steps"] = traj.meta.accepted_steps;
    meta["rejected_steps"] = traj.meta.rejected_steps;
    meta["esd_eps"] = config.esd_eps();
    meta["initial_family"] = to_string(init.family);
    meta["params"] = params_json(params);
    side["metadata"] = meta;
    side["events"] = json::array();
    for (const auto& e : events) side["events"].push_back(event_json(e, gamma));

    if (closed_form_setting(params) && init.family == InitialFamily::psi_zero_one && init.phi == 0.0) {
        double worst = 0.0;
        for (std::size_t k = 0; k < times.size(); ++k) {
            const auto exact =
                analytic_undriven_state(init.alpha, times[k], params.gamma1, params.delta_e, params.delta_plus);
            worst = std::max(worst, max_abs(traj.states[k].matrix() - exact.matrix()));
        }
        side["analytic_max_deviation"] = worst;
    }
    if (closed_form_setting(params)) {
        if (init.family == InitialFamily::x_family || init.family == InitialFamily::psi_zero_one) {
            const auto t = closed_form_death(params, init);
            side["closed_form_death_us"] = t ? json(*t) : json(nullptr);
        }
    }

    for (const auto& e : events) summary << describe(e, gamma) << '\n';
    if (events.empty()) summary << "no death or birth events\n";
    if (const auto path = sidecar_path(config)) write_file(*path, side.dump(2) + "\n");
}

void cmd_sweep(const RunConfig& config, const CommandOptions& opts, CommandStreams io) {
    const ScenarioPreset base = config.base_preset();
    const AxisRange axis = config.axis();
    const auto values = axis.values();

    SweepOptions so;
    so.tol = config.tol();
    so.threads = opts.threads;
    so.samples = config.samples();
    const double gamma = base.params.mean_gamma();
    if (config.grid.t_end_us) {
        if (!(gamma > 0.0)) throw ConfigError("grid.t_end_us", "sweeps need nonzero decay");
        so.horizon_gamma_units = *config.grid.t_end_us * gamma;
    } else {
        so.horizon_gamma_units = config.grid.t_end_gamma_units.value_or(base.horizon_gamma_units);
    }
    const auto grid = run_sweep(base, axis.name, values, so);

    fmt::memory_buffer csv;
    fmt::format_to(std::back_inserter(csv), "axis_value,time_us,concurrence\n");
    for (std::size_t r = 0; r < values.size(); ++r)
        for (std::size_t c = 0; c < grid.times.size(); ++c)
            fmt::format_to(std::back_inserter(csv), "{},{},{}\n", values[r], grid.times[c], grid.value(r, c));
    std::ostream& summary = emit_csv(config, fmt::to_string(csv), io);

    json side;
    side["schema_version"] = kSchemaVersion;
    side["provenance"] = provenance_json(config, "sweep");
    json meta;
    meta["axis"] = axis.name;
    meta["axis_points"] = values.size();
    meta["samples"] = grid.times.size();
    meta["horizon_us"] = grid.times.back();
    meta["tol"] = grid.tol;
    meta["esd_eps"] = config.esd_eps();
    meta["initial_family"] = to_string(base.initial.family);
    meta["params"] = params_json(base.params);
    side["metadata"] = meta;

    json rows = json::array();
    json table = json::array();
    double worst_rel = 0.0;
    bool have_table = false;
    for (std::size_t r = 0; r < values.size(); ++r) {
        DimerParams p = base.params;
        InitialState init = base.initial;
        apply_axis(axis.name, values[r], p, init);
        const double g = p.mean_gamma();
        const auto events = detect_events(grid.rows[r], config.esd_eps());

        json row;
        row["axis_value"] = values[r];
        row["events"] = json::array();
        for (const auto& e : events) row["events"].push_back(event_json(e, g));
        rows.push_back(row);

        summary << fmt::format("{} = {:.6g}:", axis.name, values[r]);
        for (const auto& e : events)
            summary << fmt::format(" {} {:.6g}/gamma", to_string(e.kind), e.time_us * g);
        if (events.empty()) summary << " no events";
        summary << '\n';

        const bool family_axis = (axis.name == "a" && init.family == InitialFamily::x_family) ||
                                 (axis.name == "alpha" && init.family == InitialFamily::psi_zero_one);
        if (!family_axis || !closed_form_setting(p)) continue;
        have_table = true;
        const auto exact = closed_form_death(p, init);
        std::optional<double> numeric;
        if (!events.empty() && events.front().kind == EventKind::death) numeric = events.front().time_us;
        json entry;
        entry["axis_value"] = values[r];
        entry["numeric_us"] = numeric ? json(*numeric) : json(nullptr);
        entry["closed_form_us"] = exact ? json(*exact) : json(nullptr);
        if (numeric && exact && *exact > 0.0) {
            const double rel = std::abs(*numeric - *exact) / *exact;
            entry["relative_error"] = rel;
            worst_rel = std::max(worst_rel, rel);
        } else {
            entry["relative_error"] = nullptr;
            entry["agrees"] = numeric.has_value() == exact.has_value();
        }
        table.push_back(entry);
    }
    side["rows"] = rows;
    if (have_table) {
        json cmp;
        cmp["rows"] = table;
        cmp["max_relative_error"] = worst_rel;
        side["closed_form_comparison"] = cmp;
        summary << fmt::format("closed-form death times: max relative error {:.3g}\n", worst_rel);
    }
    if (const auto path = sidecar_path(config)) write_file(*path, side.dump(2) + "\n");
}

void cmd_steady(const RunConfig& config, const CommandOptions&, CommandStreams io) {
    const DimerParams params = config.params();
    params.validate();
    const auto rho = steady_state(params);

    fmt::memory_buffer csv;
    const auto row = [&csv](const char* name, double v) { fmt::format_to(std::back_inserter(csv), "{},{}\n", name, v); };
    fmt::format_to(std::back_inserter(csv), "quantity,value\n");
    row("p00", rho.population(k00));
    row("p01", rho.population(k01));
    row("p10", rho.population(k10));
    row("p11", rho.population(k11));
    row("re_rho0011", rho(k00, k11).real());
    row("im_rho0011", rho(k00, k11).imag());
    row("re_rho0110", rho(k01, k10).real());
    row("im_rho0110", rho(k01, k10).imag());
    row("concurrence", concurrence(rho));
    row("signal", fluorescence_signal(rho));
    row("residual", steady_state_residual(params, rho));
    std::ostream& summary = emit_csv(config, fmt::to_string(csv), io);
    summary << fmt::format("steady-state concurrence {:.6g}\n", concurrence(rho));
}

void cmd_esd_oracle(const std::string& family, const std::vector<double>& values, double gamma_mhz_over_2pi,
                    const std::string& output_path, CommandStreams io) {
    if (family != "a" && family != "alpha")
        throw InvalidParameter(fmt::format("unknown family '{}'; use a or alpha", family));
    if (values.empty()) throw InvalidParameter("no family values given");
    const double gamma = to_angular(gamma_mhz_over_2pi, QuotedAs::rate_over_2pi);

    fmt::memory_buffer csv;
    fmt::format_to(std::back_inserter(csv), "{},esd_time_us,esd_time_ns\n", family);
    for (double v : values) {
        const auto t = family == "a" ? esd_time_x_family(v, gamma) : esd_time_pair_superposition(v, gamma);
        if (t)
            fmt::format_to(std::back_inserter(csv), "{},{},{}\n", v, *t, *t * 1e3);
        else
            fmt::format_to(std::back_inserter(csv), "{},,\n", v);
    }
    if (output_path.empty()) {
        io.out << fmt::to_string(csv);
    } else {
        write_file(output_path, fmt::to_string(csv));
    }
}

void cmd_preset_list(std::ostream& out) {
    for (const auto& name : preset_names()) out << fmt::format("{:<22} {}\n", name, preset(name).description);
}

void cmd_preset_show(const std::string& name, std::ostream& out) { out << serialize(config_for_preset(name)); }

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const IoError*>(&e)) return kExitIo;
    if (dynamic_cast<const NumericalFailure*>(&e)) return kExitNumerical;
    return kExitUsage;
}

int run_guarded(std::ostream& err, const std::function<void()>& body) {
    try {
        body();
        return kExitOk;
    } catch (const std::exception& e) {
        const int code = exit_code_for(e);
        const char* label = code == kExitIo ? "I/O error" : code == kExitNumerical ? "numerical failure" : "error";
        err << fmt::format("dimer: {}: {}\n", label, e.what());
        return code;
    }
}

}  // namespace dimer
