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
#include "dimer/config.hpp"
#include "dimer/errors.hpp"
#include "dimer/parallel.hpp"
#include "dimer/version.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

struct GlobalFlags {
    std::optional<double> tol;
    int threads = 0;
    std::optional<std::string> output;
    std::optional<std::string> sidecar;
    std::optional<std::string> config_path;
    std::optional<std::string> preset;
    bool permissive = false;
};

dimer::RunConfig resolve_config(const GlobalFlags& g) {
    dimer::RunConfig c;
    if (g.config_path) {
        c = dimer::load_config(*g.config_path, {g.permissive});
        if (g.preset && c.preset && *c.preset != *g.preset)
            throw dimer::ConfigError("system.preset",
                                     fmt::format("config names '{}' but --preset gives '{}'", *c.preset, *g.preset));
    } else if (!g.preset) {
        throw dimer::ConfigError("", "give --config FILE or --preset NAME");
    }
    if (g.preset && !c.preset) {
        c.preset = *g.preset;
        try {
            dimer::preset(*c.preset);
        } catch (const dimer::LookupError& e) {
            throw dimer::ConfigError("--preset", e.what());
        }
        if (!c.initial && dimer::preset(*c.preset).kind == dimer::PresetKind::dynamics)
            c.initial = dimer::preset(*c.preset).initial;
    }
    if (g.tol) {
        if (!(*g.tol >= 1e-13 && *g.tol <= 1e-3)) throw dimer::ConfigError("--tol", "tolerance must lie in [1e-13, 1e-3]");
        c.grid.tol = g.tol;
    }
    if (g.output) c.output.path = g.output;
    if (g.sidecar) c.output.sidecar = g.sidecar;
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven, dissipative two-qubit dimer: spectra, dynamics and entanglement"};
    app.set_version_flag("--version", dimer::kVersion);
    app.require_subcommand(0, 1);
    app.fallthrough();

    GlobalFlags g;
    bool list_presets = false;
    app.add_option("--tol", g.tol, "Integrator tolerance in [1e-13, 1e-3] (default 1e-9)");
    app.add_option("--threads", g.threads,
                   "Worker threads; overrides DIMER_THREADS (default: DIMER_THREADS, else all cores)");
    app.add_option("--output,-o", g.output, "CSV output path (default: standard output)");
    app.add_option("--sidecar", g.sidecar, "JSON sidecar path (default: <output>.json)");
    app.add_option("--config,-c", g.config_path, "INI run configuration");
    app.add_option("--preset,-p", g.preset, "Named scenario preset");
    app.add_flag("--permissive", g.permissive, "Ignore unknown config keys");
    app.add_flag("--list-presets", list_presets, "List the registered presets and exit");

    auto* spectrum = app.add_subcommand("spectrum", "Steady-state fluorescence spectrum over delta_plus / 2");
    auto* evolve = app.add_subcommand("evolve", "One trajectory with concurrence and ESD / ESB events");
    auto* sweep = app.add_subcommand("sweep", "Concurrence over an axis of initial states or parameters");
    auto* steady = app.add_subcommand("steady", "Steady state and its concurrence");

    auto* oracle = app.add_subcommand("esd-oracle", "Closed-form death times of the undriven pair");
    std::string family = "a";
    std::vector<double> values;
    double gamma_mhz = 50.0;
    oracle->add_option("--family", family, "a (X family) or alpha (|00>,|11> superposition)")
        ->check(CLI::IsMember({"a", "alpha"}));
    oracle->add_option("--values", values, "Family parameter values, comma separated")->delimiter(',')->required();
    oracle->add_option("--gamma-mhz-over-2pi", gamma_mhz, "Decay rate quoted in MHz over 2pi (default 50)");

    auto* presets = app.add_subcommand("preset", "Inspect the preset registry");
    presets->require_subcommand(1);
    auto* preset_list = presets->add_subcommand("list", "List presets");
    auto* preset_show = presets->add_subcommand("show", "Print a preset as a config file");
    std::string show_name;
    preset_show->add_option("name", show_name, "Preset name")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? dimer::kExitOk : dimer::kExitUsage;
    }

    dimer::CommandStreams io{std::cout, std::cerr};
    return dimer::run_guarded(std::cerr, [&] {
        if (list_presets || preset_list->parsed()) {
            dimer::cmd_preset_list(std::cout);
            return;
        }
        if (preset_show->parsed()) {
            dimer::cmd_preset_show(show_name, std::cout);
            return;
        }
        if (oracle->parsed()) {
            dimer::cmd_esd_oracle(family, values, gamma_mhz, g.output.value_or(""), io);
            return;
        }
        if (app.get_subcommands().empty()) throw dimer::ConfigError("", "no subcommand given; see --help");

        const dimer::RunConfig config = resolve_config(g);
        const dimer::CommandOptions opts{dimer::resolve_threads(g.threads)};
        if (spectrum->parsed()) dimer::cmd_spectrum(config, opts, io);
        if (evolve->parsed()) dimer::cmd_evolve(config, opts, io);
        if (sweep->parsed()) dimer::cmd_sweep(config, opts, io);
        if (steady->parsed()) dimer::cmd_steady(config, opts, io);
    });
}
