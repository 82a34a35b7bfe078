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

#include "dimer/config.hpp"

#include "dimer/errors.hpp"
#include "dimer/stationary.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace dimer {

namespace {

using boost::property_tree::ptree;

struct SystemKey {
    const char* name;
    const char* base;
    std::optional<double> SystemBlock::*field;
};

constexpr SystemKey kSystemKeys[] = {
    {"gamma1_mhz_over_2pi", "gamma1", &SystemBlock::gamma1_mhz_over_2pi},
    {"gamma2_mhz_over_2pi", "gamma2", &SystemBlock::gamma2_mhz_over_2pi},
    {"gamma12_mhz_over_2pi", "gamma12", &SystemBlock::gamma12_mhz_over_2pi},
    {"v12_mhz", "v12", &SystemBlock::v12_mhz},
    {"delta_minus_mhz", "delta_minus", &SystemBlock::delta_minus_mhz},
    {"delta_plus_mhz", "delta_plus", &SystemBlock::delta_plus_mhz},
    {"delta_e_mhz", "delta_e", &SystemBlock::delta_e_mhz},
    {"ell1_mhz", "ell1", &SystemBlock::ell1_mhz},
    {"ell2_mhz", "ell2", &SystemBlock::ell2_mhz},
};

std::string fmt_double(double v) { return fmt::format("{}", v); }

double parse_double(const std::string& path, const std::string& text) {
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || text.empty())
        throw ConfigError(path, fmt::format("'{}' is not a number", text));
    if (!std::isfinite(v)) throw ConfigError(path, "value must be finite");
    return v;
}

int parse_int(const std::string& path, const std::string& text) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
        throw ConfigError(path, fmt::format("'{}' is not an integer", text));
    return v;
}

/// Keys of one section; remembers which ones were read so leftovers can be
/// reported as unknown.
class Section {
public:
    Section(std::string name, const ptree* tree) : name_(std::move(name)), tree_(tree) {
        if (tree_ == nullptr) return;
        std::set<std::string> seen;
        for (const auto& [key, child] : *tree_) {
            if (!seen.insert(key).second) throw ConfigError(path(key), "duplicate key");
            if (!child.empty()) throw ConfigError(path(key), "nested sections are not supported");
        }
    }

    std::string path(const std::string& key) const { return name_ + "." + key; }

    std::optional<std::string> text(const std::string& key) {
        used_.insert(key);
        if (tree_ == nullptr) return std::nullopt;
        const auto it = tree_->find(key);
        if (it == tree_->not_found()) return std::nullopt;
        return it->second.data();
    }

    std::optional<double> number(const std::string& key) {
        const auto t = text(key);
        if (!t) return std::nullopt;
        return parse_double(path(key), *t);
    }

    std::optional<int> integer(const std::string& key) {
        const auto t = text(key);
        if (!t) return std::nullopt;
        return parse_int(path(key), *t);
    }

    /// Keys present in the document but never read.
    std::vector<std::string> unused() const {
        std::vector<std::string> out;
        if (tree_ == nullptr) return out;
        for (const auto& [key, _] : *tree_)
            if (!used_.count(key)) out.push_back(key);
        return out;
    }

    bool present() const { return tree_ != nullptr; }

private:
    std::string name_;
    const ptree* tree_;
    std::set<std::string> used_;
};

void reject_unused(const Section& s, const ParseOptions& opts, const std::string& hint = "") {
    if (opts.permissive) return;
    const auto extra = s.unused();
    if (extra.empty()) return;
    throw ConfigError(s.path(extra.front()), hint.empty() ? "unknown key" : "unknown key; " + hint);
}

/// A [system] key whose stem names a known quantity but whose unit suffix is
/// wrong, e.g. `gamma1_mhz` or `v12_mhz_over_2pi`.
void check_unit_suffixes(const Section& s) {
    for (const auto& key : s.unused()) {
        for (const auto& k : kSystemKeys) {
            const std::string stem = k.base;
            if (key == stem || key.rfind(stem + "_", 0) == 0)
                throw ConfigError(s.path(key), fmt::format("unit-suffix mismatch; this quantity is written {}", k.name));
        }
    }
}

std::vector<std::string> family_keys(InitialFamily f) {
    switch (f) {
        case InitialFamily::ground: return {};
        case InitialFamily::psi_alpha:
        case InitialFamily::psi_zero_one: return {"alpha", "phi"};
        case InitialFamily::product: return {"gamma", "zeta", "phase1", "phase2"};
        case InitialFamily::x_family: return {"a"};
        case InitialFamily::x_state: return {"x_a", "x_b", "x_c", "x_d", "x_w_re", "x_w_im", "x_z_re", "x_z_im"};
        case InitialFamily::werner: return {"p"};
    }
    return {};
}

double* family_field(InitialState& s, const std::string& key) {
    if (key == "alpha") return &s.alpha;
    if (key == "phi") return &s.phi;
    if (key == "gamma") return &s.gamma;
    if (key == "zeta") return &s.zeta;
    if (key == "phase1") return &s.phase1;
    if (key == "phase2") return &s.phase2;
    if (key == "a") return &s.a;
    if (key == "p") return &s.p;
    if (key == "x_a") return &s.x.a;
    if (key == "x_b") return &s.x.b;
    if (key == "x_c") return &s.x.c;
    if (key == "x_d") return &s.x.d;
    if (key == "x_w_re") return &reinterpret_cast<double(&)[2]>(s.x.w)[0];
    if (key == "x_w_im") return &reinterpret_cast<double(&)[2]>(s.x.w)[1];
    if (key == "x_z_re") return &reinterpret_cast<double(&)[2]>(s.x.z)[0];
    if (key == "x_z_im") return &reinterpret_cast<double(&)[2]>(s.x.z)[1];
    return nullptr;
}

const ScenarioPreset* find_preset(const std::optional<std::string>& name) {
    return name ? &preset(*name) : nullptr;
}

void parse_system(Section& s, RunConfig& c, const ParseOptions& opts) {
    c.preset = s.text("preset");
    if (c.preset) {
        try {
            preset(*c.preset);
        } catch (const LookupError& e) {
            throw ConfigError(s.path("preset"), e.what());
        }
    }
    for (const auto& k : kSystemKeys) c.system.*k.field = s.number(k.name);
    check_unit_suffixes(s);
    reject_unused(s, opts);

    if (!c.preset) {
        std::vector<std::string> missing;
        for (const auto& k : kSystemKeys)
            if (!(c.system.*k.field)) missing.push_back(k.name);
        if (!missing.empty())
            throw ConfigError("system", fmt::format("missing required keys: {} (or name a preset)",
                                                    fmt::join(missing, ", ")));
    }

    const auto check_rate = [&](const char* key, const std::optional<double>& v) {
        if (v && *v < 0.0) throw ConfigError(s.path(key), "decay rate must be non-negative");
    };
    check_rate("gamma1_mhz_over_2pi", c.system.gamma1_mhz_over_2pi);
    check_rate("gamma2_mhz_over_2pi", c.system.gamma2_mhz_over_2pi);

    const DimerParams p = c.params();
    if (std::abs(p.gamma12) > std::sqrt(p.gamma1 * p.gamma2) * (1.0 + 1e-12))
        throw ConfigError(s.path("gamma12_mhz_over_2pi"),
                          fmt::format("|gamma12| = {} exceeds sqrt(gamma1 gamma2) = {} (MHz over 2pi)",
                                      std::abs(to_mhz(p.gamma12)), to_mhz(std::sqrt(p.gamma1 * p.gamma2))));
    try {
        p.validate();
    } catch (const InvalidParameter& e) {
        throw ConfigError("system", e.what());
    }
}

void parse_initial(Section& s, RunConfig& c, const ParseOptions& opts) {
    if (!s.present()) return;
    const auto family = s.text("family");
    if (!family) throw ConfigError(s.path("family"), "missing required key");
    InitialState init;
    try {
        init.family = initial_family_from_string(*family);
    } catch (const InvalidParameter& e) {
        throw ConfigError(s.path("family"), e.what());
    }
    for (const auto& key : family_keys(init.family))
        if (const auto v = s.number(key)) *family_field(init, key) = *v;
    reject_unused(s, opts, fmt::format("family {} takes: {}", *family, fmt::join(family_keys(init.family), ", ")));
    try {
        init.build();
    } catch (const Error& e) {
        throw ConfigError("initial_state", e.what());
    }
    c.initial = init;
}

void parse_grid(Section& s, RunConfig& c, const ParseOptions& opts) {
    auto& g = c.grid;
    g.t_end_us = s.number("t_end_us");
    g.t_end_gamma_units = s.number("t_end_gamma_units");
    g.samples = s.integer("samples");
    g.tol = s.number("tol");
    g.detuning_start_mhz = s.number("detuning_start_mhz");
    g.detuning_stop_mhz = s.number("detuning_stop_mhz");
    g.detuning_step_mhz = s.number("detuning_step_mhz");
    g.axis = s.text("axis");
    g.axis_start = s.number("axis_start");
    g.axis_stop = s.number("axis_stop");
    g.axis_points = s.integer("axis_points");
    g.esd_eps = s.number("esd_eps");
    reject_unused(s, opts);

    if (g.t_end_us && g.t_end_gamma_units)
        throw ConfigError(s.path("t_end_us"), "give either t_end_us or t_end_gamma_units, not both");
    if (g.t_end_us && !(*g.t_end_us > 0.0)) throw ConfigError(s.path("t_end_us"), "time horizon must be positive");
    if (g.t_end_gamma_units && !(*g.t_end_gamma_units > 0.0))
        throw ConfigError(s.path("t_end_gamma_units"), "time horizon must be positive");
    if (g.samples && *g.samples < 2) throw ConfigError(s.path("samples"), "need at least 2 samples");
    if (g.tol && !(*g.tol >= 1e-13 && *g.tol <= 1e-3))
        throw ConfigError(s.path("tol"), "tolerance must lie in [1e-13, 1e-3]");
    if (g.detuning_step_mhz && !(*g.detuning_step_mhz > 0.0))
        throw ConfigError(s.path("detuning_step_mhz"), "step must be positive");
    if (g.axis) {
        const auto names = axis_names();
        if (std::find(names.begin(), names.end(), *g.axis) == names.end())
            throw ConfigError(s.path("axis"), fmt::format("unknown axis; available: {}", fmt::join(names, ", ")));
    }
    if (g.axis_points && *g.axis_points < 1) throw ConfigError(s.path("axis_points"), "need at least one point");
    if (g.esd_eps && !(*g.esd_eps > 0.0)) throw ConfigError(s.path("esd_eps"), "threshold must be positive");
}

void parse_output(Section& s, RunConfig& c, const ParseOptions& opts) {
    c.output.path = s.text("path");
    c.output.sidecar = s.text("sidecar");
    reject_unused(s, opts);
    if (c.output.path && c.output.path->empty()) throw ConfigError(s.path("path"), "path is empty");
    if (c.output.sidecar && c.output.sidecar->empty()) throw ConfigError(s.path("sidecar"), "path is empty");
}

template <class T>
void put(std::ostringstream& out, const char* key, const std::optional<T>& v) {
    if (!v) return;
    if constexpr (std::is_same_v<T, double>)
        out << key << " = " << fmt_double(*v) << '\n';
    else
        out << key << " = " << *v << '\n';
}

}  // namespace

DimerParams RunConfig::params() const {
    DimerParams p;
    if (const auto* base = find_preset(preset)) p = base->params;
    const auto rate = [](const std::optional<double>& v, double& dst) {
        if (v) dst = to_angular(*v, QuotedAs::rate_over_2pi);
    };
    const auto freq = [](const std::optional<double>& v, double& dst) {
        if (v) dst = to_angular(*v, QuotedAs::frequency);
    };
    rate(system.gamma1_mhz_over_2pi, p.gamma1);
    rate(system.gamma2_mhz_over_2pi, p.gamma2);
    rate(system.gamma12_mhz_over_2pi, p.gamma12);
    freq(system.v12_mhz, p.v12);
    freq(system.delta_minus_mhz, p.delta_minus);
    freq(system.delta_plus_mhz, p.delta_plus);
    freq(system.delta_e_mhz, p.delta_e);
    freq(system.ell1_mhz, p.ell1);
    freq(system.ell2_mhz, p.ell2);
    return p;
}

InitialState RunConfig::initial_state() const {
    if (initial) return *initial;
    if (const auto* base = find_preset(preset)) return base->initial;
    return InitialState{};
}

ScenarioPreset RunConfig::base_preset() const {
    ScenarioPreset s;
    if (const auto* base = find_preset(preset)) {
        s = *base;
    } else {
        s.name = "custom";
        s.description = "parameters from a config file";
        s.axis = {"", 0.0, 1.0, 51};
    }
    s.params = params();
    s.initial = initial_state();
    return s;
}

double RunConfig::horizon_us() const {
    if (grid.t_end_us) return *grid.t_end_us;
    const double units = grid.t_end_gamma_units.value_or(base_preset().horizon_gamma_units);
    const double gamma = params().mean_gamma();
    if (!(gamma > 0.0))
        throw ConfigError("grid.t_end_us", "a horizon in gamma units needs nonzero decay; give t_end_us instead");
    return units / gamma;
}

int RunConfig::samples() const { return grid.samples.value_or(base_preset().samples); }

std::vector<double> RunConfig::detuning_grid_mhz() const {
    const auto base = base_preset();
    return linear_grid(grid.detuning_start_mhz.value_or(base.grid_start_mhz),
                       grid.detuning_stop_mhz.value_or(base.grid_stop_mhz),
                       grid.detuning_step_mhz.value_or(base.grid_step_mhz));
}

AxisRange RunConfig::axis() const {
    AxisRange a = base_preset().axis;
    if (grid.axis && *grid.axis != a.name) {
        a.name = *grid.axis;
        if (!grid.axis_start || !grid.axis_stop)
            throw ConfigError("grid.axis", "a new axis needs axis_start and axis_stop");
    }
    if (a.name.empty()) throw ConfigError("grid.axis", "no sweep axis given");
    a.start = grid.axis_start.value_or(a.start);
    a.stop = grid.axis_stop.value_or(a.stop);
    a.points = grid.axis_points.value_or(a.points);
    return a;
}

RunConfig parse_config(const std::string& text, const ParseOptions& opts) {
    ptree tree;
    std::istringstream in(text);
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError("", fmt::format("line {}: {}", e.line(), e.message()));
    }

    const std::set<std::string> sections{"system", "initial_state", "grid", "output"};
    for (const auto& [key, child] : tree) {
        if (child.empty() && !child.data().empty())
            throw ConfigError(key, "key outside any section");
        if (!sections.count(key) && !opts.permissive)
            throw ConfigError(key, "unknown section; expected system, initial_state, grid or output");
    }

    const auto section = [&tree](const char* name) -> const ptree* {
        const auto it = tree.find(name);
        return it == tree.not_found() ? nullptr : &it->second;
    };

    RunConfig c;
    Section system("system", section("system"));
    parse_system(system, c, opts);
    Section initial("initial_state", section("initial_state"));
    parse_initial(initial, c, opts);
    Section grid("grid", section("grid"));
    parse_grid(grid, c, opts);
    Section output("output", section("output"));
    parse_output(output, c, opts);
    return c;
}

RunConfig load_config(const std::string& path, const ParseOptions& opts) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot read config file '{}'", path));
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), opts);
}

std::string serialize(const RunConfig& c) {
    std::ostringstream out;
    out << "[system]\n";
    put(out, "preset", c.preset);
    if (const auto* base = find_preset(c.preset)) {
        const DimerParams& p = base->params;
        const double preset_values[] = {p.gamma1, p.gamma2, p.gamma12, p.v12, p.delta_minus,
                                        p.delta_plus, p.delta_e, p.ell1, p.ell2};
        int i = 0;
        for (const auto& k : kSystemKeys) {
            if (!(c.system.*k.field)) out << "; " << k.name << " = " << fmt::format("{:.12g}", to_mhz(preset_values[i])) << '\n';
            ++i;
        }
    }
    for (const auto& k : kSystemKeys) put(out, k.name, c.system.*k.field);

    if (c.initial) {
        out << "\n[initial_state]\n";
        out << "family = " << to_string(c.initial->family) << '\n';
        InitialState copy = *c.initial;
        for (const auto& key : family_keys(copy.family))
            out << key << " = " << fmt_double(*family_field(copy, key)) << '\n';
    }

    std::ostringstream grid;
    const auto& g = c.grid;
    put(grid, "t_end_us", g.t_end_us);
    put(grid, "t_end_gamma_units", g.t_end_gamma_units);
    put(grid, "samples", g.samples);
    put(grid, "tol", g.tol);
    put(grid, "detuning_start_mhz", g.detuning_start_mhz);
    put(grid, "detuning_stop_mhz", g.detuning_stop_mhz);
    put(grid, "detuning_step_mhz", g.detuning_step_mhz);
    put(grid, "axis", g.axis);
    put(grid, "axis_start", g.axis_start);
    put(grid, "axis_stop", g.axis_stop);
    put(grid, "axis_points", g.axis_points);
    put(grid, "esd_eps", g.esd_eps);
    if (!grid.str().empty()) out << "\n[grid]\n" << grid.str();

    std::ostringstream output;
    put(output, "path", c.output.path);
    put(output, "sidecar", c.output.sidecar);
    if (!output.str().empty()) out << "\n[output]\n" << output.str();
    return out.str();
}

RunConfig config_for_preset(const std::string& name) {
    const auto& p = preset(name);
    RunConfig c;
    c.preset = name;
    if (p.kind == PresetKind::dynamics) c.initial = p.initial;
    return c;
}

std::vector<std::string> required_system_keys() {
    std::vector<std::string> out;
    for (const auto& k : kSystemKeys) out.push_back(k.name);
    return out;
}

}  // namespace dimer
