// Copyright 2026 The Spectral POVM Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "povm/errors.hpp"
#include "povm/scenario.hpp"

namespace povm::scenario {
namespace {

struct RawSection {
    std::string name;
    std::map<std::string, std::string> entries;
    std::string where;
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

void add_entry(RawSection &section, const std::string &key, std::string value,
               const std::string &where) {
    if (key.empty()) {
        throw ConfigError(where + ": empty key");
    }
    if (!section.entries.emplace(key, std::move(value)).second) {
        throw ConfigError(where + ": duplicate key '" + key + "' in [" +
                          section.name + "]");
    }
}

std::vector<RawSection> parse_ini(std::string_view text) {
    std::vector<RawSection> sections;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string where = "line " + std::to_string(lineno);
        const auto hash = line.find_first_of("#;");
        std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty()) {
            continue;
        }
        if (body.front() == '[') {
            if (body.back() != ']') {
                throw ConfigError(where + ": malformed section header");
            }
            sections.push_back({lower(trim(body.substr(1, body.size() - 2))), {}, where});
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where + ": expected key = value");
        }
        if (sections.empty()) {
            throw ConfigError(where + ": entry outside of any section");
        }
        add_entry(sections.back(), lower(trim(body.substr(0, eq))),
                  trim(body.substr(eq + 1)), where);
    }
    return sections;
}

std::string json_scalar(const nlohmann::json &v, const std::string &where) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_number()) {
        return v.dump();
    }
    throw ConfigError(where + ": values must be numbers, strings or lists of them");
}

RawSection json_section(const std::string &name, const nlohmann::json &obj) {
    const std::string where = "JSON section '" + name + "'";
    if (!obj.is_object()) {
        throw ConfigError(where + " must be an object");
    }
    RawSection section{name, {}, where};
    for (const auto &[key, value] : obj.items()) {
        std::string text;
        if (value.is_array()) {
            for (std::size_t i = 0; i < value.size(); ++i) {
                text += (i ? "," : "") + json_scalar(value[i], where);
            }
        } else {
            text = json_scalar(value, where);
        }
        add_entry(section, lower(key), std::move(text), where);
    }
    return section;
}

std::vector<RawSection> parse_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("JSON scenario must be an object");
    }
    std::vector<RawSection> sections;
    for (const auto &[key, value] : doc.items()) {
        const std::string name = lower(key);
        if (value.is_array()) {
            for (const auto &item : value) {
                sections.push_back(json_section(name, item));
            }
        } else {
            sections.push_back(json_section(name, value));
        }
    }
    return sections;
}

double parse_double(const std::string &text, const std::string &what) {
    const std::string t = lower(trim(text));
    if (t == "inf" || t == "+inf" || t == "infinity") {
        return std::numeric_limits<double>::infinity();
    }
    double value = 0.0;
    const char *first = t.data();
    const char *last = t.data() + t.size();
    if (!t.empty() && *first == '+') {
        ++first;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || t.empty() || std::isnan(value)) {
        throw ConfigError(what + ": expected a number, got '" + text + "'");
    }
    return value;
}

double parse_finite(const std::string &text, const std::string &what) {
    const double v = parse_double(text, what);
    if (!std::isfinite(v)) {
        throw ConfigError(what + ": value must be finite");
    }
    return v;
}

std::size_t parse_count(const std::string &text, const std::string &what) {
    const double v = parse_finite(text, what);
    if (v < 0.0 || v != std::floor(v) || v > 1e9) {
        throw ConfigError(what + ": expected a nonnegative integer, got '" + text + "'");
    }
    return static_cast<std::size_t>(v);
}

std::vector<double> parse_list(const std::string &text, const std::string &what) {
    std::vector<double> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (trim(item).empty()) {
            throw ConfigError(what + ": empty list element");
        }
        out.push_back(parse_double(item, what));
    }
    return out;
}

/// Visits every entry of a section, rejecting keys without a handler.
template <class Handlers>
void apply_section(const RawSection &section, const Handlers &handlers) {
    for (const auto &[key, value] : section.entries) {
        const auto it = handlers.find(key);
        if (it == handlers.end()) {
            throw ConfigError(section.where + ": unknown key '" + key + "' in [" +
                              section.name + "]");
        }
        it->second(value, "[" + section.name + "] " + key);
    }
}

using Handler = std::function<void(const std::string &, const std::string &)>;
using HandlerMap = std::map<std::string, Handler>;

HandlerMap grid_handlers(GridConfig &g) {
    return {{"omega_min", [&](auto &v, auto &w) { g.omega_min = parse_finite(v, w); }},
            {"omega_max", [&](auto &v, auto &w) { g.omega_max = parse_finite(v, w); }},
            {"n_points", [&](auto &v, auto &w) { g.n_points = parse_count(v, w); }}};
}

std::filesystem::path resolve(const std::filesystem::path &base,
                              const std::string &value) {
    std::filesystem::path p(value);
    return p.is_absolute() || base.empty() ? p : base / p;
}

void validate(const ScenarioConfig &c) {
    try {
        const auto grid = build_grid(c.grid);
        if (c.signal_grid) {
            build_grid(*c.signal_grid);
        }
        build_chain(c, grid);
        static const std::set<std::string> presets{
            "gaussian",    "exponential_pulse",   "boxcar",
            "table",       "correlated_gaussian", "separable_gaussian"};
        if (!presets.count(c.state.preset)) {
            throw ConfigError("[state] preset: unknown preset '" + c.state.preset + "'");
        }
        if (c.state.preset == "table" && c.state.table.empty()) {
            throw ConfigError("[state] preset = table requires a table key");
        }
        for (const auto *w : {&c.state.width, &c.state.width2}) {
            if (*w && !(**w > 0.0)) {
                throw ConfigError("[state] widths must be positive");
            }
        }
        if (!(c.state.sigma_plus > 0.0) || !(c.state.sigma_minus > 0.0)) {
            throw ConfigError("[state] sigma_plus and sigma_minus must be positive");
        }
        TimeWindow(c.window.t0, c.window.dt, c.window.eta,
                   std::max<std::size_t>(1, c.window.n_time_samples));
        if (!(c.times.t_max > c.times.t_min) || c.times.n < 2) {
            throw ConfigError("[times] requires t_max > t_min and n >= 2");
        }
        for (double x : c.sweep.gamma_dt) {
            if (!(x >= 0.0) || !std::isfinite(x)) {
                throw ConfigError("[sweep] gamma_dt values must be finite and >= 0");
            }
        }
        for (double g : c.sweep.gammas) {
            if (!(g > 0.0) || !std::isfinite(g)) {
                throw ConfigError("[sweep] gammas must be finite and positive");
            }
        }
        for (double d : c.sweep.dts) {
            if (!(d > 0.0)) {
                throw ConfigError("[sweep] dts must be positive (inf allowed)");
            }
        }
        if (c.check.points_per_bin < 1) {
            throw ConfigError("[check] points_per_bin must be >= 1");
        }
        if (!(c.check.tolerance > 0.0)) {
            throw ConfigError("[check] tolerance must be positive");
        }
        if (c.output.format != "csv") {
            throw ConfigError("[output] format: only csv is supported");
        }
    } catch (const ConfigError &) {
        throw;
    } catch (const IoError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError(std::string("invalid scenario: ") + e.what());
    }
}

} // namespace

ScenarioConfig parse_scenario(std::string_view text, Format format,
                              const std::filesystem::path &base_dir) {
    const auto sections = format == Format::Json ? parse_json(text) : parse_ini(text);
    ScenarioConfig c;
    std::set<std::string> seen;
    bool have_filter = false;
    for (const auto &s : sections) {
        if (s.name != "filter" && !seen.insert(s.name).second) {
            throw ConfigError(s.where + ": section [" + s.name + "] repeated");
        }
        if (s.name == "grid") {
            apply_section(s, grid_handlers(c.grid));
        } else if (s.name == "signal_grid") {
            c.signal_grid = c.grid;
            apply_section(s, grid_handlers(*c.signal_grid));
        } else if (s.name == "filter") {
            if (!have_filter) {
                c.filters.clear();
                have_filter = true;
            }
            FilterConfig f;
            apply_section(s, HandlerMap{
                         {"omega0", [&](auto &v, auto &w) { f.omega0 = parse_finite(v, w); }},
                         {"gamma", [&](auto &v, auto &w) { f.gamma = parse_finite(v, w); }},
                         {"table", [&](auto &v, auto &) { f.table = resolve(base_dir, v); }}});
            c.filters.push_back(f);
        } else if (s.name == "state") {
            auto &st = c.state;
            auto opt = [&](std::optional<double> &slot) {
                return [&slot](auto &v, auto &w) { slot = parse_finite(v, w); };
            };
            apply_section(s, HandlerMap{
                         {"preset", [&](auto &v, auto &) { st.preset = lower(v); }},
                         {"center", opt(st.center)},
                         {"width", opt(st.width)},
                         {"center2", opt(st.center2)},
                         {"width2", opt(st.width2)},
                         {"pump_center", opt(st.pump_center)},
                         {"sigma_plus", [&](auto &v, auto &w) { st.sigma_plus = parse_finite(v, w); }},
                         {"sigma_minus", [&](auto &v, auto &w) { st.sigma_minus = parse_finite(v, w); }},
                         {"table", [&](auto &v, auto &) { st.table = resolve(base_dir, v); }}});
        } else if (s.name == "window") {
            auto &wc = c.window;
            apply_section(s, HandlerMap{
                         {"t0", [&](auto &v, auto &w) { wc.t0 = parse_finite(v, w); }},
                         {"dt", [&](auto &v, auto &w) { wc.dt = parse_finite(v, w); }},
                         {"eta", [&](auto &v, auto &w) { wc.eta = parse_finite(v, w); }},
                         {"n_time_samples", [&](auto &v, auto &w) { wc.n_time_samples = parse_count(v, w); }}});
        } else if (s.name == "times") {
            auto &tc = c.times;
            apply_section(s, HandlerMap{
                         {"t_min", [&](auto &v, auto &w) { tc.t_min = parse_finite(v, w); }},
                         {"t_max", [&](auto &v, auto &w) { tc.t_max = parse_finite(v, w); }},
                         {"n", [&](auto &v, auto &w) { tc.n = parse_count(v, w); }}});
        } else if (s.name == "sweep") {
            auto &sw = c.sweep;
            apply_section(s, HandlerMap{
                         {"gamma_dt", [&](auto &v, auto &w) { sw.gamma_dt = parse_list(v, w); }},
                         {"gammas", [&](auto &v, auto &w) { sw.gammas = parse_list(v, w); }},
                         {"dts", [&](auto &v, auto &w) { sw.dts = parse_list(v, w); }}});
        } else if (s.name == "check") {
            auto &ck = c.check;
            apply_section(s, HandlerMap{
                         {"points_per_bin", [&](auto &v, auto &w) { ck.points_per_bin = parse_count(v, w); }},
                         {"tolerance", [&](auto &v, auto &w) { ck.tolerance = parse_finite(v, w); }}});
        } else if (s.name == "output") {
            auto &oc = c.output;
            apply_section(s, HandlerMap{
                         {"path", [&](auto &v, auto &) { oc.path = v; }},
                         {"format", [&](auto &v, auto &) { oc.format = lower(v); }}});
        } else {
            throw ConfigError(s.where + ": unknown section [" + s.name + "]");
        }
    }
    validate(c);
    return c;
}

ScenarioConfig load_scenario(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open scenario file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const auto format = lower(path.extension().string()) == ".json" ? Format::Json
                                                                    : Format::Ini;
    return parse_scenario(buf.str(), format, path.parent_path());
}

} // namespace povm::scenario
