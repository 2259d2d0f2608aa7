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


#include <cmath>
#include <fstream>
#include <sstream>

#include "povm/errors.hpp"
#include "povm/scenario.hpp"

namespace povm::scenario {
namespace {

constexpr double kGridMatchTolerance = 1e-6;
/// 2^24 complex entries (256 MiB).
constexpr std::size_t kMaxJointEntries = std::size_t{1} << 24;

std::size_t match_grid(const FrequencyGrid &grid, double omega,
                       const std::filesystem::path &path, std::size_t row) {
    const auto i = grid.nearest_index(omega);
    if (std::abs(grid.omega(i) - omega) > kGridMatchTolerance * grid.spacing()) {
        std::ostringstream msg;
        msg << path.string() << " row " << row + 1 << ": frequency " << omega
            << " is not a grid point";
        throw ConfigError(msg.str());
    }
    return i;
}

const FilterConfig &first_filter(const ScenarioConfig &config) {
    if (config.filters.empty()) {
        throw ConfigError("scenario defines no filter");
    }
    return config.filters.front();
}

double center_of(const ScenarioConfig &c, bool second) {
    const auto &primary = c.state.center;
    if (second && c.state.center2) {
        return *c.state.center2;
    }
    return primary ? *primary : first_filter(c).omega0;
}

double width_of(const ScenarioConfig &c, bool second) {
    if (second && c.state.width2) {
        return *c.state.width2;
    }
    return c.state.width ? *c.state.width : first_filter(c).gamma;
}

} // namespace

std::vector<std::vector<double>> read_table(const std::filesystem::path &path,
                                            std::size_t columns) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open table file '" + path.string() + "'");
    }
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = line.substr(0, line.find('#'));
        for (auto &ch : line) {
            if (ch == ',') {
                ch = ' ';
            }
        }
        std::istringstream fields(line);
        std::vector<double> row;
        std::string token;
        while (fields >> token) {
            char *end = nullptr;
            const double v = std::strtod(token.c_str(), &end);
            if (end == token.c_str() || *end != '\0' || !std::isfinite(v)) {
                throw ConfigError(path.string() + " line " + std::to_string(lineno) +
                                  ": '" + token + "' is not a finite number");
            }
            row.push_back(v);
        }
        if (row.empty()) {
            continue;
        }
        if (row.size() != columns) {
            throw ConfigError(path.string() + " line " + std::to_string(lineno) +
                              ": expected " + std::to_string(columns) +
                              " columns, found " + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

FrequencyGrid build_grid(const GridConfig &config) {
    return FrequencyGrid(config.omega_min, config.omega_max, config.n_points);
}

FilterSpec build_filter(const FilterConfig &config, const FrequencyGrid &grid) {
    if (config.table.empty()) {
        return lorentzian_filter(grid, config.omega0, config.gamma);
    }
    const auto rows = read_table(config.table, 3);
    if (rows.size() != grid.size()) {
        throw ConfigError(config.table.string() + ": expected " +
                          std::to_string(grid.size()) + " rows, one per grid point");
    }
    ComplexVector t(grid.size());
    std::vector<bool> filled(grid.size(), false);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto i = match_grid(grid, rows[r][0], config.table, r);
        if (filled[i]) {
            throw ConfigError(config.table.string() + ": duplicate grid frequency");
        }
        filled[i] = true;
        t[i] = Complex(rows[r][1], rows[r][2]);
    }
    return filter_from_transmission(grid, std::move(t));
}

FilterChain build_chain(const ScenarioConfig &config, const FrequencyGrid &grid) {
    std::vector<FilterSpec> filters;
    for (const auto &f : config.filters) {
        filters.push_back(build_filter(f, grid));
    }
    return FilterChain(std::move(filters));
}

SpectralAmplitude build_amplitude(const ScenarioConfig &config,
                                  const FrequencyGrid &grid, bool second) {
    const auto &preset = config.state.preset;
    const double center = center_of(config, second);
    const double width = width_of(config, second);
    if (preset == "gaussian") {
        return gaussian_amplitude(grid, center, width);
    }
    if (preset == "exponential_pulse") {
        return exponential_pulse(grid, center, width);
    }
    if (preset == "boxcar") {
        return boxcar_amplitude(grid, center - 0.5 * width, center + 0.5 * width);
    }
    if (preset == "table") {
        const auto rows = read_table(config.state.table, 3);
        ComplexVector v(grid.size());
        std::vector<bool> filled(grid.size(), false);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto i = match_grid(grid, rows[r][0], config.state.table, r);
            if (filled[i]) {
                throw ConfigError(config.state.table.string() +
                                  ": duplicate grid frequency");
            }
            filled[i] = true;
            v[i] = Complex(rows[r][1], rows[r][2]);
        }
        return SpectralAmplitude(grid, std::move(v)).normalized();
    }
    throw ConfigError("[state] preset '" + preset +
                      "' does not describe a single-photon state");
}

JointAmplitude build_joint_amplitude(const ScenarioConfig &config) {
    const auto herald_grid = build_grid(config.grid);
    const auto signal_grid =
        config.signal_grid ? build_grid(*config.signal_grid) : herald_grid;
    if (herald_grid.size() * signal_grid.size() > kMaxJointEntries) {
        throw ConfigError("joint amplitude of " + std::to_string(herald_grid.size()) + " x " +
                          std::to_string(signal_grid.size()) +
                          " points is too large; reduce n_points or set [signal_grid]");
    }
    const auto &st = config.state;
    if (st.preset == "correlated_gaussian") {
        const double pump = st.pump_center ? *st.pump_center : center_of(config, false);
        return correlated_gaussian_jsa(herald_grid, signal_grid, pump, st.sigma_plus,
                                       st.sigma_minus);
    }
    if (st.preset == "separable_gaussian") {
        return separable_gaussian_jsa(herald_grid, signal_grid, center_of(config, false),
                                      width_of(config, false), center_of(config, true),
                                      width_of(config, true));
    }
    if (st.preset == "table") {
        const auto rows = read_table(st.table, 4);
        const auto n = herald_grid.size();
        const auto m = signal_grid.size();
        if (rows.size() != n * m) {
            throw ConfigError(st.table.string() + ": expected " + std::to_string(n * m) +
                              " rows covering herald x signal grid");
        }
        Eigen::MatrixXcd values = Eigen::MatrixXcd::Zero(
            static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
        std::vector<bool> filled(n * m, false);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const auto i = match_grid(herald_grid, rows[r][0], st.table, r);
            const auto j = match_grid(signal_grid, rows[r][1], st.table, r);
            if (filled[i * m + j]) {
                throw ConfigError(st.table.string() + ": duplicate frequency pair");
            }
            filled[i * m + j] = true;
            values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                Complex(rows[r][2], rows[r][3]);
        }
        return JointAmplitude::normalized(herald_grid, signal_grid, std::move(values));
    }
    throw ConfigError("[state] preset '" + st.preset +
                      "' does not describe a photon pair");
}

} // namespace povm::scenario
