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


/**
 * @file
 * Scenario files and the analysis commands run on them.
 *
 * A scenario is an INI-style text file (or the equivalent JSON object):
 *
 *   [grid]        omega_min, omega_max, n_points
 *   [signal_grid] same keys; heralded-photon grid (defaults to [grid])
 *   [filter]      omega0, gamma          or  table = <file: w, Re T, Im T>
 *                 repeat the section for a cascade of filters
 *   [state]       preset = gaussian | exponential_pulse | boxcar | table |
 *                          correlated_gaussian | separable_gaussian
 *                 center, width, center2, width2, pump_center, sigma_plus,
 *                 sigma_minus, table
 *   [window]      t0, dt, eta, n_time_samples
 *   [times]       t_min, t_max, n
 *   [sweep]       gamma_dt, gammas, dts    (comma-separated; dts may hold inf)
 *   [check]       points_per_bin, tolerance
 *   [output]      path, format = csv
 *
 * Unknown sections and keys are rejected. Relative table paths resolve
 * against the scenario file's directory.
 */

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "povm/filters.hpp"
#include "povm/herald.hpp"
#include "povm/spectral_core.hpp"

namespace povm::scenario {

struct GridConfig {
    double omega_min = 500.0;
    double omega_max = 1500.0;
    std::size_t n_points = 10001;
};

struct FilterConfig {
    double omega0 = 1000.0;
    double gamma = 1.0;
    /// Resolved path of a transmission table; empty for a Lorentzian.
    std::filesystem::path table;
};

struct StateConfig {
    std::string preset = "gaussian";
    std::optional<double> center;
    std::optional<double> width;
    std::optional<double> center2;
    std::optional<double> width2;
    std::optional<double> pump_center;
    double sigma_plus = 1.0;
    double sigma_minus = 10.0;
    std::filesystem::path table;
};

struct WindowConfig {
    double t0 = 0.0;
    double dt = 1.0;
    double eta = 1.0;
    /// 0 selects the default sampling for the filter bandwidth.
    std::size_t n_time_samples = 0;
};

struct TimesConfig {
    double t_min = -5.0;
    double t_max = 20.0;
    std::size_t n = 501;
};

struct SweepConfig {
    std::vector<double> gamma_dt{0.1, 1.0, 10.0};
    std::vector<double> gammas;
    std::vector<double> dts;
};

struct CheckConfig {
    std::size_t points_per_bin = 8;
    double tolerance = 1e-2;
};

struct OutputConfig {
    std::string path;
    std::string format = "csv";
};

struct ScenarioConfig {
    GridConfig grid;
    std::optional<GridConfig> signal_grid;
    std::vector<FilterConfig> filters{FilterConfig{}};
    StateConfig state;
    WindowConfig window;
    TimesConfig times;
    SweepConfig sweep;
    CheckConfig check;
    OutputConfig output;
};

enum class Format { Ini, Json };

/// Parses and validates scenario text. Throws ConfigError.
ScenarioConfig parse_scenario(std::string_view text, Format format,
                              const std::filesystem::path &base_dir = {});

/// Reads a scenario file; `.json` files are parsed as JSON, anything else as
/// INI. Throws IoError or ConfigError.
ScenarioConfig load_scenario(const std::filesystem::path &path);

// Building blocks shared by the commands.

/// Whitespace- or comma-separated numeric rows; '#' starts a comment.
/// Throws IoError or ConfigError if a row has the wrong column count.
std::vector<std::vector<double>> read_table(const std::filesystem::path &path,
                                            std::size_t columns);

FrequencyGrid build_grid(const GridConfig &config);
FilterSpec build_filter(const FilterConfig &config, const FrequencyGrid &grid);
FilterChain build_chain(const ScenarioConfig &config, const FrequencyGrid &grid);
/// Single-photon state from the state section (gaussian, exponential_pulse,
/// boxcar or table). `second` selects center2/width2.
SpectralAmplitude build_amplitude(const ScenarioConfig &config,
                                  const FrequencyGrid &grid, bool second = false);
/// Joint amplitude from the state section (correlated_gaussian,
/// separable_gaussian or table). Throws ConfigError beyond 2^24 grid pairs.
JointAmplitude build_joint_amplitude(const ScenarioConfig &config);

// Deterministic CSV.

/// 12 significant digits, "inf"/"-inf"/"nan" for non-finite values, and
/// negative zero printed as 0.
std::string format_number(double value);

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header);
    void row(const std::vector<std::string> &cells);
    [[nodiscard]] const std::string &str() const noexcept { return text_; }

  private:
    std::size_t columns_;
    std::string text_;
};

// Commands.

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitValidation = 3;

struct CommandResult {
    std::string csv;
    int exit_code = kExitOk;
    std::string message;
};

/// Subcommand names accepted by run_command.
const std::vector<std::string> &command_names();

/// Runs a subcommand. Configuration problems throw ConfigError; failed
/// numerical checks are reported through exit_code kExitValidation.
/// `tolerance` overrides the scenario's check tolerance.
CommandResult run_command(std::string_view name, const ScenarioConfig &config,
                          std::optional<double> tolerance = std::nullopt);

CommandResult cmd_spectrum(const ScenarioConfig &config);
CommandResult cmd_purity_curve(const ScenarioConfig &config, double tolerance);
CommandResult cmd_herald(const ScenarioConfig &config);
CommandResult cmd_hom_map(const ScenarioConfig &config);
CommandResult cmd_povm_check(const ScenarioConfig &config, double tolerance);

} // namespace povm::scenario
