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
#include <cmath>
#include <map>

#include "povm/cascade.hpp"
#include "povm/errors.hpp"
#include "povm/hom.hpp"
#include "povm/povm_single.hpp"
#include "povm/scenario.hpp"

namespace povm::scenario {
namespace {

constexpr double kUnitarityThreshold = 1e-12;
constexpr double kCompletenessThreshold = 1e-10;
constexpr double kFactorizationThreshold = 1e-8;

/// Runs an input-building step, reporting library errors as configuration
/// errors.
template <class F> auto prepare(F &&step) -> decltype(step()) {
    try {
        return step();
    } catch (const ConfigError &) {
        throw;
    } catch (const IoError &) {
        throw;
    } catch (const Error &e) {
        throw ConfigError(std::string("invalid scenario: ") + e.what());
    }
}

std::string fmt(double v) { return format_number(v); }

std::string fmt(std::size_t v) { return std::to_string(v); }

FilterSpec first_filter(const ScenarioConfig &config, const FrequencyGrid &grid) {
    if (config.filters.empty()) {
        throw ConfigError("scenario defines no filter");
    }
    return build_filter(config.filters.front(), grid);
}

void add_check(CsvWriter &out, bool &ok, const std::string &name, double value,
               double threshold) {
    const bool pass = value <= threshold;
    ok = ok && pass;
    out.row({name, fmt(value), fmt(threshold), pass ? "PASS" : "FAIL"});
}

} // namespace

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names{"spectrum", "purity-curve", "herald",
                                                "hom-map", "povm-check"};
    return names;
}

CommandResult run_command(std::string_view name, const ScenarioConfig &config,
                          std::optional<double> tolerance) {
    const double tol = tolerance ? *tolerance : config.check.tolerance;
    if (!(tol > 0.0)) {
        throw ConfigError("tolerance must be positive");
    }
    if (name == "spectrum") {
        return cmd_spectrum(config);
    }
    if (name == "purity-curve") {
        return cmd_purity_curve(config, tol);
    }
    if (name == "herald") {
        return cmd_herald(config);
    }
    if (name == "hom-map") {
        return cmd_hom_map(config);
    }
    if (name == "povm-check") {
        return cmd_povm_check(config, tol);
    }
    throw ConfigError("unknown subcommand '" + std::string(name) + "'");
}

CommandResult cmd_spectrum(const ScenarioConfig &config) {
    const auto grid = prepare([&] { return build_grid(config.grid); });
    const auto chain = prepare([&] { return build_chain(config, grid); });
    const auto phi = prepare([&] { return build_amplitude(config, grid); });
    const double eta = config.window.eta;
    const auto times = linspace_times(config.times.t_min, config.times.t_max,
                                      config.times.n);

    std::vector<TemporalAmplitude> ports;
    for (std::size_t k = 0; k < chain.size(); ++k) {
        const auto c = chain_port_coefficient(chain, k);
        ComplexVector v(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            v[i] = c[i] * phi[i];
        }
        ports.push_back(to_time_domain(SpectralAmplitude(grid, std::move(v)), times));
    }

    CsvWriter out({"t", "port_index", "probability_density"});
    for (std::size_t j = 0; j < times.size(); ++j) {
        for (std::size_t k = 0; k < ports.size(); ++k) {
            out.row({fmt(times[j]), fmt(k), fmt(eta * std::norm(ports[k].values[j]))});
        }
    }
    return {out.str(), kExitOk, {}};
}

CommandResult cmd_purity_curve(const ScenarioConfig &config, double tolerance) {
    const auto grid = prepare([&] { return build_grid(config.grid); });
    const auto filter = prepare([&] { return first_filter(config, grid); });
    const double gamma = filter.gamma();
    if (!(gamma > 0.0)) {
        throw ConfigError("purity curve requires a filter with nonzero bandwidth");
    }
    const FilterChain chain({filter});

    CsvWriter out({"gamma_dt", "purity_numeric", "purity_closed_form", "d_eff",
                   "agreement"});
    bool ok = true;
    double worst = 0.0;
    for (double x : config.sweep.gamma_dt) {
        // x = 0 is the single-instant limit: one time sample.
        const double dt = x > 0.0 ? x / gamma : 1e-9 / gamma;
        const std::size_t n = x > 0.0 ? (config.window.n_time_samples != 0
                                             ? config.window.n_time_samples
                                             : default_time_samples(gamma, dt))
                                      : 1;
        const auto element =
            window_element(chain, 0, TimeWindow(config.window.t0, dt, config.window.eta, n));
        const double numeric = purity(element);
        const double closed = closed_form_purity(x);
        const double agreement = std::abs(numeric - closed) / closed;
        worst = std::max(worst, agreement);
        ok = ok && agreement <= tolerance;
        out.row({fmt(x), fmt(numeric), fmt(closed), fmt(1.0 / numeric), fmt(agreement)});
    }
    CommandResult result{out.str(), ok ? kExitOk : kExitValidation, {}};
    if (!ok) {
        result.message = "purity agreement " + fmt(worst) + " exceeds tolerance " +
                         fmt(tolerance);
    }
    return result;
}

CommandResult cmd_herald(const ScenarioConfig &config) {
    const auto phi = prepare([&] { return build_joint_amplitude(config); });
    const auto &grid = phi.herald_grid();
    std::vector<FilterSpec> filters = prepare([&] {
        std::vector<FilterSpec> fs;
        if (!config.sweep.gammas.empty()) {
            const double omega0 = config.filters.empty() ? grid.midpoint()
                                                         : config.filters.front().omega0;
            for (double g : config.sweep.gammas) {
                fs.push_back(lorentzian_filter(grid, omega0, g));
            }
        } else {
            for (const auto &f : config.filters) {
                fs.push_back(build_filter(f, grid));
            }
        }
        return fs;
    });
    std::vector<WindowChoice> windows;
    const auto &wc = config.window;
    if (config.sweep.dts.empty()) {
        windows.push_back({wc.t0, wc.dt, wc.eta, wc.n_time_samples});
    } else {
        for (double dt : config.sweep.dts) {
            windows.push_back({wc.t0, dt, wc.eta, wc.n_time_samples});
        }
    }
    const auto curve = tradeoff_curve(phi, filters, windows);
    CsvWriter out({"gamma", "dt", "purity", "efficiency"});
    for (const auto &p : curve) {
        out.row({fmt(p.gamma), fmt(p.dt), fmt(p.purity), fmt(p.efficiency)});
    }
    return {out.str(), kExitOk, {}};
}

CommandResult cmd_hom_map(const ScenarioConfig &config) {
    const auto grid = prepare([&] { return build_grid(config.grid); });
    if (grid.size() > 4096) {
        throw ConfigError("hom-map is limited to grids of 4096 points");
    }
    const auto filter = prepare([&] { return first_filter(config, grid); });
    const auto phi1 = prepare([&] { return build_amplitude(config, grid, false); });
    const auto phi2 = prepare([&] { return build_amplitude(config, grid, true); });
    const auto map = coincidence_map(phi1, phi2, filter);
    CsvWriter out({"omega", "omega_prime", "coincidence"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = 0; j < grid.size(); ++j) {
            out.row({fmt(grid.omega(i)), fmt(grid.omega(j)),
                     fmt(map(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)))});
        }
    }
    return {out.str(), kExitOk, {}};
}

CommandResult cmd_povm_check(const ScenarioConfig &config, double tolerance) {
    const auto grid = prepare([&] { return build_grid(config.grid); });
    const auto chain = prepare([&] { return build_chain(config, grid); });
    const auto &filter = chain[0];
    const double gamma = filter.gamma();
    const double omega0 = filter.omega0();
    if (!(gamma > 0.0)) {
        throw ConfigError("povm-check requires a filter with nonzero bandwidth");
    }

    CsvWriter out({"check", "value", "threshold", "status"});
    bool ok = true;

    double unitarity = 0.0;
    for (std::size_t k = 0; k < chain.size(); ++k) {
        unitarity = std::max(unitarity, chain[k].unitarity_residual().max());
    }
    add_check(out, ok, "unitarity", unitarity, kUnitarityThreshold);

    const auto basis = ModeBasis::boxcar_bins(grid, config.check.points_per_bin);
    const auto completeness = completeness_residual(basis, filter);
    add_check(out, ok, "completeness_diagonal", completeness.diagonal,
              kCompletenessThreshold);
    add_check(out, ok, "completeness_off_diagonal", completeness.off_diagonal,
              kCompletenessThreshold);

    const FilterChain single({filter});
    double overlap = 0.0;
    for (int s = 0; s <= 50; ++s) {
        const double dt = 0.1 * s / gamma;
        const Complex numeric = overlap_time(single, 0, 0.0, dt);
        overlap = std::max(overlap, std::abs(numeric - closed_form_overlap(gamma, omega0, dt)));
    }
    add_check(out, ok, "overlap_max_deviation", overlap, tolerance);

    const auto g2 = two_photon_grid(omega0, omega0 + 10.0 * gamma, gamma);
    double factorization = 0.0;
    for (double detune : {0.0, 1.0, 10.0}) {
        const auto f0 = lorentzian_filter(g2, omega0, gamma);
        const auto f1 = lorentzian_filter(g2, omega0 + detune * gamma, gamma);
        const FilterChain first({f0});
        for (int a = 0; a < 5; ++a) {
            for (int b = 0; b < 5; ++b) {
                const double t = 0.75 * a / gamma;
                const double tp = 0.75 * b / gamma;
                const auto proj = two_photon_projector(f0, f1, t, tp, 1.0, 1.0);
                const double w = time_state(first, 0, t, 1.0).weight_density;
                const double wp = second_port_state(f0, f1, tp, 1.0).weight_density;
                const double ov = std::norm(cross_overlap(f0, f1, t, tp));
                factorization = std::max(
                    factorization, std::abs(proj.weight - w * wp * (1.0 + ov)) / proj.weight);
            }
        }
    }
    add_check(out, ok, "w_factorization", factorization, kFactorizationThreshold);

    CommandResult result{out.str(), ok ? kExitOk : kExitValidation, {}};
    if (!ok) {
        result.message = "one or more POVM checks failed";
    }
    return result;
}

} // namespace povm::scenario
