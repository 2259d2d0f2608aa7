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


#include "povm/povm.h"

#include <mutex>
#include <new>
#include <string>

#include "povm/errors.hpp"
#include "povm/filters.hpp"
#include "povm/hom.hpp"
#include "povm/povm_single.hpp"
#include "povm/scenario.hpp"
#include "povm/spectral_core.hpp"

struct povm_grid {
    povm::FrequencyGrid grid;
};
struct povm_filter {
    povm::FilterSpec filter;
};
struct povm_amplitude {
    povm::SpectralAmplitude amplitude;
};
struct povm_element {
    povm::PovmElement element;
};
struct povm_scenario {
    povm::scenario::ScenarioConfig config;
};
struct povm_result {
    povm::scenario::CommandResult result;
};

namespace {

thread_local std::string g_last_error;

struct WarningSink {
    std::mutex mutex;
    povm_warning_callback callback = nullptr;
    void *user_data = nullptr;
};

WarningSink &warning_sink() {
    static WarningSink sink;
    return sink;
}

povm_status fail(povm_status status, const char *message) {
    g_last_error = message;
    return status;
}

/// Runs `body`, translating exceptions into status codes.
template <class F> povm_status guarded(F &&body) {
    try {
        body();
        return POVM_OK;
    } catch (const povm::GridMismatchError &e) {
        return fail(POVM_ERR_GRID_MISMATCH, e.what());
    } catch (const povm::IndexError &e) {
        return fail(POVM_ERR_INDEX, e.what());
    } catch (const povm::UnreachableOutcomeError &e) {
        return fail(POVM_ERR_UNREACHABLE, e.what());
    } catch (const povm::ConfigError &e) {
        return fail(POVM_ERR_CONFIG, e.what());
    } catch (const povm::IoError &e) {
        return fail(POVM_ERR_IO, e.what());
    } catch (const povm::DomainError &e) {
        return fail(POVM_ERR_DOMAIN, e.what());
    } catch (const std::bad_alloc &) {
        return fail(POVM_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return fail(POVM_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(POVM_ERR_INTERNAL, "unknown error");
    }
}

#define POVM_REQUIRE(cond)                                                     \
    do {                                                                       \
        if (!(cond)) {                                                         \
            return fail(POVM_ERR_INVALID_ARGUMENT,                             \
                        "invalid argument: " #cond);                           \
        }                                                                      \
    } while (0)

povm_status write_complex(povm::Complex z, double *re, double *im) {
    POVM_REQUIRE(re != nullptr && im != nullptr);
    *re = z.real();
    *im = z.imag();
    return POVM_OK;
}

povm::ComplexVector samples(const double *re, const double *im, size_t n) {
    povm::ComplexVector v(n);
    for (size_t i = 0; i < n; ++i) {
        v[i] = povm::Complex(re[i], im ? im[i] : 0.0);
    }
    return v;
}

} // namespace

extern "C" {

const char *povm_version(void) { return "0.1.0"; }

const char *povm_status_name(povm_status status) {
    switch (status) {
    case POVM_OK:
        return "ok";
    case POVM_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case POVM_ERR_DOMAIN:
        return "domain error";
    case POVM_ERR_GRID_MISMATCH:
        return "grid mismatch";
    case POVM_ERR_INDEX:
        return "index out of range";
    case POVM_ERR_UNREACHABLE:
        return "unreachable outcome";
    case POVM_ERR_CONFIG:
        return "configuration error";
    case POVM_ERR_IO:
        return "i/o error";
    case POVM_ERR_INTERNAL:
        return "internal error";
    }
    return "unknown status";
}

const char *povm_last_error(void) { return g_last_error.c_str(); }

void povm_set_warning_callback(povm_warning_callback callback, void *user_data) {
    auto &sink = warning_sink();
    {
        std::lock_guard<std::mutex> lock(sink.mutex);
        sink.callback = callback;
        sink.user_data = user_data;
    }
    if (callback == nullptr) {
        povm::set_warning_handler({});
        return;
    }
    povm::set_warning_handler([](const std::string &message) {
        auto &s = warning_sink();
        std::lock_guard<std::mutex> lock(s.mutex);
        if (s.callback) {
            s.callback(message.c_str(), s.user_data);
        }
    });
}

povm_status povm_grid_create(double omega_min, double omega_max, size_t n_points,
                             povm_grid **out) {
    POVM_REQUIRE(out != nullptr);
    return guarded([&] {
        *out = new povm_grid{povm::FrequencyGrid(omega_min, omega_max, n_points)};
    });
}

void povm_grid_destroy(povm_grid *grid) { delete grid; }

povm_status povm_grid_size(const povm_grid *grid, size_t *out) {
    POVM_REQUIRE(grid != nullptr && out != nullptr);
    *out = grid->grid.size();
    return POVM_OK;
}

povm_status povm_grid_omega(const povm_grid *grid, size_t i, double *out) {
    POVM_REQUIRE(grid != nullptr && out != nullptr);
    if (i >= grid->grid.size()) {
        return fail(POVM_ERR_INDEX, "grid index out of range");
    }
    *out = grid->grid.omega(i);
    return POVM_OK;
}

povm_status povm_grid_weight(const povm_grid *grid, size_t i, double *out) {
    POVM_REQUIRE(grid != nullptr && out != nullptr);
    if (i >= grid->grid.size()) {
        return fail(POVM_ERR_INDEX, "grid index out of range");
    }
    *out = grid->grid.weight(i);
    return POVM_OK;
}

povm_status povm_filter_lorentzian(const povm_grid *grid, double omega0,
                                   double gamma, povm_filter **out) {
    POVM_REQUIRE(grid != nullptr && out != nullptr);
    return guarded([&] {
        *out = new povm_filter{povm::lorentzian_filter(grid->grid, omega0, gamma)};
    });
}

povm_status povm_filter_from_transmission(const povm_grid *grid, const double *re,
                                          const double *im, size_t n,
                                          povm_filter **out) {
    POVM_REQUIRE(grid != nullptr && re != nullptr && out != nullptr);
    return guarded([&] {
        *out = new povm_filter{
            povm::filter_from_transmission(grid->grid, samples(re, im, n))};
    });
}

void povm_filter_destroy(povm_filter *filter) { delete filter; }

povm_status povm_filter_transmission(const povm_filter *filter, size_t i,
                                     double *re, double *im) {
    POVM_REQUIRE(filter != nullptr);
    if (i >= filter->filter.grid().size()) {
        return fail(POVM_ERR_INDEX, "grid index out of range");
    }
    return write_complex(filter->filter.transmission()[i], re, im);
}

povm_status povm_filter_reflection(const povm_filter *filter, size_t i,
                                   double *re, double *im) {
    POVM_REQUIRE(filter != nullptr);
    if (i >= filter->filter.grid().size()) {
        return fail(POVM_ERR_INDEX, "grid index out of range");
    }
    return write_complex(filter->filter.reflection()[i], re, im);
}

povm_status povm_filter_unitarity_residual(const povm_filter *filter, double *out) {
    POVM_REQUIRE(filter != nullptr && out != nullptr);
    *out = filter->filter.unitarity_residual().max();
    return POVM_OK;
}

povm_status povm_filter_effective_bandwidth(const povm_filter *filter,
                                            double *out) {
    POVM_REQUIRE(filter != nullptr && out != nullptr);
    *out = povm::effective_bandwidth(filter->filter);
    return POVM_OK;
}

povm_status povm_filter_half_transmission_loci(const povm_filter *filter,
                                               double *out, size_t capacity,
                                               size_t *count) {
    POVM_REQUIRE(filter != nullptr && count != nullptr);
    POVM_REQUIRE(out != nullptr || capacity == 0);
    return guarded([&] {
        const auto loci = povm::half_transmission_loci(filter->filter);
        *count = loci.size();
        for (size_t i = 0; i < loci.size() && i < capacity; ++i) {
            out[i] = loci[i];
        }
    });
}

povm_status povm_amplitude_gaussian(const povm_grid *grid, double center,
                                    double sigma, povm_amplitude **out) {
    POVM_REQUIRE(grid != nullptr && out != nullptr);
    return guarded([&] {
        *out = new povm_amplitude{povm::gaussian_amplitude(grid->grid, center, sigma)};
    });
}

povm_status povm_amplitude_exponential_pulse(const povm_grid *grid, double center,
                                             double kappa, povm_amplitude **out) {
    POVM_REQUIRE(grid != nullptr && out != nullptr);
    return guarded([&] {
        *out = new povm_amplitude{povm::exponential_pulse(grid->grid, center, kappa)};
    });
}

povm_status povm_amplitude_from_samples(const povm_grid *grid, const double *re,
                                        const double *im, size_t n, int normalize,
                                        povm_amplitude **out) {
    POVM_REQUIRE(grid != nullptr && re != nullptr && out != nullptr);
    return guarded([&] {
        povm::SpectralAmplitude a(grid->grid, samples(re, im, n));
        *out = new povm_amplitude{normalize ? a.normalized() : a};
    });
}

void povm_amplitude_destroy(povm_amplitude *amplitude) { delete amplitude; }

povm_status povm_amplitude_norm_squared(const povm_amplitude *amplitude,
                                        double *out) {
    POVM_REQUIRE(amplitude != nullptr && out != nullptr);
    *out = amplitude->amplitude.norm_squared();
    return POVM_OK;
}

povm_status povm_element_ideal(const povm_filter *filter, const povm_amplitude *mode,
                               povm_element **out) {
    POVM_REQUIRE(filter != nullptr && mode != nullptr && out != nullptr);
    return guarded([&] {
        *out = new povm_element{povm::ideal_element(filter->filter, mode->amplitude)};
    });
}

povm_status povm_element_null(const povm_filter *filter, povm_element **out) {
    POVM_REQUIRE(filter != nullptr && out != nullptr);
    return guarded([&] { *out = new povm_element{povm::null_element(filter->filter)}; });
}

povm_status povm_element_window(const povm_filter *filter, double t0, double dt,
                                double eta, size_t n_time_samples,
                                povm_element **out) {
    POVM_REQUIRE(filter != nullptr && out != nullptr);
    return guarded([&] {
        const povm::FilterChain chain({filter->filter});
        const auto window =
            n_time_samples == 0
                ? povm::TimeWindow::with_default_sampling(t0, dt, eta, filter->filter.gamma())
                : povm::TimeWindow(t0, dt, eta, n_time_samples);
        *out = new povm_element{povm::window_element(chain, 0, window)};
    });
}

void povm_element_destroy(povm_element *element) { delete element; }

povm_status povm_element_trace(const povm_element *element, double *out) {
    POVM_REQUIRE(element != nullptr && out != nullptr);
    return guarded([&] { *out = povm::trace(element->element); });
}

povm_status povm_element_purity(const povm_element *element, double *out) {
    POVM_REQUIRE(element != nullptr && out != nullptr);
    return guarded([&] { *out = povm::purity(element->element); });
}

povm_status povm_element_max_eigenvalue(const povm_element *element, double *out) {
    POVM_REQUIRE(element != nullptr && out != nullptr);
    return guarded([&] { *out = povm::max_eigenvalue(element->element); });
}

povm_status povm_element_detection_probability(const povm_element *element,
                                               const povm_amplitude *state,
                                               double *out) {
    POVM_REQUIRE(element != nullptr && state != nullptr && out != nullptr);
    return guarded([&] {
        *out = povm::detection_probability(state->amplitude, element->element);
    });
}

povm_status povm_overlap_time(const povm_filter *filter, double t, double t_prime,
                              double *re, double *im) {
    POVM_REQUIRE(filter != nullptr && re != nullptr && im != nullptr);
    return guarded([&] {
        const povm::FilterChain chain({filter->filter});
        const auto z = povm::overlap_time(chain, 0, t, t_prime);
        *re = z.real();
        *im = z.imag();
    });
}

double povm_closed_form_purity(double gamma_dt) {
    return povm::closed_form_purity(gamma_dt);
}

void povm_closed_form_overlap(double gamma, double omega0, double dt, double *re,
                              double *im) {
    const auto z = povm::closed_form_overlap(gamma, omega0, dt);
    if (re) {
        *re = z.real();
    }
    if (im) {
        *im = z.imag();
    }
}

povm_status povm_scenario_load(const char *path, povm_scenario **out) {
    POVM_REQUIRE(path != nullptr && out != nullptr);
    return guarded([&] {
        *out = new povm_scenario{povm::scenario::load_scenario(path)};
    });
}

povm_status povm_scenario_parse(const char *text, int format_json,
                                const char *base_dir, povm_scenario **out) {
    POVM_REQUIRE(text != nullptr && out != nullptr);
    return guarded([&] {
        const auto format =
            format_json ? povm::scenario::Format::Json : povm::scenario::Format::Ini;
        *out = new povm_scenario{povm::scenario::parse_scenario(
            text, format, base_dir ? std::filesystem::path(base_dir)
                                   : std::filesystem::path())};
    });
}

void povm_scenario_destroy(povm_scenario *scenario) { delete scenario; }

const char *povm_scenario_output_path(const povm_scenario *scenario) {
    return scenario ? scenario->config.output.path.c_str() : "";
}

povm_status povm_scenario_run(const povm_scenario *scenario, const char *command,
                              const double *tolerance, povm_result **out) {
    POVM_REQUIRE(scenario != nullptr && command != nullptr && out != nullptr);
    return guarded([&] {
        std::optional<double> tol;
        if (tolerance) {
            tol = *tolerance;
        }
        *out = new povm_result{povm::scenario::run_command(command, scenario->config, tol)};
    });
}

void povm_result_destroy(povm_result *result) { delete result; }

const char *povm_result_csv(const povm_result *result) {
    return result ? result->result.csv.c_str() : "";
}

int povm_result_exit_code(const povm_result *result) {
    return result ? result->result.exit_code : povm::scenario::kExitValidation;
}

const char *povm_result_message(const povm_result *result) {
    return result ? result->result.message.c_str() : "";
}

} // extern "C"
