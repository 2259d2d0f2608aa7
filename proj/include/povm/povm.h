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


/*
 * C interface to the spectral POVM library.
 *
 * Objects are opaque handles created by *_create / factory functions and
 * released with the matching *_destroy (which accept NULL). Fallible calls
 * return a povm_status; on failure povm_last_error() describes the problem
 * for the calling thread until the next failing call.
 */

#ifndef POVM_POVM_H
#define POVM_POVM_H

#include <stddef.h>

#if defined(POVM_BUILDING_LIBRARY)
#define POVM_API __attribute__((visibility("default")))
#else
#define POVM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum povm_status {
    POVM_OK = 0,
    POVM_ERR_INVALID_ARGUMENT = 1,
    POVM_ERR_DOMAIN = 2,
    POVM_ERR_GRID_MISMATCH = 3,
    POVM_ERR_INDEX = 4,
    POVM_ERR_UNREACHABLE = 5,
    POVM_ERR_CONFIG = 6,
    POVM_ERR_IO = 7,
    POVM_ERR_INTERNAL = 8
} povm_status;

typedef struct povm_grid povm_grid;
typedef struct povm_filter povm_filter;
typedef struct povm_amplitude povm_amplitude;
typedef struct povm_element povm_element;
typedef struct povm_scenario povm_scenario;
typedef struct povm_result povm_result;

typedef void (*povm_warning_callback)(const char *message, void *user_data);

POVM_API const char *povm_version(void);
POVM_API const char *povm_status_name(povm_status status);
/* Message of the last failed call on this thread ("" if none). */
POVM_API const char *povm_last_error(void);
/* NULL callback silences warnings; the default prints to stderr. */
POVM_API void povm_set_warning_callback(povm_warning_callback callback,
                                        void *user_data);

/* Frequency grids */
POVM_API povm_status povm_grid_create(double omega_min, double omega_max,
                                      size_t n_points, povm_grid **out);
POVM_API void povm_grid_destroy(povm_grid *grid);
POVM_API povm_status povm_grid_size(const povm_grid *grid, size_t *out);
POVM_API povm_status povm_grid_omega(const povm_grid *grid, size_t i,
                                     double *out);
POVM_API povm_status povm_grid_weight(const povm_grid *grid, size_t i,
                                      double *out);

/* Filters */
POVM_API povm_status povm_filter_lorentzian(const povm_grid *grid,
                                            double omega0, double gamma,
                                            povm_filter **out);
POVM_API povm_status povm_filter_from_transmission(const povm_grid *grid,
                                                   const double *re,
                                                   const double *im, size_t n,
                                                   povm_filter **out);
POVM_API void povm_filter_destroy(povm_filter *filter);
POVM_API povm_status povm_filter_transmission(const povm_filter *filter,
                                              size_t i, double *re, double *im);
POVM_API povm_status povm_filter_reflection(const povm_filter *filter,
                                            size_t i, double *re, double *im);
POVM_API povm_status povm_filter_unitarity_residual(const povm_filter *filter,
                                                    double *out);
POVM_API povm_status povm_filter_effective_bandwidth(const povm_filter *filter,
                                                     double *out);
/* Writes up to `capacity` loci; `count` receives the total number found. */
POVM_API povm_status povm_filter_half_transmission_loci(
    const povm_filter *filter, double *out, size_t capacity, size_t *count);

/* Single-photon spectral amplitudes */
POVM_API povm_status povm_amplitude_gaussian(const povm_grid *grid,
                                             double center, double sigma,
                                             povm_amplitude **out);
POVM_API povm_status povm_amplitude_exponential_pulse(const povm_grid *grid,
                                                      double center,
                                                      double kappa,
                                                      povm_amplitude **out);
/* Samples are normalized when `normalize` is nonzero. */
POVM_API povm_status povm_amplitude_from_samples(const povm_grid *grid,
                                                 const double *re,
                                                 const double *im, size_t n,
                                                 int normalize,
                                                 povm_amplitude **out);
POVM_API void povm_amplitude_destroy(povm_amplitude *amplitude);
POVM_API povm_status povm_amplitude_norm_squared(const povm_amplitude *amplitude,
                                                 double *out);

/* POVM elements */
POVM_API povm_status povm_element_ideal(const povm_filter *filter,
                                        const povm_amplitude *mode,
                                        povm_element **out);
POVM_API povm_status povm_element_null(const povm_filter *filter,
                                       povm_element **out);
/* n_time_samples == 0 selects the default sampling for the filter bandwidth. */
POVM_API povm_status povm_element_window(const povm_filter *filter, double t0,
                                         double dt, double eta,
                                         size_t n_time_samples,
                                         povm_element **out);
POVM_API void povm_element_destroy(povm_element *element);
POVM_API povm_status povm_element_trace(const povm_element *element,
                                        double *out);
POVM_API povm_status povm_element_purity(const povm_element *element,
                                         double *out);
POVM_API povm_status povm_element_max_eigenvalue(const povm_element *element,
                                                 double *out);
POVM_API povm_status povm_element_detection_probability(
    const povm_element *element, const povm_amplitude *state, double *out);

/* Time-domain quantities for a single filter */
POVM_API povm_status povm_overlap_time(const povm_filter *filter, double t,
                                       double t_prime, double *re, double *im);
POVM_API double povm_closed_form_purity(double gamma_dt);
POVM_API void povm_closed_form_overlap(double gamma, double omega0, double dt,
                                       double *re, double *im);

/* Scenarios and commands */
POVM_API povm_status povm_scenario_load(const char *path, povm_scenario **out);
/* format_json nonzero parses JSON; base_dir may be NULL. */
POVM_API povm_status povm_scenario_parse(const char *text, int format_json,
                                         const char *base_dir,
                                         povm_scenario **out);
POVM_API void povm_scenario_destroy(povm_scenario *scenario);
/* Output path from the scenario ("" if unset); valid while the handle lives. */
POVM_API const char *povm_scenario_output_path(const povm_scenario *scenario);
/* tolerance may be NULL to use the scenario's value. */
POVM_API povm_status povm_scenario_run(const povm_scenario *scenario,
                                       const char *command,
                                       const double *tolerance,
                                       povm_result **out);
POVM_API void povm_result_destroy(povm_result *result);
POVM_API const char *povm_result_csv(const povm_result *result);
/* 0 success, 3 numerical-validation failure. */
POVM_API int povm_result_exit_code(const povm_result *result);
POVM_API const char *povm_result_message(const povm_result *result);

#ifdef __cplusplus
}
#endif

#endif /* POVM_POVM_H */
