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
 * Heralded single photons. A photon pair with joint amplitude Phi(w, w')
 * is split; the herald photon (frequency w) passes a filter and is detected,
 * and the signal photon (frequency w') is left in the conditional state.
 *
 * Density matrices of the signal photon are stored in discrete-ket
 * coordinates on the signal grid (see spectral_core.hpp).
 */

#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "povm/filters.hpp"
#include "povm/povm_single.hpp"
#include "povm/spectral_core.hpp"

namespace povm {

class JointAmplitude {
  public:
    /// Rows index the herald grid, columns the signal grid. Throws DomainError
    /// unless sum_ij q_i q'_j |Phi_ij|^2 = 1 within 1e-10.
    JointAmplitude(FrequencyGrid herald_grid, FrequencyGrid signal_grid,
                   Eigen::MatrixXcd values);

    /// Same, rescaling `values` to unit norm first.
    static JointAmplitude normalized(FrequencyGrid herald_grid,
                                     FrequencyGrid signal_grid,
                                     Eigen::MatrixXcd values);

    [[nodiscard]] const FrequencyGrid &herald_grid() const noexcept {
        return herald_grid_;
    }
    [[nodiscard]] const FrequencyGrid &signal_grid() const noexcept {
        return signal_grid_;
    }
    [[nodiscard]] const Eigen::MatrixXcd &values() const noexcept {
        return values_;
    }

    /// sqrt(q_i) Phi_ij sqrt(q'_j)
    [[nodiscard]] Eigen::MatrixXcd coordinates() const;

    /// Purity of the signal photon's reduced state with no filtering.
    [[nodiscard]] double unfiltered_purity() const;

  private:
    FrequencyGrid herald_grid_;
    FrequencyGrid signal_grid_;
    Eigen::MatrixXcd values_;
};

/// Phi proportional to exp(-(w + w' - 2 wp)^2 / (4 sp^2)) exp(-(w - w')^2 / (4 sm^2))
/// with wp = pump_center (the pump at 2 wp).
JointAmplitude correlated_gaussian_jsa(const FrequencyGrid &herald_grid,
                                       const FrequencyGrid &signal_grid,
                                       double pump_center, double sigma_plus,
                                       double sigma_minus);

/// Product of two Gaussian amplitudes (herald factor times signal factor).
JointAmplitude separable_gaussian_jsa(const FrequencyGrid &herald_grid,
                                      const FrequencyGrid &signal_grid,
                                      double herald_center, double herald_width,
                                      double signal_center, double signal_width);

/// 2 sp sm / (sp^2 + sm^2), the unfiltered purity of correlated_gaussian_jsa
/// on an unbounded grid.
double gaussian_schmidt_purity(double sigma_plus, double sigma_minus);

struct HeraldOutcome {
    double probability;
    /// Normalized conditional signal amplitude.
    SpectralAmplitude signal;
};

/// Herald detected in the mode T phi_k behind the filter.
/// Throws UnreachableOutcomeError if the probability is below 1e-300.
HeraldOutcome herald_outcome(const JointAmplitude &phi, const FilterSpec &filter,
                             const SpectralAmplitude &phi_k);

struct HeraldedState {
    DensityMatrix density;
    double probability;
};

/// Conditional state for an arbitrary herald POVM element:
/// rho = Tr_a(Pi (x) 1 |Phi><Phi|) / P.
HeraldedState herald_with_element(const JointAmplitude &phi,
                                  const PovmElement &element);

/// Herald detected at any time with any frequency (diagonal element eta |T|^2).
HeraldedState herald_mixed(const JointAmplitude &phi, const FilterSpec &filter,
                           double eta = 1.0);

/// Herald detected within a finite time window.
HeraldedState herald_windowed(const JointAmplitude &phi,
                              const FilterSpec &filter,
                              const TimeWindow &window);

struct StateDiagnostics {
    double hermiticity;  ///< max |rho - rho^dagger|
    double trace_error;  ///< |Tr rho - 1|
    double min_eigenvalue;
    double purity;
};
StateDiagnostics diagnose(const DensityMatrix &rho);

/// One point of a purity/efficiency sweep. dt = +inf selects herald_mixed.
struct WindowChoice {
    double t0 = 0.0;
    double dt = std::numeric_limits<double>::infinity();
    double eta = 1.0;
    /// 0 selects default_time_samples(gamma, dt) per filter.
    std::size_t n_time_samples = 0;
};

struct TradeoffPoint {
    double gamma;
    double dt;
    double purity;
    double efficiency;
};

/// Filters outer, windows inner. Throws DomainError on empty sweeps.
std::vector<TradeoffPoint> tradeoff_curve(const JointAmplitude &phi,
                                          const std::vector<FilterSpec> &filters,
                                          const std::vector<WindowChoice> &windows);

} // namespace povm
