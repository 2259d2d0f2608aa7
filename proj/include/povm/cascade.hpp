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
 * Two filters in series: the second filter sits in the reflected port of the
 * first. Covers single-photon detection behind the second filter and the
 * two-photon projector for one detection behind each filter.
 *
 * Two-photon amplitudes are first-quantized wavefunctions A(w, w') on a grid
 * squared with norm^2 = sum_ij q_i q_j |A_ij|^2.
 */

#pragma once

#include "povm/filters.hpp"
#include "povm/spectral_core.hpp"

namespace povm {

class TwoPhotonAmplitude {
  public:
    /// Throws DomainError if `symmetric` is set but values differ from their
    /// transpose by more than 1e-12 (relative to the largest entry).
    TwoPhotonAmplitude(FrequencyGrid grid, Eigen::MatrixXcd values,
                       bool symmetric);

    /// Symmetrized f(w) g(w') + g(w) f(w'), unnormalized.
    static TwoPhotonAmplitude symmetrized_product(const SpectralAmplitude &f,
                                                  const SpectralAmplitude &g);

    [[nodiscard]] const FrequencyGrid &grid() const noexcept { return grid_; }
    [[nodiscard]] const Eigen::MatrixXcd &values() const noexcept {
        return values_;
    }
    [[nodiscard]] bool symmetric() const noexcept { return symmetric_; }
    [[nodiscard]] double norm_squared() const;
    [[nodiscard]] TwoPhotonAmplitude normalized() const &;
    [[nodiscard]] TwoPhotonAmplitude normalized() &&;

  private:
    struct Unchecked {};
    TwoPhotonAmplitude(FrequencyGrid grid, Eigen::MatrixXcd values,
                       bool symmetric, Unchecked)
        : grid_(grid), values_(std::move(values)), symmetric_(symmetric) {}

    FrequencyGrid grid_;
    Eigen::MatrixXcd values_;
    bool symmetric_;
};

/// sum_ij q_i q_j conj(a_ij) b_ij
Complex inner_product(const TwoPhotonAmplitude &a, const TwoPhotonAmplitude &b);

/// Default grid for two-photon work: n points spanning +-60 gamma around
/// both filter centers.
FrequencyGrid two_photon_grid(double omega0, double omega1, double gamma,
                              std::size_t n_points = 1024);

/// Detection behind the second filter at time t:
/// w' = (eta / 2 pi) sum q |T1 R|^2 and Psi'_t proportional to conj(T1 R) e^{iwt}.
struct SecondPortState {
    double weight_density;
    SpectralAmplitude amplitude;
};
SecondPortState second_port_state(const FilterSpec &filter0,
                                  const FilterSpec &filter1, double t,
                                  double eta);

/// <Psi'_t'|Psi_t>. Throws UnreachableOutcomeError if either weight is zero.
Complex cross_overlap(const FilterSpec &filter0, const FilterSpec &filter1,
                      double t, double t_prime);

struct TwoPhotonProjector {
    /// Weight in W |Psi_{t,t'}><Psi_{t,t'}|.
    double weight;
    /// Unit-norm symmetric amplitude Psi_{t,t'}.
    TwoPhotonAmplitude amplitude;
    /// Single-detection weights w (first filter) and w' (second filter).
    double w0;
    double w1;
};

/// Joint detection at t behind filter0 and t' behind filter1, with
/// efficiencies eta0 and eta1. W = w w' (1 + |<Psi'_t'|Psi_t>|^2).
TwoPhotonProjector two_photon_projector(const FilterSpec &filter0,
                                        const FilterSpec &filter1, double t,
                                        double t_prime, double eta0,
                                        double eta1);

/// W |<Psi_{t,t'}|Phi>|^2 for a normalized symmetric two-photon state.
double joint_detection_probability(const TwoPhotonAmplitude &phi,
                                   const FilterSpec &filter0,
                                   const FilterSpec &filter1, double t,
                                   double t_prime, double eta0, double eta1);

} // namespace povm
