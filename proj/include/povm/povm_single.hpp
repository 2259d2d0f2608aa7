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
 * POVM elements on the single-photon subspace of the filter's input modes.
 *
 * Elements come in three representations:
 *  - Pure:     weight * |psi><psi| with psi normalized,
 *  - Diagonal: int dw d(w) |w><w| (a spectral density),
 *  - Ensemble: sum_j lambda_j |psi_j><psi_j| with normalized psi_j.
 *
 * Window elements are Ensembles over midpoint-rule detection times. Traces
 * and purities of Ensembles are computed from the Gram matrix
 * G_jl = <psi_j|psi_l>; the grid-sized operator matrix is never formed.
 *
 * Traces follow the discrete-ket convention of spectral_core.hpp, i.e. they
 * are traces of the operator on the discretized Hilbert space. For a
 * Diagonal element that is sum_i d_i; the physically meaningful frequency
 * integral sum_i q_i d_i is available as integrated_density().
 */

#pragma once

#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "povm/filters.hpp"
#include "povm/spectral_core.hpp"

namespace povm {

struct PureElement {
    double weight;
    SpectralAmplitude amplitude;
};

struct DiagonalElement {
    FrequencyGrid grid;
    std::vector<double> density;
};

/// sum_j weight_j |psi_j><psi_j|. Members are either stored explicitly or,
/// for time-sampled elements, generated as psi_j(w) = envelope(w) e^{i w t_j}.
class EnsembleElement {
  public:
    EnsembleElement(std::vector<double> weights,
                    std::vector<SpectralAmplitude> amplitudes);

    /// Time-sampled ensemble; `envelope` must be normalized.
    EnsembleElement(std::vector<double> weights, SpectralAmplitude envelope,
                    std::vector<double> times);

    [[nodiscard]] std::size_t size() const noexcept { return weights_.size(); }
    [[nodiscard]] const FrequencyGrid &grid() const noexcept;
    [[nodiscard]] std::span<const double> weights() const noexcept {
        return weights_;
    }
    [[nodiscard]] SpectralAmplitude amplitude(std::size_t j) const;

    [[nodiscard]] bool time_sampled() const noexcept {
        return envelope_.has_value();
    }
    [[nodiscard]] const SpectralAmplitude &envelope() const {
        return *envelope_;
    }
    [[nodiscard]] std::span<const double> times() const noexcept {
        return times_;
    }

    /// Matrix whose column j holds the discrete-ket coordinates of psi_j.
    [[nodiscard]] Eigen::MatrixXcd coordinate_matrix() const;

    /// G_jl = <psi_j|psi_l>. Uniformly spaced time-sampled ensembles use the
    /// Toeplitz structure of G (O(n N) instead of O(n^2 N)).
    [[nodiscard]] Eigen::MatrixXcd gram() const;

    /// <psi_j|phi> for every member.
    [[nodiscard]] Eigen::VectorXcd projections(const SpectralAmplitude &phi) const;

  private:
    std::vector<double> weights_;
    std::vector<SpectralAmplitude> amplitudes_;
    std::optional<SpectralAmplitude> envelope_;
    std::vector<double> times_;
};

class PovmElement {
  public:
    using Representation =
        std::variant<PureElement, DiagonalElement, EnsembleElement>;

    /// Throws DomainError for negative weights or an unnormalized amplitude.
    static PovmElement pure(double weight, SpectralAmplitude amplitude);
    static PovmElement diagonal(const FrequencyGrid &grid,
                                std::vector<double> density);
    static PovmElement ensemble(EnsembleElement ensemble);

    [[nodiscard]] const Representation &representation() const noexcept {
        return rep_;
    }
    [[nodiscard]] const FrequencyGrid &grid() const noexcept;

    template <class T> [[nodiscard]] const T &as() const {
        return std::get<T>(rep_);
    }
    template <class T> [[nodiscard]] bool is() const noexcept {
        return std::holds_alternative<T>(rep_);
    }

  private:
    explicit PovmElement(Representation rep) : rep_(std::move(rep)) {}
    Representation rep_;
};

/// A finite orthonormal set of mode functions.
class ModeBasis {
  public:
    enum class Kind { BoxcarBins, HermiteGauss };

    /// Tiles the whole grid with bins of `points_per_bin` consecutive points
    /// (the last bin may be shorter). Each bin of m points carries its m
    /// bin-localized discrete Fourier modes, so the basis is complete on the
    /// grid; with points_per_bin == 1 the modes are the discrete Dirac kets.
    static ModeBasis boxcar_bins(const FrequencyGrid &grid,
                                 std::size_t points_per_bin);

    /// Hermite-Gauss functions of the given width (intensity standard deviation
    /// of the fundamental), Gram-Schmidt orthonormalized on the grid.
    static ModeBasis hermite_gauss(const FrequencyGrid &grid, double center,
                                   double width, std::size_t count);

    /// Copy without the modes belonging to one bin.
    [[nodiscard]] ModeBasis without_bin(std::size_t bin) const;

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] const FrequencyGrid &grid() const noexcept { return grid_; }
    [[nodiscard]] std::size_t size() const noexcept { return local_.size(); }
    /// Mode k as a full-grid amplitude (zero outside its support).
    [[nodiscard]] SpectralAmplitude mode(std::size_t k) const;
    /// Samples of mode k on its support.
    [[nodiscard]] std::span<const Complex> local_values(std::size_t k) const {
        return local_.at(k);
    }
    [[nodiscard]] std::size_t bin_of(std::size_t k) const { return bin_.at(k); }
    /// Half-open index range [first, second) outside which mode k vanishes.
    [[nodiscard]] std::pair<std::size_t, std::size_t>
    support(std::size_t k) const {
        return support_.at(k);
    }

    /// max_{k,k'} |<phi_k|phi_k'> - delta_kk'|
    [[nodiscard]] double orthonormality_residual() const;

  private:
    ModeBasis(Kind kind, FrequencyGrid grid) : kind_(kind), grid_(grid) {}
    Kind kind_;
    FrequencyGrid grid_;
    std::vector<ComplexVector> local_;
    std::vector<std::size_t> bin_;
    std::vector<std::pair<std::size_t, std::size_t>> support_;
};

/// w_k |T phi_k><T phi_k| with w_k = sum q |T|^2 |phi_k|^2 and the amplitude
/// proportional to conj(T) phi_k. Throws UnreachableOutcomeError if
/// w_k < 1e-300.
PovmElement ideal_element(const FilterSpec &filter,
                          const SpectralAmplitude &phi_k);

/// As ideal_element with R in place of T (the reflected-port element).
PovmElement reflected_element(const FilterSpec &filter,
                              const SpectralAmplitude &phi_k);

/// Diagonal element with density |R(w)|^2.
PovmElement null_element(const FilterSpec &filter);

/// sum_i q_i d_i
double integrated_density(const DiagonalElement &element);

struct CompletenessResidual {
    /// max_i |(sum_k Pi_k)_ii + |R_i|^2 - 1|
    double diagonal = 0.0;
    /// Frobenius norm of the off-diagonal part of sum_k Pi_k.
    double off_diagonal = 0.0;
};

/// Residual of Pi_null + sum_k Pi_k against the identity. Modes are grouped
/// into blocks of overlapping support; a block larger than 4096 points
/// throws DomainError.
CompletenessResidual completeness_residual(const ModeBasis &basis,
                                           const FilterSpec &filter);

struct TimeState {
    /// w = (eta / 2 pi) sum_i q_i |C_k(w_i)|^2, per unit time.
    double weight_density;
    /// Psi_t proportional to conj(C_k(w)) e^{i w t}, normalized.
    SpectralAmplitude amplitude;
};

/// Detection at time t behind transmitted port k of the chain.
TimeState time_state(const FilterChain &chain, std::size_t port, double t,
                     double eta);

/// <Psi_t | Psi_t'> by quadrature.
Complex overlap_time(const FilterChain &chain, std::size_t port, double t,
                     double t_prime);

/// e^{-gamma |dt|} e^{i omega0 dt}, the Lorentzian limit of overlap_time with
/// dt = t' - t.
Complex closed_form_overlap(double gamma, double omega0, double dt);

/// int_window dt w |Psi_t><Psi_t| as a midpoint-rule Ensemble with weights
/// w * dt / n. Trace is w * dt.
PovmElement window_element(const FilterChain &chain, std::size_t port,
                           const TimeWindow &window);

double trace(const PovmElement &element);
/// Tr(e1 e2)
double hs_product(const PovmElement &e1, const PovmElement &e2);
/// Tr(Pi^2) / Tr(Pi)^2; throws DomainError for a zero-trace element.
double purity(const PovmElement &element);
/// 1 / purity
double d_eff(const PovmElement &element);
/// Largest eigenvalue of the element as an operator (<= 1 for a valid POVM
/// element).
double max_eigenvalue(const PovmElement &element);

/// (e^{-2x} + 2x - 1) / (2 x^2), with the x -> 0 limit 1.
double closed_form_purity(double x);

/// Tr(rho Pi) for the pure state |phi><phi| (phi normalized).
double detection_probability(const SpectralAmplitude &state,
                             const PovmElement &element);
/// Tr(rho Pi) for a density matrix.
double detection_probability(const DensityMatrix &rho,
                             const PovmElement &element);

/// Diagonal of the element's matrix in discrete-ket coordinates. For a
/// Diagonal element this is the density itself.
std::vector<double> frequency_diagonal(const PovmElement &element);

} // namespace povm
