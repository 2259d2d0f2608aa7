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
 * Frequency grids, sampled single-photon amplitudes and the transforms
 * between the frequency and time domains.
 *
 * Conventions used throughout the library:
 *  - A FrequencyGrid is uniform on [omega_min, omega_max] with composite
 *    trapezoid weights q_i (endpoints carry half weight).
 *  - A continuum ket |omega_i> is represented by the grid indicator scaled
 *    by 1/sqrt(q_i). A state with amplitude phi(omega) therefore has the
 *    coordinate vector v_i = sqrt(q_i) phi_i, and sum_i q_i |omega_i><omega_i|
 *    is exactly the identity matrix.
 *  - Time-domain amplitudes use psi(t) = (2 pi)^{-1/2} int dw phi(w) e^{-iwt}.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace povm {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

class FrequencyGrid {
  public:
    /// Throws DomainError unless 0 < omega_min < omega_max and n_points >= 2.
    FrequencyGrid(double omega_min, double omega_max, std::size_t n_points);

    [[nodiscard]] double omega_min() const noexcept { return omega_min_; }
    [[nodiscard]] double omega_max() const noexcept { return omega_max_; }
    [[nodiscard]] std::size_t size() const noexcept { return n_points_; }
    [[nodiscard]] double spacing() const noexcept { return spacing_; }
    [[nodiscard]] double span() const noexcept {
        return omega_max_ - omega_min_;
    }
    [[nodiscard]] double midpoint() const noexcept {
        return 0.5 * (omega_min_ + omega_max_);
    }

    [[nodiscard]] double omega(std::size_t i) const noexcept {
        return i + 1 == n_points_ ? omega_max_
                                  : omega_min_ + spacing_ * static_cast<double>(i);
    }
    /// Trapezoid quadrature weight of point i.
    [[nodiscard]] double weight(std::size_t i) const noexcept {
        return (i == 0 || i + 1 == n_points_) ? 0.5 * spacing_ : spacing_;
    }

    [[nodiscard]] std::vector<double> points() const;
    [[nodiscard]] std::vector<double> quad_weights() const;

    /// Index of the grid point nearest to omega (clamped to the grid).
    [[nodiscard]] std::size_t nearest_index(double omega) const noexcept;

    friend bool operator==(const FrequencyGrid &,
                           const FrequencyGrid &) = default;

  private:
    double omega_min_;
    double omega_max_;
    std::size_t n_points_;
    double spacing_;
};

FrequencyGrid make_grid(double omega_min, double omega_max,
                        std::size_t n_points);

/// Throws GridMismatchError naming `what` when the grids differ.
void require_same_grid(const FrequencyGrid &a, const FrequencyGrid &b,
                       std::string_view what);

/// Complex amplitude phi(omega) sampled on a FrequencyGrid.
class SpectralAmplitude {
  public:
    SpectralAmplitude(FrequencyGrid grid, ComplexVector values);

    static SpectralAmplitude zeros(const FrequencyGrid &grid);

    template <class F>
    static SpectralAmplitude from_function(const FrequencyGrid &grid,
                                           F &&phi) {
        ComplexVector values(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            values[i] = Complex(phi(grid.omega(i)));
        }
        return SpectralAmplitude(grid, std::move(values));
    }

    [[nodiscard]] const FrequencyGrid &grid() const noexcept { return grid_; }
    [[nodiscard]] std::span<const Complex> values() const noexcept {
        return values_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] Complex operator[](std::size_t i) const { return values_[i]; }

    /// sum_i q_i |phi_i|^2
    [[nodiscard]] double norm_squared() const noexcept;

    /// Unit-norm copy; an amplitude already normalized to 1e-14 is returned
    /// unchanged, so normalizing twice is bitwise idempotent.
    [[nodiscard]] SpectralAmplitude normalized() const;

    /// Coordinate vector sqrt(q_i) phi_i in the discrete-ket basis.
    [[nodiscard]] Eigen::VectorXcd coordinates() const;

  private:
    FrequencyGrid grid_;
    ComplexVector values_;
};

SpectralAmplitude normalize(const SpectralAmplitude &f);

/// sum_i q_i conj(f_i) g_i
Complex inner_product(const SpectralAmplitude &f, const SpectralAmplitude &g);

/// Normalized Gaussian whose intensity |phi|^2 has standard deviation sigma.
SpectralAmplitude gaussian_amplitude(const FrequencyGrid &grid, double center,
                                     double sigma);

/// Spectrum of the exponentially decaying pulse sqrt(kappa) e^{-kappa t/2}
/// e^{-i center t} (t > 0), normalized on the grid.
SpectralAmplitude exponential_pulse(const FrequencyGrid &grid, double center,
                                    double kappa);

/// Flat amplitude on [lo, hi], zero elsewhere, normalized on the grid.
SpectralAmplitude boxcar_amplitude(const FrequencyGrid &grid, double lo,
                                   double hi);

struct TemporalAmplitude {
    std::vector<double> times;
    ComplexVector values;

    /// Trapezoid estimate of int dt |psi(t)|^2 over the sampled instants.
    [[nodiscard]] double energy() const;
};

/// n evenly spaced instants from t_min to t_max inclusive.
std::vector<double> linspace_times(double t_min, double t_max, std::size_t n);

/// psi(t) = (2 pi)^{-1/2} sum_i q_i f_i e^{-i omega_i t} at each instant.
/// `times` must be strictly increasing.
TemporalAmplitude to_time_domain(const SpectralAmplitude &f,
                                 std::span<const double> times);

/// Dispersive chirp e^{-i alpha (omega - omega_mid)^2 / 2}, transform to the
/// time domain, then temporal chirp e^{-i beta t^2 / 2}. omega_mid is the
/// grid midpoint. Throws DomainError for alpha == 0.
TemporalAmplitude time_lens(const SpectralAmplitude &f, double alpha,
                            double beta, std::span<const double> times);

/// Detection interval [t0, t0 + dt] with efficiency eta, discretized by
/// n_time_samples midpoint-rule instants.
class TimeWindow {
  public:
    TimeWindow(double t0, double dt, double eta, std::size_t n_time_samples);

    /// Uses default_time_samples(gamma, dt).
    static TimeWindow with_default_sampling(double t0, double dt, double eta,
                                            double gamma);

    [[nodiscard]] double t0() const noexcept { return t0_; }
    [[nodiscard]] double dt() const noexcept { return dt_; }
    [[nodiscard]] double eta() const noexcept { return eta_; }
    [[nodiscard]] std::size_t n_time_samples() const noexcept { return n_; }
    [[nodiscard]] double sample_spacing() const noexcept {
        return dt_ / static_cast<double>(n_);
    }
    [[nodiscard]] std::vector<double> sample_times() const;

  private:
    double t0_;
    double dt_;
    double eta_;
    std::size_t n_;
};

/// max(32, ceil(20 gamma dt)): 20 samples per filter time, with a floor that
/// keeps short windows accurate.
std::size_t default_time_samples(double gamma, double dt);

/// Single-photon density operator in discrete-ket coordinates:
/// matrix(i, j) = sqrt(q_i q_j) rho(omega_i, omega_j), so trace() is the
/// physical trace.
struct DensityMatrix {
    FrequencyGrid grid;
    Eigen::MatrixXcd matrix;

    [[nodiscard]] double trace() const { return matrix.trace().real(); }
    /// Tr(rho^2) / Tr(rho)^2
    [[nodiscard]] double purity() const;
};

} // namespace povm
