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
 * Passive two-port frequency filters described by a transmission and a
 * reflection coefficient, and cascades of such filters in which each filter
 * is fed by the reflected port of the previous one.
 */

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "povm/spectral_core.hpp"

namespace povm {

struct FilterResponse {
    Complex transmission;
    Complex reflection;
};

/// Closed-form response, evaluated off-grid by root finders.
using ResponseModel = std::function<FilterResponse(double omega)>;

/// Largest pointwise violation of |T|^2 + |R|^2 = 1 and T R* + T* R = 0.
struct UnitarityResidual {
    double norm = 0.0;
    double cross = 0.0;
    [[nodiscard]] double max() const { return norm > cross ? norm : cross; }
};

/// Tolerance applied by the FilterSpec constructor to both conditions.
inline constexpr double kUnitarityTolerance = 1e-12;

class FilterSpec {
  public:
    /// Throws DomainError if either unitarity condition is violated by more
    /// than kUnitarityTolerance at any grid point.
    FilterSpec(FrequencyGrid grid, double omega0, double gamma,
               ComplexVector transmission, ComplexVector reflection,
               ResponseModel model = {});

    [[nodiscard]] const FrequencyGrid &grid() const noexcept { return grid_; }
    [[nodiscard]] double omega0() const noexcept { return omega0_; }
    [[nodiscard]] double gamma() const noexcept { return gamma_; }
    [[nodiscard]] std::span<const Complex> transmission() const noexcept {
        return t_;
    }
    [[nodiscard]] std::span<const Complex> reflection() const noexcept {
        return r_;
    }
    [[nodiscard]] bool has_model() const noexcept {
        return static_cast<bool>(model_);
    }

    /// T and R at an arbitrary frequency inside the grid. Uses the closed-form
    /// model when present, otherwise linear interpolation of the samples.
    [[nodiscard]] FilterResponse response_at(double omega) const;

    [[nodiscard]] UnitarityResidual unitarity_residual() const noexcept;

  private:
    FrequencyGrid grid_;
    double omega0_;
    double gamma_;
    ComplexVector t_;
    ComplexVector r_;
    ResponseModel model_;
};

/// T = gamma / (gamma - i (omega - omega0)), R = 1 - T.
/// Warns (does not throw) when omega0 / gamma < 100.
FilterSpec lorentzian_filter(const FrequencyGrid &grid, double omega0,
                             double gamma);

/// Builds R = i e^{i arg T} sqrt(1 - |T|^2) from tabulated T. omega0 is the
/// |T|^2 peak and gamma the effective bandwidth.
/// Throws DomainError if any |T_i| > 1 + 1e-12.
FilterSpec filter_from_transmission(const FrequencyGrid &grid,
                                    ComplexVector transmission);

/// As filter_from_transmission, sampling a closed-form T(omega) and keeping it
/// for off-grid evaluation.
FilterSpec filter_from_response(const FrequencyGrid &grid,
                                std::function<Complex(double)> transmission);

/// Re-samples a filter on another grid via response_at. The target grid must
/// lie inside the source grid unless the filter has a closed-form model.
FilterSpec resample(const FilterSpec &filter, const FrequencyGrid &grid);

/// (1/pi) sum_i q_i |T_i|^2
double effective_bandwidth(const FilterSpec &filter);

class FilterChain {
  public:
    /// Filters must be non-empty and share one grid.
    explicit FilterChain(std::vector<FilterSpec> filters);

    [[nodiscard]] std::size_t size() const noexcept { return filters_.size(); }
    [[nodiscard]] const FilterSpec &operator[](std::size_t k) const {
        return filters_[k];
    }
    [[nodiscard]] const FrequencyGrid &grid() const noexcept {
        return filters_.front().grid();
    }

  private:
    std::vector<FilterSpec> filters_;
};

/// Effective transmission into the k-th transmitted port:
/// C_k = T_k prod_{j<k} R_j. Throws IndexError for k >= chain.size().
ComplexVector chain_port_coefficient(const FilterChain &chain, std::size_t k);

/// prod_j R_j, the coefficient of the final reflected port.
ComplexVector chain_reflected_coefficient(const FilterChain &chain);

struct FilterBranches {
    SpectralAmplitude transmitted;
    SpectralAmplitude reflected;
};

/// Unnormalized branch amplitudes T f and R f.
FilterBranches apply_filter(const SpectralAmplitude &f,
                            const FilterSpec &filter);

} // namespace povm
