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

#include "povm/filters.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "povm/errors.hpp"

namespace povm {
namespace {

// R for a given T under the +i sign convention. Slight overshoot of |T|
// (rounding) is clamped to a fully transmissive point.
Complex reflection_for(Complex t) {
    const double mag2 = std::norm(t);
    const double r_mag = std::sqrt(std::max(0.0, 1.0 - mag2));
    if (r_mag == 0.0) {
        return {0.0, 0.0};
    }
    const double phase = (t == Complex{0.0, 0.0}) ? 0.0 : std::arg(t);
    return Complex(0.0, 1.0) * std::polar(r_mag, phase);
}

Complex lerp(Complex a, Complex b, double s) { return a + (b - a) * s; }

FilterSpec from_samples_with_model(const FrequencyGrid &grid, ComplexVector t,
                                   ResponseModel model) {
    ComplexVector r(t.size());
    std::size_t peak = 0;
    double acc = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (std::abs(t[i]) > 1.0 + 1e-12 || !std::isfinite(std::abs(t[i]))) {
            std::ostringstream msg;
            msg << "transmission magnitude exceeds 1 at omega=" << grid.omega(i)
                << " (|T|=" << std::abs(t[i]) << ")";
            throw DomainError(msg.str());
        }
        if (std::abs(t[i]) > 1.0) {
            t[i] /= std::abs(t[i]);
        }
        r[i] = reflection_for(t[i]);
        if (std::norm(t[i]) > std::norm(t[peak])) {
            peak = i;
        }
        acc += grid.weight(i) * std::norm(t[i]);
    }
    const double gamma = acc / std::numbers::pi;
    return FilterSpec(grid, grid.omega(peak), gamma, std::move(t), std::move(r),
                      std::move(model));
}

} // namespace

FilterSpec::FilterSpec(FrequencyGrid grid, double omega0, double gamma,
                       ComplexVector transmission, ComplexVector reflection,
                       ResponseModel model)
    : grid_(grid), omega0_(omega0), gamma_(gamma), t_(std::move(transmission)),
      r_(std::move(reflection)), model_(std::move(model)) {
    if (t_.size() != grid_.size() || r_.size() != grid_.size()) {
        throw GridMismatchError("filter sample count does not match grid");
    }
    if (!(gamma_ >= 0.0)) {
        throw DomainError("filter bandwidth must be nonnegative");
    }
    const auto residual = unitarity_residual();
    if (!(residual.max() <= kUnitarityTolerance)) {
        std::ostringstream msg;
        msg << "filter violates unitarity: ||T|^2+|R|^2-1| = " << residual.norm
            << ", |TR*+T*R| = " << residual.cross;
        throw DomainError(msg.str());
    }
}

FilterResponse FilterSpec::response_at(double omega) const {
    if (model_) {
        return model_(omega);
    }
    const double tol = 1e-9 * grid_.spacing();
    if (omega < grid_.omega_min() - tol || omega > grid_.omega_max() + tol) {
        throw DomainError("filter response requested outside its grid");
    }
    const double x = std::clamp((omega - grid_.omega_min()) / grid_.spacing(),
                                0.0, static_cast<double>(grid_.size() - 1));
    const auto i = std::min(static_cast<std::size_t>(x), grid_.size() - 2);
    const double s = x - static_cast<double>(i);
    const Complex t = lerp(t_[i], t_[i + 1], s);
    // Interpolating T and R independently would break unitarity between
    // nodes; rebuild R from T under the same convention where possible.
    const Complex r_lin = lerp(r_[i], r_[i + 1], s);
    const double n = std::sqrt(std::norm(t) + std::norm(r_lin));
    if (n == 0.0) {
        return {t, r_lin};
    }
    return {t / n, r_lin / n};
}

UnitarityResidual FilterSpec::unitarity_residual() const noexcept {
    UnitarityResidual out;
    for (std::size_t i = 0; i < t_.size(); ++i) {
        const double norm = std::abs(std::norm(t_[i]) + std::norm(r_[i]) - 1.0);
        const double cross =
            std::abs(t_[i] * std::conj(r_[i]) + std::conj(t_[i]) * r_[i]);
        out.norm = std::max(out.norm, norm);
        out.cross = std::max(out.cross, cross);
    }
    return out;
}

FilterSpec lorentzian_filter(const FrequencyGrid &grid, double omega0,
                             double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw DomainError("lorentzian filter requires gamma > 0");
    }
    if (omega0 / gamma < 100.0) {
        std::ostringstream msg;
        msg << "lorentzian filter with omega0/gamma = " << omega0 / gamma
            << " < 100; the model assumes omega0 >> gamma";
        warn(msg.str());
    }
    ResponseModel model = [omega0, gamma](double omega) {
        const Complex denom(gamma, -(omega - omega0));
        const Complex t = gamma / denom;
        const Complex r = Complex(0.0, -(omega - omega0)) / denom;
        return FilterResponse{t, r};
    };
    ComplexVector t(grid.size());
    ComplexVector r(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto resp = model(grid.omega(i));
        t[i] = resp.transmission;
        r[i] = resp.reflection;
    }
    return FilterSpec(grid, omega0, gamma, std::move(t), std::move(r),
                      std::move(model));
}

FilterSpec filter_from_transmission(const FrequencyGrid &grid,
                                    ComplexVector transmission) {
    if (transmission.size() != grid.size()) {
        throw GridMismatchError("transmission sample count does not match grid");
    }
    return from_samples_with_model(grid, std::move(transmission), {});
}

FilterSpec filter_from_response(const FrequencyGrid &grid,
                                std::function<Complex(double)> transmission) {
    if (!transmission) {
        throw DomainError("filter_from_response requires a transmission model");
    }
    ComplexVector t(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        t[i] = transmission(grid.omega(i));
    }
    ResponseModel model = [transmission](double omega) {
        Complex tw = transmission(omega);
        if (std::abs(tw) > 1.0) {
            tw /= std::abs(tw);
        }
        return FilterResponse{tw, reflection_for(tw)};
    };
    return from_samples_with_model(grid, std::move(t), std::move(model));
}

FilterSpec resample(const FilterSpec &filter, const FrequencyGrid &grid) {
    ComplexVector t(grid.size());
    ComplexVector r(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto resp = filter.response_at(grid.omega(i));
        t[i] = resp.transmission;
        r[i] = resp.reflection;
    }
    ResponseModel model;
    if (filter.has_model()) {
        model = [filter](double omega) { return filter.response_at(omega); };
    }
    return FilterSpec(grid, filter.omega0(), filter.gamma(), std::move(t),
                      std::move(r), std::move(model));
}

double effective_bandwidth(const FilterSpec &filter) {
    const auto &grid = filter.grid();
    const auto t = filter.transmission();
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        acc += grid.weight(i) * std::norm(t[i]);
    }
    return acc / std::numbers::pi;
}

FilterChain::FilterChain(std::vector<FilterSpec> filters)
    : filters_(std::move(filters)) {
    if (filters_.empty()) {
        throw DomainError("filter chain must contain at least one filter");
    }
    for (const auto &f : filters_) {
        require_same_grid(filters_.front().grid(), f.grid(), "filter chain");
    }
}

ComplexVector chain_port_coefficient(const FilterChain &chain, std::size_t k) {
    if (k >= chain.size()) {
        std::ostringstream msg;
        msg << "port index " << k << " out of range for a chain of "
            << chain.size() << " filter(s)";
        throw IndexError(msg.str());
    }
    const auto n = chain.grid().size();
    ComplexVector c(chain[k].transmission().begin(),
                    chain[k].transmission().end());
    for (std::size_t j = 0; j < k; ++j) {
        const auto r = chain[j].reflection();
        for (std::size_t i = 0; i < n; ++i) {
            c[i] *= r[i];
        }
    }
    return c;
}

ComplexVector chain_reflected_coefficient(const FilterChain &chain) {
    const auto n = chain.grid().size();
    ComplexVector c(n, Complex{1.0, 0.0});
    for (std::size_t j = 0; j < chain.size(); ++j) {
        const auto r = chain[j].reflection();
        for (std::size_t i = 0; i < n; ++i) {
            c[i] *= r[i];
        }
    }
    return c;
}

FilterBranches apply_filter(const SpectralAmplitude &f,
                            const FilterSpec &filter) {
    require_same_grid(f.grid(), filter.grid(), "apply_filter");
    const auto t = filter.transmission();
    const auto r = filter.reflection();
    ComplexVector tv(f.size());
    ComplexVector rv(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        tv[i] = t[i] * f[i];
        rv[i] = r[i] * f[i];
    }
    return {SpectralAmplitude(f.grid(), std::move(tv)),
            SpectralAmplitude(f.grid(), std::move(rv))};
}

} // namespace povm
