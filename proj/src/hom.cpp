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


#include "povm/hom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "povm/errors.hpp"

namespace povm {
namespace {

using Eigen::Index;

constexpr std::size_t kMaxMapPoints = 4096;

void check_inputs(const SpectralAmplitude &phi1, const SpectralAmplitude &phi2,
                  const FilterSpec &filter) {
    require_same_grid(phi1.grid(), phi2.grid(), "two-photon interference");
    require_same_grid(phi1.grid(), filter.grid(), "two-photon interference");
    if (filter.grid().size() > kMaxMapPoints) {
        throw DomainError("two-photon maps are limited to grids of 4096 points");
    }
}

Eigen::VectorXcd product(const SpectralAmplitude &f, std::span<const Complex> c) {
    Eigen::VectorXcd v(static_cast<Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i) {
        v(static_cast<Index>(i)) = f[i] * c[i];
    }
    return v;
}

Eigen::MatrixXcd ab_matrix(const SpectralAmplitude &phi1,
                           const SpectralAmplitude &phi2,
                           const FilterSpec &filter) {
    const auto t1 = product(phi1, filter.transmission());
    const auto t2 = product(phi2, filter.transmission());
    const auto r1 = product(phi1, filter.reflection());
    const auto r2 = product(phi2, filter.reflection());
    return t1 * t2.transpose() + r2 * r1.transpose();
}

Complex interpolate(const SpectralAmplitude &f, double omega) {
    const auto &g = f.grid();
    const double tol = 1e-9 * g.spacing();
    if (omega < g.omega_min() - tol || omega > g.omega_max() + tol) {
        throw DomainError("amplitude requested outside its grid");
    }
    const double x = std::clamp((omega - g.omega_min()) / g.spacing(), 0.0,
                                static_cast<double>(g.size() - 1));
    const auto i = std::min(static_cast<std::size_t>(x), g.size() - 2);
    const double s = x - static_cast<double>(i);
    return f[i] + (f[i + 1] - f[i]) * s;
}

double half_gap(const FilterSpec &filter, double omega) {
    return std::norm(filter.response_at(omega).transmission) - 0.5;
}

} // namespace

FrequencyGrid hom_grid(double omega0, double gamma, std::size_t n_points) {
    if (!(gamma > 0.0)) {
        throw DomainError("hom grid requires gamma > 0");
    }
    return FrequencyGrid(omega0 - 20.0 * gamma, omega0 + 20.0 * gamma, n_points);
}

HomOutput hom_split(const SpectralAmplitude &phi1, const SpectralAmplitude &phi2,
                    const FilterSpec &filter) {
    check_inputs(phi1, phi2, filter);
    if (std::abs(phi1.norm_squared() - 1.0) > 1e-10 ||
        std::abs(phi2.norm_squared() - 1.0) > 1e-10) {
        throw DomainError("two-photon interference requires normalized inputs");
    }
    const auto &grid = filter.grid();
    const auto t1 = product(phi1, filter.transmission());
    const auto t2 = product(phi2, filter.transmission());
    const auto r1 = product(phi1, filter.reflection());
    const auto r2 = product(phi2, filter.reflection());
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;

    Eigen::MatrixXcd aa = t1 * r2.transpose();
    aa = (inv_sqrt2 * (aa + aa.transpose())).eval();
    Eigen::MatrixXcd bb = r1 * t2.transpose();
    bb = (inv_sqrt2 * (bb + bb.transpose())).eval();
    Eigen::MatrixXcd ab = ab_matrix(phi1, phi2, filter);
    return {TwoPhotonAmplitude(grid, std::move(aa), true),
            TwoPhotonAmplitude(grid, std::move(bb), true),
            TwoPhotonAmplitude(grid, std::move(ab), false)};
}

Complex coincidence_amplitude(const SpectralAmplitude &phi1,
                              const SpectralAmplitude &phi2,
                              const FilterSpec &filter, double omega,
                              double omega_prime) {
    require_same_grid(phi1.grid(), phi2.grid(), "coincidence_amplitude");
    require_same_grid(phi1.grid(), filter.grid(), "coincidence_amplitude");
    const auto a = filter.response_at(omega);
    const auto b = filter.response_at(omega_prime);
    const Complex p1w = interpolate(phi1, omega);
    const Complex p1wp = interpolate(phi1, omega_prime);
    const Complex p2w = interpolate(phi2, omega);
    const Complex p2wp = interpolate(phi2, omega_prime);
    return p1w * a.transmission * p2wp * b.transmission +
           p1wp * b.reflection * p2w * a.reflection;
}

double destructive_residual(const SpectralAmplitude &phi1,
                            const SpectralAmplitude &phi2,
                            const FilterSpec &filter, double omega,
                            double omega_prime) {
    return std::abs(coincidence_amplitude(phi1, phi2, filter, omega, omega_prime));
}

std::vector<double> half_transmission_loci(const FilterSpec &filter) {
    const auto &grid = filter.grid();
    const auto t = filter.transmission();
    std::vector<double> out;
    auto gap = [&](std::size_t i) { return std::norm(t[i]) - 0.5; };
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double gi = gap(i);
        if (gi == 0.0) {
            out.push_back(grid.omega(i));
            continue;
        }
        if (i + 1 == grid.size()) {
            break;
        }
        const double gj = gap(i + 1);
        if (gj == 0.0 || (gi < 0.0) == (gj < 0.0)) {
            continue;
        }
        double lo = grid.omega(i);
        double hi = grid.omega(i + 1);
        double glo = half_gap(filter, lo);
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (lo + hi);
            if (!(mid > lo && mid < hi)) {
                break;
            }
            const double gm = half_gap(filter, mid);
            if (gm == 0.0) {
                lo = hi = mid;
                break;
            }
            if ((gm < 0.0) == (glo < 0.0)) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
            }
        }
        const double root = std::abs(half_gap(filter, lo)) <=
                                    std::abs(half_gap(filter, hi))
                                ? lo
                                : hi;
        out.push_back(root);
    }
    return out;
}

Eigen::MatrixXd coincidence_map(const SpectralAmplitude &phi1,
                                const SpectralAmplitude &phi2,
                                const FilterSpec &filter) {
    check_inputs(phi1, phi2, filter);
    return ab_matrix(phi1, phi2, filter).cwiseAbs2();
}

} // namespace povm
