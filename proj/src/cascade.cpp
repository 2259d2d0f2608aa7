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


#include "povm/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "povm/errors.hpp"

namespace povm {
namespace {

using Eigen::Index;

constexpr double kWeightFloor = 1e-300;

Eigen::VectorXd weight_vector(const FrequencyGrid &grid) {
    Eigen::VectorXd q(static_cast<Index>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        q(static_cast<Index>(i)) = grid.weight(i);
    }
    return q;
}

Eigen::VectorXcd as_vector(const SpectralAmplitude &f) {
    Eigen::VectorXcd v(static_cast<Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i) {
        v(static_cast<Index>(i)) = f[i];
    }
    return v;
}

/// Unnormalized conj(c) e^{iwt} scaled by sqrt(eta / 2 pi), and its norm^2.
std::pair<SpectralAmplitude, double>
detection_amplitude(const FrequencyGrid &grid, std::span<const Complex> c,
                    double t, double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError("detector efficiency eta must lie in [0, 1]");
    }
    const double scale = std::sqrt(eta / (2.0 * std::numbers::pi));
    ComplexVector v(grid.size());
    double w = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        v[i] = scale * std::conj(c[i]) * std::polar(1.0, grid.omega(i) * t);
        w += grid.weight(i) * std::norm(v[i]);
    }
    return {SpectralAmplitude(grid, std::move(v)), w};
}

ComplexVector second_port_coefficient(const FilterSpec &filter0,
                                      const FilterSpec &filter1) {
    require_same_grid(filter0.grid(), filter1.grid(), "two-filter cascade");
    const auto r = filter0.reflection();
    const auto t1 = filter1.transmission();
    ComplexVector c(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        c[i] = t1[i] * r[i];
    }
    return c;
}

} // namespace

TwoPhotonAmplitude::TwoPhotonAmplitude(FrequencyGrid grid,
                                       Eigen::MatrixXcd values, bool symmetric)
    : grid_(grid), values_(std::move(values)), symmetric_(symmetric) {
    const auto n = static_cast<Index>(grid_.size());
    if (values_.rows() != n || values_.cols() != n) {
        throw GridMismatchError("two-photon amplitude shape does not match grid");
    }
    if (!values_.allFinite()) {
        throw DomainError("two-photon amplitude contains non-finite values");
    }
    if (symmetric_) {
        const double scale = std::max(values_.cwiseAbs().maxCoeff(), 1e-300);
        const double asym = (values_ - values_.transpose()).cwiseAbs().maxCoeff();
        if (asym > 1e-12 * scale) {
            throw DomainError("two-photon amplitude flagged symmetric is not");
        }
    }
}

TwoPhotonAmplitude
TwoPhotonAmplitude::symmetrized_product(const SpectralAmplitude &f,
                                        const SpectralAmplitude &g) {
    require_same_grid(f.grid(), g.grid(), "symmetrized_product");
    const auto fv = as_vector(f);
    const auto gv = as_vector(g);
    Eigen::MatrixXcd m = fv * gv.transpose() + gv * fv.transpose();
    return TwoPhotonAmplitude(f.grid(), std::move(m), true, Unchecked{});
}

double TwoPhotonAmplitude::norm_squared() const {
    const auto n = values_.rows();
    double acc = 0.0;
    for (Index j = 0; j < n; ++j) {
        double col = 0.0;
        for (Index i = 0; i < n; ++i) {
            col += grid_.weight(static_cast<std::size_t>(i)) * std::norm(values_(i, j));
        }
        acc += grid_.weight(static_cast<std::size_t>(j)) * col;
    }
    return acc;
}

TwoPhotonAmplitude TwoPhotonAmplitude::normalized() const & {
    return TwoPhotonAmplitude(*this).normalized();
}

TwoPhotonAmplitude TwoPhotonAmplitude::normalized() && {
    const double n2 = norm_squared();
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw DomainError("cannot normalize a two-photon amplitude with zero norm");
    }
    values_ /= std::sqrt(n2);
    return std::move(*this);
}

Complex inner_product(const TwoPhotonAmplitude &a, const TwoPhotonAmplitude &b) {
    require_same_grid(a.grid(), b.grid(), "two-photon inner product");
    const auto q = weight_vector(a.grid());
    const Eigen::MatrixXcd weighted = q.asDiagonal() * b.values() * q.asDiagonal();
    return a.values().conjugate().cwiseProduct(weighted).sum();
}

FrequencyGrid two_photon_grid(double omega0, double omega1, double gamma,
                              std::size_t n_points) {
    if (!(gamma > 0.0)) {
        throw DomainError("two-photon grid requires gamma > 0");
    }
    const double lo = std::min(omega0, omega1) - 60.0 * gamma;
    const double hi = std::max(omega0, omega1) + 60.0 * gamma;
    return FrequencyGrid(lo, hi, n_points);
}

SecondPortState second_port_state(const FilterSpec &filter0,
                                  const FilterSpec &filter1, double t,
                                  double eta) {
    const auto c = second_port_coefficient(filter0, filter1);
    auto [amp, w] = detection_amplitude(filter0.grid(), c, t, eta);
    double s = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        s += filter0.grid().weight(i) * std::norm(c[i]);
    }
    if (!(s >= kWeightFloor)) {
        throw UnreachableOutcomeError(
            "outcome unreachable: second filter receives nothing on this grid");
    }
    const double scale = 1.0 / std::sqrt(s);
    ComplexVector v(c.size());
    const auto &grid = filter0.grid();
    for (std::size_t i = 0; i < c.size(); ++i) {
        v[i] = scale * std::conj(c[i]) * std::polar(1.0, grid.omega(i) * t);
    }
    return {w, SpectralAmplitude(grid, std::move(v))};
}

Complex cross_overlap(const FilterSpec &filter0, const FilterSpec &filter1,
                      double t, double t_prime) {
    const auto c1 = second_port_coefficient(filter0, filter1);
    const auto t0 = filter0.transmission();
    const auto &grid = filter0.grid();
    double s0 = 0.0;
    double s1 = 0.0;
    Complex acc{0.0, 0.0};
    const double tau = t - t_prime;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double q = grid.weight(i);
        s0 += q * std::norm(t0[i]);
        s1 += q * std::norm(c1[i]);
        acc += q * std::conj(t0[i]) * c1[i] * std::polar(1.0, grid.omega(i) * tau);
    }
    if (!(s0 >= kWeightFloor) || !(s1 >= kWeightFloor)) {
        throw UnreachableOutcomeError(
            "outcome unreachable: a filter port transmits nothing on this grid");
    }
    return acc / std::sqrt(s0 * s1);
}

TwoPhotonProjector two_photon_projector(const FilterSpec &filter0,
                                        const FilterSpec &filter1, double t,
                                        double t_prime, double eta0,
                                        double eta1) {
    const auto c1 = second_port_coefficient(filter0, filter1);
    const auto &grid = filter0.grid();
    auto [f, w0] = detection_amplitude(grid, filter0.transmission(), t, eta0);
    auto [g, w1] = detection_amplitude(grid, c1, t_prime, eta1);
    auto s = TwoPhotonAmplitude::symmetrized_product(f, g);
    const double n2 = s.norm_squared();
    if (!(n2 >= kWeightFloor)) {
        throw UnreachableOutcomeError(
            "outcome unreachable: two-photon projector has zero weight");
    }
    // |f g + g f|^2 = 2 w w' (1 + |ov|^2) for a unit-norm symmetric wavefunction.
    return {0.5 * n2, std::move(s).normalized(), w0, w1};
}

double joint_detection_probability(const TwoPhotonAmplitude &phi,
                                   const FilterSpec &filter0,
                                   const FilterSpec &filter1, double t,
                                   double t_prime, double eta0, double eta1) {
    require_same_grid(phi.grid(), filter0.grid(), "joint_detection_probability");
    if (!phi.symmetric()) {
        throw DomainError("joint detection requires a symmetric two-photon state");
    }
    if (std::abs(phi.norm_squared() - 1.0) > 1e-8) {
        throw DomainError("joint detection requires a normalized two-photon state");
    }
    const auto proj = two_photon_projector(filter0, filter1, t, t_prime, eta0, eta1);
    return proj.weight * std::norm(inner_product(proj.amplitude, phi));
}

} // namespace povm
