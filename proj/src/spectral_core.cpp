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

#include "povm/spectral_core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "povm/errors.hpp"

namespace povm {
namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343818684759;

void require_increasing(std::span<const double> times) {
    for (std::size_t j = 1; j < times.size(); ++j) {
        if (!(times[j] > times[j - 1])) {
            throw DomainError("sample times must be strictly increasing");
        }
    }
}

} // namespace

FrequencyGrid::FrequencyGrid(double omega_min, double omega_max,
                             std::size_t n_points)
    : omega_min_(omega_min), omega_max_(omega_max), n_points_(n_points),
      spacing_(0.0) {
    if (!(omega_min > 0.0) || !std::isfinite(omega_min)) {
        throw DomainError("frequency grid requires omega_min > 0");
    }
    if (!(omega_max > omega_min) || !std::isfinite(omega_max)) {
        throw DomainError("frequency grid requires omega_max > omega_min");
    }
    if (n_points < 2) {
        throw DomainError("frequency grid requires n_points >= 2");
    }
    spacing_ = (omega_max - omega_min) / static_cast<double>(n_points - 1);
}

std::vector<double> FrequencyGrid::points() const {
    std::vector<double> out(n_points_);
    for (std::size_t i = 0; i < n_points_; ++i) {
        out[i] = omega(i);
    }
    return out;
}

std::vector<double> FrequencyGrid::quad_weights() const {
    std::vector<double> out(n_points_);
    for (std::size_t i = 0; i < n_points_; ++i) {
        out[i] = weight(i);
    }
    return out;
}

std::size_t FrequencyGrid::nearest_index(double omega) const noexcept {
    const double x = std::round((omega - omega_min_) / spacing_);
    if (!(x > 0.0)) {
        return 0;
    }
    return std::min(static_cast<std::size_t>(x), n_points_ - 1);
}

FrequencyGrid make_grid(double omega_min, double omega_max,
                        std::size_t n_points) {
    return FrequencyGrid(omega_min, omega_max, n_points);
}

void require_same_grid(const FrequencyGrid &a, const FrequencyGrid &b,
                       std::string_view what) {
    if (!(a == b)) {
        std::ostringstream msg;
        msg << what << ": frequency grids differ ([" << a.omega_min() << ", "
            << a.omega_max() << "]x" << a.size() << " vs [" << b.omega_min()
            << ", " << b.omega_max() << "]x" << b.size() << ")";
        throw GridMismatchError(msg.str());
    }
}

SpectralAmplitude::SpectralAmplitude(FrequencyGrid grid, ComplexVector values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) {
        throw GridMismatchError("amplitude sample count does not match grid");
    }
}

SpectralAmplitude SpectralAmplitude::zeros(const FrequencyGrid &grid) {
    return SpectralAmplitude(grid, ComplexVector(grid.size()));
}

double SpectralAmplitude::norm_squared() const noexcept {
    double acc = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        acc += grid_.weight(i) * std::norm(values_[i]);
    }
    return acc;
}

SpectralAmplitude SpectralAmplitude::normalized() const {
    const double n2 = norm_squared();
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw DomainError("cannot normalize an amplitude with zero norm");
    }
    if (std::abs(n2 - 1.0) <= 1e-14) {
        return *this;
    }
    const double scale = 1.0 / std::sqrt(n2);
    ComplexVector out(values_);
    for (auto &v : out) {
        v *= scale;
    }
    return SpectralAmplitude(grid_, std::move(out));
}

Eigen::VectorXcd SpectralAmplitude::coordinates() const {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(values_.size()));
    for (std::size_t i = 0; i < values_.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = std::sqrt(grid_.weight(i)) * values_[i];
    }
    return v;
}

SpectralAmplitude normalize(const SpectralAmplitude &f) {
    return f.normalized();
}

Complex inner_product(const SpectralAmplitude &f, const SpectralAmplitude &g) {
    require_same_grid(f.grid(), g.grid(), "inner_product");
    const auto &grid = f.grid();
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        acc += grid.weight(i) * std::conj(f[i]) * g[i];
    }
    return acc;
}

SpectralAmplitude gaussian_amplitude(const FrequencyGrid &grid, double center,
                                     double sigma) {
    if (!(sigma > 0.0)) {
        throw DomainError("gaussian amplitude requires sigma > 0");
    }
    const double inv4s2 = 1.0 / (4.0 * sigma * sigma);
    return SpectralAmplitude::from_function(grid, [&](double w) {
               const double d = w - center;
               return std::exp(-d * d * inv4s2);
           }).normalized();
}

SpectralAmplitude exponential_pulse(const FrequencyGrid &grid, double center,
                                    double kappa) {
    if (!(kappa > 0.0)) {
        throw DomainError("exponential pulse requires kappa > 0");
    }
    const double pref = kInvSqrt2Pi * std::sqrt(kappa);
    return SpectralAmplitude::from_function(grid, [&](double w) {
               return pref / Complex(0.5 * kappa, -(w - center));
           }).normalized();
}

SpectralAmplitude boxcar_amplitude(const FrequencyGrid &grid, double lo,
                                   double hi) {
    if (!(hi > lo)) {
        throw DomainError("boxcar amplitude requires hi > lo");
    }
    return SpectralAmplitude::from_function(grid, [&](double w) {
               return (w >= lo && w <= hi) ? 1.0 : 0.0;
           }).normalized();
}

double TemporalAmplitude::energy() const {
    double acc = 0.0;
    for (std::size_t j = 1; j < times.size(); ++j) {
        acc += 0.5 * (times[j] - times[j - 1]) *
               (std::norm(values[j]) + std::norm(values[j - 1]));
    }
    return acc;
}

std::vector<double> linspace_times(double t_min, double t_max, std::size_t n) {
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {t_min};
    }
    std::vector<double> out(n);
    const double h = (t_max - t_min) / static_cast<double>(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = t_min + h * static_cast<double>(j);
    }
    out.back() = t_max;
    return out;
}

TemporalAmplitude to_time_domain(const SpectralAmplitude &f,
                                 std::span<const double> times) {
    require_increasing(times);
    const auto &grid = f.grid();
    TemporalAmplitude out{std::vector<double>(times.begin(), times.end()),
                          ComplexVector(times.size())};
    for (std::size_t j = 0; j < times.size(); ++j) {
        const double t = times[j];
        Complex acc{0.0, 0.0};
        for (std::size_t i = 0; i < grid.size(); ++i) {
            acc += grid.weight(i) * f[i] * std::polar(1.0, -grid.omega(i) * t);
        }
        out.values[j] = kInvSqrt2Pi * acc;
    }
    return out;
}

TemporalAmplitude time_lens(const SpectralAmplitude &f, double alpha,
                            double beta, std::span<const double> times) {
    if (alpha == 0.0) {
        throw DomainError("time lens requires a nonzero dispersion alpha");
    }
    const auto &grid = f.grid();
    const double mid = grid.midpoint();
    ComplexVector chirped(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double nu = grid.omega(i) - mid;
        chirped[i] = f[i] * std::polar(1.0, -0.5 * alpha * nu * nu);
    }
    auto out = to_time_domain(SpectralAmplitude(grid, std::move(chirped)), times);
    for (std::size_t j = 0; j < out.times.size(); ++j) {
        const double t = out.times[j];
        out.values[j] *= std::polar(1.0, -0.5 * beta * t * t);
    }
    return out;
}

TimeWindow::TimeWindow(double t0, double dt, double eta,
                       std::size_t n_time_samples)
    : t0_(t0), dt_(dt), eta_(eta), n_(n_time_samples) {
    if (!std::isfinite(t0)) {
        throw DomainError("time window start must be finite");
    }
    if (!(dt > 0.0) || !std::isfinite(dt)) {
        throw DomainError("time window requires dt > 0");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError("detector efficiency eta must lie in [0, 1]");
    }
    if (n_time_samples < 1) {
        throw DomainError("time window requires at least one time sample");
    }
}

TimeWindow TimeWindow::with_default_sampling(double t0, double dt, double eta,
                                             double gamma) {
    return TimeWindow(t0, dt, eta, default_time_samples(gamma, dt));
}

std::vector<double> TimeWindow::sample_times() const {
    std::vector<double> out(n_);
    const double h = sample_spacing();
    for (std::size_t j = 0; j < n_; ++j) {
        out[j] = t0_ + (static_cast<double>(j) + 0.5) * h;
    }
    return out;
}

std::size_t default_time_samples(double gamma, double dt) {
    const double n = std::ceil(20.0 * std::abs(gamma) * std::abs(dt));
    if (!std::isfinite(n)) {
        throw DomainError("window sampling requires finite gamma and dt");
    }
    return std::max<std::size_t>(32, static_cast<std::size_t>(n));
}

double DensityMatrix::purity() const {
    const double tr = trace();
    if (!(tr > 0.0)) {
        throw DomainError("purity of a zero-trace density matrix");
    }
    // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
    return matrix.squaredNorm() / (tr * tr);
}

} // namespace povm
