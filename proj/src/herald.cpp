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


#include "povm/herald.hpp"

#include <cmath>

#include "povm/errors.hpp"

namespace povm {
namespace {

using Eigen::Index;

constexpr double kProbabilityFloor = 1e-300;

Eigen::VectorXd sqrt_weights(const FrequencyGrid &grid) {
    Eigen::VectorXd s(static_cast<Index>(grid.size()));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        s(static_cast<Index>(i)) = std::sqrt(grid.weight(i));
    }
    return s;
}

double weighted_norm2(const FrequencyGrid &a, const FrequencyGrid &b,
                      const Eigen::MatrixXcd &values) {
    const Eigen::VectorXd qa = sqrt_weights(a).cwiseAbs2();
    const Eigen::VectorXd qb = sqrt_weights(b).cwiseAbs2();
    return (qa.transpose() * values.cwiseAbs2() * qb).value();
}

HeraldedState finish(const FrequencyGrid &grid, Eigen::MatrixXcd rho) {
    const double p = rho.trace().real();
    if (!(p >= kProbabilityFloor)) {
        throw UnreachableOutcomeError(
            "heralding probability is zero for this measurement");
    }
    rho /= p;
    Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
    return {DensityMatrix{grid, std::move(herm)}, p};
}

} // namespace

JointAmplitude::JointAmplitude(FrequencyGrid herald_grid,
                               FrequencyGrid signal_grid,
                               Eigen::MatrixXcd values)
    : herald_grid_(herald_grid), signal_grid_(signal_grid),
      values_(std::move(values)) {
    if (values_.rows() != static_cast<Index>(herald_grid_.size()) ||
        values_.cols() != static_cast<Index>(signal_grid_.size())) {
        throw GridMismatchError("joint amplitude shape does not match its grids");
    }
    const double n2 = weighted_norm2(herald_grid_, signal_grid_, values_);
    if (!(std::abs(n2 - 1.0) <= 1e-10)) {
        throw DomainError("joint amplitude must be normalized to 1 within 1e-10");
    }
}

JointAmplitude JointAmplitude::normalized(FrequencyGrid herald_grid,
                                          FrequencyGrid signal_grid,
                                          Eigen::MatrixXcd values) {
    if (values.rows() != static_cast<Index>(herald_grid.size()) ||
        values.cols() != static_cast<Index>(signal_grid.size())) {
        throw GridMismatchError("joint amplitude shape does not match its grids");
    }
    const double n2 = weighted_norm2(herald_grid, signal_grid, values);
    if (!(n2 > 0.0) || !std::isfinite(n2)) {
        throw DomainError("joint amplitude has zero norm on its grids");
    }
    values /= std::sqrt(n2);
    return JointAmplitude(herald_grid, signal_grid, std::move(values));
}

Eigen::MatrixXcd JointAmplitude::coordinates() const {
    return sqrt_weights(herald_grid_).asDiagonal() * values_ *
           sqrt_weights(signal_grid_).asDiagonal();
}

double JointAmplitude::unfiltered_purity() const {
    const auto x = coordinates();
    const Eigen::MatrixXcd rho = x.transpose() * x.conjugate();
    const double tr = rho.trace().real();
    return rho.squaredNorm() / (tr * tr);
}

JointAmplitude correlated_gaussian_jsa(const FrequencyGrid &herald_grid,
                                       const FrequencyGrid &signal_grid,
                                       double pump_center, double sigma_plus,
                                       double sigma_minus) {
    if (!(sigma_plus > 0.0) || !(sigma_minus > 0.0)) {
        throw DomainError("correlated gaussian JSA requires positive widths");
    }
    const auto n = static_cast<Index>(herald_grid.size());
    const auto m = static_cast<Index>(signal_grid.size());
    Eigen::MatrixXcd values(n, m);
    const double ap = 1.0 / (4.0 * sigma_plus * sigma_plus);
    const double am = 1.0 / (4.0 * sigma_minus * sigma_minus);
    for (Index i = 0; i < n; ++i) {
        const double w = herald_grid.omega(static_cast<std::size_t>(i));
        for (Index j = 0; j < m; ++j) {
            const double wp = signal_grid.omega(static_cast<std::size_t>(j));
            const double s = w + wp - 2.0 * pump_center;
            const double d = w - wp;
            values(i, j) = std::exp(-ap * s * s - am * d * d);
        }
    }
    return JointAmplitude::normalized(herald_grid, signal_grid, std::move(values));
}

JointAmplitude separable_gaussian_jsa(const FrequencyGrid &herald_grid,
                                      const FrequencyGrid &signal_grid,
                                      double herald_center, double herald_width,
                                      double signal_center, double signal_width) {
    const auto a = gaussian_amplitude(herald_grid, herald_center, herald_width);
    const auto b = gaussian_amplitude(signal_grid, signal_center, signal_width);
    Eigen::MatrixXcd values(static_cast<Index>(a.size()),
                            static_cast<Index>(b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            values(static_cast<Index>(i), static_cast<Index>(j)) = a[i] * b[j];
        }
    }
    return JointAmplitude::normalized(herald_grid, signal_grid, std::move(values));
}

double gaussian_schmidt_purity(double sigma_plus, double sigma_minus) {
    if (!(sigma_plus > 0.0) || !(sigma_minus > 0.0)) {
        throw DomainError("schmidt purity requires positive widths");
    }
    return 2.0 * sigma_plus * sigma_minus /
           (sigma_plus * sigma_plus + sigma_minus * sigma_minus);
}

HeraldOutcome herald_outcome(const JointAmplitude &phi, const FilterSpec &filter,
                             const SpectralAmplitude &phi_k) {
    require_same_grid(phi.herald_grid(), filter.grid(), "herald_outcome");
    require_same_grid(phi.herald_grid(), phi_k.grid(), "herald_outcome");
    const auto &hg = phi.herald_grid();
    const auto &sg = phi.signal_grid();
    const auto t = filter.transmission();
    Eigen::RowVectorXcd a(static_cast<Index>(hg.size()));
    for (std::size_t i = 0; i < hg.size(); ++i) {
        a(static_cast<Index>(i)) = hg.weight(i) * t[i] * std::conj(phi_k[i]);
    }
    const Eigen::RowVectorXcd c = a * phi.values();
    double p = 0.0;
    for (std::size_t j = 0; j < sg.size(); ++j) {
        p += sg.weight(j) * std::norm(c(static_cast<Index>(j)));
    }
    if (!(p >= kProbabilityFloor)) {
        throw UnreachableOutcomeError("herald outcome unreachable: probability 0");
    }
    const double scale = 1.0 / std::sqrt(p);
    ComplexVector v(sg.size());
    for (std::size_t j = 0; j < sg.size(); ++j) {
        v[j] = scale * c(static_cast<Index>(j));
    }
    return {p, SpectralAmplitude(sg, std::move(v)).normalized()};
}

HeraldedState herald_with_element(const JointAmplitude &phi,
                                  const PovmElement &element) {
    require_same_grid(phi.herald_grid(), element.grid(), "herald_with_element");
    const auto x = phi.coordinates();
    if (element.is<DiagonalElement>()) {
        const auto &d = element.as<DiagonalElement>().density;
        Eigen::VectorXd dv(static_cast<Index>(d.size()));
        for (std::size_t i = 0; i < d.size(); ++i) {
            dv(static_cast<Index>(i)) = d[i];
        }
        Eigen::MatrixXcd rho = x.transpose() * dv.asDiagonal() * x.conjugate();
        return finish(phi.signal_grid(), std::move(rho));
    }
    Eigen::MatrixXcd a;
    Eigen::VectorXd lambda;
    if (element.is<PureElement>()) {
        const auto &p = element.as<PureElement>();
        a = p.amplitude.coordinates();
        lambda = Eigen::VectorXd::Constant(1, p.weight);
    } else {
        const auto &ens = element.as<EnsembleElement>();
        a = ens.coordinate_matrix();
        lambda.resize(static_cast<Index>(ens.size()));
        for (std::size_t j = 0; j < ens.size(); ++j) {
            lambda(static_cast<Index>(j)) = ens.weights()[j];
        }
    }
    // Row j of v is the unnormalized conditional state for member j.
    const Eigen::MatrixXcd v = a.adjoint() * x;
    Eigen::MatrixXcd rho = v.transpose() * lambda.asDiagonal() * v.conjugate();
    return finish(phi.signal_grid(), std::move(rho));
}

HeraldedState herald_mixed(const JointAmplitude &phi, const FilterSpec &filter,
                           double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError("detector efficiency eta must lie in [0, 1]");
    }
    require_same_grid(phi.herald_grid(), filter.grid(), "herald_mixed");
    const auto t = filter.transmission();
    std::vector<double> density(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        density[i] = eta * std::norm(t[i]);
    }
    return herald_with_element(
        phi, PovmElement::diagonal(filter.grid(), std::move(density)));
}

HeraldedState herald_windowed(const JointAmplitude &phi,
                              const FilterSpec &filter,
                              const TimeWindow &window) {
    require_same_grid(phi.herald_grid(), filter.grid(), "herald_windowed");
    const FilterChain chain({filter});
    return herald_with_element(phi, window_element(chain, 0, window));
}

StateDiagnostics diagnose(const DensityMatrix &rho) {
    StateDiagnostics out{};
    out.hermiticity = (rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff();
    out.trace_error = std::abs(rho.trace() - 1.0);
    const Eigen::MatrixXcd herm = 0.5 * (rho.matrix + rho.matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        herm, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = solver.eigenvalues().minCoeff();
    out.purity = rho.purity();
    return out;
}

std::vector<TradeoffPoint> tradeoff_curve(const JointAmplitude &phi,
                                          const std::vector<FilterSpec> &filters,
                                          const std::vector<WindowChoice> &windows) {
    if (filters.empty() || windows.empty()) {
        throw DomainError("tradeoff curve requires nonempty filter and window sweeps");
    }
    std::vector<TradeoffPoint> out;
    out.reserve(filters.size() * windows.size());
    for (const auto &filter : filters) {
        for (const auto &wc : windows) {
            HeraldedState state = [&] {
                if (std::isinf(wc.dt)) {
                    return herald_mixed(phi, filter, wc.eta);
                }
                const std::size_t n = wc.n_time_samples != 0
                                          ? wc.n_time_samples
                                          : default_time_samples(filter.gamma(), wc.dt);
                return herald_windowed(phi, filter, TimeWindow(wc.t0, wc.dt, wc.eta, n));
            }();
            out.push_back({filter.gamma(), wc.dt, state.density.purity(),
                           state.probability});
        }
    }
    return out;
}

} // namespace povm
