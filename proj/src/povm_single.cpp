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

#include "povm/povm_single.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "povm/errors.hpp"

namespace povm {
namespace {

constexpr double kWeightFloor = 1e-300;
constexpr double kNormalizationTolerance = 1e-10;
constexpr std::size_t kMaxDenseBlock = 4096;

using Eigen::Index;

void require_normalized(const SpectralAmplitude &a, std::string_view what) {
    if (std::abs(a.norm_squared() - 1.0) > kNormalizationTolerance) {
        std::ostringstream msg;
        msg << what << ": amplitude must be normalized (norm^2 = "
            << a.norm_squared() << ")";
        throw DomainError(msg.str());
    }
}

/// Weights and coordinate columns of a rank-1 decomposition.
struct RankOneList {
    Eigen::VectorXd weights;
    Eigen::MatrixXcd columns;
};

RankOneList as_rank_one_list(const PovmElement &e) {
    if (e.is<PureElement>()) {
        const auto &p = e.as<PureElement>();
        RankOneList out{Eigen::VectorXd::Constant(1, p.weight),
                        p.amplitude.coordinates()};
        return out;
    }
    const auto &ens = e.as<EnsembleElement>();
    RankOneList out{Eigen::VectorXd(static_cast<Index>(ens.size())),
                    ens.coordinate_matrix()};
    for (std::size_t j = 0; j < ens.size(); ++j) {
        out.weights(static_cast<Index>(j)) = ens.weights()[j];
    }
    return out;
}

double ensemble_hs_with_diagonal(const RankOneList &list,
                                 const DiagonalElement &diag) {
    double acc = 0.0;
    for (Index j = 0; j < list.columns.cols(); ++j) {
        double inner = 0.0;
        for (Index i = 0; i < list.columns.rows(); ++i) {
            inner += diag.density[static_cast<std::size_t>(i)] *
                     std::norm(list.columns(i, j));
        }
        acc += list.weights(j) * inner;
    }
    return acc;
}

/// Weighted sum_jl a_j b_l |M_jl|^2
double weighted_squared_sum(const Eigen::VectorXd &a, const Eigen::MatrixXcd &m,
                            const Eigen::VectorXd &b) {
    double acc = 0.0;
    for (Index l = 0; l < m.cols(); ++l) {
        double col = 0.0;
        for (Index j = 0; j < m.rows(); ++j) {
            col += a(j) * std::norm(m(j, l));
        }
        acc += col * b(l);
    }
    return acc;
}

Eigen::VectorXd weights_of(const EnsembleElement &ens) {
    Eigen::VectorXd w(static_cast<Index>(ens.size()));
    for (std::size_t j = 0; j < ens.size(); ++j) {
        w(static_cast<Index>(j)) = ens.weights()[j];
    }
    return w;
}

SpectralAmplitude weighted_mode(const FilterSpec &filter,
                                const SpectralAmplitude &phi_k,
                                std::span<const Complex> coeff, double &weight) {
    require_same_grid(filter.grid(), phi_k.grid(), "POVM element");
    require_normalized(phi_k, "POVM element mode");
    const auto &grid = filter.grid();
    ComplexVector v(grid.size());
    weight = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        v[i] = std::conj(coeff[i]) * phi_k[i];
        weight += grid.weight(i) * std::norm(v[i]);
    }
    if (!(weight >= kWeightFloor)) {
        throw UnreachableOutcomeError("outcome unreachable: POVM weight is zero");
    }
    const double scale = 1.0 / std::sqrt(weight);
    for (auto &x : v) {
        x *= scale;
    }
    return SpectralAmplitude(grid, std::move(v)).normalized();
}

/// Returns (s = sum q |C|^2, conj(C) / sqrt(s)).
std::pair<double, SpectralAmplitude> port_envelope(const FilterChain &chain,
                                                   std::size_t port) {
    const auto c = chain_port_coefficient(chain, port);
    const auto &grid = chain.grid();
    double s = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        s += grid.weight(i) * std::norm(c[i]);
    }
    if (!(s >= kWeightFloor)) {
        throw UnreachableOutcomeError(
            "outcome unreachable: port transmits nothing on this grid");
    }
    const double scale = 1.0 / std::sqrt(s);
    ComplexVector env(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        env[i] = std::conj(c[i]) * scale;
    }
    return {s, SpectralAmplitude(grid, std::move(env))};
}

bool uniformly_spaced(std::span<const double> times, double &spacing) {
    if (times.size() < 2) {
        spacing = 0.0;
        return true;
    }
    spacing = (times.back() - times.front()) /
              static_cast<double>(times.size() - 1);
    const double tol = 1e-9 * std::max(std::abs(spacing), 1e-300);
    for (std::size_t j = 0; j < times.size(); ++j) {
        const double expected = times.front() + spacing * static_cast<double>(j);
        if (std::abs(times[j] - expected) > tol) {
            return false;
        }
    }
    return true;
}

} // namespace

// ---------------------------------------------------------------------------
// EnsembleElement

EnsembleElement::EnsembleElement(std::vector<double> weights,
                                 std::vector<SpectralAmplitude> amplitudes)
    : weights_(std::move(weights)), amplitudes_(std::move(amplitudes)) {
    if (weights_.empty() || weights_.size() != amplitudes_.size()) {
        throw DomainError("ensemble needs one weight per (nonzero count of) "
                          "amplitudes");
    }
    for (std::size_t j = 0; j < weights_.size(); ++j) {
        if (!(weights_[j] >= 0.0)) {
            throw DomainError("ensemble weights must be nonnegative");
        }
        require_same_grid(amplitudes_.front().grid(), amplitudes_[j].grid(),
                          "ensemble");
        require_normalized(amplitudes_[j], "ensemble member");
    }
}

EnsembleElement::EnsembleElement(std::vector<double> weights,
                                 SpectralAmplitude envelope,
                                 std::vector<double> times)
    : weights_(std::move(weights)), envelope_(std::move(envelope)),
      times_(std::move(times)) {
    if (weights_.empty() || weights_.size() != times_.size()) {
        throw DomainError("time-sampled ensemble needs one weight per time");
    }
    for (double w : weights_) {
        if (!(w >= 0.0)) {
            throw DomainError("ensemble weights must be nonnegative");
        }
    }
    require_normalized(*envelope_, "time-sampled ensemble envelope");
}

const FrequencyGrid &EnsembleElement::grid() const noexcept {
    return envelope_ ? envelope_->grid() : amplitudes_.front().grid();
}

SpectralAmplitude EnsembleElement::amplitude(std::size_t j) const {
    if (j >= size()) {
        throw IndexError("ensemble member index out of range");
    }
    if (!envelope_) {
        return amplitudes_[j];
    }
    const auto &g = grid();
    ComplexVector v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        v[i] = (*envelope_)[i] * std::polar(1.0, g.omega(i) * times_[j]);
    }
    return SpectralAmplitude(g, std::move(v));
}

Eigen::MatrixXcd EnsembleElement::coordinate_matrix() const {
    const auto &g = grid();
    Eigen::MatrixXcd a(static_cast<Index>(g.size()), static_cast<Index>(size()));
    for (std::size_t j = 0; j < size(); ++j) {
        if (envelope_) {
            for (std::size_t i = 0; i < g.size(); ++i) {
                a(static_cast<Index>(i), static_cast<Index>(j)) =
                    std::sqrt(g.weight(i)) * (*envelope_)[i] *
                    std::polar(1.0, g.omega(i) * times_[j]);
            }
        } else {
            a.col(static_cast<Index>(j)) = amplitudes_[j].coordinates();
        }
    }
    return a;
}

Eigen::MatrixXcd EnsembleElement::gram() const {
    const auto n = static_cast<Index>(size());
    double h = 0.0;
    if (envelope_ && uniformly_spaced(times_, h)) {
        // G_jl = sum_i q_i |env_i|^2 e^{i w_i (t_l - t_j)} depends on l - j.
        const auto &g = grid();
        Eigen::VectorXcd kernel(n);
        for (Index m = 0; m < n; ++m) {
            const double tau = h * static_cast<double>(m);
            Complex acc{0.0, 0.0};
            for (std::size_t i = 0; i < g.size(); ++i) {
                acc += g.weight(i) * std::norm((*envelope_)[i]) *
                       std::polar(1.0, g.omega(i) * tau);
            }
            kernel(m) = acc;
        }
        Eigen::MatrixXcd out(n, n);
        for (Index j = 0; j < n; ++j) {
            for (Index l = 0; l < n; ++l) {
                out(j, l) = l >= j ? kernel(l - j) : std::conj(kernel(j - l));
            }
        }
        return out;
    }
    const auto a = coordinate_matrix();
    return a.adjoint() * a;
}

Eigen::VectorXcd
EnsembleElement::projections(const SpectralAmplitude &phi) const {
    require_same_grid(grid(), phi.grid(), "ensemble projection");
    const auto &g = grid();
    Eigen::VectorXcd out(static_cast<Index>(size()));
    if (envelope_) {
        // conj(env_i) phi_i q_i, then the time phase per member.
        ComplexVector base(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) {
            base[i] = g.weight(i) * std::conj((*envelope_)[i]) * phi[i];
        }
        for (std::size_t j = 0; j < size(); ++j) {
            Complex acc{0.0, 0.0};
            for (std::size_t i = 0; i < g.size(); ++i) {
                acc += base[i] * std::polar(1.0, -g.omega(i) * times_[j]);
            }
            out(static_cast<Index>(j)) = acc;
        }
        return out;
    }
    for (std::size_t j = 0; j < size(); ++j) {
        out(static_cast<Index>(j)) = inner_product(amplitudes_[j], phi);
    }
    return out;
}

// ---------------------------------------------------------------------------
// PovmElement

PovmElement PovmElement::pure(double weight, SpectralAmplitude amplitude) {
    if (!(weight >= 0.0)) {
        throw DomainError("POVM element weight must be nonnegative");
    }
    require_normalized(amplitude, "pure POVM element");
    return PovmElement(PureElement{weight, std::move(amplitude)});
}

PovmElement PovmElement::diagonal(const FrequencyGrid &grid,
                                  std::vector<double> density) {
    if (density.size() != grid.size()) {
        throw GridMismatchError("density sample count does not match grid");
    }
    for (double d : density) {
        if (!(d >= 0.0)) {
            throw DomainError("diagonal POVM density must be nonnegative");
        }
    }
    return PovmElement(DiagonalElement{grid, std::move(density)});
}

PovmElement PovmElement::ensemble(EnsembleElement ensemble) {
    return PovmElement(std::move(ensemble));
}

const FrequencyGrid &PovmElement::grid() const noexcept {
    return std::visit(
        [](const auto &rep) -> const FrequencyGrid & {
            using T = std::decay_t<decltype(rep)>;
            if constexpr (std::is_same_v<T, PureElement>) {
                return rep.amplitude.grid();
            } else if constexpr (std::is_same_v<T, DiagonalElement>) {
                return rep.grid;
            } else {
                return rep.grid();
            }
        },
        rep_);
}

// ---------------------------------------------------------------------------
// ModeBasis

ModeBasis ModeBasis::boxcar_bins(const FrequencyGrid &grid,
                                 std::size_t points_per_bin) {
    if (points_per_bin < 1) {
        throw DomainError("boxcar bins need at least one grid point each");
    }
    ModeBasis basis(Kind::BoxcarBins, grid);
    const std::size_t n = grid.size();
    std::size_t bin = 0;
    for (std::size_t lo = 0; lo < n; lo += points_per_bin, ++bin) {
        const std::size_t hi = std::min(n, lo + points_per_bin);
        const std::size_t m = hi - lo;
        for (std::size_t p = 0; p < m; ++p) {
            ComplexVector v(m);
            for (std::size_t i = lo; i < hi; ++i) {
                const double phase = 2.0 * std::numbers::pi *
                                     static_cast<double>(p * (i - lo) % m) /
                                     static_cast<double>(m);
                v[i - lo] = std::polar(
                    1.0 / std::sqrt(grid.weight(i) * static_cast<double>(m)),
                    phase);
            }
            basis.local_.push_back(std::move(v));
            basis.bin_.push_back(bin);
            basis.support_.emplace_back(lo, hi);
        }
    }
    return basis;
}

ModeBasis ModeBasis::hermite_gauss(const FrequencyGrid &grid, double center,
                                   double width, std::size_t count) {
    if (!(width > 0.0)) {
        throw DomainError("hermite-gauss basis requires width > 0");
    }
    if (count < 1 || count > grid.size()) {
        throw DomainError("hermite-gauss basis size must lie in [1, n_points]");
    }
    ModeBasis basis(Kind::HermiteGauss, grid);
    const std::size_t n = grid.size();
    std::vector<double> prev(n, 0.0);
    std::vector<double> cur(n);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = (grid.omega(i) - center) / (std::numbers::sqrt2 * width);
        cur[i] = std::exp(-0.5 * x[i] * x[i]);
    }
    for (std::size_t k = 0; k < count; ++k) {
        ComplexVector v(cur.begin(), cur.end());
        // Modified Gram-Schmidt, two passes.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &m : basis.local_) {
                Complex c{0.0, 0.0};
                for (std::size_t i = 0; i < n; ++i) {
                    c += grid.weight(i) * std::conj(m[i]) * v[i];
                }
                for (std::size_t i = 0; i < n; ++i) {
                    v[i] -= c * m[i];
                }
            }
        }
        SpectralAmplitude mode(grid, std::move(v));
        if (!(mode.norm_squared() > 1e-24)) {
            throw DomainError("hermite-gauss modes are not resolved by the grid");
        }
        const auto unit = mode.normalized();
        basis.local_.emplace_back(unit.values().begin(), unit.values().end());
        basis.bin_.push_back(k);
        basis.support_.emplace_back(0, n);

        // Hermite-function recurrence for the next order.
        std::vector<double> next(n);
        const double kk = static_cast<double>(k);
        for (std::size_t i = 0; i < n; ++i) {
            next[i] = std::sqrt(2.0 / (kk + 1.0)) * x[i] * cur[i] -
                      std::sqrt(kk / (kk + 1.0)) * prev[i];
        }
        prev = std::move(cur);
        cur = std::move(next);
    }
    return basis;
}

SpectralAmplitude ModeBasis::mode(std::size_t k) const {
    const auto [lo, hi] = support(k);
    ComplexVector v(grid_.size());
    std::copy(local_[k].begin(), local_[k].end(), v.begin() + static_cast<std::ptrdiff_t>(lo));
    (void)hi;
    return SpectralAmplitude(grid_, std::move(v));
}

ModeBasis ModeBasis::without_bin(std::size_t bin) const {
    ModeBasis out(kind_, grid_);
    for (std::size_t k = 0; k < local_.size(); ++k) {
        if (bin_[k] != bin) {
            out.local_.push_back(local_[k]);
            out.bin_.push_back(bin_[k]);
            out.support_.push_back(support_[k]);
        }
    }
    return out;
}

double ModeBasis::orthonormality_residual() const {
    double worst = 0.0;
    for (std::size_t a = 0; a < local_.size(); ++a) {
        for (std::size_t b = a; b < local_.size(); ++b) {
            const std::size_t lo = std::max(support_[a].first, support_[b].first);
            const std::size_t hi = std::min(support_[a].second, support_[b].second);
            if (hi <= lo) {
                continue;
            }
            Complex ip{0.0, 0.0};
            for (std::size_t i = lo; i < hi; ++i) {
                ip += grid_.weight(i) * std::conj(local_[a][i - support_[a].first]) *
                      local_[b][i - support_[b].first];
            }
            const double target = a == b ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(ip - target));
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// Ideal spectral measurement

PovmElement ideal_element(const FilterSpec &filter,
                          const SpectralAmplitude &phi_k) {
    double w = 0.0;
    auto amp = weighted_mode(filter, phi_k, filter.transmission(), w);
    return PovmElement::pure(w, std::move(amp));
}

PovmElement reflected_element(const FilterSpec &filter,
                              const SpectralAmplitude &phi_k) {
    double u = 0.0;
    auto amp = weighted_mode(filter, phi_k, filter.reflection(), u);
    return PovmElement::pure(u, std::move(amp));
}

PovmElement null_element(const FilterSpec &filter) {
    const auto r = filter.reflection();
    std::vector<double> density(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        density[i] = std::norm(r[i]);
    }
    return PovmElement::diagonal(filter.grid(), std::move(density));
}

double integrated_density(const DiagonalElement &element) {
    double acc = 0.0;
    for (std::size_t i = 0; i < element.density.size(); ++i) {
        acc += element.grid.weight(i) * element.density[i];
    }
    return acc;
}

CompletenessResidual completeness_residual(const ModeBasis &basis,
                                           const FilterSpec &filter) {
    require_same_grid(basis.grid(), filter.grid(), "completeness_residual");
    const auto &grid = filter.grid();
    const std::size_t n = grid.size();
    if (basis.size() > n) {
        throw DomainError("mode basis has more modes than grid points and "
                          "cannot be orthonormal");
    }
    const auto t = filter.transmission();
    const auto r = filter.reflection();

    // Merge overlapping supports into dense blocks.
    std::map<std::size_t, std::size_t> intervals;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        auto [lo, hi] = basis.support(k);
        auto it = intervals.upper_bound(lo);
        if (it != intervals.begin()) {
            auto prev = std::prev(it);
            if (prev->second > lo) {
                it = prev;
            }
        }
        while (it != intervals.end() && it->first < hi) {
            lo = std::min(lo, it->first);
            hi = std::max(hi, it->second);
            it = intervals.erase(it);
        }
        intervals.emplace(lo, hi);
    }

    std::vector<double> diag_sum(n, 0.0);
    double off2 = 0.0;
    for (const auto &[lo, hi] : intervals) {
        const std::size_t len = hi - lo;
        if (len > kMaxDenseBlock) {
            throw DomainError("completeness check block exceeds 4096 points");
        }
        Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(static_cast<Index>(len),
                                                        static_cast<Index>(len));
        Eigen::VectorXcd x(static_cast<Index>(len));
        for (std::size_t k = 0; k < basis.size(); ++k) {
            const auto [mlo, mhi] = basis.support(k);
            if (mlo < lo || mhi > hi) {
                continue;
            }
            const auto phi = basis.local_values(k);
            x.setZero();
            for (std::size_t i = mlo; i < mhi; ++i) {
                x(static_cast<Index>(i - lo)) =
                    std::sqrt(grid.weight(i)) * std::conj(t[i]) * phi[i - mlo];
            }
            block.selfadjointView<Eigen::Lower>().rankUpdate(x);
        }
        Eigen::MatrixXcd full = block.selfadjointView<Eigen::Lower>();
        for (std::size_t a = 0; a < len; ++a) {
            diag_sum[lo + a] = full(static_cast<Index>(a), static_cast<Index>(a)).real();
            for (std::size_t b = 0; b < len; ++b) {
                if (a != b) {
                    off2 += std::norm(full(static_cast<Index>(a), static_cast<Index>(b)));
                }
            }
        }
    }

    CompletenessResidual out;
    for (std::size_t i = 0; i < n; ++i) {
        out.diagonal =
            std::max(out.diagonal, std::abs(diag_sum[i] + std::norm(r[i]) - 1.0));
    }
    out.off_diagonal = std::sqrt(off2);
    return out;
}

// ---------------------------------------------------------------------------
// Time-resolved detection

TimeState time_state(const FilterChain &chain, std::size_t port, double t,
                     double eta) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError("detector efficiency eta must lie in [0, 1]");
    }
    auto [s, env] = port_envelope(chain, port);
    const auto &grid = chain.grid();
    ComplexVector v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        v[i] = env[i] * std::polar(1.0, grid.omega(i) * t);
    }
    return {eta * s / (2.0 * std::numbers::pi),
            SpectralAmplitude(grid, std::move(v))};
}

Complex overlap_time(const FilterChain &chain, std::size_t port, double t,
                     double t_prime) {
    const auto c = chain_port_coefficient(chain, port);
    const auto &grid = chain.grid();
    const double tau = t_prime - t;
    double s = 0.0;
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double d = grid.weight(i) * std::norm(c[i]);
        s += d;
        acc += d * std::polar(1.0, grid.omega(i) * tau);
    }
    if (!(s >= kWeightFloor)) {
        throw UnreachableOutcomeError(
            "outcome unreachable: port transmits nothing on this grid");
    }
    return acc / s;
}

Complex closed_form_overlap(double gamma, double omega0, double dt) {
    return std::exp(-gamma * std::abs(dt)) * std::polar(1.0, omega0 * dt);
}

PovmElement window_element(const FilterChain &chain, std::size_t port,
                           const TimeWindow &window) {
    auto [s, env] = port_envelope(chain, port);
    const double w = window.eta() * s / (2.0 * std::numbers::pi);
    std::vector<double> weights(window.n_time_samples(),
                                w * window.sample_spacing());
    return PovmElement::ensemble(EnsembleElement(
        std::move(weights), std::move(env), window.sample_times()));
}

// ---------------------------------------------------------------------------
// Traces and purity

double trace(const PovmElement &element) {
    if (element.is<PureElement>()) {
        return element.as<PureElement>().weight;
    }
    if (element.is<DiagonalElement>()) {
        const auto &d = element.as<DiagonalElement>().density;
        double acc = 0.0;
        for (double x : d) {
            acc += x;
        }
        return acc;
    }
    double acc = 0.0;
    for (double w : element.as<EnsembleElement>().weights()) {
        acc += w;
    }
    return acc;
}

double hs_product(const PovmElement &e1, const PovmElement &e2) {
    require_same_grid(e1.grid(), e2.grid(), "hs_product");
    const bool d1 = e1.is<DiagonalElement>();
    const bool d2 = e2.is<DiagonalElement>();
    if (d1 && d2) {
        const auto &a = e1.as<DiagonalElement>().density;
        const auto &b = e2.as<DiagonalElement>().density;
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            acc += a[i] * b[i];
        }
        return acc;
    }
    if (d1 || d2) {
        const auto &diag = d1 ? e1.as<DiagonalElement>() : e2.as<DiagonalElement>();
        return ensemble_hs_with_diagonal(as_rank_one_list(d1 ? e2 : e1), diag);
    }
    if (&e1 == &e2 && e1.is<EnsembleElement>()) {
        const auto &ens = e1.as<EnsembleElement>();
        const auto w = weights_of(ens);
        return weighted_squared_sum(w, ens.gram(), w);
    }
    const auto a = as_rank_one_list(e1);
    const auto b = as_rank_one_list(e2);
    const Eigen::MatrixXcd cross = a.columns.adjoint() * b.columns;
    return weighted_squared_sum(a.weights, cross, b.weights);
}

double purity(const PovmElement &element) {
    const double tr = trace(element);
    if (!(tr > 0.0)) {
        throw DomainError("purity of a zero-trace POVM element");
    }
    if (element.is<PureElement>()) {
        return 1.0;
    }
    return hs_product(element, element) / (tr * tr);
}

double d_eff(const PovmElement &element) { return 1.0 / purity(element); }

double max_eigenvalue(const PovmElement &element) {
    if (element.is<PureElement>()) {
        return element.as<PureElement>().weight;
    }
    if (element.is<DiagonalElement>()) {
        const auto &d = element.as<DiagonalElement>().density;
        return *std::max_element(d.begin(), d.end());
    }
    // Nonzero spectrum of sum_j w_j |psi_j><psi_j| equals that of
    // D^{1/2} G D^{1/2}.
    const auto &ens = element.as<EnsembleElement>();
    const Eigen::VectorXd s = weights_of(ens).cwiseSqrt();
    const Eigen::MatrixXcd m = s.asDiagonal() * ens.gram() * s.asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

double closed_form_purity(double x) {
    x = std::abs(x);
    if (x < 1e-4) {
        // Series: 1 - 2x/3 + x^2/3 - 2x^3/15
        return 1.0 - 2.0 * x / 3.0 + x * x / 3.0 - 2.0 * x * x * x / 15.0;
    }
    return (std::expm1(-2.0 * x) + 2.0 * x) / (2.0 * x * x);
}

double detection_probability(const SpectralAmplitude &state,
                             const PovmElement &element) {
    require_same_grid(state.grid(), element.grid(), "detection_probability");
    if (element.is<PureElement>()) {
        const auto &p = element.as<PureElement>();
        return p.weight * std::norm(inner_product(p.amplitude, state));
    }
    if (element.is<DiagonalElement>()) {
        const auto &d = element.as<DiagonalElement>();
        double acc = 0.0;
        for (std::size_t i = 0; i < d.density.size(); ++i) {
            acc += d.grid.weight(i) * d.density[i] * std::norm(state[i]);
        }
        return acc;
    }
    const auto &ens = element.as<EnsembleElement>();
    const auto proj = ens.projections(state);
    double acc = 0.0;
    for (std::size_t j = 0; j < ens.size(); ++j) {
        acc += ens.weights()[j] * std::norm(proj(static_cast<Index>(j)));
    }
    return acc;
}

double detection_probability(const DensityMatrix &rho,
                             const PovmElement &element) {
    require_same_grid(rho.grid, element.grid(), "detection_probability");
    if (element.is<DiagonalElement>()) {
        const auto &d = element.as<DiagonalElement>().density;
        double acc = 0.0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            acc += d[i] * rho.matrix(static_cast<Index>(i), static_cast<Index>(i)).real();
        }
        return acc;
    }
    const auto list = as_rank_one_list(element);
    const Eigen::MatrixXcd rho_a = rho.matrix * list.columns;
    double acc = 0.0;
    for (Index j = 0; j < list.columns.cols(); ++j) {
        acc += list.weights(j) * list.columns.col(j).dot(rho_a.col(j)).real();
    }
    return acc;
}

std::vector<double> frequency_diagonal(const PovmElement &element) {
    if (element.is<DiagonalElement>()) {
        return element.as<DiagonalElement>().density;
    }
    const auto &grid = element.grid();
    std::vector<double> out(grid.size(), 0.0);
    if (element.is<PureElement>()) {
        const auto &p = element.as<PureElement>();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            out[i] = p.weight * grid.weight(i) * std::norm(p.amplitude[i]);
        }
        return out;
    }
    const auto &ens = element.as<EnsembleElement>();
    if (ens.time_sampled()) {
        // Every member has |psi_j(w)| = |envelope(w)|.
        double total = 0.0;
        for (double w : ens.weights()) {
            total += w;
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
            out[i] = total * grid.weight(i) * std::norm(ens.envelope()[i]);
        }
        return out;
    }
    for (std::size_t j = 0; j < ens.size(); ++j) {
        const auto a = ens.amplitude(j);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            out[i] += ens.weights()[j] * grid.weight(i) * std::norm(a[i]);
        }
    }
    return out;
}

} // namespace povm
