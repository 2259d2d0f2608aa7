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


#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "povm/errors.hpp"
#include "povm/filters.hpp"
#include "povm/herald.hpp"
#include "povm/povm_single.hpp"

using namespace povm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kPump = 1e6;
constexpr double kSigmaPlus = 1.0;
constexpr double kSigmaMinus = 10.0;

FrequencyGrid around_pump(std::size_t n) { return FrequencyGrid(kPump - 30.0, kPump + 30.0, n); }

JointAmplitude correlated(std::size_t n_herald, std::size_t n_signal = 301) {
    return correlated_gaussian_jsa(around_pump(n_herald), around_pump(n_signal), kPump, kSigmaPlus,
                                   kSigmaMinus);
}

JointAmplitude separable(std::size_t n_herald, std::size_t n_signal = 301) {
    return separable_gaussian_jsa(around_pump(n_herald), around_pump(n_signal), kPump, 3.0,
                                  kPump + 2.0, 1.5);
}

double mixed_purity(const JointAmplitude &phi, double gamma) {
    return herald_mixed(phi, lorentzian_filter(phi.herald_grid(), kPump, gamma)).density.purity();
}

} // namespace

TEST_CASE("schmidt purity of the joint amplitudes", "[herald]") {
    CHECK_THAT(gaussian_schmidt_purity(kSigmaPlus, kSigmaMinus), WithinAbs(20.0 / 101.0, 1e-15));
    CHECK_THAT(correlated(301).unfiltered_purity(), WithinAbs(0.198, 1e-3));
    CHECK_THAT(separable(301).unfiltered_purity(), WithinAbs(1.0, 1e-6));
    CHECK_THAT(correlated_gaussian_jsa(around_pump(301), around_pump(301), kPump, 4.0, 4.0)
                   .unfiltered_purity(),
               WithinAbs(1.0, 1e-6));
}

TEST_CASE("a broad herald filter leaves the signal mixed", "[herald]") {
    const auto phi = correlated(301);
    const auto state = herald_mixed(phi, lorentzian_filter(phi.herald_grid(), kPump, 3000.0));
    CHECK_THAT(state.density.purity(), WithinAbs(0.198, 5e-3));
    CHECK(state.probability > 0.99);
}

TEST_CASE("a narrow herald filter purifies at the cost of efficiency", "[herald]") {
    const auto phi = correlated(6001);
    const auto broad = herald_mixed(phi, lorentzian_filter(phi.herald_grid(), kPump, 3000.0));
    const auto narrow = herald_mixed(phi, lorentzian_filter(phi.herald_grid(), kPump, kSigmaPlus / 50.0));
    CHECK(narrow.density.purity() >= 0.98);
    CHECK(broad.probability / narrow.probability >= 10.0);
}

TEST_CASE("narrow herald filter reaches 0.99 purity at gamma = sigma_plus / 50",
          "[herald][!mayfail]") {
    const auto phi = correlated(6001);
    const auto narrow = herald_mixed(phi, lorentzian_filter(phi.herald_grid(), kPump, kSigmaPlus / 50.0));
    CHECK(narrow.density.purity() >= 0.99);
}

TEST_CASE("purity increases as the herald filter narrows", "[herald]") {
    const auto phi = correlated(1201);
    std::vector<double> purities;
    for (double gamma : {2.0, 1.0, 0.5, 0.2}) {
        purities.push_back(mixed_purity(phi, gamma));
    }
    for (std::size_t k = 1; k < purities.size(); ++k) {
        REQUIRE(purities[k] > purities[k - 1]);
    }
    CHECK(purities.front() > phi.unfiltered_purity());
}

TEST_CASE("mode-resolved heralding sums to the unresolved probability", "[herald]") {
    const auto phi = correlated(121, 81);
    const auto f = lorentzian_filter(phi.herald_grid(), kPump + 1.0, 2.0);
    const auto mixed = herald_mixed(phi, f);
    const auto basis = ModeBasis::boxcar_bins(phi.herald_grid(), 4);
    double total = 0.0;
    Eigen::MatrixXcd rho_sum = Eigen::MatrixXcd::Zero(81, 81);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const auto mode = basis.mode(k);
        const auto outcome = herald_outcome(phi, f, mode);
        const auto state = herald_with_element(phi, ideal_element(f, mode));
        REQUIRE_THAT(state.probability, WithinRel(outcome.probability, 1e-10));
        REQUIRE_THAT(state.density.purity(), WithinAbs(1.0, 1e-10));
        const auto v = outcome.signal.coordinates();
        REQUIRE(((state.density.matrix - v * v.adjoint()).cwiseAbs().maxCoeff()) <= 1e-10);
        total += outcome.probability;
        rho_sum += outcome.probability * v * v.adjoint();
    }
    CHECK_THAT(total, WithinRel(mixed.probability, 1e-8));
    CHECK(((rho_sum / total - mixed.density.matrix).cwiseAbs().maxCoeff()) <= 1e-10);
}

TEST_CASE("heralding probability equals the herald-side expectation value", "[herald]") {
    const auto phi = correlated(121, 81);
    const auto x = phi.coordinates();
    const DensityMatrix herald_reduced{phi.herald_grid(), x * x.adjoint()};
    const auto f = lorentzian_filter(phi.herald_grid(), kPump - 2.0, 1.0);
    const FilterChain chain({f});
    for (const auto &e : {null_element(f), window_element(chain, 0, TimeWindow(0.0, 2.0, 0.8, 32)),
                          ideal_element(f, gaussian_amplitude(phi.herald_grid(), kPump, 2.0))}) {
        const auto state = herald_with_element(phi, e);
        REQUIRE_THAT(state.probability, WithinRel(detection_probability(herald_reduced, e), 1e-10));
    }
}

TEST_CASE("separable pairs herald the signal factor", "[herald]") {
    const auto phi = separable(301);
    const auto f = lorentzian_filter(phi.herald_grid(), kPump, 1.0);
    const auto signal = gaussian_amplitude(phi.signal_grid(), kPump + 2.0, 1.5);
    const auto outcome = herald_outcome(phi, f, gaussian_amplitude(phi.herald_grid(), kPump + 1.0, 0.5));
    CHECK_THAT(std::abs(inner_product(signal, outcome.signal)), WithinAbs(1.0, 1e-10));
    const auto windowed = herald_windowed(phi, f, TimeWindow(0.0, 3.0, 1.0, 60));
    CHECK_THAT(windowed.density.purity(), WithinAbs(1.0, 1e-10));

    std::vector<FilterSpec> filters;
    for (double gamma : {0.2, 1.0, 5.0}) {
        filters.push_back(lorentzian_filter(phi.herald_grid(), kPump, gamma));
    }
    WindowChoice full;
    WindowChoice shortw;
    shortw.dt = 0.5;
    WindowChoice longw;
    longw.dt = 4.0;
    longw.eta = 0.5;
    const auto curve = tradeoff_curve(phi, filters, {full, shortw, longw});
    REQUIRE(curve.size() == 9);
    for (const auto &p : curve) {
        REQUIRE_THAT(p.purity, WithinAbs(1.0, 1e-9));
        REQUIRE(p.efficiency > 0.0);
        REQUIRE(p.efficiency <= 1.0);
    }
    CHECK(curve[0].gamma == 0.2);
    CHECK(std::isinf(curve[0].dt));
    CHECK(curve[1].dt == 0.5);
    CHECK(curve[3].gamma == 1.0);
    CHECK_THROWS_AS(tradeoff_curve(phi, {}, {full}), DomainError);
    CHECK_THROWS_AS(tradeoff_curve(phi, filters, {}), DomainError);
}

TEST_CASE("time-windowed heralding", "[herald]") {
    const double gamma = 1.0;
    const auto phi = correlated(601);
    const auto f = lorentzian_filter(phi.herald_grid(), kPump, gamma);
    const auto mixed = herald_mixed(phi, f);

    SECTION("a single detection instant heralds a pure state") {
        const auto s = herald_windowed(phi, f, TimeWindow(0.5, 1e-6, 1.0, 1));
        CHECK_THAT(s.density.purity(), WithinAbs(1.0, 1e-8));
    }
    SECTION("a long window approaches the time-integrated state") {
        const auto s = herald_windowed(phi, f, TimeWindow::with_default_sampling(-1.0, 20.0 / gamma, 1.0, gamma));
        CHECK_THAT(s.density.purity(), WithinAbs(mixed.density.purity(), 2e-2));
        CHECK_THAT(s.probability, WithinRel(mixed.probability, 2e-2));
    }
    SECTION("purity falls and efficiency grows with the window length") {
        double last_purity = 2.0;
        double last_probability = 0.0;
        for (double dt : {0.1, 0.3, 1.0, 3.0, 10.0}) {
            const auto s = herald_windowed(phi, f, TimeWindow::with_default_sampling(-1.0, dt, 1.0, gamma));
            INFO("dt = " << dt);
            REQUIRE(s.density.purity() < last_purity);
            REQUIRE(s.probability > last_probability);
            REQUIRE(s.density.purity() >= mixed.density.purity() - 1e-6);
            last_purity = s.density.purity();
            last_probability = s.probability;
        }
    }
    SECTION("efficiency scales probability only") {
        const auto a = herald_windowed(phi, f, TimeWindow(0.0, 2.0, 1.0, 40));
        const auto b = herald_windowed(phi, f, TimeWindow(0.0, 2.0, 0.25, 40));
        CHECK_THAT(b.probability, WithinRel(0.25 * a.probability, 1e-12));
        CHECK_THAT(b.density.purity(), WithinAbs(a.density.purity(), 1e-12));
        const auto dark = herald_mixed(phi, f, 0.5);
        CHECK_THAT(dark.probability, WithinRel(0.5 * mixed.probability, 1e-12));
    }
}

TEST_CASE("heralded density matrices are physical", "[herald]") {
    const auto phi = correlated(301);
    const auto f = lorentzian_filter(phi.herald_grid(), kPump + 3.0, 0.7);
    for (const auto &s : {herald_mixed(phi, f), herald_windowed(phi, f, TimeWindow(0.0, 1.0, 1.0, 32))}) {
        const auto d = diagnose(s.density);
        REQUIRE(d.hermiticity <= 1e-14);
        REQUIRE(d.trace_error <= 1e-12);
        REQUIRE(d.min_eigenvalue >= -1e-12);
        REQUIRE_THAT(d.purity, WithinAbs(s.density.purity(), 1e-14));
        REQUIRE(d.purity <= 1.0 + 1e-12);
    }
}

TEST_CASE("herald inputs are validated", "[herald]") {
    const auto g = around_pump(11);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Constant(11, 11, 1.0);
    CHECK_THROWS_AS(JointAmplitude(g, g, m), DomainError);
    CHECK_NOTHROW(JointAmplitude::normalized(g, g, m));
    CHECK_THROWS_AS(JointAmplitude(g, g, Eigen::MatrixXcd::Zero(3, 11)), GridMismatchError);
    CHECK_THROWS_AS(JointAmplitude::normalized(g, g, Eigen::MatrixXcd::Zero(11, 11)), DomainError);

    const auto phi = correlated(101, 51);
    ComplexVector t(phi.herald_grid().size());
    const auto opaque = filter_from_transmission(phi.herald_grid(), t);
    CHECK_THROWS_AS(herald_mixed(phi, opaque), UnreachableOutcomeError);
    const auto wrong = lorentzian_filter(around_pump(102), kPump, 1.0);
    CHECK_THROWS_AS(herald_mixed(phi, wrong), GridMismatchError);
}
