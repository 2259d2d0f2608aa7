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
#include <random>
#include <vector>

#include "oracles.hpp"
#include "povm/errors.hpp"
#include "povm/filters.hpp"
#include "povm/hom.hpp"

using namespace povm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kOmega0 = 1000.0;
constexpr double kGamma = 1.0;

/// Root in d' of exp(-25 (d - d')) = d d' for Gaussian inputs of width
/// gamma / 5 centered at omega0 -+ gamma, bracketed in [lo, hi].
double two_color_root(double d, double lo, double hi) {
    auto f = [d](double dp) { return std::exp(-25.0 * (d - dp)) - d * dp; };
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((f(lo) < 0.0) == (f(mid) < 0.0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

TEST_CASE("a fully transmitting filter keeps the photons apart", "[hom]") {
    const auto g = hom_grid(kOmega0, kGamma, 201);
    const auto phi1 = gaussian_amplitude(g, kOmega0 - 1.0, 1.0);
    const auto phi2 = gaussian_amplitude(g, kOmega0 + 2.0, 0.5);
    for (Complex t : {Complex(1.0, 0.0), Complex(0.0, 0.0)}) {
        const auto f = filter_from_transmission(g, ComplexVector(g.size(), t));
        const auto out = hom_split(phi1, phi2, f);
        REQUIRE(out.probability_aa() == 0.0);
        REQUIRE(out.probability_bb() == 0.0);
        REQUIRE_THAT(out.probability_ab(), WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("half-transmission loci of a lorentzian", "[hom]") {
    const auto g = hom_grid(kOmega0, kGamma, 1001);
    const auto loci = half_transmission_loci(lorentzian_filter(g, kOmega0, kGamma));
    REQUIRE(loci.size() == 2);
    CHECK_THAT(loci[0], WithinAbs(kOmega0 - kGamma, 1e-8 * kGamma));
    CHECK_THAT(loci[1], WithinAbs(kOmega0 + kGamma, 1e-8 * kGamma));
}

TEST_CASE("half-transmission loci of a double notch", "[hom]") {
    const auto g = hom_grid(kOmega0, kGamma, 1001);
    auto t_of = [](double w) {
        const double ra = std::norm(oracle::lorentzian_r(w, kOmega0 - 3.0, kGamma));
        const double rb = std::norm(oracle::lorentzian_r(w, kOmega0 + 3.0, kGamma));
        return Complex(std::sqrt(1.0 - ra * rb), 0.0);
    };
    const auto loci = half_transmission_loci(filter_from_response(g, t_of));
    REQUIRE(loci.size() == 4);
    for (std::size_t k = 0; k < loci.size(); ++k) {
        REQUIRE_THAT(std::norm(t_of(loci[k])), WithinAbs(0.5, 1e-8));
        if (k > 0) {
            REQUIRE(loci[k] > loci[k - 1]);
        }
    }
    const auto flat = filter_from_transmission(g, ComplexVector(g.size(), Complex(0.9, 0.0)));
    CHECK(half_transmission_loci(flat).empty());
}

TEST_CASE("output branches conserve probability", "[hom]") {
    const auto g = hom_grid(kOmega0, kGamma, 301);
    const auto f = lorentzian_filter(g, kOmega0, kGamma);
    std::mt19937 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const auto a = oracle::random_amplitude(g, rng);
        const auto b = oracle::random_amplitude(g, rng);
        const auto out = hom_split(a, b, f);
        REQUIRE_THAT(out.probability_aa() + out.probability_bb() + out.probability_ab(),
                     WithinAbs(1.0, 1e-10));
        REQUIRE(out.aa.symmetric());
        REQUIRE(out.bb.symmetric());
    }
}

TEST_CASE("identical photons cancel at the half-transmission points", "[hom]") {
    const auto g = hom_grid(kOmega0, kGamma, 801);
    const auto f = lorentzian_filter(g, kOmega0, kGamma);
    const auto phi = gaussian_amplitude(g, kOmega0, 2.0);
    const double peak = std::norm(phi[g.nearest_index(kOmega0)]);
    CHECK(destructive_residual(phi, phi, f, kOmega0 + kGamma, kOmega0 + kGamma) <= 1e-12 * peak);
    CHECK(destructive_residual(phi, phi, f, kOmega0 - kGamma, kOmega0 - kGamma) <= 1e-12 * peak);
    const std::size_t c = g.nearest_index(kOmega0);
    CHECK_THAT(destructive_residual(phi, phi, f, g.omega(c), g.omega(c)), WithinRel(peak, 1e-12));

    const auto out = hom_split(phi, phi, f);
    CHECK_THAT(out.probability_aa(), WithinRel(out.probability_bb(), 1e-12));
}

TEST_CASE("equal-frequency coincidences vanish at every locus", "[hom]") {
    const auto g = hom_grid(kOmega0, kGamma, 801);
    auto t_of = [](double w) {
        const double ra = std::norm(oracle::lorentzian_r(w, kOmega0 - 3.0, kGamma));
        const double rb = std::norm(oracle::lorentzian_r(w, kOmega0 + 3.0, kGamma));
        return std::polar(std::sqrt(1.0 - ra * rb), 0.2 * (w - kOmega0));
    };
    const auto f = filter_from_response(g, t_of);
    std::mt19937 rng(37);
    const auto a = oracle::random_amplitude(g, rng);
    const auto b = oracle::random_amplitude(g, rng);
    const double scale = coincidence_map(a, b, f).maxCoeff();
    for (double w : half_transmission_loci(f)) {
        REQUIRE(std::norm(destructive_residual(a, b, f, w, w)) <= 1e-10 * scale);
    }
}

TEST_CASE("coincidences are invariant under input phases and swap on exchange", "[hom]") {
    const auto g = hom_grid(kOmega0, kGamma, 201);
    const auto f = lorentzian_filter(g, kOmega0, kGamma);
    std::mt19937 rng(41);
    const auto a = oracle::random_amplitude(g, rng);
    const auto b = oracle::random_amplitude(g, rng);
    ComplexVector rotated(a.values().begin(), a.values().end());
    for (auto &v : rotated) {
        v *= std::polar(1.0, 1.234);
    }
    const SpectralAmplitude a_rot(g, rotated);
    const Eigen::MatrixXd m = coincidence_map(a, b, f);
    CHECK((coincidence_map(a_rot, b, f) - m).cwiseAbs().maxCoeff() <= 1e-12 * m.maxCoeff());
    CHECK((coincidence_map(b, a, f) - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * m.maxCoeff());
    for (std::size_t i : {10u, 57u, 140u}) {
        for (std::size_t j : {3u, 100u}) {
            REQUIRE_THAT(std::norm(coincidence_amplitude(a, b, f, g.omega(i), g.omega(j))),
                         WithinAbs(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)),
                                   1e-12 * m.maxCoeff()));
        }
    }
}

TEST_CASE("two-color inputs show a dip on the analytic curve", "[hom]") {
    const auto g = hom_grid(kOmega0, kGamma, 2001);
    const auto f = lorentzian_filter(g, kOmega0, kGamma);
    const auto phi1 = gaussian_amplitude(g, kOmega0 - kGamma, kGamma / 5.0);
    const auto phi2 = gaussian_amplitude(g, kOmega0 + kGamma, kGamma / 5.0);
    const Eigen::MatrixXd m = coincidence_map(phi1, phi2, f);
    CHECK_THAT(two_color_root(0.5, 0.3, 0.6), WithinAbs(0.43938, 1e-5));
    for (double d : {0.4, 0.5, 0.6}) {
        const std::size_t i = g.nearest_index(kOmega0 + d * kGamma);
        const double di = (g.omega(i) - kOmega0) / kGamma;
        const double root = two_color_root(di, 0.25, 0.75);
        std::size_t best = g.nearest_index(kOmega0 + 0.25 * kGamma);
        const std::size_t stop = g.nearest_index(kOmega0 + 0.75 * kGamma);
        for (std::size_t j = best; j <= stop; ++j) {
            if (m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) <
                m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(best))) {
                best = j;
            }
        }
        INFO("d = " << di << " root = " << root);
        REQUIRE(std::abs(g.omega(best) - (kOmega0 + root * kGamma)) <= g.spacing());
    }
}

TEST_CASE("two-photon maps reject oversized grids and bad inputs", "[hom]") {
    const auto big = hom_grid(kOmega0, kGamma, 4097);
    const auto f = lorentzian_filter(big, kOmega0, kGamma);
    const auto phi = gaussian_amplitude(big, kOmega0, 1.0);
    CHECK_THROWS_AS(coincidence_map(phi, phi, f), DomainError);
    CHECK_THROWS_AS(hom_split(phi, phi, f), DomainError);

    const auto g = hom_grid(kOmega0, kGamma, 101);
    const auto small = lorentzian_filter(g, kOmega0, kGamma);
    const auto a = gaussian_amplitude(g, kOmega0, 1.0);
    const SpectralAmplitude doubled(g, ComplexVector(g.size(), Complex(1.0, 0.0)));
    CHECK_THROWS_AS(hom_split(a, doubled, small), DomainError);
    CHECK_THROWS_AS(destructive_residual(a, a, small, kOmega0 + 50.0, kOmega0), DomainError);
    CHECK_THROWS_AS(hom_grid(kOmega0, 0.0), DomainError);
}
