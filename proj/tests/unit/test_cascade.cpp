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
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "povm/cascade.hpp"
#include "povm/errors.hpp"
#include "povm/filters.hpp"
#include "povm/povm_single.hpp"

using namespace povm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

/// Joint detection probability density from the field-operator expression:
/// eta0 eta1 / (2 pi^2) |sum_ij q_i q_j C0_i C1_j e^{-i w_i t - i w_j t'} Phi_ij|^2.
double joint_oracle(const TwoPhotonAmplitude &phi, const FilterSpec &f0, const FilterSpec &f1,
                    double t, double tp, double eta0, double eta1) {
    const auto &g = phi.grid();
    const auto t0 = f0.transmission();
    const auto r0 = f0.reflection();
    const auto t1 = f1.transmission();
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Complex a = g.weight(i) * t0[i] * std::polar(1.0, -g.omega(i) * t);
        for (std::size_t j = 0; j < g.size(); ++j) {
            const Complex b = g.weight(j) * t1[j] * r0[j] * std::polar(1.0, -g.omega(j) * tp);
            acc += a * b * phi.values()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        }
    }
    return eta0 * eta1 / (2.0 * std::numbers::pi * std::numbers::pi) * std::norm(acc);
}

TwoPhotonAmplitude random_symmetric(const FrequencyGrid &g, std::mt19937 &rng) {
    const auto a = oracle::random_amplitude(g, rng);
    const auto b = oracle::random_amplitude(g, rng);
    const auto c = oracle::random_amplitude(g, rng);
    Eigen::MatrixXcd m = TwoPhotonAmplitude::symmetrized_product(a, b).values() +
                         Complex(0.3, 0.4) * TwoPhotonAmplitude::symmetrized_product(c, c).values();
    return TwoPhotonAmplitude(g, m, true).normalized();
}

} // namespace

TEST_CASE("cross overlap is small for well separated filters", "[cascade]") {
    const double gamma = 1.0;
    const double omega0 = 1000.0;
    const auto g = two_photon_grid(omega0, omega0 + 100.0 * gamma, gamma, 4096);
    const auto f0 = lorentzian_filter(g, omega0, gamma);
    const auto f1 = lorentzian_filter(g, omega0 + 100.0 * gamma, gamma);
    for (double t : {0.0, 0.5, 2.0}) {
        REQUIRE(std::abs(cross_overlap(f0, f1, t, t)) <= 0.05);
    }
}

TEST_CASE("cross overlap matches direct quadrature", "[cascade]") {
    const FrequencyGrid g(950.0, 1050.0, 2001);
    const auto f0 = lorentzian_filter(g, 1000.0, 1.0);
    const auto f1 = lorentzian_filter(g, 1000.0, 1.0);
    const auto f2 = lorentzian_filter(g, 1003.0, 2.0);
    for (const auto *other : {&f1, &f2}) {
        for (double tau : {-1.0, 0.0, 0.4, 3.0}) {
            Complex acc{0.0, 0.0};
            double s0 = 0.0;
            double s1 = 0.0;
            for (std::size_t i = 0; i < g.size(); ++i) {
                const double w = g.omega(i);
                const Complex t0 = oracle::lorentzian_t(w, 1000.0, 1.0);
                const Complex c1 = oracle::lorentzian_t(w, other->omega0(), other->gamma()) *
                                   oracle::lorentzian_r(w, 1000.0, 1.0);
                acc += g.weight(i) * std::conj(t0) * c1 * std::polar(1.0, w * tau);
                s0 += g.weight(i) * std::norm(t0);
                s1 += g.weight(i) * std::norm(c1);
            }
            const Complex expected = acc / std::sqrt(s0 * s1);
            const Complex got = cross_overlap(f0, *other, 0.5 + tau, 0.5);
            REQUIRE(std::abs(got - expected) <= 1e-10);
            REQUIRE(std::abs(got) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("cross overlap is bounded for random filters", "[cascade]") {
    const FrequencyGrid g(900.0, 1100.0, 801);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f0 = lorentzian_filter(g, 950.0 + 100.0 * u(rng), 0.2 + 3.0 * u(rng));
        const auto f1 = lorentzian_filter(g, 950.0 + 100.0 * u(rng), 0.2 + 3.0 * u(rng));
        REQUIRE(std::abs(cross_overlap(f0, f1, 5.0 * u(rng), 5.0 * u(rng))) <= 1.0 + 1e-12);
    }
}

TEST_CASE("two-photon weight factorizes into single-detection weights", "[cascade]") {
    const double gamma = 1.0;
    const double omega0 = 1000.0;
    for (double detuning : {0.0, 1.0, 10.0}) {
        const auto g = two_photon_grid(omega0, omega0 + detuning * gamma, gamma);
        const auto f0 = lorentzian_filter(g, omega0, gamma);
        const auto f1 = lorentzian_filter(g, omega0 + detuning * gamma, gamma);
        const FilterChain chain({f0});
        for (int a = 0; a < 5; ++a) {
            for (int b = 0; b < 5; ++b) {
                const double t = 0.75 * a / gamma;
                const double tp = 0.75 * b / gamma;
                const auto proj = two_photon_projector(f0, f1, t, tp, 0.9, 0.6);
                const double w = time_state(chain, 0, t, 0.9).weight_density;
                const double wp = second_port_state(f0, f1, tp, 0.6).weight_density;
                const double ov = std::norm(cross_overlap(f0, f1, t, tp));
                INFO("detuning " << detuning << " t " << t << " t' " << tp);
                REQUIRE_THAT(proj.w0, WithinRel(w, 1e-12));
                REQUIRE_THAT(proj.w1, WithinRel(wp, 1e-12));
                REQUIRE_THAT(proj.weight, WithinRel(w * wp * (1.0 + ov), 1e-8));
                REQUIRE(proj.weight >= w * wp * (1.0 - 1e-12));
                REQUIRE(proj.weight <= 2.0 * w * wp * (1.0 + 1e-12));
                REQUIRE_THAT(proj.amplitude.norm_squared(), WithinAbs(1.0, 1e-12));
                REQUIRE(proj.amplitude.symmetric());
                const auto &v = proj.amplitude.values();
                REQUIRE((v - v.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * v.cwiseAbs().maxCoeff());
            }
        }
    }
}

TEST_CASE("far-detuned filters decouple", "[cascade]") {
    const double gamma = 1.0;
    const double omega0 = 1e5;
    const FrequencyGrid g(omega0 - 2000.0, omega0 + 2100.0, 20501);
    const auto f0 = lorentzian_filter(g, omega0, gamma);
    const auto f1 = lorentzian_filter(g, omega0 + 100.0 * gamma, gamma);
    for (double t : {0.0, 1.0}) {
        REQUIRE(std::norm(cross_overlap(f0, f1, t, t)) <= 1e-3);
    }
    const double w = time_state(FilterChain({f0}), 0, 0.0, 1.0).weight_density;
    const double wp = second_port_state(f0, f1, 0.0, 1.0).weight_density;
    CHECK_THAT(wp / w, WithinAbs(1.0, 1e-3));
}

TEST_CASE("joint detection probability matches the field-operator oracle", "[cascade]") {
    const FrequencyGrid g(980.0, 1020.0, 121);
    const auto f0 = lorentzian_filter(g, 998.0, 1.5);
    const auto f1 = lorentzian_filter(g, 1003.0, 1.0);
    std::mt19937 rng(23);
    for (int trial = 0; trial < 3; ++trial) {
        const auto phi = random_symmetric(g, rng);
        for (auto [t, tp] : {std::pair{0.0, 0.0}, std::pair{0.3, 1.2}, std::pair{2.0, 0.5}}) {
            const double p = joint_detection_probability(phi, f0, f1, t, tp, 0.8, 0.7);
            const double expected = joint_oracle(phi, f0, f1, t, tp, 0.8, 0.7);
            REQUIRE_THAT(p, WithinRel(expected, 1e-8));
        }
    }
    const auto proj = two_photon_projector(f0, f1, 0.2, 0.9, 1.0, 1.0);
    CHECK_THAT(joint_detection_probability(proj.amplitude, f0, f1, 0.2, 0.9, 1.0, 1.0),
               WithinRel(proj.weight, 1e-12));
}

TEST_CASE("photons outside both passbands are never detected", "[cascade]") {
    const FrequencyGrid g(100.0, 200.0, 201);
    ComplexVector t0(g.size());
    ComplexVector t1(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double w = g.omega(i);
        if (w >= 140.0 && w <= 150.0) {
            t0[i] = 0.8;
        }
        if (w >= 150.0 && w <= 160.0) {
            t1[i] = Complex(0.0, 0.9);
        }
    }
    const auto f0 = filter_from_transmission(g, t0);
    const auto f1 = filter_from_transmission(g, t1);
    const auto a = boxcar_amplitude(g, 105.0, 120.0);
    const auto b = boxcar_amplitude(g, 170.0, 190.0);
    const auto phi = TwoPhotonAmplitude::symmetrized_product(a, b).normalized();
    for (double t : {0.0, 1.0, 7.0}) {
        REQUIRE(joint_detection_probability(phi, f0, f1, t, 0.5 * t, 1.0, 1.0) == 0.0);
    }
}

TEST_CASE("two-photon amplitudes validate their inputs", "[cascade]") {
    const FrequencyGrid g(10.0, 20.0, 11);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(11, 11);
    m(1, 2) = 1.0;
    CHECK_THROWS_AS(TwoPhotonAmplitude(g, m, true), DomainError);
    CHECK_NOTHROW(TwoPhotonAmplitude(g, m, false));
    CHECK_THROWS_AS(TwoPhotonAmplitude(g, Eigen::MatrixXcd::Zero(3, 3), false), GridMismatchError);
    CHECK_THROWS_AS(TwoPhotonAmplitude(g, Eigen::MatrixXcd::Zero(11, 11), true).normalized(),
                    DomainError);

    const auto f0 = lorentzian_filter(g, 15.0, 0.1);
    const TwoPhotonAmplitude asym = TwoPhotonAmplitude(g, m, false).normalized();
    CHECK_THROWS_AS(joint_detection_probability(asym, f0, f0, 0.0, 0.0, 1.0, 1.0), DomainError);
    const auto a = gaussian_amplitude(g, 14.0, 1.0);
    const auto unnormalized = TwoPhotonAmplitude::symmetrized_product(a, a);
    CHECK_THROWS_AS(joint_detection_probability(unnormalized, f0, f0, 0.0, 0.0, 1.0, 1.0), DomainError);

    const FrequencyGrid other(10.0, 20.0, 12);
    const auto f_other = lorentzian_filter(other, 15.0, 0.1);
    CHECK_THROWS_AS(cross_overlap(f0, f_other, 0.0, 0.0), GridMismatchError);
    CHECK_THROWS_AS(two_photon_projector(f0, f_other, 0.0, 0.0, 1.0, 1.0), GridMismatchError);
    CHECK_THROWS_AS(second_port_state(f0, f0, 0.0, 2.0), DomainError);
}

TEST_CASE("two-photon inner product is sesquilinear", "[cascade]") {
    const FrequencyGrid g(980.0, 1020.0, 61);
    std::mt19937 rng(29);
    const auto a = random_symmetric(g, rng);
    const auto b = random_symmetric(g, rng);
    CHECK(std::abs(inner_product(a, b) - std::conj(inner_product(b, a))) < 1e-14);
    CHECK_THAT(inner_product(a, a).real(), WithinAbs(1.0, 1e-12));
    const TwoPhotonAmplitude scaled(g, Complex(0.0, 2.0) * b.values(), true);
    CHECK(std::abs(inner_product(a, scaled) - Complex(0.0, 2.0) * inner_product(a, b)) < 1e-13);
}
