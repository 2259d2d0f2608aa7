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
#include <string>
#include <vector>

#include "oracles.hpp"
#include "povm/errors.hpp"
#include "povm/filters.hpp"

using namespace povm;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

/// Captures warnings for the lifetime of the object.
struct WarningCapture {
    std::vector<std::string> messages;
    WarningHandler previous;
    WarningCapture() {
        previous = set_warning_handler([this](const std::string &m) { messages.push_back(m); });
    }
    ~WarningCapture() { set_warning_handler(previous); }
};

} // namespace

TEST_CASE("lorentzian filter is unitary on random grids", "[filters]") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const double gamma = 0.1 + 5.0 * u(rng);
        const double omega0 = 1000.0 * gamma * (1.0 + u(rng));
        const double half = gamma * (1.0 + 300.0 * u(rng));
        const auto n = static_cast<std::size_t>(2 + 5000 * u(rng));
        const FrequencyGrid g(omega0 - half, omega0 + half, n);
        const auto f = lorentzian_filter(g, omega0, gamma);
        const auto res = f.unitarity_residual();
        REQUIRE(res.norm <= 1e-12);
        REQUIRE(res.cross <= 1e-12);
    }
}

TEST_CASE("lorentzian samples match the closed form", "[filters]") {
    const FrequencyGrid g(990.0, 1010.0, 401);
    const auto f = lorentzian_filter(g, 1000.0, 2.0);
    for (std::size_t i = 0; i < g.size(); i += 37) {
        REQUIRE(std::abs(f.transmission()[i] - oracle::lorentzian_t(g.omega(i), 1000.0, 2.0)) < 1e-15);
        REQUIRE(std::abs(f.reflection()[i] - oracle::lorentzian_r(g.omega(i), 1000.0, 2.0)) < 1e-15);
    }
    const auto mid = f.response_at(1000.123);
    CHECK(std::abs(mid.transmission - oracle::lorentzian_t(1000.123, 1000.0, 2.0)) < 1e-15);
    CHECK(f.omega0() == 1000.0);
    CHECK(f.gamma() == 2.0);
}

TEST_CASE("effective bandwidth of a truncated lorentzian", "[filters]") {
    const double gamma = 1.0;
    const FrequencyGrid g(1000.0 - 200.0 * gamma, 1000.0 + 200.0 * gamma, 40001);
    const auto f = lorentzian_filter(g, 1000.0, gamma);
    const double expected = (2.0 / std::numbers::pi) * std::atan(200.0) * gamma;
    CHECK_THAT(effective_bandwidth(f), WithinRel(expected, 1e-3));
    CHECK_THAT(expected, WithinAbs(0.996817, 1e-6));
}

TEST_CASE("lorentzian rejects nonpositive bandwidth and warns when broad",
          "[filters]") {
    const FrequencyGrid g(1.0, 100.0, 101);
    CHECK_THROWS_AS(lorentzian_filter(g, 50.0, 0.0), DomainError);
    CHECK_THROWS_AS(lorentzian_filter(g, 50.0, -1.0), DomainError);
    WarningCapture capture;
    (void)lorentzian_filter(g, 50.0, 1.0);
    CHECK(capture.messages.size() == 1);
    (void)lorentzian_filter(g, 50.0, 0.4);
    CHECK(capture.messages.size() == 1);
}

TEST_CASE("filter from transmission builds a unitary partner", "[filters]") {
    const FrequencyGrid g(10.0, 20.0, 101);
    ComplexVector t(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double x = (g.omega(i) - 15.0) / 1.5;
        t[i] = std::polar(std::exp(-x * x), 0.7 * x);
    }
    const auto f = filter_from_transmission(g, t);
    CHECK(f.unitarity_residual().max() <= 1e-12);
    CHECK(f.omega0() == Catch::Approx(15.0));
    for (std::size_t i = 0; i < g.size(); ++i) {
        const Complex expected_r = Complex(0.0, 1.0) * std::polar(std::sqrt(1.0 - std::norm(t[i])), std::arg(t[i]));
        REQUIRE(std::abs(f.reflection()[i] - expected_r) < 1e-15);
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        acc += g.weight(i) * std::norm(t[i]);
    }
    CHECK_THAT(f.gamma(), WithinRel(acc / std::numbers::pi, 1e-14));

    t[3] = 1.01;
    CHECK_THROWS_AS(filter_from_transmission(g, t), DomainError);
    CHECK_THROWS_AS(filter_from_transmission(g, ComplexVector(3)), GridMismatchError);
}

TEST_CASE("non-unitary filters are rejected at construction", "[filters]") {
    const FrequencyGrid g(10.0, 20.0, 11);
    ComplexVector t(g.size(), Complex(0.8, 0.0));
    ComplexVector r(g.size(), Complex(0.0, 0.7));
    CHECK_THROWS_AS(FilterSpec(g, 15.0, 1.0, t, r), DomainError);
    ComplexVector r_real(g.size(), Complex(0.6, 0.0));
    CHECK_THROWS_AS(FilterSpec(g, 15.0, 1.0, t, r_real), DomainError);
    ComplexVector r_ok(g.size(), Complex(0.0, 0.6));
    CHECK_NOTHROW(FilterSpec(g, 15.0, 1.0, t, r_ok));
}

TEST_CASE("interpolated response stays unitary and in range", "[filters]") {
    const FrequencyGrid g(990.0, 1010.0, 201);
    ComplexVector t(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        t[i] = oracle::lorentzian_t(g.omega(i), 1000.0, 1.0);
    }
    const auto f = filter_from_transmission(g, t);
    for (double w : {990.0, 995.03, 1000.05, 1009.99}) {
        const auto resp = f.response_at(w);
        CHECK_THAT(std::norm(resp.transmission) + std::norm(resp.reflection), WithinAbs(1.0, 1e-14));
        CHECK(std::abs(resp.transmission - oracle::lorentzian_t(w, 1000.0, 1.0)) < 5e-3);
    }
    CHECK_THROWS_AS(f.response_at(1011.0), DomainError);
}

TEST_CASE("resampling with a model matches direct construction", "[filters]") {
    const FrequencyGrid a(900.0, 1100.0, 2001);
    const FrequencyGrid b(950.0, 1050.0, 777);
    const auto f = resample(lorentzian_filter(a, 1000.0, 1.0), b);
    const auto direct = lorentzian_filter(b, 1000.0, 1.0);
    for (std::size_t i = 0; i < b.size(); ++i) {
        REQUIRE(std::abs(f.transmission()[i] - direct.transmission()[i]) < 1e-15);
    }
}

TEST_CASE("cascade port coefficients conserve probability", "[filters]") {
    const FrequencyGrid g(900.0, 1100.0, 2001);
    const FilterChain chain({lorentzian_filter(g, 990.0, 1.0), lorentzian_filter(g, 1000.0, 2.0),
                             lorentzian_filter(g, 1010.0, 0.5)});
    REQUIRE(chain.size() == 3);
    std::vector<ComplexVector> ports;
    for (std::size_t k = 0; k < chain.size(); ++k) {
        ports.push_back(chain_port_coefficient(chain, k));
    }
    const auto rest = chain_reflected_coefficient(chain);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double w = g.omega(i);
        const Complex c1 = oracle::lorentzian_r(w, 990.0, 1.0) * oracle::lorentzian_t(w, 1000.0, 2.0);
        REQUIRE(std::abs(ports[1][i] - c1) < 1e-15);
        double total = std::norm(rest[i]);
        for (const auto &p : ports) {
            total += std::norm(p[i]);
        }
        REQUIRE_THAT(total, WithinAbs(1.0, 1e-12));
    }
    CHECK_THROWS_AS(chain_port_coefficient(chain, 3), IndexError);
    CHECK_THROWS_AS(FilterChain({}), DomainError);
    const FrequencyGrid other(900.0, 1100.0, 2000);
    CHECK_THROWS_AS(FilterChain({lorentzian_filter(g, 1000.0, 1.0), lorentzian_filter(other, 1000.0, 1.0)}),
                    GridMismatchError);
}

TEST_CASE("applying a filter splits the norm", "[filters]") {
    const FrequencyGrid g(900.0, 1100.0, 4001);
    const auto f = gaussian_amplitude(g, 1001.0, 2.0);
    const auto branches = apply_filter(f, lorentzian_filter(g, 1000.0, 1.0));
    CHECK_THAT(branches.transmitted.norm_squared() + branches.reflected.norm_squared(),
               WithinAbs(1.0, 1e-12));
    CHECK(branches.transmitted.norm_squared() < 1.0);
}
