#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "fracspec/specfun.hpp"
#include "oracles.hpp"

using namespace fracspec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("log_gamma at exact points", "[specfun]") {
    CHECK_THAT(log_gamma(1.0), WithinAbs(0.0, 1e-14));
    CHECK_THAT(log_gamma(2.0), WithinAbs(0.0, 1e-14));
    CHECK_THAT(log_gamma(4.0), WithinAbs(std::log(6.0), 1e-14));
    // ln Gamma(3/2) = ln(sqrt(pi)/2), frozen from the Euler-integral oracle
    CHECK_THAT(log_gamma(1.5), WithinAbs(-0.12078223763524522, 1e-13));
    CHECK_THAT(std::exp(log_gamma(1.5)), WithinRel(oracles::gamma_by_quadrature(1.5), 1e-12));
}

TEST_CASE("log_gamma recurrence and domain", "[specfun]") {
    std::mt19937_64 rng(321);
    std::uniform_real_distribution<double> draw(0.1, 30.0);
    for (int i = 0; i < 200; ++i) {
        const double x = draw(rng);
        const double defect = log_gamma(x + 1.0) - log_gamma(x) - std::log(x);
        CHECK(std::abs(defect) <= 1e-12 * std::max(1.0, std::abs(log_gamma(x + 1.0))));
    }
    // against the standard library as a second implementation
    for (double x : {0.2, 0.7, 1.3, 5.5, 17.0, 123.4}) {
        CHECK_THAT(log_gamma(x), WithinAbs(std::lgamma(x), 1e-12 * std::max(1.0, std::lgamma(x))));
    }
    CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-1.5), std::domain_error);
    CHECK_THROWS_AS(log_gamma(std::numeric_limits<double>::quiet_NaN()), std::domain_error);
}

TEST_CASE("beta values, symmetry, trig-integral oracle", "[specfun]") {
    CHECK_THAT(beta(1.0, 1.0), WithinRel(1.0, 1e-14));
    CHECK_THAT(beta(2.0, 3.0), WithinRel(1.0 / 12.0, 1e-13));
    CHECK_THAT(beta(0.7, 1.9), WithinRel(oracles::beta_by_trig_quadrature(0.7, 1.9), 1e-10));
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> draw(0.05, 12.0);
    for (int i = 0; i < 100; ++i) {
        const double x = draw(rng), y = draw(rng);
        CHECK_THAT(beta(x, y), WithinRel(beta(y, x), 1e-13));
    }
    CHECK_THROWS_AS(beta(0.0, 1.0), std::domain_error);
}

TEST_CASE("ball and sphere volumes", "[specfun]") {
    CHECK_THAT(ball_volume(2, 1.0), WithinRel(std::numbers::pi, 1e-14));
    for (double s : {0.1, 0.4, 0.75, 1.0}) {
        CHECK_THAT(ball_volume(1, s), WithinRel(2.0, 1e-13));
        CHECK_THAT(sphere_volume(1, s), WithinRel(2.0, 1e-13));
    }
    // s = 1/2 is the l1 ball; the slab-integration oracle gives 2^d/d!
    CHECK_THAT(ball_volume(3, 0.5), WithinRel(4.0 / 3.0, 1e-13));
    CHECK_THAT(ball_volume(3, 0.5), WithinRel(oracles::cross_polytope_volume(3, 1.0), 1e-10));
    CHECK_THAT(ball_volume(2, 0.5), WithinRel(oracles::cross_polytope_volume(2, 1.0), 1e-11));

    CHECK_THAT(sphere_volume(2, 1.0), WithinRel(2.0 * std::numbers::pi, 1e-14));
    CHECK_THAT(sphere_volume(3, 1.0), WithinRel(4.0 * std::numbers::pi, 1e-14));
    for (int d = 1; d <= 8; ++d) {
        for (double s : {0.3, 0.6, 0.85, 1.0}) {
            CHECK_THAT(sphere_volume(d, s), WithinRel(d * ball_volume(d, s), 1e-15));
        }
    }
    CHECK_THROWS_AS(ball_volume(0, 0.5), std::domain_error);
    CHECK_THROWS_AS(ball_volume(2, 0.0), std::domain_error);
    CHECK_THROWS_AS(ball_volume(2, 1.5), std::domain_error);
}

TEST_CASE("ball volume is increasing in s and overflow-safe", "[specfun]") {
    // d = 1 is the degenerate case: the interval [-1,1] for every s
    for (double s = 0.05; s <= 1.0; s += 0.05) {
        CHECK_THAT(ball_volume(1, s), Catch::Matchers::WithinRel(2.0, 1e-13));
    }
    for (int d : {2, 3, 5, 10}) {
        double prev = 0.0;
        for (double s = 0.05; s <= 1.0; s += 0.05) {
            const double v = ball_volume(d, s);
            CHECK(v > 0.0);
            CHECK(v > prev);
            prev = v;
        }
    }
    // d/2s up to 200: stays finite and positive
    CHECK(std::isfinite(ball_volume(10, 0.025)));
    CHECK(ball_volume(10, 0.025) > 0.0);
    CHECK(std::isfinite(lieb_thirring_classical_constant(3.0, 10, 0.025)));
}

TEST_CASE("deformed-Gaussian mass lemma", "[specfun]") {
    // (2 int_0^inf exp(-u^{2s}) du)^d == |B_{d,2s}| Gamma(1 + d/2s)
    for (int d = 1; d <= 3; ++d) {
        for (double s : {0.55, 0.75, 1.0}) {
            const double lhs = std::pow(oracles::profile_mass_1d(s), d);
            const double rhs = ball_volume(d, s) * std::exp(log_gamma(1.0 + d / (2.0 * s)));
            CHECK_THAT(lhs, WithinRel(rhs, 1e-9));
        }
    }
}

TEST_CASE("riesz classical constant", "[specfun]") {
    // rho = 0 reduces to the Weyl constant |B| / (2 pi)^d
    for (int d : {1, 2, 3, 6}) {
        for (double s : {0.6, 0.8, 1.0}) {
            CHECK_THAT(riesz_classical_constant(0.0, d, s),
                       WithinRel(ball_volume(d, s) * std::pow(2.0 * std::numbers::pi, -d), 1e-13));
        }
    }
    CHECK_THAT(riesz_classical_constant(0.0, 2, 1.0),
               WithinRel(1.0 / (4.0 * std::numbers::pi), 1e-14));
    CHECK_THAT(riesz_classical_constant(1.0, 2, 1.0),
               WithinRel(1.0 / (8.0 * std::numbers::pi), 1e-14));
    // Riemann-Liouville step: L^cl_{1,d} = L^cl_{0,d} / (1 + d/2s)
    CHECK_THAT(riesz_classical_constant(1.0, 2, 1.0),
               WithinRel(riesz_classical_constant(0.0, 2, 1.0) / 2.0, 1e-13));
    CHECK_THROWS_AS(riesz_classical_constant(-0.5, 2, 1.0), std::domain_error);
}

TEST_CASE("lieb-thirring classical constant", "[specfun]") {
    CHECK_THAT(lieb_thirring_classical_constant(0.0, 2, 1.0),
               WithinRel(ball_volume(2, 1.0) / std::pow(2.0 * std::numbers::pi, 2), 1e-13));
    CHECK_THAT(lieb_thirring_classical_constant(1.0, 1, 1.0),
               WithinRel(2.0 / (3.0 * std::numbers::pi), 1e-13));
    // radial factorization (2pi)^{-d} |A| (1/2s) B(d/2s, gamma+1)
    for (int d : {1, 2, 4}) {
        for (double s : {0.55, 0.8, 1.0}) {
            for (double gamma : {0.0, 0.7, 1.0, 3.3}) {
                const double inv2s = 1.0 / (2.0 * s);
                const double rhs = std::pow(2.0 * std::numbers::pi, -d) * sphere_volume(d, s) *
                                   inv2s * beta(d * inv2s, gamma + 1.0);
                CHECK_THAT(lieb_thirring_classical_constant(gamma, d, s), WithinRel(rhs, 1e-12));
            }
        }
    }
    CHECK_THROWS_AS(lieb_thirring_classical_constant(-1.0, 2, 1.0), std::domain_error);
}

TEST_CASE("strict order range helper", "[specfun]") {
    CHECK(strict_order_range(0.75));
    CHECK(strict_order_range(1.0));
    CHECK_FALSE(strict_order_range(0.5));
    CHECK_FALSE(strict_order_range(0.3));
}
