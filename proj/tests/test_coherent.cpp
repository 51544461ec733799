#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

#include "fracspec/coherent.hpp"

using namespace fracspec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

CoherentParams make(int d, double s, double hbar, double k0, double k1 = 0.0) {
    CoherentParams c;
    c.d = d;
    c.s = s;
    c.hbar = hbar;
    c.k = {k0, k1};
    return c;
}

} // namespace

TEST_CASE("profile modulus and symmetry", "[coherent]") {
    CoherentParams c = make(1, 0.75, 0.3, 1.0);
    c.y = {0.4, 0.0};
    const double gamma0 = std::exp(log_gamma(1.0 + 1.0 / (2.0 * c.s)));
    const double peak = std::pow(2.0 * std::sqrt(c.hbar) * gamma0, -0.5);
    const double x_at_y = 0.4;
    CHECK_THAT(std::abs(coherent_profile(c, std::span<const double>(&x_at_y, 1))),
               WithinRel(peak, 1e-13));
    for (double u : {0.1, 0.7, 2.0}) {
        const double xp = 0.4 + u, xm = 0.4 - u;
        CHECK_THAT(std::abs(coherent_profile(c, std::span<const double>(&xp, 1))),
                   WithinRel(std::abs(coherent_profile(c, std::span<const double>(&xm, 1))),
                             1e-13));
    }
}

TEST_CASE("normalization mass is unity", "[coherent]") {
    for (double s : {0.6, 0.75, 1.0}) {
        for (double hbar : {0.02, 0.3, 1.0}) {
            for (int d : {1, 2}) {
                CoherentParams c = make(d, s, hbar, 1.0, 0.5);
                CHECK_THAT(normalization_mass(c), WithinAbs(1.0, 1e-8));
            }
        }
    }
}

TEST_CASE("gaussian kinetic identity", "[coherent]") {
    FourierSideDensity dens = build_momentum_density(1.0);
    CHECK_THAT(kinetic_expectation(make(1, 1.0, 0.1, 1.0), dens),
               WithinAbs(4.0 * std::numbers::pi * std::numbers::pi + 0.05, 1e-7));
    CHECK_THAT(kinetic_expectation(make(2, 1.0, 0.2, 1.0, 1.0), dens),
               WithinAbs(8.0 * std::numbers::pi * std::numbers::pi + 0.2, 1e-6));
    for (double hbar : {1.0, 0.31, 0.02}) {
        const double expected = 4.0 * std::numbers::pi * std::numbers::pi + hbar / 2.0;
        CHECK_THAT(kinetic_expectation(make(1, 1.0, hbar, 1.0), dens),
                   WithinRel(expected, 1e-9));
    }
}

TEST_CASE("expectation is independent of the center", "[coherent]") {
    FourierSideDensity dens = build_momentum_density(0.8);
    CoherentParams a = make(1, 0.8, 0.2, 1.0);
    CoherentParams b = a;
    b.y = {2.3, 0.0};
    CHECK(kinetic_expectation(a, dens) == kinetic_expectation(b, dens));
}

TEST_CASE("momentum density centroid tracks k", "[coherent]") {
    // phase covariance: the centroid of |G-hat|^2 sits at p = 2 pi k
    FourierSideDensity dens = build_momentum_density(0.75);
    const double hbar = 0.2;
    for (double k : {0.5, 1.0, 2.0}) {
        const double p = 2.0 * std::numbers::pi * k;
        const double eps = std::sqrt(hbar);
        double num = p * dens.psi_sq[0];
        double den = dens.psi_sq[0];
        for (std::size_t i = 1; i < dens.psi_sq.size(); ++i) {
            const double w = static_cast<double>(i) * dens.w_step;
            const double fold = (i + 1 == dens.psi_sq.size()) ? 0.5 : 1.0;
            num += fold * ((p + eps * w) + (p - eps * w)) * dens.psi_sq[i];
            den += fold * 2.0 * dens.psi_sq[i];
        }
        CHECK_THAT(num / den, WithinAbs(p, 1e-10));
    }
}

TEST_CASE("semiclassical limit of the kinetic expectation", "[coherent]") {
    const std::vector<double> grid{0.5, 0.2, 0.1, 0.05, 0.02};

    // s = 1: the gap is exactly hbar d / 2
    auto s1 = semiclassical_limit_check(make(1, 1.0, 1.0, 1.0), grid);
    CHECK(s1.converged);
    for (const auto& row : s1.rows) CHECK_THAT(row.gap, WithinRel(row.hbar / 2.0, 1e-6));

    auto frac = semiclassical_limit_check(make(1, 0.75, 1.0, 1.0), grid);
    CHECK(frac.gap_decreasing);
    CHECK(frac.final_relative_gap < 0.05);

    // k = 0: expectation itself tends to zero
    auto zero = semiclassical_limit_check(make(1, 0.75, 1.0, 0.0), grid, 1.0);
    CHECK(zero.limit == 0.0);
    for (std::size_t i = 1; i < zero.rows.size(); ++i) {
        CHECK(zero.rows[i].expectation < zero.rows[i - 1].expectation);
    }

    // homogeneity of the limit: k -> c k scales it by c^{2s}
    auto base = semiclassical_limit_check(make(1, 0.75, 1.0, 1.0), grid);
    auto scaled = semiclassical_limit_check(make(1, 0.75, 1.0, 2.0), grid);
    CHECK_THAT(scaled.limit, WithinRel(std::pow(2.0, 1.5) * base.limit, 1e-13));
}

TEST_CASE("potential expectation modes", "[coherent]") {
    PotentialSpec constant;
    constant.d = 1;
    constant.s = 0.75;
    constant.gamma = 1.0;
    constant.profile = AnalyticWell{WellFamily::box, 2.5, {1e6}, {0.0}};
    CoherentParams c = make(1, 0.75, 0.1, 1.0);
    CHECK(potential_expectation(c, constant, PotentialMode::center_value) == 2.5);
    CHECK_THAT(potential_expectation(c, constant, PotentialMode::profile_quadrature),
               WithinRel(2.5, 1e-8));

    // gaussian well: the diagnostic gap from V(y) vanishes as hbar -> 0
    PotentialSpec gauss;
    gauss.d = 1;
    gauss.s = 0.75;
    gauss.gamma = 1.0;
    gauss.profile = AnalyticWell{WellFamily::gaussian, 1.8, {0.7}, {0.1}};
    c.y = {0.5, 0.0};
    const double at_center = potential_expectation(c, gauss, PotentialMode::center_value);
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double hbar : {0.5, 0.1, 0.02}) {
        c.hbar = hbar;
        const double smeared = potential_expectation(c, gauss, PotentialMode::profile_quadrature);
        const double gap = std::abs(smeared - at_center);
        CHECK(gap < prev_gap);
        prev_gap = gap;
    }
    CHECK(prev_gap < 0.02);

    // center outside the support: the center-value mode vanishes
    PotentialSpec bump;
    bump.d = 1;
    bump.s = 0.75;
    bump.gamma = 1.0;
    bump.profile = AnalyticWell{WellFamily::bump, 3.0, {0.5}, {0.0}};
    c.y = {4.0, 0.0};
    CHECK(potential_expectation(c, bump, PotentialMode::center_value) == 0.0);

    // d = 2 diagnostic mode
    PotentialSpec gauss2;
    gauss2.d = 2;
    gauss2.s = 1.0;
    gauss2.gamma = 1.0;
    gauss2.profile = AnalyticWell{WellFamily::gaussian, 1.0, {1.0, 1.0}, {0.0, 0.0}};
    CoherentParams c2 = make(2, 1.0, 0.05, 1.0, 0.5);
    const double smeared2 = potential_expectation(c2, gauss2, PotentialMode::profile_quadrature);
    CHECK_THAT(smeared2, WithinAbs(1.0, 0.05));
}

TEST_CASE("parseval identity on a truncated grid", "[coherent]") {
    // normalized gaussian test function
    auto gaussian = [](double x) {
        return std::complex<double>(std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * x * x),
                                    0.0);
    };
    CHECK(parseval_check(1.0, gaussian) <= 1e-4);

    // psi equal to a coherent state itself
    const double gamma0 = std::exp(log_gamma(1.5));
    auto state = [&](double x) {
        const double k0 = 0.7;
        return std::polar(std::pow(2.0 * gamma0, -0.5) * std::exp(-0.5 * x * x),
                          2.0 * std::numbers::pi * k0 * x);
    };
    CHECK(parseval_check(1.0, state) <= 1e-4);

    // widening a deliberately tight truncation reduces the residual
    ParsevalGrid tight;
    tight.y_half = 2.0;
    tight.k_half = 0.75;
    ParsevalGrid wide = tight;
    wide.y_half *= 2.0;
    wide.k_half *= 2.0;
    const double r_tight = parseval_check(1.0, gaussian, tight);
    const double r_wide = parseval_check(1.0, gaussian, wide);
    CHECK(r_wide < r_tight);
}

TEST_CASE("grid failure for heavy-tailed orders", "[coherent]") {
    CHECK_THROWS_AS(build_momentum_density(0.3), grid_error);
    CHECK_THROWS_AS(make(1, 1.0, -0.1, 1.0).validate(), std::domain_error);
    CHECK_THROWS_AS(make(3, 1.0, 0.1, 1.0).validate(), std::domain_error);
}
