#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "fracspec/reference.hpp"
#include "fracspec/semiclassical.hpp"

using namespace fracspec;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
const DomainSpec kSquare{std::numbers::pi * std::numbers::pi, 2, true};
}

TEST_CASE("phase-space volume equals the weyl estimate", "[semiclassical]") {
    for (int d : {1, 2, 3}) {
        for (double s : {0.55, 0.8, 1.0}) {
            const DomainSpec dom{0.9 + d, d, false};
            for (double E : {0.3, 8.0, 400.0}) {
                CHECK_THAT(phase_space_volume({dom, s, E}),
                           WithinRel(weyl_counting_estimate(dom, s, E), 1e-14));
            }
        }
    }
    CHECK_THAT(phase_space_volume({kSquare, 1.0, 8.0}),
               WithinRel(2.0 * std::numbers::pi, 1e-13));
    CHECK_THROWS_AS(phase_space_volume({kSquare, 1.0, 0.0}), std::domain_error);
}

TEST_CASE("seeded monte carlo oracle for the phase-space volume", "[semiclassical]") {
    const DomainSpec dom{2.0, 2, false};
    const double s = 0.75;
    const double E = 5.0;
    const auto mc = reference::mc_phase_space_volume(dom.volume, dom.d, s, E, 1'000'000, 1234);
    const double exact = phase_space_volume({dom, s, E});
    CHECK(std::abs(mc.value - exact) <= 3.0 * mc.std_error);
    // deterministic for a fixed seed
    const auto again = reference::mc_phase_space_volume(dom.volume, dom.d, s, E, 1'000'000, 1234);
    CHECK(mc.value == again.value);
}

TEST_CASE("classical free sum equals the lattice asymptotic sum", "[semiclassical]") {
    CHECK(classical_free_sum(kSquare, 1.0, 0) == 0.0);
    CHECK_THAT(classical_free_sum(kSquare, 1.0, 5), WithinRel(50.0 / std::numbers::pi, 1e-13));
    for (int d : {1, 2, 3, 4}) {
        for (double s : {0.55, 0.7, 0.9, 1.0}) {
            const DomainSpec dom{0.4 + 1.3 * d, d, false};
            for (std::uint64_t N : {1ull, 13ull, 999ull, 123456ull}) {
                CHECK_THAT(classical_free_sum(dom, s, N),
                           WithinRel(asymptotic_sum(dom, s, N), 1e-12));
            }
        }
    }
}

TEST_CASE("polya-weyl scale factor", "[semiclassical]") {
    const auto f = polya_weyl_scale_factor(2, 1.0);
    CHECK_THAT(f.lambda, WithinRel(0.5, 1e-14));
    CHECK_THAT(f.sum_ratio, WithinRel(4.0, 1e-14));
    for (int d = 1; d <= 10; ++d) {
        for (double s : {0.55, 0.75, 1.0}) {
            const auto g = polya_weyl_scale_factor(d, s);
            CHECK(g.lambda > 0.0);
            CHECK(g.lambda < 1.0);
            CHECK(g.sum_ratio > 1.0);
            CHECK_THAT(g.sum_ratio, WithinRel(std::pow(g.lambda, -2.0 * s), 1e-13));
        }
    }
}

TEST_CASE("radial moment integral", "[semiclassical]") {
    for (int d : {1, 2, 3, 6}) {
        for (double s : {0.6, 0.85, 1.0}) {
            CHECK_THAT(radial_moment_integral(d, s, 0.0), WithinRel(1.0 / d, 1e-13));
            CHECK_THAT(radial_moment_integral(d, s, 1.0),
                       WithinRel(2.0 * s / (d * (d + 2.0 * s)), 1e-13));
        }
    }
    CHECK_THAT(radial_moment_integral(2, 0.75, 2.5),
               WithinRel(radial_moment_quadrature(2, 0.75, 2.5), 1e-10));
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<int> d_draw(1, 6);
    std::uniform_real_distribution<double> s_draw(0.55, 1.0);
    std::uniform_real_distribution<double> g_draw(0.0, 3.0);
    for (int i = 0; i < 50; ++i) {
        const int d = d_draw(rng);
        const double s = s_draw(rng);
        const double gamma = g_draw(rng);
        CHECK_THAT(radial_moment_integral(d, s, gamma),
                   WithinRel(radial_moment_quadrature(d, s, gamma), 1e-10));
    }
}

TEST_CASE("bound-state moment sums", "[semiclassical]") {
    // box well: closed indicator integral
    PotentialSpec box;
    box.d = 2;
    box.s = 0.8;
    box.gamma = 1.5;
    box.profile = AnalyticWell{WellFamily::box, 3.0, {0.5, 1.5}, {0.0, -1.0}};
    const double power = box.gamma + box.d / (2.0 * box.s);
    const double support = (2.0 * 0.5) * (2.0 * 1.5);
    CHECK_THAT(bound_state_moment_sum(box),
               WithinRel(lieb_thirring_classical_constant(box.gamma, box.d, box.s) *
                         std::pow(3.0, power) * support, 1e-12));

    // gamma = 0: semiclassical bound-state count
    PotentialSpec counting = box;
    counting.gamma = 0.0;
    CHECK_THAT(bound_state_moment_sum(counting),
               WithinRel(lieb_thirring_classical_constant(0.0, box.d, box.s) *
                         std::pow(3.0, box.d / (2.0 * box.s)) * support, 1e-12));

    // positive homogeneity: V -> cV scales by c^{gamma + d/2s}
    PotentialSpec gauss;
    gauss.d = 1;
    gauss.s = 0.75;
    gauss.gamma = 1.0;
    gauss.profile = AnalyticWell{WellFamily::gaussian, 1.7, {0.9}, {0.2}};
    PotentialSpec scaled = gauss;
    std::get<AnalyticWell>(scaled.profile).depth *= 3.0;
    const double p_exp = gauss.gamma + gauss.d / (2.0 * gauss.s);
    CHECK_THAT(bound_state_moment_sum(scaled),
               WithinRel(std::pow(3.0, p_exp) * bound_state_moment_sum(gauss), 1e-13));

    // direct phase-space quadrature oracle at d = 1
    CHECK_THAT(bound_state_moment_sum(gauss),
               WithinRel(bound_state_moment_quadrature_1d(gauss), 1e-6));
    PotentialSpec bump = gauss;
    bump.profile = AnalyticWell{WellFamily::bump, 2.0, {1.1}, {0.0}};
    CHECK_THAT(bound_state_moment_sum(bump),
               WithinRel(bound_state_moment_quadrature_1d(bump), 1e-6));

    CHECK_THROWS_AS(bound_state_moment_quadrature_1d(box), std::domain_error);
    PotentialSpec bad = gauss;
    bad.gamma = -1.0;
    CHECK_THROWS_AS(bound_state_moment_sum(bad), std::domain_error);
}

TEST_CASE("sampled potential grids", "[semiclassical]") {
    // sample the box well on a grid; the cell sum reproduces the closed form
    SampledWell grid;
    grid.dims = {1000};
    grid.origin = {-1.0};
    grid.spacing = {0.002};
    grid.data.assign(1000, 2.0);
    PotentialSpec spec;
    spec.d = 1;
    spec.s = 1.0;
    spec.gamma = 1.0;
    spec.profile = grid;
    const double power = 1.0 + 1.0 / 2.0;
    CHECK_THAT(potential_power_integral(spec, power),
               WithinRel(std::pow(2.0, power) * 2.0, 1e-12));
    CHECK_THAT(bound_state_moment_sum(spec),
               WithinRel(lieb_thirring_classical_constant(1.0, 1, 1.0) *
                         std::pow(2.0, power) * 2.0, 1e-12));
}

TEST_CASE("gamma=1 coefficient variants differ by the factor d", "[semiclassical]") {
    for (int d : {1, 2, 3, 5}) {
        for (double s : {0.6, 0.8, 1.0}) {
            const auto v = well_sum_gamma1_coefficients(d, s);
            CHECK_THAT(v.as_printed, WithinRel(d * v.moment_theorem, 1e-13));
            // quadrature arbitrates for the moment-theorem reading
            const double quad = std::pow(2.0 * std::numbers::pi, -d) * sphere_volume(d, s) *
                                radial_moment_quadrature(d, s, 1.0);
            CHECK_THAT(quad, WithinRel(v.moment_theorem, 1e-9));
        }
    }
}

TEST_CASE("deformed sphere volume", "[semiclassical]") {
    CHECK_THAT(deformed_sphere_volume(2, 1.0, 1.0), WithinRel(std::numbers::pi, 1e-13));
    for (double s : {0.55, 0.8, 1.0}) {
        CHECK_THAT(deformed_sphere_volume(1, s, 2.2), WithinRel(4.4, 1e-13));
    }
    for (int d = 1; d <= 6; ++d) {
        for (double s : {0.55, 0.7, 0.9, 1.0}) {
            for (double R : {0.5, 1.0, 2.5}) {
                CHECK_THAT(deformed_sphere_volume(d, s, R),
                           WithinRel(std::pow(R, d) * ball_volume(d, s), 1e-12));
            }
        }
    }
    CHECK_THAT(deformed_sphere_volume_jacobian_2d(0.7, 1.3),
               WithinRel(deformed_sphere_volume(2, 0.7, 1.3), 1e-8));
    CHECK_THROWS_AS(deformed_sphere_volume(2, 1.0, -1.0), std::domain_error);
}
