#pragma once

// Test-only oracles, independent of the library's evaluation paths: special
// functions by direct quadrature of their defining integrals, and the
// cross-polytope volume by recursive slab integration.

#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracles {

// Gamma(x) from Euler's integral, split at t = 1 so both the endpoint
// behaviour and the tail are handled by suited rules.
inline double gamma_by_quadrature(double x) {
    boost::math::quadrature::tanh_sinh<double> head;
    boost::math::quadrature::exp_sinh<double> tail;
    const double lo = head.integrate([&](double t) { return std::exp(-t) * std::pow(t, x - 1.0); },
                                     0.0, 1.0, 1e-14);
    const double hi = tail.integrate([&](double t) { return std::exp(-t) * std::pow(t, x - 1.0); },
                                     1.0, std::numeric_limits<double>::infinity(), 1e-14);
    return lo + hi;
}

// Beta from the trigonometric integral 2 int_0^{pi/2} sin^{2x-1} cos^{2y-1}.
inline double beta_by_trig_quadrature(double x, double y) {
    boost::math::quadrature::tanh_sinh<double> rule;
    return 2.0 * rule.integrate([&](double t) {
        return std::pow(std::sin(t), 2.0 * x - 1.0) * std::pow(std::cos(t), 2.0 * y - 1.0);
    }, 0.0, std::numbers::pi / 2.0, 1e-13);
}

// Volume of the l1 ball (cross-polytope) of radius R by recursive slab
// integration V_d(R) = 2 int_0^R V_{d-1}(R - x) dx.
inline double cross_polytope_volume(int d, double R) {
    if (R <= 0.0) return 0.0;
    if (d == 1) return 2.0 * R;
    using rule = boost::math::quadrature::gauss_kronrod<double, 31>;
    return 2.0 * rule::integrate([&](double x) { return cross_polytope_volume(d - 1, R - x); },
                                 0.0, R, 8, 1e-12);
}

// 1D factor of the deformed-Gaussian mass: 2 int_0^inf exp(-u^{2s}) du.
inline double profile_mass_1d(double s) {
    boost::math::quadrature::exp_sinh<double> rule;
    return 2.0 * rule.integrate([&](double u) { return std::exp(-std::pow(u, 2.0 * s)); },
                                1e-14);
}

} // namespace oracles
