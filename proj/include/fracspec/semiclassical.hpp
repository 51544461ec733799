#pragma once

// Phase-space integrals: free-particle volume and eigenvalue sums, the
// Weyl-vs-Polya rescaling factor, bound-state moment sums for potential
// wells, and the deformed-sphere volume identity.  Each closed form ships
// with its independent quadrature route.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracspec/bounds.hpp"
#include "fracspec/potential.hpp"
#include "fracspec/quadrature.hpp"
#include "fracspec/specfun.hpp"

namespace fracspec {

struct PhaseSpaceQuery {
    DomainSpec dom;
    double s = 1.0;
    double E_max = 1.0;

    void validate() const {
        dom.validate();
        detail::require_order(s);
        if (!(E_max > 0.0) || !std::isfinite(E_max)) {
            throw std::domain_error("PhaseSpaceQuery: E_max must be positive");
        }
    }
};

/// Volume of {(x, 2 pi k) : x in Omega, ||k||^{2s} <= E_max / (2pi)^{2s}} —
/// by construction the same closed form as the Weyl counting estimate.
inline double phase_space_volume(const PhaseSpaceQuery& q) {
    q.validate();
    return weyl_counting_estimate(q.dom, q.s, q.E_max);
}

/// Classical eigenvalue sum of the free particle whose phase-space volume
/// equals N: solve Vol(A) = N for E_max, then integrate ||2 pi k||^{2s}.
/// Coincides with asymptotic_sum(dom, s, N).
inline double classical_free_sum(const DomainSpec& dom, double s, std::uint64_t N) {
    dom.validate();
    detail::require_order(s);
    if (N == 0) return 0.0;
    const double E_max = asymptotic_eigenvalue(dom, s, N);
    const double d = static_cast<double>(dom.d);
    const double a = d / (2.0 * s);
    return std::pow(2.0 * std::numbers::pi, -dom.d) * dom.volume * sphere_volume(dom.d, s) /
           (d + 2.0 * s) * std::exp((1.0 + a) * std::log(E_max));
}

struct ScaleFactor {
    double lambda = 0.0;    // (d/(d+2s))^{(1/2s)(1+d/2s)}
    double sum_ratio = 0.0; // S_Polya / S_Weyl = lambda^{-2s}
};

/// Rescaling that carries the Weyl-normalized classical sum onto the
/// Polya-normalized one.
inline ScaleFactor polya_weyl_scale_factor(int d, double s) {
    detail::require_dimension(d, kMaxDimension);
    detail::require_order(s);
    const double dd = static_cast<double>(d);
    ScaleFactor f;
    f.lambda = std::pow(dd / (dd + 2.0 * s),
                        (1.0 / (2.0 * s)) * (1.0 + dd / (2.0 * s)));
    f.sum_ratio = std::pow(f.lambda, -2.0 * s);
    return f;
}

/// int_0^1 (1 - r^{2s})^gamma r^{d-1} dr = (1/2s) B(d/2s, gamma+1).
inline double radial_moment_integral(int d, double s, double gamma) {
    detail::require_dimension(d, kMaxDimension);
    detail::require_order(s);
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw std::domain_error("radial_moment_integral: gamma must be >= 0");
    }
    const double inv2s = 1.0 / (2.0 * s);
    return inv2s * beta(static_cast<double>(d) * inv2s, gamma + 1.0);
}

/// Independent quadrature route for radial_moment_integral (tanh-sinh, which
/// absorbs the endpoint behaviour at r = 1 for gamma < 1).
inline double radial_moment_quadrature(int d, double s, double gamma) {
    detail::require_dimension(d, kMaxDimension);
    detail::require_order(s);
    boost::math::quadrature::tanh_sinh<double> rule;
    return rule.integrate([&](double r) {
        const double base = 1.0 - std::pow(r, 2.0 * s);
        return (base <= 0.0 ? 0.0 : std::pow(base, gamma)) *
               std::pow(r, static_cast<double>(d - 1));
    }, 0.0, 1.0, 1e-12);
}

/// Semiclassical moment sum for a potential well:
/// C^class_{2s,gamma,d} * int V^{gamma + d/2s} dx.
inline double bound_state_moment_sum(const PotentialSpec& p, const QuadratureConfig& cfg = {}) {
    p.validate();
    const double power = p.gamma + static_cast<double>(p.d) / (2.0 * p.s);
    const double integral = potential_power_integral(p, power, cfg);
    return lieb_thirring_classical_constant(p.gamma, p.d, p.s) * integral;
}

/// Direct phase-space route at d = 1: the double quadrature
/// (2pi)^{-1} int dx int dk (V(x) - |2 pi k|^{2s})_+^gamma, momentum integral
/// resolved per x.  Independent of the gamma-function factorization.
inline double bound_state_moment_quadrature_1d(const PotentialSpec& p,
                                               const QuadratureConfig& cfg = {}) {
    p.validate();
    if (p.d != 1) {
        throw std::domain_error("bound_state_moment_quadrature_1d: requires d = 1");
    }
    auto momentum_integral = [&](double x) {
        const double v = p.value(std::span<const double>(&x, 1));
        if (v <= 0.0) return 0.0;
        const double k_star = std::exp(std::log(v) / (2.0 * p.s)) / (2.0 * std::numbers::pi);
        auto g = [&](double k) {
            const double w = v - std::pow(2.0 * std::numbers::pi * k, 2.0 * p.s);
            return w > 0.0 ? std::pow(w, p.gamma) : 0.0;
        };
        return 2.0 * integrate(g, 0.0, k_star, cfg).value;
    };
    double x_lo = 0.0, x_hi = 0.0;
    if (const auto* w = std::get_if<AnalyticWell>(&p.profile)) {
        const double reach = w->family == WellFamily::gaussian ? 12.0 : 1.0;
        x_lo = w->center[0] - reach * w->width[0];
        x_hi = w->center[0] + reach * w->width[0];
    } else {
        const auto& g = std::get<SampledWell>(p.profile);
        x_lo = g.origin[0];
        x_hi = g.origin[0] + g.spacing[0] * static_cast<double>(g.dims[0]);
    }
    return integrate(momentum_integral, x_lo, x_hi, cfg).value;
}

struct CoefficientVariants {
    double moment_theorem = 0.0; // (2pi)^{-d} |A| * 2s/(d(d+2s))
    double as_printed = 0.0;     // (2pi)^{-d} |A| * 2s/(d+2s)
};

/// The gamma = 1 bound-state energy-sum prefactor admits two readings that
/// differ by a factor d; the radial quadrature arbitrates in favour of the
/// first.  Both are reported.
inline CoefficientVariants well_sum_gamma1_coefficients(int d, double s) {
    detail::require_dimension(d, kMaxDimension);
    detail::require_order(s);
    const double dd = static_cast<double>(d);
    const double shell = std::pow(2.0 * std::numbers::pi, -d) * sphere_volume(d, s);
    CoefficientVariants c;
    c.moment_theorem = shell * 2.0 * s / (dd * (dd + 2.0 * s));
    c.as_printed = shell * 2.0 * s / (dd + 2.0 * s);
    return c;
}

/// Beta-product expression for the volume of the 2s-deformed sphere of
/// radius R: 2^d s^{-(d-1)} (R^d/d) 2^{-(d-1)} prod_{k=1}^{d-1} B(1/2s, k/2s).
/// The product telescopes to R^d |B_{d,2s}| (the deformed-ball volume); a
/// reading of it as R^d |A_{d-1,2s}| would be off by the factor d.
inline double deformed_sphere_volume(int d, double s, double R) {
    detail::require_dimension(d, kMaxDimension);
    detail::require_order(s);
    if (!(R >= 0.0) || !std::isfinite(R)) {
        throw std::domain_error("deformed_sphere_volume: R must be >= 0");
    }
    const double inv2s = 1.0 / (2.0 * s);
    double beta_product = 1.0;
    for (int k = 1; k <= d - 1; ++k) {
        beta_product *= beta(inv2s, static_cast<double>(k) * inv2s);
    }
    return 2.0 * std::pow(s, -(d - 1)) * std::pow(R, d) / static_cast<double>(d) *
           beta_product;
}

/// Low-dimensional oracle for deformed_sphere_volume: integrate the
/// coordinate-transform Jacobian |J| = (1/s) r (cos t sin t)^{1/s - 1} over
/// (0,R) x (0,pi/2) and multiply by the 2^d orthant count, d = 2.
inline double deformed_sphere_volume_jacobian_2d(double s, double R,
                                                 const QuadratureConfig& cfg = {}) {
    detail::require_order(s);
    if (!(R >= 0.0)) throw std::domain_error("deformed_sphere_volume_jacobian_2d: R >= 0");
    auto outer = [&](double theta) {
        auto inner = [&](double r) {
            return (1.0 / s) * r *
                   std::pow(std::cos(theta) * std::sin(theta), 1.0 / s - 1.0);
        };
        return integrate(inner, 0.0, R, cfg).value;
    };
    return 4.0 * integrate(outer, 0.0, std::numbers::pi / 2.0, cfg).value;
}

} // namespace fracspec
