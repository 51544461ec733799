#pragma once

// Special-function kernels and the closed-form geometric constants of the
// 2s-deformed norm ball.  Everything here is a ratio of gamma functions and
// is evaluated in the log domain so that exponents like d/2s ~ 200 stay
// finite.

#include <cmath>
#include <stdexcept>
#include <string>

#include "fracspec/errors.hpp"

namespace fracspec {

namespace detail {

// Lanczos approximation, g = 7, n = 9 (Godfrey coefficients).
inline constexpr double kLanczosG = 7.0;
inline constexpr double kLanczosCoeff[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

inline void require_positive(double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::domain_error(std::string(name) + " must be positive and finite");
    }
}

inline void require_dimension(int d, int max_d = 64) {
    if (d < 1 || d > max_d) {
        throw std::domain_error("dimension d must be in [1, " + std::to_string(max_d) + "]");
    }
}

inline void require_order(double s) {
    if (!(s > 0.0) || !(s <= 1.0) || !std::isfinite(s)) {
        throw std::domain_error("order s must lie in (0, 1]");
    }
}

} // namespace detail

/// True when s lies in the strict range (1/2, 1] for which the spectral
/// inequalities are stated; the library itself accepts all s in (0, 1].
inline bool strict_order_range(double s) { return s > 0.5 && s <= 1.0; }

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x) {
    detail::require_positive(x, "log_gamma argument");
    const double z = x;
    double acc = detail::kLanczosCoeff[0];
    for (int i = 1; i < 9; ++i) {
        acc += detail::kLanczosCoeff[i] / (z - 1.0 + static_cast<double>(i));
    }
    const double t = z + detail::kLanczosG - 0.5;
    constexpr double half_log_two_pi = 0.91893853320467274178;
    return half_log_two_pi + (z - 0.5) * std::log(t) - t + std::log(acc);
}

/// Beta function B(x, y) = Gamma(x)Gamma(y)/Gamma(x+y), x, y > 0.
inline double beta(double x, double y) {
    detail::require_positive(x, "beta argument x");
    detail::require_positive(y, "beta argument y");
    return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

/// Volume of the unit ball of the norm (sum_i |x_i|^{2s})^{1/(2s)}:
/// (2 Gamma(1 + 1/2s))^d / Gamma(1 + d/2s).
inline double ball_volume(int d, double s) {
    detail::require_dimension(d);
    detail::require_order(s);
    const double inv2s = 1.0 / (2.0 * s);
    const double log_vol = d * (std::log(2.0) + log_gamma(1.0 + inv2s))
                         - log_gamma(1.0 + d * inv2s);
    return std::exp(log_vol);
}

/// Surface constant |A_{d-1,2s}| = d |B_{d,2s}| of the 2s-deformed unit sphere.
inline double sphere_volume(int d, double s) {
    return static_cast<double>(d) * ball_volume(d, s);
}

/// Classical Riesz-mean constant
/// L^cl_{rho,d} = pi^{-d} Gamma^d(1 + 1/2s) Gamma(1 + rho) / Gamma(1 + rho + d/2s).
inline double riesz_classical_constant(double rho, int d, double s) {
    detail::require_dimension(d);
    detail::require_order(s);
    if (!(rho >= 0.0) || !std::isfinite(rho)) {
        throw std::domain_error("riesz_classical_constant: rho must be >= 0");
    }
    const double inv2s = 1.0 / (2.0 * s);
    constexpr double log_pi = 1.1447298858494001741;
    const double log_c = -d * log_pi + d * log_gamma(1.0 + inv2s)
                       + log_gamma(1.0 + rho) - log_gamma(1.0 + rho + d * inv2s);
    return std::exp(log_c);
}

/// Classical phase-space constant for moment sums of the Schroedinger operator:
/// (2 pi)^{-d} (2 Gamma(1 + 1/2s))^d Gamma(1 + gamma) / Gamma(1 + gamma + d/2s).
inline double lieb_thirring_classical_constant(double gamma, int d, double s) {
    detail::require_dimension(d);
    detail::require_order(s);
    if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
        throw std::domain_error("lieb_thirring_classical_constant: gamma must be >= 0");
    }
    const double inv2s = 1.0 / (2.0 * s);
    constexpr double log_two_pi = 1.8378770664093454836;
    const double log_c = -d * log_two_pi + d * (std::log(2.0) + log_gamma(1.0 + inv2s))
                       + log_gamma(1.0 + gamma) - log_gamma(1.0 + gamma + d * inv2s);
    return std::exp(log_c);
}

} // namespace fracspec
