#pragma once

// Closed-form asymptotics and inequalities for the counting function and
// eigenvalue sums, plus a violation-scan harness against the exact spectrum.
// All bounds depend on the domain only through its volume.

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracspec/specfun.hpp"
#include "fracspec/spectrum.hpp"

namespace fracspec {

struct DomainSpec {
    double volume = 1.0; // |Omega| > 0
    int d = 1;
    bool tiling = false; // hypercubes tile

    void validate() const {
        detail::require_dimension(d, kMaxDimension);
        if (!(volume > 0.0) || !std::isfinite(volume)) {
            throw std::domain_error("DomainSpec: volume must be positive");
        }
    }

    static DomainSpec hypercube(const SpectralParams& p) {
        return DomainSpec{std::pow(p.L, static_cast<double>(p.d)), p.d, true};
    }
};

/// A bound "fails" only when violated by more than this relative tolerance.
inline constexpr double kBoundViolationTolerance = 1e-9;

/// One bound-vs-exact comparison.  `margin` is oriented so that a satisfied
/// inequality has margin >= 0 regardless of the bound's direction.
struct BoundReport {
    std::string quantity;
    std::string param_point;
    double exact = 0.0;
    double bound = 0.0; // bound or asymptote value
    double margin = 0.0;
    bool satisfied = true;
};

namespace detail {

inline BoundReport make_report(std::string quantity, std::string point, double exact,
                               double bound, bool bound_is_lower) {
    BoundReport r;
    r.quantity = std::move(quantity);
    r.param_point = std::move(point);
    r.exact = exact;
    r.bound = bound;
    r.margin = bound_is_lower ? exact - bound : bound - exact;
    const double scale = std::max({1.0, std::abs(exact), std::abs(bound)});
    r.satisfied = r.margin >= -kBoundViolationTolerance * scale;
    return r;
}

} // namespace detail

/// Leading Weyl term (2pi)^{-d} |Omega| |A_{d-1,2s}|/d E^{d/2s}.
inline double weyl_counting_estimate(const DomainSpec& dom, double s, double E) {
    dom.validate();
    detail::require_order(s);
    if (!(E >= 0.0) || !std::isfinite(E)) {
        throw std::domain_error("weyl_counting_estimate: E must be >= 0");
    }
    if (E == 0.0) return 0.0;
    const double a = static_cast<double>(dom.d) / (2.0 * s);
    return std::pow(2.0 * std::numbers::pi, -dom.d) * dom.volume * ball_volume(dom.d, s) *
           std::exp(a * std::log(E));
}

/// Asymptotic n-th eigenvalue (2pi)^{2s} (n d / (|A||Omega|))^{2s/d}; the
/// functional inverse of the Weyl estimate.
inline double asymptotic_eigenvalue(const DomainSpec& dom, double s, std::uint64_t n) {
    dom.validate();
    detail::require_order(s);
    if (n < 1) throw std::domain_error("asymptotic_eigenvalue: n must be >= 1");
    const double ratio = static_cast<double>(n) /
                         (ball_volume(dom.d, s) * dom.volume);
    return std::pow(2.0 * std::numbers::pi, 2.0 * s) *
           std::exp((2.0 * s / dom.d) * std::log(ratio));
}

/// Asymptotic sum of the first N eigenvalues,
/// (2pi)^{2s} d/(d+2s) (d/(|A||Omega|))^{2s/d} N^{1+2s/d}.
inline double asymptotic_sum(const DomainSpec& dom, double s, std::uint64_t N) {
    dom.validate();
    detail::require_order(s);
    if (N == 0) return 0.0;
    const double d = static_cast<double>(dom.d);
    const double ratio = 1.0 / (ball_volume(dom.d, s) * dom.volume);
    return std::pow(2.0 * std::numbers::pi, 2.0 * s) * (d / (d + 2.0 * s)) *
           std::exp((2.0 * s / d) * std::log(ratio)) *
           std::exp((1.0 + 2.0 * s / d) * std::log(static_cast<double>(N)));
}

/// Polya lower bound for tiling domains: E_n >= (2pi)^{2s}(nd/(|A||Omega|))^{2s/d}.
inline double polya_lower_bound(const DomainSpec& dom, double s, std::uint64_t n) {
    if (!dom.tiling) {
        throw std::domain_error("polya_lower_bound: domain must be tiling");
    }
    return asymptotic_eigenvalue(dom, s, n);
}

/// Berezin-Li-Yau-type lower bound on S(N); valid for any open bounded
/// simply connected domain, same closed form as the asymptotic sum.
inline double bly_sum_lower_bound(const DomainSpec& dom, double s, std::uint64_t N) {
    return asymptotic_sum(dom, s, N);
}

/// Upper bound on the counting function,
/// (2pi)^{-d} ((d+2s)/d)^{d/2s} (|A||Omega|/d) z^{d/2s}.
inline double counting_upper_bound(const DomainSpec& dom, double s, double z) {
    dom.validate();
    detail::require_order(s);
    if (!(z >= 0.0) || !std::isfinite(z)) {
        throw std::domain_error("counting_upper_bound: z must be >= 0");
    }
    if (z == 0.0) return 0.0;
    const double d = static_cast<double>(dom.d);
    const double a = d / (2.0 * s);
    return std::pow(2.0 * std::numbers::pi, -dom.d) *
           std::exp(a * std::log((d + 2.0 * s) / d)) * ball_volume(dom.d, s) * dom.volume *
           std::exp(a * std::log(z));
}

/// Violation scan of every closed-form inequality against the exact
/// hypercube spectrum: Polya per eigenvalue, BLY per partial sum, counting
/// upper bound and Weyl ratio per grid energy.  Reports come back in a fixed
/// deterministic order; grid evaluations may run in parallel.
inline std::vector<BoundReport> scan_bounds(const SpectralParams& p, std::uint64_t n_max,
                                            std::span<const double> E_grid,
                                            unsigned threads = 1) {
    p.validate();
    const DomainSpec dom = DomainSpec::hypercube(p);
    std::vector<BoundReport> reports;
    if (n_max == 0 && E_grid.empty()) return reports;

    auto point_tag = [&](const std::string& extra) {
        return "d=" + std::to_string(p.d) + ";s=" + std::to_string(p.s) +
               ";L=" + std::to_string(p.L) + ";" + extra;
    };

    if (n_max > 0) {
        SpectrumSlice slice = enumerate_smallest(p, n_max);
        double running = 0.0;
        for (std::uint64_t n = 1; n <= n_max; ++n) {
            const double exact = slice.value(n - 1);
            running += exact;
            reports.push_back(detail::make_report(
                "polya_eigenvalue", point_tag("n=" + std::to_string(n)), exact,
                polya_lower_bound(dom, p.s, n), /*bound_is_lower=*/true));
            reports.push_back(detail::make_report(
                "bly_sum", point_tag("N=" + std::to_string(n)), running,
                bly_sum_lower_bound(dom, p.s, n), /*bound_is_lower=*/true));
        }
    }

    if (!E_grid.empty()) {
        std::vector<std::uint64_t> counts(E_grid.size());
        detail::for_each_chunk(E_grid.size(), 1, threads,
                               [&](std::size_t, std::size_t i, std::size_t) {
            counts[i] = counting_function(p, E_grid[i]);
        });
        for (std::size_t i = 0; i < E_grid.size(); ++i) {
            const double exact = static_cast<double>(counts[i]);
            const std::string tag = point_tag("E=" + std::to_string(E_grid[i]));
            reports.push_back(detail::make_report("counting_upper", tag, exact,
                                                  counting_upper_bound(dom, p.s, E_grid[i]),
                                                  /*bound_is_lower=*/false));
            // For tiling domains the Weyl leading term is itself an upper
            // bound (it equals the Polya bound inverted), so the ratio scan
            // doubles as a violation check.
            reports.push_back(detail::make_report("weyl_ratio", tag, exact,
                                                  weyl_counting_estimate(dom, p.s, E_grid[i]),
                                                  /*bound_is_lower=*/false));
        }
    }
    return reports;
}

} // namespace fracspec
