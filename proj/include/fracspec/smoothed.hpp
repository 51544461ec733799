#pragma once

// Riesz means R_rho(E) = sum_j (E - E_j)_+^rho and the partition function
// Z(t) = sum_j exp(-E_j t): exact sums over spectrum slices, their
// asymptotic forms and upper bounds, plus quadrature verification of the
// Riemann-Liouville iteration and the Laplace-transform identity.

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "fracspec/bounds.hpp"
#include "fracspec/quadrature.hpp"
#include "fracspec/specfun.hpp"
#include "fracspec/spectrum.hpp"

namespace fracspec {

struct RieszQuery {
    double rho = 1.0; // order >= 0
    double E = 1.0;   // energy cutoff > 0
    // Convention for rho = 0 at the boundary E_j = E: (E - E_j)_+^0 is
    // ambiguous there; the default counts strictly below E.
    Boundary rho0_boundary = Boundary::strict;

    void validate() const {
        if (!(rho >= 0.0) || !std::isfinite(rho)) {
            throw std::domain_error("RieszQuery: rho must be >= 0");
        }
        if (!(E > 0.0) || !std::isfinite(E)) {
            throw std::domain_error("RieszQuery: E must be positive");
        }
    }
};

struct HeatQuery {
    double t = 1.0;                 // inverse-energy units, > 0
    double tail_tolerance = 1e-10;  // absolute certified truncation budget

    void validate() const {
        if (!(t > 0.0) || !std::isfinite(t)) {
            throw std::domain_error("HeatQuery: t must be positive");
        }
        if (!(tail_tolerance > 0.0)) {
            throw std::domain_error("HeatQuery: tail_tolerance must be positive");
        }
    }
};

namespace detail {

inline void require_complete_up_to(const SpectrumSlice& slice, double E, const char* who) {
    const double cutoff = slice.energy_cutoff();
    if (E > cutoff + kBoundarySlackScale * std::max(1.0, std::abs(E))) {
        throw incomplete_spectrum_error(std::string(who) +
                                        ": slice cutoff below requested energy");
    }
}

// Plain exponential sum over a slice; no tail certification.
inline double exp_sum(const SpectrumSlice& slice, double t, unsigned threads) {
    auto vals = slice.values();
    return sum_generate(vals.size(), [&](std::size_t i) { return std::exp(-vals[i] * t); },
                        threads);
}

// Upper bound on sum_{E_j > E_cut} exp(-E_j t) from the counting upper
// bound N(z) <= K z^{d/2s}:  tail <= K t^{-d/2s} Gamma(1 + d/2s, E_cut t).
inline double heat_tail_bound(const SpectralParams& p, double E_cut, double t) {
    const DomainSpec dom = DomainSpec::hypercube(p);
    const double a = static_cast<double>(p.d) / (2.0 * p.s);
    const double coeff = counting_upper_bound(dom, p.s, 1.0);
    return coeff * std::exp(-a * std::log(t)) *
           boost::math::tgamma(1.0 + a, std::max(E_cut, 0.0) * t);
}

} // namespace detail

/// Exact Riesz mean of the slice.  Requires the slice to contain every
/// eigenvalue up to q.E.
inline double riesz_mean(const SpectrumSlice& slice, const RieszQuery& q,
                         unsigned threads = 1) {
    q.validate();
    detail::require_complete_up_to(slice, q.E, "riesz_mean");
    auto vals = slice.values();
    if (q.rho == 0.0) {
        const double threshold = slice.params().threshold(q.E, q.rho0_boundary);
        return detail::sum_generate(vals.size(),
                                    [&](std::size_t i) { return vals[i] <= threshold ? 1.0 : 0.0; },
                                    threads);
    }
    return detail::sum_generate(vals.size(), [&](std::size_t i) {
        const double w = q.E - vals[i];
        return w > 0.0 ? std::pow(w, q.rho) : 0.0;
    }, threads);
}

/// Riesz mean computed directly from the lattice, without materializing a
/// slice; deterministic for any thread count.
inline double riesz_mean_auto(const SpectralParams& p, const RieszQuery& q,
                              unsigned threads = 1) {
    q.validate();
    if (q.rho == 0.0) {
        return static_cast<double>(counting_function(p, q.E, q.rho0_boundary, threads));
    }
    return transform_sum(p, q.E, Boundary::inclusive, [&](double v) {
        const double w = q.E - v;
        return w > 0.0 ? std::pow(w, q.rho) : 0.0;
    }, threads);
}

/// Asymptote R_rho(E) ~ L^cl_{rho,d} |Omega| E^{rho + d/2s}.
inline double riesz_asymptote(const DomainSpec& dom, double s, const RieszQuery& q) {
    dom.validate();
    q.validate();
    const double a = static_cast<double>(dom.d) / (2.0 * s);
    return riesz_classical_constant(q.rho, dom.d, s) * dom.volume *
           std::exp((q.rho + a) * std::log(q.E));
}

/// Upper bound on R_rho for rho > 1:
/// (2pi)^{-d} ((d+2s)/d)^{d/2s} (|A||Omega|/d) rho B(rho, 1 + d/2s) E^{rho + d/2s}.
inline double riesz_upper_bound(const DomainSpec& dom, double s, const RieszQuery& q) {
    dom.validate();
    q.validate();
    if (!(q.rho > 1.0)) {
        throw std::domain_error("riesz_upper_bound: requires rho > 1");
    }
    const double a = static_cast<double>(dom.d) / (2.0 * s);
    return counting_upper_bound(dom, s, 1.0) * q.rho * beta(q.rho, 1.0 + a) *
           std::exp((q.rho + a) * std::log(q.E));
}

struct HeatTraceResult {
    double value = 0.0;
    double energy_cutoff = 0.0;
    double tail_bound = 0.0;
    std::uint64_t terms = 0;
};

/// Partition function of a slice with a certified truncation error: the
/// dropped tail is bounded through the counting upper bound and must stay
/// below q.tail_tolerance.
inline double partition_function(const SpectrumSlice& slice, const HeatQuery& q,
                                 unsigned threads = 1) {
    q.validate();
    const double tail = detail::heat_tail_bound(slice.params(), slice.certified_cutoff(), q.t);
    if (!(tail <= q.tail_tolerance)) {
        throw truncation_error("partition_function: certified tail " + std::to_string(tail) +
                               " exceeds tolerance (slice too short for this t)");
    }
    return detail::exp_sum(slice, q.t, threads);
}

/// Partition sum of an explicitly complete (e.g. toy) spectrum; no tail
/// certificate is applied.
inline double partition_function_complete(const SpectrumSlice& slice, double t,
                                          unsigned threads = 1) {
    HeatQuery q{t};
    q.validate();
    return detail::exp_sum(slice, t, threads);
}

/// Streaming partition function: picks the energy cutoff from the certified
/// tail bound and folds exp(-E_j t) over the lattice without materializing
/// the slice.
inline HeatTraceResult partition_function_auto(const SpectralParams& p, const HeatQuery& q,
                                               unsigned threads = 1,
                                               std::uint64_t max_points = 2'000'000'000ULL) {
    p.validate();
    q.validate();
    const double a = static_cast<double>(p.d) / (2.0 * p.s);
    double E_cut = std::max((a + 1.0) / q.t, static_cast<double>(p.d) * p.term(1));
    double tail = detail::heat_tail_bound(p, E_cut, q.t);
    for (int step = 0; !(tail <= q.tail_tolerance); ++step) {
        if (step > 200) {
            throw truncation_error("partition_function_auto: tail does not converge");
        }
        E_cut *= 1.5;
        tail = detail::heat_tail_bound(p, E_cut, q.t);
    }
    const DomainSpec dom = DomainSpec::hypercube(p);
    if (counting_upper_bound(dom, p.s, E_cut) > static_cast<double>(max_points)) {
        throw resource_limit_error("partition_function_auto: cutoff requires too many terms");
    }
    HeatTraceResult r;
    r.energy_cutoff = E_cut;
    r.tail_bound = tail;
    r.terms = counting_function(p, E_cut, Boundary::inclusive, threads);
    r.value = transform_sum(p, E_cut, Boundary::inclusive,
                            [&](double v) { return std::exp(-v * q.t); }, threads);
    return r;
}

/// Leading heat-trace term (2pi)^{-d} |Omega| (2 Gamma(1+1/2s))^d t^{-d/2s}.
inline double heat_asymptote(const DomainSpec& dom, double s, double t) {
    dom.validate();
    detail::require_order(s);
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw std::domain_error("heat_asymptote: t must be positive");
    }
    const double a = static_cast<double>(dom.d) / (2.0 * s);
    const double log_c = -dom.d * std::log(2.0 * std::numbers::pi) +
                         dom.d * (std::log(2.0) + log_gamma(1.0 + 1.0 / (2.0 * s)));
    return dom.volume * std::exp(log_c - a * std::log(t));
}

/// Upper bound Z(t) <= (2pi)^{-d} ((d+2s)/d)^{d/2s} (|A||Omega|/d)
/// Gamma(1+d/2s) t^{-d/2s}; exceeds the asymptote by the t-independent
/// factor ((d+2s)/d)^{d/2s}.
inline double heat_upper_bound(const DomainSpec& dom, double s, double t) {
    dom.validate();
    detail::require_order(s);
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw std::domain_error("heat_upper_bound: t must be positive");
    }
    const double a = static_cast<double>(dom.d) / (2.0 * s);
    return counting_upper_bound(dom, s, 1.0) * std::exp(log_gamma(1.0 + a)) *
           std::exp(-a * std::log(t));
}

/// Verifies the Riemann-Liouville iteration
///   R_{rho+delta}(E) = (1/B(1+rho,delta)) int_0^E (E-t)^{delta-1} R_rho(t) dt
/// by adaptive quadrature with forced subdivision at the eigenvalue kinks.
/// For delta < 1 the endpoint singularity is removed exactly by the change
/// of variables u = (E-t)^delta.  Returns the relative residual.
inline double riesz_iteration_check(const SpectrumSlice& slice, double rho, double delta,
                                    double E, const QuadratureConfig& cfg = {}) {
    if (!(delta > 0.0) || !std::isfinite(delta)) {
        throw std::domain_error("riesz_iteration_check: delta must be positive");
    }
    RieszQuery upper{rho + delta, E};
    upper.validate();
    detail::require_complete_up_to(slice, E, "riesz_iteration_check");

    const double lhs = riesz_mean(slice, upper);

    auto riesz_at = [&](double t) {
        if (t <= 0.0) return 0.0;
        double acc = 0.0;
        if (rho == 0.0) {
            for (double v : slice.values()) acc += v < t ? 1.0 : 0.0;
        } else {
            for (double v : slice.values()) {
                const double w = t - v;
                if (w > 0.0) acc += std::pow(w, rho);
            }
        }
        return acc;
    };

    std::vector<double> kinks;
    for (double v : slice.values()) {
        if (v < E) kinks.push_back(v);
    }

    double integral = 0.0;
    if (delta >= 1.0) {
        integral = integrate_with_breakpoints(
            [&](double t) { return std::pow(E - t, delta - 1.0) * riesz_at(t); },
            0.0, E, kinks, cfg).value;
    } else {
        // u = (E - t)^delta; the weight (E-t)^{delta-1} dt becomes du/delta.
        std::vector<double> u_kinks;
        for (double v : kinks) u_kinks.push_back(std::pow(E - v, delta));
        integral = integrate_with_breakpoints(
            [&](double u) { return riesz_at(E - std::pow(u, 1.0 / delta)); },
            0.0, std::pow(E, delta), u_kinks, cfg).value / delta;
    }
    const double rhs = integral / beta(1.0 + rho, delta);
    return std::abs(lhs - rhs) / std::max(std::abs(lhs), 1e-300);
}

/// Verifies the Laplace-transform identity
///   int_0^inf e^{-E t} R_rho(E) dE = Gamma(1+rho) t^{-(1+rho)} Z(t)
/// for rho > 1 on the (complete) spectrum carried by the slice.  The
/// integral is truncated where its certified tail drops below 1e-9 of the
/// right-hand side.  Returns the relative residual.
inline double laplace_identity_check(const SpectrumSlice& slice, double rho, double t,
                                     const QuadratureConfig& cfg = {}) {
    if (!(rho > 1.0) || !std::isfinite(rho)) {
        throw std::domain_error("laplace_identity_check: requires rho > 1");
    }
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw std::domain_error("laplace_identity_check: t must be positive");
    }
    if (slice.size() == 0) {
        throw std::domain_error("laplace_identity_check: empty spectrum");
    }

    const double z = detail::exp_sum(slice, t, 1);
    const double rhs = std::exp(log_gamma(1.0 + rho) - (1.0 + rho) * std::log(t)) * z;

    const double n = static_cast<double>(slice.size());
    const double top = slice.values().back();
    double E_max = top + (rho + 20.0) / t;
    for (int step = 0;; ++step) {
        // (E - E_j)_+^rho <= E^rho, so the tail beyond E_max is at most
        // n Gamma(1+rho, E_max t) / t^{1+rho}.
        const double tail = n * boost::math::tgamma(1.0 + rho, E_max * t) /
                            std::exp((1.0 + rho) * std::log(t));
        if (tail <= 1e-9 * std::max(rhs, 1e-300)) break;
        if (step > 60) {
            throw truncation_error("laplace_identity_check: tail does not converge");
        }
        E_max *= 1.5;
    }

    auto riesz_at = [&](double x) {
        double acc = 0.0;
        for (double v : slice.values()) {
            const double w = x - v;
            if (w > 0.0) acc += std::pow(w, rho);
        }
        return acc;
    };
    std::vector<double> kinks(slice.values().begin(), slice.values().end());
    const double lhs = integrate_with_breakpoints(
        [&](double x) { return std::exp(-x * t) * riesz_at(x); },
        0.0, E_max, kinks, cfg).value;
    return std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
}

} // namespace fracspec
