#pragma once

// Coherent states G_{y,p}(x) = C exp(i<p,x-y>/hbar) exp(-||x-y||^{2s}/2 hbar^s)
// and their kinetic expectation <G, L_{2s,hbar} G> computed on the Fourier
// side.  The profile separates per axis, so the d-dimensional expectation
// reduces to one-dimensional momentum densities; those are obtained by a
// discretized unitary hbar-Fourier transform on symmetric grids whose extent
// follows a mass-capture rule (boundary density below 1e-12 of the peak).
// In the rescaled variables u = sqrt(hbar) v, p~ - p = sqrt(hbar) w the
// transform is hbar-free, so one density per order s serves a whole hbar
// sweep.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "fracspec/detail/parallel.hpp"
#include "fracspec/errors.hpp"
#include "fracspec/potential.hpp"
#include "fracspec/quadrature.hpp"
#include "fracspec/specfun.hpp"

namespace fracspec {

struct CoherentParams {
    int d = 1;                      // quadrature ops support d <= 2
    double s = 1.0;                 // order in (0, 1]
    double hbar = 1.0;              // > 0
    std::array<double, 2> k{1.0, 0.0}; // momentum p = 2 pi k
    std::array<double, 2> y{0.0, 0.0}; // center

    void validate() const {
        if (d < 1 || d > 2) throw std::domain_error("CoherentParams: d must be 1 or 2");
        if (!(s > 0.0) || !(s <= 1.0)) throw std::domain_error("CoherentParams: s in (0,1]");
        if (!(hbar > 0.0) || !std::isfinite(hbar)) {
            throw std::domain_error("CoherentParams: hbar must be positive");
        }
        for (int i = 0; i < d; ++i) {
            if (!std::isfinite(k[static_cast<std::size_t>(i)]) ||
                !std::isfinite(y[static_cast<std::size_t>(i)])) {
                throw std::domain_error("CoherentParams: k and y must be finite");
            }
        }
    }

    double momentum(int axis) const { return 2.0 * std::numbers::pi * k[static_cast<std::size_t>(axis)]; }
    double norm_2s_of_momentum() const {
        double acc = 0.0;
        for (int i = 0; i < d; ++i) {
            const double p = std::abs(momentum(i));
            if (p > 0.0) acc += std::pow(p, 2.0 * s);
        }
        return acc;
    }
};

/// Half-width of the position profile support in rescaled units: beyond it
/// the density |f|^2 = exp(-v^{2s}) is below 1e-12 of the peak with margin.
inline double profile_reach(double s) {
    return 1.5 * std::exp(std::log(std::log(1e12)) / (2.0 * s));
}

/// Pointwise coherent state value.
inline std::complex<double> coherent_profile(const CoherentParams& c,
                                             std::span<const double> x) {
    c.validate();
    if (static_cast<int>(x.size()) != c.d) {
        throw std::domain_error("coherent_profile: position size mismatch");
    }
    const double gamma0 = std::exp(log_gamma(1.0 + 1.0 / (2.0 * c.s)));
    const double norm = std::pow(2.0 * std::sqrt(c.hbar) * gamma0,
                                 -0.5 * static_cast<double>(c.d));
    double phase = 0.0;
    double decay = 0.0;
    for (int i = 0; i < c.d; ++i) {
        const double u = x[static_cast<std::size_t>(i)] - c.y[static_cast<std::size_t>(i)];
        phase += c.momentum(i) * u / c.hbar;
        if (u != 0.0) decay += std::pow(std::abs(u), 2.0 * c.s);
    }
    decay /= 2.0 * std::pow(c.hbar, c.s);
    return std::polar(norm * std::exp(-decay), phase);
}

/// |G|^2 mass by position-space quadrature (per-axis factors).  Analytic
/// value is exactly 1; the measured mass is reported, not assumed.
inline double normalization_mass(const CoherentParams& c, const QuadratureConfig& cfg = {}) {
    c.validate();
    QuadratureConfig tight = cfg;
    tight.rel_tolerance = std::min(cfg.rel_tolerance, 1e-12);
    const double gamma0 = std::exp(log_gamma(1.0 + 1.0 / (2.0 * c.s)));
    const double axis_norm = 1.0 / (2.0 * std::sqrt(c.hbar) * gamma0);
    const double reach = profile_reach(c.s) * std::sqrt(c.hbar);
    double mass = 1.0;
    for (int i = 0; i < c.d; ++i) {
        auto f = [&](double u) {
            return std::exp(-std::pow(std::abs(u), 2.0 * c.s) / std::pow(c.hbar, c.s));
        };
        mass *= axis_norm * 2.0 * integrate(f, 0.0, reach, tight).value;
    }
    return mass;
}

/// One-dimensional Fourier-side density |psi(w)|^2 of the rescaled profile
/// exp(-|v|^{2s}/2), sampled on a uniform half-grid w in [0, W] (the density
/// is even).  hbar-independent; shared across a sweep.
struct FourierSideDensity {
    double s = 1.0;
    double gamma0 = 1.0;   // Gamma(1 + 1/2s)
    double w_step = 0.0;
    std::vector<double> psi_sq; // |psi(n w_step)|^2, n = 0..N
    double mass = 0.0;          // (1/4 pi Gamma0) integral of psi_sq, ~1
    double discarded_mass = 0.0;

    double w_max() const { return w_step * static_cast<double>(psi_sq.size() - 1); }
};

namespace detail {

// psi(w) = 2 int_0^X cos(w v) exp(-v^{2s}/2) dv by trapezoid on the v-grid,
// cosines advanced by the two-term recurrence.
inline double transform_at(double w, double s, double v_step, std::size_t n_v) {
    const double theta = w * v_step;
    const double two_cos = 2.0 * std::cos(theta);
    double c_prev = 1.0; // cos(0)
    double c_curr = std::cos(theta);
    double acc = 0.5; // f(0)/2, f(0) = 1
    for (std::size_t n = 1; n <= n_v; ++n) {
        const double v = static_cast<double>(n) * v_step;
        acc += c_curr * std::exp(-0.5 * std::pow(v, 2.0 * s));
        const double c_next = two_cos * c_curr - c_prev;
        c_prev = c_curr;
        c_curr = c_next;
        if ((n & 0xfffu) == 0) { // refresh the recurrence
            c_prev = std::cos(static_cast<double>(n) * theta);
            c_curr = std::cos(static_cast<double>(n + 1) * theta);
        }
    }
    return 2.0 * v_step * acc;
}

} // namespace detail

/// Builds the momentum density for order s, expanding the window until the
/// boundary density falls below 1e-12 of the peak and the discarded-mass
/// estimate below 1e-10.
inline FourierSideDensity build_momentum_density(double s, unsigned threads = 0) {
    if (!(s > 0.0) || !(s <= 1.0)) throw std::domain_error("build_momentum_density: s in (0,1]");
    const double reach = profile_reach(s);

    auto v_step_for = [&](double W) { return std::min(0.005, 2.0 * std::numbers::pi / (16.0 * W)); };
    const double psi0 = detail::transform_at(0.0, s, 0.005, static_cast<std::size_t>(reach / 0.005));

    double W = 0.0;
    double boundary_sq = 0.0;
    for (double cand : {8.0, 16.0, 32.0, 64.0, 128.0, 192.0, 256.0, 320.0, 384.0, 512.0, 768.0, 1024.0}) {
        const double h = v_step_for(cand);
        const std::size_t n_v = static_cast<std::size_t>(reach / h);
        const double at_edge = detail::transform_at(cand, s, h, n_v);
        boundary_sq = at_edge * at_edge;
        if (boundary_sq <= 1e-12 * psi0 * psi0) {
            W = cand;
            break;
        }
    }
    if (W == 0.0) {
        throw grid_error("build_momentum_density: spectral mass not captured at s=" +
                         std::to_string(s));
    }

    FourierSideDensity dens;
    dens.s = s;
    dens.gamma0 = std::exp(log_gamma(1.0 + 1.0 / (2.0 * s)));
    dens.w_step = 1.0 / 32.0;
    const std::size_t n_w = static_cast<std::size_t>(W / dens.w_step) + 1;
    dens.psi_sq.resize(n_w);

    const double h = v_step_for(W);
    const std::size_t n_v = static_cast<std::size_t>(reach / h);
    detail::for_each_chunk(n_w, 64, threads, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            const double psi = detail::transform_at(static_cast<double>(i) * dens.w_step, s, h, n_v);
            dens.psi_sq[i] = psi * psi;
        }
    });

    // Trapezoid over the symmetric grid, folded by evenness.
    double sum = dens.psi_sq[0];
    for (std::size_t i = 1; i + 1 < n_w; ++i) sum += 2.0 * dens.psi_sq[i];
    sum += dens.psi_sq[n_w - 1];
    dens.mass = dens.w_step * sum / (4.0 * std::numbers::pi * dens.gamma0);

    // Power-law tail |psi(w)|^2 ~ w^{-(4s+1)} beyond the window.
    dens.discarded_mass = dens.psi_sq.back() * dens.w_max() / (4.0 * s + 1.0) /
                          (4.0 * std::numbers::pi * dens.gamma0);
    if (dens.discarded_mass > 1e-10 || std::abs(dens.mass - 1.0) > 1e-4) {
        throw grid_error("build_momentum_density: momentum grid failed mass capture");
    }
    return dens;
}

namespace detail {

// (1/4 pi Gamma0) int |p + sqrt(hbar) w|^{2s} |psi(w)|^2 dw on the density grid.
inline double axis_moment(const FourierSideDensity& dens, double p, double hbar) {
    const double eps = std::sqrt(hbar);
    const double two_s = 2.0 * dens.s;
    auto weight = [&](double w) {
        const double a = std::abs(p + eps * w);
        return a > 0.0 ? std::pow(a, two_s) : 0.0;
    };
    const std::size_t n = dens.psi_sq.size();
    double sum = weight(0.0) * dens.psi_sq[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double w = static_cast<double>(i) * dens.w_step;
        const double fold = (weight(w) + weight(-w)) * dens.psi_sq[i];
        sum += (i + 1 == n) ? 0.5 * fold : fold;
    }
    return dens.w_step * sum / (4.0 * std::numbers::pi * dens.gamma0);
}

} // namespace detail

/// Kinetic expectation <G_{y,p}, L_{2s,hbar} G_{y,p}> via the discretized
/// hbar-Fourier transform; independent of y by construction.
inline double kinetic_expectation(const CoherentParams& c, const FourierSideDensity& dens) {
    c.validate();
    if (dens.s != c.s) throw std::domain_error("kinetic_expectation: density order mismatch");
    double total = 0.0;
    for (int axis = 0; axis < c.d; ++axis) {
        double term = detail::axis_moment(dens, c.momentum(axis), c.hbar);
        for (int other = 0; other < c.d; ++other) {
            if (other != axis) term *= dens.mass;
        }
        total += term;
    }
    return total;
}

inline double kinetic_expectation(const CoherentParams& c) {
    return kinetic_expectation(c, build_momentum_density(c.s));
}

struct ConvergenceRow {
    double hbar = 0.0;
    double expectation = 0.0;
    double limit = 0.0;
    double gap = 0.0;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    double limit = 0.0;            // ||2 pi k||^{2s}
    bool gap_decreasing = false;
    double final_relative_gap = 0.0;
    bool converged = false;        // decreasing and final gap below tolerance
};

/// Sweeps a decreasing hbar grid and checks |<L> - ||2 pi k||^{2s}| shrinks
/// toward zero.  Non-convergence is reported, not thrown.
inline ConvergenceReport semiclassical_limit_check(const CoherentParams& base,
                                                   std::span<const double> hbar_grid,
                                                   double final_gap_tolerance = 0.05,
                                                   unsigned threads = 0) {
    base.validate();
    FourierSideDensity dens = build_momentum_density(base.s, threads);
    ConvergenceReport report;
    report.limit = base.norm_2s_of_momentum();
    bool decreasing = true;
    double prev_gap = std::numeric_limits<double>::infinity();
    for (double hbar : hbar_grid) {
        CoherentParams c = base;
        c.hbar = hbar;
        ConvergenceRow row;
        row.hbar = hbar;
        row.expectation = kinetic_expectation(c, dens);
        row.limit = report.limit;
        row.gap = std::abs(row.expectation - report.limit);
        decreasing = decreasing && row.gap < prev_gap;
        prev_gap = row.gap;
        report.rows.push_back(row);
    }
    report.gap_decreasing = decreasing;
    if (!report.rows.empty() && report.limit > 0.0) {
        report.final_relative_gap = report.rows.back().gap / report.limit;
    }
    report.converged = decreasing && report.final_relative_gap <= final_gap_tolerance;
    return report;
}

enum class PotentialMode {
    center_value,       // multiplication by V(y): expectation is V(y) exactly
    profile_quadrature, // diagnostic: int V(x) |G(x)|^2 dx
};

/// Expectation of the potential term.  The profile-quadrature mode reports
/// the smeared value, whose gap from V(y) vanishes as hbar -> 0 for
/// continuous V.
inline double potential_expectation(const CoherentParams& c, const PotentialSpec& v,
                                    PotentialMode mode, const QuadratureConfig& cfg = {}) {
    c.validate();
    v.validate();
    if (v.d != c.d) throw std::domain_error("potential_expectation: dimension mismatch");
    if (mode == PotentialMode::center_value) {
        return v.value(std::span<const double>(c.y.data(), static_cast<std::size_t>(c.d)));
    }
    const double gamma0 = std::exp(log_gamma(1.0 + 1.0 / (2.0 * c.s)));
    const double axis_norm = 1.0 / (2.0 * std::sqrt(c.hbar) * gamma0);
    const double reach = profile_reach(c.s) * std::sqrt(c.hbar);
    const double hs = std::pow(c.hbar, c.s);
    auto weight = [&](double u) {
        return axis_norm * std::exp(-std::pow(std::abs(u), 2.0 * c.s) / hs);
    };
    if (c.d == 1) {
        auto f = [&](double u) {
            const double x = c.y[0] + u;
            return v.value(std::span<const double>(&x, 1)) * weight(u);
        };
        return integrate(f, -reach, reach, cfg).value;
    }
    auto outer = [&](double u0) {
        auto inner = [&](double u1) {
            const std::array<double, 2> x{c.y[0] + u0, c.y[1] + u1};
            return v.value(std::span<const double>(x.data(), 2)) * weight(u1);
        };
        return integrate(inner, -reach, reach, cfg).value * weight(u0);
    };
    return integrate(outer, -reach, reach, cfg).value;
}

struct ParsevalGrid {
    double y_half = 8.0;
    double k_half = 3.0;
    double y_step = 0.05;
    double k_step = 0.05;
    double x_half = 12.0;
    double x_step = 0.01;
};

/// Checks the coherent-state transform Parseval identity
/// intint |<G_{y,k}, psi>|^2 dk dy = ||psi||^2 on a truncated grid (d = 1,
/// hbar-free rescaled states with p = 2 pi k).  Returns the relative
/// residual of the mass ratio.
inline double parseval_check(double s, const std::function<std::complex<double>(double)>& psi,
                             const ParsevalGrid& grid = {}, unsigned threads = 0) {
    if (!(s > 0.0) || !(s <= 1.0)) throw std::domain_error("parseval_check: s in (0,1]");
    const double gamma0 = std::exp(log_gamma(1.0 + 1.0 / (2.0 * s)));
    const double f_norm = 1.0 / std::sqrt(2.0 * gamma0);

    const std::size_t n_x = static_cast<std::size_t>(2.0 * grid.x_half / grid.x_step) + 1;
    std::vector<std::complex<double>> psi_samples(n_x);
    std::vector<double> x_values(n_x);
    for (std::size_t i = 0; i < n_x; ++i) {
        x_values[i] = -grid.x_half + static_cast<double>(i) * grid.x_step;
        psi_samples[i] = psi(x_values[i]);
    }
    double psi_mass = 0.0;
    for (std::size_t i = 0; i < n_x; ++i) {
        const double w = (i == 0 || i + 1 == n_x) ? 0.5 : 1.0;
        psi_mass += w * std::norm(psi_samples[i]);
    }
    psi_mass *= grid.x_step;

    const std::size_t n_y = static_cast<std::size_t>(2.0 * grid.y_half / grid.y_step) + 1;
    const std::size_t n_k = static_cast<std::size_t>(2.0 * grid.k_half / grid.k_step) + 1;
    std::vector<double> per_y(n_y, 0.0);
    detail::for_each_chunk(n_y, 4, threads, [&](std::size_t, std::size_t b, std::size_t e) {
        std::vector<double> envelope(n_x);
        for (std::size_t iy = b; iy < e; ++iy) {
            const double y = -grid.y_half + static_cast<double>(iy) * grid.y_step;
            for (std::size_t i = 0; i < n_x; ++i) {
                const double u = x_values[i] - y;
                envelope[i] = f_norm * std::exp(-0.5 * std::pow(std::abs(u), 2.0 * s));
            }
            double acc_y = 0.0;
            for (std::size_t ik = 0; ik < n_k; ++ik) {
                const double k = -grid.k_half + static_cast<double>(ik) * grid.k_step;
                // transform at (k, y): trapezoid over x with rotating phase
                const double theta = -2.0 * std::numbers::pi * k * grid.x_step;
                const std::complex<double> step = std::polar(1.0, theta);
                std::complex<double> rot =
                    std::polar(1.0, -2.0 * std::numbers::pi * k * (x_values[0] - y));
                std::complex<double> acc{0.0, 0.0};
                for (std::size_t i = 0; i < n_x; ++i) {
                    const double w = (i == 0 || i + 1 == n_x) ? 0.5 : 1.0;
                    acc += w * rot * envelope[i] * psi_samples[i];
                    rot *= step;
                    if ((i & 0x3ffu) == 0x3ffu) {
                        rot = std::polar(1.0, -2.0 * std::numbers::pi * k *
                                                  (x_values[i + 1 == n_x ? i : i + 1] - y));
                    }
                }
                acc *= grid.x_step;
                const double wk = (ik == 0 || ik + 1 == n_k) ? 0.5 : 1.0;
                acc_y += wk * std::norm(acc);
            }
            const double wy = (iy == 0 || iy + 1 == n_y) ? 0.5 : 1.0;
            per_y[iy] = wy * acc_y * grid.k_step * grid.y_step;
        }
    });
    double total = 0.0;
    for (double v : per_y) total += v;
    return std::abs(total / psi_mass - 1.0);
}

} // namespace fracspec
