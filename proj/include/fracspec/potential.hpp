#pragma once

// Nonnegative potential-well profiles V(x) = V/D_{2s}: builtin analytic
// families (box well, Gaussian bump, products of one-dimensional smooth
// bumps) and sampled grids with a support box.  The analytic families are
// separable, so power integrals reduce to products of one-dimensional
// quadratures; sampled grids integrate by cell sums.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "fracspec/quadrature.hpp"

namespace fracspec {

enum class WellFamily { box, gaussian, bump };

/// Separable analytic well V(x) = depth * prod_i f((x_i - center_i)/width_i)
/// with f in [0, 1]: an indicator for `box`, exp(-u^2/2) for `gaussian`, the
/// compactly supported exp(1 - 1/(1-u^2)) for `bump`.
struct AnalyticWell {
    WellFamily family = WellFamily::gaussian;
    double depth = 1.0;
    std::vector<double> width;  // per axis, > 0
    std::vector<double> center; // per axis

    double axis_factor(std::size_t axis, double x) const {
        const double u = (x - center[axis]) / width[axis];
        switch (family) {
            case WellFamily::box:
                return std::abs(u) <= 1.0 ? 1.0 : 0.0;
            case WellFamily::gaussian:
                return std::exp(-0.5 * u * u);
            case WellFamily::bump:
                if (std::abs(u) >= 1.0) return 0.0;
                return std::exp(1.0 - 1.0 / (1.0 - u * u));
        }
        return 0.0;
    }

    double value(std::span<const double> x) const {
        double v = depth;
        for (std::size_t i = 0; i < x.size(); ++i) v *= axis_factor(i, x[i]);
        return v;
    }
};

/// Grid-sampled well: row-major cell values over a support box, zero outside.
struct SampledWell {
    std::vector<std::size_t> dims; // grid points per axis
    std::vector<double> origin;    // lower corner of the support box
    std::vector<double> spacing;   // per axis
    std::vector<double> data;      // row-major, prod(dims) entries

    double value(std::span<const double> x) const {
        std::size_t flat = 0;
        for (std::size_t i = 0; i < dims.size(); ++i) {
            const double u = (x[i] - origin[i]) / spacing[i];
            if (u < 0.0 || u >= static_cast<double>(dims[i])) return 0.0;
            flat = flat * dims[i] + static_cast<std::size_t>(u);
        }
        return data[flat];
    }

    double cell_volume() const {
        double v = 1.0;
        for (double h : spacing) v *= h;
        return v;
    }
};

struct PotentialSpec {
    int d = 1;
    double s = 1.0;
    double gamma = 1.0; // moment exponent >= 0
    std::variant<AnalyticWell, SampledWell> profile;

    void validate() const {
        if (d < 1) throw std::domain_error("PotentialSpec: d must be >= 1");
        if (!(s > 0.0) || !(s <= 1.0)) throw std::domain_error("PotentialSpec: s in (0,1]");
        if (!(gamma >= 0.0)) throw std::domain_error("PotentialSpec: gamma must be >= 0");
        if (const auto* w = std::get_if<AnalyticWell>(&profile)) {
            if (w->width.size() != static_cast<std::size_t>(d) ||
                w->center.size() != static_cast<std::size_t>(d)) {
                throw std::domain_error("PotentialSpec: analytic well axis count mismatch");
            }
            if (!(w->depth >= 0.0)) throw std::domain_error("PotentialSpec: depth must be >= 0");
            for (double a : w->width) {
                if (!(a > 0.0)) throw std::domain_error("PotentialSpec: widths must be positive");
            }
        } else {
            const auto& g = std::get<SampledWell>(profile);
            if (g.dims.size() != static_cast<std::size_t>(d) ||
                g.origin.size() != static_cast<std::size_t>(d) ||
                g.spacing.size() != static_cast<std::size_t>(d)) {
                throw std::domain_error("PotentialSpec: sampled grid axis count mismatch");
            }
            std::size_t n = 1;
            for (std::size_t m : g.dims) n *= m;
            if (g.data.size() != n) throw std::domain_error("PotentialSpec: grid data size mismatch");
            for (double v : g.data) {
                if (!(v >= 0.0)) throw std::domain_error("PotentialSpec: grid values must be >= 0");
            }
        }
    }

    double value(std::span<const double> x) const {
        if (const auto* w = std::get_if<AnalyticWell>(&profile)) return w->value(x);
        return std::get<SampledWell>(profile).value(x);
    }
};

/// int V(x)^power dx over R^d.  Certifies the L^power membership the moment
/// sums require; throws quadrature_error when the integral cannot be
/// resolved.
inline double potential_power_integral(const PotentialSpec& spec, double power,
                                       const QuadratureConfig& cfg = {}) {
    spec.validate();
    if (!(power > 0.0)) throw std::domain_error("potential_power_integral: power must be > 0");

    if (const auto* w = std::get_if<AnalyticWell>(&spec.profile)) {
        double result = std::pow(w->depth, power);
        if (w->depth == 0.0) return 0.0;
        for (int axis = 0; axis < spec.d; ++axis) {
            const std::size_t a = static_cast<std::size_t>(axis);
            double axis_integral = 0.0;
            switch (w->family) {
                case WellFamily::box:
                    axis_integral = 2.0 * w->width[a];
                    break;
                case WellFamily::gaussian: {
                    auto f = [&](double x) { return std::pow(w->axis_factor(a, x), power); };
                    axis_integral = integrate(f, -std::numeric_limits<double>::infinity(),
                                              std::numeric_limits<double>::infinity(), cfg).value;
                    break;
                }
                case WellFamily::bump: {
                    auto f = [&](double x) { return std::pow(w->axis_factor(a, x), power); };
                    axis_integral = integrate(f, w->center[a] - w->width[a],
                                              w->center[a] + w->width[a], cfg).value;
                    break;
                }
            }
            result *= axis_integral;
        }
        if (!std::isfinite(result)) {
            throw quadrature_error("potential_power_integral: non-integrable profile");
        }
        return result;
    }

    const auto& g = std::get<SampledWell>(spec.profile);
    double acc = 0.0;
    for (double v : g.data) acc += std::pow(v, power);
    return acc * g.cell_volume();
}

} // namespace fracspec
