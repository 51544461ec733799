#pragma once

// Slow reference routes, kept deliberately naive: a full box scan for
// counting/enumeration and a seeded Monte Carlo estimate of phase-space
// volumes.  These are the independent fallbacks the fast paths are verified
// against; they share only the per-coordinate term arithmetic so boundary
// decisions match bit-for-bit.

#include <algorithm>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "fracspec/spectrum.hpp"

namespace fracspec::reference {

/// Largest value any single coordinate can take below the threshold; the
/// brute-force box is [1, bound]^d.
inline std::uint64_t box_bound(const SpectralParams& p, double E, Boundary b) {
    p.validate();
    const double threshold = p.threshold(E, b);
    auto term = [&p](std::uint64_t n) { return p.term(n); };
    return detail::last_dim_count(p, term, 0.0, threshold);
}

/// Number of lattice points the box scan would visit (for test budgeting).
inline std::uint64_t box_size(const SpectralParams& p, double E, Boundary b) {
    const std::uint64_t m = box_bound(p, E, b) + (p.include_zero_indices ? 1 : 0);
    std::uint64_t size = 1;
    for (int i = 0; i < p.d; ++i) {
        if (m != 0 && size > (std::uint64_t{1} << 62) / m) return std::uint64_t{1} << 62;
        size *= m;
    }
    return size;
}

/// Exhaustive count of lattice points with value <= E.
inline std::uint64_t brute_count(const SpectralParams& p, double E, Boundary b) {
    const std::uint64_t bound = box_bound(p, E, b);
    if (bound == 0) return 0;
    const double threshold = p.threshold(E, b);
    const std::uint32_t lo = p.include_zero_indices ? 0 : 1;
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(p.d), lo);
    std::uint64_t count = 0;
    for (;;) {
        double v = 0.0;
        bool all_zero = true;
        for (std::uint32_t ni : idx) {
            if (ni == 0) continue;
            all_zero = false;
            v += p.term(ni);
        }
        if (!all_zero && v <= threshold) ++count;
        int j = p.d - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == bound) {
            idx[static_cast<std::size_t>(j)] = lo;
            --j;
        }
        if (j < 0) break;
        ++idx[static_cast<std::size_t>(j)];
    }
    return count;
}

/// Exhaustive enumeration, sorted by (value, lexicographic index).
inline std::vector<std::pair<double, std::vector<std::uint32_t>>>
brute_enumerate(const SpectralParams& p, double E, Boundary b) {
    const std::uint64_t bound = box_bound(p, E, b);
    std::vector<std::pair<double, std::vector<std::uint32_t>>> out;
    if (bound == 0) return out;
    const double threshold = p.threshold(E, b);
    const std::uint32_t lo = p.include_zero_indices ? 0 : 1;
    std::vector<std::uint32_t> idx(static_cast<std::size_t>(p.d), lo);
    for (;;) {
        double v = 0.0;
        bool all_zero = true;
        for (std::uint32_t ni : idx) {
            if (ni == 0) continue;
            all_zero = false;
            v += p.term(ni);
        }
        if (!all_zero && v <= threshold) out.emplace_back(v, idx);
        int j = p.d - 1;
        while (j >= 0 && idx[static_cast<std::size_t>(j)] == bound) {
            idx[static_cast<std::size_t>(j)] = lo;
            --j;
        }
        if (j < 0) break;
        ++idx[static_cast<std::size_t>(j)];
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& c) {
        if (a.first != c.first) return a.first < c.first;
        return a.second < c.second;
    });
    return out;
}

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
};

/// Seeded Monte Carlo estimate of the momentum-ball factor of the phase-space
/// volume: Vol{k : sum_i |k_i|^{2s} <= (E^{1/2s}/2pi)^{2s}} times |Omega|.
/// Samples k uniformly in the bounding box and accepts on the norm cutoff.
inline MonteCarloEstimate mc_phase_space_volume(double domain_volume, int d, double s,
                                                double E_max, std::size_t samples,
                                                std::uint64_t seed) {
    const double radius = std::exp(std::log(E_max) / (2.0 * s)) / (2.0 * std::numbers::pi);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        double norm = 0.0;
        for (int j = 0; j < d; ++j) {
            const double kj = radius * unit(rng);
            norm += std::pow(kj, 2.0 * s);
        }
        if (norm <= std::pow(radius, 2.0 * s)) ++accepted;
    }
    // Box volume (2R)^d over the full orthant set; sampling one orthant and
    // multiplying by 2^d is identical by symmetry.
    const double box = std::pow(2.0 * radius, static_cast<double>(d));
    const double frac = static_cast<double>(accepted) / static_cast<double>(samples);
    MonteCarloEstimate e;
    e.value = domain_volume * box * frac;
    e.std_error = domain_volume * box *
                  std::sqrt(std::max(frac * (1.0 - frac), 1e-300) / static_cast<double>(samples));
    return e;
}

} // namespace fracspec::reference
