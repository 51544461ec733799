#pragma once

// Exact Dirichlet spectrum of sum_i (-d_i^2)^s on the open hypercube (0,L)^d:
// eigenvalue evaluation, pruned lattice counting, k-smallest enumeration and
// partial sums.  Eigenvalues are reported in E/D_{2s} units.
//
// Floating-point policy: a lattice point's value is always the left-to-right
// prefix sum of per-coordinate terms (n_i pi / L)^{2s}, each term a log-domain
// power (std::pow).  Every path in this header (and the brute-force
// reference) evaluates points with the identical arithmetic, so boundary
// decisions agree bit-for-bit between the fast path and the oracle.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fracspec/detail/parallel.hpp"
#include "fracspec/errors.hpp"

namespace fracspec {

inline constexpr int kMaxDimension = 10;

/// Relative slack applied to boundary comparisons at the energy cutoff.
inline constexpr double kBoundarySlackScale = 1e-12;

/// Eigenvalues within this relative distance are reported as one
/// multiplicity class (they are still counted individually).
inline constexpr double kTieRelTolerance = 1e-9;

/// Whether lattice points exactly on the cutoff surface are counted.
enum class Boundary { inclusive, strict };

enum class CutoffKind { by_count, by_energy };

struct SpectralParams {
    int d = 1;              // 1 <= d <= kMaxDimension
    double s = 1.0;         // order in (0, 1]
    double L = std::numbers::pi; // side length, length units
    double D2s = 1.0;       // unit constant; values are E/D2s
    bool include_zero_indices = false; // count indices with vanishing components
                                       // (sensitivity mode; default requires all n_i >= 1)

    void validate() const {
        if (d < 1 || d > kMaxDimension) {
            throw std::domain_error("SpectralParams: d must be in [1, " +
                                    std::to_string(kMaxDimension) + "]");
        }
        if (!(s > 0.0) || !(s <= 1.0) || !std::isfinite(s)) {
            throw std::domain_error("SpectralParams: s must lie in (0, 1]");
        }
        if (!(L > 0.0) || !std::isfinite(L)) {
            throw std::domain_error("SpectralParams: L must be positive");
        }
        if (!(D2s > 0.0) || !std::isfinite(D2s)) {
            throw std::domain_error("SpectralParams: D2s must be positive");
        }
    }

    /// One coordinate's contribution (n pi / L)^{2s}, n >= 1.
    double term(std::uint64_t n) const {
        return std::pow(static_cast<double>(n) * (std::numbers::pi / L), 2.0 * s);
    }

    /// Comparison threshold for "value <= E" with boundary slack.
    double threshold(double E, Boundary b) const {
        const double slack = kBoundarySlackScale * std::max(1.0, std::abs(E));
        return b == Boundary::inclusive ? E + slack : E - slack;
    }
};

/// Eigenvalue of the lattice multi-index n (all components >= 1 unless the
/// zero-index mode is active, in which case components may vanish but not
/// all of them).
inline double eigenvalue(const SpectralParams& p, std::span<const std::uint32_t> n) {
    p.validate();
    if (static_cast<int>(n.size()) != p.d) {
        throw std::domain_error("eigenvalue: index size does not match dimension");
    }
    bool any_nonzero = false;
    double acc = 0.0;
    for (std::uint32_t ni : n) {
        if (ni == 0) {
            if (!p.include_zero_indices) {
                throw std::domain_error("eigenvalue: index components must be >= 1");
            }
            continue;
        }
        any_nonzero = true;
        acc += p.term(ni);
    }
    if (!any_nonzero) {
        throw std::domain_error("eigenvalue: at least one index component must be nonzero");
    }
    return acc;
}

struct EigenvalueRecord {
    double value = 0.0;
    std::vector<std::uint32_t> index;     // empty for value-only slices
    std::uint64_t multiplicity = 1;       // size of the record's tie class
    std::uint64_t multiplicity_class = 0; // tie class id, ascending with value
};

struct EnumerationLimits {
    std::uint64_t max_records = 10'000'000;
};

/// An ordered (non-decreasing value, lexicographic index tie-break) slice of
/// the spectrum, complete up to its cutoff.  Stored as flat arrays so large
/// slices stay compact; immutable after construction.
class SpectrumSlice {
public:
    SpectrumSlice(SpectralParams params, CutoffKind kind, double cutoff,
                  std::vector<double> values, std::vector<std::uint32_t> flat_indices)
        : params_(params), kind_(kind), cutoff_(cutoff),
          values_(std::move(values)), indices_(std::move(flat_indices)) {
        if (!indices_.empty() &&
            indices_.size() != values_.size() * static_cast<std::size_t>(params_.d)) {
            throw std::invalid_argument("SpectrumSlice: index array size mismatch");
        }
        assign_classes();
    }

    /// Toy/explicit spectra (e.g. test measures): values only, sorted here.
    static SpectrumSlice from_values(SpectralParams params, CutoffKind kind, double cutoff,
                                     std::vector<double> values) {
        std::sort(values.begin(), values.end());
        return SpectrumSlice(params, kind, cutoff, std::move(values), {});
    }

    const SpectralParams& params() const { return params_; }
    CutoffKind cutoff_kind() const { return kind_; }

    /// Every eigenvalue <= energy_cutoff() is present in the slice (for
    /// by-count slices a tie class cut exactly at the count may be split at
    /// the cutoff itself; see certified_cutoff()).
    double energy_cutoff() const {
        if (kind_ == CutoffKind::by_energy) return cutoff_;
        return values_.empty() ? -std::numeric_limits<double>::infinity() : values_.back();
    }

    /// Cutoff below which completeness is unconditional: equals
    /// energy_cutoff() for by-energy slices, and backs off by the tie
    /// tolerance for by-count slices, whose last tie class may be truncated.
    double certified_cutoff() const {
        const double cutoff = energy_cutoff();
        if (kind_ == CutoffKind::by_energy) return cutoff;
        return cutoff - kTieRelTolerance * std::max(std::abs(cutoff), 1.0);
    }

    std::size_t size() const { return values_.size(); }
    bool has_indices() const { return !indices_.empty(); }
    double value(std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }

    std::span<const std::uint32_t> index(std::size_t i) const {
        if (indices_.empty()) return {};
        const std::size_t d = static_cast<std::size_t>(params_.d);
        return std::span<const std::uint32_t>(indices_.data() + i * d, d);
    }

    std::uint64_t multiplicity_class(std::size_t i) const { return class_id_[i]; }
    std::uint64_t multiplicity(std::size_t i) const { return class_count_[class_id_[i]]; }
    std::size_t class_count() const { return class_count_.size(); }

    EigenvalueRecord record(std::size_t i) const {
        EigenvalueRecord r;
        r.value = values_[i];
        auto idx = index(i);
        r.index.assign(idx.begin(), idx.end());
        r.multiplicity_class = class_id_[i];
        r.multiplicity = class_count_[class_id_[i]];
        return r;
    }

private:
    void assign_classes() {
        class_id_.resize(values_.size());
        class_count_.clear();
        double rep = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (i == 0 || values_[i] - rep > kTieRelTolerance * std::max(std::abs(rep), 1.0)) {
                rep = values_[i];
                class_count_.push_back(0);
            }
            class_id_[i] = static_cast<std::uint32_t>(class_count_.size() - 1);
            ++class_count_.back();
        }
    }

    SpectralParams params_;
    CutoffKind kind_;
    double cutoff_;
    std::vector<double> values_;
    std::vector<std::uint32_t> indices_;
    std::vector<std::uint32_t> class_id_;
    std::vector<std::uint64_t> class_count_;
};

namespace detail {

// Per-coordinate term table; read-only after construction, on-miss values
// are recomputed with the identical formula.
class TermTable {
public:
    TermTable(const SpectralParams& p, std::uint64_t n_max) : p_(&p) {
        terms_.resize(static_cast<std::size_t>(n_max) + 1, 0.0);
        for (std::uint64_t n = 1; n <= n_max; ++n) {
            terms_[static_cast<std::size_t>(n)] = p.term(n);
        }
    }
    double operator()(std::uint64_t n) const {
        return n < terms_.size() ? terms_[static_cast<std::size_t>(n)] : p_->term(n);
    }

private:
    const SpectralParams* p_;
    std::vector<double> terms_;
};

// Largest m >= 1 with prefix + term(m) <= threshold (0 if none): closed-form
// floor from the residual budget, then exact fix-up with the true predicate.
template <class Term>
std::uint64_t last_dim_count(const SpectralParams& p, const Term& term,
                             double prefix, double threshold) {
    const double residual = threshold - prefix;
    std::uint64_t m = 0;
    if (residual > 0.0) {
        const double est = (p.L / std::numbers::pi) * std::exp(std::log(residual) / (2.0 * p.s));
        if (est >= 2.0) {
            m = static_cast<std::uint64_t>(std::min(est - 2.0, 4.0e15));
        }
    }
    while (m >= 1 && prefix + term(m) > threshold) --m;
    while (prefix + term(m + 1) <= threshold) ++m;
    return m;
}

template <class Term>
std::uint64_t count_rec(const SpectralParams& p, const Term& term, int dims_left,
                        double prefix, double threshold) {
    if (dims_left == 1) return last_dim_count(p, term, prefix, threshold);
    std::uint64_t total = 0;
    for (std::uint64_t n = 1;; ++n) {
        const double next = prefix + term(n);
        if (!(next <= threshold)) break;
        total += count_rec(p, term, dims_left - 1, next, threshold);
    }
    return total;
}

template <class Term, class Sink>
void collect_rec(const SpectralParams& p, const Term& term, int dims_left,
                 double prefix, double threshold,
                 std::array<std::uint32_t, kMaxDimension>& idx, int depth, Sink&& sink) {
    if (dims_left == 1) {
        const std::uint64_t m_max = last_dim_count(p, term, prefix, threshold);
        for (std::uint64_t m = 1; m <= m_max; ++m) {
            idx[depth] = static_cast<std::uint32_t>(m);
            sink(prefix + term(m), idx);
        }
        return;
    }
    for (std::uint64_t n = 1;; ++n) {
        const double next = prefix + term(n);
        if (!(next <= threshold)) break;
        idx[depth] = static_cast<std::uint32_t>(n);
        collect_rec(p, term, dims_left - 1, next, threshold, idx, depth + 1, sink);
    }
}

inline std::uint64_t binomial(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / i;
    return r;
}

inline SpectralParams positive_subparams(const SpectralParams& p, int m) {
    SpectralParams q = p;
    q.d = m;
    q.include_zero_indices = false;
    return q;
}

} // namespace detail

/// Exact number of eigenvalues <= E (boundary slack per `b`).  Recursive
/// dimension slicing with a closed-form floor in the last coordinate; the
/// outermost coordinate is partitioned across threads with an ordered merge,
/// so the count is identical for any worker count.
inline std::uint64_t counting_function(const SpectralParams& p, double E,
                                       Boundary b = Boundary::inclusive,
                                       unsigned threads = 1) {
    p.validate();
    if (!std::isfinite(E)) throw std::domain_error("counting_function: E must be finite");

    if (p.include_zero_indices) {
        // Indices with zero components reduce to lower-dimensional positive
        // counts: sum over the choice of the m nonzero coordinates.
        std::uint64_t total = 0;
        for (int m = 1; m <= p.d; ++m) {
            total += detail::binomial(p.d, m) *
                     counting_function(detail::positive_subparams(p, m), E, b, threads);
        }
        return total;
    }

    const double threshold = p.threshold(E, b);
    auto raw_term = [&p](std::uint64_t n) { return p.term(n); };
    const std::uint64_t n1_max = detail::last_dim_count(p, raw_term, 0.0, threshold);
    if (n1_max == 0) return 0;
    if (p.d == 1) return n1_max;

    detail::TermTable table(p, n1_max);
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(n1_max), 0);
    detail::for_each_chunk(static_cast<std::size_t>(n1_max), 1, threads,
                           [&](std::size_t, std::size_t b0, std::size_t) {
        const std::uint64_t n1 = static_cast<std::uint64_t>(b0) + 1;
        partial[b0] = detail::count_rec(p, table, p.d - 1, table(n1), threshold);
    });
    std::uint64_t total = 0;
    for (std::uint64_t c : partial) total += c;
    return total;
}

/// Deterministic fold of f(value) over all eigenvalues <= E.  The reduction
/// is compensated and chunked by the outermost lattice coordinate, so the
/// result does not depend on the worker count.
template <class F>
double transform_sum(const SpectralParams& p, double E, Boundary b, F&& f,
                     unsigned threads = 1) {
    p.validate();
    if (!std::isfinite(E)) throw std::domain_error("transform_sum: E must be finite");

    if (p.include_zero_indices) {
        double total = 0.0;
        for (int m = 1; m <= p.d; ++m) {
            total += static_cast<double>(detail::binomial(p.d, m)) *
                     transform_sum(detail::positive_subparams(p, m), E, b, f, threads);
        }
        return total;
    }

    const double threshold = p.threshold(E, b);
    auto raw_term = [&p](std::uint64_t n) { return p.term(n); };
    const std::uint64_t n1_max = detail::last_dim_count(p, raw_term, 0.0, threshold);
    if (n1_max == 0) return 0.0;

    if (p.d == 1) {
        detail::TermTable table(p, n1_max);
        return detail::sum_generate(static_cast<std::size_t>(n1_max),
                                    [&](std::size_t i) { return f(table(i + 1)); }, threads);
    }

    detail::TermTable table(p, n1_max);
    std::vector<double> partial(static_cast<std::size_t>(n1_max), 0.0);
    detail::for_each_chunk(static_cast<std::size_t>(n1_max), 1, threads,
                           [&](std::size_t, std::size_t b0, std::size_t) {
        const std::uint64_t n1 = static_cast<std::uint64_t>(b0) + 1;
        detail::KahanAccumulator acc;
        std::array<std::uint32_t, kMaxDimension> idx{};
        idx[0] = static_cast<std::uint32_t>(n1);
        detail::collect_rec(p, table, p.d - 1, table(n1), threshold, idx, 1,
                            [&](double v, const auto&) { acc.add(f(v)); });
        partial[b0] = acc.sum;
    });
    detail::KahanAccumulator total;
    for (double v : partial) total.add(v);
    return total.sum;
}

/// All eigenvalues <= E with their indices, sorted by (value, lexicographic
/// index).  Thread partitioning is over the outermost coordinate; the final
/// sort makes the result worker-count independent.
inline SpectrumSlice enumerate_up_to(const SpectralParams& p, double E,
                                     Boundary b = Boundary::inclusive,
                                     const EnumerationLimits& limits = {},
                                     unsigned threads = 1) {
    p.validate();
    if (!std::isfinite(E)) throw std::domain_error("enumerate_up_to: E must be finite");
    const std::uint64_t n_points = counting_function(p, E, b, threads);
    if (n_points > limits.max_records) {
        throw resource_limit_error("enumerate_up_to: " + std::to_string(n_points) +
                                   " records exceed limit " + std::to_string(limits.max_records));
    }

    const std::size_t d = static_cast<std::size_t>(p.d);
    std::vector<double> values;
    std::vector<std::uint32_t> flat;
    values.reserve(n_points);
    flat.reserve(n_points * d);

    const double threshold = p.threshold(E, b);
    auto emit = [&](double v, const std::array<std::uint32_t, kMaxDimension>& idx,
                    std::uint32_t zero_mask) {
        values.push_back(v);
        std::size_t nz = 0;
        for (std::size_t j = 0; j < d; ++j) {
            if (zero_mask & (1u << j)) {
                flat.push_back(0);
            } else {
                flat.push_back(idx[nz++]);
            }
        }
    };

    auto run_mask = [&](std::uint32_t zero_mask, const SpectralParams& q) {
        auto raw_term = [&q](std::uint64_t n) { return q.term(n); };
        const std::uint64_t n1_max = detail::last_dim_count(q, raw_term, 0.0, threshold);
        if (n1_max == 0) return;
        detail::TermTable table(q, n1_max);
        if (q.d == 1) {
            std::array<std::uint32_t, kMaxDimension> idx{};
            for (std::uint64_t n = 1; n <= n1_max; ++n) {
                idx[0] = static_cast<std::uint32_t>(n);
                emit(table(n), idx, zero_mask);
            }
            return;
        }
        std::vector<std::vector<std::pair<double, std::array<std::uint32_t, kMaxDimension>>>>
            per_n1(static_cast<std::size_t>(n1_max));
        detail::for_each_chunk(static_cast<std::size_t>(n1_max), 1, threads,
                               [&](std::size_t, std::size_t b0, std::size_t) {
            const std::uint64_t n1 = static_cast<std::uint64_t>(b0) + 1;
            std::array<std::uint32_t, kMaxDimension> idx{};
            idx[0] = static_cast<std::uint32_t>(n1);
            detail::collect_rec(q, table, q.d - 1, table(n1), threshold, idx, 1,
                                [&](double v, const auto& ix) { per_n1[b0].emplace_back(v, ix); });
        });
        for (const auto& bucket : per_n1) {
            for (const auto& [v, ix] : bucket) emit(v, ix, zero_mask);
        }
    };

    if (!p.include_zero_indices) {
        run_mask(0, p);
    } else {
        // One pass per choice of vanishing coordinates.
        for (std::uint32_t mask = 0; mask < (1u << d); ++mask) {
            const int zeros = std::popcount(mask);
            if (zeros == p.d) continue;
            run_mask(mask, detail::positive_subparams(p, p.d - zeros));
        }
    }

    // Sort records by (value, lexicographic index).
    std::vector<std::uint32_t> perm(values.size());
    for (std::uint32_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t c) {
        if (values[a] != values[c]) return values[a] < values[c];
        return std::lexicographical_compare(flat.begin() + a * d, flat.begin() + (a + 1) * d,
                                            flat.begin() + c * d, flat.begin() + (c + 1) * d);
    });
    std::vector<double> sorted_values(values.size());
    std::vector<std::uint32_t> sorted_flat(flat.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        sorted_values[i] = values[perm[i]];
        std::copy_n(flat.begin() + perm[i] * d, d, sorted_flat.begin() + i * d);
    }
    return SpectrumSlice(p, CutoffKind::by_energy, E, std::move(sorted_values),
                         std::move(sorted_flat));
}

namespace detail {

struct SmallIndex {
    std::array<std::uint32_t, kMaxDimension> v{};
    friend bool operator==(const SmallIndex&, const SmallIndex&) = default;
};

struct SmallIndexHash {
    std::size_t operator()(const SmallIndex& k) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (std::uint32_t x : k.v) {
            h ^= x;
            h *= 1099511628211ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

} // namespace detail

/// Exactly the k smallest eigenvalues, counted with multiplicity, ties broken
/// by lexicographic multi-index.  Best-first frontier search over the lattice
/// poset: a point enters the heap once all of its predecessors n - e_i have
/// been popped, so each point is visited exactly once and pops come out in
/// (value, index) order.  The brute-force box scan in reference.hpp is the
/// independent fallback route used by the oracle tests.
inline SpectrumSlice enumerate_smallest(const SpectralParams& p, std::uint64_t k,
                                        const EnumerationLimits& limits = {}) {
    p.validate();
    if (k < 1) throw std::domain_error("enumerate_smallest: k must be >= 1");
    if (k > limits.max_records) {
        throw resource_limit_error("enumerate_smallest: k exceeds record limit");
    }

    if (p.include_zero_indices) {
        // Zero-index mode routes through an energy threshold found by doubling.
        SpectralParams probe = p;
        double E = static_cast<double>(p.d) * p.term(1);
        while (counting_function(probe, E) < k) E *= 2.0;
        SpectrumSlice full = enumerate_up_to(probe, E, Boundary::inclusive, limits);
        std::vector<double> values(full.values().begin(),
                                   full.values().begin() + static_cast<std::ptrdiff_t>(k));
        std::vector<std::uint32_t> flat;
        flat.reserve(k * static_cast<std::size_t>(p.d));
        for (std::uint64_t i = 0; i < k; ++i) {
            auto ix = full.index(i);
            flat.insert(flat.end(), ix.begin(), ix.end());
        }
        const double cutoff = values.back();
        return SpectrumSlice(p, CutoffKind::by_count, cutoff, std::move(values),
                             std::move(flat));
    }

    const std::size_t d = static_cast<std::size_t>(p.d);
    std::vector<double> term_cache{0.0, p.term(1)};
    auto term_of = [&](std::uint32_t n) {
        while (term_cache.size() <= n) {
            term_cache.push_back(p.term(static_cast<std::uint64_t>(term_cache.size())));
        }
        return term_cache[n];
    };
    auto eval = [&](const detail::SmallIndex& ix) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc += term_of(ix.v[j]);
        return acc;
    };

    struct Node {
        double value;
        detail::SmallIndex idx;
    };
    auto later = [](const Node& a, const Node& b) {
        if (a.value != b.value) return a.value > b.value;
        return b.idx.v < a.idx.v; // lexicographically smaller index pops first
    };
    std::priority_queue<Node, std::vector<Node>, decltype(later)> heap(later);
    std::unordered_map<detail::SmallIndex, std::uint32_t, detail::SmallIndexHash> pending;

    detail::SmallIndex origin{};
    for (std::size_t j = 0; j < d; ++j) origin.v[j] = 1;
    heap.push({eval(origin), origin});

    std::vector<double> values;
    std::vector<std::uint32_t> flat;
    values.reserve(k);
    flat.reserve(k * d);

    while (values.size() < k) {
        Node top = heap.top();
        heap.pop();
        values.push_back(top.value);
        for (std::size_t j = 0; j < d; ++j) flat.push_back(top.idx.v[j]);

        for (std::size_t j = 0; j < d; ++j) {
            detail::SmallIndex succ = top.idx;
            succ.v[j] += 1;
            std::uint32_t indegree = 0;
            for (std::size_t m = 0; m < d; ++m) indegree += succ.v[m] >= 2 ? 1 : 0;
            const std::uint32_t seen = ++pending[succ];
            if (seen == indegree) {
                pending.erase(succ);
                heap.push({eval(succ), succ});
            }
        }
        if (heap.size() + pending.size() > 64 * limits.max_records) {
            throw resource_limit_error("enumerate_smallest: frontier exceeds memory budget");
        }
    }
    const double cutoff = values.back();
    return SpectrumSlice(p, CutoffKind::by_count, cutoff, std::move(values), std::move(flat));
}

/// Sum of the N smallest eigenvalues (ties as in enumerate_smallest).
inline double eigenvalue_sum(const SpectralParams& p, std::uint64_t N,
                             const EnumerationLimits& limits = {}, unsigned threads = 1) {
    SpectrumSlice slice = enumerate_smallest(p, N, limits);
    return detail::sum_span(slice.values(), threads);
}

struct ScalingCheck {
    double reference_value = 0.0; // E_n on the side-L cube
    double rescaled_value = 0.0;  // lambda^{2s} E_n on the side-(lambda L) cube
    double residual = 0.0;        // relative
};

/// Verifies E_n(side L) = lambda^{2s} E_n(side lambda L).
inline ScalingCheck scaled_eigenvalue_check(const SpectralParams& p, double lambda,
                                            std::span<const std::uint32_t> n) {
    p.validate();
    if (!(lambda > 0.0) || !(lambda <= 1.0) || !std::isfinite(lambda)) {
        throw std::domain_error("scaled_eigenvalue_check: lambda must lie in (0, 1]");
    }
    SpectralParams shrunk = p;
    shrunk.L = lambda * p.L;
    ScalingCheck c;
    c.reference_value = eigenvalue(p, n);
    c.rescaled_value = std::pow(lambda, 2.0 * p.s) * eigenvalue(shrunk, n);
    c.residual = std::abs(c.reference_value - c.rescaled_value) /
                 std::max(std::abs(c.reference_value), 1e-300);
    return c;
}

} // namespace fracspec
