#ifndef CITERANK_RANKCORR_HPP
#define CITERANK_RANKCORR_HPP

#include "citerank/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace citerank {

/// Classification of all n(n-1)/2 pairs of two aligned sequences.
struct PairCounts {
    std::int64_t concordant = 0;
    std::int64_t discordant = 0;
    std::int64_t ties_a_only = 0;
    std::int64_t ties_b_only = 0;
    std::int64_t ties_both = 0;
    std::int64_t n = 0;

    std::int64_t total_pairs() const noexcept { return n * (n - 1) / 2; }

    bool operator==(const PairCounts&) const = default;
};

namespace detail {

inline void check_pair_input(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("sequence lengths differ (" + std::to_string(a.size()) + " vs " +
                                    std::to_string(b.size()) + ")");
    }
    if (a.size() < 2) throw DegenerateInputError("need at least two elements");
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::isnan(a[i]) || std::isnan(b[i])) throw std::invalid_argument("NaN in sequence");
    }
}

/// Sum of t(t-1)/2 over runs of equal values in a sorted range.
template <typename It, typename Eq>
std::int64_t tied_pairs(It first, It last, Eq eq) {
    std::int64_t total = 0;
    while (first != last) {
        auto run_end = std::next(first);
        while (run_end != last && eq(*first, *run_end)) ++run_end;
        const auto t = static_cast<std::int64_t>(std::distance(first, run_end));
        total += t * (t - 1) / 2;
        first = run_end;
    }
    return total;
}

/// Stable merge sort of `v` returning the number of inversions (i < j, v[i] > v[j]).
inline std::int64_t count_inversions(std::vector<double>& v) {
    std::vector<double> buffer(v.size());
    std::int64_t swaps = 0;
    for (std::size_t width = 1; width < v.size(); width *= 2) {
        for (std::size_t lo = 0; lo < v.size(); lo += 2 * width) {
            const std::size_t mid = std::min(lo + width, v.size());
            const std::size_t hi = std::min(lo + 2 * width, v.size());
            std::size_t i = lo, j = mid, k = lo;
            while (i < mid && j < hi) {
                if (v[j] < v[i]) {
                    swaps += static_cast<std::int64_t>(mid - i);
                    buffer[k++] = v[j++];
                } else {
                    buffer[k++] = v[i++];
                }
            }
            while (i < mid) buffer[k++] = v[i++];
            while (j < hi) buffer[k++] = v[j++];
        }
        v.swap(buffer);
    }
    return swaps;
}

}  // namespace detail

/// Pair classification in O(n log n) (Knight's algorithm). Pairs tied in
/// both sequences go to ties_both only.
inline PairCounts pair_counts(std::span<const double> a, std::span<const double> b) {
    detail::check_pair_input(a, b);
    const std::size_t n = a.size();

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (a[i] != a[j]) return a[i] < a[j];
        return b[i] < b[j];
    });

    const std::int64_t ties_a = detail::tied_pairs(order.begin(), order.end(),
                                                   [&](std::size_t i, std::size_t j) { return a[i] == a[j]; });
    const std::int64_t ties_ab = detail::tied_pairs(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a[i] == a[j] && b[i] == b[j];
    });

    std::vector<double> b_in_a_order(n);
    for (std::size_t k = 0; k < n; ++k) b_in_a_order[k] = b[order[k]];
    // Within a run of tied a the b values are ascending, so every inversion is
    // a strictly discordant pair.
    const std::int64_t discordant = detail::count_inversions(b_in_a_order);
    const std::int64_t ties_b = detail::tied_pairs(b_in_a_order.begin(), b_in_a_order.end(),
                                                   [](double x, double y) { return x == y; });

    PairCounts pc;
    pc.n = static_cast<std::int64_t>(n);
    pc.ties_both = ties_ab;
    pc.ties_a_only = ties_a - ties_ab;
    pc.ties_b_only = ties_b - ties_ab;
    pc.discordant = discordant;
    pc.concordant = pc.total_pairs() - ties_a - ties_b + ties_ab - discordant;
    return pc;
}

inline double kendall_tau_b(const PairCounts& pc) {
    const auto cd = pc.concordant + pc.discordant;
    const double denom = static_cast<double>(cd + pc.ties_a_only) * static_cast<double>(cd + pc.ties_b_only);
    if (denom == 0.0) throw DegenerateInputError("tau_b undefined: a sequence is fully tied");
    const double tau = static_cast<double>(pc.concordant - pc.discordant) / std::sqrt(denom);
    return std::clamp(tau, -1.0, 1.0);
}

inline double kendall_tau_b(std::span<const double> a, std::span<const double> b) {
    return kendall_tau_b(pair_counts(a, b));
}

inline double kendall_tau_a(const PairCounts& pc) {
    return static_cast<double>(pc.concordant - pc.discordant) / static_cast<double>(pc.total_pairs());
}

inline double kendall_tau_a(std::span<const double> a, std::span<const double> b) {
    return kendall_tau_a(pair_counts(a, b));
}

/// Somers' D of `measure` with respect to `awards`: tau_a(measure, awards) /
/// tau_a(awards, awards). Asymmetric; argument order matters.
inline double somers_d(std::span<const double> measure, std::span<const double> awards) {
    const PairCounts pc = pair_counts(measure, awards);
    // tau_a(B, B) counts every pair not tied in B as concordant.
    const auto untied_in_awards = pc.concordant + pc.discordant + pc.ties_a_only;
    if (untied_in_awards == 0) throw DegenerateInputError("Somers' D undefined: awards fully tied");
    return static_cast<double>(pc.concordant - pc.discordant) / static_cast<double>(untied_in_awards);
}

inline double goodman_gamma(const PairCounts& pc) {
    const auto cd = pc.concordant + pc.discordant;
    if (cd == 0) throw DegenerateInputError("gamma undefined: no untied pairs");
    return static_cast<double>(pc.concordant - pc.discordant) / static_cast<double>(cd);
}

inline double goodman_gamma(std::span<const double> a, std::span<const double> b) {
    return goodman_gamma(pair_counts(a, b));
}

/// 1-based ranks with ties sharing the mean of their positions.
inline std::vector<double> fractional_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    std::vector<double> ranks(n);
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && values[order[end]] == values[order[start]]) ++end;
        const double mean_rank = (static_cast<double>(start + 1) + static_cast<double>(end)) / 2.0;
        for (std::size_t k = start; k < end; ++k) ranks[order[k]] = mean_rank;
        start = end;
    }
    return ranks;
}

inline double spearman_rho(std::span<const double> a, std::span<const double> b) {
    detail::check_pair_input(a, b);
    const auto ra = fractional_ranks(a);
    const auto rb = fractional_ranks(b);
    const double n = static_cast<double>(a.size());
    // Mean of ranks 1..n is (n+1)/2 regardless of ties.
    const double mean = (n + 1.0) / 2.0;
    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        const double da = ra[i] - mean;
        const double db = rb[i] - mean;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) throw DegenerateInputError("rho undefined: constant sequence");
    return std::clamp(cov / std::sqrt(var_a * var_b), -1.0, 1.0);
}

struct RocPoint {
    double false_positive_rate = 0.0;
    double true_positive_rate = 0.0;

    bool operator==(const RocPoint&) const = default;
};

struct RocCurve {
    std::vector<RocPoint> points;
    double auc = 0.0;
};

/// ROC curve of a ranking against award counts.
///
/// Authors are visited by descending measure; equal measures keep their
/// input order (callers pass authors sorted by id). Step r emits the share
/// of award-less authors among the first r (x) and the share of all awards
/// they hold (y). AUC is the trapezoidal area under the emitted points.
inline RocCurve roc_curve(std::span<const double> measure, std::span<const double> awards) {
    if (measure.size() != awards.size()) throw std::invalid_argument("sequence lengths differ");
    double total_awards = 0.0;
    std::size_t zero_award_authors = 0;
    for (std::size_t i = 0; i < awards.size(); ++i) {
        if (!(awards[i] >= 0.0) || std::isnan(measure[i])) {
            throw std::invalid_argument("award counts must be non-negative and measures not NaN");
        }
        total_awards += awards[i];
        if (awards[i] == 0.0) ++zero_award_authors;
    }
    if (total_awards <= 0.0) throw DegenerateInputError("ROC undefined: no awards");
    if (zero_award_authors == 0) throw DegenerateInputError("ROC undefined: every author holds an award");

    std::vector<std::size_t> order(measure.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return measure[i] > measure[j]; });

    RocCurve curve;
    curve.points.reserve(order.size() + 1);
    curve.points.push_back({0.0, 0.0});
    double awards_seen = 0.0;
    std::size_t negatives_seen = 0;
    for (std::size_t idx : order) {
        awards_seen += awards[idx];
        if (awards[idx] == 0.0) ++negatives_seen;
        curve.points.push_back({static_cast<double>(negatives_seen) / static_cast<double>(zero_award_authors),
                                awards_seen / total_awards});
    }
    // Summation order differs from total_awards; pin the endpoint.
    curve.points.back().true_positive_rate = 1.0;
    for (std::size_t k = 1; k < curve.points.size(); ++k) {
        const auto& p = curve.points[k - 1];
        const auto& q = curve.points[k];
        curve.auc += (q.false_positive_rate - p.false_positive_rate) *
                     (p.true_positive_rate + q.true_positive_rate) / 2.0;
    }
    return curve;
}

}  // namespace citerank

#endif  // CITERANK_RANKCORR_HPP
