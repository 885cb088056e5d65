#ifndef CITERANK_INDICES_HPP
#define CITERANK_INDICES_HPP

#include "citerank/citation_vector.hpp"
#include "citerank/corpus.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace citerank {

enum class Measure {
    h, c, mu, g, o, m,
    h_frac, c_frac, mu_frac, g_frac, o_frac, m_frac,
    h_I, h_m, h_p, h_ap,
};

inline constexpr std::size_t kMeasureCount = 16;

inline constexpr std::array<Measure, kMeasureCount> kAllMeasures = {
    Measure::h,      Measure::c,      Measure::mu,      Measure::g,      Measure::o,
    Measure::m,      Measure::h_frac, Measure::c_frac,  Measure::mu_frac, Measure::g_frac,
    Measure::o_frac, Measure::m_frac, Measure::h_I,     Measure::h_m,    Measure::h_p,
    Measure::h_ap,
};

inline std::string_view to_string(Measure m) {
    static constexpr std::array<std::string_view, kMeasureCount> names = {
        "h",      "c",      "mu",     "g",      "o",   "m",   "h-frac", "c-frac",
        "mu-frac", "g-frac", "o-frac", "m-frac", "h_I", "h_m", "h_p",    "h_ap",
    };
    return names[static_cast<std::size_t>(m)];
}

inline std::optional<Measure> parse_measure(std::string_view s) {
    for (Measure m : kAllMeasures) {
        if (to_string(m) == s) return m;
    }
    return std::nullopt;
}

/// The six base measures that have a fractional counterpart.
enum class BaseMeasure { h, c, mu, g, o, m };

namespace detail {

/// Largest h with sorted[h-1] >= h. `sorted` must be non-increasing.
inline std::size_t h_of(std::span<const double> sorted) {
    std::size_t h = 0;
    while (h < sorted.size() && sorted[h] >= static_cast<double>(h + 1)) ++h;
    return h;
}

inline double median_of_prefix(std::span<const double> sorted, std::size_t k) {
    if (k == 0) return 0.0;
    // Prefix is non-increasing, so the middle elements are at fixed positions.
    if (k % 2 == 1) return sorted[k / 2];
    return (sorted[k / 2 - 1] + sorted[k / 2]) / 2.0;
}

inline double mean_authors_of_prefix(std::span<const int> authors, std::size_t k) {
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) sum += authors[i];
    return sum / static_cast<double>(k);
}

}  // namespace detail

inline std::size_t h_index(const CitationVector& v) { return detail::h_of(v.entries()); }

inline double c_index(const CitationVector& v) {
    double sum = 0.0;
    for (double c : v.entries()) sum += c;
    return sum;
}

/// Mean citations per paper; 0 for an empty record.
inline double mu_index(const CitationVector& v) {
    if (v.empty()) return 0.0;
    return c_index(v) / static_cast<double>(v.size());
}

/// Largest g <= N whose top-g papers hold at least g^2 citations. No
/// zero-padding past the last real paper.
inline std::size_t g_index(const CitationVector& v) {
    // The condition fails monotonically: once the running mean of the top g
    // drops below g, every later entry is below g as well.
    double cumulative = 0.0;
    std::size_t g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        cumulative += v[i];
        const double k = static_cast<double>(i + 1);
        if (cumulative >= k * k) {
            g = i + 1;
        } else {
            break;
        }
    }
    return g;
}

/// Geometric mean of h and the top citation count.
inline double o_index(const CitationVector& v) {
    if (v.empty()) return 0.0;
    return std::sqrt(static_cast<double>(h_index(v)) * v[0]);
}

/// Median citation count within the h-core.
inline double m_index(const CitationVector& v) {
    return detail::median_of_prefix(v.entries(), h_index(v));
}

/// A base measure evaluated on author-normalized counts. The vector is
/// expected to come from citation_vector(..., Normalizer::author_count).
inline double fractional_index(BaseMeasure measure, const CitationVector& v_frac) {
    switch (measure) {
        case BaseMeasure::h: return static_cast<double>(h_index(v_frac));
        case BaseMeasure::c: return c_index(v_frac);
        case BaseMeasure::mu: return mu_index(v_frac);
        case BaseMeasure::g: return static_cast<double>(g_index(v_frac));
        case BaseMeasure::o: return o_index(v_frac);
        case BaseMeasure::m: return m_index(v_frac);
    }
    return 0.0;
}

/// h divided by the mean author count of the h-core (Batista et al.).
inline double h_I_index(const CitationVector& v) {
    const std::size_t h = h_index(v);
    if (h == 0) return 0.0;
    return static_cast<double>(h) / detail::mean_authors_of_prefix(v.author_counts(), h);
}

/// h divided by the square root of the h-core's mean author count (Wan et al.).
inline double h_p_index(const CitationVector& v) {
    const std::size_t h = h_index(v);
    if (h == 0) return 0.0;
    return static_cast<double>(h) / std::sqrt(detail::mean_authors_of_prefix(v.author_counts(), h));
}

/// h computed on c / sqrt(A), re-sorted (Chai et al.). Takes raw counts.
inline double h_ap_index(const CitationVector& v) {
    std::vector<double> scaled(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        scaled[i] = v[i] / std::sqrt(static_cast<double>(v.author_counts()[i]));
    }
    std::sort(scaled.begin(), scaled.end(), std::greater<>());
    return static_cast<double>(detail::h_of(scaled));
}

/// Schreiber's h_m: papers keep their raw-citation order but each occupies
/// an effective rank of 1/A. Returns the largest effective rank r_eff(i)
/// with c_i >= r_eff(i), unrounded.
inline double h_m_index(const CitationVector& v) {
    double rank = 0.0;
    double best = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        rank += 1.0 / static_cast<double>(v.author_counts()[i]);
        // c is non-increasing and rank increasing, so qualifying papers form a prefix.
        if (v[i] >= rank) {
            best = rank;
        } else {
            break;
        }
    }
    return best;
}

struct IndexValue {
    Measure measure = Measure::h;
    double value = 0.0;
};

/// All sixteen measures for one author, indexed by Measure.
class MeasureValues {
public:
    double operator[](Measure m) const { return values_[static_cast<std::size_t>(m)]; }
    double& operator[](Measure m) { return values_[static_cast<std::size_t>(m)]; }

    IndexValue get(Measure m) const { return {m, (*this)[m]}; }

    bool operator==(const MeasureValues&) const = default;

private:
    std::array<double, kMeasureCount> values_{};
};

/// Every measure computed from a raw and an author-normalized vector.
inline MeasureValues compute_all(const CitationVector& raw, const CitationVector& frac) {
    MeasureValues out;
    out[Measure::h] = static_cast<double>(h_index(raw));
    out[Measure::c] = c_index(raw);
    out[Measure::mu] = mu_index(raw);
    out[Measure::g] = static_cast<double>(g_index(raw));
    out[Measure::o] = o_index(raw);
    out[Measure::m] = m_index(raw);
    out[Measure::h_frac] = fractional_index(BaseMeasure::h, frac);
    out[Measure::c_frac] = fractional_index(BaseMeasure::c, frac);
    out[Measure::mu_frac] = fractional_index(BaseMeasure::mu, frac);
    out[Measure::g_frac] = fractional_index(BaseMeasure::g, frac);
    out[Measure::o_frac] = fractional_index(BaseMeasure::o, frac);
    out[Measure::m_frac] = fractional_index(BaseMeasure::m, frac);
    out[Measure::h_I] = h_I_index(raw);
    out[Measure::h_m] = h_m_index(raw);
    out[Measure::h_p] = h_p_index(raw);
    out[Measure::h_ap] = h_ap_index(raw);
    return out;
}

inline MeasureValues compute_all(const SnapshotAuthor& author) {
    return compute_all(citation_vector(author, Normalizer::none),
                       citation_vector(author, Normalizer::author_count));
}

inline MeasureValues compute_all(const Snapshot& snapshot, std::string_view author_id) {
    return compute_all(snapshot.author(author_id));
}

/// compute_all for every author of a snapshot, in snapshot order.
inline std::vector<MeasureValues> measure_table(const Snapshot& snapshot) {
    std::vector<MeasureValues> rows;
    rows.reserve(snapshot.size());
    for (const auto& a : snapshot.authors()) rows.push_back(compute_all(a));
    return rows;
}

}  // namespace citerank

#endif  // CITERANK_INDICES_HPP
