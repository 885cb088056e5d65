#ifndef CITERANK_EVALUATION_HPP
#define CITERANK_EVALUATION_HPP

#include "citerank/corpus.hpp"
#include "citerank/errors.hpp"
#include "citerank/indices.hpp"
#include "citerank/rankcorr.hpp"
#include "citerank/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace citerank {

enum class AwardMode { equal_weight, selective_weight, binary };

inline std::string_view to_string(AwardMode m) {
    switch (m) {
        case AwardMode::equal_weight: return "equal";
        case AwardMode::selective_weight: return "selective";
        case AwardMode::binary: return "binary";
    }
    return "equal";
}

inline std::optional<AwardMode> parse_award_mode(std::string_view s) {
    for (auto m : {AwardMode::equal_weight, AwardMode::selective_weight, AwardMode::binary}) {
        if (to_string(m) == s) return m;
    }
    return std::nullopt;
}

/// How award grants turn into a per-author score.
struct AwardScheme {
    AwardMode mode = AwardMode::equal_weight;
    /// Awards with at most this many laureates get `selective_factor` weight.
    std::int64_t selective_threshold = 100;
    double selective_factor = 10.0;
    /// Fraction of award types kept; < 1 drops a seeded sample of types.
    double subset_fraction = 1.0;
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (selective_threshold < 1) throw ConfigError("selective threshold must be >= 1");
        if (!(selective_factor > 0.0)) throw ConfigError("selective factor must be > 0");
        if (!(subset_fraction > 0.0 && subset_fraction <= 1.0)) {
            throw ConfigError("award subset fraction must lie in (0, 1]");
        }
    }
};

enum class FilterMode { all, no_hyperauthors, bottom_half_citations, peak_in_window };

inline std::string_view to_string(FilterMode m) {
    switch (m) {
        case FilterMode::all: return "all";
        case FilterMode::no_hyperauthors: return "no-hyperauthors";
        case FilterMode::bottom_half_citations: return "bottom-half";
        case FilterMode::peak_in_window: return "peak-window";
    }
    return "all";
}

inline std::optional<FilterMode> parse_filter_mode(std::string_view s) {
    for (auto m : {FilterMode::all, FilterMode::no_hyperauthors, FilterMode::bottom_half_citations,
                   FilterMode::peak_in_window}) {
        if (to_string(m) == s) return m;
    }
    return std::nullopt;
}

struct AuthorFilter {
    FilterMode mode = FilterMode::all;
    double max_avg_authors = 100.0;
    /// Half-open [window_start, window_end).
    Year window_start = 2000;
    Year window_end = 2010;

    void validate() const {
        if (mode == FilterMode::peak_in_window && window_start >= window_end) {
            throw ConfigError("peak window start must precede its end");
        }
        if (std::isnan(max_avg_authors)) throw ConfigError("max_avg_authors is NaN");
    }
};

enum class Criterion { tau_b, auc, somers_d, gamma, rho };

inline constexpr std::array<Criterion, 5> kAllCriteria = {Criterion::tau_b, Criterion::auc,
                                                          Criterion::somers_d, Criterion::gamma,
                                                          Criterion::rho};

inline std::string_view to_string(Criterion c) {
    switch (c) {
        case Criterion::tau_b: return "tau_b";
        case Criterion::auc: return "auc";
        case Criterion::somers_d: return "somers_d";
        case Criterion::gamma: return "gamma";
        case Criterion::rho: return "rho";
    }
    return "tau_b";
}

inline std::optional<Criterion> parse_criterion(std::string_view s) {
    for (Criterion c : kAllCriteria) {
        if (to_string(c) == s) return c;
    }
    return std::nullopt;
}

/// Degenerate criterion at a given (year, measure).
class EvaluationError : public DegenerateInputError {
public:
    EvaluationError(Year year, Measure measure, const std::string& reason)
        : DegenerateInputError(std::string(to_string(measure)) + " @ " + std::to_string(year) + ": " +
                               reason),
          year_(year),
          measure_(measure) {}

    Year year() const noexcept { return year_; }
    Measure measure() const noexcept { return measure_; }

private:
    Year year_;
    Measure measure_;
};

struct SeriesPoint {
    Year year = 0;
    std::optional<double> value;  ///< empty when the criterion is undefined that year
    std::size_t n_authors = 0;

    bool operator==(const SeriesPoint&) const = default;
};

struct EvaluationSeries {
    Measure measure = Measure::h;
    Criterion criterion = Criterion::tau_b;
    int horizon = 0;  ///< 0: effectiveness; X > 0: predictive power X years ahead
    std::vector<SeriesPoint> points;
};

/// Award types that survive random subsetting, sorted by id.
inline std::set<std::string> retained_award_types(const AuthorCorpus& corpus, const AwardScheme& scheme) {
    std::vector<std::string> ids;
    for (const auto& entry : corpus.catalog()) ids.push_back(entry.award_id);
    if (scheme.subset_fraction < 1.0 && !ids.empty()) {
        Rng rng(derive_seed(scheme.rng_seed, 0xa3a2d5ULL));
        rng.shuffle(ids.begin(), ids.end());
        auto keep = static_cast<std::size_t>(std::llround(scheme.subset_fraction * static_cast<double>(ids.size())));
        keep = std::clamp<std::size_t>(keep, 1, ids.size());
        ids.resize(keep);
    }
    return {ids.begin(), ids.end()};
}

/// Per-author award score counting grants conferred up to and including
/// `year`, in corpus author order.
inline std::vector<double> award_scores(const AuthorCorpus& corpus, Year year, const AwardScheme& scheme) {
    scheme.validate();
    const auto retained = retained_award_types(corpus, scheme);
    std::vector<double> scores;
    scores.reserve(corpus.size());
    for (const auto& author : corpus.authors()) {
        double score = 0.0;
        for (const auto& grant : author.awards) {
            if (grant.year_conferred > year || !retained.contains(grant.award_id)) continue;
            double weight = 1.0;
            if (scheme.mode == AwardMode::selective_weight &&
                corpus.award(grant.award_id).total_laureates <= scheme.selective_threshold) {
                weight = scheme.selective_factor;
            }
            score += weight;
        }
        if (scheme.mode == AwardMode::binary) score = score > 0.0 ? 1.0 : 0.0;
        scores.push_back(score);
    }
    return scores;
}

/// Indices (into corpus author order) of authors passing the filter at the
/// snapshot. Throws DegenerateInputError when nobody passes.
inline std::vector<std::size_t> apply_filter(const Snapshot& snapshot, const AuthorFilter& filter) {
    filter.validate();
    const auto authors = snapshot.authors();
    std::vector<std::size_t> kept;
    switch (filter.mode) {
        case FilterMode::all:
            for (std::size_t i = 0; i < authors.size(); ++i) kept.push_back(i);
            break;
        case FilterMode::no_hyperauthors:
            for (std::size_t i = 0; i < authors.size(); ++i) {
                if (avg_authors_per_publication(authors[i]) <= filter.max_avg_authors) kept.push_back(i);
            }
            break;
        case FilterMode::bottom_half_citations: {
            std::vector<std::pair<std::int64_t, std::size_t>> by_citations;
            for (std::size_t i = 0; i < authors.size(); ++i) {
                by_citations.emplace_back(authors[i].total_citations(), i);
            }
            // Snapshot order is author_id order, so the index breaks ties by id.
            std::sort(by_citations.begin(), by_citations.end());
            by_citations.resize(by_citations.size() / 2);
            for (const auto& [cites, i] : by_citations) kept.push_back(i);
            std::sort(kept.begin(), kept.end());
            break;
        }
        case FilterMode::peak_in_window:
            for (std::size_t i = 0; i < authors.size(); ++i) {
                std::map<Year, int> per_year;
                for (const auto& p : authors[i].publications) ++per_year[p.effective_year];
                if (per_year.empty()) continue;
                // std::map iterates years ascending; strict > keeps the earliest maximum.
                Year peak = per_year.begin()->first;
                int best = 0;
                for (const auto& [y, n] : per_year) {
                    if (n > best) {
                        best = n;
                        peak = y;
                    }
                }
                if (peak >= filter.window_start && peak < filter.window_end) kept.push_back(i);
            }
            break;
    }
    if (kept.empty()) throw DegenerateInputError("author filter '" + std::string(to_string(filter.mode)) +
                                                 "' selects nobody");
    return kept;
}

inline std::vector<std::size_t> apply_filter(const AuthorCorpus& corpus, const Snapshot& snapshot,
                                             const AuthorFilter& filter) {
    if (snapshot.size() != corpus.size()) throw std::invalid_argument("snapshot does not match corpus");
    return apply_filter(snapshot, filter);
}

/// Criterion value of a measure ranking against an award ranking.
inline double apply_criterion(Criterion criterion, std::span<const double> measure,
                              std::span<const double> awards) {
    switch (criterion) {
        case Criterion::tau_b: return kendall_tau_b(measure, awards);
        case Criterion::auc: return roc_curve(measure, awards).auc;
        case Criterion::somers_d: return somers_d(measure, awards);
        case Criterion::gamma: return goodman_gamma(measure, awards);
        case Criterion::rho: return spearman_rho(measure, awards);
    }
    return 0.0;
}

/// Runs effectiveness / predictive-power queries over one corpus, caching
/// per-year snapshots' measure tables and filtered populations.
///
/// Not safe for concurrent use (the caches are filled lazily); create one
/// evaluator per thread.
class Evaluator {
public:
    explicit Evaluator(const AuthorCorpus& corpus, YearRange valid = {}) : corpus_(corpus), valid_(valid) {}

    const AuthorCorpus& corpus() const noexcept { return corpus_; }

    /// Criterion of measure values at `year` against award scores at
    /// `year + horizon`, over the authors passing `filter` at `year`.
    double evaluate(Measure measure, Criterion criterion, Year year, int horizon, const AwardScheme& scheme,
                    const AuthorFilter& filter) {
        if (horizon < 0) throw ConfigError("horizon must be >= 0");
        const Year award_year = year + horizon;
        if (!valid_.contains(award_year)) {
            throw RangeError("award year " + std::to_string(award_year) + " outside the valid range");
        }
        const auto& data = year_data(year);
        const auto& population = this->population(year, filter);
        const auto& awards = award_table(award_year, scheme);
        if (population.size() < 2) {
            throw EvaluationError(year, measure, "fewer than two authors after filtering");
        }
        std::vector<double> xs, ys;
        xs.reserve(population.size());
        ys.reserve(population.size());
        for (std::size_t i : population) {
            xs.push_back(data.table[i][measure]);
            ys.push_back(awards[i]);
        }
        try {
            return apply_criterion(criterion, xs, ys);
        } catch (const EvaluationError&) {
            throw;
        } catch (const DegenerateInputError& e) {
            throw EvaluationError(year, measure, e.what());
        }
    }

    double effectiveness(Measure measure, Criterion criterion, Year year, const AwardScheme& scheme,
                         const AuthorFilter& filter) {
        return evaluate(measure, criterion, year, 0, scheme, filter);
    }

    double predictive_power(Measure measure, Criterion criterion, Year year, int horizon,
                            const AwardScheme& scheme, const AuthorFilter& filter) {
        return evaluate(measure, criterion, year, horizon, scheme, filter);
    }

    /// One point per year in [first, last]; undefined years are gaps.
    EvaluationSeries series(Measure measure, Criterion criterion, Year first, Year last, int horizon,
                            const AwardScheme& scheme, const AuthorFilter& filter) {
        if (first > last) throw ConfigError("year range is empty");
        EvaluationSeries out{measure, criterion, horizon, {}};
        for (Year y = first; y <= last; ++y) {
            SeriesPoint point{y, std::nullopt, 0};
            try {
                point.n_authors = population(y, filter).size();
            } catch (const DegenerateInputError&) {
                out.points.push_back(point);
                continue;
            }
            try {
                point.value = evaluate(measure, criterion, y, horizon, scheme, filter);
            } catch (const DegenerateInputError&) {
            }
            out.points.push_back(point);
        }
        return out;
    }

    const std::vector<MeasureValues>& measures_at(Year year) { return year_data(year).table; }

    const Snapshot& snapshot(Year year) { return year_data(year).snapshot; }

private:
    struct YearData {
        Snapshot snapshot;
        std::vector<MeasureValues> table;
    };

    const YearData& year_data(Year year) {
        auto it = years_.find(year);
        if (it == years_.end()) {
            Snapshot snap = snapshot_at(corpus_, year, valid_);
            auto table = measure_table(snap);
            it = years_.emplace(year, YearData{std::move(snap), std::move(table)}).first;
        }
        return it->second;
    }

    const std::vector<std::size_t>& population(Year year, const AuthorFilter& filter) {
        const auto key = std::make_tuple(year, static_cast<int>(filter.mode), filter.max_avg_authors,
                                         filter.window_start, filter.window_end);
        auto it = populations_.find(key);
        if (it == populations_.end()) {
            it = populations_.emplace(key, apply_filter(year_data(year).snapshot, filter)).first;
        }
        return it->second;
    }

    const std::vector<double>& award_table(Year year, const AwardScheme& scheme) {
        const auto key = std::make_tuple(year, static_cast<int>(scheme.mode), scheme.selective_threshold,
                                         scheme.selective_factor, scheme.subset_fraction, scheme.rng_seed);
        auto it = awards_.find(key);
        if (it == awards_.end()) it = awards_.emplace(key, award_scores(corpus_, year, scheme)).first;
        return it->second;
    }

    const AuthorCorpus& corpus_;
    YearRange valid_;
    std::map<Year, YearData> years_;
    std::map<std::tuple<Year, int, double, Year, Year>, std::vector<std::size_t>> populations_;
    std::map<std::tuple<Year, int, std::int64_t, double, double, std::uint64_t>, std::vector<double>> awards_;
};

inline double effectiveness(const AuthorCorpus& corpus, Measure measure, Criterion criterion, Year year,
                            const AwardScheme& scheme = {}, const AuthorFilter& filter = {}) {
    return Evaluator(corpus).effectiveness(measure, criterion, year, scheme, filter);
}

inline double predictive_power(const AuthorCorpus& corpus, Measure measure, Criterion criterion, Year year,
                               int horizon, const AwardScheme& scheme = {}, const AuthorFilter& filter = {}) {
    return Evaluator(corpus).predictive_power(measure, criterion, year, horizon, scheme, filter);
}

inline EvaluationSeries series(const AuthorCorpus& corpus, Measure measure, Criterion criterion, Year first,
                               Year last, int horizon, const AwardScheme& scheme = {},
                               const AuthorFilter& filter = {}) {
    return Evaluator(corpus).series(measure, criterion, first, last, horizon, scheme, filter);
}

/// Square matrix of Kendall's tau_b between measures; undefined entries
/// (a constant measure column) are empty.
struct CorrelationMatrix {
    std::vector<Measure> measures;
    std::vector<std::optional<double>> values;  ///< row-major

    const std::optional<double>& at(std::size_t row, std::size_t col) const {
        return values[row * measures.size() + col];
    }
};

inline CorrelationMatrix measure_correlation_matrix(const std::vector<MeasureValues>& table,
                                                    std::span<const Measure> measures) {
    if (table.size() < 2) throw DegenerateInputError("correlation matrix needs at least two authors");
    const std::size_t k = measures.size();
    std::vector<std::vector<double>> columns(k);
    for (std::size_t j = 0; j < k; ++j) {
        columns[j].reserve(table.size());
        for (const auto& row : table) columns[j].push_back(row[measures[j]]);
    }
    CorrelationMatrix out{{measures.begin(), measures.end()}, std::vector<std::optional<double>>(k * k)};
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            std::optional<double> tau;
            try {
                tau = kendall_tau_b(columns[i], columns[j]);
            } catch (const DegenerateInputError&) {
            }
            out.values[i * k + j] = tau;
            out.values[j * k + i] = tau;
        }
    }
    return out;
}

inline CorrelationMatrix measure_correlation_matrix(const AuthorCorpus& corpus, Year year,
                                                    std::span<const Measure> measures) {
    return measure_correlation_matrix(measure_table(snapshot_at(corpus, year)), measures);
}

}  // namespace citerank

#endif  // CITERANK_EVALUATION_HPP
