#ifndef CITERANK_SYNTH_HPP
#define CITERANK_SYNTH_HPP

#include "citerank/corpus.hpp"
#include "citerank/errors.hpp"
#include "citerank/rng.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace citerank {

enum class TeamRegime { classic, growing, hyper };

inline std::string_view to_string(TeamRegime r) {
    switch (r) {
        case TeamRegime::classic: return "classic";
        case TeamRegime::growing: return "growing";
        case TeamRegime::hyper: return "hyper";
    }
    return "classic";
}

inline std::optional<TeamRegime> parse_team_regime(std::string_view s) {
    for (auto r : {TeamRegime::classic, TeamRegime::growing, TeamRegime::hyper}) {
        if (to_string(r) == s) return r;
    }
    return std::nullopt;
}

/// Which per-author quantity awards follow.
enum class Reputation { c_frac, h };

struct SynthConfig {
    std::uint64_t rng_seed = 42;
    std::size_t n_authors = 250;
    Year first_year = 1970;
    Year last_year = 2019;
    /// Careers start uniformly within this many years of first_year.
    int career_start_spread = 15;

    double publication_rate = 3.0;  ///< mean papers per author-year, before productivity
    double citation_rate = 1.0;     ///< mean citations per paper-year, before quality
    double citation_half_life = 8.0;

    TeamRegime team_regime = TeamRegime::classic;
    double classic_team_size = 3.0;
    /// growing/hyper: mean team size = classic_team_size + growth_per_year * (year - first_year).
    double growth_per_year = 0.05;
    /// hyper: share of authors that join consortium papers from hyper_start_year on.
    double hyper_fraction = 0.3;
    Year hyper_start_year = 2000;
    double hyper_papers_per_year = 6.0;
    int hyper_team_min = 1000;
    int hyper_team_max = 3000;
    double hyper_citation_boost = 4.0;

    Year award_start_year = 1972;
    /// Laureate totals of the generated award types; one type per entry.
    std::vector<std::int64_t> award_laureates = {42, 80, 250, 1200, 5000, 13837};
    std::size_t laureates_per_award_year = 3;
    Reputation reputation = Reputation::c_frac;
    /// Log-normal sigma of a fixed per-author factor applied to reputation.
    double reputation_noise = 0.25;
    Field field = Field::physics;

    void validate() const {
        if (first_year > last_year) throw ConfigError("first_year must not exceed last_year");
        if (!YearRange{}.contains(first_year) || !YearRange{}.contains(last_year)) {
            throw ConfigError("generated years must lie within the valid snapshot range");
        }
        if (career_start_spread < 0) throw ConfigError("career_start_spread must be >= 0");
        for (double rate : {publication_rate, citation_rate, growth_per_year, hyper_papers_per_year,
                            hyper_citation_boost, reputation_noise}) {
            if (!(rate >= 0.0) || !std::isfinite(rate)) throw ConfigError("rates must be finite and >= 0");
        }
        if (!(citation_half_life > 0.0)) throw ConfigError("citation_half_life must be > 0");
        if (!(classic_team_size >= 1.0)) throw ConfigError("classic_team_size must be >= 1");
        if (!(hyper_fraction >= 0.0 && hyper_fraction <= 1.0)) throw ConfigError("hyper_fraction must lie in [0, 1]");
        if (hyper_team_min < 1 || hyper_team_max < hyper_team_min) throw ConfigError("invalid hyper team size bounds");
        for (auto n : award_laureates) {
            if (n < 1) throw ConfigError("award laureate totals must be >= 1");
        }
    }
};

/// Target mean author count of ordinary (non-consortium) papers in `year`.
inline double target_team_size(const SynthConfig& config, Year year) {
    if (config.team_regime == TeamRegime::classic) return config.classic_team_size;
    return config.classic_team_size + config.growth_per_year * static_cast<double>(year - config.first_year);
}

inline SynthConfig synth_config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("synth config must be a JSON object");
    SynthConfig c;
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "rng_seed" || key == "seed") c.rng_seed = value.get<std::uint64_t>();
            else if (key == "n_authors") c.n_authors = value.get<std::size_t>();
            else if (key == "first_year") c.first_year = value.get<Year>();
            else if (key == "last_year") c.last_year = value.get<Year>();
            else if (key == "career_start_spread") c.career_start_spread = value.get<int>();
            else if (key == "publication_rate") c.publication_rate = value.get<double>();
            else if (key == "citation_rate") c.citation_rate = value.get<double>();
            else if (key == "citation_half_life") c.citation_half_life = value.get<double>();
            else if (key == "team_regime") {
                auto r = parse_team_regime(value.get<std::string>());
                if (!r) throw ConfigError("unknown team_regime '" + value.get<std::string>() + "'");
                c.team_regime = *r;
            } else if (key == "classic_team_size") c.classic_team_size = value.get<double>();
            else if (key == "growth_per_year") c.growth_per_year = value.get<double>();
            else if (key == "hyper_fraction") c.hyper_fraction = value.get<double>();
            else if (key == "hyper_start_year") c.hyper_start_year = value.get<Year>();
            else if (key == "hyper_papers_per_year") c.hyper_papers_per_year = value.get<double>();
            else if (key == "hyper_team_min") c.hyper_team_min = value.get<int>();
            else if (key == "hyper_team_max") c.hyper_team_max = value.get<int>();
            else if (key == "hyper_citation_boost") c.hyper_citation_boost = value.get<double>();
            else if (key == "award_start_year") c.award_start_year = value.get<Year>();
            else if (key == "award_laureates") c.award_laureates = value.get<std::vector<std::int64_t>>();
            else if (key == "laureates_per_award_year") c.laureates_per_award_year = value.get<std::size_t>();
            else if (key == "reputation") {
                const auto s = value.get<std::string>();
                if (s == "c-frac") c.reputation = Reputation::c_frac;
                else if (s == "h") c.reputation = Reputation::h;
                else throw ConfigError("reputation must be 'c-frac' or 'h'");
            } else if (key == "reputation_noise") c.reputation_noise = value.get<double>();
            else if (key == "field") {
                auto f = parse_field(value.get<std::string>());
                if (!f) throw ConfigError("unknown field '" + value.get<std::string>() + "'");
                c.field = *f;
            } else {
                throw ConfigError("unknown synth config key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("synth config: ") + e.what());
    }
    c.validate();
    return c;
}

namespace detail {

struct DraftPaper {
    Year year = 0;
    int authors = 1;
    std::map<Year, std::int64_t> cites;
};

/// Per-year citations of one paper, drawn from `rng` (one draw per year).
inline std::map<Year, std::int64_t> draw_citations(Rng& rng, const SynthConfig& config, Year published,
                                                   double quality) {
    std::map<Year, std::int64_t> cites;
    for (Year y = published; y <= config.last_year; ++y) {
        const double age = static_cast<double>(y - published);
        // Ramps up over the first two years, then decays.
        const double ramp = std::min(1.0, (age + 1.0) / 3.0);
        const double mean = config.citation_rate * quality * ramp * std::exp2(-age / config.citation_half_life);
        const auto n = rng.poisson(mean);
        if (n > 0) cites.emplace(y, n);
    }
    return cites;
}

inline std::string padded_id(char prefix, std::size_t value, std::size_t width) {
    std::string digits = std::to_string(value);
    if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
    return prefix + digits;
}

}  // namespace detail

/// Seeded synthetic corpus.
///
/// Every author draws from its own substream, and ordinary papers consume
/// the same number of uniforms in every regime. For equal seeds the three
/// regimes therefore share paper counts and citation histories, and team
/// sizes are ordered classic <= growing <= hyper paper by paper.
///
/// Awards: from award_start_year, each award type is conferred every year
/// on the `laureates_per_award_year` highest-reputation authors who do not
/// hold it yet. Reputation is the author's c-frac (or h) at the end of the
/// year times a fixed per-author log-normal factor.
inline AuthorCorpus generate(const SynthConfig& config) {
    config.validate();
    const std::size_t n = config.n_authors;
    const int span = config.last_year - config.first_year + 1;
    const std::size_t id_width = std::max<std::size_t>(4, std::to_string(n).size());

    std::vector<AuthorProfile> authors(n);
    std::vector<double> reputation_factor(n, 1.0);
    // Fractional (or raw) citations received per year, for award ranking.
    std::vector<std::vector<double>> frac_by_year(n, std::vector<double>(static_cast<std::size_t>(span), 0.0));

    for (std::size_t i = 0; i < n; ++i) {
        Rng rng(derive_seed(config.rng_seed, 2 * i));
        Rng consortium_rng(derive_seed(config.rng_seed, 2 * i + 1));

        const double productivity = rng.lognormal(0.0, 0.5);
        const double talent = rng.lognormal(0.0, 0.6);
        reputation_factor[i] = rng.lognormal(0.0, config.reputation_noise);
        const Year career_start =
            config.first_year + static_cast<Year>(rng.below(static_cast<std::uint64_t>(config.career_start_spread) + 1));
        const bool is_hyper = consortium_rng.uniform() < config.hyper_fraction;

        std::vector<detail::DraftPaper> papers;
        for (Year y = career_start; y <= config.last_year; ++y) {
            const auto count = rng.poisson(config.publication_rate * productivity);
            for (std::int64_t k = 0; k < count; ++k) {
                const double u_team = rng.uniform();
                const double quality = talent * rng.lognormal(0.0, 0.8);
                const int team = 1 + static_cast<int>(
                                         Rng::poisson_quantile(target_team_size(config, y) - 1.0, u_team));
                papers.push_back({y, team, detail::draw_citations(rng, config, y, quality)});
            }
            if (config.team_regime == TeamRegime::hyper && is_hyper && y >= config.hyper_start_year) {
                const auto extra = consortium_rng.poisson(config.hyper_papers_per_year);
                for (std::int64_t k = 0; k < extra; ++k) {
                    const auto range = static_cast<std::uint64_t>(config.hyper_team_max - config.hyper_team_min + 1);
                    const int team = config.hyper_team_min + static_cast<int>(consortium_rng.below(range));
                    const double quality = config.hyper_citation_boost * consortium_rng.lognormal(0.0, 0.8);
                    papers.push_back({y, team, detail::draw_citations(consortium_rng, config, y, quality)});
                }
            }
        }

        auto& profile = authors[i];
        profile.author_id = detail::padded_id('s', i + 1, id_width);
        profile.display_name = "Synthetic Author " + std::to_string(i + 1);
        profile.field = config.field;
        profile.publications.reserve(papers.size());
        for (std::size_t k = 0; k < papers.size(); ++k) {
            auto& draft = papers[k];
            for (const auto& [y, c] : draft.cites) {
                frac_by_year[i][static_cast<std::size_t>(y - config.first_year)] +=
                    static_cast<double>(c) / draft.authors;
            }
            profile.publications.push_back(
                {profile.author_id + "-p" + std::to_string(k + 1), draft.year, draft.authors, std::move(draft.cites)});
        }
    }

    std::vector<AwardCatalogEntry> catalog;
    for (std::size_t k = 0; k < config.award_laureates.size(); ++k) {
        catalog.push_back({detail::padded_id('A', k + 1, 2), "Synthetic Award " + std::to_string(k + 1),
                           config.award_laureates[k]});
    }

    if (n > 0 && !catalog.empty()) {
        std::vector<std::vector<bool>> holds(catalog.size(), std::vector<bool>(n, false));
        std::vector<double> cumulative(n, 0.0);
        std::vector<std::size_t> order(n);
        for (Year y = config.first_year; y <= config.last_year; ++y) {
            const auto yi = static_cast<std::size_t>(y - config.first_year);
            for (std::size_t i = 0; i < n; ++i) cumulative[i] += frac_by_year[i][yi];
            if (y < config.award_start_year) continue;

            std::vector<double> score(n);
            for (std::size_t i = 0; i < n; ++i) {
                double base = cumulative[i];
                if (config.reputation == Reputation::h) {
                    std::vector<double> cites;
                    for (const auto& p : authors[i].publications) {
                        if (p.effective_year <= y) cites.push_back(static_cast<double>(p.citations_through(y)));
                    }
                    std::sort(cites.begin(), cites.end(), std::greater<>());
                    std::size_t h = 0;
                    while (h < cites.size() && cites[h] >= static_cast<double>(h + 1)) ++h;
                    base = static_cast<double>(h);
                }
                score[i] = base * reputation_factor[i];
            }
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return score[a] > score[b]; });

            for (std::size_t k = 0; k < catalog.size(); ++k) {
                std::size_t conferred = 0;
                for (std::size_t i : order) {
                    if (conferred == config.laureates_per_award_year) break;
                    if (holds[k][i] || score[i] <= 0.0) continue;
                    holds[k][i] = true;
                    authors[i].awards.push_back({catalog[k].award_id, y});
                    ++conferred;
                }
            }
        }
    }

    return AuthorCorpus(std::move(authors), std::move(catalog), "synthetic");
}

/// Mean author count per publication year across the whole corpus.
inline std::map<Year, double> mean_team_size_by_year(const AuthorCorpus& corpus) {
    std::map<Year, std::pair<double, std::size_t>> acc;
    for (const auto& a : corpus.authors()) {
        for (const auto& p : a.publications) {
            auto& [sum, count] = acc[p.effective_year];
            sum += p.author_count;
            ++count;
        }
    }
    std::map<Year, double> out;
    for (const auto& [y, sc] : acc) out.emplace(y, sc.first / static_cast<double>(sc.second));
    return out;
}

struct RegimeSummary {
    std::size_t authors = 0;
    std::size_t publications = 0;
    std::size_t grants = 0;
    double mean_team_size = 0.0;
    std::map<Year, double> mean_team_size_by_year;
};

inline RegimeSummary summarize(const AuthorCorpus& corpus) {
    RegimeSummary s;
    s.authors = corpus.size();
    double team_sum = 0.0;
    for (const auto& a : corpus.authors()) {
        s.publications += a.publications.size();
        s.grants += a.awards.size();
        for (const auto& p : a.publications) team_sum += p.author_count;
    }
    if (s.publications > 0) s.mean_team_size = team_sum / static_cast<double>(s.publications);
    s.mean_team_size_by_year = mean_team_size_by_year(corpus);
    return s;
}

}  // namespace citerank

#endif  // CITERANK_SYNTH_HPP
