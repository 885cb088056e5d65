#include "citerank/evaluation.hpp"
#include "citerank/synth.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

using namespace citerank;

namespace {

// Two award types with the laureate totals of the John Bates Clark Medal
// and the American Academy of Arts & Sciences.
std::vector<AwardCatalogEntry> clark_and_academy() {
    return {{"clark", "John Bates Clark Medal", 42}, {"aaas", "American Academy of Arts & Sciences", 13837}};
}

// Author i has i single-author papers with i citations each (h = i) and
// i - 1 award grants, one per award type.
AuthorCorpus staircase(int n) {
    std::vector<AwardCatalogEntry> catalog;
    for (int k = 1; k <= n; ++k) catalog.push_back({"w" + std::to_string(k), "W", 10});
    std::vector<AuthorProfile> authors;
    for (int i = 1; i <= n; ++i) {
        std::vector<gen::PaperSpec> papers(static_cast<std::size_t>(i), gen::PaperSpec{2000, 1, {{2001, i}}});
        std::vector<AwardGrant> grants;
        for (int k = 1; k < i; ++k) grants.push_back({"w" + std::to_string(k), 2002});
        authors.push_back(gen::author("a" + std::to_string(i), papers, grants));
    }
    return AuthorCorpus(std::move(authors), std::move(catalog));
}

const AuthorCorpus& fixture() {
    static const AuthorCorpus corpus = generate(gen::small_config(42, 50));
    return corpus;
}

}  // namespace

TEST(AwardScores, CumulativeCounting) {
    const AuthorCorpus corpus({gen::author("a", {}, {{"clark", 1998}, {"aaas", 2005}})}, clark_and_academy());
    EXPECT_EQ(award_scores(corpus, 1997, {})[0], 0.0);
    EXPECT_EQ(award_scores(corpus, 2000, {})[0], 1.0);
    EXPECT_EQ(award_scores(corpus, 2010, {})[0], 2.0);
}

TEST(AwardScores, SelectiveWeightUsesLaureateTotals) {
    const AuthorCorpus corpus({gen::author("a", {}, {{"clark", 1998}, {"aaas", 2005}})}, clark_and_academy());
    AwardScheme scheme;
    scheme.mode = AwardMode::selective_weight;
    EXPECT_EQ(award_scores(corpus, 2010, scheme)[0], 11.0);
}

TEST(AwardScores, BinaryTakesZeroOrOne) {
    for (double s : award_scores(fixture(), 2019, {AwardMode::binary})) EXPECT_TRUE(s == 0.0 || s == 1.0);
    const auto scores = award_scores(fixture(), 2019, {AwardMode::binary});
    EXPECT_TRUE(std::find(scores.begin(), scores.end(), 1.0) != scores.end());
}

TEST(AwardScores, SubsetsDropWholeAwardTypes) {
    AwardScheme scheme;
    scheme.subset_fraction = 0.5;
    scheme.rng_seed = 9;
    const auto kept = retained_award_types(fixture(), scheme);
    EXPECT_EQ(kept.size(), 3u);
    EXPECT_EQ(kept, retained_award_types(fixture(), scheme));
    EXPECT_EQ(award_scores(fixture(), 2019, scheme), award_scores(fixture(), 2019, scheme));

    std::set<std::set<std::string>> distinct;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        scheme.rng_seed = seed;
        distinct.insert(retained_award_types(fixture(), scheme));
    }
    EXPECT_GT(distinct.size(), 1u);

    // Only grants of retained types count.
    scheme.rng_seed = 9;
    const auto scores = award_scores(fixture(), 2019, scheme);
    for (std::size_t i = 0; i < fixture().size(); ++i) {
        double expected = 0;
        for (const auto& g : fixture().authors()[i].awards) expected += kept.contains(g.award_id) ? 1 : 0;
        EXPECT_EQ(scores[i], expected);
    }
}

TEST(AwardScores, InvalidSchemes) {
    AwardScheme s;
    s.subset_fraction = 0;
    EXPECT_THROW(award_scores(fixture(), 2019, s), ConfigError);
    s = {};
    s.selective_factor = -1;
    EXPECT_THROW(s.validate(), ConfigError);
    s = {};
    s.selective_threshold = 0;
    EXPECT_THROW(s.validate(), ConfigError);
}

TEST(Effectiveness, PerfectConcordance) {
    const auto corpus = staircase(6);
    EXPECT_EQ(effectiveness(corpus, Measure::h, Criterion::tau_b, 2010), 1.0);
    EXPECT_EQ(effectiveness(corpus, Measure::h, Criterion::auc, 2010), 1.0);
}

TEST(Effectiveness, InputOrderIrrelevant) {
    std::vector<AuthorProfile> authors(fixture().authors().begin(), fixture().authors().end());
    Rng rng(3);
    rng.shuffle(authors.begin(), authors.end());
    const AuthorCorpus shuffled(authors, {fixture().catalog().begin(), fixture().catalog().end()});
    for (Criterion c : kAllCriteria) {
        EXPECT_EQ(effectiveness(shuffled, Measure::h_frac, c, 2015), effectiveness(fixture(), Measure::h_frac, c, 2015));
    }
}

TEST(Effectiveness, MatchesEndToEndOracle) {
    Evaluator ev(fixture());
    for (Year y : {1995, 2005, 2019}) {
        for (Measure m : {Measure::h, Measure::c_frac, Measure::m, Measure::h_m, Measure::h_ap}) {
            for (Criterion c : kAllCriteria) {
                EXPECT_NEAR(ev.effectiveness(m, c, y, {}, {}), oracle::evaluate(fixture(), m, c, y, 0), 1e-12)
                    << to_string(m) << ' ' << to_string(c) << ' ' << y;
            }
        }
    }
}

TEST(PredictivePower, MatchesEndToEndOracle) {
    Evaluator ev(fixture());
    AwardScheme selective;
    selective.mode = AwardMode::selective_weight;
    for (Year y : {1990, 2000, 2010}) {
        for (Criterion c : kAllCriteria) {
            EXPECT_NEAR(ev.predictive_power(Measure::g, c, y, 5, {}, {}),
                        oracle::evaluate(fixture(), Measure::g, c, y, 5), 1e-12);
            EXPECT_NEAR(ev.predictive_power(Measure::o_frac, c, y, 5, selective, {}),
                        oracle::evaluate(fixture(), Measure::o_frac, c, y, 5, selective), 1e-12);
        }
    }
}

TEST(PredictivePower, HorizonZeroIsEffectiveness) {
    Evaluator ev(fixture());
    for (Year y = 1990; y <= 2019; y += 3) {
        for (Measure m : kAllMeasures) {
            EXPECT_EQ(ev.predictive_power(m, Criterion::tau_b, y, 0, {}, {}),
                      ev.effectiveness(m, Criterion::tau_b, y, {}, {}));
        }
    }
}

TEST(PredictivePower, NoLaterAwardsMeansHorizonIrrelevant) {
    const auto corpus = staircase(5);
    for (int x = 0; x <= 10; ++x) {
        EXPECT_EQ(predictive_power(corpus, Measure::c, Criterion::rho, 2005, x),
                  effectiveness(corpus, Measure::c, Criterion::rho, 2005));
    }
}

TEST(PredictivePower, AwardYearOutsideRangeThrows) {
    EXPECT_THROW(predictive_power(fixture(), Measure::h, Criterion::tau_b, 2028, 5), RangeError);
    EXPECT_THROW(predictive_power(fixture(), Measure::h, Criterion::tau_b, 2000, -1), ConfigError);
}

TEST(Effectiveness, DegenerateYearTaggedWithYearAndMeasure) {
    try {
        effectiveness(fixture(), Measure::g, Criterion::tau_b, 1981);
        FAIL() << "expected an EvaluationError";
    } catch (const EvaluationError& e) {
        EXPECT_EQ(e.year(), 1981);
        EXPECT_EQ(e.measure(), Measure::g);
    }
}

TEST(Effectiveness, ScalingAllWeightsChangesNothing) {
    Evaluator ev(fixture());
    const Year y = 2012;
    const auto& table = ev.measures_at(y);
    auto awards = award_scores(fixture(), y, {});
    for (auto& w : awards) w *= 3.5;
    for (Measure m : {Measure::h, Measure::h_frac, Measure::mu}) {
        std::vector<double> xs;
        for (const auto& row : table) xs.push_back(row[m]);
        for (Criterion c : kAllCriteria) {
            EXPECT_NEAR(apply_criterion(c, xs, awards), ev.effectiveness(m, c, y, {}, {}), 1e-12);
        }
    }
    // Selective weighting with factor 1 is equal weighting.
    AwardScheme unit;
    unit.mode = AwardMode::selective_weight;
    unit.selective_factor = 1.0;
    EXPECT_EQ(ev.effectiveness(Measure::h, Criterion::tau_b, y, unit, {}),
              ev.effectiveness(Measure::h, Criterion::tau_b, y, {}, {}));
}

TEST(ApplyFilter, AllIsIdentity) {
    const auto snap = snapshot_at(fixture(), 2010);
    const auto kept = apply_filter(snap, {});
    ASSERT_EQ(kept.size(), snap.size());
    for (std::size_t i = 0; i < kept.size(); ++i) EXPECT_EQ(kept[i], i);
}

TEST(ApplyFilter, ExcludesHyperauthors) {
    const AuthorCorpus corpus({gen::author("big", {{2000, 2441, {}}, {2001, 2442, {}}}),
                               gen::author("small", {{2000, 3, {}}})},
                              {});
    AuthorFilter f;
    f.mode = FilterMode::no_hyperauthors;
    EXPECT_EQ(apply_filter(snapshot_at(corpus, 2019), f), (std::vector<std::size_t>{1}));
    f.max_avg_authors = std::numeric_limits<double>::infinity();
    EXPECT_EQ(apply_filter(snapshot_at(corpus, 2019), f), apply_filter(snapshot_at(corpus, 2019), {}));
}

TEST(ApplyFilter, InfiniteThresholdEqualsAll) {
    AuthorFilter f;
    f.mode = FilterMode::no_hyperauthors;
    f.max_avg_authors = std::numeric_limits<double>::infinity();
    const auto corpus = generate(gen::small_config(4, 40, TeamRegime::hyper));
    Evaluator ev(corpus);
    EXPECT_EQ(apply_filter(snapshot_at(corpus, 2019), f), apply_filter(snapshot_at(corpus, 2019), {}));
    EXPECT_EQ(ev.effectiveness(Measure::h, Criterion::gamma, 2019, {}, f),
              ev.effectiveness(Measure::h, Criterion::gamma, 2019, {}, {}));
}

TEST(ApplyFilter, BottomHalfByCitations) {
    const AuthorCorpus corpus({gen::author("a", {{2000, 1, {{2001, 20}}}}), gen::author("b", {{2000, 1, {{2001, 10}}}})},
                              {});
    AuthorFilter f;
    f.mode = FilterMode::bottom_half_citations;
    EXPECT_EQ(apply_filter(snapshot_at(corpus, 2019), f), (std::vector<std::size_t>{1}));
}

TEST(ApplyFilter, BottomHalfTiesBrokenById) {
    const AuthorCorpus corpus({gen::author("c", {{2000, 1, {{2001, 5}}}}), gen::author("a", {{2000, 1, {{2001, 5}}}}),
                               gen::author("b", {{2000, 1, {{2001, 5}}}}), gen::author("d", {{2000, 1, {{2001, 9}}}}),
                               gen::author("e", {{2000, 1, {{2001, 1}}}})},
                              {});
    AuthorFilter f;
    f.mode = FilterMode::bottom_half_citations;
    // floor(5/2) = 2: e (1 citation), then a (first id among the 5s).
    EXPECT_EQ(apply_filter(snapshot_at(corpus, 2019), f), (std::vector<std::size_t>{0, 4}));
}

TEST(ApplyFilter, PeakInWindowUsesEarliestMaximum) {
    const AuthorCorpus corpus(
        {gen::author("early", {{1995, 1, {}}, {1995, 1, {}}, {2005, 1, {}}, {2005, 1, {}}}),
         gen::author("inside", {{1995, 1, {}}, {2003, 1, {}}, {2003, 1, {}}}),
         gen::author("late", {{2010, 1, {}}}),
         gen::author("none", {})},
        {});
    AuthorFilter f;
    f.mode = FilterMode::peak_in_window;
    EXPECT_EQ(apply_filter(snapshot_at(corpus, 2019), f), (std::vector<std::size_t>{1}));
    f.window_start = 2010;
    f.window_end = 2010;
    EXPECT_THROW(apply_filter(snapshot_at(corpus, 2019), f), ConfigError);
}

TEST(ApplyFilter, EmptyResultIsDegenerate) {
    const AuthorCorpus corpus({gen::author("a", {{2000, 500, {}}})}, {});
    AuthorFilter f;
    f.mode = FilterMode::no_hyperauthors;
    EXPECT_THROW(apply_filter(snapshot_at(corpus, 2019), f), DegenerateInputError);
}

TEST(ApplyFilter, CorpusOverloadChecksSnapshot) {
    const auto snap = snapshot_at(staircase(3), 2010);
    EXPECT_THROW(apply_filter(fixture(), snap, {}), std::invalid_argument);
    EXPECT_EQ(apply_filter(staircase(3), snap, {}).size(), 3u);
}

TEST(Series, SingleYearEqualsEffectiveness) {
    const auto s = series(fixture(), Measure::h, Criterion::tau_b, 2019, 2019, 0);
    ASSERT_EQ(s.points.size(), 1u);
    EXPECT_EQ(s.points[0].value, effectiveness(fixture(), Measure::h, Criterion::tau_b, 2019));
    EXPECT_EQ(s.points[0].n_authors, fixture().size());
}

TEST(Series, GapsForDegenerateYears) {
    const auto s = series(fixture(), Measure::h, Criterion::tau_b, 1978, 1990, 0);
    EXPECT_FALSE(s.points.front().value.has_value());
    EXPECT_TRUE(s.points.back().value.has_value());
    for (std::size_t k = 1; k < s.points.size(); ++k) EXPECT_EQ(s.points[k].year, s.points[k - 1].year + 1);
}

TEST(Series, StaticCorpusIsConstant) {
    const auto s = series(staircase(5), Measure::g, Criterion::somers_d, 2002, 2015, 2);
    for (const auto& p : s.points) EXPECT_EQ(p.value, s.points.front().value);
}

TEST(Series, MatchesPerYearOracle) {
    const auto s = series(fixture(), Measure::h_frac, Criterion::gamma, 1990, 2014, 5);
    for (const auto& p : s.points) {
        ASSERT_TRUE(p.value.has_value());
        EXPECT_NEAR(*p.value, oracle::evaluate(fixture(), Measure::h_frac, Criterion::gamma, p.year, 5), 1e-12);
        EXPECT_GE(*p.value, -1.0);
        EXPECT_LE(*p.value, 1.0);
    }
}

TEST(Series, FilteredPopulationSizes) {
    AuthorFilter f;
    f.mode = FilterMode::bottom_half_citations;
    const auto s = series(fixture(), Measure::h, Criterion::tau_b, 2000, 2002, 0, {}, f);
    for (const auto& p : s.points) EXPECT_EQ(p.n_authors, fixture().size() / 2);
}

TEST(CorrelationMatrix, SymmetricWithUnitDiagonal) {
    const std::vector<Measure> measures(kAllMeasures.begin(), kAllMeasures.end());
    const auto m = measure_correlation_matrix(fixture(), 2019, measures);
    for (std::size_t i = 0; i < measures.size(); ++i) {
        ASSERT_TRUE(m.at(i, i).has_value());
        EXPECT_DOUBLE_EQ(*m.at(i, i), 1.0);
        for (std::size_t j = 0; j < measures.size(); ++j) {
            EXPECT_EQ(m.at(i, j), m.at(j, i));
            ASSERT_TRUE(m.at(i, j).has_value());
            EXPECT_GE(*m.at(i, j), -1.0);
            EXPECT_LE(*m.at(i, j), 1.0);
        }
    }
}

TEST(CorrelationMatrix, MatchesNaiveRecomputation) {
    const std::vector<Measure> measures{Measure::h, Measure::g, Measure::h_frac, Measure::h_I};
    const auto m = measure_correlation_matrix(fixture(), 2005, measures);
    std::vector<std::vector<double>> cols(measures.size());
    for (const auto& author : fixture().authors()) {
        const auto papers = oracle::papers_at(author, 2005);
        for (std::size_t j = 0; j < measures.size(); ++j) cols[j].push_back(oracle::measure(measures[j], papers));
    }
    for (std::size_t i = 0; i < measures.size(); ++i) {
        for (std::size_t j = 0; j < measures.size(); ++j) {
            EXPECT_NEAR(*m.at(i, j), oracle::tau_b(cols[i], cols[j]), 1e-12);
        }
    }
}

TEST(CorrelationMatrix, SingleAuthorPapersMakeHAndHFracIdentical) {
    auto config = gen::small_config(6, 30, TeamRegime::classic);
    config.classic_team_size = 1.0;
    const std::vector<Measure> measures{Measure::h, Measure::h_frac};
    const auto m = measure_correlation_matrix(generate(config), 2019, measures);
    EXPECT_EQ(m.at(0, 1), 1.0);
}

TEST(CorrelationMatrix, ConstantColumnIsUndefined) {
    const auto corpus = AuthorCorpus({gen::author("a", {{2000, 1, {{2001, 1}}}}), gen::author("b", {{2000, 1, {{2001, 5}}}})}, {});
    const std::vector<Measure> measures{Measure::h, Measure::c};
    const auto m = measure_correlation_matrix(corpus, 2019, measures);
    EXPECT_FALSE(m.at(0, 0).has_value());
    EXPECT_FALSE(m.at(0, 1).has_value());
    EXPECT_EQ(m.at(1, 1), 1.0);
}

TEST(CorrelationMatrix, NeedsTwoAuthors) {
    const std::vector<Measure> measures{Measure::h};
    EXPECT_THROW(measure_correlation_matrix(staircase(1), 2019, measures), DegenerateInputError);
}

TEST(Enums, NamesRoundTrip) {
    for (Criterion c : kAllCriteria) EXPECT_EQ(parse_criterion(to_string(c)), c);
    for (auto m : {AwardMode::equal_weight, AwardMode::selective_weight, AwardMode::binary}) {
        EXPECT_EQ(parse_award_mode(to_string(m)), m);
    }
    for (auto f : {FilterMode::all, FilterMode::no_hyperauthors, FilterMode::bottom_half_citations,
                   FilterMode::peak_in_window}) {
        EXPECT_EQ(parse_filter_mode(to_string(f)), f);
    }
    EXPECT_FALSE(parse_criterion("kappa").has_value());
}
