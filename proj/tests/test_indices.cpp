#include "citerank/indices.hpp"
#include "citerank/synth.hpp"
#include "generators.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace citerank;

namespace {

const CitationVector kRaw = CitationVector::single_author({10, 8, 5, 4, 3});
const CitationVector kFrac = CitationVector::single_author({8, 5, 3, 1, 1});
const CitationVector kEmpty;

// (c, A) = (10,2),(8,1),(5,5),(4,4)
const CitationVector kCore({{10, 2}, {8, 1}, {5, 5}, {4, 4}});

void expect_close(double actual, double expected) {
    EXPECT_NEAR(actual, expected, 1e-9 * std::max(1.0, std::abs(expected)));
}

}  // namespace

TEST(HIndex, Examples) {
    EXPECT_EQ(h_index(kEmpty), 0u);
    EXPECT_EQ(h_index(kRaw), 4u);
    EXPECT_EQ(h_index(CitationVector::single_author({1, 1, 1})), 1u);
    EXPECT_EQ(h_index(CitationVector::single_author({0, 0})), 0u);
}

TEST(CIndex, Examples) {
    EXPECT_EQ(c_index(kEmpty), 0.0);
    EXPECT_EQ(c_index(kRaw), 30.0);
    EXPECT_EQ(c_index(kFrac), 18.0);
}

TEST(MuIndex, Examples) {
    EXPECT_EQ(mu_index(kRaw), 6.0);
    EXPECT_EQ(mu_index(kEmpty), 0.0);
    EXPECT_EQ(mu_index(CitationVector::single_author({7})), 7.0);
}

TEST(GIndex, Examples) {
    EXPECT_EQ(g_index(kRaw), 5u);
    EXPECT_EQ(g_index(CitationVector::single_author({0, 0})), 0u);
    EXPECT_EQ(g_index(kFrac), 4u);
    EXPECT_EQ(g_index(kEmpty), 0u);
}

TEST(GIndex, NotPaddedBeyondPaperCount) {
    EXPECT_EQ(g_index(CitationVector::single_author({100})), 1u);
}

TEST(OIndex, Examples) {
    expect_close(o_index(kRaw), std::sqrt(40.0));
    EXPECT_EQ(o_index(kEmpty), 0.0);
    for (double k : {1.0, 2.0, 9.0, 250.0}) expect_close(o_index(CitationVector::single_author({k})), std::sqrt(k));
}

TEST(MIndex, Examples) {
    EXPECT_EQ(m_index(kRaw), 6.5);
    EXPECT_EQ(m_index(kEmpty), 0.0);
    EXPECT_EQ(fractional_index(BaseMeasure::m, kFrac), 5.0);
}

TEST(FractionalIndex, Examples) {
    EXPECT_EQ(fractional_index(BaseMeasure::h, kFrac), 3.0);
    expect_close(fractional_index(BaseMeasure::o, kFrac), std::sqrt(24.0));
    EXPECT_EQ(fractional_index(BaseMeasure::c, kFrac), 18.0);
    EXPECT_EQ(fractional_index(BaseMeasure::g, kFrac), 4.0);
    EXPECT_EQ(fractional_index(BaseMeasure::mu, kFrac), 3.6);
}

TEST(HIIndex, Examples) {
    expect_close(h_I_index(kCore), 4.0 / 3.0);
    EXPECT_EQ(h_I_index(kRaw), 4.0);
    EXPECT_EQ(h_I_index(kEmpty), 0.0);
}

TEST(HPIndex, Examples) {
    expect_close(h_p_index(kCore), 4.0 / std::sqrt(3.0));
    EXPECT_EQ(h_p_index(kRaw), 4.0);
    EXPECT_EQ(h_p_index(kEmpty), 0.0);
}

TEST(HApIndex, Examples) {
    EXPECT_EQ(h_ap_index(CitationVector({{9, 4}, {4, 1}})), 2.0);
    EXPECT_EQ(h_ap_index(kRaw), 4.0);
    EXPECT_EQ(h_ap_index(kEmpty), 0.0);
}

TEST(HMIndex, Examples) {
    expect_close(h_m_index(CitationVector({{10, 2}, {8, 1}, {5, 5}})), 1.7);
    EXPECT_EQ(h_m_index(kRaw), 4.0);
    EXPECT_EQ(h_m_index(kEmpty), 0.0);
}

TEST(HMIndex, NotRounded) {
    EXPECT_EQ(h_m_index(CitationVector({{5, 2}})), 0.5);
}

TEST(ComputeAll, ZeroPublicationsGivesAllZero) {
    const MeasureValues values = compute_all(SnapshotAuthor{"a", {}});
    for (Measure m : kAllMeasures) EXPECT_EQ(values[m], 0.0) << to_string(m);
}

TEST(ComputeAll, MatchesOraclesOnRandomProfiles) {
    Rng rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<oracle::Paper> papers;
        for (int i = 0; i < 20; ++i) papers.push_back({static_cast<double>(rng.below(60)), 1 + static_cast<int>(rng.below(8))});
        const auto values = compute_all(gen::to_vector(papers, false), gen::to_vector(papers, true));
        for (Measure m : kAllMeasures) {
            const double expected = oracle::measure(m, papers);
            EXPECT_NEAR(values[m], expected, 1e-9 * std::max(1.0, expected)) << to_string(m);
        }
    }
}

TEST(ComputeAll, SnapshotOverloadsAgree) {
    const auto corpus = generate(gen::small_config(3, 20));
    const auto snap = snapshot_at(corpus, 2010);
    const auto table = measure_table(snap);
    for (std::size_t i = 0; i < snap.size(); ++i) {
        EXPECT_EQ(table[i], compute_all(snap, snap.authors()[i].author_id));
    }
    EXPECT_THROW(compute_all(snap, "missing"), LookupError);
}

TEST(Measure, NamesRoundTrip) {
    for (Measure m : kAllMeasures) EXPECT_EQ(parse_measure(to_string(m)), m);
    EXPECT_EQ(to_string(Measure::h_frac), "h-frac");
    EXPECT_FALSE(parse_measure("i10").has_value());
    EXPECT_EQ(compute_all(kRaw, kFrac).get(Measure::h).value, 4.0);
}

// Property tests over random vectors.

TEST(IndexProperties, HBoundedByGAndN) {
    Rng rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto papers = gen::random_papers(rng);
        const auto raw = gen::to_vector(papers, false);
        const auto frac = gen::to_vector(papers, true);
        EXPECT_LE(h_index(raw), g_index(raw));
        EXPECT_LE(h_index(raw), raw.size());
        EXPECT_LE(g_index(raw), raw.size());
        EXPECT_LE(fractional_index(BaseMeasure::h, frac), static_cast<double>(h_index(raw)));
    }
}

TEST(IndexProperties, AddingCitationNeverDecreases) {
    Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        auto papers = gen::random_papers(rng);
        if (papers.empty()) continue;
        const auto before = compute_all(gen::to_vector(papers, false), gen::to_vector(papers, true));
        papers[rng.below(papers.size())].c += 1;
        const auto after = compute_all(gen::to_vector(papers, false), gen::to_vector(papers, true));
        for (Measure m : {Measure::h, Measure::c, Measure::g, Measure::o, Measure::c_frac}) {
            EXPECT_GE(after[m], before[m]) << to_string(m);
        }
    }
}

TEST(IndexProperties, DoublingTopCountScalesOBySqrtTwo) {
    Rng rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        auto papers = gen::random_papers(rng);
        if (papers.empty()) continue;
        const auto v = gen::to_vector(papers, false);
        if (v[0] == 0) continue;
        std::vector<double> counts(v.entries().begin(), v.entries().end());
        counts[0] *= 2;
        expect_close(o_index(CitationVector::single_author(counts)), std::sqrt(2.0) * o_index(v));
    }
}

TEST(IndexProperties, SingleAuthorEquivalenceIsExact) {
    Rng rng(5);
    for (int trial = 0; trial < 500; ++trial) {
        auto papers = gen::random_papers(rng);
        for (auto& p : papers) p.a = 1;
        const auto v = compute_all(gen::to_vector(papers, false), gen::to_vector(papers, true));
        EXPECT_EQ(v[Measure::h_frac], v[Measure::h]);
        EXPECT_EQ(v[Measure::c_frac], v[Measure::c]);
        EXPECT_EQ(v[Measure::mu_frac], v[Measure::mu]);
        EXPECT_EQ(v[Measure::g_frac], v[Measure::g]);
        EXPECT_EQ(v[Measure::o_frac], v[Measure::o]);
        EXPECT_EQ(v[Measure::m_frac], v[Measure::m]);
        EXPECT_EQ(v[Measure::h_I], v[Measure::h]);
        EXPECT_EQ(v[Measure::h_m], v[Measure::h]);
        EXPECT_EQ(v[Measure::h_p], v[Measure::h]);
        EXPECT_EQ(v[Measure::h_ap], v[Measure::h]);
    }
}

TEST(IndexProperties, MatchesBruteForceOracle) {
    Rng rng(1);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto papers = gen::random_papers(rng);
        const auto values = compute_all(gen::to_vector(papers, false), gen::to_vector(papers, true));
        for (Measure m : kAllMeasures) {
            const double expected = oracle::measure(m, papers);
            if (oracle::integer_valued(m)) {
                EXPECT_EQ(values[m], expected) << to_string(m);
            } else {
                EXPECT_NEAR(values[m], expected, 1e-9 * std::max(1.0, std::abs(expected))) << to_string(m);
            }
        }
    }
}
