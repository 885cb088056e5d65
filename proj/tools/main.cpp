#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace citerank;
using namespace citerank::cli;

// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.
constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

struct SchemeArgs {
    std::string mode = "equal";
    std::int64_t selective_threshold = 100;
    double selective_factor = 10.0;
    double subset_fraction = 1.0;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App* cmd) {
        cmd->add_option("--award-scheme", mode, "equal, selective or binary")->capture_default_str();
        cmd->add_option("--selective-threshold", selective_threshold, "laureate count at or below which an award is selective")
            ->capture_default_str();
        cmd->add_option("--selective-factor", selective_factor, "weight of a selective award")->capture_default_str();
        cmd->add_option("--award-subset-frac", subset_fraction, "fraction of award types retained")
            ->capture_default_str();
        cmd->add_option("--seed", seed, "seed for award subset sampling");
    }

    AwardScheme resolve() const {
        auto m = parse_award_mode(mode);
        if (!m) throw ConfigError("unknown award scheme '" + mode + "'");
        AwardScheme s;
        s.mode = *m;
        s.selective_threshold = selective_threshold;
        s.selective_factor = selective_factor;
        s.subset_fraction = subset_fraction;
        s.rng_seed = seed.value_or(0);
        s.validate();
        if (s.subset_fraction < 1.0 && !seed) {
            throw ConfigError("--award-subset-frac < 1 samples awards at random and requires --seed");
        }
        return s;
    }
};

int run(int argc, char** argv) {
    CLI::App app{"Citation index computation and award-based evaluation"};
    app.require_subcommand(1);

    std::string corpus;
    std::string out;
    std::vector<std::string> measures;

    // indices
    auto* indices = app.add_subcommand("indices", "per-author index table at one year");
    Year indices_year = 2019;
    indices->add_option("--corpus", corpus, "corpus directory")->required();
    indices->add_option("--year", indices_year, "observation year")->required();
    indices->add_option("--measures", measures, "measures to include (default all)")->delimiter(',');
    indices->add_option("--out", out, "output CSV file")->required();

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "effectiveness or predictive-power series");
    std::string eval_years = "1990-2019";
    std::vector<std::string> criteria;
    int horizon = 5;
    std::string filter = "all";
    double max_avg_authors = 100.0;
    std::string manifest;
    SchemeArgs eval_scheme;
    evaluate->add_option("--corpus", corpus, "corpus directory");
    evaluate->add_option("--years", eval_years, "year range, e.g. 1990-2019")->capture_default_str();
    evaluate->add_option("--measures", measures, "measures (default all)")->delimiter(',');
    evaluate->add_option("--criteria", criteria, "tau_b, auc, somers_d, gamma, rho")->delimiter(',');
    evaluate->add_option("--horizon", horizon, "years between measure and award snapshot")->capture_default_str();
    evaluate->add_option("--filter", filter, "all, no-hyperauthors, bottom-half, peak-window")->capture_default_str();
    evaluate->add_option("--max-avg-authors", max_avg_authors, "threshold for no-hyperauthors")
        ->capture_default_str();
    evaluate->add_option("--manifest", manifest, "rerun from a manifest.json; other options are ignored");
    evaluate->add_option("--out", out, "output directory")->required();
    eval_scheme.attach(evaluate);

    // roc
    auto* roc = app.add_subcommand("roc", "ROC curves and AUC at one year");
    Year roc_year = 2019;
    SchemeArgs roc_scheme;
    roc->add_option("--corpus", corpus, "corpus directory")->required();
    roc->add_option("--year", roc_year, "observation year")->required();
    roc->add_option("--measures", measures, "measures (default all)")->delimiter(',');
    roc->add_option("--out", out, "output directory")->required();
    roc_scheme.attach(roc);

    // corr-matrix
    auto* corr = app.add_subcommand("corr-matrix", "pairwise tau_b between measures");
    std::string corr_years = "1999,2009,2019";
    corr->add_option("--corpus", corpus, "corpus directory")->required();
    corr->add_option("--years", corr_years, "comma-separated years")->capture_default_str();
    corr->add_option("--measures", measures, "measures (default all)")->delimiter(',');
    corr->add_option("--out", out, "output directory")->required();

    // synth
    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    SynthOptions synth_opt;
    std::string synth_config;
    synth->add_option("--config", synth_config, "JSON generator configuration");
    synth->add_option("--seed", synth_opt.seed, "overrides rng_seed from the config");
    synth->add_option("--out", out, "output corpus directory")->required();

    // validate
    auto* validate = app.add_subcommand("validate", "load a corpus and report cleaning results");
    validate->add_option("--corpus", corpus, "corpus directory")->required();
    validate->add_option("--out", out, "directory for cleaning_report.csv and rejects.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (*indices) {
            return cmd_indices({corpus, indices_year, parse_measure_list(measures), out}, std::cout);
        }
        if (*evaluate) {
            EvaluateOptions opt;
            if (!manifest.empty()) {
                std::ifstream in(manifest);
                if (!in) throw std::runtime_error("cannot open " + manifest);
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(in);
                } catch (const nlohmann::json::parse_error& e) {
                    throw ConfigError(std::string("manifest: ") + e.what());
                }
                opt = from_manifest(j);
                if (!corpus.empty()) opt.corpus = corpus;
            } else {
                if (corpus.empty()) throw ConfigError("--corpus is required");
                opt.corpus = corpus;
                opt.measures = parse_measure_list(measures);
                opt.criteria = parse_criterion_list(criteria);
                std::tie(opt.first_year, opt.last_year) = parse_year_range(eval_years);
                opt.horizon = horizon;
                opt.scheme = eval_scheme.resolve();
                opt.seed_given = eval_scheme.seed.has_value();
                auto f = parse_filter_mode(filter);
                if (!f) throw ConfigError("unknown filter '" + filter + "'");
                opt.filter.mode = *f;
                opt.filter.max_avg_authors = max_avg_authors;
            }
            return cmd_evaluate(opt, out, std::cout);
        }
        if (*roc) {
            return cmd_roc({corpus, roc_year, parse_measure_list(measures), roc_scheme.resolve()}, out, std::cout);
        }
        if (*corr) {
            return cmd_corr_matrix({corpus, parse_year_list(corr_years), parse_measure_list(measures)}, out,
                                   std::cout);
        }
        if (*synth) {
            if (!synth_config.empty()) synth_opt.config = synth_config;
            return cmd_synth(synth_opt, out, std::cout);
        }
        if (*validate) {
            std::optional<fs::path> dir;
            if (!out.empty()) dir = out;
            return cmd_validate(corpus, dir, std::cout);
        }
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
    return kUsageError;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
