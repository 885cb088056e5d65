#ifndef CITERANK_TOOLS_COMMANDS_HPP
#define CITERANK_TOOLS_COMMANDS_HPP

// Subcommand implementations behind the citerank CLI. Kept separate from
// argument parsing so the test suite can drive them directly.

#include "citerank/corpus.hpp"
#include "citerank/csv.hpp"
#include "citerank/evaluation.hpp"
#include "citerank/indices.hpp"
#include "citerank/ingest.hpp"
#include "citerank/rankcorr.hpp"
#include "citerank/synth.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace citerank::cli {

namespace fs = std::filesystem;

/// Output files of one command, written only after every file has been
/// produced in memory.
class OutputSet {
public:
    void add(std::string name, std::string content) { files_.emplace_back(std::move(name), std::move(content)); }

    void commit(const fs::path& dir) const {
        fs::create_directories(dir);
        for (const auto& [name, content] : files_) write_file_atomically(dir / name, content);
    }

    const std::vector<std::pair<std::string, std::string>>& files() const noexcept { return files_; }

private:
    std::vector<std::pair<std::string, std::string>> files_;
};

inline std::vector<Measure> parse_measure_list(const std::vector<std::string>& names) {
    if (names.empty()) return {kAllMeasures.begin(), kAllMeasures.end()};
    std::vector<Measure> out;
    for (const auto& n : names) {
        auto m = parse_measure(n);
        if (!m) throw ConfigError("unknown measure '" + n + "'");
        out.push_back(*m);
    }
    return out;
}

inline std::vector<Criterion> parse_criterion_list(const std::vector<std::string>& names) {
    if (names.empty()) return {Criterion::tau_b};
    std::vector<Criterion> out;
    for (const auto& n : names) {
        auto c = parse_criterion(n);
        if (!c) throw ConfigError("unknown criterion '" + n + "'");
        out.push_back(*c);
    }
    return out;
}

/// "2019", "1990-2019" or "1990:2019".
inline std::pair<Year, Year> parse_year_range(const std::string& text) {
    const auto sep = text.find_first_of("-:", 1);
    auto to_year = [&](const std::string& s) {
        auto v = detail::parse_int(s);
        if (!v) throw ConfigError("invalid year '" + s + "'");
        return static_cast<Year>(*v);
    };
    if (sep == std::string::npos) {
        const Year y = to_year(text);
        return {y, y};
    }
    const Year first = to_year(text.substr(0, sep));
    const Year last = to_year(text.substr(sep + 1));
    if (first > last) throw ConfigError("year range '" + text + "' is empty");
    return {first, last};
}

/// Comma-separated years and ranges, e.g. "1999,2009,2019" or "2000-2002".
inline std::vector<Year> parse_year_list(const std::string& text) {
    std::vector<Year> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty()) continue;
        auto [first, last] = parse_year_range(part);
        for (Year y = first; y <= last; ++y) out.push_back(y);
    }
    if (out.empty()) throw ConfigError("no years given");
    return out;
}

inline LoadResult load_corpus_dir(const fs::path& dir) { return load_corpus(CorpusPaths::in_directory(dir)); }

// ---------------------------------------------------------------------------

struct IndicesOptions {
    fs::path corpus;
    Year year = 2019;
    std::vector<Measure> measures{kAllMeasures.begin(), kAllMeasures.end()};
    fs::path out;
};

inline std::string indices_table(const AuthorCorpus& corpus, Year year, const std::vector<Measure>& measures) {
    const Snapshot snap = snapshot_at(corpus, year);
    std::ostringstream out;
    out << "author_id";
    for (Measure m : measures) out << ',' << to_string(m);
    out << '\n';
    for (const auto& a : snap.authors()) {
        const MeasureValues values = compute_all(a);
        out << csv::escape(a.author_id);
        for (Measure m : measures) out << ',' << csv::format_value(values[m]);
        out << '\n';
    }
    return out.str();
}

inline int cmd_indices(const IndicesOptions& opt, std::ostream& log) {
    const auto loaded = load_corpus_dir(opt.corpus);
    const std::string table = indices_table(loaded.corpus, opt.year, opt.measures);
    fs::create_directories(opt.out.has_parent_path() ? opt.out.parent_path() : fs::path("."));
    write_file_atomically(opt.out, table);
    log << "wrote " << loaded.corpus.size() << " authors x " << opt.measures.size() << " measures to "
        << opt.out.string() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

struct EvaluateOptions {
    fs::path corpus;
    std::vector<Measure> measures{kAllMeasures.begin(), kAllMeasures.end()};
    std::vector<Criterion> criteria{Criterion::tau_b};
    Year first_year = 1990;
    Year last_year = 2019;
    int horizon = 5;
    AwardScheme scheme;
    AuthorFilter filter;
    bool seed_given = false;

    void validate() const {
        scheme.validate();
        filter.validate();
        if (horizon < 0) throw ConfigError("--horizon must be >= 0");
        if (first_year > last_year) throw ConfigError("year range is empty");
        if (scheme.subset_fraction < 1.0 && !seed_given) {
            throw ConfigError("--award-subset-frac < 1 samples awards at random and requires --seed");
        }
        if (measures.empty() || criteria.empty()) throw ConfigError("no measures or criteria selected");
    }
};

inline nlohmann::json to_manifest(const EvaluateOptions& opt) {
    nlohmann::json measures = nlohmann::json::array();
    for (Measure m : opt.measures) measures.push_back(std::string(to_string(m)));
    nlohmann::json criteria = nlohmann::json::array();
    for (Criterion c : opt.criteria) criteria.push_back(std::string(to_string(c)));
    return {
        {"command", "evaluate"},
        {"corpus", opt.corpus.string()},
        {"measures", measures},
        {"criteria", criteria},
        {"years", {opt.first_year, opt.last_year}},
        {"horizon", opt.horizon},
        {"award_scheme",
         {{"mode", std::string(to_string(opt.scheme.mode))},
          {"selective_threshold", opt.scheme.selective_threshold},
          {"selective_factor", opt.scheme.selective_factor},
          {"subset_fraction", opt.scheme.subset_fraction},
          {"seed", opt.scheme.rng_seed}}},
        {"filter",
         {{"mode", std::string(to_string(opt.filter.mode))},
          {"max_avg_authors", opt.filter.max_avg_authors},
          {"window", {opt.filter.window_start, opt.filter.window_end}}}},
        {"seed_given", opt.seed_given},
    };
}

inline EvaluateOptions from_manifest(const nlohmann::json& j) {
    try {
        EvaluateOptions opt;
        if (j.at("command").get<std::string>() != "evaluate") throw ConfigError("manifest is not an evaluate manifest");
        opt.corpus = j.at("corpus").get<std::string>();
        opt.measures = parse_measure_list(j.at("measures").get<std::vector<std::string>>());
        opt.criteria = parse_criterion_list(j.at("criteria").get<std::vector<std::string>>());
        opt.first_year = j.at("years").at(0).get<Year>();
        opt.last_year = j.at("years").at(1).get<Year>();
        opt.horizon = j.at("horizon").get<int>();
        const auto& s = j.at("award_scheme");
        auto mode = parse_award_mode(s.at("mode").get<std::string>());
        if (!mode) throw ConfigError("manifest: unknown award scheme");
        opt.scheme.mode = *mode;
        opt.scheme.selective_threshold = s.at("selective_threshold").get<std::int64_t>();
        opt.scheme.selective_factor = s.at("selective_factor").get<double>();
        opt.scheme.subset_fraction = s.at("subset_fraction").get<double>();
        opt.scheme.rng_seed = s.at("seed").get<std::uint64_t>();
        const auto& f = j.at("filter");
        auto fmode = parse_filter_mode(f.at("mode").get<std::string>());
        if (!fmode) throw ConfigError("manifest: unknown filter");
        opt.filter.mode = *fmode;
        opt.filter.max_avg_authors = f.at("max_avg_authors").get<double>();
        opt.filter.window_start = f.at("window").at(0).get<Year>();
        opt.filter.window_end = f.at("window").at(1).get<Year>();
        opt.seed_given = j.value("seed_given", false);
        return opt;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid manifest: ") + e.what());
    }
}

inline std::string series_csv(const EvaluationSeries& s) {
    std::ostringstream out;
    out << "year,value,n_authors\n";
    for (const auto& p : s.points) out << p.year << ',' << csv::format_optional(p.value) << ',' << p.n_authors << '\n';
    return out.str();
}

inline std::string series_file_name(Measure m, Criterion c) {
    return "series_" + std::string(to_string(m)) + "_" + std::string(to_string(c)) + ".csv";
}

/// Series for every (measure, criterion) plus manifest.json.
inline OutputSet evaluate_outputs(const AuthorCorpus& corpus, const EvaluateOptions& opt) {
    opt.validate();
    Evaluator evaluator(corpus);
    OutputSet outputs;
    for (Measure m : opt.measures) {
        for (Criterion c : opt.criteria) {
            const auto s = evaluator.series(m, c, opt.first_year, opt.last_year, opt.horizon, opt.scheme, opt.filter);
            outputs.add(series_file_name(m, c), series_csv(s));
        }
    }
    outputs.add("manifest.json", to_manifest(opt).dump(2) + "\n");
    return outputs;
}

inline int cmd_evaluate(const EvaluateOptions& opt, const fs::path& out_dir, std::ostream& log) {
    opt.validate();
    const auto loaded = load_corpus_dir(opt.corpus);
    const OutputSet outputs = evaluate_outputs(loaded.corpus, opt);
    outputs.commit(out_dir);
    log << "wrote " << outputs.files().size() - 1 << " series (horizon " << opt.horizon << ") to "
        << out_dir.string() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

struct RocOptions {
    fs::path corpus;
    Year year = 2019;
    std::vector<Measure> measures{kAllMeasures.begin(), kAllMeasures.end()};
    AwardScheme scheme;
};

/// roc_<measure>.csv per measure plus auc.csv. A degenerate award axis is
/// flagged per measure in the summary; the other files are still written.
inline OutputSet roc_outputs(const AuthorCorpus& corpus, const RocOptions& opt) {
    const Snapshot snap = snapshot_at(corpus, opt.year);
    const auto table = measure_table(snap);
    const auto awards = award_scores(corpus, opt.year, opt.scheme);
    OutputSet outputs;
    std::ostringstream summary;
    summary << "measure,auc,status\n";
    for (Measure m : opt.measures) {
        std::vector<double> values;
        values.reserve(table.size());
        for (const auto& row : table) values.push_back(row[m]);
        try {
            const RocCurve curve = roc_curve(values, awards);
            std::ostringstream points;
            points << "fpr,tpr\n";
            for (const auto& p : curve.points) {
                points << csv::format_number(p.false_positive_rate) << ',' << csv::format_number(p.true_positive_rate)
                       << '\n';
            }
            outputs.add("roc_" + std::string(to_string(m)) + ".csv", points.str());
            summary << to_string(m) << ',' << csv::format_number(curve.auc) << ",ok\n";
        } catch (const DegenerateInputError&) {
            summary << to_string(m) << ",,degenerate\n";
        }
    }
    outputs.add("auc.csv", summary.str());
    return outputs;
}

inline int cmd_roc(const RocOptions& opt, const fs::path& out_dir, std::ostream& log) {
    opt.scheme.validate();
    const auto loaded = load_corpus_dir(opt.corpus);
    const OutputSet outputs = roc_outputs(loaded.corpus, opt);
    outputs.commit(out_dir);
    log << "wrote ROC curves for " << opt.measures.size() << " measures to " << out_dir.string() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

struct CorrMatrixOptions {
    fs::path corpus;
    std::vector<Year> years{1999, 2009, 2019};
    std::vector<Measure> measures{kAllMeasures.begin(), kAllMeasures.end()};
};

inline std::string matrix_csv(const CorrelationMatrix& m) {
    std::ostringstream out;
    out << "measure";
    for (Measure x : m.measures) out << ',' << to_string(x);
    out << '\n';
    for (std::size_t i = 0; i < m.measures.size(); ++i) {
        out << to_string(m.measures[i]);
        for (std::size_t j = 0; j < m.measures.size(); ++j) out << ',' << csv::format_optional(m.at(i, j));
        out << '\n';
    }
    return out.str();
}

inline OutputSet corr_matrix_outputs(const AuthorCorpus& corpus, const CorrMatrixOptions& opt) {
    OutputSet outputs;
    for (Year y : opt.years) {
        outputs.add("corr_" + std::to_string(y) + ".csv",
                    matrix_csv(measure_correlation_matrix(corpus, y, opt.measures)));
    }
    return outputs;
}

inline int cmd_corr_matrix(const CorrMatrixOptions& opt, const fs::path& out_dir, std::ostream& log) {
    const auto loaded = load_corpus_dir(opt.corpus);
    const OutputSet outputs = corr_matrix_outputs(loaded.corpus, opt);
    outputs.commit(out_dir);
    log << "wrote " << opt.years.size() << " correlation matrices to " << out_dir.string() << '\n';
    return 0;
}

// ---------------------------------------------------------------------------

struct SynthOptions {
    std::optional<fs::path> config;
    std::optional<std::uint64_t> seed;
};

inline SynthConfig resolve_synth_config(const SynthOptions& opt) {
    nlohmann::json j = nlohmann::json::object();
    if (opt.config) {
        std::ifstream in(*opt.config);
        if (!in) throw std::runtime_error("cannot open " + opt.config->string());
        try {
            j = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ConfigError(std::string("synth config: ") + e.what());
        }
    }
    if (opt.seed) j["rng_seed"] = *opt.seed;
    if (!j.contains("rng_seed") && !j.contains("seed")) {
        throw ConfigError("synth requires a seed (rng_seed in the config or --seed)");
    }
    return synth_config_from_json(j);
}

inline void print_summary(const RegimeSummary& s, std::ostream& log) {
    log << "authors " << s.authors << ", publications " << s.publications << ", award grants " << s.grants
        << ", mean authors/paper " << csv::format_number(s.mean_team_size) << '\n';
    log << "year,mean_authors_per_paper\n";
    for (const auto& [y, mean] : s.mean_team_size_by_year) log << y << ',' << csv::format_number(mean) << '\n';
}

inline int cmd_synth(const SynthOptions& opt, const fs::path& out_dir, std::ostream& log) {
    const SynthConfig config = resolve_synth_config(opt);
    const AuthorCorpus corpus = generate(config);
    save_corpus(corpus, out_dir);
    log << "regime " << to_string(config.team_regime) << ", seed " << config.rng_seed << '\n';
    print_summary(summarize(corpus), log);
    return 0;
}

// ---------------------------------------------------------------------------

inline int cmd_validate(const fs::path& corpus_dir, const std::optional<fs::path>& out_dir, std::ostream& log) {
    const auto loaded = load_corpus_dir(corpus_dir);
    std::ostringstream summary, rejects;
    loaded.report.write_summary_csv(summary);
    loaded.report.write_reject_log_csv(rejects);
    if (out_dir) {
        OutputSet outputs;
        outputs.add("cleaning_report.csv", summary.str());
        outputs.add("rejects.csv", rejects.str());
        outputs.commit(*out_dir);
    }
    log << "authors " << loaded.corpus.size() << ", award types " << loaded.corpus.catalog().size()
        << ", publications " << loaded.report.total << " (accepted " << loaded.report.accepted << ", rejected "
        << loaded.report.rejected_total() << ")\n";
    if (loaded.corpus.platform() == "scholar") {
        log << "note: Scholar truncates author lists at roughly 150 names; counts are not corrected\n";
    }
    log << summary.str();
    return 0;
}

}  // namespace citerank::cli

#endif  // CITERANK_TOOLS_COMMANDS_HPP
