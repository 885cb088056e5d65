#ifndef CITERANK_INGEST_HPP
#define CITERANK_INGEST_HPP

#include "citerank/corpus.hpp"
#include "citerank/csv.hpp"
#include "citerank/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace citerank {

inline constexpr int kAuthorsSchemaVersion = 1;
inline constexpr std::string_view kAwardsHeader = "author_id,award_id,year";
inline constexpr std::string_view kCatalogHeader = "award_id,name,total_laureates";

/// A publication exactly as exported by a bibliographic platform.
struct RawPublication {
    std::string pub_id;
    std::string title;
    std::optional<Year> declared_year;
    std::optional<int> author_count;
    std::map<Year, std::int64_t> citations_by_year;
    bool is_patent = false;
    bool is_duplicate = false;

    bool operator==(const RawPublication&) const = default;
};

enum class RejectReason { missing_authors, missing_year, patent, duplicate, invalid_citations };

inline constexpr std::array<RejectReason, 5> kAllRejectReasons = {
    RejectReason::missing_authors, RejectReason::missing_year, RejectReason::patent,
    RejectReason::duplicate, RejectReason::invalid_citations};

inline std::string_view to_string(RejectReason r) {
    switch (r) {
        case RejectReason::missing_authors: return "missing_authors";
        case RejectReason::missing_year: return "missing_year";
        case RejectReason::patent: return "patent";
        case RejectReason::duplicate: return "duplicate";
        case RejectReason::invalid_citations: return "invalid_citations";
    }
    return "invalid_citations";
}

struct CleanResult {
    std::optional<PublicationRecord> record;
    std::optional<RejectReason> rejection;

    bool accepted() const noexcept { return record.has_value(); }
};

/// Applies the cleaning rules to one raw record: drop records without an
/// author count or a year, patents and platform-marked duplicates; then
/// move the effective year back to the first citing year when the paper
/// was cited before its declared publication year.
inline CleanResult clean_publication(const RawPublication& raw) {
    if (!raw.author_count || *raw.author_count < 1) return {std::nullopt, RejectReason::missing_authors};
    if (!raw.declared_year) return {std::nullopt, RejectReason::missing_year};
    if (raw.is_patent) return {std::nullopt, RejectReason::patent};
    if (raw.is_duplicate) return {std::nullopt, RejectReason::duplicate};
    for (const auto& [year, n] : raw.citations_by_year) {
        if (n < 0) return {std::nullopt, RejectReason::invalid_citations};
    }

    PublicationRecord rec;
    rec.pub_id = raw.pub_id;
    rec.author_count = *raw.author_count;
    rec.effective_year = *raw.declared_year;
    // Zero-count years are not citations; dropping them keeps the stored
    // form canonical.
    for (const auto& [year, n] : raw.citations_by_year) {
        if (n > 0) rec.citations_by_year.emplace(year, n);
    }
    if (!rec.citations_by_year.empty()) {
        rec.effective_year = std::min(rec.effective_year, rec.citations_by_year.begin()->first);
    }
    return {std::move(rec), std::nullopt};
}

/// A cleaned record viewed as raw input (declared year = effective year).
inline RawPublication to_raw(const PublicationRecord& rec) {
    RawPublication raw;
    raw.pub_id = rec.pub_id;
    raw.declared_year = rec.effective_year;
    raw.author_count = rec.author_count;
    raw.citations_by_year = rec.citations_by_year;
    return raw;
}

struct RejectEntry {
    std::size_t line = 0;
    std::string author_id;
    std::string pub_id;
    RejectReason reason = RejectReason::invalid_citations;
};

struct CleaningReport {
    std::size_t total = 0;
    std::size_t accepted = 0;
    std::map<RejectReason, std::size_t> rejected;
    std::vector<RejectEntry> log;

    std::size_t rejected_total() const {
        std::size_t n = 0;
        for (const auto& [reason, count] : rejected) n += count;
        return n;
    }

    std::size_t count(RejectReason r) const {
        auto it = rejected.find(r);
        return it == rejected.end() ? 0 : it->second;
    }

    void record_accept() {
        ++total;
        ++accepted;
    }

    void record_reject(RejectEntry entry) {
        ++total;
        ++rejected[entry.reason];
        log.push_back(std::move(entry));
    }

    /// `reason,count` rows, one per reason plus the accepted total.
    void write_summary_csv(std::ostream& out) const {
        out << "reason,count\n";
        out << "accepted," << accepted << '\n';
        for (RejectReason r : kAllRejectReasons) out << to_string(r) << ',' << count(r) << '\n';
    }

    void write_reject_log_csv(std::ostream& out) const {
        out << "line,author_id,pub_id,reason\n";
        for (const auto& e : log) {
            out << e.line << ',' << csv::escape(e.author_id) << ',' << csv::escape(e.pub_id) << ','
                << to_string(e.reason) << '\n';
        }
    }
};

struct LoadResult {
    AuthorCorpus corpus;
    CleaningReport report;
};

namespace detail {

inline std::optional<std::int64_t> parse_int(std::string_view s) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return value;
}

inline std::string require_string(const nlohmann::json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_string()) {
        throw ParseError(std::string("missing or non-string '") + key + "'", line);
    }
    return it->get<std::string>();
}

template <typename Int>
std::optional<Int> optional_int(const nlohmann::json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_number_integer()) throw ParseError(std::string("'") + key + "' must be an integer", line);
    return it->get<Int>();
}

inline bool optional_bool(const nlohmann::json& obj, const char* key, std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return false;
    if (!it->is_boolean()) throw ParseError(std::string("'") + key + "' must be a boolean", line);
    return it->get<bool>();
}

inline RawPublication parse_raw_publication(const nlohmann::json& p, std::size_t line) {
    if (!p.is_object()) throw ParseError("publication entry is not an object", line);
    RawPublication raw;
    raw.pub_id = require_string(p, "pub_id", line);
    if (auto it = p.find("title"); it != p.end() && it->is_string()) raw.title = it->get<std::string>();
    raw.declared_year = optional_int<Year>(p, "year", line);
    raw.author_count = optional_int<int>(p, "authors", line);
    raw.is_patent = optional_bool(p, "patent", line);
    raw.is_duplicate = optional_bool(p, "duplicate", line);
    if (auto it = p.find("cites"); it != p.end() && !it->is_null()) {
        if (!it->is_object()) throw ParseError("'cites' must be an object of year -> count", line);
        for (const auto& [key, value] : it->items()) {
            auto year = parse_int(key);
            if (!year) throw ParseError("citation year '" + key + "' is not an integer", line);
            if (!value.is_number_integer()) throw ParseError("citation count must be an integer", line);
            raw.citations_by_year[static_cast<Year>(*year)] += value.get<std::int64_t>();
        }
    }
    return raw;
}

}  // namespace detail

struct AuthorsFile {
    std::vector<AuthorProfile> authors;
    std::string platform;
};

/// Reads authors.jsonl: an optional leading header object carrying
/// `schema_version` (and optionally `platform`), then one author per line.
/// Publications pass through clean_publication; rejects land in `report`.
inline AuthorsFile read_authors_jsonl(std::istream& in, CleaningReport& report) {
    AuthorsFile file;
    std::set<std::string> author_ids;
    std::string line;
    std::size_t line_no = 0;
    bool seen_record = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
        }
        if (!obj.is_object()) throw ParseError("record is not a JSON object", line_no);
        if (obj.contains("schema_version")) {
            if (seen_record) throw ParseError("schema header must precede all records", line_no);
            const auto& v = obj["schema_version"];
            if (!v.is_number_integer() || v.get<int>() != kAuthorsSchemaVersion) {
                throw ParseError("unsupported schema_version (expected " +
                                     std::to_string(kAuthorsSchemaVersion) + ")",
                                 line_no);
            }
            if (auto it = obj.find("platform"); it != obj.end() && it->is_string()) {
                file.platform = it->get<std::string>();
            }
            seen_record = true;
            continue;
        }
        seen_record = true;

        AuthorProfile profile;
        profile.author_id = detail::require_string(obj, "author_id", line_no);
        if (!author_ids.insert(profile.author_id).second) {
            throw ParseError("duplicate author_id '" + profile.author_id + "'", line_no);
        }
        if (auto it = obj.find("name"); it != obj.end() && it->is_string()) {
            profile.display_name = it->get<std::string>();
        }
        const std::string field = obj.contains("field") ? detail::require_string(obj, "field", line_no) : "other";
        auto parsed_field = parse_field(field);
        if (!parsed_field) throw ParseError("unknown field tag '" + field + "'", line_no);
        profile.field = *parsed_field;

        std::set<std::string> pub_ids;
        if (auto it = obj.find("publications"); it != obj.end() && !it->is_null()) {
            if (!it->is_array()) throw ParseError("'publications' must be an array", line_no);
            for (const auto& p : *it) {
                RawPublication raw = detail::parse_raw_publication(p, line_no);
                if (pub_ids.contains(raw.pub_id)) raw.is_duplicate = true;
                CleanResult cleaned = clean_publication(raw);
                if (cleaned.accepted()) {
                    pub_ids.insert(raw.pub_id);
                    profile.publications.push_back(std::move(*cleaned.record));
                    report.record_accept();
                } else {
                    report.record_reject({line_no, profile.author_id, raw.pub_id, *cleaned.rejection});
                }
            }
        }
        file.authors.push_back(std::move(profile));
    }
    return file;
}

inline std::vector<AwardCatalogEntry> read_catalog_csv(std::istream& in) {
    std::vector<AwardCatalogEntry> catalog;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header) {
            if (line != kCatalogHeader) throw ParseError("expected header '" + std::string(kCatalogHeader) + "'", line_no);
            header = true;
            continue;
        }
        std::vector<std::string> f;
        try {
            f = csv::split_line(line);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_no);
        }
        if (f.size() != 3) throw ParseError("expected 3 fields", line_no);
        auto laureates = detail::parse_int(f[2]);
        if (!laureates || *laureates < 1) throw ParseError("total_laureates must be an integer >= 1", line_no);
        if (f[0].empty()) throw ParseError("empty award_id", line_no);
        catalog.push_back({f[0], f[1], *laureates});
    }
    return catalog;
}

struct GrantRow {
    std::size_t line = 0;
    std::string author_id;
    AwardGrant grant;
};

inline std::vector<GrantRow> read_awards_csv(std::istream& in) {
    std::vector<GrantRow> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (!header) {
            if (line != kAwardsHeader) throw ParseError("expected header '" + std::string(kAwardsHeader) + "'", line_no);
            header = true;
            continue;
        }
        std::vector<std::string> f;
        try {
            f = csv::split_line(line);
        } catch (const std::invalid_argument& e) {
            throw ParseError(e.what(), line_no);
        }
        if (f.size() != 3) throw ParseError("expected 3 fields", line_no);
        auto year = detail::parse_int(f[2]);
        if (!year) throw ParseError("year must be an integer", line_no);
        rows.push_back({line_no, f[0], {f[1], static_cast<Year>(*year)}});
    }
    return rows;
}

/// Builds a corpus from the three streams. `awards` and `catalog` may be null.
inline LoadResult load_corpus(std::istream& authors, std::istream* awards, std::istream* catalog) {
    LoadResult result;
    AuthorsFile file = read_authors_jsonl(authors, result.report);
    std::vector<AwardCatalogEntry> entries;
    if (catalog) entries = read_catalog_csv(*catalog);

    std::set<std::string, std::less<>> known_awards;
    for (const auto& e : entries) {
        if (!known_awards.insert(e.award_id).second) {
            throw ParseError("duplicate award_id '" + e.award_id + "' in catalog", 0);
        }
    }
    if (awards) {
        std::map<std::string, std::size_t, std::less<>> by_id;
        for (std::size_t i = 0; i < file.authors.size(); ++i) by_id.emplace(file.authors[i].author_id, i);
        for (auto& row : read_awards_csv(*awards)) {
            if (!known_awards.contains(row.grant.award_id)) {
                throw ReferenceError("awards line " + std::to_string(row.line) + ": unknown award_id '" +
                                     row.grant.award_id + "'");
            }
            auto it = by_id.find(row.author_id);
            if (it == by_id.end()) {
                throw ReferenceError("awards line " + std::to_string(row.line) + ": unknown author_id '" +
                                     row.author_id + "'");
            }
            file.authors[it->second].awards.push_back(std::move(row.grant));
        }
    }
    result.corpus = AuthorCorpus(std::move(file.authors), std::move(entries), std::move(file.platform));
    return result;
}

/// File names inside a corpus directory.
struct CorpusPaths {
    std::filesystem::path authors;
    std::filesystem::path awards;
    std::filesystem::path catalog;

    static CorpusPaths in_directory(const std::filesystem::path& dir) {
        return {dir / "authors.jsonl", dir / "awards.csv", dir / "catalog.csv"};
    }
};

/// Loads a corpus from disk. The authors file is required; missing award
/// or catalog files mean "no awards".
inline LoadResult load_corpus(const CorpusPaths& paths) {
    std::ifstream authors(paths.authors);
    if (!authors) throw std::runtime_error("cannot open " + paths.authors.string());
    std::ifstream awards, catalog;
    std::istream* awards_ptr = nullptr;
    std::istream* catalog_ptr = nullptr;
    if (std::filesystem::exists(paths.awards)) {
        awards.open(paths.awards);
        if (!awards) throw std::runtime_error("cannot open " + paths.awards.string());
        awards_ptr = &awards;
    }
    if (std::filesystem::exists(paths.catalog)) {
        catalog.open(paths.catalog);
        if (!catalog) throw std::runtime_error("cannot open " + paths.catalog.string());
        catalog_ptr = &catalog;
    }
    return load_corpus(authors, awards_ptr, catalog_ptr);
}

inline nlohmann::json to_json(const AuthorProfile& a) {
    nlohmann::json pubs = nlohmann::json::array();
    for (const auto& p : a.publications) {
        nlohmann::json cites = nlohmann::json::object();
        for (const auto& [year, n] : p.citations_by_year) cites[std::to_string(year)] = n;
        pubs.push_back({{"pub_id", p.pub_id}, {"year", p.effective_year}, {"authors", p.author_count},
                        {"cites", std::move(cites)}});
    }
    return {{"author_id", a.author_id},
            {"name", a.display_name},
            {"field", std::string(to_string(a.field))},
            {"publications", std::move(pubs)}};
}

inline void write_authors_jsonl(const AuthorCorpus& corpus, std::ostream& out) {
    nlohmann::json header = {{"schema_version", kAuthorsSchemaVersion}};
    if (!corpus.platform().empty()) header["platform"] = corpus.platform();
    out << header.dump() << '\n';
    for (const auto& a : corpus.authors()) out << to_json(a).dump() << '\n';
}

inline void write_awards_csv(const AuthorCorpus& corpus, std::ostream& out) {
    out << kAwardsHeader << '\n';
    for (const auto& a : corpus.authors()) {
        for (const auto& g : a.awards) {
            out << csv::escape(a.author_id) << ',' << csv::escape(g.award_id) << ',' << g.year_conferred << '\n';
        }
    }
}

inline void write_catalog_csv(const AuthorCorpus& corpus, std::ostream& out) {
    out << kCatalogHeader << '\n';
    for (const auto& e : corpus.catalog()) {
        out << csv::escape(e.award_id) << ',' << csv::escape(e.name) << ',' << e.total_laureates << '\n';
    }
}

/// Writes `content` to `path` via a temporary sibling and rename, so a
/// failed write never leaves a partial file behind.
inline void write_file_atomically(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

inline void save_corpus(const AuthorCorpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::ostringstream authors, awards, catalog;
    write_authors_jsonl(corpus, authors);
    write_awards_csv(corpus, awards);
    write_catalog_csv(corpus, catalog);
    const auto paths = CorpusPaths::in_directory(dir);
    write_file_atomically(paths.authors, authors.str());
    write_file_atomically(paths.awards, awards.str());
    write_file_atomically(paths.catalog, catalog.str());
}

// ---------------------------------------------------------------------------
// Profile matching between two bibliographic exports.

struct ExportPaper {
    std::string title;
    std::int64_t citation_count = 0;
};

/// One profile from a platform export. Names are expected pre-cleaned.
struct ProfileExport {
    std::string profile_id;
    std::string name;
    std::vector<ExportPaper> papers;  ///< sorted by citation_count, descending
    std::size_t paper_count = 0;

    ProfileExport() = default;
    ProfileExport(std::string id, std::string display_name, std::vector<ExportPaper> list,
                  std::optional<std::size_t> count = std::nullopt)
        : profile_id(std::move(id)), name(std::move(display_name)), papers(std::move(list)),
          paper_count(count.value_or(papers.size())) {
        std::stable_sort(papers.begin(), papers.end(),
                         [](const auto& a, const auto& b) { return a.citation_count > b.citation_count; });
    }
};

/// Casefold (ASCII), drop ASCII punctuation, collapse whitespace runs.
inline std::string normalize_title(std::string_view title) {
    std::string out;
    out.reserve(title.size());
    bool pending_space = false;
    for (unsigned char ch : title) {
        if (std::isspace(ch)) {
            pending_space = !out.empty();
            continue;
        }
        if (ch < 0x80 && std::ispunct(ch)) continue;
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += static_cast<char>(ch < 0x80 ? std::tolower(ch) : ch);
    }
    return out;
}

struct MatchOptions {
    /// Candidates need strictly more papers than this (30 for economics).
    std::size_t min_papers_b = 50;
    std::size_t min_title_matches = 3;
    std::size_t top_papers = 100;
};

struct AmbiguousMatch {
    std::string a_id;
    std::vector<std::string> b_ids;
    std::size_t shared_titles = 0;
};

struct MatchReport {
    std::vector<std::pair<std::string, std::string>> matches;
    std::vector<AmbiguousMatch> ambiguous;
};

/// Pairs each profile in `a` with the candidate in `b` sharing the most
/// normalized titles among both profiles' most-cited papers, provided the
/// count reaches `min_title_matches`. Ties for the best count are reported
/// as ambiguous instead of matched.
inline MatchReport match_profiles(const std::vector<ProfileExport>& a, const std::vector<ProfileExport>& b,
                                  const MatchOptions& options = {}) {
    auto top_titles = [&](const ProfileExport& p) {
        std::vector<const ExportPaper*> sorted;
        for (const auto& paper : p.papers) sorted.push_back(&paper);
        std::stable_sort(sorted.begin(), sorted.end(),
                         [](const auto* x, const auto* y) { return x->citation_count > y->citation_count; });
        if (sorted.size() > options.top_papers) sorted.resize(options.top_papers);
        std::set<std::string> titles;
        for (const auto* paper : sorted) {
            auto t = normalize_title(paper->title);
            if (!t.empty()) titles.insert(std::move(t));
        }
        return titles;
    };

    std::vector<std::pair<const ProfileExport*, std::set<std::string>>> candidates;
    for (const auto& profile : b) {
        if (profile.paper_count > options.min_papers_b) candidates.emplace_back(&profile, top_titles(profile));
    }

    MatchReport report;
    for (const auto& profile : a) {
        const auto titles = top_titles(profile);
        std::size_t best = 0;
        std::vector<std::string> best_ids;
        for (const auto& [candidate, candidate_titles] : candidates) {
            std::size_t shared = 0;
            for (const auto& t : titles) shared += candidate_titles.count(t);
            if (shared < options.min_title_matches || shared < best) continue;
            if (shared > best) {
                best = shared;
                best_ids.clear();
            }
            best_ids.push_back(candidate->profile_id);
        }
        if (best_ids.size() == 1) {
            report.matches.emplace_back(profile.profile_id, best_ids.front());
        } else if (best_ids.size() > 1) {
            report.ambiguous.push_back({profile.profile_id, std::move(best_ids), best});
        }
    }
    return report;
}

}  // namespace citerank

#endif  // CITERANK_INGEST_HPP
