#ifndef CITERANK_CORPUS_HPP
#define CITERANK_CORPUS_HPP

#include "citerank/citation_vector.hpp"
#include "citerank/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace citerank {

using Year = int;

/// Inclusive range of calendar years accepted for snapshots.
struct YearRange {
    Year first = 1950;
    Year last = 2030;

    bool contains(Year y) const noexcept { return y >= first && y <= last; }
};

enum class Field { biology, computer_science, economics, physics, other };

inline std::string_view to_string(Field f) {
    switch (f) {
        case Field::biology: return "biology";
        case Field::computer_science: return "computer-science";
        case Field::economics: return "economics";
        case Field::physics: return "physics";
        case Field::other: return "other";
    }
    return "other";
}

inline std::optional<Field> parse_field(std::string_view s) {
    for (Field f : {Field::biology, Field::computer_science, Field::economics, Field::physics,
                    Field::other}) {
        if (to_string(f) == s) return f;
    }
    return std::nullopt;
}

struct PublicationRecord {
    std::string pub_id;
    Year effective_year = 0;
    int author_count = 1;
    /// Sparse: citing year -> citations received in that year.
    std::map<Year, std::int64_t> citations_by_year;

    std::int64_t citations_through(Year y) const {
        std::int64_t total = 0;
        for (auto it = citations_by_year.begin(); it != citations_by_year.end() && it->first <= y;
             ++it) {
            total += it->second;
        }
        return total;
    }

    std::int64_t total_citations() const {
        std::int64_t total = 0;
        for (const auto& [year, n] : citations_by_year) total += n;
        return total;
    }

    bool operator==(const PublicationRecord&) const = default;
};

struct AwardCatalogEntry {
    std::string award_id;
    std::string name;
    std::int64_t total_laureates = 1;

    bool operator==(const AwardCatalogEntry&) const = default;
};

struct AwardGrant {
    std::string award_id;
    Year year_conferred = 0;

    bool operator==(const AwardGrant&) const = default;
};

struct AuthorProfile {
    std::string author_id;
    std::string display_name;
    Field field = Field::other;
    std::vector<PublicationRecord> publications;
    std::vector<AwardGrant> awards;

    bool operator==(const AuthorProfile&) const = default;
};

/// Immutable collection of author profiles plus the award catalog.
///
/// Authors and catalog entries are kept sorted by identifier; grants within a
/// profile are sorted by (year, award_id). Construction validates every
/// record invariant and throws InvariantError / ReferenceError otherwise.
class AuthorCorpus {
public:
    AuthorCorpus() = default;

    AuthorCorpus(std::vector<AuthorProfile> authors, std::vector<AwardCatalogEntry> catalog,
                 std::string platform = {})
        : authors_(std::move(authors)), catalog_(std::move(catalog)), platform_(std::move(platform)) {
        std::sort(catalog_.begin(), catalog_.end(),
                  [](const auto& a, const auto& b) { return a.award_id < b.award_id; });
        for (std::size_t i = 0; i < catalog_.size(); ++i) {
            const auto& entry = catalog_[i];
            if (entry.total_laureates < 1) {
                throw InvariantError("award '" + entry.award_id + "' has total_laureates < 1");
            }
            if (!award_index_.emplace(entry.award_id, i).second) {
                throw InvariantError("duplicate award_id '" + entry.award_id + "'");
            }
        }

        std::sort(authors_.begin(), authors_.end(),
                  [](const auto& a, const auto& b) { return a.author_id < b.author_id; });
        for (std::size_t i = 0; i < authors_.size(); ++i) {
            auto& a = authors_[i];
            if (!author_index_.emplace(a.author_id, i).second) {
                throw InvariantError("duplicate author_id '" + a.author_id + "'");
            }
            validate_publications(a);
            for (const auto& g : a.awards) {
                if (!award_index_.contains(g.award_id)) {
                    throw ReferenceError("author '" + a.author_id + "' holds unknown award '" +
                                         g.award_id + "'");
                }
            }
            std::sort(a.awards.begin(), a.awards.end(), [](const auto& x, const auto& y) {
                return std::tie(x.year_conferred, x.award_id) < std::tie(y.year_conferred, y.award_id);
            });
        }
    }

    std::span<const AuthorProfile> authors() const noexcept { return authors_; }
    std::span<const AwardCatalogEntry> catalog() const noexcept { return catalog_; }
    std::size_t size() const noexcept { return authors_.size(); }
    bool empty() const noexcept { return authors_.empty(); }

    /// Platform the data came from (e.g. "scholar", "scopus", "synthetic").
    /// Scholar truncates author lists at roughly 150 names, which this
    /// library does not correct; the tag lets reports carry that caveat.
    const std::string& platform() const noexcept { return platform_; }

    std::optional<std::size_t> index_of(std::string_view author_id) const {
        auto it = author_index_.find(author_id);
        if (it == author_index_.end()) return std::nullopt;
        return it->second;
    }

    const AuthorProfile& author(std::string_view author_id) const {
        auto idx = index_of(author_id);
        if (!idx) throw LookupError("unknown author '" + std::string(author_id) + "'");
        return authors_[*idx];
    }

    const AwardCatalogEntry& award(std::string_view award_id) const {
        auto it = award_index_.find(award_id);
        if (it == award_index_.end()) {
            throw LookupError("unknown award '" + std::string(award_id) + "'");
        }
        return catalog_[it->second];
    }

    bool operator==(const AuthorCorpus& other) const {
        return authors_ == other.authors_ && catalog_ == other.catalog_ &&
               platform_ == other.platform_;
    }

private:
    static void validate_publications(const AuthorProfile& a) {
        std::set<std::string_view> seen;
        for (const auto& p : a.publications) {
            const std::string where = "author '" + a.author_id + "', publication '" + p.pub_id + "'";
            if (!seen.insert(p.pub_id).second) throw InvariantError(where + ": duplicate pub_id");
            if (p.author_count < 1) throw InvariantError(where + ": author_count < 1");
            for (const auto& [year, n] : p.citations_by_year) {
                if (n < 0) throw InvariantError(where + ": negative citation count");
                if (year < p.effective_year) {
                    throw InvariantError(where + ": citation year precedes effective year");
                }
            }
        }
    }

    std::vector<AuthorProfile> authors_;
    std::vector<AwardCatalogEntry> catalog_;
    std::string platform_;
    std::map<std::string, std::size_t, std::less<>> author_index_;
    std::map<std::string, std::size_t, std::less<>> award_index_;
};

/// A publication as visible at a snapshot year.
struct SnapshotPublication {
    std::size_t source_index = 0;  ///< position in AuthorProfile::publications
    Year effective_year = 0;
    int author_count = 1;
    std::int64_t citations = 0;  ///< citations from years <= observation year
};

struct SnapshotAuthor {
    std::string author_id;
    std::vector<SnapshotPublication> publications;

    std::int64_t total_citations() const {
        std::int64_t total = 0;
        for (const auto& p : publications) total += p.citations;
        return total;
    }
};

/// The corpus restricted to publications and citations up to the end of one
/// year. Authors keep the corpus order (sorted by id), including those with
/// no publications yet.
class Snapshot {
public:
    Snapshot(Year year, std::vector<SnapshotAuthor> authors)
        : year_(year), authors_(std::move(authors)) {
        for (std::size_t i = 0; i < authors_.size(); ++i) index_.emplace(authors_[i].author_id, i);
    }

    Year observation_year() const noexcept { return year_; }
    std::span<const SnapshotAuthor> authors() const noexcept { return authors_; }
    std::size_t size() const noexcept { return authors_.size(); }

    const SnapshotAuthor& author(std::string_view author_id) const {
        auto it = index_.find(author_id);
        if (it == index_.end()) {
            throw LookupError("author '" + std::string(author_id) + "' not in snapshot");
        }
        return authors_[it->second];
    }

private:
    Year year_;
    std::vector<SnapshotAuthor> authors_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

inline Snapshot snapshot_at(const AuthorCorpus& corpus, Year year, YearRange valid = {}) {
    if (!valid.contains(year)) {
        throw RangeError("snapshot year " + std::to_string(year) + " outside [" +
                         std::to_string(valid.first) + ", " + std::to_string(valid.last) + "]");
    }
    std::vector<SnapshotAuthor> authors;
    authors.reserve(corpus.size());
    for (const auto& profile : corpus.authors()) {
        SnapshotAuthor sa{profile.author_id, {}};
        for (std::size_t i = 0; i < profile.publications.size(); ++i) {
            const auto& p = profile.publications[i];
            if (p.effective_year > year) continue;
            sa.publications.push_back({i, p.effective_year, p.author_count, p.citations_through(year)});
        }
        authors.push_back(std::move(sa));
    }
    return Snapshot(year, std::move(authors));
}

enum class Normalizer { none, author_count, sqrt_author_count };

inline CitationVector citation_vector(const SnapshotAuthor& author, Normalizer normalizer) {
    std::vector<PaperCount> papers;
    papers.reserve(author.publications.size());
    for (const auto& p : author.publications) {
        double c = static_cast<double>(p.citations);
        switch (normalizer) {
            case Normalizer::none: break;
            case Normalizer::author_count: c /= p.author_count; break;
            case Normalizer::sqrt_author_count: c /= std::sqrt(static_cast<double>(p.author_count)); break;
        }
        papers.push_back({c, p.author_count});
    }
    return CitationVector(std::move(papers));
}

inline CitationVector citation_vector(const Snapshot& snapshot, std::string_view author_id,
                                      Normalizer normalizer) {
    return citation_vector(snapshot.author(author_id), normalizer);
}

/// Mean author count over the author's visible publications; 0 with none.
/// The count includes the profiled author.
inline double avg_authors_per_publication(const SnapshotAuthor& author) {
    if (author.publications.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& p : author.publications) sum += p.author_count;
    return sum / static_cast<double>(author.publications.size());
}

inline double avg_authors_per_publication(const Snapshot& snapshot, std::string_view author_id) {
    return avg_authors_per_publication(snapshot.author(author_id));
}

}  // namespace citerank

#endif  // CITERANK_CORPUS_HPP
