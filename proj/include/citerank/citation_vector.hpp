#ifndef CITERANK_CITATION_VECTOR_HPP
#define CITERANK_CITATION_VECTOR_HPP

#include "citerank/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace citerank {

/// One paper as seen by an index: its (possibly normalized) citation count
/// and the number of authors on it.
struct PaperCount {
    double citations = 0.0;
    int authors = 1;
};

/// Per-paper citation counts in non-increasing order, each paired with the
/// paper's author count. Every index in this library is a function of one
/// of these.
///
/// Ties on the count are ordered by ascending author count, so the result
/// does not depend on the order papers were supplied in.
class CitationVector {
public:
    CitationVector() = default;

    explicit CitationVector(std::vector<PaperCount> papers) {
        for (const auto& p : papers) {
            if (!(p.citations >= 0.0) || !std::isfinite(p.citations)) {
                throw InvariantError("citation counts must be finite and non-negative");
            }
            if (p.authors < 1) {
                throw InvariantError("author count must be at least 1");
            }
        }
        std::sort(papers.begin(), papers.end(), [](const PaperCount& a, const PaperCount& b) {
            if (a.citations != b.citations) return a.citations > b.citations;
            return a.authors < b.authors;
        });
        entries_.reserve(papers.size());
        author_counts_.reserve(papers.size());
        for (const auto& p : papers) {
            entries_.push_back(p.citations);
            author_counts_.push_back(p.authors);
        }
    }

    /// Single-author papers with the given counts.
    static CitationVector single_author(const std::vector<double>& counts) {
        std::vector<PaperCount> papers;
        papers.reserve(counts.size());
        for (double c : counts) papers.push_back({c, 1});
        return CitationVector(std::move(papers));
    }

    std::span<const double> entries() const noexcept { return entries_; }
    std::span<const int> author_counts() const noexcept { return author_counts_; }

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    double operator[](std::size_t i) const { return entries_[i]; }

    bool operator==(const CitationVector&) const = default;

private:
    std::vector<double> entries_;
    std::vector<int> author_counts_;
};

}  // namespace citerank

#endif  // CITERANK_CITATION_VECTOR_HPP
