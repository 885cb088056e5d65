#ifndef CITERANK_ERRORS_HPP
#define CITERANK_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace citerank {

/// Calendar year outside the configured valid range.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// Unknown author (or other identifier) requested from a corpus or snapshot.
class LookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// A statistic whose denominator vanishes, e.g. Kendall's tau_b on a fully
/// tied sequence or an ROC curve with no laureates.
class DegenerateInputError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Data violating a corpus invariant at construction time.
class InvariantError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed record in an input file. `line()` is 1-based, 0 when unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// A grant whose award_id (or author_id) does not resolve.
class ReferenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration: generator settings, award scheme, filter or CLI flags.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace citerank

#endif  // CITERANK_ERRORS_HPP
