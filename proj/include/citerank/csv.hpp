#ifndef CITERANK_CSV_HPP
#define CITERANK_CSV_HPP

#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace citerank::csv {

/// Splits one CSV line. Handles double-quoted fields with "" escapes;
/// fields may not span lines.
inline std::vector<std::string> split_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += ch;
        }
    }
    if (quoted) throw std::invalid_argument("unterminated quoted field");
    fields.push_back(std::move(current));
    return fields;
}

inline std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

/// Six significant digits, period decimal separator.
inline std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", value);
    return buf;
}

/// Ten significant digits; used for index tables, where integer-valued
/// measures must print exactly.
inline std::string format_value(double value) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", value);
    return buf;
}

/// Empty cell for an undefined value, never 0.
inline std::string format_optional(const std::optional<double>& value) {
    return value ? format_number(*value) : std::string();
}

}  // namespace citerank::csv

#endif  // CITERANK_CSV_HPP
