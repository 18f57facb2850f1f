#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "cocite/error.hpp"

namespace cocite {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r' || s[b] == '\n')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r' || s[e - 1] == '\n')) --e;
    return std::string(s.substr(b, e - b));
}

/// Split a semicolon-joined list field; empty items are dropped.
inline std::vector<std::string> split_list(std::string_view s, char sep = ';') {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            std::string item = trim(s.substr(start, i - start));
            if (!item.empty()) out.push_back(std::move(item));
            start = i + 1;
        }
    }
    return out;
}

/// Shortest round-trip decimal form; integral values print without a fraction.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, std::size_t line = 0) {
    double v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParseError("invalid number '" + std::string(s) + "'", line);
    return v;
}

inline long parse_long(std::string_view s, std::size_t line = 0) {
    long v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ParseError("invalid integer '" + std::string(s) + "'", line);
    return v;
}

/// Quote a CSV field only when it needs it (comma, quote, newline).
inline std::string csv_quote(std::string_view field) {
    bool needed = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needed) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

/// Parse one delimited line with RFC-4180 style quoting.
inline std::vector<std::string> split_delimited(const std::string& line, char delim, std::size_t lineno = 0) {
    std::vector<std::string> cols;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            if (!cur.empty()) throw ParseError("stray quote inside unquoted field", lineno);
            in_quotes = true;
        } else if (c == delim) {
            cols.push_back(std::move(cur));
            cur.clear();
        } else if (c == '\r' && i + 1 == line.size()) {
            // tolerate CRLF input
        } else {
            cur += c;
        }
    }
    if (in_quotes) throw ParseError("unterminated quoted field", lineno);
    cols.push_back(std::move(cur));
    return cols;
}

/// Header-row delimited reader (comma or tab, by file extension).
class DelimitedReader {
public:
    explicit DelimitedReader(const std::string& path) : path_(path), in_(path) {
        if (!in_) throw IoError("cannot open " + path);
        delim_ = path.size() >= 4 && path.substr(path.size() - 4) == ".tsv" ? '\t' : ',';
        std::string header;
        if (!std::getline(in_, header)) throw ParseError("empty file " + path, 0);
        ++lineno_;
        // strip a UTF-8 BOM if present
        if (header.size() >= 3 && header[0] == '\xEF' && header[1] == '\xBB' && header[2] == '\xBF')
            header.erase(0, 3);
        header_ = split_delimited(header, delim_, lineno_);
    }

    const std::vector<std::string>& header() const { return header_; }

    /// Index of a header column, or throw.
    std::size_t column(const std::string& name) const {
        for (std::size_t i = 0; i < header_.size(); ++i)
            if (header_[i] == name) return i;
        throw ParseError("missing column '" + name + "' in " + path_, 1);
    }

    std::optional<std::size_t> column_if_present(const std::string& name) const {
        for (std::size_t i = 0; i < header_.size(); ++i)
            if (header_[i] == name) return i;
        return std::nullopt;
    }

    bool next(std::vector<std::string>& row) {
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            if (line.empty() || line == "\r") continue;
            row = split_delimited(line, delim_, lineno_);
            if (row.size() != header_.size())
                throw ParseError("expected " + std::to_string(header_.size()) + " columns, got " +
                                     std::to_string(row.size()) + " in " + path_,
                                 lineno_);
            return true;
        }
        return false;
    }

    std::size_t line() const { return lineno_; }

private:
    std::string path_;
    std::ifstream in_;
    char delim_;
    std::size_t lineno_ = 0;
    std::vector<std::string> header_;
};

inline bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to " + path);
}

}  // namespace cocite
