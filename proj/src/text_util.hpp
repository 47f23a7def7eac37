#pragma once

// Internal helpers for the line-oriented text formats. Not installed.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "wheelq/errors.hpp"

namespace wheelq::text {

inline std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline std::uint64_t parse_u64(const std::string& tok, const std::string& what) {
    try {
        std::size_t pos = 0;
        if (tok.empty() || tok[0] == '-') throw std::invalid_argument(tok);
        const unsigned long long v = std::stoull(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw DomainError("expected unsigned integer for " + what + ", got '" + tok + "'");
    }
}

inline int parse_int(const std::string& tok, const std::string& what) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(tok, &pos);
        if (pos != tok.size() || v < -1000000 || v > 1000000)
            throw std::invalid_argument(tok);
        return static_cast<int>(v);
    } catch (const std::exception&) {
        throw DomainError("expected integer for " + what + ", got '" + tok + "'");
    }
}

inline double parse_double(const std::string& tok, const std::string& what) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw DomainError("expected number for " + what + ", got '" + tok + "'");
    }
}

// Reads lines, dropping blank lines and '#' comments.
inline std::vector<std::vector<std::string>> tokenize_lines(std::istream& in) {
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto toks = split_ws(line);
        if (!toks.empty()) rows.push_back(std::move(toks));
    }
    return rows;
}

}  // namespace wheelq::text
