#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "schubert/error.hpp"
#include "schubert/rotor.hpp"

namespace schubert {

using Indices = std::vector<int>;

// Strictly increasing entries in (1, n]; for the skew class n is the
// quaternionic rank and the ambient matrix size is 2n.
struct SchubertSymbol {
    Indices entries;
    int ambient = 0;
    MatrixClass cls = MatrixClass::general;

    std::size_t length() const noexcept { return entries.size(); }

    int weight() const {
        int s = 0;
        for (int m : entries) s += m;
        return s;
    }

    friend bool operator==(const SchubertSymbol& a, const SchubertSymbol& b) { return a.entries == b.entries; }
};

// "2,3"; empty string for the identity cell.
inline std::string join_indices(const Indices& m) {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(m[i]);
    }
    return s;
}

// "(2,3)"; "()" for the identity cell.
inline std::string format_indices(const Indices& m) { return "(" + join_indices(m) + ")"; }

// Accepts "2,3", "(2,3)", "" and "()".
inline Indices parse_indices(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (ch != ' ' && ch != '\t' && ch != '(' && ch != ')') s += ch;
    Indices out;
    if (s.empty()) return out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = s.find(',', pos);
        const std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        std::size_t used = 0;
        int v = 0;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (tok.empty() || used != tok.size()) fail(ErrorKind::invalid_symbol, "bad symbol '" + text + "'");
        out.push_back(v);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline bool is_valid_symbol(const Indices& m, int n) {
    int prev = 1;
    for (int v : m) {
        if (v <= prev || v > n) return false;
        prev = v;
    }
    return true;
}

inline void require_valid_symbol(const Indices& m, int n) {
    if (!is_valid_symbol(m, n))
        fail(ErrorKind::invalid_symbol, format_indices(m) + " is not a strictly increasing tuple in (1, " + std::to_string(n) + "]");
}

inline int generator_degree(int m, MatrixClass cls) {
    switch (cls) {
        case MatrixClass::general: return 2 * m - 1;
        case MatrixClass::symmetric: return m;
        case MatrixClass::skew: return 4 * m - 3;
    }
    return 0;
}

inline int cell_dim(const Indices& m, MatrixClass cls) {
    int d = 0;
    for (int v : m) d += generator_degree(v, cls);
    return d;
}

} // namespace schubert
