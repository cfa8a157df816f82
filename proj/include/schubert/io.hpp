#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "schubert/error.hpp"
#include "schubert/matrix.hpp"
#include "schubert/rotor.hpp"

namespace schubert {

using ojson = nlohmann::ordered_json;

// 17 significant digits; always carries a '.' or exponent so the value reads
// back as a float (keeps -0.0 intact).
inline std::string format_double(double v) {
    if (!std::isfinite(v)) fail(ErrorKind::invalid_argument, "cannot serialize a non-finite number");
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

namespace detail {

inline bool is_flat(const ojson& j) {
    for (const auto& e : j)
        if (e.is_structured() && !(e.is_array() && e.size() <= 2 && is_flat(e))) return false;
    return true;
}

inline void emit(const ojson& j, std::string& out, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
    const std::string pad_in(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    switch (j.type()) {
        case ojson::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in + ojson(it.key()).dump() + ": ";
                emit(it.value(), out, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case ojson::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            if (is_flat(j)) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ", ";
                    emit(j[i], out, depth + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += pad_in;
                emit(j[i], out, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case ojson::value_t::number_float: out += format_double(j.get<double>()); return;
        default: out += j.dump(); return;
    }
}

} // namespace detail

inline std::string dump_json(const ojson& j) {
    std::string out;
    detail::emit(j, out, 0);
    out += "\n";
    return out;
}

inline ojson complex_to_json(cplx z) { return ojson::array({z.real(), z.imag()}); }

inline ojson vector_to_json(const ComplexVector& v) {
    ojson a = ojson::array();
    for (const auto& z : v) a.push_back(complex_to_json(z));
    return a;
}

inline ojson matrix_rows_to_json(const ComplexMatrix& m) {
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < m.size(); ++i) {
        ojson row = ojson::array();
        for (std::size_t j = 0; j < m.size(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

struct MatrixDocument {
    MatrixClass cls = MatrixClass::general;
    ComplexMatrix matrix;

    friend bool operator==(const MatrixDocument& a, const MatrixDocument& b) { return a.cls == b.cls && a.matrix == b.matrix; }
};

inline ojson to_json(const MatrixDocument& doc) {
    ojson j;
    j["n"] = doc.matrix.size();
    j["class"] = to_string(doc.cls);
    j["rows"] = matrix_rows_to_json(doc.matrix);
    return j;
}

inline std::string print_document(const MatrixDocument& doc) { return dump_json(to_json(doc)); }

inline MatrixDocument parse_document(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorKind::parse_error, std::string("invalid JSON: ") + e.what());
    }
    auto need = [&](bool ok, const std::string& what) {
        if (!ok) fail(ErrorKind::parse_error, what);
    };
    need(j.is_object(), "document must be an object");
    need(j.contains("n") && j["n"].is_number_integer(), "field 'n' must be an integer");
    need(j.contains("class") && j["class"].is_string(), "field 'class' must be a string");
    need(j.contains("rows") && j["rows"].is_array(), "field 'rows' must be an array");
    const long long n = j["n"].get<long long>();
    need(n >= 1 && n <= 4096, "field 'n' out of range");
    MatrixDocument doc;
    try {
        doc.cls = parse_matrix_class(j["class"].get<std::string>());
    } catch (const Error& e) {
        fail(ErrorKind::parse_error, e.what());
    }
    const auto& rows = j["rows"];
    need(rows.size() == static_cast<std::size_t>(n), "rows must contain n rows");
    ComplexMatrix m(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < m.size(); ++i) {
        need(rows[i].is_array() && rows[i].size() == m.size(), "each row must contain n entries");
        for (std::size_t k = 0; k < m.size(); ++k) {
            const auto& z = rows[i][k];
            need(z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number(), "entries must be [re, im] pairs");
            m(i, k) = cplx(z[0].get<double>(), z[1].get<double>());
        }
    }
    need(m.is_finite(), "entries must be finite");
    doc.matrix = std::move(m);
    return doc;
}

// FNV-1a, 64 bit.
inline std::string digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace schubert
