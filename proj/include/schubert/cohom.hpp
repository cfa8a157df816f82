#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schubert/error.hpp"
#include "schubert/rotor.hpp"
#include "schubert/symbol.hpp"

namespace schubert {

enum class Ring { integers, mod2 };

inline const char* to_string(Ring r) { return r == Ring::integers ? "Z" : "Z2"; }

inline Ring parse_ring(const std::string& s) {
    if (s == "Z" || s == "z" || s == "integers") return Ring::integers;
    if (s == "Z2" || s == "z2" || s == "mod2") return Ring::mod2;
    fail(ErrorKind::invalid_argument, "unknown ring '" + s + "'");
}

// All strictly increasing tuples in (1, n], by length then lexicographically.
inline std::vector<Indices> enumerate_symbols(int n) {
    if (n < 1) fail(ErrorKind::invalid_argument, "enumerate_symbols: n must be >= 1");
    std::vector<Indices> out;
    const int r = n - 1;
    for (std::uint32_t mask = 0; mask < (1u << r); ++mask) {
        Indices m;
        for (int b = 0; b < r; ++b)
            if (mask & (1u << b)) m.push_back(b + 2);
        out.push_back(std::move(m));
    }
    std::stable_sort(out.begin(), out.end(), [](const Indices& a, const Indices& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

inline bool is_disjoint(const Indices& a, const Indices& b) {
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) != b.end()) return false;
    return true;
}

// Pairs (x in a, y in b) with x > y, by a two-pointer merge; both inputs sorted.
inline long long merge_inversions(const Indices& a, const Indices& b) {
    long long inv = 0;
    std::size_t j = 0;
    for (int x : a) {
        while (j < b.size() && b[j] < x) ++j;
        inv += static_cast<long long>(j);
    }
    return inv;
}

inline int epsilon(const Indices& a, const Indices& b) {
    if (!is_disjoint(a, b)) fail(ErrorKind::not_disjoint, "epsilon: " + format_indices(a) + " and " + format_indices(b) + " overlap");
    return merge_inversions(a, b) % 2 == 0 ? 1 : -1;
}

inline long long beta(const Indices& m) {
    const long long l = static_cast<long long>(m.size());
    return l * (l - 1) / 2;
}

inline int sign_of(long long exponent) { return exponent % 2 == 0 ? 1 : -1; }

inline Indices merged(const Indices& a, const Indices& b) {
    Indices out = a;
    out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    return out;
}

// Ordered complement of m in {2, ..., n}.
inline Indices complement(const Indices& m, int n) {
    Indices out;
    for (int v = 2; v <= n; ++v)
        if (std::find(m.begin(), m.end(), v) == m.end()) out.push_back(v);
    return out;
}

inline Indices top_symbol(int n) { return complement({}, n); }

// ---------------------------------------------------------------------------
// Polynomials with integer coefficients, degree -> coefficient

using Polynomial = std::map<int, long long>;

inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    for (const auto& [da, ca] : a)
        for (const auto& [db, cb] : b) out[da + db] += ca * cb;
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

inline Polynomial exterior_poincare(const std::vector<int>& degrees) {
    Polynomial p{{0, 1}};
    for (int d : degrees) p = poly_mul(p, Polynomial{{0, 1}, {d, 1}});
    return p;
}

inline std::string poly_to_string(const Polynomial& p) {
    if (p.empty()) return "0";
    std::string s;
    for (const auto& [d, c] : p) {
        if (!s.empty()) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        const long long a = c < 0 ? -c : c;
        if (d == 0) {
            s += std::to_string(a);
            continue;
        }
        if (a != 1) s += std::to_string(a);
        s += d == 1 ? std::string("t") : "t^" + std::to_string(d);
    }
    return s;
}

struct BettiTable {
    std::map<int, long long> ranks;
    Polynomial expanded;
    bool equal = false;
};

inline BettiTable betti_table(int n, MatrixClass cls, Ring ring) {
    if (cls == MatrixClass::symmetric && ring == Ring::integers)
        fail(ErrorKind::unsupported_coefficients, "symmetric Betti numbers are only available over Z2");
    BettiTable t;
    for (const auto& m : enumerate_symbols(n)) ++t.ranks[cell_dim(m, cls)];
    std::vector<int> degrees;
    for (int j = 2; j <= n; ++j) degrees.push_back(generator_degree(j, cls));
    t.expanded = exterior_poincare(degrees);
    t.equal = t.ranks == std::map<int, long long>(t.expanded.begin(), t.expanded.end());
    return t;
}

// Rational Poincare polynomial of SU_m / SO_m.
inline Polynomial sym_char0_poincare(int m) {
    if (m < 2) fail(ErrorKind::invalid_argument, "sym_char0_poincare: m must be >= 2");
    std::vector<int> degrees;
    const int last = m % 2 == 1 ? 2 * m - 1 : 2 * m - 3;
    for (int d = 5; d <= last; d += 4) degrees.push_back(d);
    Polynomial p = exterior_poincare(degrees);
    if (m % 2 == 0) p = poly_mul(p, Polynomial{{0, 1}, {m, 1}});
    return p;
}

// Poincare polynomial of the complex Stiefel manifold with odd degrees
// 2(m - n) + 1, ..., 2m - 1.
inline Polynomial stiefel_poincare(int m, int n) {
    if (!(m > n && n >= 1)) fail(ErrorKind::invalid_argument, "stiefel_poincare: needs m > n >= 1");
    std::vector<int> degrees;
    for (int d = 2 * (m - n) + 1; d <= 2 * m - 1; d += 2) degrees.push_back(d);
    return exterior_poincare(degrees);
}

// ---------------------------------------------------------------------------
// Exterior algebras on odd generators e(m)

struct ExtElement {
    std::map<Indices, long long> terms; // monomial -> nonzero coefficient
    Ring ring = Ring::integers;
    MatrixClass cls = MatrixClass::general;
    bool conjectural = false;

    ExtElement() = default;
    ExtElement(Ring r, MatrixClass c) : ring(r), cls(c) {}

    static ExtElement monomial(const Indices& m, long long coeff, Ring r = Ring::integers, MatrixClass c = MatrixClass::general) {
        ExtElement e(r, c);
        e.add(m, coeff);
        return e;
    }

    void add(const Indices& m, long long coeff) {
        for (std::size_t i = 1; i < m.size(); ++i)
            if (m[i - 1] >= m[i]) fail(ErrorKind::invalid_symbol, "monomial labels must be strictly increasing");
        long long& c = terms[m];
        c += coeff;
        if (ring == Ring::mod2) c = ((c % 2) + 2) % 2;
        if (c == 0) terms.erase(m);
    }

    long long coefficient(const Indices& m) const {
        const auto it = terms.find(m);
        return it == terms.end() ? 0 : it->second;
    }

    bool is_zero() const { return terms.empty(); }

    friend bool operator==(const ExtElement& a, const ExtElement& b) { return a.ring == b.ring && a.terms == b.terms; }
};

inline int monomial_degree(const Indices& m, MatrixClass cls) { return cell_dim(m, cls); }

inline std::string monomial_to_string(const Indices& m) {
    if (m.empty()) return "1";
    std::string s;
    for (int v : m) s += "e(" + std::to_string(v) + ")";
    return s;
}

namespace detail {

inline std::string signed_terms(const std::vector<std::pair<long long, std::string>>& terms) {
    if (terms.empty()) return "0";
    std::string s;
    for (const auto& [c, body] : terms) {
        if (!s.empty()) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        const long long a = c < 0 ? -c : c;
        if (a != 1) s += std::to_string(a) + (body == "1" ? "" : "*");
        if (a != 1 && body == "1") continue;
        s += body;
    }
    return s;
}

} // namespace detail

inline std::string to_string(const ExtElement& e) {
    std::vector<std::pair<long long, std::string>> t;
    for (const auto& [m, c] : e.terms) t.emplace_back(c, monomial_to_string(m));
    return detail::signed_terms(t);
}

inline ExtElement ext_mul(const ExtElement& a, const ExtElement& b) {
    if (a.ring != b.ring) fail(ErrorKind::ring_mismatch, "ext_mul: rings differ");
    if (a.cls != b.cls) fail(ErrorKind::ring_mismatch, "ext_mul: classes differ");
    if (a.cls == MatrixClass::symmetric && a.ring == Ring::integers)
        fail(ErrorKind::unsupported_coefficients, "symmetric generators are only supported over Z2");
    ExtElement out(a.ring, a.cls);
    out.conjectural = a.conjectural || b.conjectural;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) {
            if (!is_disjoint(ma, mb)) continue;
            out.add(merged(ma, mb), sign_of(merge_inversions(ma, mb)) * ca * cb);
        }
    return out;
}

// Kronecker dual of the Schubert cycle of m: (-1)^beta(m) e(m_1)...e(m_r).
// For the symmetric and skew classes the identification is conjectural and
// only returned (up to sign, as the bare monomial) when explicitly requested.
inline ExtElement kronecker_dual(const Indices& m, MatrixClass cls = MatrixClass::general, bool assume_conjecture = false) {
    if (cls == MatrixClass::general) return ExtElement::monomial(m, sign_of(beta(m)));
    if (!assume_conjecture) fail(ErrorKind::unsupported_class, "kronecker_dual: only the general class is established");
    ExtElement e = ExtElement::monomial(m, 1, cls == MatrixClass::symmetric ? Ring::mod2 : Ring::integers, cls);
    e.conjectural = true;
    return e;
}

// (-1)^{beta(n) + beta(m)} eps_{m, m'} e-monomial(m'), m' the complement of m.
inline ExtElement poincare_dual(const Indices& m, int n) {
    require_valid_symbol(m, n);
    const Indices mc = complement(m, n);
    return ExtElement::monomial(mc, sign_of(beta(top_symbol(n)) + beta(m)) * epsilon(m, mc));
}

inline int intersection_pairing(const Indices& m, const Indices& mp, int n) {
    require_valid_symbol(m, n);
    require_valid_symbol(mp, n);
    if (static_cast<int>(m.size() + mp.size()) != n - 1)
        fail(ErrorKind::precondition_violated, "intersection_pairing: lengths must add up to n - 1");
    if (mp != complement(m, n)) return 0;
    return sign_of(beta(top_symbol(n)) + beta(m) + beta(mp)) * epsilon(m, mp);
}

// Same pairing through the cup product of Kronecker duals evaluated on the
// top class: <e_m u e_m', s_n>, where e_n = (-1)^beta(n) e-monomial(n).
inline long long intersection_pairing_via_cup(const Indices& m, const Indices& mp, int n) {
    require_valid_symbol(m, n);
    require_valid_symbol(mp, n);
    if (static_cast<int>(m.size() + mp.size()) != n - 1)
        fail(ErrorKind::precondition_violated, "intersection_pairing: lengths must add up to n - 1");
    const ExtElement cup = ext_mul(kronecker_dual(m), kronecker_dual(mp));
    const Indices top = top_symbol(n);
    return cup.coefficient(top) * sign_of(beta(top));
}

// s_m * s_m' in homology: eps * s_(merge) when disjoint, zero otherwise.
inline std::optional<std::pair<int, Indices>> homology_product(const Indices& m, const Indices& mp) {
    if (!is_disjoint(m, mp)) return std::nullopt;
    return std::make_pair(epsilon(m, mp), merged(m, mp));
}

// ---------------------------------------------------------------------------
// Tensor squares

struct TensorElement {
    std::map<std::pair<Indices, Indices>, long long> terms;
    Ring ring = Ring::integers;

    void add(const Indices& a, const Indices& b, long long coeff) {
        auto key = std::make_pair(a, b);
        long long& c = terms[key];
        c += coeff;
        if (ring == Ring::mod2) c = ((c % 2) + 2) % 2;
        if (c == 0) terms.erase(key);
    }

    long long coefficient(const Indices& a, const Indices& b) const {
        const auto it = terms.find({a, b});
        return it == terms.end() ? 0 : it->second;
    }

    friend bool operator==(const TensorElement& x, const TensorElement& y) { return x.ring == y.ring && x.terms == y.terms; }
};

inline std::string schubert_label(const Indices& m) { return m.empty() ? "1" : "e" + format_indices(m); }

// Labels are Schubert-dual classes e_m when `schubert_labels`, exterior
// monomials otherwise.
inline std::string to_string(const TensorElement& t, bool schubert_labels = true) {
    std::vector<std::pair<long long, std::string>> out;
    for (const auto& [k, c] : t.terms) {
        const auto& [a, b] = k;
        const std::string la = schubert_labels ? schubert_label(a) : monomial_to_string(a);
        const std::string lb = schubert_labels ? schubert_label(b) : monomial_to_string(b);
        out.emplace_back(c, la + "⊗" + lb);
    }
    return detail::signed_terms(out);
}

// Delta(e_m) = sum over ordered disjoint (m', m'') merging to m of
// (-1)^{l(m') l(m'')} eps_{m', m''} e_m' (x) e_m'', in the Schubert-dual basis.
inline TensorElement coproduct(const Indices& m) {
    TensorElement t;
    const std::size_t r = m.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << r); ++mask) {
        Indices a, b;
        for (std::size_t i = 0; i < r; ++i) (mask & (std::uint64_t{1} << i) ? a : b).push_back(m[i]);
        t.add(a, b, sign_of(static_cast<long long>(a.size() * b.size())) * epsilon(a, b));
    }
    return t;
}

// e_m labels -> exterior monomials via e_m = (-1)^beta(m) e(m_1)...e(m_r).
inline TensorElement to_generator_basis(const TensorElement& t) {
    TensorElement out;
    out.ring = t.ring;
    for (const auto& [k, c] : t.terms) out.add(k.first, k.second, sign_of(beta(k.first) + beta(k.second)) * c);
    return out;
}

// (x (x) y)(x' (x) y') = (-1)^{deg y deg x'} x x' (x) y y' on monomial tensors.
inline TensorElement tensor_mul(const TensorElement& p, const TensorElement& q, MatrixClass cls = MatrixClass::general) {
    if (p.ring != q.ring) fail(ErrorKind::ring_mismatch, "tensor_mul: rings differ");
    TensorElement out;
    out.ring = p.ring;
    for (const auto& [kp, cp] : p.terms)
        for (const auto& [kq, cq] : q.terms) {
            const auto& [x, y] = kp;
            const auto& [xp, yp] = kq;
            if (!is_disjoint(x, xp) || !is_disjoint(y, yp)) continue;
            const long long koszul = static_cast<long long>(monomial_degree(y, cls)) * monomial_degree(xp, cls);
            const long long s = koszul + merge_inversions(x, xp) + merge_inversions(y, yp);
            out.add(merged(x, xp), merged(y, yp), sign_of(s) * cp * cq);
        }
    return out;
}

// Product of primitive generators: (-1)^beta(m) prod_j (e(m_j) (x) 1 + 1 (x) e(m_j)),
// computed with the Koszul rule, in the exterior-monomial basis.
inline TensorElement primitive_coproduct_expansion(const Indices& m) {
    TensorElement acc;
    acc.add({}, {}, 1);
    for (int v : m) {
        TensorElement prim;
        prim.add({v}, {}, 1);
        prim.add({}, {v}, 1);
        acc = tensor_mul(acc, prim);
    }
    TensorElement out;
    for (const auto& [k, c] : acc.terms) out.add(k.first, k.second, sign_of(beta(m)) * c);
    return out;
}

} // namespace schubert
