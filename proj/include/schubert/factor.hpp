#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "schubert/error.hpp"
#include "schubert/matrix.hpp"
#include "schubert/numlin.hpp"
#include "schubert/random.hpp"
#include "schubert/rotor.hpp"
#include "schubert/symbol.hpp"
#include "schubert/tolerance.hpp"

namespace schubert {

enum class Order { increasing, decreasing };

// Product of pseudo-rotations with strictly monotone min-indices. The factor
// of index 1, if any, is kept apart as the correction; it sits at the left end
// of an increasing product and at the right end of a decreasing one.
struct OrderedFactorization {
    std::size_t n = 0;
    std::vector<PseudoRotation> factors;
    std::optional<PseudoRotation> correction;
    MatrixClass cls = MatrixClass::general;
    Order order = Order::increasing;
    bool boundary_ambiguous = false;

    std::vector<PseudoRotation> full() const {
        std::vector<PseudoRotation> out;
        if (order == Order::increasing && correction) out.push_back(*correction);
        out.insert(out.end(), factors.begin(), factors.end());
        if (order == Order::decreasing && correction) out.push_back(*correction);
        return out;
    }

    ComplexMatrix product() const { return schubert::product(full(), n); }

    // Min-indices of the non-correction factors in product order.
    Indices indices(const ToleranceConfig& tol = {}) const {
        Indices out;
        for (const auto& f : factors) out.push_back(static_cast<int>(f.index(tol)));
        return out;
    }

    // Min-indices of all factors, ascending, correction included.
    Indices full_indices(const ToleranceConfig& tol = {}) const {
        Indices out = indices(tol);
        if (correction) out.push_back(1);
        std::sort(out.begin(), out.end());
        return out;
    }

    SchubertSymbol symbol(const ToleranceConfig& tol = {}) const {
        Indices m = indices(tol);
        std::sort(m.begin(), m.end());
        return {m, static_cast<int>(n), MatrixClass::general};
    }

    std::size_t size() const { return factors.size() + (correction ? 1 : 0); }
};

namespace detail {

inline OrderedFactorization assemble(std::vector<PseudoRotation> full, std::size_t n, Order order, const ToleranceConfig& tol) {
    OrderedFactorization f;
    f.n = n;
    f.order = order;
    for (auto& r : full) {
        if (r.index(tol) == 1) {
            if (f.correction) fail(ErrorKind::structure_violation, "two factors of index 1");
            f.correction = std::move(r);
        } else {
            f.factors.push_back(std::move(r));
        }
    }
    return f;
}

inline bool strictly_ordered(const std::vector<std::size_t>& idx, Order order) {
    for (std::size_t i = 0; i + 1 < idx.size(); ++i) {
        if (order == Order::increasing && idx[i] >= idx[i + 1]) return false;
        if (order == Order::decreasing && idx[i] <= idx[i + 1]) return false;
    }
    return true;
}

inline void require_su(const ComplexMatrix& b, const ToleranceConfig& tol, const char* who) {
    b.check_finite();
    require_unitary(b, tol, who);
    if (std::abs(determinant(b) - 1.0) > tol.tol_residual) fail(ErrorKind::not_in_fiber, std::string(who) + ": det(B) != 1");
}

inline bool factor_ambiguous(const PseudoRotation& r, const ToleranceConfig& tol) {
    if (tol.angle_ambiguous(std::abs(r.theta))) return true;
    return tol.zero_ambiguous(std::abs(r.axis[r.index(tol) - 1]));
}

} // namespace detail

// Increasing factorization B = A_1 ... A_k (min-indices strictly increasing).
inline OrderedFactorization factorize_su(const ComplexMatrix& b, const ToleranceConfig& tol = {},
                                         std::uint64_t seed = default_eig_seed) {
    detail::require_su(b, tol, "factorize_su");
    const std::size_t n = b.size();
    const UnitaryEigen eig = eig_unitary(b, tol, seed);
    bool ambiguous = eig.boundary_ambiguous;

    std::vector<PseudoRotation> rots;
    for (std::size_t c = 0; c < eig.cluster_count; ++c) {
        std::vector<ComplexVector> space;
        cplx lambda(1.0, 0.0);
        bool trivial = false;
        for (const auto& p : eig.pairs)
            if (p.cluster == c) {
                space.push_back(p.vector);
                lambda = p.value;
                trivial = p.trivial;
            }
        if (trivial) continue;
        std::vector<ComplexVector> basis = space;
        if (space.size() > 1) {
            FlagBasis fb = flag_adapted_basis(space, tol);
            ambiguous = ambiguous || fb.boundary_ambiguous;
            basis = std::move(fb.vectors);
        }
        for (auto& y : basis) rots.push_back(PseudoRotation::make(std::arg(lambda), std::move(y), tol));
    }

    // Bubble pass: rewrite the rightmost out-of-order adjacent pair.
    const std::size_t k0 = rots.size();
    const std::size_t budget = n * k0 * k0 + k0 + 1;
    std::size_t steps = 0;
    std::vector<std::size_t> idx;
    for (const auto& r : rots) idx.push_back(r.index(tol));
    while (true) {
        std::size_t j = rots.size();
        for (std::size_t i = rots.size(); i-- > 1;)
            if (idx[i - 1] >= idx[i]) {
                j = i - 1;
                break;
            }
        if (j == rots.size()) break;
        if (++steps > budget) fail(ErrorKind::convergence_failure, "factorize_su: interchange budget exhausted");
        InterchangeResult ir = whitehead_interchange(rots[j], rots[j + 1], tol);
        ambiguous = ambiguous || ir.boundary_ambiguous;
        rots.erase(rots.begin() + static_cast<std::ptrdiff_t>(j), rots.begin() + static_cast<std::ptrdiff_t>(j + 2));
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(j), idx.begin() + static_cast<std::ptrdiff_t>(j + 2));
        for (std::size_t t = 0; t < ir.factors.size(); ++t) {
            idx.insert(idx.begin() + static_cast<std::ptrdiff_t>(j + t), ir.factors[t].index(tol));
            rots.insert(rots.begin() + static_cast<std::ptrdiff_t>(j + t), std::move(ir.factors[t]));
        }
    }
    if (!detail::strictly_ordered(idx, Order::increasing))
        fail(ErrorKind::convergence_failure, "factorize_su: indices not strictly increasing");

    OrderedFactorization f = detail::assemble(std::move(rots), n, Order::increasing, tol);
    for (const auto& r : f.factors) ambiguous = ambiguous || detail::factor_ambiguous(r, tol);
    f.boundary_ambiguous = ambiguous;
    return f;
}

inline SchubertSymbol symbol_of(const ComplexMatrix& b, const ToleranceConfig& tol = {}) { return factorize_su(b, tol).symbol(tol); }

// Decreasing factorization, from the increasing one of B^{-1} = B*.
inline OrderedFactorization factorize_decreasing(const ComplexMatrix& b, const ToleranceConfig& tol = {},
                                                 std::uint64_t seed = default_eig_seed) {
    const OrderedFactorization inc = factorize_su(b.adjoint(), tol, seed);
    std::vector<PseudoRotation> full = inc.full();
    std::reverse(full.begin(), full.end());
    for (auto& r : full) r = r.inverse();
    OrderedFactorization f = detail::assemble(std::move(full), b.size(), Order::decreasing, tol);
    f.boundary_ambiguous = inc.boundary_ambiguous;
    return f;
}

// Increasing A_1...A_k <-> decreasing B_k...B_1 with
// B_i = A_1...A_{i-1} A_i A_{i-1}^{-1}...A_1^{-1}.
inline OrderedFactorization reverse_order(const OrderedFactorization& f, const ToleranceConfig& tol = {}) {
    const std::vector<PseudoRotation> full = f.full();
    const std::size_t k = full.size();
    std::vector<PseudoRotation> out;
    out.reserve(k);
    if (f.order == Order::increasing) {
        for (std::size_t i = 0; i < k; ++i) {
            ComplexVector y = full[i].axis;
            for (std::size_t j = i; j-- > 0;) y = rotate(full[j], y);
            out.push_back(PseudoRotation::make(full[i].theta, std::move(y), tol));
        }
        std::reverse(out.begin(), out.end());
    } else {
        // full = [B_k, ..., B_1]
        std::vector<PseudoRotation> asc(full.rbegin(), full.rend());
        for (std::size_t i = 0; i < k; ++i) {
            ComplexVector y = asc[i].axis;
            for (std::size_t j = i; j-- > 0;) y = rotate_inverse(asc[j], y);
            out.push_back(PseudoRotation::make(asc[i].theta, std::move(y), tol));
        }
    }
    OrderedFactorization r = detail::assemble(std::move(out), f.n,
                                              f.order == Order::increasing ? Order::decreasing : Order::increasing, tol);
    r.cls = f.cls;
    r.boundary_ambiguous = f.boundary_ambiguous;
    return r;
}

struct InvarianceReport {
    SchubertSymbol of_b, of_inverse, of_conjugate, of_transpose;
    bool consistent = false;
};

inline InvarianceReport symbol_invariance_check(const ComplexMatrix& b, const ToleranceConfig& tol = {}) {
    InvarianceReport r;
    r.of_b = symbol_of(b, tol);
    r.of_inverse = symbol_of(b.adjoint(), tol);
    r.of_conjugate = symbol_of(b.conjugate(), tol);
    r.of_transpose = symbol_of(b.transpose(), tol);
    r.consistent = r.of_b == r.of_inverse && r.of_b == r.of_conjugate && r.of_b == r.of_transpose;
    return r;
}

// ---------------------------------------------------------------------------
// Symmetric model: B = C_1...C_k C_k^T...C_1^T with real-axis C_j

struct SymmetricFactorization {
    std::size_t n = 0;
    std::vector<PseudoRotation> half; // C_1..C_k, increasing indices, index 1 allowed
    SchubertSymbol symbol;
    OrderedFactorization decreasing;
    bool boundary_ambiguous = false;

    ComplexMatrix product() const {
        const ComplexMatrix p = schubert::product(half, n);
        return p * p.transpose();
    }

    Indices full_indices(const ToleranceConfig& tol = {}) const {
        Indices out;
        for (const auto& c : half) out.push_back(static_cast<int>(c.index(tol)));
        return out;
    }
};

inline SymmetricFactorization factorize_symmetric(const ComplexMatrix& b, const ToleranceConfig& tol = {},
                                                  std::uint64_t seed = default_eig_seed) {
    b.check_finite();
    require_model(b, MatrixClass::symmetric, tol, "factorize_symmetric");
    detail::require_su(b, tol, "factorize_symmetric");
    SymmetricFactorization out;
    out.n = b.size();
    out.decreasing = factorize_decreasing(b, tol, seed);
    out.decreasing.cls = MatrixClass::symmetric;
    out.boundary_ambiguous = out.decreasing.boundary_ambiguous;

    std::vector<PseudoRotation> rem = out.decreasing.full();
    std::reverse(rem.begin(), rem.end()); // ascending indices
    for (std::size_t i = 0; i < rem.size(); ++i) {
        const ComplexVector& x = rem[i].axis;
        std::size_t big = 0;
        for (std::size_t t = 1; t < x.size(); ++t)
            if (std::abs(x[t]) > std::abs(x[big])) big = t;
        const cplx phase = std::conj(x[big]) / std::abs(x[big]);
        ComplexVector real_axis(x.size());
        double imag = 0.0;
        for (std::size_t t = 0; t < x.size(); ++t) {
            const cplx z = x[t] * phase;
            imag += z.imag() * z.imag();
            real_axis[t] = z.real();
        }
        if (std::sqrt(imag) > tol.tol_residual)
            fail(ErrorKind::real_axis_extraction_failure, "factorize_symmetric: axis is not real up to phase");
        const PseudoRotation c = PseudoRotation::make(rem[i].theta / 2.0, std::move(real_axis), tol);
        for (std::size_t j = i + 1; j < rem.size(); ++j)
            rem[j] = PseudoRotation::make(rem[j].theta, rotate_inverse(c, rem[j].axis), tol);
        out.half.push_back(c);
    }
    Indices m;
    for (const auto& c : out.half)
        if (c.index(tol) > 1) m.push_back(static_cast<int>(c.index(tol)));
    out.symbol = {m, static_cast<int>(out.n), MatrixClass::symmetric};
    return out;
}

// ---------------------------------------------------------------------------
// Skew model: B = A_1...A_r A(theta_r, j x_r)...A(theta_1, j x_1)

struct SkewStep {
    std::size_t k = 0;  // factors remaining before the step
    std::size_t m1 = 0; // indices of the first two
    std::size_t m2 = 0;
    double pairing_residual = 0.0; // ||A_2 - sigma(A_1^*)||_F
};

struct SkewFactorization {
    std::size_t half = 0; // ambient dimension 2 * half
    std::vector<PseudoRotation> rotations;
    SchubertSymbol symbol;
    OrderedFactorization decreasing;
    std::vector<SkewStep> steps;
    bool boundary_ambiguous = false;

    std::vector<PseudoRotation> full() const {
        std::vector<PseudoRotation> out(rotations);
        for (std::size_t i = rotations.size(); i-- > 0;) out.push_back(PseudoRotation{rotations[i].theta, jmul(rotations[i].axis)});
        return out;
    }

    ComplexMatrix product() const { return schubert::product(full(), 2 * half); }

    // (2p_1 - 1, 2p_1, ..., 2p_r - 1, 2p_r)
    Indices paired_indices(const ToleranceConfig& tol = {}) const {
        Indices out;
        for (const auto& r : rotations) {
            const int m = static_cast<int>(r.index(tol));
            out.push_back(m);
            out.push_back(m + 1);
        }
        return out;
    }
};

inline double skew_pairing_tolerance(const ToleranceConfig& tol) { return std::max(1e-8, 10.0 * tol.tol_residual); }

inline SkewFactorization factorize_skew(const ComplexMatrix& b, const ToleranceConfig& tol = {},
                                        std::uint64_t seed = default_eig_seed) {
    b.check_finite();
    require_model(b, MatrixClass::skew, tol, "factorize_skew");
    detail::require_su(b, tol, "factorize_skew");
    SkewFactorization out;
    out.half = b.size() / 2;
    out.decreasing = factorize_decreasing(b, tol, seed);
    out.decreasing.cls = MatrixClass::skew;
    out.boundary_ambiguous = out.decreasing.boundary_ambiguous;

    std::vector<PseudoRotation> rem = out.decreasing.full();
    std::reverse(rem.begin(), rem.end()); // ascending indices
    const double pair_tol = skew_pairing_tolerance(tol);
    while (!rem.empty()) {
        SkewStep st;
        st.k = rem.size();
        if (st.k % 2 != 0) fail(ErrorKind::structure_violation, "factorize_skew: odd number of factors");
        st.m1 = rem[0].index(tol);
        st.m2 = rem[1].index(tol);
        if (st.m1 % 2 == 0 || st.m2 != st.m1 + 1)
            fail(ErrorKind::structure_violation, "factorize_skew: leading indices are not (2p-1, 2p)");
        const PseudoRotation a1 = rem[0];
        const PseudoRotation partner{a1.theta, jmul(a1.axis)};
        st.pairing_residual = distance(partner.matrix(), rem[1].matrix());
        if (st.pairing_residual > pair_tol) fail(ErrorKind::structure_violation, "factorize_skew: second factor is not sigma(A_1^*)");
        for (std::size_t j = 2; j < rem.size(); ++j)
            rem[j] = PseudoRotation::make(rem[j].theta, rotate_inverse(a1, rem[j].axis), tol);
        rem.erase(rem.begin(), rem.begin() + 2);
        out.rotations.push_back(a1);
        out.steps.push_back(st);
    }
    Indices p;
    for (const auto& r : out.rotations) {
        const int q = static_cast<int>((r.index(tol) + 1) / 2);
        if (q > 1) p.push_back(q);
    }
    out.symbol = {p, static_cast<int>(out.half), MatrixClass::skew};
    return out;
}

// ---------------------------------------------------------------------------
// Cell parametrizations

struct CellParam {
    double t = 0.0;
    ComplexVector line;
};

namespace detail {

inline ComplexVector padded_line(const ComplexVector& l, std::size_t expected, std::size_t n) {
    if (l.size() != expected)
        fail(ErrorKind::dimension_mismatch, "cell parameter line has length " + std::to_string(l.size()) + ", expected " +
                                                std::to_string(expected));
    if (!(norm(l) > 0.0)) fail(ErrorKind::zero_vector, "cell parameter line is zero");
    ComplexVector v(n, cplx(0.0, 0.0));
    std::copy(l.begin(), l.end(), v.begin());
    return scaled(v, 1.0 / norm(v));
}

inline void check_params(const Indices& m, const std::vector<CellParam>& params) {
    if (params.size() != m.size()) fail(ErrorKind::dimension_mismatch, "one parameter per symbol entry required");
    for (const auto& p : params)
        if (!std::isfinite(p.t)) fail(ErrorKind::invalid_argument, "non-finite cell parameter");
}

} // namespace detail

// A(-2 pi t~, e_1) * prod_j A(2 pi t_j, L_j), t~ = sum t_j, L_j in C^{m_j}
inline ComplexMatrix schubert_map(const Indices& m, const std::vector<CellParam>& params, std::size_t n) {
    require_valid_symbol(m, static_cast<int>(n));
    detail::check_params(m, params);
    const double two_pi = 2.0 * std::numbers::pi;
    double total = 0.0;
    std::vector<PseudoRotation> rots;
    for (std::size_t j = 0; j < m.size(); ++j) {
        total += params[j].t;
        rots.push_back({two_pi * params[j].t, detail::padded_line(params[j].line, static_cast<std::size_t>(m[j]), n)});
    }
    rots.insert(rots.begin(), PseudoRotation{-two_pi * total, unit_vector(n, 0)});
    return product(rots, n);
}

// psi~ psi~^T with psi~ = A(-pi t~, e_1) * prod_j A(pi t_j, L_j), L_j real.
inline ComplexMatrix schubert_map_sy(const Indices& m, const std::vector<CellParam>& params, std::size_t n) {
    require_valid_symbol(m, static_cast<int>(n));
    detail::check_params(m, params);
    double total = 0.0;
    std::vector<PseudoRotation> rots;
    for (std::size_t j = 0; j < m.size(); ++j) {
        for (const auto& z : params[j].line)
            if (z.imag() != 0.0) fail(ErrorKind::invalid_argument, "schubert_map_sy: lines must be real");
        total += params[j].t;
        rots.push_back({std::numbers::pi * params[j].t, detail::padded_line(params[j].line, static_cast<std::size_t>(m[j]), n)});
    }
    rots.insert(rots.begin(), PseudoRotation{-std::numbers::pi * total, unit_vector(n, 0)});
    const ComplexMatrix p = product(rots, n);
    return p * p.transpose();
}

// A(-2pi t~, e_1) prod_j A(2pi t_j, L_j) prod_j^rev A(2pi t_j, j L_j) A(-2pi t~, j e_1),
// L_j in C^{2 m_j - 1}; ambient dimension 2 * half.
inline ComplexMatrix schubert_map_sk(const Indices& m, const std::vector<CellParam>& params, std::size_t half) {
    require_valid_symbol(m, static_cast<int>(half));
    detail::check_params(m, params);
    const std::size_t n = 2 * half;
    const double two_pi = 2.0 * std::numbers::pi;
    double total = 0.0;
    std::vector<PseudoRotation> left;
    for (std::size_t j = 0; j < m.size(); ++j) {
        total += params[j].t;
        left.push_back({two_pi * params[j].t, detail::padded_line(params[j].line, static_cast<std::size_t>(2 * m[j] - 1), n)});
    }
    left.insert(left.begin(), PseudoRotation{-two_pi * total, unit_vector(n, 0)});
    std::vector<PseudoRotation> all(left);
    for (std::size_t i = left.size(); i-- > 0;) all.push_back({left[i].theta, jmul(left[i].axis)});
    return product(all, n);
}

// Interior draw: t_j in [0.1, 0.9], line coordinate m_j (2m_j - 1 for skew)
// real and at least 0.5 before normalization.
inline std::vector<CellParam> interior_params(const Indices& m, MatrixClass cls, Rng& rng) {
    std::vector<CellParam> out;
    for (int mj : m) {
        const std::size_t len = cls == MatrixClass::skew ? static_cast<std::size_t>(2 * mj - 1) : static_cast<std::size_t>(mj);
        CellParam p;
        p.t = rng.uniform(0.1, 0.9);
        p.line.resize(len);
        for (auto& z : p.line) z = cls == MatrixClass::symmetric ? cplx(rng.normal(), 0.0) : rng.complex_normal();
        p.line.back() = std::abs(p.line.back()) + 0.5;
        p.line = scaled(p.line, 1.0 / norm(p.line));
        out.push_back(std::move(p));
    }
    return out;
}

inline ComplexMatrix cell_map(const Indices& m, const std::vector<CellParam>& params, std::size_t n, MatrixClass cls) {
    switch (cls) {
        case MatrixClass::general: return schubert_map(m, params, n);
        case MatrixClass::symmetric: return schubert_map_sy(m, params, n);
        case MatrixClass::skew: return schubert_map_sk(m, params, n);
    }
    fail(ErrorKind::invalid_argument, "cell_map: unknown class");
}

// Pads every axis with zeros: n -> n + 1 (general, symmetric) or n + 2 (skew).
inline OrderedFactorization embed(const OrderedFactorization& f, std::size_t target) {
    const std::size_t step = f.cls == MatrixClass::skew ? 2 : 1;
    if (target != f.n + step) fail(ErrorKind::invalid_argument, "embed: invalid target dimension");
    OrderedFactorization g = f;
    g.n = target;
    auto pad = [&](PseudoRotation& r) { r.axis.resize(target, cplx(0.0, 0.0)); };
    for (auto& r : g.factors) pad(r);
    if (g.correction) pad(*g.correction);
    return g;
}

inline ComplexMatrix embed_matrix(const ComplexMatrix& b, std::size_t target) {
    if (target < b.size()) fail(ErrorKind::invalid_argument, "embed_matrix: target smaller than source");
    ComplexMatrix r = ComplexMatrix::identity(target);
    for (std::size_t i = 0; i < b.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r(i, j) = b(i, j);
    return r;
}

} // namespace schubert
