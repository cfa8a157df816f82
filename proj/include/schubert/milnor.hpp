#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "schubert/error.hpp"
#include "schubert/factor.hpp"
#include "schubert/matrix.hpp"
#include "schubert/numlin.hpp"
#include "schubert/random.hpp"
#include "schubert/rotor.hpp"
#include "schubert/symbol.hpp"
#include "schubert/tolerance.hpp"

namespace schubert {

// Cell of a fiber element together with the pieces that rebuild it:
//   general    B = compact_part * witness        (witness in Sol)
//   symmetric  B = witness^T * compact_part * witness
//   skew       B = witness^T * compact_part * witness, compact_part skew
struct CellIdentification {
    SchubertSymbol symbol;
    ComplexMatrix compact_part;
    ComplexMatrix witness;
    double residual = 0.0; // ||rebuilt - B||_F / ||B||_F, factors included
    double absolute_residual = 0.0;
    bool boundary_ambiguous = false;
    std::vector<PseudoRotation> factors; // general: increasing product; symmetric: C_j; skew: A_j
    std::vector<SkewStep> skew_steps;
    Indices full_indices; // all min-indices including index 1 (skew: paired form)
};

namespace detail {

inline void finish_identification(CellIdentification& id, const ComplexMatrix& rebuilt, const ComplexMatrix& b) {
    id.absolute_residual = distance(rebuilt, b);
    id.residual = id.absolute_residual / std::max(b.frobenius_norm(), 1e-300);
}

inline void require_det_one(const ComplexMatrix& b, const ToleranceConfig& tol, const char* who) {
    if (std::abs(determinant(b) - 1.0) > tol.tol_residual) fail(ErrorKind::not_in_fiber, std::string(who) + ": det(B) != 1");
}

} // namespace detail

inline CellIdentification identify_general(const ComplexMatrix& b, const ToleranceConfig& tol = {}) {
    b.check_finite();
    detail::require_det_one(b, tol, "identify_general");
    const IwasawaParts parts = iwasawa_split(b, tol);
    const OrderedFactorization f = factorize_su(parts.unitary, tol);
    CellIdentification id;
    id.symbol = f.symbol(tol);
    id.compact_part = parts.unitary;
    id.witness = parts.solvable;
    id.boundary_ambiguous = f.boundary_ambiguous;
    id.factors = f.full();
    id.full_indices = f.full_indices(tol);
    detail::finish_identification(id, f.product() * parts.solvable, b);
    return id;
}

inline CellIdentification identify_symmetric(const ComplexMatrix& b, const ToleranceConfig& tol = {}) {
    b.check_finite();
    if (symmetry_defect(b) > tol.tol_residual * std::max(1.0, b.frobenius_norm()))
        fail(ErrorKind::not_in_fiber, "identify_symmetric: matrix is not symmetric");
    detail::require_det_one(b, tol, "identify_symmetric");
    const IwasawaParts parts = iwasawa_split(takagi_root(b, tol), tol);
    const ComplexMatrix model = parts.unitary.transpose() * parts.unitary;
    const SymmetricFactorization sf = factorize_symmetric(model, tol);
    CellIdentification id;
    id.symbol = sf.symbol;
    id.compact_part = model;
    id.witness = parts.solvable;
    id.boundary_ambiguous = sf.boundary_ambiguous;
    id.factors = sf.half;
    id.full_indices = sf.full_indices(tol);
    detail::finish_identification(id, parts.solvable.transpose() * sf.product() * parts.solvable, b);
    return id;
}

inline CellIdentification identify_skew(const ComplexMatrix& b, const ToleranceConfig& tol = {}) {
    b.check_finite();
    if (b.size() % 2 != 0) fail(ErrorKind::not_in_fiber, "identify_skew: odd dimension");
    if (skew_defect(b) > tol.tol_residual * std::max(1.0, b.frobenius_norm()))
        fail(ErrorKind::not_in_fiber, "identify_skew: matrix is not skew-symmetric");
    if (std::abs(pfaffian(b, tol) - 1.0) > tol.tol_residual) fail(ErrorKind::not_in_fiber, "identify_skew: Pf(B) != 1");
    const ComplexMatrix j = symplectic_j(b.size() / 2);
    const IwasawaParts parts = iwasawa_split(youla_root(b, tol), tol);
    const ComplexMatrix skew_part = parts.unitary.transpose() * j * parts.unitary;
    const SkewFactorization sk = factorize_skew(skew_part * j.transpose(), tol);
    CellIdentification id;
    id.symbol = sk.symbol;
    id.compact_part = skew_part;
    id.witness = parts.solvable;
    id.boundary_ambiguous = sk.boundary_ambiguous;
    id.factors = sk.rotations;
    id.skew_steps = sk.steps;
    id.full_indices = sk.paired_indices(tol);
    detail::finish_identification(id, parts.solvable.transpose() * (sk.product() * j) * parts.solvable, b);
    return id;
}

inline CellIdentification identify(const ComplexMatrix& b, MatrixClass cls, const ToleranceConfig& tol = {}) {
    switch (cls) {
        case MatrixClass::general: return identify_general(b, tol);
        case MatrixClass::symmetric: return identify_symmetric(b, tol);
        case MatrixClass::skew: return identify_skew(b, tol);
    }
    fail(ErrorKind::invalid_argument, "identify: unknown class");
}

// ---------------------------------------------------------------------------

inline bool is_solvable_witness(const ComplexMatrix& e, const ToleranceConfig& tol = {}) {
    const std::size_t n = e.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(e(i, i).real() > 0.0) || e(i, i).imag() != 0.0) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (e(i, j) != cplx(0.0, 0.0)) return false;
    }
    return std::abs(determinant(e) - 1.0) <= tol.tol_residual;
}

// Sol acting on the fiber: B E (general), E^T B E (symmetric, skew).
inline ComplexMatrix sol_action(const ComplexMatrix& b, const ComplexMatrix& e, MatrixClass cls) {
    return cls == MatrixClass::general ? b * e : e.transpose() * b * e;
}

struct SolInvarianceReport {
    SchubertSymbol before, after;
    bool consistent = false;
};

inline SolInvarianceReport sol_invariance_check(const ComplexMatrix& b, const ComplexMatrix& e, MatrixClass cls,
                                                const ToleranceConfig& tol = {}) {
    if (e.size() != b.size()) fail(ErrorKind::dimension_mismatch, "sol_invariance_check: size mismatch");
    if (!is_solvable_witness(e, tol)) fail(ErrorKind::invalid_argument, "sol_invariance_check: E is not in Sol");
    SolInvarianceReport r;
    r.before = identify(b, cls, tol).symbol;
    r.after = identify(sol_action(b, e, cls), cls, tol).symbol;
    r.consistent = r.before == r.after;
    return r;
}

struct ClosureProductReport {
    Indices left, right, product;
    bool disjoint = false;
    Indices expected; // merged symbol when disjoint
    int left_dim = 0, right_dim = 0, product_dim = 0;
    bool pass = false;
};

// Samples interior points P, Q of the two cells and locates P*Q.
inline ClosureProductReport closure_product_check(const Indices& m, const Indices& mp, std::size_t n, std::uint64_t seed,
                                                  const ToleranceConfig& tol = {}) {
    ClosureProductReport r;
    r.left = m;
    r.right = mp;
    Rng rng(seed);
    const ComplexMatrix p = schubert_map(m, interior_params(m, MatrixClass::general, rng), n);
    const ComplexMatrix q = schubert_map(mp, interior_params(mp, MatrixClass::general, rng), n);
    r.product = factorize_su(p * q, tol).symbol(tol).entries;
    r.left_dim = cell_dim(m, MatrixClass::general);
    r.right_dim = cell_dim(mp, MatrixClass::general);
    r.product_dim = cell_dim(r.product, MatrixClass::general);
    Indices both = m;
    both.insert(both.end(), mp.begin(), mp.end());
    std::sort(both.begin(), both.end());
    r.disjoint = std::adjacent_find(both.begin(), both.end()) == both.end();
    if (r.disjoint) {
        r.expected = both;
        r.pass = r.product == r.expected;
    } else {
        r.pass = r.product_dim <= r.left_dim + r.right_dim - 2;
    }
    return r;
}

// ---------------------------------------------------------------------------

// Element of the cell of `m` built from seeded interior parameters; with
// dressing it is moved off the compact model by a seeded Sol element. Skew
// samples are returned as fiber elements (model element times J).
inline ComplexMatrix sample_cell(const Indices& m, MatrixClass cls, std::size_t n, std::uint64_t seed, bool dress) {
    Rng rng(seed);
    const std::vector<CellParam> params = interior_params(m, cls, rng);
    ComplexMatrix b = cell_map(m, params, n, cls);
    if (cls == MatrixClass::skew) b = b * symplectic_j(n);
    if (dress) b = sol_action(b, sample_solvable(b.size(), rng), cls);
    return b;
}

} // namespace schubert
