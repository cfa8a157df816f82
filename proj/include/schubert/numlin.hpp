#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "schubert/error.hpp"
#include "schubert/matrix.hpp"
#include "schubert/random.hpp"
#include "schubert/tolerance.hpp"

namespace schubert {

// <x, y> = sum_i x_i * conj(y_i)
inline cplx hermitian_inner(const ComplexVector& x, const ComplexVector& y) {
    if (x.size() != y.size()) fail(ErrorKind::length_mismatch, "hermitian_inner: vector lengths differ");
    cplx s(0.0, 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * std::conj(y[i]);
    return s;
}

inline cplx determinant(const ComplexMatrix& b) {
    const std::size_t n = b.size();
    ComplexMatrix a(b);
    cplx det(1.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
        if (a(p, k) == cplx(0.0, 0.0)) return cplx(0.0, 0.0);
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
            det = -det;
        }
        det *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = a(i, k) / a(k, k);
            if (f == cplx(0.0, 0.0)) continue;
            for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

inline ComplexMatrix inverse(const ComplexMatrix& b) {
    const std::size_t n = b.size();
    ComplexMatrix a(b);
    ComplexMatrix inv = ComplexMatrix::identity(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
        if (a(p, k) == cplx(0.0, 0.0)) fail(ErrorKind::singular_input, "inverse: matrix is singular");
        if (p != k)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(k, j), a(p, j));
                std::swap(inv(k, j), inv(p, j));
            }
        const cplx piv = a(k, k);
        for (std::size_t j = 0; j < n; ++j) {
            a(k, j) /= piv;
            inv(k, j) /= piv;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k) continue;
            const cplx f = a(i, k);
            if (f == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(i, j) -= f * a(k, j);
                inv(i, j) -= f * inv(k, j);
            }
        }
    }
    return inv;
}

// ||B B* - I||_F
inline double unitarity_defect(const ComplexMatrix& b) {
    return distance(b * b.adjoint(), ComplexMatrix::identity(b.size()));
}

inline double symmetry_defect(const ComplexMatrix& b) { return distance(b, b.transpose()); }

inline double skew_defect(const ComplexMatrix& b) { return (b + b.transpose()).frobenius_norm(); }

inline void require_unitary(const ComplexMatrix& b, const ToleranceConfig& tol, const char* who) {
    if (unitarity_defect(b) > tol.tol_residual) fail(ErrorKind::not_unitary, std::string(who) + ": matrix is not unitary");
}

// ---------------------------------------------------------------------------
// Gram-Schmidt QR and the Iwasawa split

struct IwasawaParts {
    ComplexMatrix unitary;
    ComplexMatrix solvable;
};

namespace detail {

// Classical Gram-Schmidt with one reorthogonalization pass. Returns Q and R
// with R upper triangular and positive real diagonal.
inline std::pair<ComplexMatrix, ComplexMatrix> gram_schmidt_qr(const ComplexMatrix& b, double tol_zero) {
    const std::size_t n = b.size();
    ComplexMatrix q(n), r(n);
    std::vector<ComplexVector> qs;
    qs.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        ComplexVector v = b.column(j);
        const double col_norm = norm(v);
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t i = 0; i < j; ++i) {
                const cplx c = hermitian_inner(v, qs[i]);
                r(i, j) += c;
                for (std::size_t k = 0; k < n; ++k) v[k] -= c * qs[i][k];
            }
        const double piv = norm(v);
        if (!(piv > tol_zero * std::max(col_norm, 1e-300)))
            fail(ErrorKind::singular_input, "Gram-Schmidt pivot vanished");
        r(j, j) = piv;
        for (auto& z : v) z /= piv;
        q.set_column(j, v);
        qs.push_back(std::move(v));
    }
    return {q, r};
}

} // namespace detail

inline IwasawaParts iwasawa_split(const ComplexMatrix& b, const ToleranceConfig& tol = {}) {
    b.check_finite();
    if (std::abs(determinant(b) - 1.0) > tol.tol_residual) fail(ErrorKind::not_in_fiber, "iwasawa_split: det(B) != 1");
    auto [q, r] = detail::gram_schmidt_qr(b, tol.tol_zero);
    return {std::move(q), std::move(r)};
}

// ---------------------------------------------------------------------------
// Hermitian Jacobi

struct HermitianEigen {
    std::vector<double> values;
    ComplexMatrix vectors; // columns
};

inline HermitianEigen jacobi_hermitian(ComplexMatrix m, int max_sweeps = 64) {
    const std::size_t n = m.size();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(m.frobenius_norm(), 1e-300);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) off += std::norm(m(i, j));
        if (std::sqrt(off) <= 1e-16 * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = m(p, q);
                const double b = std::abs(apq);
                if (b <= 1e-300) continue;
                const cplx phase = apq / b;
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                const double theta = (aqq - app) / (2.0 * b);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // G = diag(1, conj(phase)) * [[c, s], [-s, c]] on (p, q)
                const cplx gpp = c, gpq = s;
                const cplx gqp = -s * std::conj(phase), gqq = c * std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = mkp * gpp + mkq * gqp;
                    m(k, q) = mkp * gpq + mkq * gqq;
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = std::conj(gpp) * mpk + std::conj(gqp) * mqk;
                    m(q, k) = std::conj(gpq) * mpk + std::conj(gqq) * mqk;
                }
                m(p, q) = m(q, p) = 0.0;
                m(p, p) = m(p, p).real();
                m(q, q) = m(q, q).real();
            }
    }
    HermitianEigen out{std::vector<double>(n), std::move(v)};
    for (std::size_t i = 0; i < n; ++i) out.values[i] = m(i, i).real();
    return out;
}

// ---------------------------------------------------------------------------
// Unitary eigendecomposition

struct EigenPair {
    cplx value;           // unit modulus; shared by all members of a cluster
    ComplexVector vector; // unit
    bool trivial = false; // eigenvalue within tol_angle of 1
    std::size_t cluster = 0;
};

struct UnitaryEigen {
    std::vector<EigenPair> pairs; // grouped by cluster, clusters ordered by angle
    std::size_t cluster_count = 0;
    bool boundary_ambiguous = false; // some eigen-angle lies just above tol_angle
    int attempts = 0;
};

inline constexpr std::uint64_t default_eig_seed = 0x5eedu;

namespace detail {

inline double off_diagonal(const ComplexMatrix& d) {
    double off = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = 0; j < d.size(); ++j)
            if (i != j) off += std::norm(d(i, j));
    return std::sqrt(off);
}

// Polishes an approximate eigenbasis v of unitary b. Eigenvalues of M_t from
// different clusters of b may nearly collide; the Cayley transform
// i(I - c)(I + c)^{-1} of c = e^{i phi} b keeps them apart (it is injective
// on the circle), with phi moving -1 into the widest spectral gap.
inline ComplexMatrix cayley_refine(const ComplexMatrix& b, const ComplexMatrix& v) {
    const std::size_t n = b.size();
    if (n < 2) return v;
    const ComplexMatrix d = v.adjoint() * b * v;
    std::vector<double> angle(n);
    for (std::size_t i = 0; i < n; ++i) angle[i] = std::arg(d(i, i));
    std::sort(angle.begin(), angle.end());
    double gap = angle.front() + 2.0 * std::numbers::pi - angle.back();
    double mid = angle.back() + 0.5 * gap;
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (angle[i + 1] - angle[i] > gap) {
            gap = angle[i + 1] - angle[i];
            mid = angle[i] + 0.5 * gap;
        }
    const ComplexMatrix id = ComplexMatrix::identity(n);
    const ComplexMatrix c = b * std::polar(1.0, std::numbers::pi - mid);
    ComplexMatrix k = cplx(0.0, 1.0) * (id - c) * inverse(id + c);
    k = v.adjoint() * ((k + k.adjoint()) * cplx(0.5, 0.0)) * v;
    k = (k + k.adjoint()) * cplx(0.5, 0.0);
    ComplexMatrix w = v * jacobi_hermitian(std::move(k)).vectors;
    // Re-orthonormalize columns against drift.
    return detail::gram_schmidt_qr(w, 0.0).first;
}

} // namespace detail

inline UnitaryEigen eig_unitary(const ComplexMatrix& b, const ToleranceConfig& tol = {},
                                std::uint64_t seed = default_eig_seed) {
    b.check_finite();
    require_unitary(b, tol, "eig_unitary");
    const std::size_t n = b.size();
    const ComplexMatrix bh = b.adjoint();
    Rng rng(seed);
    constexpr int max_attempts = 6; // first draw plus 5 retries
    for (int attempt = 1; attempt <= max_attempts; ++attempt) {
        const double t = rng.uniform(0.5, 2.0);
        ComplexMatrix m = (b + bh) + cplx(0.0, t) * (b - bh);
        m = (m + m.adjoint()) * cplx(0.5, 0.0);
        HermitianEigen he = jacobi_hermitian(std::move(m));
        if (detail::off_diagonal(he.vectors.adjoint() * b * he.vectors) >= tol.tol_residual) continue;
        he.vectors = detail::cayley_refine(b, he.vectors);
        const ComplexMatrix d = he.vectors.adjoint() * b * he.vectors;
        if (detail::off_diagonal(d) >= tol.tol_residual) continue;

        std::vector<double> angle(n);
        std::vector<cplx> lambda(n);
        for (std::size_t i = 0; i < n; ++i) {
            lambda[i] = d(i, i) / std::abs(d(i, i));
            angle[i] = std::arg(lambda[i]);
        }
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t c) { return angle[a] < angle[c]; });

        // Chain consecutive angles closer than tol_angle; close the circle at +-pi.
        std::vector<std::vector<std::size_t>> clusters;
        for (std::size_t idx : order) {
            if (!clusters.empty() && angle[idx] - angle[clusters.back().back()] < tol.tol_angle)
                clusters.back().push_back(idx);
            else
                clusters.push_back({idx});
        }
        if (clusters.size() > 1) {
            const double wrap = angle[clusters.front().front()] + 2.0 * std::numbers::pi - angle[clusters.back().back()];
            if (wrap < tol.tol_angle) {
                clusters.back().insert(clusters.back().end(), clusters.front().begin(), clusters.front().end());
                clusters.erase(clusters.begin());
            }
        }

        UnitaryEigen out;
        out.attempts = attempt;
        out.cluster_count = clusters.size();
        for (std::size_t c = 0; c < clusters.size(); ++c) {
            cplx mean(0.0, 0.0);
            for (std::size_t idx : clusters[c]) mean += lambda[idx];
            mean /= std::abs(mean);
            const double a = std::abs(std::arg(mean));
            const bool trivial = a < tol.tol_angle;
            if (tol.angle_ambiguous(a)) out.boundary_ambiguous = true;
            for (std::size_t idx : clusters[c]) out.pairs.push_back({mean, he.vectors.column(idx), trivial, c});
        }
        return out;
    }
    fail(ErrorKind::convergence_failure, "eig_unitary: eigenvalues of B could not be separated");
}

// ---------------------------------------------------------------------------
// Flag-adapted orthonormal bases

struct FlagBasis {
    std::vector<ComplexVector> vectors; // strictly increasing min-index
    std::vector<std::size_t> pivots;    // 0-based min-index of each vector
    bool boundary_ambiguous = false;
};

// Orthonormal basis y_1..y_d of span(vs) with span(y_1..y_i) = span(vs) cap C^{m_i}.
// Column echelon form from the bottom row, then Gram-Schmidt in pivot order.
inline FlagBasis flag_adapted_basis(const std::vector<ComplexVector>& vs, const ToleranceConfig& tol = {}) {
    FlagBasis out;
    if (vs.empty()) return out;
    const std::size_t n = vs.front().size();
    std::vector<ComplexVector> w;
    for (const auto& v : vs) {
        const double nv = norm(v);
        if (!(nv > 0.0)) fail(ErrorKind::zero_vector, "flag_adapted_basis: zero vector");
        w.push_back(scaled(v, 1.0 / nv));
    }
    std::vector<bool> done(w.size(), false);
    std::vector<std::pair<std::size_t, std::size_t>> pivot_of; // (row, column)
    std::size_t remaining = w.size();
    for (std::size_t rr = n; rr-- > 0 && remaining > 0;) {
        std::size_t best = w.size();
        double best_abs = 0.0;
        for (std::size_t c = 0; c < w.size(); ++c)
            if (!done[c] && std::abs(w[c][rr]) > best_abs) {
                best_abs = std::abs(w[c][rr]);
                best = c;
            }
        if (best_abs <= tol.tol_zero) {
            for (std::size_t c = 0; c < w.size(); ++c)
                if (!done[c]) w[c][rr] = 0.0;
            continue;
        }
        if (tol.zero_ambiguous(best_abs)) out.boundary_ambiguous = true;
        for (std::size_t c = 0; c < w.size(); ++c) {
            if (done[c] || c == best) continue;
            const cplx f = w[c][rr] / w[best][rr];
            for (std::size_t k = 0; k <= rr; ++k) w[c][k] -= f * w[best][k];
            w[c][rr] = 0.0;
        }
        done[best] = true;
        --remaining;
        pivot_of.emplace_back(rr, best);
    }
    if (remaining > 0) fail(ErrorKind::singular_input, "flag_adapted_basis: vectors are linearly dependent");
    std::sort(pivot_of.begin(), pivot_of.end());
    for (const auto& [row, col] : pivot_of) {
        ComplexVector y = w[col];
        for (std::size_t k = row + 1; k < n; ++k) y[k] = 0.0;
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : out.vectors) {
                const cplx c = hermitian_inner(y, q);
                for (std::size_t k = 0; k < n; ++k) y[k] -= c * q[k];
            }
        const double ny = norm(y);
        if (!(ny > 0.0)) fail(ErrorKind::singular_input, "flag_adapted_basis: degenerate span");
        for (auto& z : y) z /= ny;
        out.vectors.push_back(std::move(y));
        out.pivots.push_back(row);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Pfaffian and form normalization

inline ComplexMatrix symplectic_j(std::size_t half) { return ComplexMatrix::symplectic_j(half); }

namespace detail {

inline void swap_rows_cols(ComplexMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    const std::size_t n = m.size();
    for (std::size_t j = 0; j < n; ++j) std::swap(m(a, j), m(b, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(m(i, a), m(i, b));
}

inline void swap_cols(ComplexMatrix& m, std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m.size(); ++i) std::swap(m(i, a), m(i, b));
}

inline void require_skew(const ComplexMatrix& b, const ToleranceConfig& tol, const char* who) {
    if (b.size() % 2 != 0) fail(ErrorKind::odd_dimension, std::string(who) + ": dimension must be even");
    if (skew_defect(b) > tol.tol_residual * std::max(1.0, b.frobenius_norm()))
        fail(ErrorKind::not_skew_symmetric, std::string(who) + ": matrix is not skew-symmetric");
}

} // namespace detail

// Skew-symmetric Gaussian elimination with column pivoting.
inline cplx pfaffian(const ComplexMatrix& b, const ToleranceConfig& tol = {}) {
    b.check_finite();
    detail::require_skew(b, tol, "pfaffian");
    const std::size_t n = b.size();
    ComplexMatrix a = (b - b.transpose()) * cplx(0.5, 0.0);
    cplx pf(1.0, 0.0);
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        std::size_t p = k + 1;
        for (std::size_t i = k + 2; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
        if (p != k + 1) {
            detail::swap_rows_cols(a, k + 1, p);
            pf = -pf;
        }
        const cplx piv = a(k, k + 1);
        if (piv == cplx(0.0, 0.0)) return cplx(0.0, 0.0);
        pf *= piv;
        for (std::size_t i = k + 2; i < n; ++i) {
            const cplx tau = a(k, i) / piv;
            if (tau == cplx(0.0, 0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) a(i, j) -= tau * a(k + 1, j);
            for (std::size_t j = 0; j < n; ++j) a(j, i) -= tau * a(j, k + 1);
        }
    }
    return pf;
}

// Returns C with C^T B C = I and det(C) = 1 (B symmetric with det 1).
inline ComplexMatrix diagonalize_quadratic_form(const ComplexMatrix& b, const ToleranceConfig& tol = {}) {
    b.check_finite();
    const double scale = std::max(1.0, b.frobenius_norm());
    if (symmetry_defect(b) > tol.tol_residual * scale) fail(ErrorKind::not_symmetric, "diagonalize_quadratic_form: matrix is not symmetric");
    const std::size_t n = b.size();
    ComplexMatrix m = (b + b.transpose()) * cplx(0.5, 0.0);
    ComplexMatrix c = ComplexMatrix::identity(n);

    // C <- C X and M <- X^T M X for X = I + f e_src e_dst^T
    auto add_col = [&](std::size_t dst, std::size_t src, cplx f) {
        for (std::size_t i = 0; i < n; ++i) m(i, dst) += f * m(i, src);
        for (std::size_t j = 0; j < n; ++j) m(dst, j) += f * m(src, j);
        for (std::size_t i = 0; i < n; ++i) c(i, dst) += f * c(i, src);
    };

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pd = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(m(i, i)) > std::abs(m(pd, pd))) pd = i;
        double off_best = 0.0;
        std::size_t oi = k, oj = k;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (std::abs(m(i, j)) > off_best) {
                    off_best = std::abs(m(i, j));
                    oi = i;
                    oj = j;
                }
        if (std::abs(m(pd, pd)) < 0.5 * off_best) {
            // Diagonal too weak: fold the dominant off-diagonal entry into a pivot.
            cplx best_f(1.0, 0.0);
            double best_val = -1.0;
            for (cplx f : {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)}) {
                const double val = std::abs(m(oi, oi) + 2.0 * f * m(oi, oj) + f * f * m(oj, oj));
                if (val > best_val) {
                    best_val = val;
                    best_f = f;
                }
            }
            add_col(oi, oj, best_f);
            pd = oi;
        }
        if (!(std::abs(m(pd, pd)) > tol.tol_zero * scale))
            fail(ErrorKind::singular_input, "diagonalize_quadratic_form: form is degenerate");
        detail::swap_rows_cols(m, k, pd);
        detail::swap_cols(c, k, pd);
        const cplx piv = m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx f = m(k, i) / piv;
            if (f != cplx(0.0, 0.0)) add_col(i, k, -f);
            m(k, i) = m(i, k) = 0.0;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        const cplx s = std::sqrt(m(k, k));
        for (std::size_t i = 0; i < n; ++i) c(i, k) /= s;
    }
    if (determinant(c).real() < 0.0)
        for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = -c(i, n - 1);
    if (distance(c.transpose() * b * c, ComplexMatrix::identity(n)) > tol.tol_residual * scale)
        fail(ErrorKind::singular_input, "diagonalize_quadratic_form: residual too large");
    return c;
}

// Returns C with C^T B C = J (B skew with Pf 1, so det(C) = 1).
inline ComplexMatrix normalize_skew_form(const ComplexMatrix& b, const ToleranceConfig& tol = {}) {
    b.check_finite();
    detail::require_skew(b, tol, "normalize_skew_form");
    const double scale = std::max(1.0, b.frobenius_norm());
    const std::size_t n = b.size();
    ComplexMatrix m = (b - b.transpose()) * cplx(0.5, 0.0);
    ComplexMatrix c = ComplexMatrix::identity(n);
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        std::size_t pi = k, pj = k + 1;
        double best = 0.0;
        for (std::size_t i = k; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (std::abs(m(i, j)) > best) {
                    best = std::abs(m(i, j));
                    pi = i;
                    pj = j;
                }
        if (!(best > tol.tol_zero * scale)) fail(ErrorKind::singular_input, "normalize_skew_form: form is degenerate");
        detail::swap_rows_cols(m, k, pi);
        detail::swap_cols(c, k, pi);
        if (pj == k) pj = pi;
        detail::swap_rows_cols(m, k + 1, pj);
        detail::swap_cols(c, k + 1, pj);
        const cplx p = m(k, k + 1);
        for (std::size_t i = k + 2; i < n; ++i) {
            const cplx alpha = -m(k + 1, i) / p;
            const cplx beta = m(k, i) / p;
            for (std::size_t r = 0; r < n; ++r) m(r, i) -= alpha * m(r, k) + beta * m(r, k + 1);
            for (std::size_t s = 0; s < n; ++s) m(i, s) -= alpha * m(k, s) + beta * m(k + 1, s);
            for (std::size_t r = 0; r < n; ++r) c(r, i) -= alpha * c(r, k) + beta * c(r, k + 1);
        }
        const cplx s = std::sqrt(p);
        for (std::size_t r = 0; r < n; ++r) {
            c(r, k) /= s;
            c(r, k + 1) /= s;
        }
    }
    if (distance(c.transpose() * b * c, symplectic_j(n / 2)) > tol.tol_residual * scale)
        fail(ErrorKind::singular_input, "normalize_skew_form: residual too large");
    return c;
}

// Root A of a symmetric B (A^T A = B) of least Frobenius norm, from the
// Takagi factorization B = U S U^T. Unitary B gives a unitary root.
inline ComplexMatrix takagi_root(const ComplexMatrix& b, const ToleranceConfig& tol = {}) {
    b.check_finite();
    const double scale = std::max(1.0, b.frobenius_norm());
    if (symmetry_defect(b) > tol.tol_residual * scale) fail(ErrorKind::not_symmetric, "takagi_root: matrix is not symmetric");
    const std::size_t n = b.size();
    // [[Re B, Im B], [Im B, -Re B]] (x; y) = s (x; y)  <=>  B conj(w) = s w,  w = x + iy
    ComplexMatrix m(2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const cplx z = 0.5 * (b(i, j) + b(j, i));
            m(i, j) = z.real();
            m(i, j + n) = m(i + n, j) = z.imag();
            m(i + n, j + n) = -z.real();
        }
    const HermitianEigen eig = jacobi_hermitian(m);
    std::vector<std::size_t> order(2 * n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return eig.values[p] > eig.values[q]; });
    ComplexMatrix a(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t col = order[k];
        const double s = eig.values[col];
        if (!(s > tol.tol_zero * scale)) fail(ErrorKind::singular_input, "takagi_root: form is degenerate");
        const double r = std::sqrt(s);
        for (std::size_t i = 0; i < n; ++i) a(k, i) = r * cplx(eig.vectors(i, col).real(), eig.vectors(i + n, col).real());
    }
    if (determinant(a).real() < 0.0)
        for (std::size_t i = 0; i < n; ++i) a(0, i) = -a(0, i);
    if (distance(a.transpose() * a, b) > tol.tol_residual * scale)
        fail(ErrorKind::convergence_failure, "takagi_root: residual too large");
    return a;
}

// Root A of a skew B (A^T J A = B) of least Frobenius norm, from the Youla
// form B = U K U^T with K a sum of blocks s [[0, 1], [-1, 0]].
inline ComplexMatrix youla_root(const ComplexMatrix& b, const ToleranceConfig& tol = {}) {
    b.check_finite();
    detail::require_skew(b, tol, "youla_root");
    if (b.size() % 2 != 0) fail(ErrorKind::odd_dimension, "youla_root: odd dimension");
    const double scale = std::max(1.0, b.frobenius_norm());
    const std::size_t n = b.size();
    const ComplexMatrix bs = (b - b.transpose()) * cplx(0.5, 0.0);
    const HermitianEigen eig = jacobi_hermitian(bs.transpose() * bs.conjugate());
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) { return eig.values[p] > eig.values[q]; });
    std::vector<ComplexVector> u;
    std::vector<double> sig;
    auto orthogonalize = [&](ComplexVector v) {
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : u) {
                const cplx c = hermitian_inner(v, q);
                for (std::size_t i = 0; i < n; ++i) v[i] -= c * q[i];
            }
        return v;
    };
    // Each accepted u gives its partner -B conj(u) / s; the pair spans a
    // block of K.
    for (std::size_t col : order) {
        if (u.size() == n) break;
        ComplexVector v = orthogonalize(eig.vectors.column(col));
        const double nv = norm(v);
        if (nv < 0.5) continue;
        v = scaled(v, 1.0 / nv);
        ComplexVector w = bs * conj(v);
        const double s = norm(w);
        if (!(s > tol.tol_zero * scale)) fail(ErrorKind::singular_input, "youla_root: form is degenerate");
        u.push_back(v);
        w = orthogonalize(scaled(w, -1.0 / s));
        u.push_back(scaled(w, 1.0 / norm(w)));
        sig.push_back(s);
    }
    if (u.size() != n) fail(ErrorKind::convergence_failure, "youla_root: pairing incomplete");
    ComplexMatrix a(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double r = std::sqrt(sig[k / 2]);
        for (std::size_t i = 0; i < n; ++i) a(k, i) = r * u[k][i];
    }
    if (distance(a.transpose() * symplectic_j(n / 2) * a, b) > tol.tol_residual * scale)
        fail(ErrorKind::convergence_failure, "youla_root: residual too large");
    return a;
}

// ---------------------------------------------------------------------------
// Seeded samples

enum class SampleClass { special_unitary, sl, sym_fiber, skew_fiber };

inline ComplexMatrix gaussian_matrix(std::size_t n, Rng& rng) {
    ComplexMatrix g(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rng.complex_normal();
    return g;
}

inline ComplexMatrix sample_special_unitary(std::size_t n, Rng& rng) {
    auto [q, r] = detail::gram_schmidt_qr(gaussian_matrix(n, rng), 1e-14);
    const cplx d = determinant(q);
    const cplx fix = std::conj(d) / std::abs(d);
    for (std::size_t i = 0; i < n; ++i) q(i, 0) *= fix;
    return q;
}

inline ComplexMatrix sample_sl(std::size_t n, Rng& rng) {
    ComplexMatrix g = gaussian_matrix(n, rng);
    const cplx root = std::pow(determinant(g), 1.0 / static_cast<double>(n));
    return g * (1.0 / root);
}

// Upper triangular, positive real diagonal, det 1.
inline ComplexMatrix sample_solvable(std::size_t n, Rng& rng) {
    ComplexMatrix e(n);
    std::vector<double> g(n);
    for (auto& x : g) x = 0.5 * rng.normal();
    const double mean = std::accumulate(g.begin(), g.end(), 0.0) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        e(i, i) = std::exp(g[i] - mean);
        for (std::size_t j = i + 1; j < n; ++j) e(i, j) = 0.5 * rng.complex_normal();
    }
    return e;
}

inline ComplexMatrix haar_sample(std::size_t n, SampleClass cls, std::uint64_t seed) {
    if (n < 2) fail(ErrorKind::invalid_argument, "haar_sample: n must be >= 2");
    Rng rng(seed);
    switch (cls) {
        case SampleClass::special_unitary: return sample_special_unitary(n, rng);
        case SampleClass::sl: return sample_sl(n, rng);
        case SampleClass::sym_fiber: {
            const ComplexMatrix c = sample_sl(n, rng);
            return c.transpose() * c;
        }
        case SampleClass::skew_fiber: {
            if (n % 2 != 0) fail(ErrorKind::odd_dimension, "haar_sample: skew_fiber needs even n");
            const ComplexMatrix c = sample_sl(n, rng);
            return c.transpose() * symplectic_j(n / 2) * c;
        }
    }
    fail(ErrorKind::invalid_argument, "haar_sample: unknown class");
}

} // namespace schubert
