#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "schubert/error.hpp"
#include "schubert/matrix.hpp"
#include "schubert/numlin.hpp"
#include "schubert/tolerance.hpp"

namespace schubert {

enum class MatrixClass { general, symmetric, skew };

inline const char* to_string(MatrixClass c) {
    switch (c) {
        case MatrixClass::general: return "general";
        case MatrixClass::symmetric: return "symmetric";
        case MatrixClass::skew: return "skew";
    }
    return "general";
}

inline MatrixClass parse_matrix_class(const std::string& s) {
    if (s == "general") return MatrixClass::general;
    if (s == "symmetric") return MatrixClass::symmetric;
    if (s == "skew") return MatrixClass::skew;
    fail(ErrorKind::invalid_argument, "unknown matrix class '" + s + "'");
}

// Angle reduced to (-pi, pi].
inline double canonical_angle(double theta) {
    double t = std::remainder(theta, 2.0 * std::numbers::pi);
    if (t <= -std::numbers::pi) t += 2.0 * std::numbers::pi;
    return t;
}

// 1-based index of the last coordinate with |x_k| > tol_zero * ||x||.
inline std::size_t min_index(const ComplexVector& x, const ToleranceConfig& tol = {}) {
    const double nx = norm(x);
    if (!(nx > tol.tol_zero)) fail(ErrorKind::zero_vector, "min_index: zero vector");
    for (std::size_t k = x.size(); k-- > 0;)
        if (std::abs(x[k]) > tol.tol_zero * nx) return k + 1;
    fail(ErrorKind::zero_vector, "min_index: zero vector");
}

// A_(theta, x) = I - (1 - e^{i theta}) x conj(x)^T
struct PseudoRotation {
    double theta = 0.0;
    ComplexVector axis;

    // Normalizes the axis, clears coordinates past its min-index and rotates
    // its phase so that coordinate is real positive.
    static PseudoRotation make(double theta, ComplexVector axis, const ToleranceConfig& tol = {}) {
        const double nx = norm(axis);
        if (!(nx > tol.tol_zero)) fail(ErrorKind::zero_vector, "PseudoRotation: zero axis");
        for (auto& z : axis) z /= nx;
        const std::size_t m = min_index(axis, tol);
        for (std::size_t k = m; k < axis.size(); ++k) axis[k] = 0.0;
        const cplx lead = axis[m - 1];
        const cplx phase = std::conj(lead) / std::abs(lead);
        for (auto& z : axis) z *= phase;
        axis[m - 1] = std::abs(lead);
        const double nn = norm(axis);
        for (auto& z : axis) z /= nn;
        return PseudoRotation{canonical_angle(theta), std::move(axis)};
    }

    std::size_t dim() const noexcept { return axis.size(); }

    std::size_t index(const ToleranceConfig& tol = {}) const { return min_index(axis, tol); }

    cplx eigenvalue() const { return std::polar(1.0, theta); }

    bool is_identity(const ToleranceConfig& tol = {}) const { return std::abs(canonical_angle(theta)) < tol.tol_angle; }

    ComplexMatrix matrix() const {
        const std::size_t n = axis.size();
        ComplexMatrix m = ComplexMatrix::identity(n);
        const cplx f = 1.0 - eigenvalue();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) m(i, j) -= f * axis[i] * std::conj(axis[j]);
        return m;
    }

    PseudoRotation inverse() const { return PseudoRotation{canonical_angle(-theta), axis}; }
};

inline ComplexVector rotate(const PseudoRotation& rot, const ComplexVector& v) {
    if (v.size() != rot.axis.size()) fail(ErrorKind::dimension_mismatch, "rotate: dimension mismatch");
    const cplx c = (1.0 - rot.eigenvalue()) * hermitian_inner(v, rot.axis);
    ComplexVector r(v);
    for (std::size_t i = 0; i < v.size(); ++i) r[i] -= c * rot.axis[i];
    return r;
}

inline ComplexVector rotate_inverse(const PseudoRotation& rot, const ComplexVector& v) { return rotate(rot.inverse(), v); }

inline ComplexMatrix product(const std::vector<PseudoRotation>& rots, std::size_t n) {
    ComplexMatrix m = ComplexMatrix::identity(n);
    for (const auto& r : rots) m = m * r.matrix();
    return m;
}

inline PseudoRotation conjugate_by_unitary(const ComplexMatrix& u, const PseudoRotation& rot, const ToleranceConfig& tol = {}) {
    require_unitary(u, tol, "conjugate_by_unitary");
    return PseudoRotation::make(rot.theta, u * rot.axis, tol);
}

struct Involutions {
    PseudoRotation inverse;
    PseudoRotation conjugate;
    PseudoRotation transpose;
};

inline Involutions involutions(const PseudoRotation& rot, const ToleranceConfig& tol = {}) {
    return {PseudoRotation::make(-rot.theta, rot.axis, tol), PseudoRotation::make(-rot.theta, conj(rot.axis), tol),
            PseudoRotation::make(rot.theta, conj(rot.axis), tol)};
}

// ---------------------------------------------------------------------------
// Whitehead interchange

enum class InterchangeCase { swap, reduce, same_line };

inline const char* to_string(InterchangeCase c) {
    switch (c) {
        case InterchangeCase::swap: return "swap";
        case InterchangeCase::reduce: return "reduce";
        case InterchangeCase::same_line: return "same_line";
    }
    return "swap";
}

struct InterchangeResult {
    std::vector<PseudoRotation> factors; // product order, at most two
    InterchangeCase kind = InterchangeCase::swap;
    bool boundary_ambiguous = false;
};

// Rewrites a*b (index(a) = m >= m' = index(b)) as a product whose indices are
// ordered: swap when m > m', otherwise the first output drops below m.
inline InterchangeResult whitehead_interchange(const PseudoRotation& a, const PseudoRotation& b, const ToleranceConfig& tol = {}) {
    if (a.dim() != b.dim()) fail(ErrorKind::dimension_mismatch, "whitehead_interchange: dimension mismatch");
    const std::size_t m = a.index(tol);
    const std::size_t mp = b.index(tol);
    if (m < mp) fail(ErrorKind::precondition_violated, "whitehead_interchange: needs index(a) >= index(b)");
    InterchangeResult out;

    if (m > mp) {
        out.kind = InterchangeCase::swap;
        out.factors = {b, PseudoRotation::make(a.theta, rotate_inverse(b, a.axis), tol)};
        return out;
    }

    const ComplexVector& x = a.axis;
    const ComplexVector& xp = b.axis;
    const cplx overlap = hermitian_inner(x, xp);
    ComplexVector perp = x;
    for (std::size_t i = 0; i < x.size(); ++i) perp[i] -= overlap * xp[i];
    if (norm(perp) <= tol.tol_residual) {
        out.kind = InterchangeCase::same_line;
        // x = overlap * x' up to rounding, and A depends only on the line.
        const PseudoRotation merged = PseudoRotation::make(a.theta + b.theta, xp, tol);
        if (tol.angle_ambiguous(std::abs(merged.theta))) out.boundary_ambiguous = true;
        if (!merged.is_identity(tol)) out.factors.push_back(merged);
        return out;
    }

    out.kind = InterchangeCase::reduce;
    const std::size_t k = m - 1;
    // The line of W = span(x, x') inside C^{m-1}.
    ComplexVector xt(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) xt[i] = xp[k] * x[i] - x[k] * xp[i];
    xt[k] = 0.0;
    const double nxt = norm(xt);
    if (!(nxt > 0.0)) fail(ErrorKind::precondition_violated, "whitehead_interchange: degenerate plane");
    for (auto& z : xt) z /= nxt;
    {
        const double lead = std::abs(xt[min_index(xt, tol) - 1]);
        if (tol.zero_ambiguous(lead)) out.boundary_ambiguous = true;
    }
    // Unit vector of W orthogonal to xt.
    ComplexVector e1 = x;
    for (int pass = 0; pass < 2; ++pass) {
        const cplx c = hermitian_inner(e1, xt);
        for (std::size_t i = 0; i < e1.size(); ++i) e1[i] -= c * xt[i];
    }
    const double ne1 = norm(e1);
    for (auto& z : e1) z /= ne1;

    // P = a*b restricted to W. R = A(phi, u) sends e1 to v = P^{-1} e1, so
    // P*R fixes e1 and equals A(theta~, xt) on W.
    const ComplexVector v = rotate_inverse(b, rotate_inverse(a, e1));
    ComplexVector w = e1 - v;
    const double nw = norm(w);
    std::vector<PseudoRotation> tail;
    ComplexVector xt_image = rotate(a, rotate(b, xt));
    if (nw > tol.tol_zero) {
        // 1 - <v, e1> = <w, e1>, without the cancellation.
        const cplx eiphi = 1.0 - (nw * nw) / std::conj(hermitian_inner(w, e1));
        const PseudoRotation r = PseudoRotation::make(std::arg(eiphi), w, tol);
        if (tol.angle_ambiguous(std::abs(r.theta))) out.boundary_ambiguous = true;
        if (!r.is_identity(tol)) {
            xt_image = rotate(a, rotate(b, rotate(r, xt)));
            tail.push_back(r.inverse());
        }
    }
    const PseudoRotation head = PseudoRotation::make(std::arg(hermitian_inner(xt_image, xt)), xt, tol);
    if (tol.angle_ambiguous(std::abs(head.theta))) out.boundary_ambiguous = true;
    if (!head.is_identity(tol)) out.factors.push_back(head);
    for (auto& t : tail) out.factors.push_back(std::move(t));
    return out;
}

// ---------------------------------------------------------------------------
// Quaternionic structure on C^{2n}

// j x = J conj(x)
inline ComplexVector jmul(const ComplexVector& x) {
    if (x.size() % 2 != 0) fail(ErrorKind::odd_dimension, "jmul: odd length");
    ComplexVector r(x.size());
    for (std::size_t b = 0; b + 1 < x.size(); b += 2) {
        r[b] = std::conj(x[b + 1]);
        r[b + 1] = -std::conj(x[b]);
    }
    return r;
}

// The unit vector of span(x, jx) cap C^{2m-1} whose coordinate 2m-1 is real
// positive, where C^{2m} is the smallest flag space holding the line.
inline ComplexVector hline_canonical(const ComplexVector& x, const ToleranceConfig& tol = {}) {
    if (x.size() % 2 != 0) fail(ErrorKind::odd_dimension, "hline_canonical: odd length");
    const double nx = norm(x);
    if (!(nx > tol.tol_zero)) fail(ErrorKind::zero_vector, "hline_canonical: zero vector");
    const ComplexVector u = scaled(x, 1.0 / nx);
    const ComplexVector ju = jmul(u);
    const std::size_t top = std::max(min_index(u, tol), min_index(ju, tol)); // even
    const std::size_t k = top - 1;
    ComplexVector y(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) y[i] = ju[k] * u[i] - u[k] * ju[i];
    y[k] = 0.0;
    return PseudoRotation::make(0.0, y, tol).axis;
}

// A_(theta, x) * A_(theta, jx)
struct HPseudoRotation {
    double theta = 0.0;
    ComplexVector hline;

    static HPseudoRotation make(double theta, const ComplexVector& x, const ToleranceConfig& tol = {}) {
        return HPseudoRotation{canonical_angle(theta), hline_canonical(x, tol)};
    }

    PseudoRotation first() const { return PseudoRotation{theta, hline}; }
    PseudoRotation second() const { return PseudoRotation{theta, jmul(hline)}; }

    ComplexMatrix matrix() const { return first().matrix() * second().matrix(); }
};

// ---------------------------------------------------------------------------
// Cartan involutions and models

inline ComplexMatrix sigma(const ComplexMatrix& c, MatrixClass cls) {
    switch (cls) {
        case MatrixClass::general: return c;
        case MatrixClass::symmetric: return c.conjugate();
        case MatrixClass::skew: {
            const ComplexMatrix j = symplectic_j(c.size() / 2);
            return j * c.conjugate() * j.adjoint();
        }
    }
    return c;
}

// Distance of B from its Cartan model; 0 for the general class.
inline double model_defect(const ComplexMatrix& b, MatrixClass cls) {
    switch (cls) {
        case MatrixClass::general: return 0.0;
        case MatrixClass::symmetric: return symmetry_defect(b);
        case MatrixClass::skew: {
            const ComplexMatrix bj = b * symplectic_j(b.size() / 2);
            return skew_defect(bj);
        }
    }
    return 0.0;
}

inline void require_model(const ComplexMatrix& b, MatrixClass cls, const ToleranceConfig& tol, const char* who) {
    if (cls == MatrixClass::skew && b.size() % 2 != 0) fail(ErrorKind::not_in_model, std::string(who) + ": odd dimension");
    if (unitarity_defect(b) > tol.tol_residual) fail(ErrorKind::not_in_model, std::string(who) + ": not unitary");
    if (model_defect(b, cls) > tol.tol_residual) fail(ErrorKind::not_in_model, std::string(who) + ": outside the Cartan model");
}

// general: A B; symmetric: A B A^T; skew: A (B J) A^T J^{-1}
inline ComplexMatrix cartan_conjugate(const ComplexMatrix& a, const ComplexMatrix& b, MatrixClass cls, const ToleranceConfig& tol = {}) {
    if (a.size() != b.size()) fail(ErrorKind::dimension_mismatch, "cartan_conjugate: size mismatch");
    if (unitarity_defect(a) > tol.tol_residual) fail(ErrorKind::not_in_model, "cartan_conjugate: A is not unitary");
    require_model(b, cls, tol, "cartan_conjugate");
    switch (cls) {
        case MatrixClass::general: return a * b;
        case MatrixClass::symmetric: return a * b * a.transpose();
        case MatrixClass::skew: {
            const ComplexMatrix j = symplectic_j(b.size() / 2);
            return a * (b * j) * a.transpose() * j.transpose();
        }
    }
    return b;
}

} // namespace schubert
