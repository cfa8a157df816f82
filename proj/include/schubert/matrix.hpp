#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "schubert/error.hpp"

namespace schubert {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(std::size_t n) : n_(n), a_(n * n, cplx(0.0, 0.0)) {
        if (n == 0) fail(ErrorKind::dimension_mismatch, "matrix dimension must be >= 1");
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
        n_ = rows.size();
        if (n_ == 0) fail(ErrorKind::dimension_mismatch, "matrix dimension must be >= 1");
        a_.reserve(n_ * n_);
        for (const auto& r : rows) {
            if (r.size() != n_) fail(ErrorKind::dimension_mismatch, "matrix must be square");
            a_.insert(a_.end(), r.begin(), r.end());
        }
        check_finite();
    }

    static ComplexMatrix from_rows(const std::vector<ComplexVector>& rows) {
        ComplexMatrix m(rows.size());
        for (std::size_t i = 0; i < m.n_; ++i) {
            if (rows[i].size() != m.n_) fail(ErrorKind::dimension_mismatch, "matrix must be square");
            for (std::size_t j = 0; j < m.n_; ++j) m(i, j) = rows[i][j];
        }
        m.check_finite();
        return m;
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(const ComplexVector& d) {
        ComplexMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    // Columns given as vectors.
    static ComplexMatrix from_columns(const std::vector<ComplexVector>& cols) {
        ComplexMatrix m(cols.size());
        for (std::size_t j = 0; j < m.n_; ++j) {
            if (cols[j].size() != m.n_) fail(ErrorKind::dimension_mismatch, "column length mismatch");
            for (std::size_t i = 0; i < m.n_; ++i) m(i, j) = cols[j][i];
        }
        return m;
    }

    // J_n: block diagonal with 2x2 blocks [[0,1],[-1,0]].
    static ComplexMatrix symplectic_j(std::size_t half) {
        ComplexMatrix m(2 * half);
        for (std::size_t b = 0; b < half; ++b) {
            m(2 * b, 2 * b + 1) = 1.0;
            m(2 * b + 1, 2 * b) = -1.0;
        }
        return m;
    }

    std::size_t size() const noexcept { return n_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    const std::vector<cplx>& data() const noexcept { return a_; }

    ComplexVector column(std::size_t j) const {
        ComplexVector v(n_);
        for (std::size_t i = 0; i < n_; ++i) v[i] = (*this)(i, j);
        return v;
    }

    void set_column(std::size_t j, const ComplexVector& v) {
        for (std::size_t i = 0; i < n_; ++i) (*this)(i, j) = v[i];
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    ComplexMatrix transpose() const {
        ComplexMatrix r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    ComplexMatrix conjugate() const {
        ComplexMatrix r(*this);
        for (auto& z : r.a_) z = std::conj(z);
        return r;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& z : a_) s += std::norm(z);
        return std::sqrt(s);
    }

    bool is_finite() const {
        for (const auto& z : a_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

    void check_finite() const {
        if (!is_finite()) fail(ErrorKind::invalid_argument, "matrix has non-finite entries");
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        same_size(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        same_size(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }

    ComplexMatrix& operator*=(cplx s) {
        for (auto& z : a_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.same_size(b);
        const std::size_t n = a.n_;
        ComplexMatrix r(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& v) {
        if (v.size() != a.n_) fail(ErrorKind::dimension_mismatch, "matrix-vector size mismatch");
        ComplexVector r(a.n_, cplx(0.0, 0.0));
        for (std::size_t i = 0; i < a.n_; ++i)
            for (std::size_t j = 0; j < a.n_; ++j) r[i] += a(i, j) * v[j];
        return r;
    }

    friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) { return a.n_ == b.n_ && a.a_ == b.a_; }

private:
    void same_size(const ComplexMatrix& o) const {
        if (o.n_ != n_) fail(ErrorKind::dimension_mismatch, "matrix sizes differ");
    }

    std::size_t n_ = 0;
    std::vector<cplx> a_;
};

inline double distance(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).frobenius_norm(); }

// ---- vector helpers ----

inline double norm(const ComplexVector& x) {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
}

inline ComplexVector scaled(const ComplexVector& x, cplx s) {
    ComplexVector r(x);
    for (auto& z : r) z *= s;
    return r;
}

inline ComplexVector conj(const ComplexVector& x) {
    ComplexVector r(x);
    for (auto& z : r) z = std::conj(z);
    return r;
}

inline ComplexVector operator-(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) fail(ErrorKind::length_mismatch, "vector lengths differ");
    ComplexVector r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] -= b[i];
    return r;
}

inline ComplexVector operator+(const ComplexVector& a, const ComplexVector& b) {
    if (a.size() != b.size()) fail(ErrorKind::length_mismatch, "vector lengths differ");
    ComplexVector r(a);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += b[i];
    return r;
}

inline ComplexVector unit_vector(std::size_t n, std::size_t k) {
    ComplexVector e(n, cplx(0.0, 0.0));
    e.at(k) = 1.0;
    return e;
}

} // namespace schubert
