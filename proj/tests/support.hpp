#pragma once

#include <Eigen/Dense>

#include "schubert/schubert.hpp"

namespace schubert::testing {

using EMatrix = Eigen::MatrixXcd;

inline EMatrix to_eigen(const ComplexMatrix& m) {
    EMatrix e(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) e(i, j) = m(i, j);
    return e;
}

inline ComplexMatrix from_eigen(const EMatrix& e) {
    ComplexMatrix m(static_cast<std::size_t>(e.rows()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j) m(i, j) = e(i, j);
    return m;
}

inline int numeric_rank(const EMatrix& a, double tol) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    Eigen::JacobiSVD<EMatrix> svd(a);
    int r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++r;
    return r;
}

// Min-indices read off the flag profile of V = im(B - I): m is an index
// exactly when dim(V cap C^m) jumps at m. Index 1 is dropped for the symbol.
inline Indices rank_profile_indices(const ComplexMatrix& b, double tol = 1e-7) {
    const Eigen::Index n = static_cast<Eigen::Index>(b.size());
    const EMatrix d = to_eigen(b) - EMatrix::Identity(n, n);
    Eigen::JacobiSVD<EMatrix> svd(d, Eigen::ComputeFullU);
    int k = 0;
    for (Eigen::Index i = 0; i < n; ++i)
        if (svd.singularValues()(i) > tol) ++k;
    const EMatrix v = svd.matrixU().leftCols(k);
    Indices out;
    int prev = 0;
    for (Eigen::Index m = 1; m <= n; ++m) {
        const int below = numeric_rank(v.bottomRows(n - m), tol);
        const int dim = k - below;
        if (dim > prev) out.push_back(static_cast<int>(m));
        prev = dim;
    }
    return out;
}

inline Indices rank_profile_symbol(const ComplexMatrix& b, double tol = 1e-7) {
    Indices full = rank_profile_indices(b, tol);
    if (!full.empty() && full.front() == 1) full.erase(full.begin());
    return full;
}

inline ComplexMatrix random_sl(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return sample_sl(n, rng);
}

inline ComplexMatrix random_su(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return sample_special_unitary(n, rng);
}

} // namespace schubert::testing
