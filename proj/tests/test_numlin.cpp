#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "support.hpp"

using namespace schubert;
using schubert::testing::from_eigen;
using schubert::testing::to_eigen;

namespace {

const cplx I1(0.0, 1.0);

ComplexMatrix diag2(cplx a, cplx b) { return ComplexMatrix::diagonal({a, b}); }

} // namespace

TEST(HermitianInner, Examples) {
    EXPECT_EQ(hermitian_inner(unit_vector(2, 0), unit_vector(2, 0)), cplx(1.0, 0.0));
    EXPECT_EQ(hermitian_inner(unit_vector(2, 0), unit_vector(2, 1)), cplx(0.0, 0.0));
    EXPECT_EQ(hermitian_inner({cplx(1, 0), I1}, {I1, cplx(1, 0)}), cplx(0.0, 0.0));
}

TEST(HermitianInner, ConjugateSymmetric) {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        ComplexVector x(5), y(5);
        for (auto& z : x) z = rng.complex_normal();
        for (auto& z : y) z = rng.complex_normal();
        EXPECT_NEAR(std::abs(hermitian_inner(x, y) - std::conj(hermitian_inner(y, x))), 0.0, 1e-14);
    }
}

TEST(Dense, DeterminantAndInverseAgreeWithEigen) {
    Rng rng(11);
    for (std::size_t n = 1; n <= 7; ++n) {
        const ComplexMatrix a = gaussian_matrix(n, rng);
        const auto e = to_eigen(a);
        EXPECT_NEAR(std::abs(determinant(a) - e.determinant()), 0.0, 1e-10 * std::max(1.0, std::abs(e.determinant())));
        EXPECT_LT(distance(inverse(a), from_eigen(e.inverse())), 1e-9 * from_eigen(e.inverse()).frobenius_norm());
    }
}

TEST(Dense, InverseOfSingularThrows) {
    const ComplexMatrix z = ComplexMatrix::from_rows({{1.0, 2.0}, {2.0, 4.0}});
    try {
        (void)inverse(z);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::singular_input);
    }
}

TEST(Iwasawa, Identity) {
    const auto p = iwasawa_split(ComplexMatrix::identity(3));
    EXPECT_LT(distance(p.unitary, ComplexMatrix::identity(3)), 1e-15);
    EXPECT_LT(distance(p.solvable, ComplexMatrix::identity(3)), 1e-15);
}

TEST(Iwasawa, UpperTriangularIsItsOwnSolvablePart) {
    ComplexMatrix b = ComplexMatrix::from_rows({{2.0, cplx(1, 1), 3.0}, {0.0, 0.25, cplx(0, -2)}, {0.0, 0.0, 2.0}});
    const auto p = iwasawa_split(b);
    EXPECT_LT(distance(p.unitary, ComplexMatrix::identity(3)), 1e-14);
    EXPECT_LT(distance(p.solvable, b), 1e-14);
}

TEST(Iwasawa, ReconstructsSeededSl4) {
    for (std::uint64_t s = 1; s <= 25; ++s) {
        const ComplexMatrix b = schubert::testing::random_sl(4, s);
        const auto p = iwasawa_split(b);
        EXPECT_LE(distance(p.unitary * p.solvable, b), 1e-10 * b.frobenius_norm());
        EXPECT_LT(unitarity_defect(p.unitary), 1e-12);
        EXPECT_NEAR(std::abs(determinant(p.unitary) - 1.0), 0.0, 1e-12);
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_GT(p.solvable(i, i).real(), 0.0);
            EXPECT_EQ(p.solvable(i, i).imag(), 0.0);
            for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(p.solvable(i, j), cplx(0.0, 0.0));
        }
    }
}

TEST(Iwasawa, RejectsDeterminantOtherThanOne) {
    try {
        (void)iwasawa_split(ComplexMatrix::diagonal({2.0, 1.0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_in_fiber);
    }
}

TEST(Jacobi, EigenvaluesMatchEigen) {
    Rng rng(5);
    for (std::size_t n = 1; n <= 8; ++n) {
        ComplexMatrix g = gaussian_matrix(n, rng);
        const ComplexMatrix h = g + g.adjoint();
        const HermitianEigen he = jacobi_hermitian(h);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(h));
        std::vector<double> ours = he.values;
        std::sort(ours.begin(), ours.end());
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(ours[i], es.eigenvalues()(static_cast<Eigen::Index>(i)), 1e-10);
        EXPECT_LT(unitarity_defect(he.vectors), 1e-12);
        const ComplexMatrix d = he.vectors.adjoint() * h * he.vectors;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) EXPECT_LT(std::abs(d(i, j)), 1e-10);
    }
}

TEST(EigUnitary, AlreadyDiagonal) {
    const UnitaryEigen e = eig_unitary(diag2(I1, -I1));
    ASSERT_EQ(e.pairs.size(), 2u);
    EXPECT_EQ(e.cluster_count, 2u);
    for (const auto& p : e.pairs) {
        EXPECT_FALSE(p.trivial);
        const bool first = std::abs(p.value + I1) < 1e-12;
        const bool second = std::abs(p.value - I1) < 1e-12;
        EXPECT_TRUE(first || second);
        const std::size_t k = second ? 0 : 1;
        EXPECT_NEAR(std::abs(p.vector[k]), 1.0, 1e-12);
    }
}

TEST(EigUnitary, IdentityIsAllTrivial) {
    const UnitaryEigen e = eig_unitary(ComplexMatrix::identity(4));
    ASSERT_EQ(e.pairs.size(), 4u);
    for (const auto& p : e.pairs) {
        EXPECT_TRUE(p.trivial);
        EXPECT_NEAR(std::abs(p.value - 1.0), 0.0, 1e-15);
    }
}

TEST(EigUnitary, RecoversPlantedSpectrum) {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const std::size_t n = 2 + s % 6;
        const ComplexMatrix u = schubert::testing::random_su(n, 100 + s);
        Rng rng(s);
        std::vector<double> theta(n);
        ComplexVector d(n);
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            theta[i] = rng.uniform(-3.0, 3.0);
            total += theta[i];
        }
        theta[n - 1] = canonical_angle(-total);
        for (std::size_t i = 0; i < n; ++i) d[i] = std::polar(1.0, theta[i]);
        const ComplexMatrix b = u * ComplexMatrix::diagonal(d) * u.adjoint();
        const UnitaryEigen e = eig_unitary(b);
        std::vector<double> got;
        for (const auto& p : e.pairs) {
            got.push_back(std::arg(p.value));
            EXPECT_LT(norm(b * p.vector - scaled(p.vector, p.value)), 1e-9);
        }
        std::sort(got.begin(), got.end());
        std::sort(theta.begin(), theta.end());
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(got[i], theta[i], 1e-9);
    }
}

TEST(EigUnitary, DegenerateClusterSharesOneEigenvalue) {
    const ComplexMatrix u = schubert::testing::random_su(4, 7);
    const cplx l = std::polar(1.0, 0.7);
    const ComplexMatrix b = u * ComplexMatrix::diagonal({l, l, std::conj(l), std::conj(l)}) * u.adjoint();
    const UnitaryEigen e = eig_unitary(b);
    EXPECT_EQ(e.cluster_count, 2u);
    for (const auto& p : e.pairs) EXPECT_TRUE(std::abs(p.value - l) < 1e-10 || std::abs(p.value - std::conj(l)) < 1e-10);
}

TEST(EigUnitary, AmbiguousAngleIsFlagged) {
    const double a = 10.0 * ToleranceConfig{}.tol_angle;
    const UnitaryEigen e = eig_unitary(diag2(std::polar(1.0, a), std::polar(1.0, -a)));
    EXPECT_TRUE(e.boundary_ambiguous);
    const UnitaryEigen clear = eig_unitary(diag2(std::polar(1.0, 0.5), std::polar(1.0, -0.5)));
    EXPECT_FALSE(clear.boundary_ambiguous);
}

TEST(FlagBasis, ProfileAndOrthonormality) {
    Rng rng(21);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 6;
        std::vector<ComplexVector> vs(3, ComplexVector(n));
        for (auto& v : vs)
            for (auto& z : v) z = rng.complex_normal();
        const FlagBasis fb = flag_adapted_basis(vs);
        ASSERT_EQ(fb.vectors.size(), 3u);
        // Generic 3-space in C^6: pivots at the last three rows.
        EXPECT_EQ(fb.pivots, (std::vector<std::size_t>{3, 4, 5}));
        for (std::size_t i = 0; i < 3; ++i) {
            EXPECT_EQ(min_index(fb.vectors[i]), fb.pivots[i] + 1);
            for (std::size_t j = 0; j < 3; ++j)
                EXPECT_NEAR(std::abs(hermitian_inner(fb.vectors[i], fb.vectors[j]) - (i == j ? 1.0 : 0.0)), 0.0, 1e-12);
            // y_i stays inside span(vs)
            Eigen::MatrixXcd basis(n, 4);
            for (std::size_t j = 0; j < 3; ++j)
                for (std::size_t k = 0; k < n; ++k) basis(k, j) = vs[j][k];
            for (std::size_t k = 0; k < n; ++k) basis(k, 3) = fb.vectors[i][k];
            EXPECT_EQ(schubert::testing::numeric_rank(basis, 1e-9), 3);
        }
    }
}

TEST(Pfaffian, NormalForms) {
    for (std::size_t h = 1; h <= 4; ++h) EXPECT_EQ(pfaffian(symplectic_j(h)), cplx(1.0, 0.0));
    const cplx a(2.0, -3.0);
    EXPECT_EQ(pfaffian(ComplexMatrix::from_rows({{0.0, a}, {-a, 0.0}})), a);
}

TEST(Pfaffian, SquaresToDeterminant) {
    Rng rng(8);
    for (std::size_t h = 1; h <= 4; ++h) {
        const ComplexMatrix g = gaussian_matrix(2 * h, rng);
        const ComplexMatrix b = g - g.transpose();
        const cplx pf = pfaffian(b);
        const cplx det = to_eigen(b).determinant();
        EXPECT_NEAR(std::abs(pf * pf - det), 0.0, 1e-9 * std::max(1.0, std::abs(det)));
    }
}

TEST(Pfaffian, TransformationLaw) {
    Rng rng(9);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 2 * (1 + static_cast<std::size_t>(t % 4));
        const ComplexMatrix g = gaussian_matrix(n, rng);
        const ComplexMatrix b = g - g.transpose();
        const ComplexMatrix c = gaussian_matrix(n, rng);
        const cplx lhs = pfaffian(c.transpose() * b * c);
        const cplx rhs = determinant(c) * pfaffian(b);
        EXPECT_LE(std::abs(lhs - rhs), 1e-8 * std::max(1.0, std::abs(rhs)));
    }
}

TEST(Pfaffian, Errors) {
    try {
        (void)pfaffian(ComplexMatrix::identity(2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_skew_symmetric);
    }
    try {
        (void)pfaffian(ComplexMatrix(3));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::odd_dimension);
    }
}

TEST(QuadraticForm, ScalingExamples) {
    EXPECT_LT(distance(diagonalize_quadratic_form(ComplexMatrix::identity(3)), ComplexMatrix::identity(3)), 1e-15);
    const ComplexMatrix c = diagonalize_quadratic_form(diag2(4.0, 0.25));
    EXPECT_LT(distance(c, diag2(0.5, 2.0)), 1e-15);
}

TEST(QuadraticForm, ZeroDiagonalNeedsTheOffDiagonalTrick) {
    const ComplexMatrix b = ComplexMatrix::from_rows({{0.0, I1}, {I1, 0.0}}); // det = 1
    const ComplexMatrix c = diagonalize_quadratic_form(b);
    EXPECT_LT(distance(c.transpose() * b * c, ComplexMatrix::identity(2)), 1e-12);
    EXPECT_NEAR(std::abs(determinant(c) - 1.0), 0.0, 1e-12);
}

TEST(QuadraticForm, ReconstructsCongruence) {
    for (std::uint64_t s = 1; s <= 30; ++s) {
        const std::size_t n = 2 + s % 5;
        const ComplexMatrix d = schubert::testing::random_sl(n, s);
        const ComplexMatrix b = d.transpose() * d;
        const ComplexMatrix c = diagonalize_quadratic_form(b);
        EXPECT_LE(distance(c.transpose() * b * c, ComplexMatrix::identity(n)), 1e-9 * b.frobenius_norm());
        EXPECT_NEAR(std::abs(determinant(c) - 1.0), 0.0, 1e-9);
        EXPECT_LE(distance(inverse(c).transpose() * inverse(c), b), 1e-9 * b.frobenius_norm());
    }
}

TEST(SkewForm, NormalForms) {
    EXPECT_LT(distance(normalize_skew_form(symplectic_j(2)), ComplexMatrix::identity(4)), 1e-15);
    const double a = 9.0, b = 0.25;
    ComplexMatrix m(4);
    m(0, 1) = a;
    m(1, 0) = -a;
    m(2, 3) = b;
    m(3, 2) = -b;
    const ComplexMatrix c = normalize_skew_form(m);
    EXPECT_LT(distance(c, ComplexMatrix::diagonal({1.0 / 3.0, 1.0 / 3.0, 2.0, 2.0})), 1e-14);
}

TEST(SkewForm, ReconstructsCongruence) {
    for (std::uint64_t s = 1; s <= 30; ++s) {
        const std::size_t n = 2 * (1 + s % 4);
        const ComplexMatrix c0 = schubert::testing::random_sl(n, s);
        const ComplexMatrix b = c0.transpose() * symplectic_j(n / 2) * c0;
        const ComplexMatrix c = normalize_skew_form(b);
        EXPECT_LE(distance(c.transpose() * b * c, symplectic_j(n / 2)), 1e-9 * b.frobenius_norm());
    }
}

TEST(CongruenceRoots, TakagiRootOfUnitaryIsUnitary) {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const std::size_t n = 2 + s % 5;
        const ComplexMatrix u = schubert::testing::random_su(n, s);
        const ComplexMatrix b = u.transpose() * u;
        const ComplexMatrix a = takagi_root(b);
        EXPECT_LT(unitarity_defect(a), 1e-12);
        EXPECT_LT(distance(a.transpose() * a, b), 1e-12);
        const auto p = iwasawa_split(a);
        EXPECT_LT(distance(p.unitary.transpose() * p.unitary, b), 1e-12);
    }
}

TEST(CongruenceRoots, TakagiRootHasNuclearNorm) {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const std::size_t n = 2 + s % 5;
        const ComplexMatrix d = schubert::testing::random_sl(n, 40 + s);
        const ComplexMatrix b = d.transpose() * d;
        const ComplexMatrix a = takagi_root(b);
        EXPECT_LE(distance(a.transpose() * a, b), 1e-10 * b.frobenius_norm());
        EXPECT_NEAR(std::abs(determinant(a) - 1.0), 0.0, 1e-9);
        // ||A||_F^2 >= ||A^T A||_* with equality at the Takagi root.
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(b));
        const double nuclear = svd.singularValues().sum();
        const double fa = a.frobenius_norm();
        EXPECT_NEAR(fa * fa, nuclear, 1e-9 * nuclear);
        const double fd = d.frobenius_norm();
        EXPECT_GE(fd * fd, nuclear * (1.0 - 1e-12));
    }
}

TEST(CongruenceRoots, YoulaRoot) {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const std::size_t n = 2 * (1 + s % 4);
        const ComplexMatrix j = symplectic_j(n / 2);
        const ComplexMatrix u = schubert::testing::random_su(n, s);
        const ComplexMatrix bu = u.transpose() * j * u;
        const ComplexMatrix au = youla_root(bu);
        EXPECT_LT(unitarity_defect(au), 1e-12);
        EXPECT_LT(distance(au.transpose() * j * au, bu), 1e-12);

        const ComplexMatrix c = schubert::testing::random_sl(n, 60 + s);
        const ComplexMatrix b = c.transpose() * j * c;
        const ComplexMatrix a = youla_root(b);
        EXPECT_LE(distance(a.transpose() * j * a, b), 1e-10 * b.frobenius_norm());
        EXPECT_NEAR(std::abs(determinant(a) - 1.0), 0.0, 1e-9);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(b));
        const double fa = a.frobenius_norm();
        EXPECT_NEAR(fa * fa, svd.singularValues().sum(), 1e-9 * svd.singularValues().sum());
    }
}

TEST(Sampling, ClassesHaveTheirDefiningProperties) {
    for (std::uint64_t s = 1; s <= 10; ++s) {
        const ComplexMatrix u = haar_sample(2, SampleClass::special_unitary, s);
        EXPECT_LE(unitarity_defect(u), 1e-12);
        EXPECT_LE(std::abs(determinant(u) - 1.0), 1e-12);
        const ComplexMatrix g = haar_sample(3, SampleClass::sl, s);
        EXPECT_LE(std::abs(determinant(g) - 1.0), 1e-12);
        const ComplexMatrix sym = haar_sample(2, SampleClass::sym_fiber, s);
        EXPECT_LE(symmetry_defect(sym), 1e-12);
        EXPECT_LE(std::abs(determinant(sym) - 1.0), 1e-10);
        const ComplexMatrix sk = haar_sample(4, SampleClass::skew_fiber, s);
        EXPECT_LE(skew_defect(sk), 1e-12);
        EXPECT_LE(std::abs(pfaffian(sk) - 1.0), 1e-10);
    }
}

TEST(Sampling, Deterministic) {
    EXPECT_EQ(haar_sample(5, SampleClass::sl, 42), haar_sample(5, SampleClass::sl, 42));
    EXPECT_FALSE(haar_sample(5, SampleClass::sl, 42) == haar_sample(5, SampleClass::sl, 43));
}

TEST(Sampling, SolvableElements) {
    Rng rng(4);
    for (int t = 0; t < 10; ++t) {
        const ComplexMatrix e = sample_solvable(5, rng);
        EXPECT_NEAR(std::abs(determinant(e) - 1.0), 0.0, 1e-12);
        for (std::size_t i = 0; i < 5; ++i) {
            EXPECT_GT(e(i, i).real(), 0.0);
            EXPECT_EQ(e(i, i).imag(), 0.0);
            for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(e(i, j), cplx(0.0, 0.0));
        }
    }
}
