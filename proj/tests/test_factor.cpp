#include <gtest/gtest.h>

#include <algorithm>

#include "support.hpp"

using namespace schubert;
using schubert::testing::random_su;
using schubert::testing::rank_profile_indices;
using schubert::testing::rank_profile_symbol;

namespace {

bool strictly_increasing(const Indices& m) {
    for (std::size_t i = 1; i < m.size(); ++i)
        if (m[i] <= m[i - 1]) return false;
    return true;
}

ComplexMatrix plant(const Indices& m, MatrixClass cls, std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    return cell_map(m, interior_params(m, cls, rng), n, cls);
}

} // namespace

TEST(FactorizeSu, DiagonalRotationHasSymbolTwo) {
    const double th = 0.8;
    const ComplexMatrix b = ComplexMatrix::diagonal({std::polar(1.0, th), std::polar(1.0, -th)});
    const OrderedFactorization f = factorize_su(b);
    EXPECT_EQ(f.symbol().entries, (Indices{2}));
    EXPECT_TRUE(f.correction.has_value());
    EXPECT_LT(distance(f.product(), b), 1e-12);
}

TEST(FactorizeSu, IdentityIsEmpty) {
    const OrderedFactorization f = factorize_su(ComplexMatrix::identity(4));
    EXPECT_EQ(f.size(), 0u);
    EXPECT_TRUE(f.symbol().entries.empty());
}

TEST(FactorizeSu, ReconstructsAndOrdersHaarSamples) {
    for (std::size_t n = 2; n <= 7; ++n) {
        for (std::uint64_t s = 1; s <= 15; ++s) {
            const ComplexMatrix b = random_su(n, 1000 * n + s);
            const OrderedFactorization f = factorize_su(b);
            EXPECT_LE(distance(f.product(), b), 1e-8 * static_cast<double>(n));
            const Indices idx = f.indices();
            EXPECT_TRUE(strictly_increasing(idx));
            for (int i : idx) EXPECT_GE(i, 2);
            // Haar samples are generic: top cell.
            EXPECT_EQ(f.symbol().entries, top_symbol(static_cast<int>(n)));
        }
    }
}

TEST(FactorizeSu, SymbolMatchesRankProfileOracle) {
    for (std::size_t n = 2; n <= 6; ++n) {
        const std::vector<Indices> all = enumerate_symbols(static_cast<int>(n));
        for (std::size_t k = 0; k < all.size(); ++k) {
            const ComplexMatrix b = plant(all[k], MatrixClass::general, n, 77 * n + k);
            const OrderedFactorization f = factorize_su(b);
            EXPECT_EQ(f.symbol().entries, all[k]);
            EXPECT_EQ(rank_profile_symbol(b), all[k]);
            EXPECT_EQ(f.full_indices(), rank_profile_indices(b));
            EXPECT_LE(distance(f.product(), b), 1e-8 * static_cast<double>(n));
        }
    }
}

TEST(FactorizeSu, Errors) {
    try {
        (void)factorize_su(ComplexMatrix::diagonal({2.0, 0.5}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_unitary);
    }
    try {
        (void)factorize_su(ComplexMatrix::diagonal({cplx(0, 1), 1.0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_in_fiber);
    }
}

TEST(FactorizeDecreasing, ReconstructsWithDecreasingIndices) {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const std::size_t n = 2 + s % 5;
        const ComplexMatrix b = random_su(n, s);
        const OrderedFactorization d = factorize_decreasing(b);
        EXPECT_EQ(d.order, Order::decreasing);
        EXPECT_LE(distance(d.product(), b), 1e-8 * static_cast<double>(n));
        Indices idx = d.indices();
        std::reverse(idx.begin(), idx.end());
        EXPECT_TRUE(strictly_increasing(idx));
        EXPECT_EQ(d.symbol().entries, factorize_su(b).symbol().entries);
    }
}

TEST(ReverseOrder, RoundTripsAndKeepsProduct) {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        const std::size_t n = 2 + s % 5;
        const ComplexMatrix b = random_su(n, 500 + s);
        const OrderedFactorization f = factorize_su(b);
        const OrderedFactorization r = reverse_order(f);
        EXPECT_EQ(r.order, Order::decreasing);
        EXPECT_LE(distance(r.product(), b), 1e-9);
        EXPECT_EQ(r.symbol().entries, f.symbol().entries);
        const OrderedFactorization back = reverse_order(r);
        EXPECT_LE(distance(back.product(), b), 1e-9);
        ASSERT_EQ(back.factors.size(), f.factors.size());
        for (std::size_t i = 0; i < f.factors.size(); ++i)
            EXPECT_LT(distance(back.factors[i].matrix(), f.factors[i].matrix()), 1e-9);
    }
}

TEST(SymbolInvariance, InverseConjugateTranspose) {
    for (std::size_t n = 2; n <= 6; ++n) {
        const std::vector<Indices> all = enumerate_symbols(static_cast<int>(n));
        for (std::size_t k = 0; k < all.size(); ++k) {
            const InvarianceReport r = symbol_invariance_check(plant(all[k], MatrixClass::general, n, 9 * k + n));
            EXPECT_TRUE(r.consistent) << format_indices(all[k]);
            EXPECT_EQ(r.of_b.entries, all[k]);
        }
    }
}

TEST(SymbolInvariance, UnitaryConjugationKeepsTheCellOfHaarSamples) {
    for (std::uint64_t s = 1; s <= 10; ++s) {
        const ComplexMatrix b = random_su(5, s);
        const ComplexMatrix u = random_su(5, 100 + s);
        EXPECT_EQ(symbol_of(u * b * u.adjoint()).entries, symbol_of(b).entries);
    }
}

TEST(CellMaps, BoundaryParametersGiveIdentity) {
    Rng rng(4);
    const Indices m{2, 4, 5};
    std::vector<CellParam> p = interior_params(m, MatrixClass::general, rng);
    for (auto& q : p) q.t = 0.0;
    EXPECT_LT(distance(schubert_map(m, p, 5), ComplexMatrix::identity(5)), 1e-14);
    for (auto& q : p) q.t = 1.0;
    EXPECT_LT(distance(schubert_map(m, p, 5), ComplexMatrix::identity(5)), 1e-12);
    std::vector<CellParam> ps = interior_params(m, MatrixClass::symmetric, rng);
    for (auto& q : ps) q.t = 1.0;
    // each half-factor at t = 1 is a reflection, squared away by the transpose
    EXPECT_LT(distance(schubert_map_sy({4}, {ps[1]}, 5), ComplexMatrix::identity(5)), 1e-12);
    for (auto& q : ps) q.t = 0.0;
    EXPECT_LT(distance(schubert_map_sy(m, ps, 5), ComplexMatrix::identity(5)), 1e-14);
}

TEST(CellMaps, LandInTheirModels) {
    for (std::uint64_t s = 1; s <= 10; ++s) {
        const ComplexMatrix g = plant({2, 3}, MatrixClass::general, 4, s);
        EXPECT_LT(unitarity_defect(g), 1e-12);
        EXPECT_LT(std::abs(determinant(g) - 1.0), 1e-12);
        const ComplexMatrix y = plant({2, 4}, MatrixClass::symmetric, 4, s);
        EXPECT_LT(model_defect(y, MatrixClass::symmetric), 1e-12);
        EXPECT_LT(std::abs(determinant(y) - 1.0), 1e-12);
        const ComplexMatrix k = plant({2, 3}, MatrixClass::skew, 3, s);
        EXPECT_LT(model_defect(k, MatrixClass::skew), 1e-12);
        EXPECT_LT(std::abs(determinant(k) - 1.0), 1e-12);
    }
}

TEST(CellMaps, ParameterErrors) {
    try {
        (void)schubert_map({2, 3}, {CellParam{0.3, {1.0, 1.0}}}, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::dimension_mismatch);
    }
    try {
        (void)schubert_map({3, 2}, {CellParam{0.3, {1.0, 1.0, 1.0}}, CellParam{0.3, {1.0, 1.0}}}, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_symbol);
    }
    try {
        (void)schubert_map_sy({2}, {CellParam{0.3, {1.0, cplx(0, 1)}}}, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::invalid_argument);
    }
}

TEST(FactorizeSymmetric, RoundTripsPlantedCells) {
    for (std::size_t n = 2; n <= 6; ++n) {
        const std::vector<Indices> all = enumerate_symbols(static_cast<int>(n));
        for (std::size_t k = 0; k < all.size(); ++k) {
            const ComplexMatrix b = plant(all[k], MatrixClass::symmetric, n, 13 * k + n);
            const SymmetricFactorization f = factorize_symmetric(b);
            EXPECT_EQ(f.symbol.entries, all[k]);
            EXPECT_EQ(rank_profile_symbol(b), all[k]);
            EXPECT_LE(distance(f.product(), b), 1e-8 * static_cast<double>(n));
            for (const auto& c : f.half)
                for (const auto& z : c.axis) EXPECT_EQ(z.imag(), 0.0);
            EXPECT_TRUE(strictly_increasing(f.full_indices()));
        }
    }
}

TEST(FactorizeSymmetric, RejectsNonSymmetric) {
    try {
        (void)factorize_symmetric(random_su(3, 1));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_in_model);
    }
}

TEST(FactorizeSkew, RoundTripsPlantedCellsWithPairing) {
    for (std::size_t h = 1; h <= 4; ++h) {
        const std::vector<Indices> all = enumerate_symbols(static_cast<int>(h));
        for (std::size_t k = 0; k < all.size(); ++k) {
            const ComplexMatrix b = plant(all[k], MatrixClass::skew, h, 17 * k + h);
            const SkewFactorization f = factorize_skew(b);
            EXPECT_EQ(f.symbol.entries, all[k]);
            EXPECT_LE(distance(f.product(), b), 1e-8 * static_cast<double>(2 * h));
            // Paired indices agree with the increasing general factorization.
            EXPECT_EQ(f.paired_indices(), factorize_su(b).full_indices());
            EXPECT_EQ(f.paired_indices(), rank_profile_indices(b));
            for (const auto& st : f.steps) {
                EXPECT_EQ(st.m1 % 2, 1u);
                EXPECT_EQ(st.m2, st.m1 + 1);
                EXPECT_LE(st.pairing_residual, skew_pairing_tolerance(ToleranceConfig{}));
            }
        }
    }
}

TEST(FactorizeSkew, RejectsOutsideModel) {
    try {
        (void)factorize_skew(random_su(4, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::not_in_model);
    }
}

TEST(Embedding, StableSymbols) {
    const double th = 1.1;
    const ComplexMatrix b = ComplexMatrix::diagonal({std::polar(1.0, th), std::polar(1.0, -th)});
    const OrderedFactorization f = factorize_su(b);
    const OrderedFactorization g = embed(f, 3);
    EXPECT_EQ(g.symbol().entries, (Indices{2}));
    EXPECT_LT(distance(g.product(), embed_matrix(b, 3)), 1e-12);
    EXPECT_EQ(factorize_su(embed_matrix(b, 3)).symbol().entries, (Indices{2}));

    const ComplexMatrix k = plant({2}, MatrixClass::skew, 2, 5);
    const ComplexMatrix k6 = embed_matrix(k, 6);
    EXPECT_EQ(factorize_skew(k6).symbol.entries, (Indices{2}));
    SkewFactorization sf = factorize_skew(k);
    OrderedFactorization dec = sf.decreasing;
    const OrderedFactorization up = embed(dec, 6);
    EXPECT_EQ(up.n, 6u);
    EXPECT_LT(distance(up.product(), k6), 1e-10);
    EXPECT_THROW((void)embed(dec, 5), Error);
}

TEST(Embedding, PlantedGeneralCellsStayPut) {
    for (std::size_t n = 2; n <= 5; ++n)
        for (const Indices& m : enumerate_symbols(static_cast<int>(n))) {
            const ComplexMatrix b = plant(m, MatrixClass::general, n, 3 * n);
            EXPECT_EQ(symbol_of(embed_matrix(b, n + 1)).entries, m);
        }
}

TEST(Ambiguity, NearBoundaryAngleIsFlagged) {
    const double a = 5.0 * ToleranceConfig{}.tol_angle;
    const ComplexMatrix b = ComplexMatrix::diagonal({std::polar(1.0, a), std::polar(1.0, -a), 1.0});
    EXPECT_TRUE(factorize_su(b).boundary_ambiguous);
    const ComplexMatrix c = ComplexMatrix::diagonal({std::polar(1.0, 0.3), std::polar(1.0, -0.3), 1.0});
    EXPECT_FALSE(factorize_su(c).boundary_ambiguous);
}
