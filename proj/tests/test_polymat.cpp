#include <gtest/gtest.h>

#include <random>

#include <sxor/polymat.hpp>

#include "oracles.hpp"

using namespace sxor;

namespace {

const FieldCtx& gf8() {
    static const FieldCtx ctx(Poly2::from_mask(0xB));
    return ctx;
}

PolyMatrix poly_matrix(std::initializer_list<std::initializer_list<const char*>> rows) {
    PolyMatrix m(rows.size(), rows.begin()->size(), Poly2{});
    std::size_t r = 0;
    for (const auto& row : rows) {
        std::size_t c = 0;
        for (const char* e : row) m(r, c++) = Poly2::parse(e);
        ++r;
    }
    return m;
}

PolyMatrix scaled(const PolyMatrix& m, const Poly2& s) {
    PolyMatrix out = m;
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c) * s;
    return out;
}

PolyMatrix random_poly_matrix(std::mt19937_64& rng, std::size_t n, std::size_t bits) {
    PolyMatrix m(n, n, Poly2{});
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = oracle::random_poly(rng, bits);
    return m;
}

} // namespace

TEST(Vandermonde, SingleRowIsAllOnes) {
    const FieldMatrix v = vandermonde(1, 7, gf8());
    for (std::size_t c = 0; c < 7; ++c) EXPECT_EQ(v(0, c), FieldElem::one(gf8()));
}

TEST(Vandermonde, EntriesArePowers) {
    const FieldMatrix v = vandermonde(3, 7, gf8());
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 7; ++c) EXPECT_EQ(v(r, c), f_pow(r * c, gf8()));
    EXPECT_EQ(v(1, 3).poly(), Poly2::parse("z+1"));
    EXPECT_EQ(v(2, 2).poly(), Poly2::parse("z^2+z"));
}

TEST(Vandermonde, DimensionChecks) {
    EXPECT_THROW(vandermonde(3, 8, gf8()), InvalidArgument);
    EXPECT_THROW(vandermonde(4, 3, gf8()), InvalidArgument);
    EXPECT_THROW(vandermonde(0, 3, gf8()), InvalidArgument);
}

TEST(FieldInverse, Identity) {
    const FieldMatrix id = field_identity(4, gf8());
    EXPECT_EQ(field_inverse(id), id);
}

TEST(FieldInverse, SystematicExampleSubmatrix) {
    const FieldMatrix v = vandermonde(3, 7, gf8());
    const std::size_t cols[] = {0, 2, 3};
    const FieldMatrix inv = field_inverse(v.select_columns(cols));
    const unsigned exps[3][3] = {{5, 5, 0}, {6, 4, 3}, {3, 0, 1}};
    for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(inv(r, c), f_pow(exps[r][c], gf8())) << r << "," << c;
}

TEST(FieldInverse, SingularThrows) {
    FieldMatrix m(2, 2, FieldElem::one(gf8()));
    EXPECT_THROW(field_inverse(m), Singular);
}

TEST(FieldInverse, RandomMultiplyBack) {
    const FieldCtx ctx(Poly2::from_mask(0x13));
    std::mt19937_64 rng(31);
    int tested = 0;
    while (tested < 100) {
        FieldMatrix m(4, 4, FieldElem::zero(ctx));
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) m(r, c) = FieldElem(ctx, static_cast<std::uint32_t>(rng() % 16));
        FieldMatrix inv;
        try {
            inv = field_inverse(m);
        } catch (const Singular&) {
            // singular draws must really have a zero determinant
            EXPECT_TRUE(oracle::det(oracle::rows_of(lift(m))) % ctx.modulus() == Poly2{});
            continue;
        }
        ASSERT_EQ(m * inv, field_identity(4, ctx));
        ASSERT_EQ(inv * m, field_identity(4, ctx));
        ++tested;
    }
}

TEST(DetAdjugate, ZigzagSubmatrixHasSquaredDeterminant) {
    const PolyMatrix m = poly_matrix({{"1", "z", "z"}, {"z", "1", "z"}, {"z", "z", "1"}});
    const PolyMatrix b = poly_matrix({{"z+1", "z", "z"}, {"z", "z+1", "z"}, {"z", "z", "z+1"}});
    const auto [det, adj] = det_adjugate(m);
    // (z+1)^2 over F2[z]; the adjugate carries the other factor of z+1
    EXPECT_EQ(det, Poly2::parse("z^2+1"));
    EXPECT_EQ(adj, scaled(b, Poly2::parse("z+1")));
    EXPECT_EQ(m * adj, scaled(poly_identity(3), det));
}

TEST(ReducedInverse, ZigzagSubmatrixMatchesLowestTerms) {
    const PolyMatrix m = poly_matrix({{"1", "z", "z"}, {"z", "1", "z"}, {"z", "z", "1"}});
    const auto [h, b] = reduced_inverse(m);
    EXPECT_EQ(h, Poly2::parse("z+1"));
    EXPECT_EQ(b, poly_matrix({{"z+1", "z", "z"}, {"z", "z+1", "z"}, {"z", "z", "z+1"}}));
    EXPECT_EQ(m * b, scaled(poly_identity(3), h));
}

TEST(ReducedInverse, SingularThrows) {
    EXPECT_THROW(reduced_inverse(poly_matrix({{"z", "z"}, {"1", "1"}})), Singular);
}

TEST(DetAdjugate, Identity) {
    const auto [det, adj] = det_adjugate(poly_identity(5));
    EXPECT_EQ(det, Poly2::one());
    EXPECT_EQ(adj, poly_identity(5));
}

TEST(DetAdjugate, SingularStillHasAdjugate) {
    const PolyMatrix m = poly_matrix({{"z", "z^2"}, {"1", "z"}});
    const auto [det, adj] = det_adjugate(m);
    EXPECT_TRUE(det.is_zero());
    EXPECT_EQ(adj, poly_matrix({{"z", "z^2"}, {"1", "z"}}));
    EXPECT_EQ(m * adj, PolyMatrix(2, 2, Poly2{}));
}

TEST(DetAdjugate, DeterminantMatchesLaplaceExpansion) {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 60; ++i) {
        const std::size_t n = 1 + rng() % 5;
        const PolyMatrix m = random_poly_matrix(rng, n, 4);
        ASSERT_EQ(determinant(m), oracle::det(oracle::rows_of(m)));
    }
}

TEST(DetAdjugateProperties, AdjugateIdentityBothSides) {
    std::mt19937_64 rng(43);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = i % 2 == 0 ? 3 : 4;
        const PolyMatrix m = random_poly_matrix(rng, n, 4);
        const auto [det, adj] = det_adjugate(m);
        const PolyMatrix expect = scaled(poly_identity(n), det);
        ASSERT_EQ(m * adj, expect);
        ASSERT_EQ(adj * m, expect);
    }
}

TEST(DetAdjugateProperties, DeterminantIsMultiplicative) {
    std::mt19937_64 rng(47);
    for (int i = 0; i < 50; ++i) {
        const PolyMatrix a = random_poly_matrix(rng, 3, 4);
        const PolyMatrix b = random_poly_matrix(rng, 3, 4);
        ASSERT_EQ(determinant(a * b), determinant(a) * determinant(b));
    }
}

TEST(DetAdjugateProperties, AgreesWithFieldInverse) {
    const FieldCtx ctx(Poly2::from_mask(0x13));
    std::mt19937_64 rng(53);
    int tested = 0;
    while (tested < 50) {
        FieldMatrix m(3, 3, FieldElem::zero(ctx));
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) m(r, c) = FieldElem(ctx, static_cast<std::uint32_t>(rng() % 16));
        const auto [det, adj] = det_adjugate(lift(m));
        const FieldElem d(ctx, det);
        if (d.is_zero()) continue;
        const FieldMatrix inv = field_inverse(m);
        const FieldElem dinv = f_inv(d);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c) ASSERT_EQ(FieldElem(ctx, adj(r, c)) * dinv, inv(r, c));
        ++tested;
    }
}
