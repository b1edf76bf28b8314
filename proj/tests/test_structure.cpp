#include "test_support.hpp"

#include <gtest/gtest.h>

using namespace algebragen;
using namespace algebragen::fixtures;

TEST(Kron, IdentityTimesIdentity) {
    EXPECT_EQ(kron(Mat<Rational>::identity(2), Mat<Rational>::identity(2)), Mat<Rational>::identity(4));
}

TEST(Kron, WorkedKroneckerSum) {
    const Mat<Rational> s = kron(worked_x1(), worked_x1()) + kron(worked_x2(), worked_x2());
    Mat<Rational> expected(9, 9);
    for (auto [i, j] : {std::pair{1, 1}, {1, 5}, {2, 6}, {4, 8}, {5, 9}}) expected(i - 1, j - 1) = q(1, 9);
    EXPECT_EQ(s, expected);
}

TEST(Kron, BlockLayoutIsBTimesA) {
    // (k, l) block is b_kl * A: the element-wise index rule (i + k*rowsA, j + l*colsA) <- a_ij b_kl.
    std::mt19937_64 rng(5);
    const auto a = random_int_matrix(rng, 2, 3, -4, 4);
    const auto b = random_int_matrix(rng, 3, 2, -4, 4);
    const auto k = kron(a, b);
    ASSERT_EQ(k.rows(), 6u);
    ASSERT_EQ(k.cols(), 6u);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 2; ++c) EXPECT_EQ(k(i + r * 2, j + c * 3), a(i, j) * b(r, c));
}

TEST(Kron, MixedProductRational) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
        const auto a = random_int_matrix(rng, 3, 3, -5, 5), b = random_int_matrix(rng, 3, 3, -5, 5);
        const auto c = random_int_matrix(rng, 3, 3, -5, 5), d = random_int_matrix(rng, 3, 3, -5, 5);
        EXPECT_EQ(kron(a, b) * kron(c, d), kron(Mat<Rational>(a * c), Mat<Rational>(b * d)));
    }
}

TEST(Kron, ModulusMismatchThrows) {
    Mat<Zp> a(2, 2, ScalarKind::prime_field(5));
    Mat<Zp> b(2, 2, ScalarKind::prime_field(7));
    EXPECT_THROW(kron(a, b), KindMismatch);
}

TEST(Vec, ColumnStacking) {
    const Mat<Rational> a{{q(1), q(3)}, {q(2), q(4)}};
    const Mat<Rational> expected{{q(1)}, {q(2)}, {q(3)}, {q(4)}};
    EXPECT_EQ(vec(a), expected);
}

TEST(Vec, OneByOne) {
    const Mat<Rational> a{{q(7, 2)}};
    EXPECT_EQ(vec(a), a);
}

TEST(Unvec, InvertsVecExample) {
    const Mat<Rational> v{{q(1)}, {q(2)}, {q(3)}, {q(4)}};
    const Mat<Rational> expected{{q(1), q(3)}, {q(2), q(4)}};
    EXPECT_EQ(unvec(v, 2, 2), expected);
}

TEST(Unvec, ZerosAndRoundTrip) {
    EXPECT_EQ(unvec(Mat<Rational>(6, 1), 2, 3), Mat<Rational>(2, 3));
    EXPECT_EQ(unvec(vec(worked_x2()), 3, 3), worked_x2());
    std::mt19937_64 rng(3);
    const auto a = random_int_matrix(rng, 4, 2, -9, 9);
    EXPECT_EQ(unvec(vec(a), 4, 2), a);
}

TEST(Unvec, LengthMismatchThrows) {
    EXPECT_THROW(unvec(Mat<Rational>(5, 1), 2, 2), ShapeMismatch);
    EXPECT_THROW(unvec(Mat<Rational>(2, 2), 2, 2), ShapeMismatch);
}

TEST(Psi, WorkedFourByFourExample) {
    Mat<Rational> a(4, 4);
    // column-major 1..16
    for (std::size_t j = 0; j < 4; ++j)
        for (std::size_t i = 0; i < 4; ++i) a(i, j) = static_cast<long>(1 + i + 4 * j);
    const Mat<Rational> expected{{q(1), q(3), q(9), q(11)},
                                 {q(2), q(4), q(10), q(12)},
                                 {q(5), q(7), q(13), q(15)},
                                 {q(6), q(8), q(14), q(16)}};
    EXPECT_EQ(psi(a, BlockShape::square(2)), expected);
}

TEST(Psi, MatchesElementwiseIndexRuleOnSquareShapes) {
    // Entry (i + (j-1)n, k + (l-1)n) moves to (i + (k-1)n, j + (l-1)n), 1-based.
    std::mt19937_64 rng(17);
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto a = random_int_matrix(rng, n * n, n * n, -9, 9);
        const auto r = psi(a, BlockShape::square(n));
        for (std::size_t i = 1; i <= n; ++i)
            for (std::size_t j = 1; j <= n; ++j)
                for (std::size_t k = 1; k <= n; ++k)
                    for (std::size_t l = 1; l <= n; ++l)
                        EXPECT_EQ(r(i + (k - 1) * n - 1, j + (l - 1) * n - 1), a(i + (j - 1) * n - 1, k + (l - 1) * n - 1));
    }
}

TEST(Psi, RectangularShapeRoundTrip) {
    std::mt19937_64 rng(23);
    const BlockShape s{2, 3, 4, 1};  // 6 x 4 input viewed as a 3x1 grid of 2x4 blocks
    const auto a = random_int_matrix(rng, 6, 4, -9, 9);
    const auto r = psi(a, s);
    EXPECT_EQ(r.rows(), 8u);
    EXPECT_EQ(r.cols(), 3u);
    EXPECT_EQ(psi(r, s.transposed()), a);
}

TEST(Psi, ShapeMismatchThrows) {
    EXPECT_THROW(psi(Mat<Rational>(4, 5), BlockShape::square(2)), ShapeMismatch);
    EXPECT_THROW(psi(Mat<Rational>(5, 5)), ShapeMismatch);
}

TEST(Norm, WorkedKroneckerSumFrobeniusSquared) {
    const Mat<Rational> s = kron(worked_x1(), worked_x1()) + kron(worked_x2(), worked_x2());
    EXPECT_EQ(norm(s, NormKind::Frobenius), q(5, 81));
    EXPECT_NEAR(norm(from_rational<double>(s), NormKind::Frobenius), std::sqrt(5.0 / 81.0), 1e-15);
}

TEST(Norm, ZeroAndIdentity) {
    EXPECT_EQ(norm(Mat<Rational>(3, 3), NormKind::Frobenius), 0);
    EXPECT_EQ(norm(Mat<double>(3, 3), NormKind::L1), 0.0);
    for (auto k : {NormKind::L1, NormKind::LInf}) {
        EXPECT_EQ(norm(Mat<Rational>::identity(3), k), 1);
        EXPECT_EQ(norm(Mat<double>::identity(3), k), 1.0);
    }
}

TEST(Norm, ColumnAndRowSums) {
    const Mat<Rational> a{{q(1), q(-2)}, {q(3), q(4)}};
    EXPECT_EQ(norm(a, NormKind::L1), 6);
    EXPECT_EQ(norm(a, NormKind::LInf), 7);
    const Mat<Complex> c{{Complex(3, 4), Complex(0, 0)}, {Complex(0, 0), Complex(0, 1)}};
    EXPECT_DOUBLE_EQ(norm(c, NormKind::Frobenius), std::sqrt(26.0));
}

template <class T>
concept HasNorm = requires(const Mat<T>& m) { norm(m, NormKind::L1); };

TEST(Norm, RejectedForPrimeFields) {
    static_assert(HasNorm<double> && HasNorm<Rational> && HasNorm<Complex>);
    static_assert(!HasNorm<Zp>);
}

// --- properties over every backend -------------------------------------------------------------

template <class T>
class StructureProperties : public ::testing::Test {};

using Backends = ::testing::Types<double, Complex, Rational, Zp>;
TYPED_TEST_SUITE(StructureProperties, Backends);

TYPED_TEST(StructureProperties, PsiIsAnInvolution) {
    using T = TypeParam;
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> side(1, 5);
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = side(rng);
        const auto a = random_mat<T>(rng, n * n, n * n);
        ASSERT_TRUE(near(psi(psi(a)), a));
    }
}

TYPED_TEST(StructureProperties, PsiOfKronIsOuterProductOfVecs) {
    using T = TypeParam;
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<std::size_t> side(1, 5);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = side(rng);
        const auto a = random_mat<T>(rng, n, n);
        const auto b = random_mat<T>(rng, n, n);
        ASSERT_TRUE(near(psi(kron(a, b)), Mat<T>(vec(a) * vec(b).transpose())));
    }
}

TYPED_TEST(StructureProperties, MixedProductRule) {
    using T = TypeParam;
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<std::size_t> side(1, 4);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = side(rng), m = side(rng), k = side(rng), p = side(rng), r = side(rng), s = side(rng);
        const auto a = random_mat<T>(rng, n, m), c = random_mat<T>(rng, m, k);
        const auto b = random_mat<T>(rng, p, r), d = random_mat<T>(rng, r, s);
        ASSERT_TRUE(near(kron(a, b) * kron(c, d), kron(Mat<T>(a * c), Mat<T>(b * d)), 1e-11));
    }
}

TYPED_TEST(StructureProperties, VecUnvecRoundTrip) {
    using T = TypeParam;
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<std::size_t> side(1, 6);
    for (int t = 0; t < 50; ++t) {
        const std::size_t r = side(rng), c = side(rng);
        const auto a = random_mat<T>(rng, r, c);
        ASSERT_EQ(unvec(vec(a), r, c), a);
    }
}

TEST(StructureProperty, FrobeniusOfKronIsProduct) {
    std::mt19937_64 rng(505);
    for (int t = 0; t < 100; ++t) {
        const auto a = random_int_matrix(rng, 3, 2, -6, 6);
        const auto b = random_int_matrix(rng, 2, 4, -6, 6);
        EXPECT_EQ(frobenius_sq(kron(a, b)), frobenius_sq(a) * frobenius_sq(b));
    }
}
