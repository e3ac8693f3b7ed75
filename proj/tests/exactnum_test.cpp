#include <gtest/gtest.h>

#include "circuits/combinatorics.hpp"
#include "circuits/exactnum.hpp"
#include "test_support.hpp"

using namespace circuits;
using circuits::testing::iv;
using circuits::testing::rv;

TEST(Rational, StaysCanonicalAfterArithmetic) {
  Rational a(6, 4);
  a.canonicalize();
  EXPECT_EQ(a.get_num(), 3);
  EXPECT_EQ(a.get_den(), 2);
  Rational b = a * Rational(-4, 9);
  EXPECT_EQ(b.get_num(), -2);
  EXPECT_EQ(b.get_den(), 3);
  EXPECT_GT(b.get_den(), 0);
}

TEST(NormalizePrimitive, ClearsDenominators) {
  EXPECT_EQ(normalize_primitive(RatVector{Rational(1, 2), Rational(-3, 4)}), iv({2, -3}));
}

TEST(NormalizePrimitive, DividesByGcd) { EXPECT_EQ(normalize_primitive(rv({0, 5, 0})), iv({0, 1, 0})); }

TEST(NormalizePrimitive, KeepsSign) {
  EXPECT_EQ(normalize_primitive(RatVector{Rational(-2, 3), Rational(-4, 3)}), iv({-1, -2}));
}

TEST(NormalizePrimitive, RejectsZero) {
  try {
    normalize_primitive(rv({0, 0}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroVector);
  }
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(RatMatrix::identity(3)), 3u);
  EXPECT_EQ(rank(RatMatrix(2, 2)), 0u);
  EXPECT_EQ(rank(RatMatrix{{1, 2}, {2, 4}}), 1u);
}

TEST(KernelBasis, SingleRow) {
  auto k = kernel_basis(RatMatrix{{1, 1}});
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(normalize_primitive(k[0]), iv({-1, 1}));
}

TEST(KernelBasis, Trivial) { EXPECT_TRUE(kernel_basis(RatMatrix::identity(2)).empty()); }

TEST(KernelBasis, RankDeficient) {
  RatMatrix m{{1, 2}, {2, 4}};
  auto k = kernel_basis(m);
  ASSERT_EQ(k.size(), 1u);
  EXPECT_TRUE(is_zero(m * k[0]));
  // proportional to (2, -1)
  EXPECT_EQ(k[0][0] * Rational(-1), k[0][1] * Rational(2));
}

TEST(SolveLinear, Identity) { EXPECT_EQ(solve_linear(RatMatrix::identity(2), rv({3, 7})), rv({3, 7})); }

TEST(SolveLinear, FreeVariablesAreZero) { EXPECT_EQ(solve_linear(RatMatrix{{1, 1}}, rv({2})), rv({2, 0})); }

TEST(SolveLinear, Inconsistent) { EXPECT_FALSE(solve_linear(RatMatrix{{1}, {1}}, rv({1, 2})).has_value()); }

TEST(Determinant, MatchesCofactorExpansion) {
  RatMatrix m{{2, -1, 3}, {0, 4, 5}, {1, 1, -2}};
  // cofactor expansion along the first row
  Rational expected = 2 * (4 * -2 - 5 * 1) - (-1) * (0 * -2 - 5 * 1) + 3 * (0 * 1 - 4 * 1);
  EXPECT_EQ(determinant(m), expected);
  EXPECT_EQ(determinant(RatMatrix{{1, 2}, {2, 4}}), 0);
}

TEST(ReducedRowEchelon, PivotColumns) {
  Echelon e = reduced_row_echelon(RatMatrix{{0, 2, 4}, {0, 1, 3}});
  EXPECT_EQ(e.pivot_cols, (IndexSet{1, 2}));
  EXPECT_EQ(e.reduced, (RatMatrix{{0, 1, 0}, {0, 0, 1}}));
}

TEST(ParseRational, Grammar) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational("2/5"), Rational(2, 5));
  EXPECT_EQ(parse_rational("-11/4"), Rational(-11, 4));
  EXPECT_EQ(parse_rational("4/6"), Rational(2, 3));
  for (const char* bad : {"", "-", "1/", "/2", "1/0", "+3", "1.5", "1/-2", "--1", "3x", " 3"})
    EXPECT_FALSE(parse_rational(bad).has_value()) << bad;
}

TEST(FormatRational, CanonicalTokens) {
  EXPECT_EQ(format_rational(Rational(-6, 4)), "-3/2");
  EXPECT_EQ(format_rational(Rational(5)), "5");
  EXPECT_EQ(format_rational(Rational(0)), "0");
}

TEST(FormatRational, RoundTrips) {
  for (long num = -12; num <= 12; ++num)
    for (long den = 1; den <= 7; ++den) {
      Rational q(num, den);
      q.canonicalize();
      EXPECT_EQ(parse_rational(format_rational(q)), q);
    }
}

TEST(VectorHelpers, ConformalAndSignCompatible) {
  EXPECT_TRUE(conformal(rv({1, 0, -2}), rv({3, 1, -1})));
  EXPECT_FALSE(conformal(rv({1, 1, 0}), rv({3, 0, -1})));
  EXPECT_FALSE(conformal(rv({-1, 0, 0}), rv({3, 0, 0})));
  EXPECT_TRUE(sign_compatible(rv({1, 1, 0}), rv({3, 0, -1})));
  EXPECT_FALSE(sign_compatible(rv({1, -1}), rv({1, 1})));
}

TEST(Combinatorics, BinomialAndCombinationOrder) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(3, 5), 0);
  std::vector<IndexSet> seen;
  for_each_combination(4, 2, [&](const IndexSet& s) {
    seen.push_back(s);
    return true;
  });
  ASSERT_EQ(seen.size(), 6u);
  EXPECT_EQ(seen.front(), (IndexSet{0, 1}));
  EXPECT_EQ(seen.back(), (IndexSet{2, 3}));
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
  int calls = 0;
  for_each_combination(3, 0, [&](const IndexSet& s) {
    EXPECT_TRUE(s.empty());
    ++calls;
    return true;
  });
  EXPECT_EQ(calls, 1);
}

// Property: rank + kernel dimension = columns, and every kernel vector is annihilated.
TEST(KernelBasis, RankNullityOnRandomMatrices) {
  SeededRng rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t rows = static_cast<std::size_t>(rng.uniform(1, 4));
    std::size_t cols = static_cast<std::size_t>(rng.uniform(1, 5));
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.uniform(-2, 2);
    auto k = kernel_basis(m);
    EXPECT_EQ(rank(m) + k.size(), cols);
    for (const auto& v : k) EXPECT_TRUE(is_zero(m * v));
    if (!k.empty()) {
      EXPECT_EQ(rank(RatMatrix::from_rows(k, cols)), k.size());
    }
  }
}
