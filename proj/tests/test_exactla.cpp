#include <gtest/gtest.h>

#include <algorithm>

#include "support/generators.hpp"

using namespace hlemb;

namespace {

Matrix from_rows(const std::vector<std::vector<Rat>>& rows) {
  Matrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) m(r, c) = rows[r][c];
  return m;
}

bool annihilated(const Matrix& m, const Vec& v) { return is_zero_vec(m.apply(v)); }

}  // namespace

TEST(Rational, LowestTermsAndParsing) {
  EXPECT_EQ(to_string(parse_rat("-6/4")), "-3/2");
  EXPECT_EQ(to_string(parse_rat(" +10/5 ")), "2");
  EXPECT_THROW(parse_rat("6/-4"), std::invalid_argument);
  EXPECT_EQ(parse_rat("-0"), Rat(0));
  EXPECT_EQ(parse_rat("12345678901234567890/3"), Rat("4115226300411522630"));
  EXPECT_THROW(parse_rat("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rat("0.5"), std::invalid_argument);
}

TEST(Rational, DualNumbersDropEpsilonSquared) {
  Dual e(0, 1);
  EXPECT_TRUE(is_zero(e * e));
  Dual a(2, 3), b(5, -1);
  Dual p = a * b;
  EXPECT_EQ(p.re, Rat(10));
  EXPECT_EQ(p.eps, Rat(13));
}

TEST(Rank, Examples) {
  EXPECT_EQ(rank(Matrix::identity(2)), 2u);
  EXPECT_EQ(rank(Matrix(3, 4)), 0u);
  EXPECT_EQ(rank(from_rows({{1, 2}, {2, 4}})), 1u);
}

TEST(Kernel, Examples) {
  EXPECT_EQ(kernel_basis(Matrix::identity(3)).dim(), 0u);
  EXPECT_EQ(kernel_basis(Matrix(2, 3)).dim(), 3u);
  Matrix m = from_rows({{1, 1, 0}});
  Subspace k = kernel_basis(m);
  ASSERT_EQ(k.dim(), 2u);
  for (const auto& v : k.basis()) EXPECT_TRUE(annihilated(m, v));
}

TEST(FixedPoints, Examples) {
  EXPECT_EQ(fixed_point_space(Matrix::identity(3)).dim(), 3u);
  Subspace f = fixed_point_space(Matrix::diagonal({-1, 1, -1, 1}));
  ASSERT_EQ(f.dim(), 2u);
  Vec e2{0, 1, 0, 0}, e4{0, 0, 0, 1}, e1{1, 0, 0, 0};
  EXPECT_TRUE(f.contains(e2));
  EXPECT_TRUE(f.contains(e4));
  EXPECT_FALSE(f.contains(e1));
  EXPECT_EQ(fixed_point_space(from_rows({{0, 1}, {0, 0}})).dim(), 0u);
  EXPECT_THROW(fixed_point_space(Matrix(2, 3)), std::invalid_argument);
}

TEST(QuotientDim, Examples) {
  Subspace whole = Subspace::whole(3);
  EXPECT_EQ(quotient_dim(whole, whole), 0u);
  EXPECT_EQ(quotient_dim(whole, Subspace(3)), 3u);
  Subspace big = kernel_basis(from_rows({{1, 1, 0}}));
  Subspace small = Subspace::span(3, {{1, -1, 0}});
  EXPECT_EQ(quotient_dim(big, small), 1u);
  Subspace outside = Subspace::span(3, {{1, 0, 0}});
  EXPECT_THROW(quotient_dim(big, outside), std::invalid_argument);
}

TEST(Rref, CanonicalFirstNonzeroPivot) {
  Rref e = rref(from_rows({{0, 2, 4}, {1, 1, 1}, {1, 3, 5}}));
  ASSERT_EQ(e.rows.size(), 2u);
  EXPECT_EQ(e.pivots, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(e.rows[0], (Vec{1, 0, -1}));
  EXPECT_EQ(e.rows[1], (Vec{0, 1, 2}));
}

TEST(Solve, ConsistentAndInconsistent) {
  Matrix m = from_rows({{1, 1}, {2, 2}});
  auto x = solve(m, {3, 6});
  ASSERT_TRUE(x);
  EXPECT_EQ(m.apply(*x), (Vec{3, 6}));
  EXPECT_FALSE(solve(m, {1, 0}));
}

TEST(ExactLaProperties, RankNullityAndRowPermutation) {
  testgen::Gen g(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int r = g.small(1, 6), c = g.small(1, 6);
    Matrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = g.coin(60) ? Rat(g.small(-3, 3), g.small(1, 4)) : Rat(0);
    const std::size_t rk = rank(m);
    Subspace k = kernel_basis(m);
    EXPECT_EQ(rk + k.dim(), static_cast<std::size_t>(c));
    for (const auto& v : k.basis()) EXPECT_TRUE(annihilated(m, v));
    // reversed rows give a different pivot order
    Matrix rev(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) rev(i, j) = m(r - 1 - i, j);
    EXPECT_EQ(rank(rev), rk);
    EXPECT_EQ(rank(m.transpose()), rk);
    EXPECT_EQ(rank(m), rk);
  }
}

TEST(ExactLaProperties, LargeEntriesStayExact) {
  // Hilbert matrix: full rank, entries with growing denominators
  const int n = 8;
  Matrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = Rat(1, i + j + 1);
  EXPECT_EQ(rank(h), static_cast<std::size_t>(n));
  Matrix p = power(h, 6);
  EXPECT_EQ(rank(p), static_cast<std::size_t>(n));
}
