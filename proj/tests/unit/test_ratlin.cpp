#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "packmin/ratlin.hpp"

using namespace packmin;

namespace {

Rat q(long p, long d = 1) { return make_rat(p, d); }

IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
  return m;
}

// Column-style HNF shape: lower echelon, positive pivots, reduced entries left of pivots.
bool is_hnf(const IntMatrix& h) {
  std::size_t col = 0;
  for (std::size_t i = 0; i < h.rows() && col < h.cols(); ++i) {
    if (h(i, col) == 0) {
      for (std::size_t j = col; j < h.cols(); ++j)
        if (h(i, j) != 0) return false;
      continue;
    }
    if (h(i, col) < 0) return false;
    for (std::size_t j = col + 1; j < h.cols(); ++j)
      if (h(i, j) != 0) return false;
    for (std::size_t j = 0; j < col; ++j)
      if (h(i, j) < 0 || h(i, j) >= h(i, col)) return false;
    ++col;
  }
  return true;
}

}  // namespace

TEST(Rational, ParsesAndNormalizes) {
  EXPECT_EQ(parse_rat("6/4"), q(3, 2));
  EXPECT_EQ(to_string(parse_rat("-10/4")), "-5/2");
  EXPECT_THROW(parse_rat("2/-4"), Error);
  EXPECT_EQ(to_string(parse_rat("7")), "7");
  EXPECT_THROW(parse_rat("1.5"), Error);
  EXPECT_THROW(parse_rat("1/0"), Error);
  EXPECT_THROW(parse_rat(""), Error);
}

TEST(Rational, FloorCeilSqrt) {
  EXPECT_EQ(floor(q(-7, 2)), -4);
  EXPECT_EQ(ceil(q(-7, 2)), -3);
  EXPECT_EQ(isqrt_floor(q(16, 3)), 2);
  EXPECT_EQ(isqrt_floor(q(4)), 2);
  EXPECT_EQ(isqrt_floor(q(3, 4)), 0);
}

TEST(Hnf, IdentityIsFixed) {
  auto r = hnf(IntMatrix::identity(2));
  EXPECT_EQ(r.h, IntMatrix::identity(2));
  EXPECT_EQ(r.u, IntMatrix::identity(2));
}

TEST(Hnf, TwoColumnExample) {
  // columns (2,0) and (1,1)
  IntMatrix m{{2, 1}, {0, 1}};
  auto r = hnf(m);
  EXPECT_EQ(r.h, (IntMatrix{{1, 0}, {1, 2}}));
  EXPECT_EQ(m * r.u, r.h);
  EXPECT_EQ(abs(Rat(determinant(r.u))), 1);
}

TEST(Hnf, CanonicalInputUnchanged) {
  IntMatrix m{{2, 0}, {0, 2}};
  auto r = hnf(m);
  EXPECT_EQ(r.h, m);
  EXPECT_EQ(r.u, IntMatrix::identity(2));
}

TEST(Hnf, RandomShapeAndIdempotence) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    IntMatrix m = random_int_matrix(rng, r, c, -6, 6);
    auto res = hnf(m);
    EXPECT_TRUE(is_hnf(res.h));
    EXPECT_EQ(m * res.u, res.h);
    EXPECT_EQ(abs(Rat(determinant(res.u))), 1);
    EXPECT_EQ(res.rank, rank(m));
    auto again = hnf(res.h);
    EXPECT_EQ(again.h, res.h);
    if (res.rank == c) EXPECT_EQ(again.u, IntMatrix::identity(c));
  }
}

TEST(Snf, Examples) {
  auto d = snf(IntMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(d.s, (IntMatrix{{1, 0}, {0, 6}}));
  EXPECT_EQ(snf(IntMatrix::identity(3)).s, IntMatrix::identity(3));
  EXPECT_EQ(snf(IntMatrix(2, 3)).s, IntMatrix(2, 3));
}

TEST(Snf, MatchesMinorGcds) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 40; ++t) {
    std::size_t r = 1 + rng() % 3, c = 1 + rng() % 3;
    IntMatrix m = random_int_matrix(rng, r, c, -9, 9);
    auto res = snf(m);
    EXPECT_EQ(res.u * m * res.v, res.s);
    EXPECT_EQ(abs(Rat(determinant(res.u))), 1);
    EXPECT_EQ(abs(Rat(determinant(res.v))), 1);
    auto expect = oracle::elementary_divisors(m);
    for (std::size_t i = 0; i < expect.size(); ++i) {
      EXPECT_EQ(res.s(i, i), expect[i]);
      if (i + 1 < expect.size() && res.s(i, i) != 0) EXPECT_EQ(Int(res.s(i + 1, i + 1) % res.s(i, i)), 0);
    }
  }
}

TEST(Inverse, Examples) {
  RatMatrix g{{q(1), q(1, 2)}, {q(1, 2), q(1)}};
  EXPECT_EQ(inverse(g), (RatMatrix{{q(4, 3), q(-2, 3)}, {q(-2, 3), q(4, 3)}}));
  EXPECT_EQ(inverse(RatMatrix::identity(3)), RatMatrix::identity(3));
  EXPECT_EQ(inverse(RatMatrix{{q(2), q(0)}, {q(0), q(5)}}), (RatMatrix{{q(1, 2), q(0)}, {q(0), q(1, 5)}}));
  try {
    inverse(RatMatrix{{q(1), q(2)}, {q(2), q(4)}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMatrix);
  }
}

TEST(Inverse, RandomRoundTrip) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 1 + rng() % 4;
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = q(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4));
    if (determinant(m) == 0) continue;
    EXPECT_EQ(m * inverse(m), RatMatrix::identity(n));
    EXPECT_EQ(inverse(inverse(m)), m);
  }
}

TEST(Schur, Examples) {
  RatMatrix g3{{q(1), q(1, 2), q(1, 2)}, {q(1, 2), q(1), q(1, 2)}, {q(1, 2), q(1, 2), q(1)}};
  EXPECT_EQ(schur_complement(g3, {0}), (RatMatrix{{q(3, 4), q(1, 4)}, {q(1, 4), q(3, 4)}}));
  EXPECT_EQ(schur_complement(RatMatrix::identity(2), {0}), RatMatrix{{q(1)}});
  RatMatrix g2{{q(1), q(1, 2)}, {q(1, 2), q(1)}};
  EXPECT_EQ(schur_complement(g2, {0}), RatMatrix{{q(3, 4)}});
  EXPECT_TRUE(is_positive_definite(schur_complement(g3, {1})));
}

TEST(Ldlt, Examples) {
  auto a = ldlt(RatMatrix::identity(3));
  EXPECT_EQ(a.l, RatMatrix::identity(3));
  EXPECT_EQ(a.d, RatVec(3, q(1)));
  auto b = ldlt(RatMatrix{{q(1), q(1, 2)}, {q(1, 2), q(1)}});
  EXPECT_EQ(b.l, (RatMatrix{{q(1), q(0)}, {q(1, 2), q(1)}}));
  EXPECT_EQ(b.d, (RatVec{q(1), q(3, 4)}));
  auto c = ldlt(RatMatrix{{q(4), q(2)}, {q(2), q(2)}});
  EXPECT_EQ(c.l, (RatMatrix{{q(1), q(0)}, {q(1, 2), q(1)}}));
  EXPECT_EQ(c.d, (RatVec{q(4), q(1)}));
  EXPECT_THROW(ldlt(RatMatrix{{q(1), q(2)}, {q(2), q(1)}}), Error);
}

TEST(Ldlt, ReconstructsRandomForms) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 1 + rng() % 4;
    RatMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = q(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3));
    if (determinant(b) == 0) continue;
    RatMatrix g = b.transpose() * b;
    auto f = ldlt(g);
    RatMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i) d(i, i) = f.d[i];
    EXPECT_EQ(f.l * d * f.l.transpose(), g);
  }
}

TEST(Kernel, Examples) {
  auto k = kernel_basis(RatMatrix{{q(1), q(1)}});
  ASSERT_EQ(k.cols(), 1u);
  EXPECT_EQ(abs(Rat(k(0, 0))), 1);
  EXPECT_EQ(k(0, 0), -k(1, 0));
  EXPECT_EQ(kernel_basis(RatMatrix::identity(3)).cols(), 0u);
  auto k3 = kernel_basis(RatMatrix{{q(2), q(4), q(6)}});
  ASSERT_EQ(k3.cols(), 2u);
  for (std::size_t j = 0; j < 2; ++j) EXPECT_EQ(k3(0, j) + 2 * k3(1, j) + 3 * k3(2, j), 0);
  // saturated: the 2×2 minors are coprime
  EXPECT_EQ(oracle::elementary_divisors(k3), (std::vector<Int>{1, 1}));
}
