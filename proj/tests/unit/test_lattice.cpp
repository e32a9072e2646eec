#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "packmin/lattice.hpp"

using namespace packmin;

namespace {

Rat q(long p, long d = 1) { return make_rat(p, d); }

RatMatrix hex2() { return {{q(1), q(1, 2)}, {q(1, 2), q(1)}}; }
RatMatrix hex3() { return {{q(1), q(1, 2), q(1, 2)}, {q(1, 2), q(1), q(1, 2)}, {q(1, 2), q(1, 2), q(1)}}; }

Lattice random_basis_lattice(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    RatMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = q(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 2));
    if (determinant(b) != 0) return Lattice::from_basis(b);
  }
}

}  // namespace

TEST(Lattice, ValidatesInput) {
  EXPECT_THROW(Lattice::from_gram(RatMatrix{{q(1), q(2)}, {q(2), q(1)}}), Error);
  EXPECT_THROW(Lattice::from_basis(RatMatrix{{q(1), q(2)}, {q(2), q(4)}}), Error);
  EXPECT_THROW(Lattice::from_gram(hex2()).basis(), Error);
}

TEST(Dual, Examples) {
  EXPECT_EQ(dual(Lattice::standard(3)), Lattice::standard(3));
  EXPECT_EQ(dual(Lattice::from_gram(hex2())).gram(), (RatMatrix{{q(4, 3), q(-2, 3)}, {q(-2, 3), q(4, 3)}}));
  EXPECT_EQ(dual(Lattice::from_basis(RatMatrix{{q(2), q(0)}, {q(0), q(2)}})).basis(),
            (RatMatrix{{q(1, 2), q(0)}, {q(0), q(1, 2)}}));
}

TEST(Dual, Involution) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    Lattice l = random_basis_lattice(rng, 1 + rng() % 3);
    EXPECT_EQ(dual(dual(l)), l);
    Lattice g = Lattice::from_gram(l.gram());
    EXPECT_EQ(dual(dual(g)), g);
  }
}

TEST(DetSquared, Examples) {
  EXPECT_EQ(det_squared(Lattice::standard(4)), 1);
  EXPECT_EQ(det_squared(Lattice::from_gram(hex2())), q(3, 4));
  EXPECT_EQ(det_squared(Lattice::from_basis(RatMatrix{{q(1), q(0), q(0)}, {q(0), q(2), q(0)}, {q(0), q(0), q(3)}})), 36);
}

TEST(Saturate, Examples) {
  auto p = saturate(Lattice::standard(2), IntMatrix{{2}, {0}});
  EXPECT_EQ(p.basis, (IntMatrix{{1}, {0}}));
  EXPECT_EQ(p.det_squared, 1);

  auto p3 = saturate(Lattice::standard(3), IntMatrix{{1, 0}, {1, 2}, {0, 2}});
  EXPECT_EQ(p3.rank, 2u);
  // (0,1,1) = ((0,2,2))/2 lies in the saturation
  auto with = saturate(Lattice::standard(3), IntMatrix{{1, 0}, {1, 1}, {0, 1}});
  EXPECT_EQ(p3.basis, with.basis);

  Lattice h = Lattice::from_gram(hex2());
  auto all = saturate(h, IntMatrix{{3, 1}, {1, 1}});
  EXPECT_EQ(all.det_squared, det_squared(h));
  EXPECT_THROW(saturate(h, IntMatrix{{1, 2}, {1, 2}}), Error);
}

TEST(Saturate, Idempotent) {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 40; ++t) {
    std::size_t n = 2 + rng() % 3, k = 1 + rng() % (n - 1);
    IntMatrix v(n, k);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < k; ++j) v(i, j) = static_cast<long>(rng() % 9) - 4;
    if (rank(v) != k) continue;
    Lattice l = Lattice::standard(n);
    auto p = saturate(l, v);
    EXPECT_EQ(saturate(l, p.basis).basis, p.basis);
  }
}

TEST(ProjectAlong, Examples) {
  Lattice h3 = Lattice::from_gram(hex3());
  auto p = project_along(h3, saturate(h3, IntMatrix{{1}, {0}, {0}}));
  EXPECT_EQ(p.gram, (RatMatrix{{q(3, 4), q(1, 4)}, {q(1, 4), q(3, 4)}}));

  Lattice z3 = Lattice::standard(3);
  EXPECT_EQ(project_along(z3, saturate(z3, IntMatrix{{0}, {0}, {1}})).gram, RatMatrix::identity(2));

  Lattice z2 = Lattice::standard(2);
  EXPECT_EQ(project_along(z2, saturate(z2, IntMatrix{{1}, {1}})).gram, RatMatrix{{q(1, 2)}});
  EXPECT_THROW(project_along(z2, saturate(z2, IntMatrix::identity(2))), Error);
}

TEST(ProjectAlong, DeterminantIdentity) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + rng() % 2;
    Lattice l = random_basis_lattice(rng, n);
    IntMatrix v(n, 1);
    for (std::size_t i = 0; i < n; ++i) v(i, 0) = static_cast<long>(rng() % 7) - 3;
    if (rank(v) != 1) continue;
    auto plane = saturate(l, v);
    auto proj = project_along(l, plane);
    EXPECT_EQ(plane.det_squared * determinant(proj.gram), det_squared(l));
    // the lift map realises the projected Gram form in ambient coordinates
    EXPECT_EQ(proj.lift_map.transpose() * proj.lift_map, proj.gram);
  }
}

TEST(Enumerate, Examples) {
  Budget b;
  EXPECT_EQ(enumerate_short_vectors(RatMatrix::identity(2), q(1), b), (std::vector<IntVec>{{0, 1}, {1, 0}}));
  EXPECT_EQ(enumerate_short_vectors(hex2(), q(1), b), (std::vector<IntVec>{{0, 1}, {1, -1}, {1, 0}}));
  EXPECT_TRUE(enumerate_short_vectors(RatMatrix::identity(2), q(1, 2), b).empty());
}

TEST(Enumerate, MatchesBoxScan) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 30; ++t) {
    std::size_t n = 2 + rng() % 2;
    Lattice l = random_basis_lattice(rng, n);
    Rat bound = q(1 + static_cast<long>(rng() % 12), 1 + static_cast<long>(rng() % 2));
    EXPECT_EQ(enumerate_short_vectors(l, bound), oracle::short_vectors(l.gram(), bound));
  }
}

TEST(Enumerate, BudgetIsEnforced) {
  Budget small(10);
  try {
    enumerate_short_vectors(RatMatrix::identity(3), q(50), small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(Lll, ReducesAndStaysUnimodular) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20; ++t) {
    Lattice l = random_basis_lattice(rng, 2 + rng() % 3);
    IntMatrix u = lll_reduce(l.gram());
    EXPECT_EQ(abs(Rat(determinant(u))), 1);
    RatMatrix g = to_rat(u).transpose() * l.gram() * to_rat(u);
    // the first reduced vector is within 2^{(n-1)/2} of the minimum
    Budget b;
    Rat shortest = quadratic_form(l.gram(), enumerate_short_vectors(l.gram(), g(0, 0), b).front());
    Rat factor = 1;
    for (std::size_t i = 1; i < l.dim(); ++i) factor *= 2;
    EXPECT_LE(g(0, 0), factor * shortest);
  }
}

TEST(Completion, LeadingColumnsArePlane) {
  auto p = saturate(Lattice::standard(3), IntMatrix{{1, 0}, {1, 2}, {0, 2}});
  auto c = complete_basis(p.basis);
  EXPECT_EQ(c.full.col_range(0, 2), p.basis);
  EXPECT_EQ(c.full * c.inverse, IntMatrix::identity(3));
  EXPECT_THROW(complete_basis(IntMatrix{{2}, {0}}), Error);
}
