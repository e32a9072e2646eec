#include <gtest/gtest.h>

#include "oracle.hpp"
#include "packmin/families.hpp"
#include "packmin/minima.hpp"
#include "packmin_cli/instance.hpp"

using namespace packmin;

namespace {

Rat q(long p, long d = 1) { return make_rat(p, d); }

Lattice hex(std::size_t n) { return simplex_lattice(n); }

std::vector<Rat> squares(const std::vector<MinimaValue>& v) {
  std::vector<Rat> out;
  for (const auto& x : v) out.push_back(x.value.squared());
  return out;
}

}  // namespace

TEST(ShortestVector, Examples) {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto v = shortest_vector(SymBody(Body::ball(q(1), n)), hex(n));
    EXPECT_TRUE(identical(v.value, Magnitude::sqrt_of(q(1))));
  }
  auto b = shortest_vector(SymBody(Body::box({q(2), q(4)})), Lattice::standard(2));
  EXPECT_TRUE(identical(b.value, Magnitude::exact(q(1, 4))));
  EXPECT_EQ(*b.vector, (IntVec{0, 1}));
  EXPECT_TRUE(identical(shortest_vector(SymBody(Body::ball(q(1), 2)), Lattice::standard(2)).value,
                        Magnitude::sqrt_of(q(1))));
}

TEST(ShortestVector, RejectsIncompatibleKinds) {
  try {
    shortest_vector(SymBody(Body::box({q(1), q(1)})), hex(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IncompatibleKinds);
  }
}

TEST(ShortestVector, MatchesBoxScan) {
  for (std::uint64_t seed = 1; seed <= 15; ++seed) {
    auto inst = cli::random_instance(seed, 2 + seed % 2, seed % 2 ? "basis-hexagon" : "basis-box");
    SymBody kc = difference_body(inst.body);
    auto got = shortest_vector(kc, inst.lattice);
    auto want = oracle::shortest_by_box(kc, inst.lattice);
    EXPECT_EQ(got.value.squared(), want.squared);
    EXPECT_EQ(*got.vector, want.x);
  }
}

TEST(SuccessiveMinima, Examples) {
  auto s = successive_minima(SymBody(Body::box({q(2), q(4), q(6)})), Lattice::standard(3));
  EXPECT_EQ(squares(s), (std::vector<Rat>{q(1, 36), q(1, 16), q(1, 4)}));
  auto c = successive_minima(SymBody(Body::cross({q(1), q(2), q(3)})), Lattice::standard(3));
  EXPECT_EQ(squares(c), (std::vector<Rat>{q(1), q(4), q(9)}));
  auto h = successive_minima(SymBody(Body::ball(q(1), 4)), hex(4));
  EXPECT_EQ(squares(h), std::vector<Rat>(4, q(1)));
}

TEST(SuccessiveMinima, MonotoneWithIndependentWitnesses) {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    auto inst = cli::random_instance(seed, 2 + seed % 2, "basis-hexagon");
    auto s = successive_minima(difference_body(inst.body), inst.lattice);
    IntMatrix w(inst.lattice.dim(), s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) EXPECT_LE(s[i - 1].value, s[i].value);
      w.set_col(i, *s[i].vector);
    }
    EXPECT_EQ(rank(w), s.size());
  }
}

TEST(LatticeWidth, Examples) {
  auto w = lattice_width(Body::box({q(1), q(2)}), Lattice::standard(2));
  EXPECT_TRUE(identical(w.value, Magnitude::exact(q(2))));
  EXPECT_EQ(*w.vector, (IntVec{1, 0}));
  // unit disc and the hexagonal lattice: the dual minimum is 2/√3, and the width is twice it
  auto d = lattice_width(Body::ball(q(1), 2), hex(2));
  EXPECT_TRUE(identical(d.value, Magnitude::sqrt_of(q(16, 3))));
  auto s = lattice_width(Body::vpolytope({{q(-1)}, {q(1)}}), Lattice::standard(1));
  EXPECT_TRUE(identical(s.value, Magnitude::exact(q(2))));
}

TEST(LatticeWidth, EqualsSupportWidthMinimum) {
  // width = min over dual vectors of h(K,y) + h(K,−y)
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto inst = cli::random_instance(seed, 2, "triangle");
    auto w = lattice_width(inst.body, inst.lattice);
    Lattice d = dual(inst.lattice);
    const RatMatrix& db = d.basis();
    Rat best = -1;
    for (long a = -6; a <= 6; ++a)
      for (long b = -6; b <= 6; ++b) {
        if (a == 0 && b == 0) continue;
        RatVec y = db * RatVec{q(a), q(b)};
        RatVec my{-y[0], -y[1]};
        Rat width = support(inst.body, y) + support(inst.body, my);
        if (best < 0 || width < best) best = width;
      }
    EXPECT_EQ(w.value.squared(), best * best);
  }
}

TEST(PackingMinima, Boxes) {
  auto p = packing_minima_all(Body::box({q(1), q(2)}), Lattice::standard(2));
  EXPECT_EQ(squares(p), (std::vector<Rat>{q(1, 4), q(1, 16)}));
  auto p3 = packing_minima_all(Body::box({q(1), q(2), q(3)}), Lattice::standard(3));
  EXPECT_EQ(squares(p3), (std::vector<Rat>{q(1, 4), q(1, 16), q(1, 36)}));
  for (const auto& v : p3) EXPECT_TRUE(v.value.is_exact());
  EXPECT_EQ(p3[0].plane->rank, 2u);
  EXPECT_EQ(p3[2].plane->rank, 0u);
}

TEST(PackingMinima, Crosspolytope) {
  auto p = packing_minima_all(Body::cross({q(1), q(1), q(1)}), Lattice::standard(3));
  EXPECT_EQ(squares(p), std::vector<Rat>(3, q(1, 4)));
}

TEST(PackingMinima, SimplexLattice) {
  for (std::size_t n = 2; n <= 4; ++n) {
    auto v = packing_minimum(Body::ball(q(1), n), hex(n), n - 1);
    EXPECT_TRUE(identical(v.value, Magnitude::sqrt_of(q(3, 16)))) << n;
  }
  auto p = packing_minima_all(Body::ball(q(1), 2), hex(2));
  EXPECT_TRUE(identical(p[0].value, Magnitude::sqrt_of(q(3, 16))));
  EXPECT_TRUE(identical(p[1].value, Magnitude::sqrt_of(q(1, 4))));
  EXPECT_LT(p[0].value, p[1].value);
}

TEST(PackingMinima, EquiangularStrictDrop) {
  for (auto [n, a, b] : std::vector<std::tuple<std::size_t, Rat, Rat>>{
           {2, q(1), q(1, 3)}, {3, q(2), q(1, 2)}, {3, q(1), q(-1, 4)}, {4, q(3), q(1)}}) {
    Lattice l = make_equiangular({n, a, b});
    auto p = packing_minima_all(Body::ball(q(1), n), l);
    EXPECT_TRUE(identical(p[n - 1].value, Magnitude::sqrt_of(a / 4)));
    EXPECT_LT(p[n - 2].value, p[n - 1].value);
    for (std::size_t j = 1; j <= n; ++j) EXPECT_GE(p[j - 1].value.squared(), rho_lower_bound_formula({n, a, b}, j));
  }
}

TEST(PackingMinima, FirstIsReciprocalWidthLastIsShortest) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto inst = cli::random_instance(seed, 2 + seed % 2, seed % 3 ? "basis-hexagon" : "triangle");
    auto p = packing_minima_all(inst.body, inst.lattice);
    auto w = lattice_width(inst.body, inst.lattice);
    EXPECT_EQ(p.front().value.squared() * w.value.squared(), 1);
    auto s = shortest_vector(difference_body(inst.body), inst.lattice);
    EXPECT_EQ(p.back().value, s.value);
  }
}

TEST(PackingMinima, MatchesPlaneOracle) {
  for (std::uint64_t seed : {1, 2, 3, 4, 5, 6, 8, 10}) {
    std::size_t n = seed <= 5 ? 2 : 3;
    auto inst = cli::random_instance(seed, n, seed % 2 ? "basis-hexagon" : "basis-box");
    for (std::size_t i = 1; i <= n; ++i) {
      auto got = packing_minimum(inst.body, inst.lattice, i);
      auto want = oracle::packing_by_planes(inst.body, inst.lattice, i);
      EXPECT_EQ(got.value.squared(), want.squared) << "seed " << seed << " i " << i;
      EXPECT_EQ(got.plane->key(), want.key) << "seed " << seed << " i " << i;
    }
  }
}

TEST(PackingMinima, ScalingCovariance) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto inst = cli::random_instance(seed, 2, "basis-hexagon");
    Rat c = q(3, 2);
    auto base = packing_minima_all(inst.body, inst.lattice);
    auto lat = packing_minima_all(inst.body, scaled(inst.lattice, c));
    auto body = packing_minima_all(scaled(inst.body, c), inst.lattice);
    for (std::size_t i = 0; i < base.size(); ++i) {
      EXPECT_EQ(lat[i].value.squared(), c * c * base[i].value.squared());
      EXPECT_EQ(body[i].value.squared(), base[i].value.squared() / (c * c));
      EXPECT_EQ(lat[i].plane->key(), base[i].plane->key());
      EXPECT_EQ(body[i].plane->key(), base[i].plane->key());
    }
  }
}

TEST(PackingMinima, ProjectionMonotonicity) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto inst = cli::random_instance(seed, 3, "basis-hexagon");
    auto p = packing_minima_all(inst.body, inst.lattice);
    // project along the plane attaining ρ₁ (rank 2) and the one attaining ρ₂ (rank 1)
    for (std::size_t idx : {std::size_t(1)}) {
      const LatticePlane& plane = *p[idx].plane;
      ProjectedLattice proj = project_along(inst.lattice, plane);
      SymBody kc = difference_body(inst.body);
      SymBody pb = project_body(kc, inst.lattice, plane, proj);
      // K_c|L^⊥ = (K|L^⊥)_c, and in chart coordinates the projected lattice is standard
      Lattice pl = Lattice::standard(pb.dim());
      auto vs = pb.body().vertices();
      std::vector<RatVec> half;
      for (auto& v : vs) {
        RatVec h = v;
        for (auto& x : h) x /= 2;
        half.push_back(h);
      }
      Body kproj = Body::vpolytope(half);
      auto pp = packing_minima_all(kproj, pl);
      for (std::size_t i = 0; i < pp.size(); ++i) EXPECT_LE(pp[i].value, p[i].value) << seed;
    }
  }
}

TEST(PackingMinima, ThreadCountDoesNotChangeAnswer) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto inst = cli::random_instance(seed, 3, "basis-hexagon");
    auto a = packing_minima_all(inst.body, inst.lattice, Options{kDefaultBudget, 1});
    auto b = packing_minima_all(inst.body, inst.lattice, Options{kDefaultBudget, 4});
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_TRUE(identical(a[i].value, b[i].value));
      EXPECT_EQ(a[i].plane->key(), b[i].plane->key());
      EXPECT_EQ(*a[i].vector, *b[i].vector);
    }
  }
}

TEST(PackingMinima, BudgetExceededIsReported) {
  try {
    packing_minima_all(Body::ball(q(1), 4), hex(4), Options{50, 1});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(CoveringMinima, Boxes) {
  EXPECT_EQ(covering_minima_box({q(1), q(2)}), (std::vector<Rat>{q(1, 2), q(1, 2)}));
  EXPECT_EQ(covering_minima_box(RatVec(4, q(1))), std::vector<Rat>(4, q(1, 2)));
  EXPECT_EQ(covering_minima_box({q(1, 2), q(5)}), (std::vector<Rat>{q(1), q(1)}));
  EXPECT_THROW(covering_minima_box({q(2), q(1)}), Error);
}

TEST(CoveringMinima, RelationsToPackingOnBoxes) {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto inst = cli::random_instance(seed, 1 + seed % 3, "box");
    auto rho = packing_minima_all(inst.body, inst.lattice);
    auto mu = covering_minima_box(std::get<Box>(inst.body.data()).r);
    Rat running_max = 0, running_sum = 0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      // ρ are exact on boxes
      Rat r = rho[i].value.payload();
      running_max = std::max(running_max, r);
      running_sum += r;
      EXPECT_LE(running_max, mu[i]);
      EXPECT_LE(mu[i], running_sum);
      if (i + 1 < mu.size()) EXPECT_LE(mu[i + 1], mu[i] + rho[i + 1].value.payload());
    }
  }
}

TEST(KzBasis, Examples) {
  auto z = kz_basis(SymBody(Body::ball(q(1), 3)), Lattice::standard(3));
  for (const auto& g : z.gauges) EXPECT_EQ(g.squared(), 1);
  EXPECT_EQ(abs(Rat(determinant(z.basis))), 1);
  for (std::size_t j = 0; j < 3; ++j) {
    IntVec c = z.basis.col(j);
    Int nz = 0;
    for (const auto& x : c) nz += x * x;
    EXPECT_EQ(nz, 1);
  }
  auto h = kz_basis(SymBody(Body::ball(q(1), 2)), hex(2));
  EXPECT_TRUE(identical(h.gauges[0], Magnitude::sqrt_of(q(1))));
  EXPECT_TRUE(identical(h.gauges[1], Magnitude::sqrt_of(q(3, 4))));
  auto b = kz_basis(SymBody(Body::box({q(2), q(4)})), Lattice::standard(2));
  EXPECT_TRUE(identical(b.gauges[0], Magnitude::exact(q(1, 4))));
  EXPECT_TRUE(identical(b.gauges[1], Magnitude::exact(q(1, 2))));
}

TEST(KzBasis, BoundedByPackingMinima) {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto inst = cli::random_instance(seed, 2 + seed % 2, "basis-hexagon");
    SymBody kc = difference_body(inst.body);
    auto kz = kz_basis(kc, inst.lattice);
    auto rho = packing_minima_all(inst.body, inst.lattice);
    const std::size_t n = rho.size();
    EXPECT_EQ(abs(Rat(determinant(kz.basis))), 1);
    for (std::size_t i = 0; i < n; ++i) EXPECT_GE(rho[n - 1 - i].value, kz.gauges[i]);
  }
}

TEST(Sandwich, BoxesAttainEverywhere) {
  auto s = verify_sandwich(Body::box({q(1), q(2)}), Lattice::standard(2));
  EXPECT_TRUE(s.holds());
  for (const auto& r : s.rows) {
    EXPECT_EQ(r.lower, r.rho);
    EXPECT_EQ(r.rho, r.upper);
  }
}

TEST(Sandwich, HoldsOnBallsAndRandomPolygons) {
  EXPECT_TRUE(verify_sandwich(Body::ball(q(1), 3), hex(3)).holds());
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    auto inst = cli::random_instance(seed, 2, "basis-hexagon");
    EXPECT_TRUE(verify_sandwich(inst.body, inst.lattice).holds()) << seed;
  }
}

TEST(DecreasingSubsequence, Examples) {
  std::vector<Magnitude> a{Magnitude::exact(q(1, 2)), Magnitude::exact(q(1, 4))};
  EXPECT_EQ(decreasing_subsequence(a), (std::vector<std::size_t>{1}));
  EXPECT_EQ(subsequence_bound(a), 15);
  std::vector<Magnitude> c(3, Magnitude::exact(q(1, 3)));
  EXPECT_TRUE(decreasing_subsequence(c).empty());
  EXPECT_EQ(subsequence_bound(c), 64);
  std::vector<Magnitude> h{Magnitude::sqrt_of(q(3, 16)), Magnitude::sqrt_of(q(1, 4))};
  EXPECT_TRUE(decreasing_subsequence(h).empty());
  EXPECT_EQ(subsequence_bound(h), 9);
  // 5 4 6 3 1 2 (as reciprocals of ρ) → ρ = 1/5 1/4 1/6 1/3 1 1/2: S = {5}, then j with ρ_j > 1 none
  std::vector<Magnitude> m{Magnitude::exact(q(1, 5)), Magnitude::exact(q(1, 4)), Magnitude::exact(q(1, 6)),
                           Magnitude::exact(q(1, 3)), Magnitude::exact(q(1)),    Magnitude::exact(q(1, 2))};
  EXPECT_EQ(decreasing_subsequence(m), (std::vector<std::size_t>{5}));
  std::vector<Magnitude> d{Magnitude::exact(q(1)), Magnitude::exact(q(1, 3)), Magnitude::exact(q(1, 2)),
                           Magnitude::exact(q(1, 4))};
  EXPECT_EQ(decreasing_subsequence(d), (std::vector<std::size_t>{1, 3}));
}

TEST(FloorReciprocal, ExactOnRoots) {
  EXPECT_EQ(floor_reciprocal_plus_one(Magnitude::sqrt_of(q(3, 16))), 3);
  EXPECT_EQ(floor_reciprocal_plus_one(Magnitude::sqrt_of(q(1, 4))), 3);
  EXPECT_EQ(floor_reciprocal_plus_one(Magnitude::exact(q(2, 7))), 4);
  EXPECT_EQ(floor_reciprocal_plus_one(Magnitude::sqrt_of(q(1, 9))), 4);
}

TEST(Transference, BoxesGiveExactlyAQuarter) {
  for (auto r : std::vector<RatVec>{{q(1), q(2)}, {q(1), q(1), q(3)}}) {
    for (const auto& row : transference_probe(Body::box(r), Lattice::standard(r.size()))) {
      EXPECT_EQ(row.product_squared, q(1, 4));
      EXPECT_TRUE(row.at_least_quarter);
    }
  }
}

TEST(Transference, EquiangularProductAtLeastQuarter) {
  for (auto [n, a, b] : std::vector<std::tuple<std::size_t, Rat, Rat>>{{2, q(1), q(1, 2)}, {3, q(1), q(1, 2)}, {3, q(2), q(-1, 2)}}) {
    for (const auto& row : transference_probe(Body::ball(q(1), n), make_equiangular({n, a, b})))
      EXPECT_TRUE(row.at_least_quarter) << n << " " << row.j;
  }
  auto one = transference_probe(Body::ball(q(1), 2), hex(2), 1);
  EXPECT_EQ(one.j, 1u);
  EXPECT_TRUE(one.at_least_quarter);
}
