#include "oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "packmin/minima.hpp"

namespace oracle {

using namespace packmin;

namespace {

IntVec sign_normalized(IntVec v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

// Calls f on every integer vector in the box [-b_i, b_i].
template <class F>
void scan_box(const std::vector<Int>& b, F&& f) {
  const std::size_t n = b.size();
  IntVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -b[i];
  for (;;) {
    f(x);
    std::size_t i = 0;
    while (i < n && x[i] == b[i]) {
      x[i] = -b[i];
      ++i;
    }
    if (i == n) return;
    ++x[i];
  }
}

bool is_zero(const IntVec& x) {
  return std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
}

Rat gauge_sq(const SymBody& m, const Lattice& lat, const IntVec& y) {
  if (auto* ball = std::get_if<Ball>(&m.body().data()))
    return quadratic_form(lat.gram(), y) / (ball->radius * ball->radius);
  return norm(m, lat.basis() * to_rat(y)).squared();
}

// Circumscribed ellipsoid in lattice coordinates.
RatMatrix outer_form(const SymBody& m, const Lattice& lat) {
  if (auto* ball = std::get_if<Ball>(&m.body().data())) return scaled(lat.gram(), 1 / (ball->radius * ball->radius));
  Rat r2 = 0;
  for (const auto& v : m.body().vertices()) r2 = std::max(r2, dot(v, v));
  return scaled(lat.gram(), 1 / r2);
}

Shortest ball_shortest(const SymBody& m, const Lattice& lat) {
  const std::size_t n = lat.dim();
  RatMatrix outer = outer_form(m, lat);
  // any lattice vector gives a starting bound; reduced ones keep the box small
  IntMatrix u = lll_reduce(outer);
  std::optional<Rat> start;
  for (std::size_t i = 0; i < n; ++i) {
    Rat g = gauge_sq(m, lat, u.col(i));
    if (!start || g < *start) start = g;
  }
  RatMatrix oinv = inverse(outer);
  std::vector<Int> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = isqrt_floor(*start * oinv(i, i));
  std::optional<Shortest> best;
  scan_box(b, [&](const IntVec& x) {
    if (is_zero(x)) return;
    IntVec y = sign_normalized(x);
    Rat g = gauge_sq(m, lat, y);
    if (!best || g < best->squared || (g == best->squared && y < best->x)) best = Shortest{g, y};
  });
  return *best;
}

// Polytopes: the gauge is the largest facet ratio, and the last coordinate
// of every point in g·K is cut out by the facets once the others are fixed.
Shortest polytope_shortest(const SymBody& m, const Lattice& lat) {
  const std::size_t n = lat.dim();
  HRep h = h_representation(m.body());
  RatMatrix rows = h.a * lat.basis();
  auto gauge = [&](const IntVec& y) {
    Rat g = 0;
    for (std::size_t j = 0; j < rows.rows(); ++j) {
      Rat v = 0;
      for (std::size_t i = 0; i < n; ++i) v += rows(j, i) * y[i];
      g = std::max(g, Rat(v / h.b[j]));
    }
    return g;
  };
  RatMatrix outer = outer_form(m, lat);
  IntMatrix u = lll_reduce(outer);
  std::optional<Rat> g0;
  for (std::size_t i = 0; i < n; ++i) {
    Rat g = gauge(u.col(i));
    if (!g0 || g < *g0) g0 = g;
  }
  RatMatrix binv = inverse(lat.basis());
  std::vector<Rat> reach(n, Rat(0));
  for (const auto& v : m.body().vertices()) {
    RatVec c = binv * v;
    for (std::size_t i = 0; i < n; ++i) reach[i] = std::max(reach[i], Rat(abs(c[i])));
  }
  std::vector<Int> b(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) b[i] = floor(*g0 * reach[i]);
  std::optional<Shortest> best;
  auto consider = [&](const IntVec& y) {
    if (is_zero(y) || sign_normalized(y) != y) return;
    Rat g = gauge(y);
    if (!best || g * g < best->squared || (g * g == best->squared && y < best->x)) best = Shortest{g * g, y};
  };
  auto line = [&](const IntVec& head) {
    Rat lo = -*g0 * reach[n - 1], hi = *g0 * reach[n - 1];
    for (std::size_t j = 0; j < rows.rows(); ++j) {
      Rat rest = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) rest += rows(j, i) * head[i];
      const Rat& c = rows(j, n - 1);
      Rat room = *g0 * h.b[j] - rest;
      if (c > 0) hi = std::min(hi, Rat(room / c));
      else if (c < 0) lo = std::max(lo, Rat(room / c));
      else if (room < 0) return;
    }
    IntVec y = head;
    y.push_back(0);
    for (Int t = ceil(lo); t <= floor(hi); ++t) {
      y[n - 1] = t;
      consider(y);
    }
  };
  if (n == 1) line({});
  else scan_box(b, line);
  return *best;
}

Shortest shortest_in(const SymBody& m, const Lattice& lat) {
  return m.body().is_ball() ? ball_shortest(m, lat) : polytope_shortest(m, lat);
}

Int gcd_all(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) {
    Int ax = abs(x);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ax.get_mpz_t());
  }
  return g;
}

}  // namespace

std::vector<IntVec> short_vectors(const RatMatrix& gram, const Rat& bound) {
  const std::size_t n = gram.rows();
  RatMatrix ginv = inverse(gram);
  std::vector<Int> b(n);
  for (std::size_t i = 0; i < n; ++i) b[i] = isqrt_floor(bound * ginv(i, i));
  std::vector<std::pair<Rat, IntVec>> found;
  scan_box(b, [&](const IntVec& x) {
    if (is_zero(x) || sign_normalized(x) != x) return;
    Rat q = quadratic_form(gram, x);
    if (q <= bound) found.emplace_back(q, x);
  });
  std::sort(found.begin(), found.end());
  std::vector<IntVec> out;
  for (auto& f : found) out.push_back(f.second);
  return out;
}

Shortest shortest_by_box(const SymBody& m, const Lattice& lat) { return shortest_in(m, lat); }

PlaneAnswer packing_by_planes(const Body& k, const Lattice& lat, std::size_t i) {
  const std::size_t n = lat.dim();
  const std::size_t rk = n - i;
  SymBody kc = difference_body(k);
  if (rk == 0) return {shortest_in(kc, lat).squared, {}};
  if (n > 3 || (rk != 1 && rk + 1 != n)) throw std::invalid_argument("oracle handles n <= 3 only");

  Budget budget(kDefaultBudget);
  PackingCaps caps = packing_caps(difference_chart(k, lat), i, budget);
  auto vecs = short_vectors(caps.metric, 16 * caps.generator_cap);

  std::map<IntVec, IntMatrix> planes;
  if (rk == 1) {
    for (const auto& v : short_vectors(caps.metric, 4 * caps.det_cap))
      if (gcd_all(v) == 1) planes.emplace(v, IntMatrix::from_columns({v}, n));
  } else {
    // a rank n−1 plane is the kernel of a primitive normal c, with
    // det_A(plane) = det(A)·cᵀA⁻¹c
    RatMatrix ainv = inverse(caps.metric);
    Rat det_a = determinant(caps.metric);
    for (const auto& c : short_vectors(ainv, 4 * caps.det_cap / det_a)) {
      if (gcd_all(c) != 1) continue;
      RatMatrix row(1, n);
      for (std::size_t j = 0; j < n; ++j) row(0, j) = c[j];
      planes.emplace(c, kernel_basis(row));
    }
  }

  std::optional<PlaneAnswer> best;
  for (const auto& [tag, w] : planes) {
    LatticePlane p = saturate(lat, w);
    ProjectedLattice proj = project_along(lat, p);
    SymBody pb = project_body(kc, lat, p, proj);
    Lattice plat = k.is_ball() ? Lattice::from_gram(proj.gram) : Lattice::standard(n - rk);
    Rat v = shortest_in(pb, plat).squared;
    IntVec key = p.key();
    if (!best || v > best->squared || (v == best->squared && key < best->key)) best = PlaneAnswer{v, key};
  }
  return *best;
}

std::vector<Int> elementary_divisors(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols(), t = std::min(r, c);
  std::vector<Int> minors_gcd(t + 1, Int(0));
  minors_gcd[0] = 1;
  for (std::size_t k = 1; k <= t; ++k) {
    std::vector<std::size_t> rs(k), cs(k);
    std::vector<bool> rsel(r, false), csel(c, false);
    std::fill(rsel.begin(), rsel.begin() + static_cast<std::ptrdiff_t>(k), true);
    Int g = 0;
    do {
      std::fill(csel.begin(), csel.end(), false);
      std::fill(csel.begin(), csel.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        IntMatrix sub(k, k);
        std::size_t a = 0;
        for (std::size_t i = 0; i < r; ++i) {
          if (!rsel[i]) continue;
          std::size_t b = 0;
          for (std::size_t j = 0; j < c; ++j)
            if (csel[j]) sub(a, b++) = m(i, j);
          ++a;
        }
        Int d = abs(determinant(sub));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    minors_gcd[k] = g;
  }
  std::vector<Int> d;
  for (std::size_t k = 1; k <= t; ++k) d.push_back(minors_gcd[k - 1] == 0 ? Int(0) : Int(minors_gcd[k] / minors_gcd[k - 1]));
  return d;
}

}  // namespace oracle
