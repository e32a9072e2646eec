#include "packmin/chart.hpp"

#include <algorithm>

#include "packmin/hull.hpp"
#include "packmin/lp.hpp"

namespace packmin {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "minima", msg); }

RatVec negated(const RatVec& v) {
  RatVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
  return w;
}

RatMatrix outer_sum(const std::vector<RatVec>& vs, std::size_t n) {
  RatMatrix s(n, n);
  for (const auto& v : vs)
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) s(i, j) += v[i] * v[j];
    }
  return s;
}

// Greedy choice of n linearly independent vectors.
std::vector<RatVec> independent_subset(const std::vector<RatVec>& vs, std::size_t n) {
  std::vector<RatVec> picked, echelon;
  std::vector<std::size_t> pivots;
  for (const auto& v : vs) {
    RatVec r = v;
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      if (r[pivots[e]] == 0) continue;
      Rat f = r[pivots[e]] / echelon[e][pivots[e]];
      for (std::size_t j = 0; j < n; ++j) r[j] -= f * echelon[e][j];
    }
    auto it = std::find_if(r.begin(), r.end(), [](const Rat& x) { return x != 0; });
    if (it == r.end()) continue;
    pivots.push_back(static_cast<std::size_t>(it - r.begin()));
    echelon.push_back(std::move(r));
    picked.push_back(v);
    if (picked.size() == n) break;
  }
  if (picked.size() < n) fail(ErrorCode::RankDeficient, "body is not full-dimensional");
  return picked;
}

// {xᵀAx <= 1} inside {|a·x| <= 1 for all rows}
RatMatrix inner_from_rows(const std::vector<RatVec>& rows, std::size_t n) {
  RatMatrix s = outer_sum(rows, n);
  RatMatrix sinv = inverse(s);
  Rat lev = 0;
  for (const auto& r : rows) lev = std::max(lev, quadratic_form(sinv, r));
  return scaled(s, lev);
}

// conv(±points) inside {xᵀAx <= 1}
RatMatrix outer_from_points(const std::vector<RatVec>& pts, std::size_t n) {
  RatMatrix sinv = inverse(outer_sum(pts, n));
  Rat lev = 0;
  for (const auto& p : pts) lev = std::max(lev, quadratic_form(sinv, p));
  return scaled(sinv, 1 / lev);
}

// the crosspolytope on n independent points is inscribed
RatMatrix inner_from_points(const std::vector<RatVec>& pts, std::size_t n) {
  auto basis = independent_subset(pts, n);
  RatMatrix p(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) p(i, j) = basis[j][i];
  RatMatrix pinv = inverse(p);
  return scaled(pinv.transpose() * pinv, Rat(static_cast<long>(n)));
}

// the box {|r·x| <= 1} on n independent rows is circumscribed
RatMatrix outer_from_rows(const std::vector<RatVec>& rows, std::size_t n) {
  auto basis = independent_subset(rows, n);
  return scaled(outer_sum(basis, n), make_rat(1, static_cast<long>(n)));
}

Rat rat_sqrt_exact(const Rat& q) {
  Int num = q.get_num(), den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    fail(ErrorCode::InvalidParams, "polytope gauge is not rational");
  Int a, b;
  mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
  return make_rat(a, b);
}

Rat lp_gauge(const std::vector<RatVec>& pts, const RatVec& x) {
  const std::size_t n = x.size(), m = pts.size();
  RatMatrix a(n, 2 * m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      a(i, 2 * k) = pts[k][i];
      a(i, 2 * k + 1) = -pts[k][i];
    }
  LpResult r = lp_minimize(a, x, RatVec(2 * m, Rat(1)));
  if (r.status != LpStatus::Optimal) fail(ErrorCode::OriginNotInterior, "gauge undefined outside the span");
  return r.value;
}

std::vector<RatVec> symmetric_closure(const std::vector<RatVec>& pts) {
  std::vector<RatVec> out = pts;
  for (const auto& p : pts) out.push_back(negated(p));
  return unique_points(out);
}

bool lex_less(const IntVec& a, const IntVec& b) { return a < b; }

}  // namespace

ChartBody ChartBody::ellipsoid(RatMatrix form) {
  if (!is_positive_definite(form)) fail(ErrorCode::NotPositiveDefinite, "ellipsoid form is not positive definite");
  ChartBody k;
  k.kind = Kind::Ellipsoid;
  k.dim = form.rows();
  k.inner = form;
  k.outer = form;
  k.form = std::move(form);
  return k;
}

ChartBody ChartBody::polytope(std::size_t dim, std::vector<RatVec> points, std::vector<RatVec> rows) {
  if (points.empty() && rows.empty()) fail(ErrorCode::UnsupportedRepresentation, "polytope without data");
  ChartBody k;
  k.kind = Kind::Polytope;
  k.dim = dim;
  if (dim <= kMaxHullDim) {
    if (points.empty()) {
      std::vector<RatVec> all = symmetric_closure(rows);
      RatMatrix a(all.size(), dim);
      for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) a(i, j) = all[i][j];
      points = h_to_v(a, RatVec(all.size(), Rat(1)));
    } else {
      points = hull_vertices(symmetric_closure(points));
    }
    if (rows.empty()) {
      for (const auto& f : hull_facets(points)) {
        RatVec r = to_rat(f.normal);
        for (auto& x : r) x /= f.offset;
        rows.push_back(std::move(r));
      }
    }
    // keep one row per antipodal pair
    std::vector<RatVec> half;
    for (auto& r : symmetric_closure(rows))
      if (r > negated(r)) half.push_back(r);
    rows = std::move(half);
    std::vector<RatVec> halfp;
    for (auto& p : points)
      if (p > negated(p)) halfp.push_back(p);
    points = std::move(halfp);
  }
  k.points = std::move(points);
  k.rows = std::move(rows);
  k.inner = k.rows.empty() ? inner_from_points(k.points, dim) : inner_from_rows(k.rows, dim);
  k.outer = k.points.empty() ? outer_from_rows(k.rows, dim) : outer_from_points(k.points, dim);
  return k;
}

Rat gauge_squared(const ChartBody& k, const RatVec& x) {
  if (k.kind == ChartBody::Kind::Ellipsoid) return quadratic_form(k.form, x);
  if (!k.rows.empty()) {
    Rat m = 0;
    for (const auto& r : k.rows) m = std::max(m, abs(dot(r, x)));
    return m * m;
  }
  Rat g = lp_gauge(k.points, x);
  return g * g;
}

Rat gauge_squared(const ChartBody& k, const IntVec& x) {
  if (k.kind == ChartBody::Kind::Ellipsoid) return quadratic_form(k.form, x);
  if (!k.rows.empty()) {
    Rat m = 0;
    for (const auto& r : k.rows) {
      Rat s = 0;
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) s += r[i] * x[i];
      if (s < 0) s = -s;
      if (s > m) m = s;
    }
    return m * m;
  }
  return gauge_squared(k, to_rat(x));
}

Magnitude make_value(const ChartBody& k, const Rat& squared) {
  if (k.kind == ChartBody::Kind::Ellipsoid) return Magnitude::sqrt_of(squared);
  return Magnitude::exact(rat_sqrt_exact(squared));
}

Magnitude gauge(const ChartBody& k, const IntVec& x) { return make_value(k, gauge_squared(k, x)); }

ChartBody to_chart(const SymBody& m, const Lattice& lat) {
  const std::size_t n = lat.dim();
  if (m.dim() != n) fail(ErrorCode::DimensionMismatch, "body and lattice dimensions differ");
  const auto& d = m.body().data();
  if (auto* ball = std::get_if<Ball>(&d)) return ChartBody::ellipsoid(scaled(lat.gram(), 1 / (ball->radius * ball->radius)));
  if (lat.kind() != LatticeKind::Basis)
    fail(ErrorCode::IncompatibleKinds, "polytope bodies need a basis lattice");
  const RatMatrix& b = lat.basis();
  RatMatrix binv = inverse(b);
  std::vector<RatVec> pts, rows;
  if (auto* box = std::get_if<Box>(&d)) {
    for (std::size_t i = 0; i < n; ++i) {
      RatVec r = b.row(i);
      for (auto& x : r) x /= box->r[i];
      rows.push_back(std::move(r));
    }
    // projections of high-dimensional boxes need the vertices too
    if (n > kMaxHullDim)
      for (const auto& v : m.body().vertices()) pts.push_back(binv * v);
  } else if (auto* h = std::get_if<HPolytope>(&d)) {
    for (std::size_t i = 0; i < h->a.rows(); ++i) {
      if (h->b[i] <= 0) fail(ErrorCode::OriginNotInterior, "origin is not interior to the body");
      RatVec r(n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) r[j] += h->a(i, l) * b(l, j);
      for (auto& x : r) x /= h->b[i];
      rows.push_back(std::move(r));
    }
  } else {
    for (const auto& v : m.body().vertices()) pts.push_back(binv * v);
  }
  return ChartBody::polytope(n, std::move(pts), std::move(rows));
}

ChartBody chart_polar(const ChartBody& k) {
  if (k.kind == ChartBody::Kind::Ellipsoid) return ChartBody::ellipsoid(inverse(k.form));
  ChartBody p;
  p.kind = ChartBody::Kind::Polytope;
  p.dim = k.dim;
  p.points = k.rows;
  p.rows = k.points;
  p.inner = inverse(k.outer);
  p.outer = inverse(k.inner);
  return p;
}

ChartBody chart_transform(const ChartBody& k, const IntMatrix& u) {
  RatMatrix ur = to_rat(u);
  RatMatrix urt = ur.transpose();
  if (k.kind == ChartBody::Kind::Ellipsoid) return ChartBody::ellipsoid(urt * k.form * ur);
  RatMatrix uinv = inverse(ur);
  ChartBody t;
  t.kind = ChartBody::Kind::Polytope;
  t.dim = k.dim;
  for (const auto& p : k.points) t.points.push_back(uinv * p);
  for (const auto& r : k.rows) t.rows.push_back(urt * r);
  t.inner = urt * k.inner * ur;
  t.outer = urt * k.outer * ur;
  return t;
}

ChartBody chart_project(const ChartBody& k, std::size_t first) {
  if (first == 0) return k;
  if (first >= k.dim) fail(ErrorCode::RankOutOfRange, "projection along the whole space");
  std::vector<std::size_t> pivot(first);
  for (std::size_t i = 0; i < first; ++i) pivot[i] = i;
  if (k.kind == ChartBody::Kind::Ellipsoid) return ChartBody::ellipsoid(schur_complement(k.form, pivot));
  if (k.points.empty()) fail(ErrorCode::UnsupportedRepresentation, "projection needs a vertex representation");
  const std::size_t m = k.dim - first;
  std::vector<RatVec> pts;
  for (const auto& p : k.points) {
    RatVec q(p.begin() + static_cast<std::ptrdiff_t>(first), p.end());
    bool zero = std::all_of(q.begin(), q.end(), [](const Rat& x) { return x == 0; });
    if (!zero) pts.push_back(std::move(q));
  }
  ChartBody out = ChartBody::polytope(m, std::move(pts), {});
  if (m > kMaxHullDim) {
    out.inner = schur_complement(k.inner, pivot);
    out.outer = schur_complement(k.outer, pivot);
  }
  return out;
}

ChartBody chart_section(const ChartBody& k, std::size_t first) {
  if (first == 0 || first > k.dim) fail(ErrorCode::RankOutOfRange, "section dimension out of range");
  if (first == k.dim) return k;
  auto block = [first](const RatMatrix& f) {
    RatMatrix s(first, first);
    for (std::size_t i = 0; i < first; ++i)
      for (std::size_t j = 0; j < first; ++j) s(i, j) = f(i, j);
    return s;
  };
  if (k.kind == ChartBody::Kind::Ellipsoid) return ChartBody::ellipsoid(block(k.form));
  if (k.rows.empty()) fail(ErrorCode::UnsupportedRepresentation, "section needs a facet representation");
  std::vector<RatVec> rows;
  for (const auto& r : k.rows) {
    RatVec q(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(first));
    bool zero = std::all_of(q.begin(), q.end(), [](const Rat& x) { return x == 0; });
    if (!zero) rows.push_back(std::move(q));
  }
  ChartBody out = ChartBody::polytope(first, {}, std::move(rows));
  if (first > kMaxHullDim) {
    out.inner = block(k.inner);
    out.outer = block(k.outer);
  }
  return out;
}

std::optional<ChartVector> chart_shortest(const ChartBody& k, Budget& budget, const std::optional<Rat>& threshold,
                                          bool inclusive) {
  const std::size_t n = k.dim;
  auto below = [&](const Rat& g) { return threshold && (g < *threshold || (inclusive && g == *threshold)); };
  IntMatrix u = lll_reduce(k.outer);
  ChartVector best;
  for (std::size_t j = 0; j < n; ++j) {
    IntVec x = normalize_sign(u.col(j));
    Rat g = gauge_squared(k, x);
    if (j == 0 || g < best.squared || (g == best.squared && lex_less(x, best.x))) best = {g, x};
  }
  if (below(best.squared)) return std::nullopt;
  bool hit = false;
  enumerate_with(k.outer, best.squared, budget, [&](const IntVec& x, const Rat&, Rat& bound) {
    Rat g = gauge_squared(k, x);
    if (g > best.squared) return true;
    if (below(g)) {
      hit = true;
      return false;
    }
    IntVec v = normalize_sign(x);
    if (g < best.squared || lex_less(v, best.x)) {
      best = {g, std::move(v)};
      bound = best.squared;
    }
    return true;
  });
  if (hit) return std::nullopt;
  return best;
}

std::vector<ChartVector> chart_vectors_within(const ChartBody& k, const Rat& bound, Budget& budget) {
  std::vector<ChartVector> out;
  enumerate_with(k.outer, bound, budget, [&](const IntVec& x, const Rat&, Rat&) {
    Rat g = gauge_squared(k, x);
    if (g <= bound) out.push_back({g, normalize_sign(x)});
    return true;
  });
  std::sort(out.begin(), out.end(), [](const ChartVector& a, const ChartVector& b) {
    return a.squared != b.squared ? a.squared < b.squared : a.x < b.x;
  });
  return out;
}

std::vector<ChartVector> chart_successive(const ChartBody& k, Budget& budget) {
  const std::size_t n = k.dim;
  IntMatrix u = lll_reduce(k.outer);
  Rat bound = 0;
  for (std::size_t j = 0; j < n; ++j) bound = std::max(bound, gauge_squared(k, u.col(j)));
  std::vector<ChartVector> all = chart_vectors_within(k, bound, budget);
  std::vector<ChartVector> picked;
  std::vector<RatVec> echelon;
  std::vector<std::size_t> pivots;
  for (auto& c : all) {
    RatVec r = to_rat(c.x);
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      if (r[pivots[e]] == 0) continue;
      Rat f = r[pivots[e]] / echelon[e][pivots[e]];
      for (std::size_t j = 0; j < n; ++j) r[j] -= f * echelon[e][j];
    }
    auto it = std::find_if(r.begin(), r.end(), [](const Rat& x) { return x != 0; });
    if (it == r.end()) continue;
    pivots.push_back(static_cast<std::size_t>(it - r.begin()));
    echelon.push_back(std::move(r));
    picked.push_back(std::move(c));
    if (picked.size() == n) break;
  }
  if (picked.size() != n) fail(ErrorCode::RankDeficient, "successive minima search lost rank");
  return picked;
}

}  // namespace packmin
