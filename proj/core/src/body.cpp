#include "packmin/body.hpp"

#include <algorithm>
#include <set>

#include "packmin/hull.hpp"
#include "packmin/lp.hpp"

namespace packmin {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "bodies", msg); }

void require_full_dim(const std::vector<RatVec>& pts, std::size_t n, const char* what) {
  if (pts.empty()) fail(ErrorCode::ValidationError, std::string(what) + " has no points");
  for (const auto& p : pts)
    if (p.size() != n) fail(ErrorCode::ValidationError, std::string(what) + " points have inconsistent dimension");
  RatMatrix diff(pts.size() - 1, n);
  for (std::size_t i = 1; i < pts.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) diff(i - 1, j) = pts[i][j] - pts[0][j];
  if (pts.size() <= n || rank(diff) < n) fail(ErrorCode::ValidationError, std::string(what) + " is not full-dimensional");
}

Int factorial(std::size_t n) {
  Int f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

RatVec negated(const RatVec& v) {
  RatVec w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = -v[i];
  return w;
}

bool closed_under_negation(const std::vector<RatVec>& pts) {
  std::set<RatVec> s(pts.begin(), pts.end());
  for (const auto& p : pts)
    if (!s.count(negated(p))) return false;
  return true;
}

std::vector<RatVec> reduce_points(const std::vector<RatVec>& pts) {
  if (!pts.empty() && pts[0].size() <= kMaxHullDim) return hull_vertices(pts);
  auto u = unique_points(pts);
  std::sort(u.begin(), u.end());
  return u;
}

std::vector<RatVec> simplex_facet_rows(const std::vector<RatVec>& v, RatVec& offsets) {
  const std::size_t n = v[0].size();
  std::vector<RatVec> rows;
  offsets.clear();
  for (std::size_t drop = 0; drop <= n; ++drop) {
    std::vector<RatVec> face;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != drop) face.push_back(v[i]);
    RatMatrix m(n - 1, n);
    for (std::size_t r = 1; r < n; ++r)
      for (std::size_t j = 0; j < n; ++j) m(r - 1, j) = face[r][j] - face[0][j];
    RatVec normal = to_rat(kernel_basis(m).col(0));
    Rat off = dot(normal, face[0]);
    if (dot(normal, v[drop]) > off) {
      normal = negated(normal);
      off = -off;
    }
    rows.push_back(normal);
    offsets.push_back(off);
  }
  return rows;
}

Rat lp_support_h(const RatMatrix& a, const RatVec& b, const RatVec& u) {
  // max uᵀx s.t. a x <= b, with x = x⁺ − x⁻ and slacks
  const std::size_t m = a.rows(), n = a.cols();
  RatMatrix big(m, 2 * n + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      big(i, j) = a(i, j);
      big(i, n + j) = -a(i, j);
    }
    big(i, 2 * n + i) = 1;
  }
  RatVec c(2 * n + m);
  for (std::size_t j = 0; j < n; ++j) {
    c[j] = -u[j];
    c[n + j] = u[j];
  }
  LpResult r = lp_minimize(big, b, c);
  if (r.status != LpStatus::Optimal) fail(ErrorCode::UnsupportedRepresentation, "H-polytope is empty or unbounded");
  return -r.value;
}

// min t with x ∈ t·conv(±pts)
Rat lp_gauge_v(const std::vector<RatVec>& pts, const RatVec& x) {
  const std::size_t n = x.size(), m = pts.size();
  RatMatrix a(n, 2 * m);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      a(i, 2 * k) = pts[k][i];
      a(i, 2 * k + 1) = -pts[k][i];
    }
  RatVec c(2 * m, Rat(1));
  LpResult r = lp_minimize(a, x, c);
  if (r.status != LpStatus::Optimal) fail(ErrorCode::OriginNotInterior, "point outside the linear span of the body");
  return r.value;
}

}  // namespace

Body Body::box(RatVec r) {
  if (r.empty()) fail(ErrorCode::ValidationError, "box needs at least one half-width");
  for (const auto& x : r)
    if (x <= 0) fail(ErrorCode::ValidationError, "box half-widths must be positive");
  const std::size_t n = r.size();
  return Body(Box{std::move(r)}, n);
}

Body Body::cross(RatVec r) {
  if (r.empty()) fail(ErrorCode::ValidationError, "crosspolytope needs at least one scale");
  for (const auto& x : r)
    if (x <= 0) fail(ErrorCode::ValidationError, "crosspolytope scales must be positive");
  const std::size_t n = r.size();
  return Body(CrossPolytope{std::move(r)}, n);
}

Body Body::simplex(std::vector<RatVec> vertices) {
  if (vertices.empty()) fail(ErrorCode::ValidationError, "simplex has no vertices");
  const std::size_t n = vertices[0].size();
  if (vertices.size() != n + 1) fail(ErrorCode::ValidationError, "simplex in dimension n needs n+1 vertices");
  require_full_dim(vertices, n, "simplex");
  return Body(Simplex{std::move(vertices)}, n);
}

Body Body::vpolytope(std::vector<RatVec> vertices) {
  if (vertices.empty()) fail(ErrorCode::ValidationError, "vpolytope has no vertices");
  const std::size_t n = vertices[0].size();
  require_full_dim(vertices, n, "vpolytope");
  return Body(VPolytope{std::move(vertices)}, n);
}

Body Body::hpolytope(RatMatrix a, RatVec b) {
  if (a.rows() == 0 || a.cols() == 0) fail(ErrorCode::ValidationError, "hpolytope has no constraints");
  if (b.size() != a.rows()) fail(ErrorCode::ValidationError, "hpolytope rhs length differs from row count");
  const std::size_t n = a.cols();
  if (n <= kMaxHullDim) {
    try {
      h_to_v(a, b);
    } catch (const Error& e) {
      fail(ErrorCode::ValidationError, std::string("hpolytope: ") + e.what());
    }
  } else {
    RatMatrix at = a.transpose();
    RatVec zero(a.rows());
    for (std::size_t j = 0; j < 2 * n; ++j) {
      RatVec u(n);
      u[j / 2] = (j % 2) ? -1 : 1;
      if (lp_minimize(at, u, zero).status != LpStatus::Optimal) fail(ErrorCode::ValidationError, "hpolytope is unbounded");
    }
  }
  return Body(HPolytope{std::move(a), std::move(b)}, n);
}

Body Body::ball(Rat radius, std::size_t dim) {
  if (radius <= 0) fail(ErrorCode::ValidationError, "ball radius must be positive");
  if (dim == 0) fail(ErrorCode::ValidationError, "ball dimension must be positive");
  return Body(Ball{std::move(radius), dim}, dim);
}

std::string Body::kind_name() const {
  switch (data_.index()) {
    case 0: return "box";
    case 1: return "cross";
    case 2: return "simplex";
    case 3: return "vpolytope";
    case 4: return "hpolytope";
    default: return "ball";
  }
}

std::vector<RatVec> Body::vertices() const {
  const std::size_t n = dim_;
  if (auto* b = std::get_if<Box>(&data_)) {
    std::vector<RatVec> out;
    if (n > 20) fail(ErrorCode::DimensionTooLarge, "box vertex listing limited to dimension 20");
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      RatVec v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = (mask >> i & 1) ? Rat(-b->r[i]) : b->r[i];
      out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  if (auto* c = std::get_if<CrossPolytope>(&data_)) {
    std::vector<RatVec> out;
    for (std::size_t i = 0; i < n; ++i) {
      RatVec v(n);
      v[i] = 1 / c->r[i];
      out.push_back(v);
      out.push_back(negated(v));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  if (auto* s = std::get_if<Simplex>(&data_)) return s->vertices;
  if (auto* v = std::get_if<VPolytope>(&data_)) return reduce_points(v->vertices);
  if (auto* h = std::get_if<HPolytope>(&data_)) {
    if (n > kMaxHullDim) fail(ErrorCode::UnsupportedRepresentation, "H to V conversion is limited to dimension 4");
    return h_to_v(h->a, h->b);
  }
  fail(ErrorCode::UnsupportedRepresentation, "a ball has no vertex representation");
}

bool Body::is_symmetric() const {
  if (std::holds_alternative<Box>(data_) || std::holds_alternative<CrossPolytope>(data_) ||
      std::holds_alternative<Ball>(data_))
    return true;
  if (auto* s = std::get_if<Simplex>(&data_)) return dim_ == 1 && s->vertices[0] == negated(s->vertices[1]);
  if (auto* h = std::get_if<HPolytope>(&data_); h && dim_ > kMaxHullDim) {
    std::vector<RatVec> rows;
    for (std::size_t i = 0; i < h->a.rows(); ++i) {
      if (h->b[i] <= 0) return false;
      RatVec r = h->a.row(i);
      for (auto& x : r) x /= h->b[i];
      rows.push_back(std::move(r));
    }
    return closed_under_negation(rows);
  }
  return closed_under_negation(vertices());
}

SymBody::SymBody(Body body) : body_(std::move(body)) {
  if (!body_.is_symmetric()) fail(ErrorCode::NotSymmetric, "body is not origin-symmetric");
}

Body scaled(const Body& k, const Rat& c) {
  if (c <= 0) fail(ErrorCode::InvalidParams, "scale factor must be positive");
  const auto& d = k.data();
  auto scale_pts = [&](std::vector<RatVec> pts) {
    for (auto& p : pts)
      for (auto& x : p) x *= c;
    return pts;
  };
  if (auto* b = std::get_if<Box>(&d)) {
    RatVec r = b->r;
    for (auto& x : r) x *= c;
    return Body::box(r);
  }
  if (auto* x = std::get_if<CrossPolytope>(&d)) {
    RatVec r = x->r;
    for (auto& v : r) v /= c;
    return Body::cross(r);
  }
  if (auto* s = std::get_if<Simplex>(&d)) return Body::simplex(scale_pts(s->vertices));
  if (auto* v = std::get_if<VPolytope>(&d)) return Body::vpolytope(scale_pts(v->vertices));
  if (auto* h = std::get_if<HPolytope>(&d)) {
    RatVec b = h->b;
    for (auto& x : b) x *= c;
    return Body::hpolytope(h->a, b);
  }
  const auto& ball = std::get<Ball>(d);
  return Body::ball(ball.radius * c, ball.dim);
}

Body translated(const Body& k, const RatVec& t) {
  if (t.size() != k.dim()) fail(ErrorCode::DimensionMismatch, "translation has wrong dimension");
  const auto& d = k.data();
  if (k.is_ball()) fail(ErrorCode::UnsupportedRepresentation, "translated balls are not supported");
  if (auto* h = std::get_if<HPolytope>(&d)) {
    RatVec b = h->b;
    for (std::size_t i = 0; i < b.size(); ++i)
      for (std::size_t j = 0; j < t.size(); ++j) b[i] += h->a(i, j) * t[j];
    return Body::hpolytope(h->a, b);
  }
  std::vector<RatVec> pts = k.vertices();
  for (auto& p : pts)
    for (std::size_t j = 0; j < t.size(); ++j) p[j] += t[j];
  if (std::holds_alternative<Simplex>(d)) return Body::simplex(pts);
  return Body::vpolytope(pts);
}

SymBody difference_body(const Body& k) {
  const auto& d = k.data();
  if (auto* b = std::get_if<Box>(&d)) {
    RatVec r = b->r;
    for (auto& x : r) x *= 2;
    return SymBody(Body::box(r));
  }
  if (auto* c = std::get_if<CrossPolytope>(&d)) {
    RatVec r = c->r;
    for (auto& x : r) x /= 2;
    return SymBody(Body::cross(r));
  }
  if (auto* ball = std::get_if<Ball>(&d)) return SymBody(Body::ball(ball->radius * 2, ball->dim));
  if (auto* h = std::get_if<HPolytope>(&d)) {
    if (k.is_symmetric()) {
      RatVec b = h->b;
      for (auto& x : b) x *= 2;
      return SymBody(Body::hpolytope(h->a, b));
    }
    if (k.dim() > kMaxHullDim)
      fail(ErrorCode::UnsupportedRepresentation, "difference body of a non-symmetric H-polytope needs dim <= 4");
  }
  std::vector<RatVec> v = k.vertices();
  if (k.is_symmetric()) {
    for (auto& p : v)
      for (auto& x : p) x *= 2;
    return SymBody(Body::vpolytope(v));
  }
  std::vector<RatVec> diffs;
  for (const auto& p : v)
    for (const auto& q : v) {
      if (&p == &q) continue;
      RatVec w(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) w[i] = p[i] - q[i];
      diffs.push_back(std::move(w));
    }
  return SymBody(Body::vpolytope(reduce_points(diffs)));
}

SymBody polar_body(const SymBody& k) {
  const auto& d = k.body().data();
  if (auto* b = std::get_if<Box>(&d)) return SymBody(Body::cross(b->r));
  if (auto* c = std::get_if<CrossPolytope>(&d)) return SymBody(Body::box(c->r));
  if (auto* ball = std::get_if<Ball>(&d)) return SymBody(Body::ball(1 / ball->radius, ball->dim));
  if (auto* h = std::get_if<HPolytope>(&d)) {
    std::vector<RatVec> pts;
    for (std::size_t i = 0; i < h->a.rows(); ++i) {
      if (h->b[i] <= 0) fail(ErrorCode::OriginNotInterior, "origin is not interior to the H-polytope");
      RatVec r = h->a.row(i);
      for (auto& x : r) x /= h->b[i];
      pts.push_back(std::move(r));
    }
    return SymBody(Body::vpolytope(reduce_points(pts)));
  }
  // symmetric and full-dimensional V-polytope: the origin is interior
  std::vector<RatVec> v = k.body().vertices();
  RatMatrix a(v.size(), k.dim());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < k.dim(); ++j) a(i, j) = v[i][j];
  return SymBody(Body::hpolytope(a, RatVec(v.size(), Rat(1))));
}

Magnitude norm(const SymBody& k, const RatVec& x) {
  const auto& d = k.body().data();
  if (x.size() != k.dim()) fail(ErrorCode::DimensionMismatch, "point has wrong dimension");
  if (auto* b = std::get_if<Box>(&d)) {
    Rat m = 0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, Rat(abs(x[i]) / b->r[i]));
    return Magnitude::exact(m);
  }
  if (auto* c = std::get_if<CrossPolytope>(&d)) {
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += abs(x[i]) * c->r[i];
    return Magnitude::exact(s);
  }
  if (auto* ball = std::get_if<Ball>(&d)) return Magnitude::sqrt_of(dot(x, x) / (ball->radius * ball->radius));
  if (auto* h = std::get_if<HPolytope>(&d)) {
    Rat m = 0;
    for (std::size_t i = 0; i < h->a.rows(); ++i) {
      if (h->b[i] <= 0) fail(ErrorCode::OriginNotInterior, "origin is not interior to the H-polytope");
      Rat s = 0;
      for (std::size_t j = 0; j < x.size(); ++j) s += h->a(i, j) * x[j];
      m = std::max(m, Rat(s / h->b[i]));
    }
    return Magnitude::exact(m);
  }
  std::vector<RatVec> v = k.body().vertices();
  if (k.dim() <= kMaxHullDim) {
    Rat m = 0;
    for (const auto& f : hull_facets(v)) {
      Rat s = 0;
      for (std::size_t j = 0; j < x.size(); ++j) s += f.normal[j] * x[j];
      m = std::max(m, Rat(s / f.offset));
    }
    return Magnitude::exact(m);
  }
  return Magnitude::exact(lp_gauge_v(v, x));
}

Rat support(const Body& k, const RatVec& u) {
  const auto& d = k.data();
  if (u.size() != k.dim()) fail(ErrorCode::DimensionMismatch, "direction has wrong dimension");
  if (k.is_ball()) fail(ErrorCode::UnsupportedRepresentation, "ball support values are irrational in general");
  if (auto* b = std::get_if<Box>(&d)) {
    Rat s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) s += abs(u[i]) * b->r[i];
    return s;
  }
  if (auto* c = std::get_if<CrossPolytope>(&d)) {
    Rat m = 0;
    for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, Rat(abs(u[i]) / c->r[i]));
    return m;
  }
  if (auto* h = std::get_if<HPolytope>(&d); h && k.dim() > kMaxHullDim) return lp_support_h(h->a, h->b, u);
  std::vector<RatVec> v = k.vertices();
  Rat m = dot(v[0], u);
  for (const auto& p : v) m = std::max(m, dot(p, u));
  return m;
}

Rat volume(const Body& k) {
  const auto& d = k.data();
  const std::size_t n = k.dim();
  if (k.is_ball()) fail(ErrorCode::UnsupportedRepresentation, "ball volume is irrational");
  if (auto* b = std::get_if<Box>(&d)) {
    Rat v = 1;
    for (const auto& x : b->r) v *= 2 * x;
    return v;
  }
  if (auto* c = std::get_if<CrossPolytope>(&d)) {
    Rat v = Rat(factorial(n));
    v = 1 / v;
    for (const auto& x : c->r) v *= 2 / x;
    return v;
  }
  if (auto* s = std::get_if<Simplex>(&d)) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(j, i) = s->vertices[i + 1][j] - s->vertices[0][j];
    return abs(determinant(m)) / Rat(factorial(n));
  }
  if (n > kMaxHullDim) fail(ErrorCode::DimensionTooLarge, "generic polytope volume is limited to dimension 4");
  return hull_volume(k.vertices());
}

Magnitude inradius_lb(const SymBody& k) {
  const auto& d = k.body().data();
  if (auto* b = std::get_if<Box>(&d)) return Magnitude::exact(*std::min_element(b->r.begin(), b->r.end()));
  if (auto* c = std::get_if<CrossPolytope>(&d)) {
    Rat s = 0;
    for (const auto& x : c->r) s += x * x;
    return Magnitude::sqrt_of(1 / s);
  }
  if (auto* ball = std::get_if<Ball>(&d)) return Magnitude::exact(ball->radius);
  HRep h = h_representation(k.body());
  std::optional<Rat> best;
  for (std::size_t i = 0; i < h.a.rows(); ++i) {
    Rat nn = 0;
    for (std::size_t j = 0; j < h.a.cols(); ++j) nn += h.a(i, j) * h.a(i, j);
    if (nn == 0) continue;
    Rat dist2 = h.b[i] * h.b[i] / nn;
    if (h.b[i] <= 0) fail(ErrorCode::OriginNotInterior, "origin is not interior to the body");
    if (!best || dist2 < *best) best = dist2;
  }
  return Magnitude::sqrt_of(*best);
}

HRep h_representation(const Body& k) {
  const auto& d = k.data();
  const std::size_t n = k.dim();
  if (k.is_ball()) fail(ErrorCode::UnsupportedRepresentation, "a ball has no H-representation");
  if (auto* h = std::get_if<HPolytope>(&d)) return {h->a, h->b};
  if (auto* b = std::get_if<Box>(&d)) {
    HRep r{RatMatrix(2 * n, n), RatVec(2 * n)};
    for (std::size_t i = 0; i < n; ++i) {
      r.a(2 * i, i) = 1;
      r.a(2 * i + 1, i) = -1;
      r.b[2 * i] = r.b[2 * i + 1] = b->r[i];
    }
    return r;
  }
  if (auto* c = std::get_if<CrossPolytope>(&d)) {
    if (n > 20) fail(ErrorCode::DimensionTooLarge, "crosspolytope facet listing limited to dimension 20");
    const std::size_t m = std::size_t{1} << n;
    HRep r{RatMatrix(m, n), RatVec(m, Rat(1))};
    for (std::size_t mask = 0; mask < m; ++mask)
      for (std::size_t i = 0; i < n; ++i) r.a(mask, i) = (mask >> i & 1) ? Rat(-c->r[i]) : c->r[i];
    return r;
  }
  std::vector<RatVec> rows;
  RatVec offs;
  if (auto* s = std::get_if<Simplex>(&d)) {
    rows = simplex_facet_rows(s->vertices, offs);
  } else {
    if (n > kMaxHullDim) fail(ErrorCode::DimensionTooLarge, "facet enumeration is limited to dimension 4");
    for (const auto& f : hull_facets(k.vertices())) {
      rows.push_back(to_rat(f.normal));
      offs.push_back(f.offset);
    }
  }
  HRep r{RatMatrix(rows.size(), n), offs};
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) r.a(i, j) = rows[i][j];
  return r;
}

bool contains(const Body& k, const RatVec& x) {
  if (x.size() != k.dim()) fail(ErrorCode::DimensionMismatch, "point has wrong dimension");
  if (auto* ball = std::get_if<Ball>(&k.data())) return dot(x, x) <= ball->radius * ball->radius;
  HRep h = h_representation(k);
  for (std::size_t i = 0; i < h.a.rows(); ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += h.a(i, j) * x[j];
    if (s > h.b[i]) return false;
  }
  return true;
}

SymBody project_body(const SymBody& k, const Lattice& lat, const LatticePlane& plane, const ProjectedLattice& proj) {
  const std::size_t n = lat.dim(), kk = plane.rank;
  if (k.dim() != n) fail(ErrorCode::DimensionMismatch, "body and lattice dimensions differ");
  if (auto* ball = std::get_if<Ball>(&k.body().data())) return SymBody(Body::ball(ball->radius, n - kk));
  if (lat.kind() != LatticeKind::Basis) fail(ErrorCode::IncompatibleKinds, "polytope projection needs a basis lattice");
  RatMatrix binv = inverse(lat.basis());
  RatMatrix chart = to_rat(proj.completion.inverse) * binv;
  std::vector<RatVec> pts;
  for (const auto& v : k.body().vertices()) {
    RatVec z = chart * v;
    pts.emplace_back(z.begin() + static_cast<std::ptrdiff_t>(kk), z.end());
  }
  return SymBody(Body::vpolytope(reduce_points(pts)));
}

}  // namespace packmin
