#include "packmin/hull.hpp"

#include "packmin/lp.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace packmin {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "bodies", msg); }

std::size_t dim_of(const std::vector<RatVec>& pts) {
  if (pts.empty()) fail(ErrorCode::RankDeficient, "empty point set");
  return pts[0].size();
}

void check_dim(std::size_t d) {
  if (d > kMaxHullDim) fail(ErrorCode::DimensionTooLarge, "hull computations are limited to dimension 4");
}

// Calls f on every k-subset of {0..n-1} (as an index vector); f returns false to stop.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

Rat dot_int(const IntVec& a, const RatVec& x) {
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

}  // namespace

std::vector<RatVec> unique_points(const std::vector<RatVec>& pts) {
  std::vector<RatVec> out;
  std::set<RatVec> seen;
  for (const auto& p : pts)
    if (seen.insert(p).second) out.push_back(p);
  return out;
}

std::vector<Facet> hull_facets(const std::vector<RatVec>& input) {
  const std::size_t d = dim_of(input);
  check_dim(d);
  std::vector<RatVec> pts = unique_points(input);
  {
    RatMatrix diff(pts.size() - 1, d);
    for (std::size_t i = 1; i < pts.size(); ++i)
      for (std::size_t j = 0; j < d; ++j) diff(i - 1, j) = pts[i][j] - pts[0][j];
    if (pts.size() <= d || rank(diff) < d) fail(ErrorCode::RankDeficient, "points are not full-dimensional");
  }
  if (d == 1) {
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
    return {Facet{IntVec{Int(1)}, (*hi)[0]}, Facet{IntVec{Int(-1)}, -(*lo)[0]}};
  }
  std::map<std::pair<IntVec, Rat>, bool> found;
  std::vector<Facet> out;
  for_each_subset(pts.size(), d, [&](const std::vector<std::size_t>& idx) {
    RatMatrix m(d - 1, d);
    for (std::size_t r = 1; r < d; ++r)
      for (std::size_t j = 0; j < d; ++j) m(r - 1, j) = pts[idx[r]][j] - pts[idx[0]][j];
    IntMatrix ker = kernel_basis(m);
    if (ker.cols() != 1) return;
    IntVec normal = ker.col(0);
    Rat off = dot_int(normal, pts[idx[0]]);
    bool above = false, below = false;
    for (const auto& p : pts) {
      Rat v = dot_int(normal, p);
      if (v > off) above = true;
      if (v < off) below = true;
      if (above && below) return;
    }
    if (above) {
      for (auto& x : normal) x = -x;
      off = -off;
    }
    if (found.emplace(std::make_pair(normal, off), true).second) out.push_back(Facet{normal, off});
  });
  std::sort(out.begin(), out.end(), [](const Facet& a, const Facet& b) {
    return a.normal != b.normal ? a.normal < b.normal : a.offset < b.offset;
  });
  return out;
}

std::vector<RatVec> hull_vertices(const std::vector<RatVec>& pts, const std::vector<Facet>& facets) {
  const std::size_t d = dim_of(pts);
  std::vector<RatVec> out;
  for (const auto& p : unique_points(pts)) {
    std::vector<RatVec> active;
    for (const auto& f : facets)
      if (dot_int(f.normal, p) == f.offset) active.push_back(to_rat(f.normal));
    if (active.size() < d) continue;
    RatMatrix m(active.size(), d);
    for (std::size_t i = 0; i < active.size(); ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) = active[i][j];
    if (rank(m) == d) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<RatVec> hull_vertices(const std::vector<RatVec>& pts) { return hull_vertices(pts, hull_facets(pts)); }

Rat hull_volume(const std::vector<RatVec>& input) {
  const std::size_t d = dim_of(input);
  check_dim(d);
  std::vector<RatVec> pts = unique_points(input);
  if (d == 1) {
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end());
    return (*hi)[0] - (*lo)[0];
  }
  std::vector<Facet> facets = hull_facets(pts);
  std::vector<RatVec> verts = hull_vertices(pts, facets);
  RatVec c(d);
  for (const auto& v : verts)
    for (std::size_t j = 0; j < d; ++j) c[j] += v[j];
  for (auto& x : c) x /= static_cast<long>(verts.size());

  Rat total = 0;
  for (const auto& f : facets) {
    std::vector<RatVec> on;
    for (const auto& v : verts)
      if (dot_int(f.normal, v) == f.offset) on.push_back(v);
    // integer basis of the facet direction and chart coordinates of its vertices
    RatMatrix row(1, d);
    for (std::size_t j = 0; j < d; ++j) row(0, j) = Rat(f.normal[j]);
    RatMatrix basis = to_rat(kernel_basis(row));
    RatMatrix gram_inv = inverse(basis.transpose() * basis);
    RatMatrix proj = gram_inv * basis.transpose();
    std::vector<RatVec> chart;
    for (const auto& v : on) {
      RatVec diff(d);
      for (std::size_t j = 0; j < d; ++j) diff[j] = v[j] - on[0][j];
      chart.push_back(proj * diff);
    }
    Rat facet_vol = hull_volume(chart);
    RatMatrix full(d, d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j + 1 < d; ++j) full(i, j) = basis(i, j);
      full(i, d - 1) = c[i] - on[0][i];
    }
    total += facet_vol * abs(determinant(full)) / static_cast<long>(d);
  }
  return total;
}

std::vector<RatVec> h_to_v(const RatMatrix& a, const RatVec& b) {
  const std::size_t d = a.cols();
  check_dim(d);
  // bounded iff the rows positively span R^d
  RatMatrix at = a.transpose();
  RatVec zero(a.rows());
  for (std::size_t j = 0; j < 2 * d; ++j) {
    RatVec u(d);
    u[j / 2] = (j % 2) ? -1 : 1;
    if (lp_minimize(at, u, zero).status != LpStatus::Optimal)
      fail(ErrorCode::UnsupportedRepresentation, "H-polytope is unbounded");
  }
  std::vector<RatVec> out;
  for_each_subset(a.rows(), d, [&](const std::vector<std::size_t>& idx) {
    RatMatrix m(d, d);
    RatVec rhs(d);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) m(i, j) = a(idx[i], j);
      rhs[i] = b[idx[i]];
    }
    if (determinant(m) == 0) return;
    RatVec x = solve(m, rhs);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      Rat s = 0;
      for (std::size_t j = 0; j < d; ++j) s += a(i, j) * x[j];
      if (s > b[i]) return;
    }
    out.push_back(std::move(x));
  });
  out = unique_points(out);
  std::sort(out.begin(), out.end());
  if (out.size() <= d) fail(ErrorCode::UnsupportedRepresentation, "H-polytope is empty, unbounded or lower-dimensional");
  RatMatrix diff(out.size() - 1, d);
  for (std::size_t i = 1; i < out.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) diff(i - 1, j) = out[i][j] - out[0][j];
  if (rank(diff) < d) fail(ErrorCode::UnsupportedRepresentation, "H-polytope is lower-dimensional");
  return out;
}

}  // namespace packmin
