#include "packmin/lp.hpp"

#include <optional>

namespace packmin {

namespace {

struct Tableau {
  // rows 0..m-1 are constraints, row m is the objective (reduced costs, -value in rhs)
  std::size_t m = 0, cols = 0;  // cols excludes the rhs column
  std::vector<RatVec> t;
  std::vector<std::size_t> basis;

  Rat& rhs(std::size_t i) { return t[i][cols]; }

  void pivot(std::size_t r, std::size_t c) {
    Rat p = t[r][c];
    for (auto& x : t[r]) x /= p;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == r || t[i][c] == 0) continue;
      Rat f = t[i][c];
      for (std::size_t j = 0; j <= cols; ++j)
        if (t[r][j] != 0) t[i][j] -= f * t[r][j];
    }
    basis[r] = c;
  }

  // Runs Bland's rule over columns [0, allowed). Returns false when unbounded.
  bool run(std::size_t allowed) {
    for (;;) {
      std::optional<std::size_t> enter;
      for (std::size_t j = 0; j < allowed; ++j)
        if (t[m][j] < 0) {
          enter = j;
          break;
        }
      if (!enter) return true;
      std::optional<std::size_t> leave;
      Rat best;
      for (std::size_t i = 0; i < m; ++i) {
        if (t[i][*enter] <= 0) continue;
        Rat ratio = t[i][cols] / t[i][*enter];
        if (!leave || ratio < best || (ratio == best && basis[i] < basis[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave) return false;
      pivot(*leave, *enter);
    }
  }
};

}  // namespace

LpResult lp_minimize(const RatMatrix& a, const RatVec& b, const RatVec& c) {
  const std::size_t m = a.rows(), n = a.cols();
  if (b.size() != m || c.size() != n) throw Error(ErrorCode::DimensionMismatch, "lp", "lp shape mismatch");

  Tableau tb;
  tb.m = m;
  tb.cols = n + m;
  tb.t.assign(m + 1, RatVec(n + m + 1));
  tb.basis.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = b[i] < 0;
    for (std::size_t j = 0; j < n; ++j) tb.t[i][j] = flip ? Rat(-a(i, j)) : a(i, j);
    tb.t[i][n + i] = 1;
    tb.t[i][n + m] = flip ? Rat(-b[i]) : b[i];
    tb.basis[i] = n + i;
  }
  // phase one objective: sum of artificials, expressed in nonbasic terms
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) tb.t[m][j] -= tb.t[i][j];
  for (std::size_t i = 0; i < m; ++i) tb.t[m][n + m] -= tb.t[i][n + m];

  tb.run(n);
  LpResult res;
  if (tb.t[m][n + m] != 0) {
    res.status = LpStatus::Infeasible;
    return res;
  }
  // drive artificials out of the basis; rows where that fails are redundant
  for (std::size_t i = 0; i < tb.m; ++i) {
    if (tb.basis[i] < n) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (tb.t[i][j] != 0) {
        tb.pivot(i, j);
        break;
      }
  }
  for (std::size_t i = 0; i < tb.m;) {
    if (tb.basis[i] >= n) {
      tb.t.erase(tb.t.begin() + static_cast<std::ptrdiff_t>(i));
      tb.basis.erase(tb.basis.begin() + static_cast<std::ptrdiff_t>(i));
      --tb.m;
    } else {
      ++i;
    }
  }
  // phase two objective
  RatVec& obj = tb.t[tb.m];
  for (auto& x : obj) x = 0;
  for (std::size_t j = 0; j < n; ++j) obj[j] = c[j];
  for (std::size_t i = 0; i < tb.m; ++i) {
    Rat cb = c[tb.basis[i]];
    if (cb == 0) continue;
    for (std::size_t j = 0; j <= tb.cols; ++j) obj[j] -= cb * tb.t[i][j];
  }
  if (!tb.run(n)) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimal;
  res.value = -obj[tb.cols];
  res.x.assign(n, Rat(0));
  for (std::size_t i = 0; i < tb.m; ++i) res.x[tb.basis[i]] = tb.t[i][tb.cols];
  return res;
}

}  // namespace packmin
