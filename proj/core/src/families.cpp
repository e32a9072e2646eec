#include "packmin/families.hpp"

namespace packmin {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "families", msg); }

Rat as_rat(std::size_t v) { return Rat(static_cast<unsigned long>(v)); }

}  // namespace

std::string equiangular_violation(const EquiangularParams& p) {
  if (p.n < 1) return "dimension must be positive";
  if (p.a <= 0) return "a must be positive";
  const Rat n = as_rat(p.n);
  if (p.a >= 2 * p.b && p.b >= 0) return {};
  if (p.a >= -n * p.b && -n * p.b >= 0) return {};
  if (p.b >= 0) return "a >= 2b fails (a = " + to_string(p.a) + ", 2b = " + to_string(2 * p.b) + ")";
  return "a >= -n*b fails (a = " + to_string(p.a) + ", -n*b = " + to_string(-n * p.b) + ")";
}

bool is_valid(const EquiangularParams& p) { return equiangular_violation(p).empty(); }

RatMatrix equiangular_gram(std::size_t n, const Rat& a, const Rat& b) {
  RatMatrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = i == j ? a : b;
  return g;
}

Lattice make_equiangular(const EquiangularParams& p) {
  std::string why = equiangular_violation(p);
  if (!why.empty()) fail(ErrorCode::InvalidParams, why);
  return Lattice::from_gram(equiangular_gram(p.n, p.a, p.b));
}

DualParams dual_params(const EquiangularParams& p) {
  std::string why = equiangular_violation(p);
  if (!why.empty()) fail(ErrorCode::InvalidParams, why);
  const Rat n = as_rat(p.n);
  DualParams d;
  d.a_prime = p.a + (n - 2) * p.b;
  d.b_prime = -p.b;
  Rat den = p.a * d.a_prime + (n - 1) * p.b * d.b_prime;
  d.a_bar = d.a_prime / den;
  d.b_bar = d.b_prime / den;
  return d;
}

Rat projected_minima_formula(const EquiangularParams& p, std::size_t j) {
  if (!is_valid(p)) fail(ErrorCode::InvalidParams, equiangular_violation(p));
  if (j < 1 || j + 1 > p.n) fail(ErrorCode::RankOutOfRange, "projection rank must lie in [1, n-1]");
  const Rat jj = as_rat(j);
  return (p.a - p.b) * (p.a + p.b * jj) / (p.a + p.b * (jj - 1));
}

Rat rho_lower_bound_formula(const EquiangularParams& p, std::size_t j) {
  if (!is_valid(p)) fail(ErrorCode::InvalidParams, equiangular_violation(p));
  if (j < 1 || j > p.n) fail(ErrorCode::RankOutOfRange, "index must lie in [1, n]");
  const Rat m = as_rat(p.n - j);
  return make_rat(1, 4) * (p.a - p.b) * (p.a + p.b * m) / (p.a + p.b * (m - 1));
}

Lattice simplex_lattice(std::size_t n) { return make_equiangular({n, Rat(1), make_rat(1, 2)}); }

Rat conjectured_simplex_rho(std::size_t n, std::size_t j) {
  if (j < 1 || j > n) fail(ErrorCode::RankOutOfRange, "index must lie in [1, n]");
  const Rat m = as_rat(n - j);
  return make_rat(1, 4) * (m + 2) / (2 * (m + 1));
}

SimplexHeights simplex_heights(std::size_t n) {
  if (n < 1) fail(ErrorCode::InvalidParams, "dimension must be positive");
  SimplexHeights h;
  for (std::size_t r = 0; r < n; ++r) {
    Rat v = as_rat(n + 1) / (2 * as_rat(r + 1) * as_rat(n - r));
    if (r == 0 || v < h.min) h.min = v;
    h.squared.push_back(v);
  }
  return h;
}

bool simplex_polar_inradius_ok(std::size_t n) { return simplex_heights(n).min >= make_rat(1, 4); }

std::vector<IntVec> simplex_lattice_unit_vectors(std::size_t n) {
  if (n < 1) fail(ErrorCode::InvalidParams, "dimension must be positive");
  std::vector<IntVec> out;
  for (std::size_t k = 0; k < n; ++k) {
    IntVec v(n, Int(0));
    v[k] = 1;
    out.push_back(v);
    v[k] = -1;
    out.push_back(v);
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l) {
      IntVec v(n, Int(0));
      v[k] = 1;
      v[l] = -1;
      out.push_back(v);
      v[k] = -1;
      v[l] = 1;
      out.push_back(v);
    }
  return out;
}

bool pair_sum_inequality(const IntVec& beta) {
  Int pairs = 0, squares = 0;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    squares += beta[k] * beta[k];
    for (std::size_t l = k + 1; l < beta.size(); ++l) pairs += beta[k] * beta[l];
  }
  return 2 * pairs <= Int(static_cast<unsigned long>(beta.size())) * (squares - 1);
}

}  // namespace packmin
