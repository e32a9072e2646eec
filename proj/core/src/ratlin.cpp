#include "packmin/ratlin.hpp"

#include <algorithm>
#include <utility>

namespace packmin {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::UnsupportedRepresentation: return "UnsupportedRepresentation";
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::IncompatibleKinds: return "IncompatibleKinds";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "ratlin", msg); }

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Int parse_int(std::string_view s) {
  if (!is_integer_literal(s)) fail(ErrorCode::ParseError, "not an integer: '" + std::string(s) + "'");
  std::string str(s[0] == '+' ? s.substr(1) : s);
  return Int(str, 10);
}

}  // namespace

Rat make_rat(long num, long den) {
  if (den == 0) fail(ErrorCode::InvalidParams, "zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) fail(ErrorCode::InvalidParams, "zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat parse_rat(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int(text));
  Int num = parse_int(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
    fail(ErrorCode::ParseError, "signed denominator in '" + std::string(text) + "'");
  Int den = parse_int(den_text);
  if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return make_rat(num, den);
}

std::string to_string(const Rat& q) { return q.get_str(10); }
std::string to_string(const Int& z) { return z.get_str(10); }

Int floor(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Int ceil(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rat abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

Int isqrt_floor(const Rat& q) {
  if (q < 0) fail(ErrorCode::InvalidParams, "square root of negative rational");
  Int f = floor(q);
  Int r;
  mpz_sqrt(r.get_mpz_t(), f.get_mpz_t());
  return r;
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

RatVec to_rat(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

RatMatrix scaled(const RatMatrix& m, const Rat& s) {
  RatMatrix r = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) *= s;
  return r;
}

Rat dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "dot product length");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rat quadratic_form(const RatMatrix& g, const IntVec& x) {
  Rat s = 0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    Rat row = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (x[j] != 0) row += g(i, j) * x[j];
    s += row * x[i];
  }
  return s;
}

Rat quadratic_form(const RatMatrix& g, const RatVec& x) {
  Rat s = 0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    Rat row = 0;
    for (std::size_t j = 0; j < n; ++j) row += g(i, j) * x[j];
    s += row * x[i];
  }
  return s;
}

bool is_symmetric(const RatMatrix& m) {
  if (!m.square()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

namespace {

// Row echelon form in place; returns rank and accumulates the determinant sign/product.
std::size_t eliminate(RatMatrix& a, Rat* det) {
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  Rat d = 1;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) {
      d = 0;
      continue;
    }
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
      d = -d;
    }
    d *= a(r, c);
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < cols; ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  if (det) *det = (r == rows && rows == cols) ? d : Rat(0);
  return r;
}

}  // namespace

Rat determinant(const RatMatrix& m) {
  if (!m.square()) fail(ErrorCode::DimensionMismatch, "determinant of non-square matrix");
  if (m.rows() == 0) return 1;
  RatMatrix a = m;
  Rat d;
  eliminate(a, &d);
  return d;
}

Int determinant(const IntMatrix& m) {
  Rat d = determinant(to_rat(m));
  return d.get_num();
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return eliminate(a, nullptr);
}

std::size_t rank(const IntMatrix& m) { return rank(to_rat(m)); }

RatMatrix inverse(const RatMatrix& m) {
  if (!m.square()) fail(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) fail(ErrorCode::SingularMatrix, "matrix is singular");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    Rat piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RatVec solve(const RatMatrix& m, const RatVec& b) { return inverse(m) * b; }

namespace {

void col_swap(IntMatrix& a, std::size_t p, std::size_t q) {
  for (std::size_t i = 0; i < a.rows(); ++i) std::swap(a(i, p), a(i, q));
}

void row_swap(IntMatrix& a, std::size_t p, std::size_t q) {
  for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(q, j));
}

// (col_p, col_q) <- (s*col_p + t*col_q, u*col_p + v*col_q)
void col_combine(IntMatrix& a, std::size_t p, std::size_t q, const Int& s, const Int& t, const Int& u,
                 const Int& v) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Int x = a(i, p), y = a(i, q);
    a(i, p) = s * x + t * y;
    a(i, q) = u * x + v * y;
  }
}

void col_axpy(IntMatrix& a, std::size_t dst, const Int& f, std::size_t src) {
  for (std::size_t i = 0; i < a.rows(); ++i) a(i, dst) += f * a(i, src);
}

void row_axpy(IntMatrix& a, std::size_t dst, const Int& f, std::size_t src) {
  for (std::size_t j = 0; j < a.cols(); ++j) a(dst, j) += f * a(src, j);
}

}  // namespace

HnfResult hnf(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix h = m;
  IntMatrix u = IntMatrix::identity(cols);
  std::size_t p = 0;
  for (std::size_t i = 0; i < rows && p < cols; ++i) {
    for (std::size_t j = p + 1; j < cols; ++j) {
      if (h(i, j) == 0) continue;
      if (h(i, p) == 0) {
        col_swap(h, p, j);
        col_swap(u, p, j);
        continue;
      }
      Int x = h(i, p), y = h(i, j), g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
      Int yg = -y / g, xg = x / g;
      col_combine(h, p, j, s, t, yg, xg);
      col_combine(u, p, j, s, t, yg, xg);
    }
    if (h(i, p) == 0) continue;
    if (h(i, p) < 0) {
      for (std::size_t r = 0; r < rows; ++r) h(r, p) = -h(r, p);
      for (std::size_t r = 0; r < cols; ++r) u(r, p) = -u(r, p);
    }
    for (std::size_t j = 0; j < p; ++j) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, j).get_mpz_t(), h(i, p).get_mpz_t());
      if (q == 0) continue;
      Int mq = -q;
      col_axpy(h, j, mq, p);
      col_axpy(u, j, mq, p);
    }
    ++p;
  }
  return {std::move(h), std::move(u), p};
}

SnfResult snf(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntMatrix s = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);
  const std::size_t diag = std::min(rows, cols);
  for (std::size_t t = 0; t < diag; ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block becomes the pivot.
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (s(i, j) != 0 && (pi == rows || abs(s(i, j)) < abs(s(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == rows) return {std::move(s), std::move(u), std::move(v)};
      if (pi != t) {
        row_swap(s, pi, t);
        row_swap(u, pi, t);
      }
      if (pj != t) {
        col_swap(s, pj, t);
        col_swap(v, pj, t);
      }
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (s(i, t) == 0) continue;
        Int q = s(i, t) / s(t, t);
        Int mq = -q;
        row_axpy(s, i, mq, t);
        row_axpy(u, i, mq, t);
        if (s(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (s(t, j) == 0) continue;
        Int q = s(t, j) / s(t, t);
        Int mq = -q;
        col_axpy(s, j, mq, t);
        col_axpy(v, j, mq, t);
        if (s(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      std::size_t bad = rows;
      for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (s(i, j) % s(t, t) != 0) {
            bad = i;
            break;
          }
      if (bad == rows) break;
      row_axpy(s, t, Int(1), bad);
      row_axpy(u, t, Int(1), bad);
    }
    if (s(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) s(t, j) = -s(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }
  return {std::move(s), std::move(u), std::move(v)};
}

LdltResult ldlt(const RatMatrix& g) {
  if (!is_symmetric(g)) fail(ErrorCode::NotPositiveDefinite, "matrix is not symmetric");
  const std::size_t n = g.rows();
  RatMatrix l = RatMatrix::identity(n);
  RatVec d(n);
  for (std::size_t j = 0; j < n; ++j) {
    Rat dj = g(j, j);
    for (std::size_t k = 0; k < j; ++k) dj -= l(j, k) * l(j, k) * d[k];
    if (dj <= 0) fail(ErrorCode::NotPositiveDefinite, "nonpositive pivot at index " + std::to_string(j));
    d[j] = dj;
    for (std::size_t i = j + 1; i < n; ++i) {
      Rat s = g(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k) * d[k];
      l(i, j) = s / dj;
    }
  }
  return {std::move(l), std::move(d)};
}

bool is_positive_definite(const RatMatrix& g) {
  try {
    ldlt(g);
    return true;
  } catch (const Error&) {
    return false;
  }
}

RatMatrix schur_complement(const RatMatrix& g, const std::vector<std::size_t>& pivot) {
  const std::size_t n = g.rows();
  std::vector<bool> in_pivot(n, false);
  for (std::size_t p : pivot) {
    if (p >= n) fail(ErrorCode::DimensionMismatch, "pivot index out of range");
    in_pivot[p] = true;
  }
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!in_pivot[i]) rest.push_back(i);
  std::vector<std::size_t> piv;
  for (std::size_t i = 0; i < n; ++i)
    if (in_pivot[i]) piv.push_back(i);

  RatMatrix gpp(piv.size(), piv.size());
  for (std::size_t a = 0; a < piv.size(); ++a)
    for (std::size_t b = 0; b < piv.size(); ++b) gpp(a, b) = g(piv[a], piv[b]);
  RatMatrix inv = inverse(gpp);

  RatMatrix out(rest.size(), rest.size());
  for (std::size_t a = 0; a < rest.size(); ++a)
    for (std::size_t b = 0; b < rest.size(); ++b) {
      Rat s = g(rest[a], rest[b]);
      for (std::size_t p = 0; p < piv.size(); ++p) {
        if (g(rest[a], piv[p]) == 0) continue;
        for (std::size_t q = 0; q < piv.size(); ++q) s -= g(rest[a], piv[p]) * inv(p, q) * g(piv[q], rest[b]);
      }
      out(a, b) = s;
    }
  return out;
}

IntMatrix clear_denominators_rows(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Int l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rat x = m(i, j) * l;
      out(i, j) = x.get_num();
    }
  }
  return out;
}

Int content(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntVec primitive_direction(const RatVec& v) {
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat x = v[i] * l;
    out[i] = x.get_num();
  }
  Int g = content(out);
  if (g == 0) fail(ErrorCode::InvalidParams, "primitive direction of zero vector");
  for (auto& x : out) x /= g;
  return out;
}

IntMatrix kernel_basis(const RatMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return IntMatrix::identity(n);
  HnfResult r = hnf(clear_denominators_rows(m));
  const std::size_t dim = n - r.rank;
  if (dim == 0) return IntMatrix(n, 0);
  IntMatrix k = r.u.col_range(r.rank, dim);
  HnfResult canon = hnf(k);
  return canon.h.col_range(0, dim);
}

}  // namespace packmin
