#include "packmin/lattice.hpp"

#include <algorithm>
#include <sstream>

namespace packmin {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "lattices", msg); }

}  // namespace

Lattice Lattice::from_basis(RatMatrix basis) {
  if (!basis.square() || basis.rows() == 0) fail(ErrorCode::DimensionMismatch, "basis must be square and nonempty");
  if (determinant(basis) == 0) fail(ErrorCode::SingularMatrix, "basis is singular");
  Lattice l;
  l.kind_ = LatticeKind::Basis;
  l.gram_ = basis.transpose() * basis;
  l.basis_ = std::move(basis);
  return l;
}

Lattice Lattice::from_gram(RatMatrix gram) {
  if (!gram.square() || gram.rows() == 0) fail(ErrorCode::DimensionMismatch, "Gram matrix must be square and nonempty");
  if (!is_symmetric(gram)) fail(ErrorCode::NotSymmetric, "Gram matrix is not symmetric");
  if (!is_positive_definite(gram)) fail(ErrorCode::NotPositiveDefinite, "Gram matrix is not positive definite");
  Lattice l;
  l.kind_ = LatticeKind::Gram;
  l.gram_ = std::move(gram);
  return l;
}

Lattice Lattice::standard(std::size_t n) { return from_basis(RatMatrix::identity(n)); }

const RatMatrix& Lattice::basis() const {
  if (kind_ != LatticeKind::Basis) fail(ErrorCode::IncompatibleKinds, "Gram-form lattice has no embedded basis");
  return basis_;
}

Lattice dual(const Lattice& lat) {
  if (lat.kind() == LatticeKind::Basis) return Lattice::from_basis(inverse(lat.basis()).transpose());
  return Lattice::from_gram(inverse(lat.gram()));
}

Rat det_squared(const Lattice& lat) {
  if (lat.kind() == LatticeKind::Basis) {
    Rat d = determinant(lat.basis());
    return d * d;
  }
  return determinant(lat.gram());
}

Lattice scaled(const Lattice& lat, const Rat& c) {
  if (c <= 0) fail(ErrorCode::InvalidParams, "scale factor must be positive");
  if (lat.kind() == LatticeKind::Basis) return Lattice::from_basis(packmin::scaled(lat.basis(), c));
  return Lattice::from_gram(packmin::scaled(lat.gram(), c * c));
}

IntVec LatticePlane::key() const {
  IntVec k;
  k.reserve(basis.rows() * basis.cols());
  for (std::size_t j = 0; j < basis.cols(); ++j)
    for (std::size_t i = 0; i < basis.rows(); ++i) k.push_back(basis(i, j));
  return k;
}

std::string LatticePlane::key_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t j = 0; j < basis.cols(); ++j) {
    if (j) os << ',';
    os << '(';
    for (std::size_t i = 0; i < basis.rows(); ++i) {
      if (i) os << ',';
      os << basis(i, j).get_str();
    }
    os << ')';
  }
  os << ']';
  return os.str();
}

bool key_less(const LatticePlane& a, const LatticePlane& b) { return a.key() < b.key(); }

IntMatrix saturated_basis(const IntMatrix& vectors) {
  const std::size_t n = vectors.rows(), k = vectors.cols();
  if (rank(vectors) != k) fail(ErrorCode::RankDeficient, "plane generators are linearly dependent");
  if (k == 0) return IntMatrix(n, 0);
  // Z^n ∩ span(V) = kernel of a basis of V^⊥
  IntMatrix perp = kernel_basis(to_rat(vectors.transpose()));
  if (perp.cols() == 0) return hnf(IntMatrix::identity(n)).h;
  return kernel_basis(to_rat(perp.transpose()));
}

LatticePlane saturate(const RatMatrix& gram, const IntMatrix& vectors) {
  if (vectors.rows() != gram.rows()) fail(ErrorCode::DimensionMismatch, "plane generators have wrong length");
  LatticePlane p;
  p.basis = saturated_basis(vectors);
  p.rank = p.basis.cols();
  RatMatrix w = to_rat(p.basis);
  p.det_squared = determinant(w.transpose() * gram * w);
  return p;
}

LatticePlane saturate(const Lattice& lat, const IntMatrix& vectors) { return saturate(lat.gram(), vectors); }

Completion complete_basis(const IntMatrix& w) {
  const std::size_t n = w.rows(), k = w.cols();
  HnfResult r = hnf(w.transpose());
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (r.h(i, j) != (i == j ? 1 : 0)) fail(ErrorCode::RankDeficient, "plane basis is not saturated");
  // wᵀ·u = [I | 0]  ⇒  u⁻ᵀ has w as its leading columns
  Completion c;
  c.inverse = r.u.transpose();
  RatMatrix inv = inverse(to_rat(c.inverse));
  c.full = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c.full(i, j) = inv(i, j).get_num();
  return c;
}

ProjectedLattice project_along(const Lattice& lat, const LatticePlane& plane) {
  const std::size_t n = lat.dim(), k = plane.rank;
  if (k < 1 || k + 1 > n) fail(ErrorCode::RankOutOfRange, "plane rank must lie in [1, n-1]");
  ProjectedLattice p;
  p.k = k;
  p.completion = complete_basis(plane.basis);
  RatMatrix u = to_rat(p.completion.full);
  RatMatrix g = u.transpose() * lat.gram() * u;
  std::vector<std::size_t> pivot(k);
  for (std::size_t i = 0; i < k; ++i) pivot[i] = i;
  p.gram = schur_complement(g, pivot);
  if (lat.kind() == LatticeKind::Basis) {
    // ambient orthogonal projector onto L^⊥ applied to the trailing generators
    const RatMatrix& b = lat.basis();
    RatMatrix bw = b * to_rat(plane.basis);
    RatMatrix proj = RatMatrix::identity(n);
    RatMatrix corr = bw * inverse(bw.transpose() * bw) * bw.transpose();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) proj(i, j) -= corr(i, j);
    p.lift_map = proj * b * u.col_range(k, n - k);
  }
  return p;
}

IntMatrix lll_reduce(const RatMatrix& gram) {
  const std::size_t n = gram.rows();
  IntMatrix u = IntMatrix::identity(n);
  if (n <= 1) return u;
  const Rat delta = make_rat(3, 4);
  RatMatrix g = gram;  // Gram of the current basis
  std::vector<RatVec> mu(n, RatVec(n));
  RatVec bstar(n);
  auto gso = [&]() {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Rat s = g(i, j);
        for (std::size_t l = 0; l < j; ++l) s -= mu[j][l] * mu[i][l] * bstar[l];
        mu[i][j] = s / bstar[j];
      }
      Rat s = g(i, i);
      for (std::size_t l = 0; l < i; ++l) s -= mu[i][l] * mu[i][l] * bstar[l];
      bstar[i] = s;
    }
  };
  auto col_sub = [&](std::size_t dst, const Int& q, std::size_t src) {
    for (std::size_t i = 0; i < n; ++i) u(i, dst) -= q * u(i, src);
    // g ← Eᵀ g E with E = I − q e_src e_dstᵀ
    for (std::size_t i = 0; i < n; ++i) g(i, dst) -= q * g(i, src);
    for (std::size_t j = 0; j < n; ++j) g(dst, j) -= q * g(src, j);
  };
  gso();
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t jj = k; jj-- > 0;) {
      Int q = floor(mu[k][jj] + make_rat(1, 2));
      if (q == 0) continue;
      col_sub(k, q, jj);
      for (std::size_t l = 0; l < jj; ++l) mu[k][l] -= q * mu[jj][l];
      mu[k][jj] -= q;
    }
    if (bstar[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * bstar[k - 1]) {
      ++k;
    } else {
      for (std::size_t i = 0; i < n; ++i) std::swap(u(i, k), u(i, k - 1));
      for (std::size_t i = 0; i < n; ++i) std::swap(g(i, k), g(i, k - 1));
      for (std::size_t j = 0; j < n; ++j) std::swap(g(k, j), g(k - 1, j));
      gso();
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return u;
}

IntVec normalize_sign(IntVec v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

}  // namespace packmin
