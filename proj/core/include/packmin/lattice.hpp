#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "packmin/options.hpp"
#include "packmin/ratlin.hpp"

namespace packmin {

enum class LatticeKind { Basis, Gram };

// A full-rank lattice, either embedded by a rational basis (columns) or given
// as Z^n with a positive definite rational quadratic form.
class Lattice {
 public:
  static Lattice from_basis(RatMatrix basis);
  static Lattice from_gram(RatMatrix gram);
  static Lattice standard(std::size_t n);

  LatticeKind kind() const noexcept { return kind_; }
  std::size_t dim() const noexcept { return gram_.rows(); }
  // Throws IncompatibleKinds for Gram-form lattices.
  const RatMatrix& basis() const;
  const RatMatrix& gram() const noexcept { return gram_; }

  friend bool operator==(const Lattice& a, const Lattice& b) {
    return a.kind_ == b.kind_ && a.basis_ == b.basis_ && a.gram_ == b.gram_;
  }

 private:
  LatticeKind kind_ = LatticeKind::Gram;
  RatMatrix basis_;
  RatMatrix gram_;
};

Lattice dual(const Lattice& lat);
Rat det_squared(const Lattice& lat);
// c·Λ for rational c > 0.
Lattice scaled(const Lattice& lat, const Rat& c);

// Saturated sublattice Λ ∩ span, stored by an HNF-canonical integer basis.
struct LatticePlane {
  IntMatrix basis;  // n × k, columns in lattice coordinates
  std::size_t rank = 0;
  Rat det_squared;  // Gram determinant of the basis

  // Column-major entries; the lexicographic order on keys is the tie-break order.
  IntVec key() const;
  std::string key_string() const;
};

bool key_less(const LatticePlane& a, const LatticePlane& b);

// Throws RankDeficient if the columns are dependent.
LatticePlane saturate(const Lattice& lat, const IntMatrix& vectors);
LatticePlane saturate(const RatMatrix& gram, const IntMatrix& vectors);
// Saturated HNF basis of Z^n ∩ span(vectors).
IntMatrix saturated_basis(const IntMatrix& vectors);

// Unimodular completion: first k columns equal the saturated basis w.
struct Completion {
  IntMatrix full;     // n × n, unimodular
  IntMatrix inverse;  // full⁻¹ (integer)
};
Completion complete_basis(const IntMatrix& w);

struct ProjectedLattice {
  RatMatrix gram;      // Gram form of Λ|L^⊥ on the projected generators
  RatMatrix lift_map;  // (n × (n−k)) projected coordinates → ambient, Basis kind only
  Completion completion;
  std::size_t k = 0;
};
// Throws RankOutOfRange unless 1 <= rank(L) <= n-1.
ProjectedLattice project_along(const Lattice& lat, const LatticePlane& plane);

// Exact LLL (δ = 3/4) on a Gram matrix; returns the unimodular transform
// whose columns are the reduced basis in the original coordinates.
IntMatrix lll_reduce(const RatMatrix& gram);

// Enumeration of {x ≠ 0 : xᵀGx <= bound} up to sign. The visitor receives each
// vector (last nonzero coordinate positive) with its norm and may lower the
// bound by writing to it; returning false aborts the search.
using ShortVectorVisitor = std::function<bool(const IntVec&, const Rat& norm, Rat& bound)>;
void enumerate_with(const RatMatrix& gram, Rat bound, Budget& budget, const ShortVectorVisitor& visit);

// Sorted by (norm, lexicographic), first nonzero coordinate positive.
std::vector<IntVec> enumerate_short_vectors(const RatMatrix& gram, const Rat& bound, Budget& budget);
std::vector<IntVec> enumerate_short_vectors(const Lattice& lat, const Rat& bound, Budget& budget);
std::vector<IntVec> enumerate_short_vectors(const Lattice& lat, const Rat& bound);

// Flip sign so that the first nonzero coordinate is positive.
IntVec normalize_sign(IntVec v);

}  // namespace packmin
