#pragma once

// Independent reference computations used to check the library.

#include <optional>
#include <vector>

#include "packmin/body.hpp"
#include "packmin/lattice.hpp"
#include "packmin/magnitude.hpp"

namespace oracle {

using packmin::Int;
using packmin::IntMatrix;
using packmin::IntVec;
using packmin::Lattice;
using packmin::LatticePlane;
using packmin::Magnitude;
using packmin::Rat;
using packmin::RatMatrix;
using packmin::RatVec;

// All x ≠ 0 with xᵀGx <= bound, one per ± pair (first nonzero positive), by
// scanning the box |x_i| <= sqrt(bound·(G⁻¹)_ii).
std::vector<IntVec> short_vectors(const RatMatrix& gram, const Rat& bound);

// Smallest gauge of a nonzero lattice vector, by scanning the coordinate box
// certified by the circumscribed Euclidean ball. Ties go to the
// lexicographically smallest vector with first nonzero entry positive.
struct Shortest {
  Rat squared;
  IntVec x;
};
Shortest shortest_by_box(const packmin::SymBody& m, const Lattice& lat);

// ρ_i by listing every saturated plane spanned by vectors of A-length at most
// four times the generator cap (n <= 3, planes of rank 1 or n−1).
struct PlaneAnswer {
  Rat squared;
  IntVec key;
};
PlaneAnswer packing_by_planes(const packmin::Body& k, const Lattice& lat, std::size_t i);

// Elementary divisors via gcds of k×k minors.
std::vector<Int> elementary_divisors(const IntMatrix& m);

}  // namespace oracle
