#pragma once

// Closed forms for boxes, equiangular lattices and the simplex lattice.

#include <string>
#include <vector>

#include "packmin/lattice.hpp"

namespace packmin {

// Gram form with diagonal a and off-diagonal b in dimension n.
struct EquiangularParams {
  std::size_t n = 0;
  Rat a;
  Rat b;
};

// Empty when valid: a >= 2b >= 0 or a >= −n·b >= 0 (and a > 0).
std::string equiangular_violation(const EquiangularParams& p);
bool is_valid(const EquiangularParams& p);

RatMatrix equiangular_gram(std::size_t n, const Rat& a, const Rat& b);
// Throws InvalidParams naming the failed condition.
Lattice make_equiangular(const EquiangularParams& p);

struct DualParams {
  Rat a_bar, b_bar;      // inverse Gram is equiangular with these entries
  Rat a_prime, b_prime;  // a + (n−2)b and −b
};
DualParams dual_params(const EquiangularParams& p);

// Squared minimum of the projection along the span of the first j generators.
Rat projected_minima_formula(const EquiangularParams& p, std::size_t j);
// Squared lower bound on ρ_j of the unit ball.
Rat rho_lower_bound_formula(const EquiangularParams& p, std::size_t j);

// The lattice generated by the edge directions of a regular simplex (a = 1, b = 1/2).
Lattice simplex_lattice(std::size_t n);
// Squared value conjectured for ρ_j of the unit ball on the simplex lattice.
Rat conjectured_simplex_rho(std::size_t n, std::size_t j);

struct SimplexHeights {
  std::vector<Rat> squared;  // h_r² for r = 0..n−1
  Rat min;                   // squared inradius of the simplex difference body
};
SimplexHeights simplex_heights(std::size_t n);
// Polar of the simplex difference body has inradius at least 1/2.
bool simplex_polar_inradius_ok(std::size_t n);

// ±generators and ±differences of generators (n² + n vectors).
std::vector<IntVec> simplex_lattice_unit_vectors(std::size_t n);

// 2·Σ_{k<l} β_k β_l <= n·(Σ β_k² − 1).
bool pair_sum_inequality(const IntVec& beta);

}  // namespace packmin
