#pragma once

// Symmetric bodies expressed in integer lattice coordinates. Every lattice is
// Z^m here; all minima questions reduce to gauges of integer vectors.

#include <optional>
#include <vector>

#include "packmin/body.hpp"
#include "packmin/lattice.hpp"
#include "packmin/magnitude.hpp"

namespace packmin {

struct ChartBody {
  enum class Kind { Ellipsoid, Polytope };
  Kind kind = Kind::Polytope;
  std::size_t dim = 0;
  RatMatrix form;              // Ellipsoid: {xᵀ·form·x <= 1}
  std::vector<RatVec> points;  // Polytope: conv(±points), possibly empty when rows are known
  std::vector<RatVec> rows;    // Polytope: {x : |row·x| <= 1}, possibly empty when points are known
  RatMatrix inner;             // {xᵀ·inner·x <= 1} ⊆ body
  RatMatrix outer;             // body ⊆ {xᵀ·outer·x <= 1}

  static ChartBody ellipsoid(RatMatrix form);
  // Either list may be empty (not both); missing data is derived when dim <= 4.
  static ChartBody polytope(std::size_t dim, std::vector<RatVec> points, std::vector<RatVec> rows);
};

// Squared gauge of x (exact).
Rat gauge_squared(const ChartBody& k, const IntVec& x);
Rat gauge_squared(const ChartBody& k, const RatVec& x);
Magnitude gauge(const ChartBody& k, const IntVec& x);
Magnitude make_value(const ChartBody& k, const Rat& squared);

// Symmetric body M in the coordinates of the lattice (polytopes need a Basis lattice).
ChartBody to_chart(const SymBody& m, const Lattice& lat);
// Polar body with respect to the pairing yᵀx (dual lattice coordinates).
ChartBody chart_polar(const ChartBody& k);
// Change of coordinates x = u·z.
ChartBody chart_transform(const ChartBody& k, const IntMatrix& u);
// Quotient by the first k coordinates (orthogonal projection along a plane).
ChartBody chart_project(const ChartBody& k, std::size_t first);
// Restriction to the span of the first k coordinates.
ChartBody chart_section(const ChartBody& k, std::size_t first);

struct ChartVector {
  Rat squared;  // squared gauge
  IntVec x;     // first nonzero coordinate positive
};

// Shortest nonzero integer vector. With a threshold, returns nullopt as soon as a
// vector with gauge² < threshold (or <= when inclusive) is seen.
std::optional<ChartVector> chart_shortest(const ChartBody& k, Budget& budget,
                                          const std::optional<Rat>& threshold = std::nullopt,
                                          bool inclusive = false);

// Successive minima with an attaining set of independent vectors.
std::vector<ChartVector> chart_successive(const ChartBody& k, Budget& budget);

// All nonzero integer vectors with gauge² <= bound, up to sign, sorted by (gauge², lex).
std::vector<ChartVector> chart_vectors_within(const ChartBody& k, const Rat& bound, Budget& budget);

}  // namespace packmin
