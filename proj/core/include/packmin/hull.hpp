#pragma once

// Brute-force convex hull utilities for small dimension (d <= 4).

#include <vector>

#include "packmin/ratlin.hpp"

namespace packmin {

inline constexpr std::size_t kMaxHullDim = 4;

struct Facet {
  IntVec normal;  // primitive integer outer normal
  Rat offset;     // normal·x <= offset on the hull
};

// Removes duplicate points, keeps first occurrence order.
std::vector<RatVec> unique_points(const std::vector<RatVec>& pts);

// Facets of conv(pts); throws RankDeficient if the points are not full-dimensional.
std::vector<Facet> hull_facets(const std::vector<RatVec>& pts);

// Extreme points of conv(pts), sorted lexicographically.
std::vector<RatVec> hull_vertices(const std::vector<RatVec>& pts);
std::vector<RatVec> hull_vertices(const std::vector<RatVec>& pts, const std::vector<Facet>& facets);

// Lebesgue volume of conv(pts) (full-dimensional).
Rat hull_volume(const std::vector<RatVec>& pts);

// Vertices of {x : a·x <= b}; throws if unbounded or empty.
std::vector<RatVec> h_to_v(const RatMatrix& a, const RatVec& b);

}  // namespace packmin
