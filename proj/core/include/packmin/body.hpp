#pragma once

// Convex bodies in ambient coordinates.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "packmin/lattice.hpp"
#include "packmin/magnitude.hpp"

namespace packmin {

struct Box {
  RatVec r;  // [−r₁,r₁]×…×[−r_n,r_n]
};
struct CrossPolytope {
  RatVec r;  // conv{±eᵢ/rᵢ}
};
struct Simplex {
  std::vector<RatVec> vertices;  // n+1 affinely independent points
};
struct VPolytope {
  std::vector<RatVec> vertices;
};
struct HPolytope {
  RatMatrix a;  // {x : a·x <= b}
  RatVec b;
};
struct Ball {
  Rat radius;
  std::size_t dim = 0;
};

class Body {
 public:
  using Variant = std::variant<Box, CrossPolytope, Simplex, VPolytope, HPolytope, Ball>;

  // Validating constructors; throw ValidationError with the offending detail.
  static Body box(RatVec r);
  static Body cross(RatVec r);
  static Body simplex(std::vector<RatVec> vertices);
  static Body vpolytope(std::vector<RatVec> vertices);
  static Body hpolytope(RatMatrix a, RatVec b);
  static Body ball(Rat radius, std::size_t dim);

  const Variant& data() const noexcept { return data_; }
  std::size_t dim() const noexcept { return dim_; }
  std::string kind_name() const;
  bool is_ball() const noexcept { return std::holds_alternative<Ball>(data_); }
  bool is_polytope() const noexcept { return !is_ball(); }

  // Vertex set when available (H-polytopes converted in dim <= 4).
  std::vector<RatVec> vertices() const;
  bool is_symmetric() const;

 private:
  explicit Body(Variant v, std::size_t dim) : data_(std::move(v)), dim_(dim) {}
  Variant data_;
  std::size_t dim_ = 0;
};

// A body certified to satisfy M = −M.
class SymBody {
 public:
  // Throws NotSymmetric.
  explicit SymBody(Body body);
  const Body& body() const noexcept { return body_; }
  std::size_t dim() const noexcept { return body_.dim(); }

 private:
  Body body_;
};

SymBody difference_body(const Body& k);
// Throws OriginNotInterior.
SymBody polar_body(const SymBody& k);
// Gauge ‖x‖_K.
Magnitude norm(const SymBody& k, const RatVec& x);
// h(K,u) = max_{x∈K} ⟨x,u⟩.
// Throws UnsupportedRepresentation for balls.
Rat support(const Body& k, const RatVec& u);
// Throws DimensionTooLarge for generic polytopes above dim 4 and
// UnsupportedRepresentation for balls.
Rat volume(const Body& k);
// Radius r with rB ⊆ K (Euclidean).
Magnitude inradius_lb(const SymBody& k);
// K|L^⊥ as a V-polytope in the coordinates of the projected lattice generators.
SymBody project_body(const SymBody& k, const Lattice& lat, const LatticePlane& plane, const ProjectedLattice& proj);

// Dilate by c > 0.
Body scaled(const Body& k, const Rat& c);
// Translate by t.
Body translated(const Body& k, const RatVec& t);

// {x : a·x <= b}; generic V-polytopes need dim <= 4.
struct HRep {
  RatMatrix a;
  RatVec b;
};
HRep h_representation(const Body& k);

// Balls use the standard inner product.
bool contains(const Body& k, const RatVec& x);

}  // namespace packmin
