#pragma once

// Successive minima, lattice width, packing minima and related functionals.

#include <optional>
#include <vector>

#include "packmin/body.hpp"
#include "packmin/chart.hpp"
#include "packmin/lattice.hpp"
#include "packmin/magnitude.hpp"
#include "packmin/options.hpp"

namespace packmin {

struct MinimaValue {
  Magnitude value;
  std::optional<IntVec> vector;       // attaining lattice vector (lattice coordinates)
  std::optional<LatticePlane> plane;  // attaining plane for packing minima
};

// Rejects polytope bodies on Gram-form lattices and dimension mismatches.
void check_compatible(const Body& k, const Lattice& lat);

// The gauge body M is used as given (pass K_c for the minima of K_c).
MinimaValue shortest_vector(const SymBody& m, const Lattice& lat, const Options& opt = {});
std::vector<MinimaValue> successive_minima(const SymBody& m, const Lattice& lat, const Options& opt = {});

// λ₁(K_c°, Λ*); the witness is a dual lattice vector in dual-basis coordinates.
MinimaValue lattice_width(const Body& k, const Lattice& lat, const Options& opt = {});

// ρ_i(K, Λ), 1 <= i <= n, with the attaining plane of dimension n−i
// (lexicographically smallest HNF key among all attaining planes).
MinimaValue packing_minimum(const Body& k, const Lattice& lat, std::size_t i, const Options& opt = {});
std::vector<MinimaValue> packing_minima_all(const Body& k, const Lattice& lat, const Options& opt = {});

// Chart-level engine: kc is the difference body in lattice coordinates and gram
// the lattice Gram matrix (used for reported plane determinants).
MinimaValue chart_packing_minimum(const ChartBody& kc, const RatMatrix& gram, std::size_t i, const Options& opt,
                                  Budget& budget);

// Caps used by the plane search for index i, seeded by a known plane value.
struct PackingCaps {
  RatMatrix metric;        // inner ellipsoid form of the difference body
  Rat det_cap;             // planes with det(WᵀAW) above this cannot attain
  Rat generator_cap;       // squared A-length cap for generators of such planes
  Magnitude seed_value;    // value of the seeding plane
};
PackingCaps packing_caps(const ChartBody& kc, std::size_t i, Budget& budget);
// Upper bound on γ_s^s (Hermite constant to the power s).
Rat hermite_power_bound(std::size_t s);

// μ_i(C(r), Z^n) for 0 < r₁ <= … <= r_n.
std::vector<Rat> covering_minima_box(const RatVec& r);

struct KzResult {
  IntMatrix basis;                  // columns b₁…b_n in lattice coordinates
  std::vector<Magnitude> gauges;    // ‖bᵢ|Lᵢ^⊥‖ in the projected body
};
// Uses the gauge body M directly; n <= 5.
KzResult kz_basis(const SymBody& m, const Lattice& lat, const Options& opt = {});

struct SandwichRow {
  std::size_t index = 0;  // i, 1-based
  Magnitude lower;        // 1/λ_i(K_c°, Λ*)
  Magnitude rho;          // ρ_i
  Magnitude upper;        // λ_{n−i+1}(K_c, Λ)
  bool lower_ok = false;
  bool upper_ok = false;
};
struct SandwichReport {
  std::vector<SandwichRow> rows;
  bool equality_first = false;  // lower bound attained at i = 1
  bool equality_last = false;   // upper bound attained at i = n
  std::vector<Magnitude> mahler_products;  // λ_i(K_c,Λ)·λ_{n−i+1}(K_c°,Λ*)
  bool mahler_ok = false;
  bool holds() const;
};

struct MinimaReport {
  std::vector<MinimaValue> successive;       // λ_i(K_c, Λ)
  std::vector<MinimaValue> dual_successive;  // λ_i(K_c°, Λ*)
  std::vector<MinimaValue> packing;          // ρ_i(K, Λ)
  MinimaValue width;
  std::optional<std::vector<Rat>> covering;  // boxes on Z^n only
};
MinimaReport minima_report(const Body& k, const Lattice& lat, const Options& opt = {});

SandwichReport verify_sandwich(const Body& k, const Lattice& lat, const Options& opt = {});
SandwichReport sandwich_from(const MinimaReport& r);

// 1-based indices j₁ < … < j_m of the maximal strictly decreasing subsequence
// ending above ρ_n (empty when no ρ_j exceeds ρ_n).
std::vector<std::size_t> decreasing_subsequence(const std::vector<Magnitude>& rho);
// ∏ ⌊1/ρ_{j_i}+1⌋^{j_i − j_{i−1}} with j_{m+1} = n.
Int subsequence_bound(const std::vector<Magnitude>& rho);
// ⌊1/v + 1⌋ computed exactly.
Int floor_reciprocal_plus_one(const Magnitude& v);

struct TransferenceRow {
  std::size_t j = 0;
  Rat product_squared;  // ρ_j(K,Λ)²·ρ_{n−j+1}(K_c°,Λ*)²
  bool at_least_quarter = false;
};
// Report-only probe over all j.
std::vector<TransferenceRow> transference_probe(const Body& k, const Lattice& lat, const Options& opt = {});
TransferenceRow transference_probe(const Body& k, const Lattice& lat, std::size_t j, const Options& opt = {});

// Difference body and its polar in lattice coordinates.
ChartBody difference_chart(const Body& k, const Lattice& lat);
// c·K for a chart body.
ChartBody chart_scaled(const ChartBody& k, const Rat& c);

}  // namespace packmin
