#pragma once

// Lattice point counts and the inequalities relating them to the minima.

#include <string>
#include <vector>

#include "packmin/body.hpp"
#include "packmin/lattice.hpp"
#include "packmin/minima.hpp"
#include "packmin/options.hpp"

namespace packmin {

struct BoundCheck {
  std::string name;
  std::string value;      // exact value of the bound
  bool satisfied = false;
  bool theorem = true;    // false: conjecture, reported only
};

struct Verdicts {
  std::vector<BoundCheck> bounds;
  bool applicable = true;
  // Every theorem-tagged bound is satisfied.
  bool holds() const;
  const BoundCheck* find(const std::string& name) const;
};

struct CountReport : Verdicts {
  Int count;
};

struct PointCount {
  Int count;
  std::vector<IntVec> points;  // lattice coordinates, sorted; filled on request
};

// #(K ∩ Λ), boundary included.
PointCount count_points(const Body& k, const Lattice& lat, const Options& opt = {}, bool keep_points = false);

// Upper bounds through packing minima, the decreasing subsequence, dual
// successive minima and ρ_n; the successive-minima product is tagged as a
// theorem only for n <= 3.
CountReport verify_count_upper(const Body& k, const Lattice& lat, const Options& opt = {});
CountReport count_upper_from(const Int& count, const MinimaReport& minima);

// Points of K ∩ (t + L) ∩ Λ against λ₁ of the section and of K_c. t is in
// ambient coordinates for basis lattices and in lattice coordinates otherwise.
CountReport verify_slice_bound(const Body& k, const Lattice& lat, const LatticePlane& plane, const RatVec& t,
                               const Options& opt = {});

// Planar lower bounds; not applicable unless ρ₂ <= 1/2.
CountReport verify_planar_lower(const Body& k, const Lattice& lat, const Options& opt = {});
CountReport planar_lower_from(const Body& k, const Int& count, const std::vector<MinimaValue>& packing);

struct Enclosure {
  Rat lo;
  Rat hi;
};
// Rational enclosure of π (width 10⁻²⁸).
Enclosure pi_enclosure();
// vol(K)/det(Λ), exact for polytopes and enclosed for balls.
Enclosure volume_ratio(const Body& k, const Lattice& lat);

struct VolumeReport : Verdicts {
  Enclosure ratio;          // vol(K)/det(Λ)
  bool upper_tight = false; // vol/det = ∏ 1/ρᵢ
  bool lower_tight = false; // vol/det = (1/n!)∏ 1/ρᵢ
};
VolumeReport verify_volume_sandwich(const Body& k, const Lattice& lat, const Options& opt = {});
VolumeReport volume_sandwich_from(const Body& k, const Lattice& lat, const MinimaReport& minima);

struct LimitRow {
  Rat r;
  Int count;
  Rat normalized;      // r^{−n}·#(rK ∩ Λ)
  Enclosure deviation; // |normalized − vol/det|
  Rat tolerance;       // C/r
  bool within = false;
};
struct VolumeLimitReport {
  std::vector<LimitRow> rows;
  Rat constant;                // C
  bool strictly_decreasing = false;
  bool all_within = false;
};
// Perimeter scale of K: the largest |coordinate| over K.
Rat perimeter_scale(const Body& k);
// C defaults to 10·perimeter_scale(K).
VolumeLimitReport volume_limit_check(const Body& k, const Lattice& lat, const std::vector<Rat>& radii,
                                     const std::optional<Rat>& constant = std::nullopt, const Options& opt = {});

}  // namespace packmin
