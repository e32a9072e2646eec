#include "packmin/counting.hpp"

#include <algorithm>
#include <sstream>

namespace packmin {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "counting", msg); }

Int factorial(std::size_t n) {
  Int f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

Rat power(const Rat& x, std::size_t e) {
  Rat r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= x;
  return r;
}

Int power(const Int& x, std::size_t e) {
  Int r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= x;
  return r;
}

BoundCheck check(std::string name, std::string value, bool ok, bool theorem = true) {
  return {std::move(name), std::move(value), ok, theorem};
}

// [⌊√q·S⌋/S, (⌊√q·S⌋+1)/S]
Enclosure sqrt_enclosure(const Rat& q) {
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 30);
  Int m = isqrt_floor(q * scale * scale);
  Rat lo = make_rat(m, scale), hi = make_rat(m + 1, scale);
  if (lo * lo == q) hi = lo;
  return {lo, hi};
}

Enclosure lattice_det(const Lattice& lat) {
  if (lat.kind() == LatticeKind::Basis) {
    Rat d = abs(determinant(lat.basis()));
    return {d, d};
  }
  return sqrt_enclosure(determinant(lat.gram()));
}

Enclosure divide(const Enclosure& v, const Enclosure& d) { return {v.lo / d.hi, v.hi / d.lo}; }

// volume of the unit n-ball
Enclosure unit_ball_volume(std::size_t n) {
  Enclosure pi = pi_enclosure();
  const std::size_t m = n / 2;
  Rat lo = power(pi.lo, m), hi = power(pi.hi, m);
  Rat c;
  if (n % 2 == 0) {
    c = 1 / Rat(factorial(m));
  } else {
    c = Rat(power(Int(2), n) * factorial(m)) / Rat(factorial(n));
  }
  return {lo * c, hi * c};
}

Enclosure body_volume(const Body& k) {
  if (auto* b = std::get_if<Ball>(&k.data())) {
    Enclosure u = unit_ball_volume(b->dim);
    Rat s = power(b->radius, b->dim);
    return {u.lo * s, u.hi * s};
  }
  Rat v = volume(k);
  return {v, v};
}

std::string product_string(const std::vector<Magnitude>& vals, bool reciprocal) {
  std::ostringstream os;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) os << '*';
    os << (reciprocal ? vals[i].reciprocal() : vals[i]).str();
  }
  return os.str();
}

}  // namespace

bool Verdicts::holds() const {
  return std::all_of(bounds.begin(), bounds.end(), [](const BoundCheck& b) { return !b.theorem || b.satisfied; });
}

const BoundCheck* Verdicts::find(const std::string& name) const {
  for (const auto& b : bounds)
    if (b.name == name) return &b;
  return nullptr;
}

Enclosure pi_enclosure() {
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, 28);
  Int digits("31415926535897932384626433832");
  return {make_rat(digits, scale), make_rat(digits + 1, scale)};
}

PointCount count_points(const Body& k, const Lattice& lat, const Options& opt, bool keep_points) {
  check_compatible(k, lat);
  Budget budget(opt.budget);
  const std::size_t n = lat.dim();
  PointCount out;
  if (auto* ball = std::get_if<Ball>(&k.data())) {
    auto vs = enumerate_short_vectors(lat.gram(), ball->radius * ball->radius, budget);
    out.count = 2 * Int(static_cast<unsigned long>(vs.size())) + 1;
    if (keep_points) {
      out.points.push_back(IntVec(n, Int(0)));
      for (auto& v : vs) {
        IntVec w = v;
        for (auto& x : w) x = -x;
        out.points.push_back(std::move(w));
        out.points.push_back(std::move(v));
      }
      std::sort(out.points.begin(), out.points.end());
    }
    return out;
  }
  const RatMatrix& b = lat.basis();
  RatMatrix binv = inverse(b);
  HRep h = h_representation(k);
  RatMatrix a = h.a * b;
  IntVec lo(n), hi(n);
  const auto verts = k.vertices();
  for (std::size_t i = 0; i < n; ++i) {
    Rat mn, mx;
    bool f = true;
    for (const auto& v : verts) {
      Rat c = dot(binv.row(i), v);
      if (f || c < mn) mn = c;
      if (f || c > mx) mx = c;
      f = false;
    }
    lo[i] = ceil(mn);
    hi[i] = floor(mx);
  }
  Int count = 0;
  IntVec x(n);
  const std::size_t rows = a.rows();
  std::vector<Rat> partial(rows);  // Σ_{j<level} a(r,j)·x_j
  auto rec = [&](auto&& self, std::size_t level) -> void {
    budget.charge();
    if (level + 1 == n) {
      Int l = lo[level], u = hi[level];
      for (std::size_t r = 0; r < rows; ++r) {
        Rat c = a(r, level), s = h.b[r] - partial[r];
        if (c > 0) {
          u = std::min(u, floor(s / c));
        } else if (c < 0) {
          l = std::max(l, ceil(s / c));
        } else if (s < 0) {
          return;
        }
      }
      if (u < l) return;
      count += u - l + 1;
      if (keep_points)
        for (Int t = l; t <= u; ++t) {
          x[level] = t;
          out.points.push_back(x);
        }
      return;
    }
    for (Int t = lo[level]; t <= hi[level]; ++t) {
      x[level] = t;
      for (std::size_t r = 0; r < rows; ++r) partial[r] += a(r, level) * t;
      self(self, level + 1);
      for (std::size_t r = 0; r < rows; ++r) partial[r] -= a(r, level) * t;
    }
  };
  rec(rec, 0);
  out.count = count;
  std::sort(out.points.begin(), out.points.end());
  return out;
}

CountReport count_upper_from(const Int& count, const MinimaReport& m) {
  const std::size_t n = m.packing.size();
  CountReport r;
  r.count = count;
  std::vector<Magnitude> rho, lam, dual;
  for (const auto& v : m.packing) rho.push_back(v.value);
  for (const auto& v : m.successive) lam.push_back(v.value);
  for (const auto& v : m.dual_successive) dual.push_back(v.value);

  Int packing_product = 1, dual_product = 1, successive_product = 1;
  for (std::size_t i = 0; i < n; ++i) {
    packing_product *= floor_reciprocal_plus_one(rho[i]);
    dual_product *= dual[i].floor() + 1;
    successive_product *= floor_reciprocal_plus_one(lam[i]);
  }
  Int subsequence = subsequence_bound(rho);
  Int last_power = power(floor_reciprocal_plus_one(rho.back()), n);

  r.bounds.push_back(check("packing_product", to_string(packing_product), count <= packing_product));
  r.bounds.push_back(check("decreasing_subsequence", to_string(subsequence), count <= subsequence));
  r.bounds.push_back(check("dual_successive_product", to_string(dual_product), count <= dual_product));
  r.bounds.push_back(check("last_packing_power", to_string(last_power), count <= last_power));
  r.bounds.push_back(check("subsequence_le_packing_product", to_string(subsequence), subsequence <= packing_product));
  r.bounds.push_back(check("packing_le_dual_product", to_string(packing_product), packing_product <= dual_product));
  r.bounds.push_back(
      check("successive_product", to_string(successive_product), count <= successive_product, n <= 3));
  return r;
}

CountReport verify_count_upper(const Body& k, const Lattice& lat, const Options& opt) {
  Int count = count_points(k, lat, opt).count;
  return count_upper_from(count, minima_report(k, lat, opt));
}

CountReport verify_slice_bound(const Body& k, const Lattice& lat, const LatticePlane& plane, const RatVec& t,
                               const Options& opt) {
  const std::size_t n = lat.dim(), rk = plane.rank;
  if (plane.basis.rows() != n || t.size() != n) fail(ErrorCode::DimensionMismatch, "plane or shift has wrong length");
  if (rk < 1 || rk > n) fail(ErrorCode::RankOutOfRange, "plane rank must lie in [1, n]");
  Budget budget(opt.budget);
  ChartBody kc = difference_chart(k, lat);
  Completion c = complete_basis(plane.basis);
  ChartBody section = chart_section(chart_transform(kc, c.full), rk);
  Magnitude lam_section = make_value(section, chart_shortest(section, budget)->squared);
  Magnitude lam = make_value(kc, chart_shortest(kc, budget)->squared);

  RatVec s = lat.kind() == LatticeKind::Basis ? solve(lat.basis(), t) : t;
  IntMatrix perp = kernel_basis(to_rat(plane.basis.transpose()));
  Int count = 0;
  for (const auto& x : count_points(k, lat, opt, true).points) {
    bool in = true;
    for (std::size_t j = 0; j < perp.cols() && in; ++j) {
      Rat d = 0;
      for (std::size_t i = 0; i < n; ++i) d += Rat(perp(i, j)) * (Rat(x[i]) - s[i]);
      in = d == 0;
    }
    if (in) ++count;
  }
  Int section_bound = power(floor_reciprocal_plus_one(lam_section), rk);
  Int body_bound = power(floor_reciprocal_plus_one(lam), rk);
  CountReport r;
  r.count = count;
  r.bounds.push_back(check("section_minimum", to_string(section_bound), count <= section_bound));
  r.bounds.push_back(check("body_minimum", to_string(body_bound), section_bound <= body_bound));
  return r;
}

CountReport planar_lower_from(const Body& k, const Int& count, const std::vector<MinimaValue>& packing) {
  if (packing.size() != 2) fail(ErrorCode::DimensionMismatch, "planar bounds need dimension 2");
  CountReport r;
  r.count = count;
  const Magnitude& rho1 = packing[0].value;
  const Magnitude& rho2 = packing[1].value;
  if (rho2.squared() > make_rat(1, 4)) {
    r.applicable = false;
    return r;
  }
  const Rat inv2 = 1 / rho2.squared();  // (1/ρ₂)²
  const Magnitude inv = rho2.reciprocal();
  auto expr = [&](const Rat& factor, const Rat& shift) {
    // factor·(1/ρ₂ − 2) + shift
    if (inv.is_exact()) return to_string(factor * (inv.payload() - 2) + shift);
    std::string s = to_string(factor) + "*(" + inv.str() + "-2)";
    if (shift != 0) s += (shift > 0 ? "+" : "") + to_string(shift);
    return s;
  };
  // count >= f·(1/ρ₂ − 2) + shift with f >= 0, compared in squared form
  auto holds = [&](const Rat& f, const Rat& shift) {
    if (f <= 0) return Rat(count) >= shift;
    Rat lhs = (Rat(count) - shift) / f + 2;
    return lhs >= 0 && lhs * lhs >= inv2;
  };
  Int f = rho1.reciprocal().floor() - 2;
  Rat half = Rat(f) / 2;
  r.bounds.push_back(check("general_lower", expr(half, -2), holds(half, -2)));
  if (k.is_symmetric()) {
    Int g = rho1.scaled(2).reciprocal().floor();
    r.bounds.push_back(check("symmetric_lower", expr(Rat(g), 0), holds(Rat(g), 0)));
  }
  return r;
}

CountReport verify_planar_lower(const Body& k, const Lattice& lat, const Options& opt) {
  if (k.dim() != 2) fail(ErrorCode::DimensionMismatch, "planar bounds need dimension 2");
  Int count = count_points(k, lat, opt).count;
  return planar_lower_from(k, count, packing_minima_all(k, lat, opt));
}

Enclosure volume_ratio(const Body& k, const Lattice& lat) {
  check_compatible(k, lat);
  return divide(body_volume(k), lattice_det(lat));
}

VolumeReport volume_sandwich_from(const Body& k, const Lattice& lat, const MinimaReport& m) {
  const std::size_t n = m.packing.size();
  VolumeReport r;
  r.ratio = volume_ratio(k, lat);
  const Rat nf = Rat(factorial(n));
  Rat p2 = 1;  // (∏ 1/ρᵢ)²
  std::vector<Magnitude> rho, lam;
  for (const auto& v : m.packing) {
    p2 /= v.value.squared();
    rho.push_back(v.value);
  }
  for (const auto& v : m.successive) lam.push_back(v.value);
  const bool exact = r.ratio.lo == r.ratio.hi;
  r.bounds.push_back(check("packing_upper", product_string(rho, true), r.ratio.hi * r.ratio.hi <= p2));
  r.bounds.push_back(
      check("packing_lower", "1/" + to_string(nf) + "*" + product_string(rho, true), p2 <= nf * nf * r.ratio.lo * r.ratio.lo));
  r.upper_tight = exact && r.ratio.lo * r.ratio.lo == p2;
  r.lower_tight = exact && nf * nf * r.ratio.lo * r.ratio.lo == p2;

  // classical second theorem on the difference body: 2^n/n! <= ∏λᵢ·vol(K_c)/det <= 2^n
  Enclosure rc;
  if (k.is_ball()) {
    Rat s = power(Rat(2), n);
    rc = {s * r.ratio.lo, s * r.ratio.hi};
  } else {
    rc = divide(body_volume(difference_body(k).body()), lattice_det(lat));
  }
  Rat l2 = 1;
  for (const auto& v : lam) l2 *= v.squared();
  Rat two_n = power(Rat(2), n);
  r.bounds.push_back(check("successive_upper", to_string(two_n), l2 * rc.hi * rc.hi <= two_n * two_n));
  r.bounds.push_back(check("successive_lower", to_string(two_n / nf), two_n * two_n / (nf * nf) <= l2 * rc.lo * rc.lo));
  return r;
}

VolumeReport verify_volume_sandwich(const Body& k, const Lattice& lat, const Options& opt) {
  return volume_sandwich_from(k, lat, minima_report(k, lat, opt));
}

Rat perimeter_scale(const Body& k) {
  if (auto* b = std::get_if<Ball>(&k.data())) return b->radius;
  Rat m = 0;
  for (const auto& v : k.vertices())
    for (const auto& x : v) m = std::max(m, abs(x));
  return m;
}

VolumeLimitReport volume_limit_check(const Body& k, const Lattice& lat, const std::vector<Rat>& radii,
                                     const std::optional<Rat>& constant, const Options& opt) {
  if (k.dim() > 3) fail(ErrorCode::DimensionTooLarge, "volume limit check is limited to dimension 3");
  const std::size_t n = k.dim();
  VolumeLimitReport rep;
  rep.constant = constant ? *constant : 10 * perimeter_scale(k);
  Enclosure target = volume_ratio(k, lat);
  rep.strictly_decreasing = true;
  rep.all_within = true;
  for (const auto& r : radii) {
    if (r <= 0) fail(ErrorCode::InvalidParams, "dilation factors must be positive");
    LimitRow row;
    row.r = r;
    row.count = count_points(scaled(k, r), lat, opt).count;
    row.normalized = Rat(row.count) / power(r, n);
    Rat a = row.normalized - target.hi, b = row.normalized - target.lo;
    if (a >= 0) {
      row.deviation = {a, b};
    } else if (b <= 0) {
      row.deviation = {-b, -a};
    } else {
      row.deviation = {Rat(0), std::max(Rat(-a), b)};
    }
    row.tolerance = rep.constant / r;
    row.within = row.deviation.hi <= row.tolerance;
    if (!rep.rows.empty() && !(row.deviation.hi < rep.rows.back().deviation.lo)) rep.strictly_decreasing = false;
    rep.all_within = rep.all_within && row.within;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace packmin
