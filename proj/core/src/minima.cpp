#include "packmin/minima.hpp"

#include <algorithm>

namespace packmin {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "minima", msg); }

MinimaValue from_chart(const ChartBody& k, const ChartVector& v) { return {make_value(k, v.squared), v.x, std::nullopt}; }

std::vector<MinimaValue> successive_on(const ChartBody& k, Budget& budget) {
  std::vector<MinimaValue> out;
  for (const auto& v : chart_successive(k, budget)) out.push_back(from_chart(k, v));
  return out;
}

IntVec lift(const IntMatrix& full, std::size_t k, const IntVec& y) {
  IntVec x(full.rows());
  for (std::size_t i = 0; i < full.rows(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) x[i] += full(i, k + j) * y[j];
  return x;
}

bool is_identity(const RatMatrix& m) { return m == RatMatrix::identity(m.rows()); }

}  // namespace

void check_compatible(const Body& k, const Lattice& lat) {
  if (k.dim() != lat.dim()) fail(ErrorCode::DimensionMismatch, "body and lattice dimensions differ");
  if (k.is_polytope() && lat.kind() != LatticeKind::Basis)
    fail(ErrorCode::IncompatibleKinds, "polytope bodies need a basis lattice");
}

ChartBody difference_chart(const Body& k, const Lattice& lat) {
  check_compatible(k, lat);
  return to_chart(difference_body(k), lat);
}

ChartBody chart_scaled(const ChartBody& k, const Rat& c) {
  if (c <= 0) fail(ErrorCode::InvalidParams, "scale factor must be positive");
  const Rat inv2 = 1 / (c * c);
  if (k.kind == ChartBody::Kind::Ellipsoid) return ChartBody::ellipsoid(scaled(k.form, inv2));
  ChartBody s = k;
  for (auto& p : s.points)
    for (auto& x : p) x *= c;
  for (auto& r : s.rows)
    for (auto& x : r) x /= c;
  s.inner = scaled(k.inner, inv2);
  s.outer = scaled(k.outer, inv2);
  return s;
}

MinimaValue shortest_vector(const SymBody& m, const Lattice& lat, const Options& opt) {
  check_compatible(m.body(), lat);
  Budget budget(opt.budget);
  ChartBody k = to_chart(m, lat);
  return from_chart(k, *chart_shortest(k, budget));
}

std::vector<MinimaValue> successive_minima(const SymBody& m, const Lattice& lat, const Options& opt) {
  check_compatible(m.body(), lat);
  Budget budget(opt.budget);
  return successive_on(to_chart(m, lat), budget);
}

MinimaValue lattice_width(const Body& k, const Lattice& lat, const Options& opt) {
  Budget budget(opt.budget);
  ChartBody polar = chart_polar(difference_chart(k, lat));
  return from_chart(polar, *chart_shortest(polar, budget));
}

MinimaValue packing_minimum(const Body& k, const Lattice& lat, std::size_t i, const Options& opt) {
  Budget budget(opt.budget);
  return chart_packing_minimum(difference_chart(k, lat), lat.gram(), i, opt, budget);
}

std::vector<MinimaValue> packing_minima_all(const Body& k, const Lattice& lat, const Options& opt) {
  Budget budget(opt.budget);
  ChartBody kc = difference_chart(k, lat);
  std::vector<MinimaValue> out;
  for (std::size_t i = 1; i <= kc.dim; ++i) out.push_back(chart_packing_minimum(kc, lat.gram(), i, opt, budget));
  return out;
}

std::vector<Rat> covering_minima_box(const RatVec& r) {
  if (r.empty()) fail(ErrorCode::ValidationError, "box needs at least one half-width");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] <= 0) fail(ErrorCode::ValidationError, "box half-widths must be positive");
    if (i && r[i] < r[i - 1]) fail(ErrorCode::ValidationError, "box half-widths must be sorted");
  }
  return std::vector<Rat>(r.size(), 1 / (2 * r[0]));
}

KzResult kz_basis(const SymBody& m, const Lattice& lat, const Options& opt) {
  check_compatible(m.body(), lat);
  const std::size_t n = lat.dim();
  if (n > 5) fail(ErrorCode::DimensionTooLarge, "KZ reduction is limited to dimension 5");
  Budget budget(opt.budget);
  ChartBody k = to_chart(m, lat);
  KzResult r;
  r.basis = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    ChartBody proj = k;
    IntMatrix full = IntMatrix::identity(n);
    if (i > 0) {
      full = complete_basis(r.basis.col_range(0, i)).full;
      proj = chart_project(chart_transform(k, full), i);
    }
    ChartVector s = *chart_shortest(proj, budget);
    r.basis.set_col(i, lift(full, i, s.x));
    r.gauges.push_back(make_value(proj, s.squared));
  }
  return r;
}

MinimaReport minima_report(const Body& k, const Lattice& lat, const Options& opt) {
  Budget budget(opt.budget);
  ChartBody kc = difference_chart(k, lat);
  MinimaReport r;
  r.successive = successive_on(kc, budget);
  r.dual_successive = successive_on(chart_polar(kc), budget);
  for (std::size_t i = 1; i <= kc.dim; ++i) r.packing.push_back(chart_packing_minimum(kc, lat.gram(), i, opt, budget));
  r.width = r.dual_successive.front();
  if (auto* box = std::get_if<Box>(&k.data());
      box && lat.kind() == LatticeKind::Basis && is_identity(lat.basis()) && std::is_sorted(box->r.begin(), box->r.end()))
    r.covering = covering_minima_box(box->r);
  return r;
}

bool SandwichReport::holds() const {
  return equality_first && equality_last && mahler_ok &&
         std::all_of(rows.begin(), rows.end(), [](const SandwichRow& x) { return x.lower_ok && x.upper_ok; });
}

SandwichReport sandwich_from(const MinimaReport& r) {
  const std::size_t n = r.packing.size();
  SandwichReport s;
  s.mahler_ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    SandwichRow row;
    row.index = i + 1;
    row.lower = r.dual_successive[i].value.reciprocal();
    row.rho = r.packing[i].value;
    row.upper = r.successive[n - 1 - i].value;
    row.lower_ok = row.lower <= row.rho;
    row.upper_ok = row.rho <= row.upper;
    s.rows.push_back(row);
    Magnitude prod = r.successive[i].value * r.dual_successive[n - 1 - i].value;
    s.mahler_ok = s.mahler_ok && prod.squared() >= 1;
    s.mahler_products.push_back(prod);
  }
  s.equality_first = n > 0 && s.rows.front().lower == s.rows.front().rho;
  s.equality_last = n > 0 && s.rows.back().upper == s.rows.back().rho;
  return s;
}

SandwichReport verify_sandwich(const Body& k, const Lattice& lat, const Options& opt) {
  return sandwich_from(minima_report(k, lat, opt));
}

std::vector<std::size_t> decreasing_subsequence(const std::vector<Magnitude>& rho) {
  const std::size_t n = rho.size();
  std::vector<std::size_t> out;
  if (n == 0) return out;
  std::size_t cur = n;  // 1-based
  for (;;) {
    std::size_t pick = 0;
    for (std::size_t j = cur - 1; j >= 1; --j)
      if (rho[j - 1] > rho[cur - 1]) {
        pick = j;
        break;
      }
    if (pick == 0) break;
    out.push_back(pick);
    cur = pick;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Int floor_reciprocal_plus_one(const Magnitude& v) {
  if (v.squared() == 0) fail(ErrorCode::InvalidParams, "reciprocal of zero");
  return v.reciprocal().floor() + 1;
}

Int subsequence_bound(const std::vector<Magnitude>& rho) {
  std::vector<std::size_t> js = decreasing_subsequence(rho);
  js.push_back(rho.size());
  Int bound = 1;
  std::size_t prev = 0;
  for (std::size_t j : js) {
    Int f = floor_reciprocal_plus_one(rho[j - 1]);
    for (std::size_t e = prev; e < j; ++e) bound *= f;
    prev = j;
  }
  return bound;
}

std::vector<TransferenceRow> transference_probe(const Body& k, const Lattice& lat, const Options& opt) {
  Budget budget(opt.budget);
  ChartBody kc = difference_chart(k, lat);
  const std::size_t n = kc.dim;
  // K_c° is symmetric, so its difference body is 2K_c°
  ChartBody polar_c = chart_scaled(chart_polar(kc), 2);
  RatMatrix dual_gram = inverse(lat.gram());
  std::vector<Rat> rho, rho_polar;
  for (std::size_t i = 1; i <= n; ++i) {
    rho.push_back(chart_packing_minimum(kc, lat.gram(), i, opt, budget).value.squared());
    rho_polar.push_back(chart_packing_minimum(polar_c, dual_gram, i, opt, budget).value.squared());
  }
  std::vector<TransferenceRow> out;
  for (std::size_t j = 1; j <= n; ++j) {
    TransferenceRow row;
    row.j = j;
    row.product_squared = rho[j - 1] * rho_polar[n - j];
    row.at_least_quarter = row.product_squared >= make_rat(1, 4);
    out.push_back(row);
  }
  return out;
}

TransferenceRow transference_probe(const Body& k, const Lattice& lat, std::size_t j, const Options& opt) {
  Budget budget(opt.budget);
  ChartBody kc = difference_chart(k, lat);
  const std::size_t n = kc.dim;
  if (j < 1 || j > n) fail(ErrorCode::RankOutOfRange, "index out of range");
  ChartBody polar_c = chart_scaled(chart_polar(kc), 2);
  Rat a = chart_packing_minimum(kc, lat.gram(), j, opt, budget).value.squared();
  Rat b = chart_packing_minimum(polar_c, inverse(lat.gram()), n - j + 1, opt, budget).value.squared();
  TransferenceRow row;
  row.j = j;
  row.product_squared = a * b;
  row.at_least_quarter = row.product_squared >= make_rat(1, 4);
  return row;
}

}  // namespace packmin
