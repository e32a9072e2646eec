#include "packmin_cli/commands.hpp"

#include <algorithm>
#include <sstream>

#include "packmin/families.hpp"

namespace packmin::cli {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorCode::ValidationError, "cli", msg); }

Options options_for(const Instance& inst, const Flags& flags) {
  Options o = inst.options;
  if (flags.budget) o.budget = *flags.budget;
  if (flags.threads) o.threads = *flags.threads;
  return o;
}

std::string joined(const std::vector<std::string>& words) {
  std::string s;
  for (const auto& w : words) s += (s.empty() ? "" : " ") + w;
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

Rat power(const Rat& x, std::size_t e) {
  Rat r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= x;
  return r;
}

Int factorial(std::size_t n) {
  Int f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<unsigned long>(i);
  return f;
}

Json enclosure_json(const Enclosure& e) {
  if (e.lo == e.hi) return rat_json(e.lo);
  return Json{{"lo", rat_json(e.lo)}, {"hi", rat_json(e.hi)}};
}

// c·m^e <= ratio, decided with squares; only a certain answer counts as satisfied.
bool power_below(const Rat& c, const Magnitude& m, std::size_t e, const Enclosure& ratio) {
  Rat lhs2 = c * c * power(m.squared(), e);
  return lhs2 <= ratio.lo * ratio.lo;
}

Body half_of(const SymBody& m) {
  if (auto* ball = std::get_if<Ball>(&m.body().data())) return Body::ball(ball->radius / 2, m.dim());
  std::vector<RatVec> pts;
  for (auto v : m.body().vertices()) {
    for (auto& x : v) x /= 2;
    pts.push_back(std::move(v));
  }
  return Body::vpolytope(std::move(pts));
}

IntMatrix parse_plane(const std::string& text, std::size_t n) {
  if (text.empty()) {
    IntMatrix m(n, 1);
    m(n - 1, 0) = 1;
    return m;
  }
  std::vector<IntVec> cols;
  for (const auto& c : split(text, ';')) {
    IntVec v;
    for (const auto& x : split(c, ',')) {
      Rat q = parse_rat(x);
      if (q.get_den() != 1) invalid("--plane entries must be integers");
      v.push_back(q.get_num());
    }
    if (v.size() != n) invalid("--plane columns need " + std::to_string(n) + " entries");
    cols.push_back(std::move(v));
  }
  return IntMatrix::from_columns(cols, n);
}

RatVec parse_shift(const std::string& text, std::size_t n) {
  if (text.empty()) return RatVec(n, Rat(0));
  RatVec t;
  for (const auto& x : split(text, ',')) t.push_back(parse_rat(x));
  if (t.size() != n) invalid("--shift needs " + std::to_string(n) + " entries");
  return t;
}

void minima_command(Report& r, const Instance& inst, const Options& opt) {
  MinimaReport m = minima_report(inst.body, inst.lattice, opt);
  r.result()["successive"] = minima_list_json(m.successive);
  r.result()["dual_successive"] = minima_list_json(m.dual_successive);
  r.result()["packing"] = minima_list_json(m.packing);
  r.result()["width"] = minima_json(m.width);
  if (m.covering) r.result()["covering"] = rat_vector_json(*m.covering);
}

void kz_command(Report& r, const Instance& inst, const Options& opt) {
  SymBody kc = difference_body(inst.body);
  KzResult kz = kz_basis(kc, inst.lattice, opt);
  auto rho = packing_minima_all(inst.body, inst.lattice, opt);
  const std::size_t n = rho.size();
  Json cols = Json::array(), gauges = Json::array();
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    cols.push_back(vector_json(kz.basis.col(i)));
    gauges.push_back(magnitude_json(kz.gauges[i]));
    ok = ok && kz.gauges[i] <= rho[n - 1 - i].value;
  }
  r.result()["basis"] = cols;
  r.result()["gauges"] = gauges;
  r.result()["packing"] = minima_list_json(rho);
  r.verdict("kz.gauge_le_packing", ok, Tag::Theorem);
}

void sandwich_verdicts(Report& r, const SandwichReport& s) {
  Json rows = Json::array();
  for (const auto& row : s.rows) {
    rows.push_back(Json{{"index", row.index},
                        {"lower", magnitude_json(row.lower)},
                        {"rho", magnitude_json(row.rho)},
                        {"upper", magnitude_json(row.upper)}});
    r.verdict("sandwich.lower_" + std::to_string(row.index), row.lower_ok, Tag::Theorem);
    r.verdict("sandwich.upper_" + std::to_string(row.index), row.upper_ok, Tag::Theorem);
  }
  r.result()["sandwich"] = rows;
  r.verdict("sandwich.equality_first", s.equality_first, Tag::Theorem);
  r.verdict("sandwich.equality_last", s.equality_last, Tag::Theorem);
}

void mahler_verdicts(Report& r, const SandwichReport& s) {
  Json products = Json::array();
  for (const auto& p : s.mahler_products) products.push_back(magnitude_json(p));
  r.result()["mahler_products"] = products;
  r.verdict("mahler.product_at_least_one", s.mahler_ok, Tag::Theorem);
}

void volume_verdicts(Report& r, const VolumeReport& v) {
  r.result()["volume_ratio"] = enclosure_json(v.ratio);
  r.result()["upper_tight"] = v.upper_tight;
  r.result()["lower_tight"] = v.lower_tight;
  r.verdicts_from("volume", v);
}

void count_verdicts(Report& r, const CountReport& c, const std::string& prefix) {
  r.result()[prefix + "_count"] = int_json(c.count);
  r.verdicts_from(prefix, c);
}

void covering_box(Report& r, const Instance& inst, const Options& opt) {
  auto rho = packing_minima_all(inst.body, inst.lattice, opt);
  auto width = lattice_width(inst.body, inst.lattice, opt);
  // μ₁ = 1/width in general
  r.result()["mu_1"] = magnitude_json(width.value.reciprocal());
  r.verdict("covering.first_equals_rho_1", width.value.reciprocal() == rho[0].value, Tag::Theorem);
  const auto* box = std::get_if<Box>(&inst.body.data());
  bool identity = inst.lattice.kind() == LatticeKind::Basis &&
                  inst.lattice.basis() == RatMatrix::identity(inst.lattice.dim());
  if (!box || !identity) {
    r.not_applicable("covering.box_relations", "needs a box on the standard lattice");
    return;
  }
  auto mu = covering_minima_box(box->r);
  r.result()["covering"] = rat_vector_json(mu);
  bool upper_ok = true, lower_ok = true, step_ok = true;
  Magnitude running_max = rho[0].value;
  Rat running_sum = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (running_max < rho[i].value) running_max = rho[i].value;
    running_sum += rho[i].value.payload();
    lower_ok = lower_ok && running_max.squared() <= mu[i] * mu[i];
    upper_ok = upper_ok && mu[i] <= running_sum;
    if (i + 1 < mu.size()) step_ok = step_ok && mu[i + 1] <= mu[i] + rho[i + 1].value.payload();
  }
  r.verdict("covering.max_rho_le_mu", lower_ok, Tag::Theorem);
  r.verdict("covering.mu_le_sum_rho", upper_ok, Tag::Theorem);
  r.verdict("covering.step_le_rho", step_ok, Tag::Theorem);
}

void projection_monotonicity(Report& r, const Instance& inst, const Options& opt) {
  auto rho = packing_minima_all(inst.body, inst.lattice, opt);
  const std::size_t n = rho.size();
  SymBody kc = difference_body(inst.body);
  Json rows = Json::array();
  for (std::size_t i = 1; i < n; ++i) {
    const LatticePlane& plane = *rho[i - 1].plane;
    ProjectedLattice proj = project_along(inst.lattice, plane);
    SymBody pb = project_body(kc, inst.lattice, plane, proj);
    Lattice pl = inst.body.is_ball() ? Lattice::from_gram(proj.gram) : Lattice::standard(n - plane.rank);
    // ρ only sees the difference body, so any body with difference body K_c|L^⊥ will do
    auto projected = packing_minima_all(half_of(pb), pl, opt);
    bool ok = true;
    Json values = Json::array();
    for (std::size_t j = 0; j < projected.size(); ++j) {
      values.push_back(magnitude_json(projected[j].value));
      ok = ok && projected[j].value <= rho[j].value;
    }
    rows.push_back(Json{{"along", plane_json(plane)}, {"projected_packing", values}});
    r.verdict("projection.monotone_along_rho_" + std::to_string(i), ok, Tag::Theorem);
  }
  r.result()["packing"] = minima_list_json(rho);
  r.result()["projections"] = rows;
}

void transference_command(Report& r, const Instance& inst, const Options& opt) {
  Json rows = Json::array();
  for (const auto& row : transference_probe(inst.body, inst.lattice, opt)) {
    rows.push_back(Json{{"j", row.j}, {"product_squared", rat_json(row.product_squared)}});
    r.verdict("transference.j" + std::to_string(row.j), row.at_least_quarter, Tag::Conjecture,
              Json{{"product_squared", rat_json(row.product_squared)}});
  }
  r.result()["transference"] = rows;
}

void discrete_minkowski(Report& r, const Instance& inst, const Options& opt) {
  Int count = count_points(inst.body, inst.lattice, opt).count;
  auto s = successive_minima(difference_body(inst.body), inst.lattice, opt);
  Int bound = 1;
  for (const auto& v : s) bound *= floor_reciprocal_plus_one(v.value);
  r.result()["count"] = int_json(count);
  r.result()["successive_product"] = int_json(bound);
  // proven in dimension at most 3
  r.verdict("discrete_minkowski", count <= bound, s.size() <= 3 ? Tag::Theorem : Tag::Conjecture,
            Json{{"bound", int_json(bound)}});
}

void makai(Report& r, const Instance& inst, const Options& opt) {
  const std::size_t n = inst.body.dim();
  MinimaReport m = minima_report(inst.body, inst.lattice, opt);
  Enclosure ratio = volume_ratio(inst.body, inst.lattice);
  const Magnitude& lam = m.dual_successive.front().value;
  Magnitude prod = lam;
  for (std::size_t i = 1; i < n; ++i) prod = prod * m.dual_successive[i].value;
  const Rat nf = Rat(factorial(n));
  r.result()["volume_ratio"] = enclosure_json(ratio);
  r.result()["dual_first"] = magnitude_json(lam);
  if (inst.body.is_symmetric()) {
    r.verdict("makai.symmetric", power_below(1 / nf, lam, n, ratio), Tag::Conjecture);
    r.verdict("makai.symmetric_product", power_below(1 / nf, prod, 1, ratio), Tag::Conjecture);
  }
  Rat c = Rat(static_cast<long>(n) + 1) / (power(Rat(2), n) * nf);
  r.verdict("makai.general", power_below(c, lam, n, ratio), Tag::Conjecture);
  r.verdict("makai.general_product", power_below(c, prod, 1, ratio), Tag::Conjecture);
  // the proven consequence of the packing-minima volume bound
  bool rho1_max = std::all_of(m.packing.begin(), m.packing.end(),
                              [&](const MinimaValue& v) { return v.value <= m.packing.front().value; });
  if (rho1_max) r.verdict("makai.symmetric_when_rho1_largest", power_below(1 / nf, lam, n, ratio), Tag::Theorem);
}

Enclosure body_volume(const Body& k) { return volume_ratio(k, Lattice::standard(k.dim())); }

void mahler_volume(Report& r, const Instance& inst) {
  const std::size_t n = inst.body.dim();
  const Rat nf = Rat(factorial(n));
  SymBody kc = difference_body(inst.body);
  Enclosure vk = body_volume(inst.body);
  Enclosure vpolar = body_volume(polar_body(kc).body());
  Enclosure general{vk.lo * vpolar.lo, vk.hi * vpolar.hi};
  r.result()["volume"] = enclosure_json(vk);
  r.result()["difference_polar_volume"] = enclosure_json(vpolar);
  r.verdict("mahler.general", general.lo >= Rat(static_cast<long>(n) + 1) / nf, Tag::Conjecture,
            Json{{"product", enclosure_json(general)}});
  if (inst.body.is_symmetric()) {
    Enclosure vsym = body_volume(polar_body(SymBody(inst.body)).body());
    Enclosure product{vk.lo * vsym.lo, vk.hi * vsym.hi};
    r.verdict("mahler.symmetric", product.lo >= power(Rat(4), n) / nf, Tag::Conjecture,
              Json{{"product", enclosure_json(product)}});
  }
}

void covering_product(Report& r, const Instance& inst, const Options& opt) {
  MinimaReport m = minima_report(inst.body, inst.lattice, opt);
  if (!m.covering) {
    r.not_applicable("covering_product", "covering minima are computed for boxes on the standard lattice");
    return;
  }
  const std::size_t n = m.covering->size();
  Enclosure ratio = volume_ratio(inst.body, inst.lattice);
  Rat bound = Rat(static_cast<long>(n) + 1) / power(Rat(2), n);
  for (const auto& mu : *m.covering) bound /= mu;
  r.result()["covering"] = rat_vector_json(*m.covering);
  r.verdict("covering_product", bound <= ratio.lo, Tag::Conjecture, Json{{"bound", rat_json(bound)}});
}

std::size_t simplex_dim(const std::optional<Instance>& inst, const Flags& flags) {
  if (flags.n) return *flags.n;
  if (inst) return inst->lattice.dim();
  invalid("rho-reg-simplex needs --n or an instance");
}

}  // namespace

void rho_reg_simplex(Report& r, std::size_t n, const Options& opt) {
  if (n < 1) invalid("--n must be positive");
  Lattice lat = simplex_lattice(n);
  auto rho = packing_minima_all(Body::ball(1, n), lat, opt);
  Json rows = Json::array();
  for (std::size_t j = 1; j <= n; ++j) {
    Rat conj = conjectured_simplex_rho(n, j);
    Json row{{"j", j}, {"rho", magnitude_json(rho[j - 1].value)}, {"conjectured_squared", rat_json(conj)}};
    if (j < n) {
      Rat lower = rho_lower_bound_formula({n, 1, make_rat(1, 2)}, j);
      row["lower_bound_squared"] = rat_json(lower);
      r.verdict("rho_reg_simplex.lower_bound_j" + std::to_string(j), rho[j - 1].value.squared() >= lower, Tag::Theorem);
    }
    r.verdict("rho_reg_simplex.conjecture_j" + std::to_string(j), rho[j - 1].value.squared() == conj, Tag::Conjecture);
    rows.push_back(std::move(row));
  }
  r.result()["n"] = n;
  r.result()["rows"] = rows;
}

bool needs_instance(const std::vector<std::string>& words) {
  if (words.empty()) return false;
  if (words[0] == "reproduce") return false;
  if (words[0] == "probe" && words.size() > 1 && words[1] == "rho-reg-simplex") return false;
  return true;
}

Report run_command(const std::vector<std::string>& words, const std::optional<Instance>& instance, const Flags& flags) {
  if (words.empty()) invalid("missing command");
  const std::string& cmd = words[0];
  const std::string sub = words.size() > 1 ? words[1] : "";
  const std::size_t expected = cmd == "verify" || cmd == "probe" || cmd == "reproduce" ? 2 : 1;
  if (words.size() != expected) invalid("'" + cmd + "' takes " + std::to_string(expected - 1) + " subcommand(s)");

  if (cmd == "reproduce") {
    if (sub == "boxes") return reproduce_boxes(flags);
    if (sub == "equiangular") return reproduce_equiangular(flags);
    if (sub == "simplex") return reproduce_simplex(flags);
    if (sub == "paper-all") return reproduce_paper_all(flags);
    invalid("unknown suite '" + sub + "'");
  }

  Report r(joined(words));
  if (cmd == "probe" && sub == "rho-reg-simplex") {
    Options opt = instance ? options_for(*instance, flags) : Options{};
    if (!instance) {
      if (flags.budget) opt.budget = *flags.budget;
      if (flags.threads) opt.threads = *flags.threads;
    }
    rho_reg_simplex(r, simplex_dim(instance, flags), opt);
    return r;
  }
  if (!instance) invalid("'" + joined(words) + "' needs an instance");
  const Instance& inst = *instance;
  const Options opt = options_for(inst, flags);
  r.set_instance(inst.input);

  if (cmd == "minima") {
    minima_command(r, inst, opt);
  } else if (cmd == "packing") {
    r.result()["packing"] = minima_list_json(packing_minima_all(inst.body, inst.lattice, opt));
  } else if (cmd == "width") {
    r.result()["width"] = minima_json(lattice_width(inst.body, inst.lattice, opt));
  } else if (cmd == "count") {
    PointCount c = count_points(inst.body, inst.lattice, opt, true);
    r.result()["count"] = int_json(c.count);
    Json pts = Json::array();
    for (const auto& p : c.points) pts.push_back(vector_json(p));
    r.result()["points"] = pts;
  } else if (cmd == "kz") {
    kz_command(r, inst, opt);
  } else if (cmd == "verify") {
    if (sub == "sandwich") {
      sandwich_verdicts(r, verify_sandwich(inst.body, inst.lattice, opt));
    } else if (sub == "mahler") {
      mahler_verdicts(r, verify_sandwich(inst.body, inst.lattice, opt));
    } else if (sub == "volume") {
      volume_verdicts(r, verify_volume_sandwich(inst.body, inst.lattice, opt));
    } else if (sub == "count-upper") {
      count_verdicts(r, verify_count_upper(inst.body, inst.lattice, opt), "count_upper");
    } else if (sub == "slice") {
      const std::size_t n = inst.lattice.dim();
      LatticePlane plane = saturate(inst.lattice, parse_plane(flags.plane, n));
      RatVec t = parse_shift(flags.shift, n);
      r.result()["plane"] = plane_json(plane);
      r.result()["shift"] = rat_vector_json(t);
      count_verdicts(r, verify_slice_bound(inst.body, inst.lattice, plane, t, opt), "slice");
    } else if (sub == "planar-lower") {
      count_verdicts(r, verify_planar_lower(inst.body, inst.lattice, opt), "planar_lower");
    } else if (sub == "covering-box") {
      covering_box(r, inst, opt);
    } else if (sub == "projection-monotonicity") {
      projection_monotonicity(r, inst, opt);
    } else {
      invalid("unknown verification '" + sub + "'");
    }
  } else if (cmd == "probe") {
    if (sub == "transference") {
      transference_command(r, inst, opt);
    } else if (sub == "discrete-minkowski") {
      discrete_minkowski(r, inst, opt);
    } else if (sub == "makai") {
      makai(r, inst, opt);
    } else if (sub == "mahler-volume") {
      mahler_volume(r, inst);
    } else if (sub == "covering-product") {
      covering_product(r, inst, opt);
    } else {
      invalid("unknown probe '" + sub + "'");
    }
  } else {
    invalid("unknown command '" + cmd + "'");
  }
  return r;
}

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::BudgetExceeded ? kBudgetExceeded : kInputError;
}

Json error_json(const Error& e) {
  return Json{{"error", {{"code", to_string(e.code())}, {"module", e.module()}, {"message", e.what()}}}};
}

}  // namespace packmin::cli
