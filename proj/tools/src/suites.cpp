#include <algorithm>

#include "packmin/families.hpp"
#include "packmin_cli/commands.hpp"

namespace packmin::cli {

namespace {

Options suite_options(const Flags& flags) {
  Options o;
  if (flags.budget) o.budget = *flags.budget;
  if (flags.threads) o.threads = *flags.threads;
  return o;
}

std::uint64_t suite_seed(const Flags& flags) { return flags.seed.value_or(1); }

bool all_theorems(const Verdicts& v) {
  return std::all_of(v.bounds.begin(), v.bounds.end(), [](const BoundCheck& b) { return !b.theorem || b.satisfied; });
}

std::vector<EquiangularParams> equiangular_grid(std::size_t n) {
  const Rat half = make_rat(1, 2);
  std::vector<EquiangularParams> out;
  for (auto [a, b] : std::vector<std::pair<Rat, Rat>>{{1, half},
                                                      {2, 1},
                                                      {3, 1},
                                                      {2, half},
                                                      {3, -half},
                                                      {Rat(static_cast<long>(n)), -1},
                                                      {1, make_rat(-1, 2 * static_cast<long>(n))},
                                                      {1, 0}}) {
    EquiangularParams p{n, a, b};
    if (is_valid(p)) out.push_back(p);
  }
  return out;
}

Report equiangular_case(const EquiangularParams& p, const Options& opt) {
  const std::size_t n = p.n;
  Report r("equiangular n=" + std::to_string(n) + " a=" + to_string(p.a) + " b=" + to_string(p.b));
  Lattice lat = make_equiangular(p);
  DualParams d = dual_params(p);
  r.result()["dual"] = Json{{"a_bar", rat_json(d.a_bar)}, {"b_bar", rat_json(d.b_bar)}};
  r.verdict("dual_gram_is_inverse",
            equiangular_gram(n, p.a, p.b) * equiangular_gram(n, d.a_bar, d.b_bar) == RatMatrix::identity(n),
            Tag::Theorem);

  const Body ball = Body::ball(1, n);
  auto succ = successive_minima(SymBody(ball), lat, opt);
  r.verdict("successive_minima_equal_sqrt_a",
            std::all_of(succ.begin(), succ.end(),
                        [&](const MinimaValue& v) { return v.value.squared() == p.a; }),
            Tag::Theorem);

  bool projected_ok = true;
  for (std::size_t j = 1; j < n; ++j) {
    std::vector<std::size_t> pivot(j);
    for (std::size_t t = 0; t < j; ++t) pivot[t] = t;
    Lattice proj = Lattice::from_gram(schur_complement(lat.gram(), pivot));
    for (const auto& v : successive_minima(SymBody(Body::ball(1, n - j)), proj, opt))
      projected_ok = projected_ok && v.value.squared() == projected_minima_formula(p, j);
  }
  r.verdict("projected_minima_closed_form", projected_ok, Tag::Theorem);

  auto rho = packing_minima_all(ball, lat, opt);
  r.result()["packing"] = minima_list_json(rho);
  bool lower_ok = true;
  for (std::size_t j = 1; j <= n; ++j) lower_ok = lower_ok && rho[j - 1].value.squared() >= rho_lower_bound_formula(p, j);
  r.verdict("packing_lower_bound", lower_ok, Tag::Theorem);
  r.verdict("last_packing_equals_half_sqrt_a", rho[n - 1].value.squared() == p.a / 4, Tag::Theorem);
  if (p.b != 0) r.verdict("strict_drop_before_last", rho[n - 2].value < rho[n - 1].value, Tag::Theorem);

  Json products = Json::array();
  for (const auto& row : transference_probe(ball, lat, opt)) {
    products.push_back(rat_json(row.product_squared));
    r.verdict("transference_j" + std::to_string(row.j), row.at_least_quarter, Tag::Conjecture);
  }
  r.result()["transference_squared"] = products;
  return r;
}

Report simplex_case(std::size_t n, const Options& opt, bool all_indices) {
  Report r("simplex n=" + std::to_string(n));
  Lattice lat = simplex_lattice(n);
  auto unit = simplex_lattice_unit_vectors(n);
  bool unit_ok = unit.size() == n * n + n;
  for (const auto& v : unit) unit_ok = unit_ok && quadratic_form(lat.gram(), v) == 1;
  r.verdict("unit_vectors", unit_ok, Tag::Theorem);
  r.verdict("polar_inradius_at_least_half", simplex_polar_inradius_ok(n), Tag::Theorem);
  auto v = packing_minimum(Body::ball(1, n), lat, n - 1, opt);
  r.result()["rho_n_minus_1"] = minima_json(v);
  r.verdict("rho_n_minus_1_equals_sqrt_3_16", identical(v.value, Magnitude::sqrt_of(make_rat(3, 16))), Tag::Theorem);
  if (all_indices) rho_reg_simplex(r, n, opt);
  return r;
}

Report examples_section(const Options& opt) {
  Report r("examples");
  const Rat one = 1;
  auto q = [](long p, long d = 1) { return make_rat(p, d); };

  Body box = Body::box({q(1), q(2)});
  auto rho = packing_minima_all(box, Lattice::standard(2), opt);
  r.result()["box_1_2_packing"] = minima_list_json(rho);
  r.verdict("box_packing_closed_form",
            identical(rho[0].value, Magnitude::exact(q(1, 2))) && identical(rho[1].value, Magnitude::exact(q(1, 4))),
            Tag::Theorem);
  auto cu = verify_count_upper(box, Lattice::standard(2), opt);
  r.verdict("box_count_attains_packing_product", cu.count == 15 && cu.find("packing_product")->value == "15",
            Tag::Theorem);
  r.verdicts_from("box_count_upper", cu);

  auto cross = verify_volume_sandwich(Body::cross({one, one, one}), Lattice::standard(3), opt);
  r.verdict("crosspolytope_lower_tight", cross.lower_tight, Tag::Theorem);
  r.verdicts_from("crosspolytope_volume", cross);
  auto box_vol = verify_volume_sandwich(box, Lattice::standard(2), opt);
  r.verdict("box_upper_tight", box_vol.upper_tight, Tag::Theorem);

  auto hex = verify_count_upper(Body::ball(one, 2), simplex_lattice(2), opt);
  r.result()["hexagonal_count"] = int_json(hex.count);
  r.verdict("hexagonal_count", hex.count == 7 && hex.find("decreasing_subsequence")->value == "9", Tag::Theorem);
  r.verdicts_from("hexagonal_count_upper", hex);

  auto planar = verify_planar_lower(Body::box({q(2), q(3)}), Lattice::standard(2), opt);
  r.verdict("planar_box_symmetric_bound", planar.count == 35 && planar.find("symmetric_lower")->value == "8",
            Tag::Theorem);
  r.verdicts_from("planar_box", planar);
  auto tri = verify_planar_lower(Body::simplex({{q(0), q(0)}, {q(3), q(0)}, {q(0), q(3)}}), Lattice::standard(2), opt);
  r.verdicts_from("planar_triangle", tri);

  for (std::size_t n = 2; n <= 3; ++n) {
    // the crosspolytope attains the symmetric Makai bound: λ₁ of the dual is 2
    Body c = Body::cross(RatVec(n, one));
    auto w = lattice_width(c, Lattice::standard(n), opt);
    Rat lhs = 1;
    for (std::size_t i = 0; i < n; ++i) lhs *= w.value.payload();
    Int nf = 1;
    for (std::size_t i = 2; i <= n; ++i) nf *= static_cast<unsigned long>(i);
    r.verdict("makai_crosspolytope_equality_n" + std::to_string(n), lhs / Rat(nf) == volume(c), Tag::Conjecture);
  }

  for (const auto& [name, body] : std::vector<std::pair<std::string, Body>>{{"box", Body::box({one, one})},
                                                                            {"disc", Body::ball(one, 2)}}) {
    auto lim = volume_limit_check(body, Lattice::standard(2), {q(10), q(20), q(40)}, std::nullopt, opt);
    Json rows = Json::array();
    for (const auto& row : lim.rows)
      rows.push_back(Json{{"r", rat_json(row.r)},
                          {"count", int_json(row.count)},
                          {"deviation_lo", rat_json(row.deviation.lo)},
                          {"deviation_hi", rat_json(row.deviation.hi)},
                          {"tolerance", rat_json(row.tolerance)}});
    r.result()["volume_limit_" + name] = rows;
    r.verdict("volume_limit_" + name + "_within", lim.all_within, Tag::Soft);
    r.verdict("volume_limit_" + name + "_decreasing", lim.strictly_decreasing, Tag::Soft);
  }
  return r;
}

Report random_section(const Flags& flags, const Options& opt) {
  Report r("random");
  static const char* kinds[] = {"box", "cross", "polygon", "triangle", "quad", "basis-hexagon"};
  const std::uint64_t base = suite_seed(flags);
  Json rows = Json::array();
  for (std::uint64_t i = 0; i < 24; ++i) {
    const std::string kind = kinds[i % 6];
    const std::size_t n = kind == "box" || kind == "cross" ? 1 + i % 3 : 2 + (i / 6) % 2;
    Instance inst = random_instance(base + i, n, kind);
    MinimaReport m = minima_report(inst.body, inst.lattice, opt);
    SandwichReport s = sandwich_from(m);
    VolumeReport v = volume_sandwich_from(inst.body, inst.lattice, m);
    Int count = count_points(inst.body, inst.lattice, opt).count;
    CountReport c = count_upper_from(count, m);
    const std::string tag = kind + "#" + std::to_string(base + i);
    r.verdict(tag + ".sandwich", s.holds(), Tag::Theorem);
    r.verdict(tag + ".volume", all_theorems(v), Tag::Theorem);
    r.verdict(tag + ".count_upper", all_theorems(c), Tag::Theorem);
    if (n == 2) {
      CountReport p = planar_lower_from(inst.body, count, m.packing);
      if (p.applicable) r.verdict(tag + ".planar_lower", all_theorems(p), Tag::Theorem);
    }
    rows.push_back(Json{{"instance", inst.input}, {"count", int_json(count)}, {"packing", minima_list_json(m.packing)}});
  }
  r.result()["instances"] = rows;
  return r;
}

}  // namespace

Report reproduce_boxes(const Flags& flags) {
  const Options opt = suite_options(flags);
  Report r("reproduce boxes");
  const std::uint64_t base = suite_seed(flags);
  bool packing_ok = true, count_ok = true, bounds_ok = true, tight_ok = true;
  Json rows = Json::array();
  for (std::uint64_t i = 0; i < 50; ++i) {
    const std::size_t n = 1 + i % 4;
    Instance inst = random_instance(base + i, n, "box");
    const RatVec& half = std::get<Box>(inst.body.data()).r;
    MinimaReport m = minima_report(inst.body, inst.lattice, opt);
    Int product = 1;
    for (std::size_t j = 0; j < n; ++j) {
      packing_ok = packing_ok && identical(m.packing[j].value, Magnitude::exact(1 / (2 * half[j])));
      product *= 2 * floor(half[j]) + 1;
    }
    Int count = count_points(inst.body, inst.lattice, opt).count;
    CountReport c = count_upper_from(count, m);
    count_ok = count_ok && count == product && c.find("packing_product")->value == to_string(product);
    bounds_ok = bounds_ok && all_theorems(c);
    VolumeReport v = volume_sandwich_from(inst.body, inst.lattice, m);
    tight_ok = tight_ok && v.upper_tight && all_theorems(v);
    Json packing = Json::array();
    for (const auto& x : m.packing) packing.push_back(magnitude_json(x.value));
    rows.push_back(Json{{"r", rat_vector_json(half)}, {"packing", packing}, {"count", int_json(count)}});
  }
  r.result()["boxes"] = rows;
  r.verdict("packing_is_half_reciprocal", packing_ok, Tag::Theorem);
  r.verdict("count_attains_packing_product", count_ok, Tag::Theorem);
  r.verdict("count_upper_bounds", bounds_ok, Tag::Theorem);
  r.verdict("volume_upper_tight", tight_ok, Tag::Theorem);
  return r;
}

Report reproduce_equiangular(const Flags& flags) {
  const Options opt = suite_options(flags);
  Report r("reproduce equiangular");
  std::vector<std::size_t> dims;
  if (flags.n) dims.push_back(*flags.n);
  else dims = {2, 3, 4, 5};
  for (std::size_t n : dims) {
    if (n < 2) throw Error(ErrorCode::InvalidParams, "cli", "equiangular suite needs n >= 2");
    for (const auto& p : equiangular_grid(n)) r.add_section(equiangular_case(p, opt));
  }
  return r;
}

Report reproduce_simplex(const Flags& flags) {
  const Options opt = suite_options(flags);
  Report r("reproduce simplex");
  std::vector<std::size_t> dims;
  if (flags.n) {
    dims.push_back(*flags.n);
  } else {
    dims = {2, 3, 4, 5};
    if (flags.slow) dims.insert(dims.end(), {6, 7});
  }
  for (std::size_t n : dims) {
    if (n < 2) throw Error(ErrorCode::InvalidParams, "cli", "simplex suite needs n >= 2");
    r.add_section(simplex_case(n, opt, n <= 5 || flags.slow));
  }
  Json heights = Json::array();
  for (std::size_t n = 1; n <= 12; ++n) {
    auto h = simplex_heights(n);
    heights.push_back(Json{{"n", n}, {"min_squared", rat_json(h.min)}});
    r.verdict("polar_inradius_iff_n_le_7_n" + std::to_string(n), simplex_polar_inradius_ok(n) == (n <= 7), Tag::Theorem);
  }
  r.result()["heights"] = heights;
  return r;
}

Report reproduce_paper_all(const Flags& flags) {
  const Options opt = suite_options(flags);
  Report r("reproduce paper-all");
  Flags sub = flags;
  sub.n.reset();
  r.add_section(examples_section(opt));
  r.add_section(reproduce_boxes(sub));
  r.add_section(reproduce_equiangular(sub));
  r.add_section(reproduce_simplex(sub));
  r.add_section(random_section(sub, opt));
  return r;
}

}  // namespace packmin::cli
