#include "packmin_cli/instance.hpp"

#include <random>
#include <set>

#include "packmin/families.hpp"

namespace packmin::cli {

namespace {

[[noreturn]] void invalid(const std::string& field, const std::string& msg) {
  throw Error(ErrorCode::ValidationError, "cli", field + ": " + msg);
}

void only_keys(const Json& obj, const std::string& field, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) invalid(field, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) invalid(field.empty() ? key : field + "." + key, "unknown key");
  }
}

const Json& required(const Json& obj, const char* key, const std::string& field) {
  auto it = obj.find(key);
  if (it == obj.end()) invalid(field.empty() ? key : field + "." + key, "missing");
  return *it;
}

std::string join(const std::string& field, const std::string& key) { return field.empty() ? key : field + "." + key; }

std::string indexed(const std::string& field, std::size_t i) { return field + "[" + std::to_string(i) + "]"; }

RatVec rat_vector(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) invalid(field, "expected a nonempty array of rationals");
  RatVec v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(rat_from_json(j[i], indexed(field, i)));
  return v;
}

std::vector<RatVec> rat_rows(const Json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) invalid(field, "expected a nonempty array of arrays");
  std::vector<RatVec> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(rat_vector(j[i], indexed(field, i)));
    if (rows.back().size() != rows.front().size()) invalid(indexed(field, i), "ragged array");
  }
  return rows;
}

RatMatrix square_from_rows(const std::vector<RatVec>& rows, const std::string& field) {
  const std::size_t n = rows.size();
  if (rows.front().size() != n) invalid(field, "expected a square matrix");
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rows[i][j];
  return m;
}

std::size_t count_field(const Json& j, const std::string& field, std::size_t lo, std::size_t hi) {
  if (!j.is_number_unsigned()) invalid(field, "expected a nonnegative integer");
  auto v = j.get<std::uint64_t>();
  if (v < lo || v > hi) invalid(field, "out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<std::size_t>(v);
}

template <class F>
auto guarded(const std::string& field, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ValidationError && e.module() == "cli") throw;
    invalid(field, std::string(to_string(e.code())) + ": " + e.what());
  }
}

Lattice parse_lattice(const Json& j) {
  const std::string f = "lattice";
  if (!j.is_object()) invalid(f, "expected an object");
  const Json& kind = required(j, "kind", f);
  if (!kind.is_string()) invalid(join(f, "kind"), "expected a string");
  const std::string k = kind.get<std::string>();
  if (k == "basis") {
    only_keys(j, f, {"kind", "columns"});
    auto cols = rat_rows(required(j, "columns", f), join(f, "columns"));
    RatMatrix b = square_from_rows(cols, join(f, "columns")).transpose();
    return guarded(join(f, "columns"), [&] { return Lattice::from_basis(b); });
  }
  if (k == "gram") {
    only_keys(j, f, {"kind", "matrix"});
    auto rows = rat_rows(required(j, "matrix", f), join(f, "matrix"));
    RatMatrix g = square_from_rows(rows, join(f, "matrix"));
    return guarded(join(f, "matrix"), [&] { return Lattice::from_gram(g); });
  }
  if (k == "standard") {
    only_keys(j, f, {"kind", "n"});
    return Lattice::standard(count_field(required(j, "n", f), join(f, "n"), 1, 64));
  }
  if (k == "equiangular") {
    only_keys(j, f, {"kind", "n", "a", "b"});
    EquiangularParams p{count_field(required(j, "n", f), join(f, "n"), 1, 64), rat_from_json(required(j, "a", f), join(f, "a")),
                        rat_from_json(required(j, "b", f), join(f, "b"))};
    return guarded(f, [&] { return make_equiangular(p); });
  }
  invalid(join(f, "kind"), "unknown lattice kind '" + k + "'");
}

Body parse_body(const Json& j, std::size_t n) {
  const std::string f = "body";
  if (!j.is_object()) invalid(f, "expected an object");
  const Json& kind = required(j, "kind", f);
  if (!kind.is_string()) invalid(join(f, "kind"), "expected a string");
  const std::string k = kind.get<std::string>();
  auto dims = [&](std::size_t d, const std::string& field) {
    if (d != n) invalid(field, "dimension " + std::to_string(d) + " does not match the lattice dimension " + std::to_string(n));
  };
  if (k == "box" || k == "cross") {
    only_keys(j, f, {"kind", "r"});
    RatVec r = rat_vector(required(j, "r", f), join(f, "r"));
    dims(r.size(), join(f, "r"));
    if (k == "box")
      for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] < r[i - 1]) invalid(join(f, "r"), "box half-widths must be sorted ascending");
    return guarded(join(f, "r"), [&] { return k == "box" ? Body::box(r) : Body::cross(r); });
  }
  if (k == "simplex" || k == "vpolytope") {
    only_keys(j, f, {"kind", "vertices"});
    auto v = rat_rows(required(j, "vertices", f), join(f, "vertices"));
    dims(v.front().size(), join(f, "vertices"));
    return guarded(join(f, "vertices"), [&] { return k == "simplex" ? Body::simplex(v) : Body::vpolytope(v); });
  }
  if (k == "hpolytope") {
    only_keys(j, f, {"kind", "a", "b"});
    auto rows = rat_rows(required(j, "a", f), join(f, "a"));
    RatVec b = rat_vector(required(j, "b", f), join(f, "b"));
    dims(rows.front().size(), join(f, "a"));
    if (b.size() != rows.size()) invalid(join(f, "b"), "length differs from the number of rows of a");
    RatMatrix a(rows.size(), n);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t c = 0; c < n; ++c) a(i, c) = rows[i][c];
    return guarded(f, [&] { return Body::hpolytope(a, b); });
  }
  if (k == "ball") {
    only_keys(j, f, {"kind", "radius"});
    Rat r = rat_from_json(required(j, "radius", f), join(f, "radius"));
    return guarded(join(f, "radius"), [&] { return Body::ball(r, n); });
  }
  invalid(join(f, "kind"), "unknown body kind '" + k + "'");
}

// Draws in [lo, hi] from the raw generator output (portable across standard libraries).
long draw(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

Json rows_json(const std::vector<RatVec>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) {
    Json row = Json::array();
    for (const auto& x : r) row.push_back(rat_json(x));
    a.push_back(row);
  }
  return a;
}

Json vec_json(const RatVec& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rat_json(x));
  return a;
}

// Identity scrambled by elementary column operations, one row scaled.
std::vector<RatVec> random_basis_columns(std::mt19937_64& rng, std::size_t n) {
  std::vector<std::vector<long>> cols(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) cols[i][i] = 1;
  std::size_t row = static_cast<std::size_t>(draw(rng, 0, static_cast<long>(n) - 1));
  long scale = draw(rng, 1, 2);
  for (int step = 0; step < 4 * static_cast<int>(n); ++step) {
    std::size_t a = static_cast<std::size_t>(draw(rng, 0, static_cast<long>(n) - 1));
    std::size_t b = static_cast<std::size_t>(draw(rng, 0, static_cast<long>(n) - 1));
    long s = draw(rng, 0, 1) ? 1 : -1;
    if (a == b) continue;
    bool fits = true;
    // entries stay in [−5, 5] after the row scaling
    for (std::size_t r = 0; r < n; ++r) fits = fits && std::abs(cols[a][r] + s * cols[b][r]) * (r == row ? scale : 1) <= 5;
    if (!fits) continue;
    for (std::size_t r = 0; r < n; ++r) cols[a][r] += s * cols[b][r];
  }
  std::vector<RatVec> out;
  for (const auto& c : cols) {
    RatVec v;
    for (std::size_t r = 0; r < n; ++r) v.push_back(Rat(c[r] * (r == row ? scale : 1)));
    out.push_back(v);
  }
  return out;
}

bool full_rank(const std::vector<RatVec>& pts, std::size_t n) {
  RatMatrix m(pts.size(), n);
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = pts[i][j];
  return rank(m) == n;
}

std::vector<RatVec> random_points(std::mt19937_64& rng, std::size_t count, std::size_t n, long lo, long hi) {
  std::vector<RatVec> pts(count, RatVec(n));
  for (auto& p : pts)
    for (auto& x : p) x = Rat(draw(rng, lo, hi));
  return pts;
}

// affinely independent within the given count
bool affine_full(const std::vector<RatVec>& pts, std::size_t n) {
  std::vector<RatVec> d;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    RatVec v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = pts[i][j] - pts[0][j];
    d.push_back(v);
  }
  return full_rank(d, n);
}

}  // namespace

Json rat_json(const Rat& q) { return to_string(q); }

Rat rat_from_json(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rat(Int(j.dump()));
  if (!j.is_string()) invalid(field, "expected a rational string \"p/q\" or an integer");
  try {
    return parse_rat(j.get<std::string>());
  } catch (const Error& e) {
    invalid(field, e.what());
  }
}

Instance instance_from_json(const Json& input) {
  only_keys(input, "", {"lattice", "body", "options"});
  Lattice lat = parse_lattice(required(input, "lattice", ""));
  Body body = parse_body(required(input, "body", ""), lat.dim());
  if (body.is_polytope() && lat.kind() != LatticeKind::Basis)
    invalid("body.kind", "polytope bodies need a basis lattice (IncompatibleKinds)");
  Instance inst{lat, body, Options{}, 0, input};
  if (auto it = input.find("options"); it != input.end()) {
    only_keys(*it, "options", {"budget", "threads", "seed"});
    if (auto b = it->find("budget"); b != it->end()) {
      if (!b->is_number_unsigned() || b->get<std::uint64_t>() == 0) invalid("options.budget", "expected a positive integer");
      inst.options.budget = b->get<std::uint64_t>();
    }
    if (auto t = it->find("threads"); t != it->end())
      inst.options.threads = static_cast<unsigned>(count_field(*t, "options.threads", 1, 256));
    if (auto s = it->find("seed"); s != it->end()) {
      if (!s->is_number_unsigned()) invalid("options.seed", "expected a nonnegative integer");
      inst.seed = s->get<std::uint64_t>();
    }
  }
  return inst;
}

Instance parse_instance(std::string_view text) {
  Json input;
  try {
    input = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "cli", "at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return instance_from_json(input);
}

Instance random_instance(std::uint64_t seed, std::size_t dim, std::string_view kind) {
  if (dim < 1) invalid("dim", "must be positive");
  const std::string k(kind);
  std::uint64_t mix = seed * 0x9E3779B97F4A7C15ULL + dim;
  for (char c : k) mix = mix * 131 + static_cast<unsigned char>(c);
  std::mt19937_64 rng(mix);
  const std::size_t n = dim;
  Json lattice = {{"kind", "standard"}, {"n", n}};
  Json body;

  auto basis_lattice = [&] { return Json{{"kind", "basis"}, {"columns", rows_json(random_basis_columns(rng, n))}}; };
  auto symmetric_points = [&](std::size_t count) {
    for (;;) {
      auto pts = random_points(rng, count, n, -3, 3);
      if (!full_rank(pts, n)) continue;
      std::vector<RatVec> all;
      for (const auto& p : pts) {
        all.push_back(p);
        RatVec m = p;
        for (auto& x : m) x = -x;
        all.push_back(m);
      }
      return all;
    }
  };

  if (k == "box" || k == "basis-box") {
    std::vector<long> r(n);
    for (auto& x : r) x = draw(rng, 1, 4);
    std::sort(r.begin(), r.end());
    RatVec rv;
    for (long x : r) rv.push_back(Rat(x));
    body = {{"kind", "box"}, {"r", vec_json(rv)}};
    if (k == "basis-box") {
      if (n > 3) invalid("dim", "basis-box instances are limited to dimension 3");
      lattice = basis_lattice();
    }
  } else if (k == "cross") {
    RatVec r;
    for (std::size_t i = 0; i < n; ++i) r.push_back(Rat(draw(rng, 1, 3)));
    body = {{"kind", "cross"}, {"r", vec_json(r)}};
  } else if (k == "polygon" || k == "polytope" || k == "basis-hexagon") {
    if (n > 3) invalid("dim", "generic polytopes are limited to dimension 3");
    std::size_t count = n == 1 ? 1 : static_cast<std::size_t>(draw(rng, static_cast<long>(n), static_cast<long>(n) + 1));
    body = {{"kind", "vpolytope"}, {"vertices", rows_json(symmetric_points(count))}};
    if (k == "basis-hexagon") lattice = basis_lattice();
  } else if (k == "triangle" || k == "simplex" || k == "quad") {
    if (n > 3) invalid("dim", "generic polytopes are limited to dimension 3");
    std::size_t count = k == "quad" ? n + 2 : n + 1;
    for (;;) {
      auto pts = random_points(rng, count, n, -3, 3);
      if (!affine_full(pts, n)) continue;
      body = {{"kind", k == "quad" ? "vpolytope" : "simplex"}, {"vertices", rows_json(pts)}};
      break;
    }
    if (draw(rng, 0, 1)) lattice = basis_lattice();
  } else if (k == "gram") {
    if (n > 5) invalid("dim", "gram instances are limited to dimension 5");
    for (;;) {
      EquiangularParams p{n, Rat(draw(rng, 1, 4)), make_rat(draw(rng, -8, 8), draw(rng, 1, 4))};
      if (!is_valid(p)) continue;
      lattice = {{"kind", "gram"}, {"matrix", rows_json([&] {
                   std::vector<RatVec> rows(n, RatVec(n));
                   for (std::size_t i = 0; i < n; ++i)
                     for (std::size_t j = 0; j < n; ++j) rows[i][j] = i == j ? p.a : p.b;
                   return rows;
                 }())}};
      break;
    }
    body = {{"kind", "ball"}, {"radius", "1"}};
  } else {
    invalid("kind", "unknown random instance kind '" + k + "'");
  }
  return instance_from_json(Json{{"lattice", lattice}, {"body", body}});
}

}  // namespace packmin::cli
