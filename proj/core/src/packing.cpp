#include <algorithm>
#include <exception>
#include <map>
#include <thread>

#include "packmin/minima.hpp"

namespace packmin {

namespace {

[[noreturn]] void fail(ErrorCode code, const std::string& msg) { throw Error(code, "minima", msg); }

Rat power(const Rat& x, std::size_t e) {
  Rat r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= x;
  return r;
}

Rat gram_det(const RatMatrix& metric, const IntMatrix& w) {
  RatMatrix wr = to_rat(w);
  return determinant(wr.transpose() * metric * wr);
}

Rat shortest_norm(const RatMatrix& metric, Budget& budget) {
  IntMatrix u = lll_reduce(metric);
  Rat best = quadratic_form(metric, u.col(0));
  enumerate_with(metric, best, budget, [&](const IntVec&, const Rat& norm, Rat& bound) {
    if (norm < best) best = bound = norm;
    return true;
  });
  return best;
}

struct Candidate {
  Rat det;            // det(WᵀAW)
  IntMatrix w;        // saturated, HNF-canonical
  IntVec key;
  IntMatrix normals;  // integer basis of the orthogonal complement, L = ker(normalsᵀ)
};

bool outside(const IntMatrix& normals, const IntVec& v) {
  for (std::size_t j = 0; j < normals.cols(); ++j) {
    Int d = 0;
    for (std::size_t i = 0; i < normals.rows(); ++i) d += normals(i, j) * v[i];
    if (d != 0) return true;
  }
  return false;
}

bool candidate_less(const Candidate& a, const Candidate& b) {
  return a.det != b.det ? a.det < b.det : a.key < b.key;
}

IntVec column_key(const IntMatrix& w) {
  IntVec k;
  for (std::size_t j = 0; j < w.cols(); ++j)
    for (std::size_t i = 0; i < w.rows(); ++i) k.push_back(w(i, j));
  return k;
}

// Saturated rank-s sublattices of (Z^n, metric) with det(WᵀMW) <= cap.
std::vector<IntMatrix> sublattices_within(const RatMatrix& metric, std::size_t s, const Rat& cap, Budget& budget) {
  const std::size_t n = metric.rows();
  std::map<IntVec, IntMatrix> found;
  if (s == 1) {
    for (auto& v : enumerate_short_vectors(metric, cap, budget)) {
      if (content(v) != 1) continue;
      IntMatrix w(n, 1);
      w.set_col(0, v);
      found.emplace(v, w);
    }
  } else {
    const Rat hs = hermite_power_bound(s);
    const Rat prod_cap = hs * cap;
    const Rat len_cap = prod_cap / power(shortest_norm(metric, budget), s - 1);
    auto vecs = enumerate_short_vectors(metric, len_cap, budget);
    std::vector<Rat> norms;
    norms.reserve(vecs.size());
    for (const auto& v : vecs) norms.push_back(quadratic_form(metric, v));
    std::vector<std::size_t> pick;
    // successive-minima vectors of any admissible sublattice have a norm product
    // of at most γ_s^s·det, so subsets beyond that product can be skipped
    auto rec = [&](auto&& self, std::size_t from, const Rat& prod) -> void {
      const std::size_t left = s - pick.size();
      for (std::size_t t = from; t + left <= vecs.size(); ++t) {
        if (prod * power(norms[t], left) > prod_cap) break;
        budget.charge();
        pick.push_back(t);
        IntMatrix m(n, pick.size());
        for (std::size_t c = 0; c < pick.size(); ++c) m.set_col(c, vecs[pick[c]]);
        if (rank(m) == pick.size()) {
          if (left == 1) {
            IntMatrix w = saturated_basis(m);
            if (gram_det(metric, w) <= cap) found.emplace(column_key(w), std::move(w));
          } else {
            self(self, t + 1, prod * norms[t]);
          }
        }
        pick.pop_back();
      }
    };
    rec(rec, 0, Rat(1));
  }
  std::vector<IntMatrix> out;
  out.reserve(found.size());
  for (auto& [k, w] : found) out.push_back(std::move(w));
  return out;
}

struct Evaluation {
  std::optional<ChartVector> shortest;  // in the projected chart
  IntMatrix full;                       // completion of the plane
};

Evaluation evaluate_plane(const ChartBody& kc, const IntMatrix& w, Budget& budget, const std::optional<Rat>& threshold,
                          bool inclusive) {
  const std::size_t k = w.cols();
  Completion c = complete_basis(w);
  ChartBody proj = chart_project(chart_transform(kc, c.full), k);
  return {chart_shortest(proj, budget, threshold, inclusive), std::move(c.full)};
}

IntVec lift(const IntMatrix& full, std::size_t k, const IntVec& y) {
  IntVec x(full.rows());
  for (std::size_t i = 0; i < full.rows(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) x[i] += full(i, k + j) * y[j];
  return x;
}

struct Best {
  Rat squared;
  IntMatrix w;
  IntVec key;
  IntVec witness;
};

void subsets(std::size_t n, std::size_t k, std::size_t from, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out, std::size_t limit) {
  if (out.size() >= limit) return;
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t t = from; t < n; ++t) {
    cur.push_back(t);
    subsets(n, k, t + 1, cur, out, limit);
    cur.pop_back();
  }
}

// Best plane among those spanned by subsets of an LLL-reduced basis.
Best seed_plane(const ChartBody& kc, std::size_t k, Budget& budget) {
  const std::size_t n = kc.dim;
  IntMatrix u = lll_reduce(kc.inner);
  std::vector<std::vector<std::size_t>> choices;
  std::vector<std::size_t> cur;
  subsets(n, k, 0, cur, choices, 20);
  std::optional<Best> best;
  for (const auto& ch : choices) {
    IntMatrix m(n, k);
    for (std::size_t c = 0; c < k; ++c) m.set_col(c, u.col(ch[c]));
    IntMatrix w = saturated_basis(m);
    Evaluation e = evaluate_plane(kc, w, budget, std::nullopt, false);
    IntVec key = column_key(w);
    if (!best || e.shortest->squared > best->squared ||
        (e.shortest->squared == best->squared && key < best->key))
      best = Best{e.shortest->squared, w, key, lift(e.full, k, e.shortest->x)};
  }
  return *best;
}

Rat det_cap_for(const Rat& hermite, const Rat& det_metric, const Rat& value_squared, std::size_t i) {
  return hermite * det_metric / power(value_squared, i);
}

}  // namespace

Rat hermite_power_bound(std::size_t s) {
  static const Rat table[] = {make_rat(1),     make_rat(1),  make_rat(4, 3), make_rat(2),  make_rat(4),
                              make_rat(8),     make_rat(64, 3), make_rat(64), make_rat(256)};
  if (s < 9) return table[s];
  // γ_s <= 1 + s/4
  return power(1 + make_rat(static_cast<long>(s), 4), s);
}

PackingCaps packing_caps(const ChartBody& kc, std::size_t i, Budget& budget) {
  const std::size_t n = kc.dim;
  if (i < 1 || i > n) fail(ErrorCode::RankOutOfRange, "packing index out of range");
  PackingCaps caps;
  caps.metric = kc.inner;
  const std::size_t k = n - i;
  Rat seed;
  if (k == 0) {
    seed = chart_shortest(kc, budget)->squared;
  } else {
    seed = seed_plane(kc, k, budget).squared;
  }
  caps.seed_value = make_value(kc, seed);
  caps.det_cap = det_cap_for(hermite_power_bound(i), determinant(kc.inner), seed, i);
  if (k == 0) {
    caps.generator_cap = 0;
  } else {
    caps.generator_cap =
        hermite_power_bound(k) * caps.det_cap / power(shortest_norm(kc.inner, budget), k - 1);
  }
  return caps;
}

MinimaValue chart_packing_minimum(const ChartBody& kc, const RatMatrix& gram, std::size_t i, const Options& opt,
                                  Budget& budget) {
  const std::size_t n = kc.dim;
  if (i < 1 || i > n) fail(ErrorCode::RankOutOfRange, "packing index out of range");
  const std::size_t k = n - i;
  if (k == 0) {
    auto s = chart_shortest(kc, budget);
    LatticePlane zero;
    zero.basis = IntMatrix(n, 0);
    zero.det_squared = 1;
    return {make_value(kc, s->squared), s->x, zero};
  }

  const RatMatrix& a = kc.inner;
  const Rat det_a = determinant(a);
  const Rat hermite = hermite_power_bound(i);
  Best best = seed_plane(kc, k, budget);
  Rat cap = det_cap_for(hermite, det_a, best.squared, i);

  // planes of rank k with det(WᵀAW) <= cap, from whichever side has smaller rank
  std::vector<Candidate> cands;
  if (k <= n - k) {
    for (auto& w : sublattices_within(a, k, cap, budget)) {
      Rat d = gram_det(a, w);
      IntVec key = column_key(w);
      IntMatrix normals = kernel_basis(to_rat(w.transpose()));
      cands.push_back({d, std::move(w), std::move(key), std::move(normals)});
    }
  } else {
    // det_A(Z^n ∩ L) = det(A)·det_{A⁻¹}(Z^n ∩ L^⊥)
    RatMatrix ainv = inverse(a);
    for (auto& y : sublattices_within(ainv, n - k, cap / det_a, budget)) {
      IntMatrix w = kernel_basis(to_rat(y.transpose()));
      Rat d = gram_det(a, w);
      IntVec key = column_key(w);
      cands.push_back({d, std::move(w), std::move(key), std::move(y)});
    }
  }
  std::sort(cands.begin(), cands.end(), candidate_less);

  // The first successive-minima vector outside a plane is the shortest lattice
  // vector outside it, and projecting it can only shorten it.
  const std::vector<ChartVector> minima = chart_successive(kc, budget);
  auto beaten = [&](const Candidate& c, const Rat& value, bool inclusive) {
    for (const auto& v : minima)
      if (outside(c.normals, v.x)) return inclusive ? v.squared <= value : v.squared < value;
    return false;
  };

  const unsigned threads = std::max(1u, opt.threads);
  const std::size_t batch = threads == 1 ? 1 : 4 * static_cast<std::size_t>(threads);
  std::size_t next = 0;
  while (next < cands.size() && cands[next].det <= cap) {
    std::size_t end = next;
    while (end < cands.size() && end - next < batch && cands[end].det <= cap) ++end;
    std::vector<std::optional<Evaluation>> results(end - next);
    const Best snapshot = best;
    auto work = [&](std::size_t t) {
      const Candidate& c = cands[next + t];
      // a smaller key wins ties, a larger key must be strictly better
      bool inclusive = !(c.key < snapshot.key);
      if (c.key == snapshot.key || beaten(c, snapshot.squared, inclusive)) return;
      results[t] = evaluate_plane(kc, c.w, budget, snapshot.squared, inclusive);
    };
    if (threads == 1 || end - next == 1) {
      for (std::size_t t = 0; t < end - next; ++t) work(t);
    } else {
      std::vector<std::exception_ptr> errors(threads);
      std::vector<std::thread> pool;
      for (unsigned p = 0; p < threads; ++p)
        pool.emplace_back([&, p] {
          try {
            for (std::size_t t = p; t < end - next; t += threads) work(t);
          } catch (...) {
            errors[p] = std::current_exception();
          }
        });
      for (auto& th : pool) th.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    for (std::size_t t = 0; t < end - next; ++t) {
      if (!results[t] || !results[t]->shortest) continue;
      const Candidate& c = cands[next + t];
      const ChartVector& sv = *results[t]->shortest;
      if (sv.squared > best.squared || (sv.squared == best.squared && c.key < best.key))
        best = Best{sv.squared, c.w, c.key, lift(results[t]->full, k, sv.x)};
    }
    cap = det_cap_for(hermite, det_a, best.squared, i);
    next = end;
  }

  LatticePlane plane = saturate(gram, best.w);
  return {make_value(kc, best.squared), best.witness, plane};
}

}  // namespace packmin
