#include <algorithm>

#include "packmin/lattice.hpp"

namespace packmin {

namespace {

class Enumerator {
 public:
  Enumerator(const RatMatrix& gram, Rat bound, Budget& budget, const ShortVectorVisitor& visit)
      : n_(gram.rows()), bound_(std::move(bound)), budget_(budget), visit_(visit), x_(n_) {
    LdltResult f = ldlt(gram);
    l_ = std::move(f.l);
    d_ = std::move(f.d);
  }

  void run() {
    if (n_ == 0 || bound_ <= 0) return;
    level(n_ - 1, Rat(0), true);
    flush();
  }

 private:
  // Schnorr–Euchner order around the center of the current coordinate.
  void level(std::size_t j, const Rat& used, bool zero_above) {
    Rat c = 0;
    for (std::size_t i = j + 1; i < n_; ++i)
      if (x_[i] != 0) c -= l_(i, j) * x_[i];
    Int start = floor(c + make_rat(1, 2));
    Int up = start, down = start - 1;
    bool up_ok = true, down_ok = !zero_above || down >= (j == 0 ? 1 : 0);
    if (zero_above) {
      Int lo = j == 0 ? 1 : 0;
      if (up < lo) up = lo;
    }
    while (up_ok || down_ok) {
      if (aborted_) return;
      // pick the candidate closer to the center
      bool take_up;
      if (!up_ok) take_up = false;
      else if (!down_ok) take_up = true;
      else take_up = abs(Rat(up) - c) <= abs(Rat(down) - c);
      Int v = take_up ? up : down;
      Rat diff = Rat(v) - c;
      Rat norm = used + d_[j] * diff * diff;
      if (norm > bound_) {
        if (take_up) up_ok = false;
        else down_ok = false;
        continue;
      }
      if (take_up) ++up;
      else {
        --down;
        if (zero_above && down < (j == 0 ? 1 : 0)) down_ok = false;
      }
      if (++pending_ >= 4096) flush();
      x_[j] = v;
      if (j == 0) {
        if (!visit_(x_, norm, bound_)) aborted_ = true;
      } else {
        level(j - 1, norm, zero_above && v == 0);
      }
      x_[j] = 0;
    }
  }

  void flush() {
    budget_.charge(pending_);
    pending_ = 0;
  }

  std::size_t n_;
  Rat bound_;
  Budget& budget_;
  const ShortVectorVisitor& visit_;
  IntVec x_;
  RatMatrix l_;
  RatVec d_;
  std::uint64_t pending_ = 0;
  bool aborted_ = false;
};

}  // namespace

void enumerate_with(const RatMatrix& gram, Rat bound, Budget& budget, const ShortVectorVisitor& visit) {
  Enumerator e(gram, std::move(bound), budget, visit);
  e.run();
}

std::vector<IntVec> enumerate_short_vectors(const RatMatrix& gram, const Rat& bound, Budget& budget) {
  if (bound < 0) throw Error(ErrorCode::InvalidParams, "lattices", "negative enumeration bound");
  std::vector<std::pair<Rat, IntVec>> found;
  enumerate_with(gram, bound, budget, [&](const IntVec& x, const Rat& norm, Rat&) {
    found.emplace_back(norm, normalize_sign(x));
    return true;
  });
  std::sort(found.begin(), found.end());
  std::vector<IntVec> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

std::vector<IntVec> enumerate_short_vectors(const Lattice& lat, const Rat& bound, Budget& budget) {
  return enumerate_short_vectors(lat.gram(), bound, budget);
}

std::vector<IntVec> enumerate_short_vectors(const Lattice& lat, const Rat& bound) {
  Budget budget;
  return enumerate_short_vectors(lat.gram(), bound, budget);
}

}  // namespace packmin
