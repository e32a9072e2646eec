#include "packmin/magnitude.hpp"

namespace packmin {

Magnitude Magnitude::exact(Rat v) {
  if (v < 0) throw Error(ErrorCode::InvalidParams, "minima", "negative magnitude");
  Magnitude m;
  m.kind_ = Kind::Exact;
  m.payload_ = std::move(v);
  return m;
}

Magnitude Magnitude::sqrt_of(Rat squared) {
  if (squared < 0) throw Error(ErrorCode::InvalidParams, "minima", "negative radicand");
  Magnitude m;
  m.kind_ = Kind::SqrtOf;
  m.payload_ = std::move(squared);
  return m;
}

Rat Magnitude::squared() const { return kind_ == Kind::Exact ? Rat(payload_ * payload_) : payload_; }

Magnitude Magnitude::reciprocal() const {
  if (payload_ == 0) throw Error(ErrorCode::InvalidParams, "minima", "reciprocal of zero");
  Rat inv = 1 / payload_;
  return kind_ == Kind::Exact ? exact(inv) : sqrt_of(inv);
}

Magnitude Magnitude::scaled(const Rat& c) const {
  return kind_ == Kind::Exact ? exact(payload_ * c) : sqrt_of(payload_ * c * c);
}

Int Magnitude::floor() const {
  return kind_ == Kind::Exact ? packmin::floor(payload_) : isqrt_floor(payload_);
}

std::string Magnitude::str() const {
  return kind_ == Kind::Exact ? to_string(payload_) : "sqrt(" + to_string(payload_) + ")";
}

bool identical(const Magnitude& a, const Magnitude& b) {
  return a.kind() == b.kind() && a.payload() == b.payload();
}

Magnitude operator*(const Magnitude& a, const Magnitude& b) {
  if (a.is_exact() && b.is_exact()) return Magnitude::exact(a.payload() * b.payload());
  return Magnitude::sqrt_of(a.squared() * b.squared());
}

}  // namespace packmin
