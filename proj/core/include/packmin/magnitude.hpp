#pragma once

// Nonnegative quantities that are either rational or square roots of rationals.
// All comparisons go through the squared value.

#include <compare>
#include <string>

#include "packmin/ratlin.hpp"

namespace packmin {

class Magnitude {
 public:
  enum class Kind { Exact, SqrtOf };

  Magnitude() = default;
  static Magnitude exact(Rat v);
  static Magnitude sqrt_of(Rat squared);

  Kind kind() const noexcept { return kind_; }
  bool is_exact() const noexcept { return kind_ == Kind::Exact; }
  // Exact: the value itself. SqrtOf: the radicand.
  const Rat& payload() const noexcept { return payload_; }
  Rat squared() const;

  Magnitude reciprocal() const;
  Magnitude scaled(const Rat& c) const;  // c >= 0
  Int floor() const;

  // "p/q" for Exact, "sqrt(p/q)" for SqrtOf.
  std::string str() const;

  // numeric comparison
  friend bool operator==(const Magnitude& a, const Magnitude& b) { return a.squared() == b.squared(); }
  friend std::strong_ordering operator<=>(const Magnitude& a, const Magnitude& b) {
    Rat x = a.squared(), y = b.squared();
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Kind kind_ = Kind::Exact;
  Rat payload_ = 0;
};

// Same kind and same payload.
bool identical(const Magnitude& a, const Magnitude& b);
Magnitude operator*(const Magnitude& a, const Magnitude& b);

}  // namespace packmin
