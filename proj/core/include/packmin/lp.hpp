#pragma once

// Exact two-phase simplex over the rationals (Bland's rule).

#include "packmin/ratlin.hpp"

namespace packmin {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rat value;  // optimal objective when status == Optimal
  RatVec x;   // an optimal vertex
};

// minimize cᵀx subject to A·x = b, x >= 0.
LpResult lp_minimize(const RatMatrix& a, const RatVec& b, const RatVec& c);

}  // namespace packmin
