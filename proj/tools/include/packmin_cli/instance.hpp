#pragma once

// Instance files: a lattice, a body and run options.

#include <cstdint>
#include <string>
#include <string_view>

#include "json.hpp"
#include "packmin/body.hpp"
#include "packmin/lattice.hpp"
#include "packmin/options.hpp"

namespace packmin::cli {

using Json = nlohmann::ordered_json;

struct Instance {
  Lattice lattice;
  Body body;
  Options options;
  std::uint64_t seed = 0;
  Json input;  // the validated input, echoed in reports
};

// Strict grammar: unknown keys are rejected. Throws ParseError with the byte
// position for malformed JSON and ValidationError naming the offending field.
Instance parse_instance(std::string_view text);
Instance instance_from_json(const Json& input);

// Rationals are written as "p/q" strings (integers as "p").
Json rat_json(const Rat& q);
Rat rat_from_json(const Json& j, const std::string& field);

// Deterministic pseudo-random instance. Kinds: box, cross, polygon, triangle,
// quad, simplex, polytope, gram, basis-box, basis-hexagon.
Instance random_instance(std::uint64_t seed, std::size_t dim, std::string_view kind);

}  // namespace packmin::cli
