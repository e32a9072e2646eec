#pragma once

// Machine-readable reports: exact values, witnesses and verdicts.

#include <string>
#include <vector>

#include "packmin/counting.hpp"
#include "packmin/minima.hpp"
#include "packmin_cli/instance.hpp"

namespace packmin::cli {

// "p/q" for exact values, {"sqrt_of": "p/q"} for square roots.
Json magnitude_json(const Magnitude& m);
Magnitude magnitude_from_json(const Json& j);
Json int_json(const Int& x);
Json vector_json(const IntVec& v);
Json rat_vector_json(const RatVec& v);
Json plane_json(const LatticePlane& p);
Json minima_json(const MinimaValue& v);
Json minima_list_json(const std::vector<MinimaValue>& vs);

// Soft checks are trend diagnostics: reported, never failing the run.
enum class Tag { Theorem, Conjecture, Soft };

class Report {
 public:
  explicit Report(std::string command);

  void set_instance(const Json& input) { instance_ = input; }
  Json& result() { return result_; }
  void verdict(const std::string& name, bool satisfied, Tag tag, Json detail = Json::object());
  void not_applicable(const std::string& name, const std::string& reason);
  // Copies the bounds of a counting report, prefixing their names.
  void verdicts_from(const std::string& prefix, const Verdicts& v, Tag tag = Tag::Theorem);
  // Nests a finished report as one section of a suite.
  void add_section(const Report& section);

  bool theorem_failed() const { return theorem_failures_ > 0; }
  Json to_json() const;

 private:
  std::string command_;
  Json instance_;
  Json result_ = Json::object();
  Json verdicts_ = Json::array();
  Json sections_ = Json::array();
  std::size_t theorem_failures_ = 0;
  std::size_t conjecture_violations_ = 0;
  std::size_t soft_misses_ = 0;
};

// One "path: value" line per leaf.
std::string render_text(const Json& report);

}  // namespace packmin::cli
