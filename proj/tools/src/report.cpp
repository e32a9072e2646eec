#include "packmin_cli/report.hpp"

#include <algorithm>
#include <sstream>

namespace packmin::cli {

Json magnitude_json(const Magnitude& m) {
  if (m.is_exact()) return rat_json(m.payload());
  return Json{{"sqrt_of", rat_json(m.payload())}};
}

Magnitude magnitude_from_json(const Json& j) {
  if (j.is_object()) return Magnitude::sqrt_of(rat_from_json(j.at("sqrt_of"), "sqrt_of"));
  return Magnitude::exact(rat_from_json(j, "value"));
}

Json int_json(const Int& x) { return x.get_str(); }

Json vector_json(const IntVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(int_json(x));
  return out;
}

Json rat_vector_json(const RatVec& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rat_json(x));
  return out;
}

Json plane_json(const LatticePlane& p) {
  Json cols = Json::array();
  for (std::size_t j = 0; j < p.basis.cols(); ++j) cols.push_back(vector_json(p.basis.col(j)));
  return Json{{"rank", p.rank}, {"basis", cols}, {"det_squared", rat_json(p.det_squared)}};
}

Json minima_json(const MinimaValue& v) {
  Json j{{"value", magnitude_json(v.value)}};
  if (v.vector) j["vector"] = vector_json(*v.vector);
  if (v.plane) j["plane"] = plane_json(*v.plane);
  return j;
}

Json minima_list_json(const std::vector<MinimaValue>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) out.push_back(minima_json(v));
  return out;
}

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::verdict(const std::string& name, bool satisfied, Tag tag, Json detail) {
  Json v{{"name", name},
         {"tag", tag == Tag::Theorem ? "theorem" : tag == Tag::Conjecture ? "conjecture" : "soft"},
         {"satisfied", satisfied}};
  if (!detail.empty()) v["detail"] = std::move(detail);
  verdicts_.push_back(std::move(v));
  if (satisfied) return;
  if (tag == Tag::Theorem) ++theorem_failures_;
  else if (tag == Tag::Conjecture) ++conjecture_violations_;
  else ++soft_misses_;
}

void Report::not_applicable(const std::string& name, const std::string& reason) {
  verdicts_.push_back(Json{{"name", name}, {"tag", "not-applicable"}, {"reason", reason}});
}

void Report::verdicts_from(const std::string& prefix, const Verdicts& v, Tag tag) {
  if (!v.applicable) {
    not_applicable(prefix, "precondition not met");
    return;
  }
  for (const auto& b : v.bounds) {
    // products of square roots stay symbolic
    Json detail;
    try {
      detail = Json{{"bound", rat_json(parse_rat(b.value))}};
    } catch (const Error&) {
      detail = Json{{"bound_expression", b.value}};
    }
    verdict(prefix + "." + b.name, b.satisfied, b.theorem ? tag : Tag::Conjecture, detail);
  }
}

void Report::add_section(const Report& section) {
  sections_.push_back(section.to_json());
  theorem_failures_ += section.theorem_failures_;
  conjecture_violations_ += section.conjecture_violations_;
  soft_misses_ += section.soft_misses_;
}

Json Report::to_json() const {
  Json j{{"command", command_}};
  if (!instance_.is_null()) j["instance"] = instance_;
  if (!result_.empty()) j["result"] = result_;
  if (!verdicts_.empty()) j["verdicts"] = verdicts_;
  if (!sections_.empty()) j["sections"] = sections_;
  j["theorem_failures"] = theorem_failures_;
  j["conjecture_violations"] = conjecture_violations_;
  j["soft_misses"] = soft_misses_;
  j["status"] = theorem_failures_ == 0 ? "pass" : "fail";
  return j;
}

namespace {

void render(const Json& j, const std::string& path, std::ostringstream& out) {
  if (j.is_object() && j.contains("name") && j.contains("tag")) {
    std::string mark = !j.contains("satisfied") ? "N/A " : j["satisfied"].get<bool>() ? "PASS" : "FAIL";
    out << mark << " [" << j["tag"].get<std::string>() << "] " << j["name"].get<std::string>();
    if (j.contains("detail")) out << " " << j["detail"].dump();
    if (j.contains("reason")) out << " (" << j["reason"].get<std::string>() << ")";
    out << "\n";
  } else if (j.is_object() && j.size() == 1 && j.contains("sqrt_of")) {
    out << path << ": sqrt(" << j["sqrt_of"].get<std::string>() << ")\n";
  } else if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render(v, path.empty() ? k : path + "." + k, out);
  } else if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
    if (flat) {
      out << path << ": (";
      for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << (j[i].is_string() ? j[i].get<std::string>() : j[i].dump());
      out << ")\n";
    } else {
      for (std::size_t i = 0; i < j.size(); ++i) render(j[i], path + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out << path << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& report) {
  std::ostringstream out;
  render(report, "", out);
  return out.str();
}

}  // namespace packmin::cli
