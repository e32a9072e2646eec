#pragma once

// Command dispatch shared by the executable and the tests.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "packmin_cli/instance.hpp"
#include "packmin_cli/report.hpp"

namespace packmin::cli {

struct Flags {
  std::optional<std::uint64_t> budget;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
  bool slow = false;
  std::string plane;  // slice plane columns, "1,0;0,1"
  std::string shift;  // slice shift, "0,1/2"
};

enum ExitCode { kPass = 0, kTheoremViolation = 1, kInputError = 2, kBudgetExceeded = 3 };

// Words are the command and its subcommand, e.g. {"verify", "sandwich"}.
// Throws packmin::Error for bad input and exhausted budgets.
Report run_command(const std::vector<std::string>& words, const std::optional<Instance>& instance, const Flags& flags);
bool needs_instance(const std::vector<std::string>& words);

// Reproduction suites; each returns a report whose sections carry the checks.
Report reproduce_boxes(const Flags& flags);
Report reproduce_equiangular(const Flags& flags);
Report reproduce_simplex(const Flags& flags);
Report reproduce_paper_all(const Flags& flags);

// ρ_j of the unit ball on the simplex lattice against the closed forms.
void rho_reg_simplex(Report& r, std::size_t n, const Options& opt);

int exit_code_for(const Error& e);
Json error_json(const Error& e);

}  // namespace packmin::cli
