#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "packmin_cli/commands.hpp"

using namespace packmin;
using namespace packmin::cli;

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cli", "cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit(std::ostream& out, const Json& j, const std::string& format) {
  if (format == "text") out << render_text(j);
  else out << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packing minima, successive minima and lattice point bounds in exact arithmetic"};
  app.set_version_flag("--version", "packmin 1.0.0");
  std::vector<std::string> words;
  std::string input, random_kind, format = "json";
  std::size_t dim = 2;
  Flags flags;
  app.add_option("command", words,
                 "minima | packing | width | count | kz | verify <name> | probe <name> | reproduce <suite>")
      ->required()
      ->expected(1, 2);
  app.add_option("-i,--input", input, "instance file, '-' for stdin");
  app.add_option("--random", random_kind, "use a random instance of this kind instead of a file");
  app.add_option("--dim", dim, "dimension of the random instance");
  app.add_option("--budget", flags.budget, "enumeration node budget");
  app.add_option("--threads", flags.threads, "worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", flags.seed, "seed for random instances and suites");
  app.add_option("--n", flags.n, "dimension for the simplex and equiangular suites");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--plane", flags.plane, "slice plane columns in lattice coordinates, e.g. '1,0;0,1'");
  app.add_option("--shift", flags.shift, "slice shift, e.g. '0,1/2'");
  app.add_flag("--slow", flags.slow, "include the expensive simplex-lattice cases");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kInputError;
  }

  try {
    std::optional<Instance> inst;
    if (!random_kind.empty()) {
      inst = random_instance(flags.seed.value_or(1), dim, random_kind);
    } else if (!input.empty()) {
      inst = parse_instance(read_input(input));
    }
    if (needs_instance(words) && !inst)
      throw Error(ErrorCode::ValidationError, "cli", "this command needs --input or --random");
    Report report = run_command(words, inst, flags);
    emit(std::cout, report.to_json(), format);
    return report.theorem_failed() ? kTheoremViolation : kPass;
  } catch (const Error& e) {
    emit(std::cerr, error_json(e), format);
    return exit_code_for(e);
  }
}
