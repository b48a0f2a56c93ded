#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "dihom/commands.hpp"
#include "dihom/version.hpp"

namespace {

/* Writes the report body to --out when given, stdout otherwise, and the
 * diagnostic message to stderr. */
int deliver(const dihom::CommandResult& result, const std::string& out_path) {
  if (!result.message.empty()) std::cerr << result.message << "\n";
  if (result.output.empty()) return result.exit_code;
  if (out_path.empty()) {
    std::cout << result.output;
  } else {
    std::ofstream out(out_path);
    if (!out.good()) {
      std::cerr << "cannot write '" << out_path << "'\n";
      return 1;
    }
    out << result.output;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using dihom::ReportOptions;

  CLI::App app{"directed homology of finite truncated simplicially enriched categories"};
  app.set_version_flag("--version", std::string(dihom::tool_name) + " " + dihom::tool_version);
  app.require_subcommand(1);

  std::string input, out_path;
  ReportOptions opt;
  std::optional<int> dim;
  std::vector<std::string> sub_objects;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--input,-i", input, "category description (json)")->required();
    cmd->add_option("--dim", dim, "truncation level for builder-style inputs");
    cmd->add_option("--out,-o", out_path, "write the report here instead of stdout");
  };
  auto add_ring = [&](CLI::App* cmd) {
    cmd->add_option("--ring", opt.ring, "coefficient ring: z, q, or fp:P")
        ->default_str("z");
    cmd->add_option("--degrees", opt.degrees, "degree n or range a..b (default: all)");
  };

  auto* validate = app.add_subcommand("validate", "check a category description");
  add_input(validate);

  auto* homology = app.add_subcommand("homology", "homology bimodules per degree");
  add_input(homology);
  add_ring(homology);

  auto* relative =
      app.add_subcommand("relative", "relative homology against a full subcategory");
  add_input(relative);
  add_ring(relative);
  relative->add_option("--sub", sub_objects, "objects spanning the subcategory")
      ->required()
      ->delimiter(',');

  auto* algebra = app.add_subcommand("algebra", "path algebra of the underlying category");
  add_input(algebra);
  std::string algebra_verb = "inspect";
  algebra->add_option("verb", algebra_verb, "what to do with it (inspect)")
      ->check(CLI::IsMember({"inspect"}));

  auto* selftest = app.add_subcommand("selftest", "run the built-in diagnostics");
  std::string only;
  bool inject = false;
  selftest->add_option("--only", only, "run checks whose name contains this substring");
  selftest->add_flag("--inject-corruption", inject,
                     "also damage bundled categories and require the validators to object");
  selftest->add_option("--out,-o", out_path, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  dihom::CommandResult result;
  if (validate->parsed()) {
    result = dihom::cmd_validate(input, dim);
  } else if (homology->parsed()) {
    opt.dim = dim;
    result = dihom::cmd_homology(input, opt);
  } else if (relative->parsed()) {
    opt.dim = dim;
    result = dihom::cmd_relative(input, sub_objects, opt);
  } else if (algebra->parsed()) {
    result = dihom::cmd_algebra(input, dim);
  } else {
    result = dihom::cmd_selftest(only, inject);
  }
  return deliver(result, out_path);
}
