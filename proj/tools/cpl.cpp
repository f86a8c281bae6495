// cpl: Casimir-Polder free energy and entropy for a polarizable and
// magnetizable atom near a magnetodielectric plate.
//
//   cpl <free-energy|sweep|coefficients|nernst-check|verify>
//       [--config <path>] [--out <path>] [--format csv|json]
//
// Exit codes: 0 success, 1 validation error, 2 numeric non-convergence,
// 3 verify failure.

#include <fstream>
#include <utility>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cpl/records.hpp"

namespace {

struct Options {
  std::string config_path;
  std::string out_path;
  std::string format;
};

int emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file '" << path << "'\n";
    return 1;
  }
  out << text;
  return 0;
}

int dispatch(const std::string& command, const Options& opt) {
  if (command == "verify") {
    std::ostringstream os;
    const int rc = cpl::run_verify(os);
    const int emit_rc = emit(os.str(), opt.out_path);
    return rc != 0 ? rc : emit_rc;
  }

  cpl::RunConfig cfg = cpl::load_run_config(opt.config_path);
  if (!opt.format.empty())
    cfg.format = (opt.format == "json") ? cpl::OutputFormat::json : cpl::OutputFormat::csv;
  if (!opt.out_path.empty()) cfg.out_path = opt.out_path;
  for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";

  std::ostringstream os;
  int rc = 1;
  if (command == "free-energy")
    rc = cpl::run_free_energy(cfg, os);
  else if (command == "sweep")
    rc = cpl::run_sweep(cfg, os);
  else if (command == "coefficients")
    rc = cpl::run_coefficients(cfg, os);
  else if (command == "nernst-check")
    rc = cpl::run_nernst_check(cfg, os);
  const int emit_rc = emit(os.str(), cfg.out_path);
  return rc != 0 ? rc : emit_rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Casimir-Polder free energy and entropy laboratory"};
  app.require_subcommand(1);

  Options opt;
  std::string command;
  const std::pair<const char*, const char*> subs[] = {
      {"free-energy", "evaluate one point and emit a record"},
      {"sweep", "evaluate a temperature sweep, one record per point"},
      {"coefficients", "dump the low-temperature expansion coefficients"},
      {"nernst-check", "fit the entropy curve and classify the T -> 0 limit"},
      {"verify", "run the built-in oracle suites"}};
  for (const auto& [name, description] : subs) {
    CLI::App* sub = app.add_subcommand(name, description);
    auto* config_opt = sub->add_option("--config", opt.config_path, "configuration file");
    if (std::string(name) != "verify") config_opt->required();
    sub->add_option("--out", opt.out_path, "output file (default: output.path or stdout)");
    sub->add_option("--format", opt.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->callback([&command, name] { command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    return dispatch(command, opt);
  } catch (const cpl::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const cpl::Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
