#include <iostream>

#include "CLI11.hpp"
#include "kahler/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of generalized Kähler identities on Lie-algebra models"};
  app.require_subcommand(1);
  kahler::RunConfig cfg;
  bool use_float = false;

  auto add_common = [&](CLI::App* sub, bool with_suite) {
    sub->add_option("--model", cfg.model, "built-in name or JSON model file")->required();
    if (with_suite) sub->add_option("--suite", cfg.suite, "all | elementary | clifford | exterior | tables");
    auto* exact = sub->add_flag("--exact", "exact Gaussian-rational arithmetic (default)");
    auto* flt = sub->add_flag("--float", use_float, "double-precision complex arithmetic");
    exact->excludes(flt);
    sub->add_option("--tolerance", cfg.tolerance, "zero threshold in float mode");
    sub->add_option("--format", cfg.format, "json | md");
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
  };

  auto* validate = app.add_subcommand("validate", "parse a model and check its invariants");
  validate->add_option("--model", cfg.model, "built-in name or JSON model file")->required();
  auto* verify = app.add_subcommand("verify", "run the identity catalog on a model");
  add_common(verify, true);
  auto* table = app.add_subcommand("table", "emit the commutator and bidegree tables");
  add_common(table, false);
  auto* models = app.add_subcommand("models", "built-in models");
  models->require_subcommand(1);
  models->add_subcommand("list", "list the built-in models");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kahler::exit_io;
  }

  if (*validate) cfg.command = "validate";
  else if (*verify) cfg.command = "verify";
  else if (*table) cfg.command = "table";
  else cfg.command = "models";
  cfg.exact = !use_float;
  return kahler::run(cfg, std::cout, std::cerr);
}
