#pragma once

#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>

#include "kahler/verifier.hpp"

namespace kahler {

enum ExitCode : int { exit_pass = 0, exit_identity_failure = 1, exit_validation = 2, exit_io = 3 };

struct RunConfig {
  std::string command = "verify";  // verify | table | validate | models
  /// Built-in name, or a path to a JSON model file.
  std::string model;
  std::string suite = "all";
  bool exact = true;
  double tolerance = kDefaultTolerance;
  std::string format = "json";
  /// Empty means the output stream.
  std::string out;
};

inline LieModel load_model_source(const std::string& source) {
  if (models::is_builtin(source)) return models::builtin(source);
  return load_model_file(source);
}

/// Exit status for a finished report; failing ids and table problems are
/// listed on `err`.
inline int report_status(const Report& rep, std::ostream& err) {
  auto failing = rep.failing_ids();
  bool table_ok = true;
  if (rep.figure1 && (rep.figure1->unresolved > 0 || rep.figure1->mismatches > 0)) table_ok = false;
  if (rep.figure2 && rep.figure2->misplaced > 0) table_ok = false;
  if (failing.empty() && table_ok) return exit_pass;
  for (const auto& id : failing) err << "FAILED " << id << "\n";
  if (!table_ok) err << "FAILED table reproduction\n";
  return exit_identity_failure;
}

namespace detail {

inline int write_artifact(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  if (cfg.out.empty()) {
    out << text;
    return exit_pass;
  }
  std::ofstream f(cfg.out);
  if (!f) {
    err << "error: cannot write " << cfg.out << "\n";
    return exit_io;
  }
  f << text;
  return exit_pass;
}

template <Scalar S>
int run_verify(const RunConfig& cfg, const LieModel& model, std::ostream& out, std::ostream& err) {
  Verifier<S> v(model, cfg.tolerance);
  const bool tables = cfg.command == "table";
  Report rep = v.run(tables ? "tables" : cfg.suite, tables);
  std::string text = cfg.format == "md" ? report_markdown(rep) : report_json(rep).dump(2) + "\n";
  if (int rc = write_artifact(cfg, text, out, err); rc != exit_pass) return rc;
  return report_status(rep, err);
}

}  // namespace detail

/// The built-in catalog with n and whether dω, N and θ vanish.
inline void list_models(std::ostream& out) {
  out << std::left << std::setw(6) << "name" << "  n  dω=0  N=0  θ=0\n";
  for (const auto& name : models::builtin_names()) {
    ModelSpace<GaussianRational> ms(models::builtin(name));
    auto yn = [](bool b) { return b ? "yes " : "no  "; };
    out << std::setw(6) << name << "  " << ms.n() << "  " << yn(ms.almost_kahler()) << "  " << yn(ms.integrable())
        << " " << yn(ms.lee_form().is_zero()) << "\n";
  }
}

/// Runs one configured command. Parse and I/O problems exit 3, invariant
/// violations 2, identity failures 1.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "models") {
    list_models(out);
    return exit_pass;
  }
  if (!valid_suite(cfg.suite)) {
    err << "error: unknown suite '" << cfg.suite << "'\n";
    return exit_io;
  }
  if (cfg.format != "json" && cfg.format != "md") {
    err << "error: unknown format '" << cfg.format << "'\n";
    return exit_io;
  }
  LieModel model("unset", 1);
  try {
    model = load_model_source(cfg.model);
  } catch (const ModelParseError& ex) {
    err << "error: " << ex.what() << "\n";
    return exit_io;
  }
  auto report = validate_model(model);
  if (!report.ok()) {
    err << "invalid model " << model.name() << ":\n" << report.summary();
    return exit_validation;
  }
  if (cfg.command == "validate") {
    out << model.name() << ": valid (n = " << model.n() << ")\n";
    return exit_pass;
  }
  try {
    if (cfg.exact) return detail::run_verify<GaussianRational>(cfg, model, out, err);
    return detail::run_verify<Complex>(cfg, model, out, err);
  } catch (const ExactOverflow& ex) {
    err << "error: " << ex.what() << "\n";
    return exit_identity_failure;
  } catch (const ConventionError& ex) {
    err << "convention check failed: " << ex.what() << "\n";
    return exit_identity_failure;
  }
}

}  // namespace kahler
