#include <chrono>
#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cwy/charges.hpp"
#include "cwy/errors.hpp"
#include "cwy/report.hpp"
#include "cwy/verify.hpp"

namespace {

struct ChargesArgs {
  std::string input;
  std::string output;
  int band_limit = -1;
  bool require_frame = false;
  bool strict = false;
  bool timings = false;
};

struct KerrArgs {
  double mass = 2.0;
  double spin = 0.5;
  int band_limit = 32;
  std::string output;
  bool timings = false;
};

struct VerifyArgs {
  std::vector<std::string> suites;
  int seeds = 20;
  int band_limit = 32;
  double tolerance = -1.0;
  bool tolerance_given = false;
  std::string output;
  bool timings = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  const auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration<double>(dt).count();
}

int run_charges(const ChargesArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const cwy::BondiData d = cwy::read_data(a.input, a.strict);
  if (a.band_limit >= 0 && a.band_limit != d.band_limit) {
    std::cerr << "error: requested band limit " << a.band_limit
              << " does not match the file's band limit " << d.band_limit
              << "\n";
    return 1;
  }
  const cwy::ChargeSet cs = cwy::charges(d);
  std::string reason;
  if (!cs.frame_valid) reason = cwy::check_com_frame(d).reason;

  nlohmann::ordered_json report =
      cwy::charge_report(a.input, d.band_limit, cs, reason);
  if (a.timings) report["timings"] = {{"compute_seconds", seconds_since(t0)}};
  cwy::emit_report(report, a.output);

  if (!cs.frame_valid) {
    std::cerr << "frame check failed: " << reason << "\n";
    return a.require_frame ? 1 : 2;
  }
  return 0;
}

int run_kerr(const KerrArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  const cwy::BondiData d = cwy::kerr_data(a.mass, a.spin, a.band_limit);
  const cwy::ChargeSet cs = cwy::charges(d);

  nlohmann::ordered_json report =
      cwy::kerr_report(a.mass, a.spin, a.band_limit, cs);
  if (a.timings) report["timings"] = {{"compute_seconds", seconds_since(t0)}};
  cwy::emit_report(report, a.output);
  return cs.frame_valid ? 0 : 2;
}

int run_verify(const VerifyArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> suites = a.suites;
  if (suites.empty()) suites = {"identities", "lemmas", "limits"};

  std::vector<cwy::SuiteResult> results;
  for (const std::string& name : suites) {
    double tol = a.tolerance;
    if (!a.tolerance_given) tol = (name == "limits") ? 1e-8 : 1e-9;
    if (name == "identities")
      results.push_back(cwy::run_identities(a.band_limit, a.seeds, tol));
    else if (name == "lemmas")
      results.push_back(cwy::run_lemmas(a.band_limit, a.seeds, tol));
    else
      results.push_back(cwy::run_limits(a.band_limit, a.seeds, tol));
  }

  nlohmann::ordered_json report = cwy::verify_report(results);
  if (a.timings) report["timings"] = {{"compute_seconds", seconds_since(t0)}};
  cwy::emit_report(report, a.output);

  for (const cwy::SuiteResult& s : results) {
    if (!s.passed) {
      std::cerr << "verification failed in suite " << s.suite << "\n";
      return 3;
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Quasi-local center of mass and angular momentum at null infinity "
      "from Bondi-Sachs radiative data"};
  app.require_subcommand(1);

  ChargesArgs ca;
  CLI::App* charges = app.add_subcommand(
      "charges", "Evaluate all charges from a data file");
  charges->add_option("--input", ca.input, "Input data file (JSON)")
      ->required();
  charges->add_option("--output", ca.output,
                      "Write the report here instead of stdout");
  charges->add_option("--bandlimit", ca.band_limit,
                      "Assert the file's band limit; mismatch is an error");
  charges->add_flag("--require-frame", ca.require_frame,
                    "Treat a failed center-of-mass frame check as a hard "
                    "error (exit 1 instead of 2)");
  charges->add_flag("--strict", ca.strict,
                    "Reject degree <2 shear coefficients instead of "
                    "projecting them away");
  charges->add_flag("--timings", ca.timings,
                    "Include wall-clock timings in the report (breaks "
                    "byte-for-byte report determinism)");

  KerrArgs ka;
  CLI::App* kerr = app.add_subcommand(
      "kerr", "Evaluate the closed-form rotating-solution example");
  kerr->add_option("--mass", ka.mass, "Mass parameter")
      ->capture_default_str();
  kerr->add_option("--spin", ka.spin, "Specific angular momentum a")
      ->capture_default_str();
  kerr->add_option("--bandlimit", ka.band_limit, "Spectral band limit")
      ->capture_default_str();
  kerr->add_option("--output", ka.output,
                   "Write the report here instead of stdout");
  kerr->add_flag("--timings", ka.timings,
                 "Include wall-clock timings in the report");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run randomized verification suites");
  verify
      ->add_option("--suite", va.suites,
                   "Suite(s) to run; default: all three")
      ->check(CLI::IsMember({"identities", "lemmas", "limits"}));
  verify->add_option("--seeds", va.seeds, "Number of random seeds")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  verify->add_option("--bandlimit", va.band_limit, "Spectral band limit")
      ->capture_default_str()
      ->check(CLI::Range(2, 4096));
  CLI::Option* tol =
      verify->add_option("--tolerance", va.tolerance,
                         "Residual threshold; default 1e-9 for identities "
                         "and lemmas (relative to field scale), 1e-8 for the "
                         "limit-equivalence rows");
  verify->add_option("--output", va.output,
                     "Write the report here instead of stdout");
  verify->add_flag("--timings", va.timings,
                   "Include wall-clock timings in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  va.tolerance_given = tol->count() > 0;

  try {
    if (charges->parsed()) return run_charges(ca);
    if (kerr->parsed()) return run_kerr(ka);
    return run_verify(va);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
