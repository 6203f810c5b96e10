#include "cwy/report.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "cwy/errors.hpp"

namespace cwy {
namespace {

using nlohmann::ordered_json;

ordered_json header(const std::string& command, const std::string& input) {
  ordered_json j;
  j["version"] = "1";
  j["tool"] = tool_version();
  j["command"] = command;
  j["input"] = input;
  return j;
}

ordered_json triple(const std::array<double, 3>& v) {
  return ordered_json::array({v[0], v[1], v[2]});
}

ordered_json charge_block(const ChargeSet& cs, const std::string& reason) {
  ordered_json c;
  c["energy"] = cs.energy;
  c["linear_momentum"] = triple(cs.linear_momentum);
  c["frame_valid"] = cs.frame_valid;
  if (cs.frame_valid) {
    c["center_of_mass"] = triple(cs.center_of_mass);
    c["angular_momentum"] = triple(cs.angular_momentum);
  } else {
    c["reason"] = reason;
  }
  ordered_json diag;
  for (const auto& [name, value] : cs.diagnostics) diag[name] = value;
  c["diagnostics"] = diag;
  return c;
}

}  // namespace

std::string tool_version() { return "cwy 1.0.0"; }

ordered_json charge_report(const std::string& input, int band_limit,
                           const ChargeSet& cs,
                           const std::string& frame_reason) {
  ordered_json j = header("charges", input);
  j["band_limit"] = band_limit;
  j["charges"] = charge_block(cs, frame_reason);
  return j;
}

ordered_json kerr_report(double mass, double spin, int band_limit,
                         const ChargeSet& cs) {
  ordered_json j = header("kerr", "analytic");
  j["band_limit"] = band_limit;
  j["mass"] = mass;
  j["spin"] = spin;
  j["charges"] = charge_block(cs, "");

  ordered_json expect;
  expect["energy"] = mass;
  expect["linear_momentum"] = triple({0.0, 0.0, 0.0});
  expect["center_of_mass"] = triple({0.0, 0.0, 0.0});
  expect["angular_momentum"] = triple({0.0, 0.0, -mass * spin});
  j["expected"] = expect;

  ordered_json dev;
  dev["energy"] = std::abs(cs.energy - mass);
  double p = 0.0, c = 0.0, a = 0.0;
  for (int i = 0; i < 3; ++i) {
    p = std::max(p, std::abs(cs.linear_momentum[i]));
    c = std::max(c, std::abs(cs.center_of_mass[i]));
    const double want = (i == 2) ? -mass * spin : 0.0;
    a = std::max(a, std::abs(cs.angular_momentum[i] - want));
  }
  dev["linear_momentum"] = p;
  dev["center_of_mass"] = c;
  dev["angular_momentum"] = a;
  j["deviation"] = dev;
  return j;
}

ordered_json verify_report(const std::vector<SuiteResult>& suites) {
  ordered_json j = header("verify", "random");
  ordered_json list = ordered_json::array();
  bool all = true;
  for (const SuiteResult& s : suites) {
    ordered_json js;
    js["suite"] = s.suite;
    js["band_limit"] = s.band_limit;
    js["seeds"] = static_cast<int>(s.rows.size());
    js["tolerance"] = s.tolerance;
    ordered_json rows = ordered_json::array();
    for (const SeedResiduals& row : s.rows) {
      ordered_json jr;
      jr["seed"] = row.seed;
      jr["passed"] = row.passed;
      ordered_json res;
      for (const auto& [name, value] : row.residuals) res[name] = value;
      jr["residuals"] = res;
      ordered_json sc;
      for (const auto& [name, value] : row.scales) sc[name] = value;
      jr["scales"] = sc;
      rows.push_back(std::move(jr));
    }
    js["rows"] = rows;
    ordered_json worst;
    for (const auto& [name, value] : s.worst) worst[name] = value;
    js["worst_normalized"] = worst;
    js["passed"] = s.passed;
    all = all && s.passed;
    list.push_back(std::move(js));
  }
  j["suites"] = list;
  j["passed"] = all;
  return j;
}

void emit_report(const nlohmann::ordered_json& report,
                 const std::string& path) {
  const std::string text = report.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  out << text;
}

}  // namespace cwy
