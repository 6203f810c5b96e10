#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "cwy/bondi.hpp"
#include "cwy/charges.hpp"
#include "cwy/verify.hpp"

namespace cwy {

// All reports share a fixed header (version "1", tool id, command, input
// descriptor) and a deterministic key order, so identical invocations
// serialize byte-identically.
std::string tool_version();

nlohmann::ordered_json charge_report(const std::string& input,
                                     int band_limit, const ChargeSet& cs,
                                     const std::string& frame_reason);

// Charge report plus the closed-form expectations for mass/spin and the
// deviations from them.
nlohmann::ordered_json kerr_report(double mass, double spin, int band_limit,
                                   const ChargeSet& cs);

nlohmann::ordered_json verify_report(const std::vector<SuiteResult>& suites);

// Serialize with a trailing newline; writes to stdout when path is empty.
void emit_report(const nlohmann::ordered_json& report,
                 const std::string& path);

}  // namespace cwy
