#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cwy/bondi.hpp"

namespace cwy {

// One seed's worth of residuals for a suite.  `scales` carries the reference
// magnitude each residual is judged against (1 for absolute thresholds).
struct SeedResiduals {
  std::uint64_t seed = 0;
  std::map<std::string, double> residuals;
  std::map<std::string, double> scales;
  bool passed = false;
};

struct SuiteResult {
  std::string suite;
  int band_limit = 0;
  double tolerance = 0.0;
  std::vector<SeedResiduals> rows;
  // Worst normalized residual per check across all seeds.
  std::map<std::string, double> worst;
  bool passed = false;
};

// Pointwise tensor identities on random shear tensors (no frame condition).
// Pass criterion per row: residual <= tolerance * scale.
SuiteResult run_identities(int band_limit, int seeds, double tolerance);

// Integral rearrangement lemmas on random center-of-mass-frame data.
// Pass criterion per row: residual <= tolerance * scale.
SuiteResult run_lemmas(int band_limit, int seeds, double tolerance);

// Limit evaluation against the closed-form charges on random
// center-of-mass-frame data.  `tolerance` applies to the two relative
// equivalence rows; the structural rows (retarded-time invariance,
// angular-potential closure, embedding residual) use fixed absolute
// thresholds of 1e-10, and the leading-order integrability row 1e-11.
SuiteResult run_limits(int band_limit, int seeds, double tolerance);

}  // namespace cwy
