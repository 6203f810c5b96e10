#pragma once

#include <array>
#include <map>
#include <string>

#include "cwy/charges.hpp"

namespace cwy {

// Leading expansion coefficients entering the pre-reduction charge limits.
// H_m3 is the 1/r^3 coefficient of the physical mean-curvature norm; H0_m3_weak
// is the corresponding unphysical coefficient with its inaccessible
// second-order embedding term replaced by the induced-metric trace term,
// an exchange that is exact under pairing against the coordinate functions
// (the replaced term is (lap + 2) of a scalar, which those annihilate).
struct ExpansionCoefficients {
  ScalarField H_m3;
  ScalarField H0_m3_weak;
  CovectorField j1;             // leading current, unsubstituted form
  ScalarField deltasigma_trace; // trace of the second-order metric variation
  double div_j1 = 0.0;          // sup coefficient of divergence(j1)
  double j1_difference = 0.0;   // gap between the two printed forms of j1
};

// Requires the frame check on d (FrameError otherwise); emb must come from
// solve_embedding on the same data.
ExpansionCoefficients compute_coefficients(const BondiData& d,
                                           const EmbeddingLevelZero& emb);

// Center-of-mass evaluated from the raw limit integrand
// X-tilde (H0 - H) + 2 m X^{i(0)} - 2 grad X-tilde X^{00} j1,
// before any of the reductions used by center_of_mass; agreement between the
// two routes is the audit of the whole derivation chain.
std::array<double, 3> com_via_limit(const BondiData& d,
                                    const EmbeddingLevelZero& emb);

// Angular momentum from the raw eight-term limit integrand, before the
// integration-by-parts reductions used by angular_momentum.
std::array<double, 3> angmom_via_limit(const BondiData& d,
                                       const EmbeddingLevelZero& emb);

// Residuals of the intermediate reduction identities, each side coded
// independently from its printed form.  Keys: x_minus_1, magical_pointwise,
// last_two_terms, ang_X0, ang_shear_alone, top_order_finiteness, each with a
// companion <key>_scale entry (1 + the larger side's magnitude) for relative
// thresholds.
std::map<std::string, double> lemma_residuals(const BondiData& d,
                                              const EmbeddingLevelZero& emb);

}  // namespace cwy
