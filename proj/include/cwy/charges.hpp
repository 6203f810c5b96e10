#pragma once

#include <array>
#include <string>

#include "cwy/bondi.hpp"

namespace cwy {

// (1/4pi) integral of the mass aspect.
double bondi_energy(const BondiData& d);

// p^i = (1/4pi) integral of m times the i-th coordinate function; exact in
// coefficients (only the degree-1 part of m contributes).
std::array<double, 3> bondi_linear_momentum(const BondiData& d);

struct FrameReport {
  bool passed = false;
  double energy = 0.0;
  std::array<double, 3> momentum{0.0, 0.0, 0.0};
  double defect = 0.0;  // |momentum| / (1 + energy)
  std::string reason;   // empty when passed
};

// Center-of-mass frame test: passes iff |p| <= tol * (1 + e) and e > tol.
// The frame condition is the solvability condition for the linearized
// optimal isometric embedding, so every charge past e and p requires it.
FrameReport check_com_frame(const BondiData& d, double tol = 1e-10);

// Leading order of the optimal isometric embedding of the cut.
struct EmbeddingLevelZero {
  // Solves (lap + 2) M = 2m; degree-1 part of M set to zero (the operator's
  // kernel; any choice shifts observables by nothing, see the gauge
  // diagnostic in charges()).
  ScalarField M;
  // Time component M - (1/4)(lap + 2)c.  The additive constant freedom is
  // fixed to zero: it enters downstream only through lap X0.
  ScalarField X0;
  // Spatial corrections, band limit one above the data's.
  std::array<ScalarField, 3> Xi;
  // Sup coefficient residual of lap(lap+2)X0 - lap(2m) + (1/2)(lap+2) ddC,
  // which cancels exactly in the center-of-mass frame.
  double first_order_residual = 0.0;
};

// Requires check_com_frame to pass (FrameError otherwise).
EmbeddingLevelZero solve_embedding(const BondiData& d);

// Rotation Killing field about the k-th axis: pure-curl covector whose curl
// potential is the k-th coordinate function.  Divergence-free; eigenvector
// of the rough Laplacian with eigenvalue -1.
CovectorField rotation_field(int k, int band);

// Center-of-mass from the reduced surface integral (momentum-aspect term
// evaluated from the potentials as -integral of X-tilde times div N).
// Requires the frame check; throws FrameError otherwise.
std::array<double, 3> center_of_mass(const BondiData& d);
// Reduced three-term form, valid when the magnetic potential vanishes.
std::array<double, 3> center_of_mass_closed_shear(const BondiData& d);
// Single-term form, valid when additionally m is constant.
std::array<double, 3> center_of_mass_constant_mass(const BondiData& d);

// Angular momentum from the reduced surface integral; same precondition.
std::array<double, 3> angular_momentum(const BondiData& d);
std::array<double, 3> angular_momentum_closed_shear(const BondiData& d);
std::array<double, 3> angular_momentum_constant_mass(const BondiData& d);

// Full pipeline: e and p always; C and J only when the frame check passes,
// with diagnostics recording the frame defect, embedding residuals, and the
// sensitivity of J to the degree-1 ambiguity of M.
ChargeSet charges(const BondiData& d);

}  // namespace cwy
