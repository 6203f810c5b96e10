#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>

#include "cwy/field.hpp"
#include "cwy/tensor.hpp"

namespace cwy {

// Radiative data of one cut: mass aspect, angular momentum aspect (through
// its Helmholtz potentials), shear (through its parity potentials), and the
// retarded time of the cut.  All fields share one band limit.
struct BondiData {
  int band_limit = 0;
  double u = 0.0;
  ScalarField m;
  CovectorField N;
  TracelessTensor shear;
};

// Charge outputs plus named diagnostics.  center_of_mass and
// angular_momentum carry meaningful values only when frame_valid is true;
// energy and linear momentum are always populated.
struct ChargeSet {
  double energy = 0.0;
  std::array<double, 3> linear_momentum{0.0, 0.0, 0.0};
  bool frame_valid = false;
  std::array<double, 3> center_of_mass{0.0, 0.0, 0.0};
  std::array<double, 3> angular_momentum{0.0, 0.0, 0.0};
  std::map<std::string, double> diagnostics;
};

// Kerr cut at u = 0: constant mass aspect `mass`, closed shear with electric
// potential -2 * spin * sin(theta), momentum aspect with gradient potential
// 3 * mass * spin * sin(theta) and curl potential -3 * mass * spin *
// cos(theta), reproducing the coordinate components N_theta = 3Ma cos(theta),
// N_phi = -3Ma sin^2(theta).  The sin(theta) potentials are not band-limited;
// they are projected at the requested band, so convergence of derived
// quantities is algebraic in band_limit.  Requires band_limit >= 8.
BondiData kerr_data(double mass, double spin, int band_limit);

// Deterministic pseudo-random data: every coefficient is an independent
// uniform draw from [-amplitude, amplitude] scaled by (1 + l)^-3.  Draw
// order: mass aspect (l >= 0), momentum-aspect gradient then curl potential
// (l >= 1), electric then magnetic shear potential (l >= 2), each with mu
// ascending.  With com_frame set, the mass aspect's degree-1 coefficients are
// zeroed and its mean is fixed so the energy is exactly 1 + amplitude.
BondiData random_data(std::uint64_t seed, int band_limit, double amplitude,
                      bool com_frame);

// JSON file I/O, lossless on coefficients.  Strict mode rejects degree < 2
// shear entries instead of projecting them away.
BondiData read_data(const std::string& path, bool strict = false);
void write_data(const BondiData& d, const std::string& path);

}  // namespace cwy
