#pragma once

#include <cmath>
#include <random>

#include "cwy/field.hpp"

namespace testutil {

inline cwy::HarmonicCoeffs random_coeffs(int band, std::uint64_t seed,
                                         int l_min = 0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  cwy::HarmonicCoeffs c(band);
  for (int l = l_min; l <= band; ++l)
    for (int mu = -l; mu <= l; ++mu)
      c.at(l, mu) = dist(rng) / ((1.0 + l) * (1.0 + l));
  return c;
}

// Central finite differences of the pointwise evaluation, for oracle use.
inline double fd_theta(const cwy::HarmonicCoeffs& c, double theta, double phi,
                       double h = 1e-4) {
  return (cwy::evaluate(c, theta + h, phi) - cwy::evaluate(c, theta - h, phi)) /
         (2.0 * h);
}

inline double fd_phi(const cwy::HarmonicCoeffs& c, double theta, double phi,
                     double h = 1e-4) {
  return (cwy::evaluate(c, theta, phi + h) - cwy::evaluate(c, theta, phi - h)) /
         (2.0 * h);
}

inline double fd_theta2(const cwy::HarmonicCoeffs& c, double theta, double phi,
                        double h = 1e-4) {
  return (cwy::evaluate(c, theta + h, phi) - 2.0 * cwy::evaluate(c, theta, phi) +
          cwy::evaluate(c, theta - h, phi)) /
         (h * h);
}

inline double fd_phi2(const cwy::HarmonicCoeffs& c, double theta, double phi,
                      double h = 1e-4) {
  return (cwy::evaluate(c, theta, phi + h) - 2.0 * cwy::evaluate(c, theta, phi) +
          cwy::evaluate(c, theta, phi - h)) /
         (h * h);
}

inline double fd_theta_phi(const cwy::HarmonicCoeffs& c, double theta,
                           double phi, double h = 1e-4) {
  return (cwy::evaluate(c, theta + h, phi + h) -
          cwy::evaluate(c, theta + h, phi - h) -
          cwy::evaluate(c, theta - h, phi + h) +
          cwy::evaluate(c, theta - h, phi - h)) /
         (4.0 * h * h);
}

// Covariant Hessian components in the orthonormal frame (e1 along theta,
// e2 along phi), assembled from finite differences.
struct FdHessian {
  double h11, h12, h22;
};

inline FdHessian fd_hessian(const cwy::HarmonicCoeffs& c, double theta,
                            double phi, double h = 1e-4) {
  const double s = std::sin(theta), ct = std::cos(theta);
  FdHessian out;
  out.h11 = fd_theta2(c, theta, phi, h);
  out.h12 = fd_theta_phi(c, theta, phi, h) / s -
            ct / (s * s) * fd_phi(c, theta, phi, h);
  out.h22 = fd_phi2(c, theta, phi, h) / (s * s) +
            ct / s * fd_theta(c, theta, phi, h);
  return out;
}

}  // namespace testutil
