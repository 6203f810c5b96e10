#pragma once

#include <span>
#include <vector>

#include "cwy/errors.hpp"

namespace cwy {

// Real spherical-harmonic coefficients, dense over 0 <= l <= band_limit,
// -l <= mu <= l.  Basis: orthonormal real harmonics without Condon-Shortley
// phase,
//   Y_{l,0}  = Pbar_l^0(theta)
//   Y_{l,m}  = sqrt(2) * Pbar_l^m(theta) * cos(m*phi)   (m > 0)
//   Y_{l,-m} = sqrt(2) * Pbar_l^m(theta) * sin(m*phi)   (m > 0)
// so that the three degree-1 harmonics scale to the Cartesian coordinate
// functions: sqrt(4*pi/3) * Y_{1,1} = sin(theta)cos(phi), etc.
class HarmonicCoeffs {
 public:
  HarmonicCoeffs() = default;
  explicit HarmonicCoeffs(int band_limit)
      : band_(band_limit),
        a_(static_cast<std::size_t>(band_limit + 1) * (band_limit + 1), 0.0) {}

  int band_limit() const { return band_; }
  std::size_t size() const { return a_.size(); }

  static std::size_t index(int l, int mu) {
    return static_cast<std::size_t>(l) * l + l + mu;
  }

  double& at(int l, int mu) { return a_[index(l, mu)]; }
  double at(int l, int mu) const { return a_[index(l, mu)]; }

  std::span<const double> raw() const { return a_; }
  std::span<double> raw() { return {a_.data(), a_.size()}; }

  // Copy with coefficients above/below unchanged; `band` may grow (zero fill)
  // or shrink (truncation).
  HarmonicCoeffs resized(int band) const;

  // In-place: zero every coefficient with l in [l_lo, l_hi].
  void zero_degrees(int l_lo, int l_hi);

  // Largest |a_{l,mu}| over a degree range (inclusive).
  double max_abs_degree(int l_lo, int l_hi) const;

  // Deterministic upper bound on sup |f| from the addition theorem:
  //   sup|f| <= sum_l sqrt(sum_mu a^2) * sqrt((2l+1)/(4*pi)).
  double sup_bound() const;

  HarmonicCoeffs& operator+=(const HarmonicCoeffs& o);
  HarmonicCoeffs& operator-=(const HarmonicCoeffs& o);
  HarmonicCoeffs& operator*=(double s);

 private:
  int band_ = -1;
  std::vector<double> a_;
};

HarmonicCoeffs operator+(HarmonicCoeffs a, const HarmonicCoeffs& b);
HarmonicCoeffs operator-(HarmonicCoeffs a, const HarmonicCoeffs& b);
HarmonicCoeffs operator*(double s, HarmonicCoeffs a);

// d/dphi in coefficient space: cos(m phi) <-> sin(m phi) blocks couple as
// g_{l,m} = m a_{l,-m}, g_{l,-m} = -m a_{l,m}, g_{l,0} = 0.
HarmonicCoeffs phi_derivative(const HarmonicCoeffs& c);

// Multiply degree l by factor(l).
template <class F>
HarmonicCoeffs degree_multiplier(const HarmonicCoeffs& c, F&& factor) {
  HarmonicCoeffs out(c.band_limit());
  for (int l = 0; l <= c.band_limit(); ++l) {
    const double f = factor(l);
    for (int mu = -l; mu <= l; ++mu) out.at(l, mu) = f * c.at(l, mu);
  }
  return out;
}

}  // namespace cwy
