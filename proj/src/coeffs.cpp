#include "cwy/coeffs.hpp"

#include <algorithm>
#include <cmath>

namespace cwy {

HarmonicCoeffs HarmonicCoeffs::resized(int band) const {
  HarmonicCoeffs out(band);
  const int keep = std::min(band, band_);
  for (int l = 0; l <= keep; ++l)
    for (int mu = -l; mu <= l; ++mu) out.at(l, mu) = at(l, mu);
  return out;
}

void HarmonicCoeffs::zero_degrees(int l_lo, int l_hi) {
  const int hi = std::min(l_hi, band_);
  for (int l = std::max(0, l_lo); l <= hi; ++l)
    for (int mu = -l; mu <= l; ++mu) at(l, mu) = 0.0;
}

double HarmonicCoeffs::max_abs_degree(int l_lo, int l_hi) const {
  double m = 0.0;
  const int hi = std::min(l_hi, band_);
  for (int l = std::max(0, l_lo); l <= hi; ++l)
    for (int mu = -l; mu <= l; ++mu) m = std::max(m, std::abs(at(l, mu)));
  return m;
}

double HarmonicCoeffs::sup_bound() const {
  constexpr double kFourPi = 4.0 * 3.14159265358979323846;
  double bound = 0.0;
  for (int l = 0; l <= band_; ++l) {
    double sq = 0.0;
    for (int mu = -l; mu <= l; ++mu) sq += at(l, mu) * at(l, mu);
    bound += std::sqrt(sq * (2.0 * l + 1.0) / kFourPi);
  }
  return bound;
}

HarmonicCoeffs& HarmonicCoeffs::operator+=(const HarmonicCoeffs& o) {
  if (o.band_ != band_) throw ShapeError("HarmonicCoeffs: band limit mismatch in +=");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

HarmonicCoeffs& HarmonicCoeffs::operator-=(const HarmonicCoeffs& o) {
  if (o.band_ != band_) throw ShapeError("HarmonicCoeffs: band limit mismatch in -=");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

HarmonicCoeffs& HarmonicCoeffs::operator*=(double s) {
  for (double& v : a_) v *= s;
  return *this;
}

HarmonicCoeffs operator+(HarmonicCoeffs a, const HarmonicCoeffs& b) { return a += b; }
HarmonicCoeffs operator-(HarmonicCoeffs a, const HarmonicCoeffs& b) { return a -= b; }
HarmonicCoeffs operator*(double s, HarmonicCoeffs a) { return a *= s; }

HarmonicCoeffs phi_derivative(const HarmonicCoeffs& c) {
  HarmonicCoeffs out(c.band_limit());
  for (int l = 1; l <= c.band_limit(); ++l) {
    for (int m = 1; m <= l; ++m) {
      out.at(l, m) = m * c.at(l, -m);
      out.at(l, -m) = -m * c.at(l, m);
    }
  }
  return out;
}

}  // namespace cwy
