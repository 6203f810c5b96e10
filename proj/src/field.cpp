#include "cwy/field.hpp"

#include <cmath>
#include <utility>

#include "cwy/errors.hpp"

namespace cwy {

namespace {
constexpr double kFourPi = 4.0 * 3.14159265358979323846;
}

ScalarField::ScalarField(HarmonicCoeffs c, std::shared_ptr<const SphereGrid> grid)
    : coeffs_(std::move(c)), grid_(std::move(grid)) {
  values_ = std::make_shared<const Vec>(synthesize(*grid_, coeffs_));
}

Vec ScalarField::values(const SphereGrid& g) const {
  if (values_ && grid_.get() == &g) return *values_;
  return synthesize(g, coeffs_);
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  coeffs_ += o.coeffs_;
  grid_.reset();
  values_.reset();
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  coeffs_ -= o.coeffs_;
  grid_.reset();
  values_.reset();
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  coeffs_ *= s;
  grid_.reset();
  values_.reset();
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

CovectorField::CovectorField(ScalarField grad_potential, ScalarField curl_potential)
    : grad_(std::move(grad_potential)), curl_(std::move(curl_potential)) {
  if (grad_.band_limit() != curl_.band_limit())
    throw ShapeError("CovectorField: potentials must share a band limit");
  // Potentials are defined modulo constants; store them mean-free.
  HarmonicCoeffs cg = grad_.coeffs();
  HarmonicCoeffs ch = curl_.coeffs();
  cg.zero_degrees(0, 0);
  ch.zero_degrees(0, 0);
  grad_ = ScalarField(std::move(cg));
  curl_ = ScalarField(std::move(ch));
}

double integrate(const ScalarField& f) {
  return std::sqrt(kFourPi) * f.coeffs().at(0, 0);
}

ScalarField laplacian(const ScalarField& f) {
  return ScalarField(degree_multiplier(
      f.coeffs(), [](int l) { return -static_cast<double>(l) * (l + 1); }));
}

ScalarField helmholtz_plus_two(const ScalarField& f) {
  return ScalarField(degree_multiplier(
      f.coeffs(), [](int l) { return 2.0 - static_cast<double>(l) * (l + 1); }));
}

CovectorField gradient(const ScalarField& f) {
  return CovectorField(f, ScalarField(HarmonicCoeffs(f.band_limit())));
}

ScalarField divergence(const CovectorField& v) {
  return laplacian(v.grad_potential());
}

ScalarField curl(const CovectorField& v) {
  return laplacian(v.curl_potential());
}

double field_scale(const ScalarField& f) { return 1.0 + f.coeffs().sup_bound(); }

ScalarField invert_helmholtz_plus_two(const ScalarField& f, double tol) {
  if (tol < 0.0) tol = 1e-10;
  const double obstruction = f.coeffs().max_abs_degree(1, 1);
  if (obstruction > tol * field_scale(f))
    throw KernelObstruction(
        "invert_helmholtz_plus_two: right-hand side has degree-1 content " +
        std::to_string(obstruction) + " above tolerance");
  HarmonicCoeffs out(f.band_limit());
  for (int l = 0; l <= f.band_limit(); ++l) {
    if (l == 1) continue;  // kernel: solution's degree-1 part fixed to zero
    const double eig = 2.0 - static_cast<double>(l) * (l + 1);
    for (int mu = -l; mu <= l; ++mu) out.at(l, mu) = f.coeffs().at(l, mu) / eig;
  }
  return ScalarField(std::move(out));
}

ScalarField invert_laplacian(const ScalarField& f, double tol) {
  if (tol < 0.0) tol = 1e-10;
  const double mean = std::abs(f.coeffs().at(0, 0));
  if (mean > tol * field_scale(f))
    throw KernelObstruction("invert_laplacian: right-hand side has nonzero mean " +
                            std::to_string(mean) + " above tolerance");
  HarmonicCoeffs out(f.band_limit());
  for (int l = 1; l <= f.band_limit(); ++l) {
    const double eig = -static_cast<double>(l) * (l + 1);
    for (int mu = -l; mu <= l; ++mu) out.at(l, mu) = f.coeffs().at(l, mu) / eig;
  }
  return ScalarField(std::move(out));
}

ScalarField unit_sphere_coordinate(int i, int band) {
  if (i < 1 || i > 3) throw ShapeError("unit_sphere_coordinate: i must be 1, 2, or 3");
  if (band < 1) throw BandLimitError("unit_sphere_coordinate: band must be >= 1");
  HarmonicCoeffs c(band);
  const double amp = std::sqrt(kFourPi / 3.0);
  const int mu = (i == 1) ? 1 : (i == 2) ? -1 : 0;
  c.at(1, mu) = amp;
  return ScalarField(std::move(c));
}

}  // namespace cwy
