#pragma once

#include <memory>
#include <span>

#include "cwy/coeffs.hpp"
#include "cwy/grid.hpp"

namespace cwy {

// Smooth scalar on the sphere, stored spectrally, with an optional cache of
// grid values.  The cache is built at construction time and never mutated, so
// copies are cheap and the type stays safe to share across threads.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(HarmonicCoeffs c) : coeffs_(std::move(c)) {}
  ScalarField(HarmonicCoeffs c, std::shared_ptr<const SphereGrid> grid);

  int band_limit() const { return coeffs_.band_limit(); }
  const HarmonicCoeffs& coeffs() const { return coeffs_; }

  bool has_cache() const { return static_cast<bool>(values_); }
  const SphereGrid* cached_grid() const { return grid_.get(); }
  std::span<const double> cached_values() const { return *values_; }

  // Node values on `g`: the cache when it belongs to `g`, else a fresh
  // synthesis.
  Vec values(const SphereGrid& g) const;

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);

 private:
  HarmonicCoeffs coeffs_;
  std::shared_ptr<const SphereGrid> grid_;
  std::shared_ptr<const Vec> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double s, ScalarField a);

// Covector field V_A = grad_A g + eps_{AB} grad^B h in Helmholtz form.  Both
// potentials are defined modulo constants and are stored with degree 0
// removed.  Orientation: eps_{theta,phi} = +sin(theta), so in the orthonormal
// frame (e1 = d_theta, e2 = d_phi/sin) the components are
//   V_1 = d_theta g + d_phi h / sin,   V_2 = d_phi g / sin - d_theta h.
class CovectorField {
 public:
  CovectorField() = default;
  CovectorField(ScalarField grad_potential, ScalarField curl_potential);

  int band_limit() const { return grad_.band_limit(); }
  const ScalarField& grad_potential() const { return grad_; }
  const ScalarField& curl_potential() const { return curl_; }

 private:
  ScalarField grad_, curl_;
};

// ---- transforms ------------------------------------------------------------

// L2 projection of node values onto degrees <= band (default: grid band
// limit; anything up to the grid's table degree is exact for inputs that are
// polynomial of degree <= table degree).
HarmonicCoeffs analyze(const SphereGrid& g, std::span<const double> values,
                       int band = -1);

// Node values of a coefficient set (band limit may exceed the grid's nominal
// band up to its table degree).
Vec synthesize(const SphereGrid& g, const HarmonicCoeffs& c);

// Node values of the coordinate partial d^p/dtheta^p d^q/dphi^q, p <= 4.
Vec synthesize_partial(const SphereGrid& g, const HarmonicCoeffs& c,
                       int dtheta, int dphi);

// Single-point evaluation (slow; used by finite-difference oracles).
double evaluate(const HarmonicCoeffs& c, double theta, double phi);

// ---- integral-geometry operations ------------------------------------------

// Area integral: sqrt(4*pi) times the (0,0) coefficient.
double integrate(const ScalarField& f);

// Laplace-Beltrami of the round sphere: degree l scales by -l(l+1).
ScalarField laplacian(const ScalarField& f);

// (lap + 2) f, the operator whose kernel is degree 1.
ScalarField helmholtz_plus_two(const ScalarField& f);

// Gradient as a pure-gradient covector (curl potential zero).
CovectorField gradient(const ScalarField& f);

// div V = lap g;  curl V = eps^{AB} grad_B V_A = lap h.
ScalarField divergence(const CovectorField& v);
ScalarField curl(const CovectorField& v);

// Deterministic field scale used by kernel checks: 1 + sup-bound of f.
double field_scale(const ScalarField& f);

// Solve (lap + 2) u = f.  Degree 1 is the kernel: if f has degree-1 content
// above tol * field_scale(f), throws KernelObstruction; the solution's
// degree-1 part is set to zero.  tol < 0 selects the default 1e-10.
ScalarField invert_helmholtz_plus_two(const ScalarField& f, double tol = -1.0);

// Solve lap u = f with zero-mean f (degree-0 content above tol * scale
// throws); the solution has zero mean.
ScalarField invert_laplacian(const ScalarField& f, double tol = -1.0);

// Coordinate functions of the unit sphere as band-`band` fields:
//   i = 1: sin(theta)cos(phi), i = 2: sin(theta)sin(phi), i = 3: cos(theta).
// Eigenfunctions of the Laplacian with eigenvalue -2, exact in coefficients.
ScalarField unit_sphere_coordinate(int i, int band);

}  // namespace cwy
