#pragma once

#include <array>

#include "cwy/field.hpp"

namespace cwy {

// Exact pointwise covariant derivatives of band-limited scalars in the
// orthonormal frame e1 = d_theta, e2 = d_phi/sin(theta).
//
// Everything here is synthesized from spectral coefficients (coordinate
// partials up to fourth order come from precomputed Legendre derivative
// tables), so node values are exact up to rounding.  The only frame
// connection coefficient on the round sphere is cot(theta):
//   grad_{e2} e1 = cot * e2,  grad_{e2} e2 = -cot * e1,
// which is what the correction terms below implement.  All formulas keep the
// 1/sin powers attached to phi-derivatives, which vanish to matching order
// near the poles, so evaluation at interior Gauss nodes is stable.

// Coordinate partials d^p/dtheta^p d^q/dphi^q f on the grid, p + q <= order.
struct ScalarJet {
  int order = 0;
  std::size_t n = 0;
  // d[p][q]
  std::array<std::array<Vec, 5>, 5> d;

  const Vec& at(int p, int q) const { return d[p][q]; }
};

ScalarJet make_jet(const SphereGrid& g, const HarmonicCoeffs& c, int order);

// Frame gradient grad_a f.
struct GradGrid {
  Vec a1, a2;
  const Vec& at(int a) const { return a == 1 ? a1 : a2; }
};

// Frame Hessian grad_a grad_b f (symmetric).
struct HessGrid {
  Vec m11, m12, m22;
  const Vec& at(int a, int b) const {
    if (a == 1 && b == 1) return m11;
    if (a == 2 && b == 2) return m22;
    return m12;
  }
};

// Third covariant derivative T_{abc} = grad_a grad_b grad_c f (symmetric in
// b, c only).
struct ThirdGrid {
  // t[a-1][bc] with bc in {0:11, 1:12, 2:22}
  std::array<std::array<Vec, 3>, 2> t;
  static int sym(int b, int c) { return (b - 1) + (c - 1); }
  const Vec& at(int a, int b, int c) const { return t[a - 1][sym(b, c)]; }
};

// Fourth covariant derivative R_{eabc} = grad_e grad_a grad_b grad_c f
// (symmetric in b, c only).
struct FourthGrid {
  std::array<std::array<std::array<Vec, 3>, 2>, 2> r;
  const Vec& at(int e, int a, int b, int c) const {
    return r[e - 1][a - 1][ThirdGrid::sym(b, c)];
  }
};

GradGrid frame_grad(const SphereGrid& g, const ScalarJet& j);
HessGrid frame_hess(const SphereGrid& g, const ScalarJet& j);
ThirdGrid frame_third(const SphereGrid& g, const ScalarJet& j);
FourthGrid frame_fourth(const SphereGrid& g, const ScalarJet& j);

// Bundle of everything pointwise about one scalar, up to the requested order.
struct FrameField {
  Vec values;
  GradGrid grad;     // order >= 1
  HessGrid hess;     // order >= 2
  ThirdGrid third;   // order >= 3
  FourthGrid fourth; // order >= 4
  int order = 0;
};

FrameField make_frame_field(const SphereGrid& g, const HarmonicCoeffs& c,
                            int order);

}  // namespace cwy
