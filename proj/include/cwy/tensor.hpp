#pragma once

#include "cwy/field.hpp"
#include "cwy/frame.hpp"

namespace cwy {

// Symmetric traceless 2-tensor on the unit sphere, stored through its two
// scalar potentials: an electric (gradient-parity) potential and a magnetic
// (curl-parity) potential, both supported in degrees l >= 2.  The tensor is
//
//   C_AB = (grad grad - (1/2) metric Lap) c  +  eps-symmetrized version of cbar,
//
// i.e. the image of the potentials under the second-order traceless Hessian
// map and its rotated counterpart.  Degrees l <= 1 lie in the kernel of that
// map; by default they are projected away on construction, in strict mode
// their presence is an error.
class TracelessTensor {
 public:
  TracelessTensor() : electric_(HarmonicCoeffs(2)), magnetic_(HarmonicCoeffs(2)) {}
  TracelessTensor(ScalarField electric, ScalarField magnetic, bool strict = false);

  const ScalarField& electric() const { return electric_; }
  const ScalarField& magnetic() const { return magnetic_; }
  int band_limit() const { return electric_.coeffs().band_limit(); }

  // Sup bound of the l <= 1 potential content removed at construction.
  double removed_low_degrees() const { return removed_; }

 private:
  ScalarField electric_;
  ScalarField magnetic_;
  double removed_ = 0.0;
};

// Orthonormal-frame component values of a 2-tensor on the grid nodes, in the
// frame (e_theta, e_phi/sin).  For tensors produced by tensor_components the
// redundancy pt == tp and pp == -tt holds exactly; decompose_shear accepts
// general arrays and validates symmetry and trace against a tolerance.
struct TensorComponents {
  Vec tt;  // theta-theta
  Vec tp;  // theta-phi
  Vec pt;  // phi-theta
  Vec pp;  // phi-phi
};

// Frame components of a covector on the grid nodes.
struct CovectorValues {
  Vec a1;  // e_theta component
  Vec a2;  // e_phi/sin component
};

CovectorValues covector_values(const CovectorField& v, const SphereGrid& g);

// Pointwise orthonormal components of the tensor on the grid.
TensorComponents tensor_components(const TracelessTensor& t, const SphereGrid& g);

// Divergence contracted on the second slot.  Closed form: the result is the
// covector with gradient potential (1/2)(Lap+2)c and curl potential
// (1/2)(Lap+2)cbar.
CovectorField div_tensor(const TracelessTensor& t);

// Double divergence; closed form (1/2) Lap (Lap+2) c.  Pure-magnetic input
// gives zero (co-closedness).
ScalarField double_divergence(const TracelessTensor& t);

// Full contraction a_AB b^AB, formed pointwise on the grid and re-projected
// at twice the potential band (exact: the contraction of two band-limited
// tensors is itself band-limited at the summed bands).
ScalarField contract(const TracelessTensor& a, const TracelessTensor& b,
                     const SphereGrid& g);

struct ShearDecomposition {
  TracelessTensor tensor;
  // Sup-norm of (input components) - (components of the recovered tensor),
  // relative to 1 + input sup.
  double residual = 0.0;
};

// Recover the potentials from component values: c solves
// (1/2) Lap (Lap+2) c = double divergence, cbar the analogous equation for
// the rotated divergence.  Implemented by pairing the components against the
// tensor-harmonic images of each basis function, which inverts both equations
// exactly for band-limited input.  Symmetry and trace of the input are
// checked against tol * (1 + sup); violations throw ShapeError in any mode.
ShearDecomposition decompose_shear(const TensorComponents& comp, const SphereGrid& g,
                                   double tol = 1e-8);

// The curvature correction scalar built from the shear: evaluated term by
// term as the combination
//   (1/2) C:C + (1/2) gradC x gradC (transposed pairing) + (1/4) Lap(C:C)
//   - div(C^{AB} divC_B + C^{BD} gradC_{BD}^A) - (1/4) |gradC|^2.
ScalarField r2_scalar(const TracelessTensor& t, const SphereGrid& g);

// Pointwise residuals of the five derivative-interchange identities for the
// potential maps, plus their combined curl form, each evaluated in the
// orthonormal frame on the grid nodes.  scale is 1 + the sup of the tensor
// and its first derivatives, the natural size of every term involved.
struct InterchangeResiduals {
  double one = 0.0;       // grad-interchange of the electric map
  double two = 0.0;       // grad-interchange of the magnetic map
  double three = 0.0;     // second-divergence interchange for C
  double four = 0.0;      // curl of the electric map
  double five = 0.0;      // curl of the magnetic map
  double combined = 0.0;  // curl of C against rotated divergence
  double scale = 1.0;
};

InterchangeResiduals interchange_residuals(const TracelessTensor& t, const SphereGrid& g);

// Bundle of pointwise frame data for one shear tensor on one grid: component
// arrays, closed-form divergences, the contraction C:C with its band-doubled
// spectral image, and (at jet order >= 3, resp. 4) the full first and second
// covariant derivatives of C.  Everything downstream of the charge formulas
// consumes tensors through this bundle, so grid values are synthesized from
// potential jets exactly once.
struct ShearFrame {
  const SphereGrid* grid = nullptr;

  Vec FP, FQ;  // electric part, orthonormal components
  Vec BP, BQ;  // magnetic part
  Vec P, Q;    // C = electric + magnetic

  CovectorValues divF;  // components of div of the electric part
  CovectorValues divB;  // components of div of the magnetic part
  CovectorValues divC;  // sum of the two

  Vec ddC;               // double divergence values
  Vec CdotC;             // C:C values
  HarmonicCoeffs CdotC_coeffs;  // analysis of C:C at twice the band (exact)

  int order = 2;
  ThirdGrid gradC;   // (gradC)_{a(bd)}, order >= 3
  FourthGrid hessC;  // (grad gradC)_{ea(bd)}, order >= 4
};

ShearFrame make_shear_frame(const TracelessTensor& t, const SphereGrid& g, int order = 2);

}  // namespace cwy
