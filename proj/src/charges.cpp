#include "cwy/charges.hpp"

#include <cmath>
#include <utility>

#include "cwy/errors.hpp"

namespace cwy {
namespace {

constexpr double kPi = SphereGrid::kPi;

int mu_of_axis(int i) {
  // Coordinate functions sit at (l, mu) = (1, +1), (1, -1), (1, 0).
  if (i == 1) return 1;
  if (i == 2) return -1;
  return 0;
}

HarmonicCoeffs mass_coeffs(const BondiData& d) {
  if (d.m.band_limit() < 0) return HarmonicCoeffs(0);
  return d.m.coeffs();
}

int working_band(const BondiData& d) {
  return std::max({d.band_limit, d.shear.band_limit(), 2});
}

struct XtFrame {
  Vec v;
  GradGrid grad;
};

std::array<XtFrame, 3> coordinate_frames(const SphereGrid& g) {
  std::array<XtFrame, 3> out;
  for (int i = 1; i <= 3; ++i) {
    const FrameField f =
        make_frame_field(g, unit_sphere_coordinate(i, 1).coeffs(), 1);
    out[i - 1] = {f.values, f.grad};
  }
  return out;
}

Vec lap_values(const SphereGrid& g, const ScalarField& f) {
  return synthesize(g, laplacian(f).coeffs());
}

void require_frame(const BondiData& d) {
  const FrameReport fr = check_com_frame(d);
  if (!fr.passed) throw FrameError(fr.reason);
}

}  // namespace

double bondi_energy(const BondiData& d) {
  const HarmonicCoeffs mc = mass_coeffs(d);
  return mc.at(0, 0) / std::sqrt(4.0 * kPi);
}

std::array<double, 3> bondi_linear_momentum(const BondiData& d) {
  const HarmonicCoeffs mc = mass_coeffs(d);
  std::array<double, 3> p{0.0, 0.0, 0.0};
  if (mc.band_limit() >= 1)
    for (int i = 1; i <= 3; ++i)
      p[i - 1] = mc.at(1, mu_of_axis(i)) / std::sqrt(12.0 * kPi);
  return p;
}

FrameReport check_com_frame(const BondiData& d, double tol) {
  FrameReport r;
  r.energy = bondi_energy(d);
  r.momentum = bondi_linear_momentum(d);
  const double pnorm =
      std::sqrt(r.momentum[0] * r.momentum[0] + r.momentum[1] * r.momentum[1] +
                r.momentum[2] * r.momentum[2]);
  r.defect = pnorm / (1.0 + r.energy);
  if (!(r.energy > tol)) {
    r.reason = "energy " + std::to_string(r.energy) +
               " is not positive beyond tolerance";
    return r;
  }
  if (pnorm > tol * (1.0 + r.energy)) {
    int worst = 0;
    for (int i = 1; i < 3; ++i)
      if (std::abs(r.momentum[i]) > std::abs(r.momentum[worst])) worst = i;
    r.reason = "linear momentum p" + std::to_string(worst + 1) + " = " +
               std::to_string(r.momentum[worst]) +
               " exceeds tolerance; not a center-of-mass frame";
    return r;
  }
  r.passed = true;
  return r;
}

CovectorField rotation_field(int k, int band) {
  return CovectorField(ScalarField(HarmonicCoeffs(std::max(band, 1))),
                       unit_sphere_coordinate(k, std::max(band, 1)));
}

EmbeddingLevelZero solve_embedding(const BondiData& d) {
  require_frame(d);

  const ScalarField two_m = 2.0 * ScalarField(mass_coeffs(d));
  EmbeddingLevelZero out;
  out.M = invert_helmholtz_plus_two(two_m);

  const ScalarField& c = d.shear.electric();
  const int xb = std::max(out.M.band_limit(), c.band_limit());
  out.X0 = ScalarField(out.M.coeffs().resized(xb)) -
           0.25 * ScalarField(helmholtz_plus_two(c).coeffs().resized(xb));

  const SphereGrid g(working_band(d));
  const CovectorValues w =
      covector_values(CovectorField(d.shear.electric(), d.shear.magnetic()), g);
  const Vec lapc = lap_values(g, c);
  const auto xts = coordinate_frames(g);
  const int xi_band = d.shear.band_limit() + 1;
  for (int i = 0; i < 3; ++i) {
    Vec vals(g.size());
    for (std::size_t p = 0; p < vals.size(); ++p)
      vals[p] = 0.5 * (w.a1[p] * xts[i].grad.a1[p] +
                       w.a2[p] * xts[i].grad.a2[p]) -
                0.25 * lapc[p] * xts[i].v[p];
    out.Xi[i] = ScalarField(analyze(g, vals, xi_band));
  }

  const int rb = std::max(out.X0.band_limit(), two_m.band_limit());
  HarmonicCoeffs resid =
      laplacian(helmholtz_plus_two(out.X0)).coeffs().resized(rb);
  resid -= laplacian(two_m).coeffs().resized(rb);
  resid += (0.5 * helmholtz_plus_two(double_divergence(d.shear)))
               .coeffs()
               .resized(rb);
  out.first_order_residual = resid.max_abs_degree(0, rb);
  return out;
}

namespace {

// Shared evaluation state for the reduced charge integrals.
struct ChargeFrame {
  SphereGrid g;
  ShearFrame sf;
  std::array<XtFrame, 3> xt;
  GradGrid gm;    // gradient of the mass aspect
  Vec mv;         // mass aspect values
  Vec cv;         // electric potential values
  GradGrid gcb;   // gradient of the magnetic potential

  explicit ChargeFrame(const BondiData& d)
      : g(working_band(d)),
        sf(make_shear_frame(d.shear, g, 2)),
        xt(coordinate_frames(g)) {
    const FrameField mf = make_frame_field(g, mass_coeffs(d), 1);
    gm = mf.grad;
    mv = mf.values;
    cv = synthesize(g, d.shear.electric().coeffs());
    const FrameField bf =
        make_frame_field(g, d.shear.magnetic().coeffs(), 1);
    gcb = bf.grad;
  }
};

// terms selects how much of the integrand survives: 1 = momentum-aspect term
// only, 3 = closed-shear form, 7 = everything.
std::array<double, 3> com_reduced(const BondiData& d, int terms) {
  const FrameReport fr = check_com_frame(d);
  if (!fr.passed) throw FrameError(fr.reason);

  const ChargeFrame cf(d);
  const SphereGrid& g = cf.g;
  const Vec lap_gn = lap_values(g, d.N.grad_potential());

  Vec q10, q01;
  if (terms > 3) {
    const HarmonicCoeffs hb =
        helmholtz_plus_two(d.shear.magnetic()).coeffs();
    q10 = synthesize_partial(g, hb, 1, 0);
    q01 = synthesize_partial(g, hb, 0, 1);
  }

  std::array<double, 3> out{0.0, 0.0, 0.0};
  Vec integrand(g.size());
  const int nphi = g.n_phi();
  for (int i = 0; i < 3; ++i) {
    const Vec& x = cf.xt[i].v;
    const GradGrid& gx = cf.xt[i].grad;
    for (std::size_t p = 0; p < integrand.size(); ++p) {
      double v = -x[p] * lap_gn[p];
      if (terms >= 3)
        v += -cf.cv[p] * (gx.a1[p] * cf.gm.a1[p] + gx.a2[p] * cf.gm.a2[p]) +
             3.0 * x[p] * cf.cv[p] * cf.mv[p];
      if (terms > 3) {
        const double inv_s =
            1.0 / g.sin_theta(static_cast<int>(p) / nphi);
        const double gq1 = q10[p];
        const double gq2 = q01[p] * inv_s;
        v += 2.0 * (gx.a1[p] * cf.gcb.a2[p] - gx.a2[p] * cf.gcb.a1[p]) *
                 cf.mv[p] -
             (1.0 / 16.0) * x[p] * (gq1 * gq1 + gq2 * gq2) -
             0.5 * x[p] *
                 (cf.sf.divF.a1[p] * cf.sf.divB.a1[p] +
                  cf.sf.divF.a2[p] * cf.sf.divB.a2[p]) -
             0.25 * x[p] *
                 (2.0 * (cf.sf.FP[p] * cf.sf.BP[p] +
                         cf.sf.FQ[p] * cf.sf.BQ[p]));
      }
      integrand[p] = v;
    }
    out[i] = g.integrate_values(integrand) / (8.0 * kPi * fr.energy);
  }
  return out;
}

std::array<double, 3> angmom_reduced(const BondiData& d, int terms,
                                     const ScalarField* x0) {
  const FrameReport fr = check_com_frame(d);
  if (!fr.passed) throw FrameError(fr.reason);

  const ChargeFrame cf(d);
  const SphereGrid& g = cf.g;
  const Vec lap_hn = lap_values(g, d.N.curl_potential());
  Vec lap_x0;
  if (terms > 3) lap_x0 = lap_values(g, *x0);

  std::array<double, 3> out{0.0, 0.0, 0.0};
  Vec integrand(g.size());
  for (int k = 0; k < 3; ++k) {
    const Vec& x = cf.xt[k].v;
    const GradGrid& gx = cf.xt[k].grad;
    for (std::size_t p = 0; p < integrand.size(); ++p) {
      // Rotation field about axis k from its curl potential.
      const double y1 = gx.a2[p];
      const double y2 = -gx.a1[p];
      double v = -x[p] * lap_hn[p];
      if (terms >= 3)
        v += -cf.cv[p] * (y1 * cf.gm.a1[p] + y2 * cf.gm.a2[p]);
      if (terms > 3) {
        const double yf1 = y1 * cf.sf.FP[p] + y2 * cf.sf.FQ[p];
        const double yf2 = y1 * cf.sf.FQ[p] - y2 * cf.sf.FP[p];
        const double yb1 = y1 * cf.sf.BP[p] + y2 * cf.sf.BQ[p];
        const double yb2 = y1 * cf.sf.BQ[p] - y2 * cf.sf.BP[p];
        v += 0.25 * lap_x0[p] *
                 (-y2 * cf.gcb.a1[p] + y1 * cf.gcb.a2[p]) -
             0.25 * (yf1 * cf.sf.divB.a1[p] + yf2 * cf.sf.divB.a2[p]) -
             0.25 * (yb1 * cf.sf.divF.a1[p] + yb2 * cf.sf.divF.a2[p]);
      }
      integrand[p] = v;
    }
    out[k] = g.integrate_values(integrand) / (8.0 * kPi);
  }
  return out;
}

}  // namespace

std::array<double, 3> center_of_mass(const BondiData& d) {
  return com_reduced(d, 7);
}

std::array<double, 3> center_of_mass_closed_shear(const BondiData& d) {
  return com_reduced(d, 3);
}

std::array<double, 3> center_of_mass_constant_mass(const BondiData& d) {
  return com_reduced(d, 1);
}

std::array<double, 3> angular_momentum(const BondiData& d) {
  const EmbeddingLevelZero emb = solve_embedding(d);
  return angmom_reduced(d, 7, &emb.X0);
}

std::array<double, 3> angular_momentum_closed_shear(const BondiData& d) {
  return angmom_reduced(d, 3, nullptr);
}

std::array<double, 3> angular_momentum_constant_mass(const BondiData& d) {
  return angmom_reduced(d, 1, nullptr);
}

ChargeSet charges(const BondiData& d) {
  ChargeSet out;
  out.energy = bondi_energy(d);
  out.linear_momentum = bondi_linear_momentum(d);
  const FrameReport fr = check_com_frame(d);
  out.diagnostics["com_frame_defect"] = fr.defect;
  if (!fr.passed) return out;

  out.frame_valid = true;
  const EmbeddingLevelZero emb = solve_embedding(d);
  out.diagnostics["first_order_residual"] = emb.first_order_residual;
  {
    const ScalarField two_m = 2.0 * ScalarField(mass_coeffs(d));
    const double kernel =
        two_m.coeffs().band_limit() >= 1
            ? two_m.coeffs().max_abs_degree(1, 1) / field_scale(two_m)
            : 0.0;
    out.diagnostics["embedding_kernel_residual"] = kernel;
  }
  out.center_of_mass = center_of_mass(d);
  out.angular_momentum = angmom_reduced(d, 7, &emb.X0);

  // Sensitivity of J to the degree-1 ambiguity of M, probed with one fixed
  // energy-scaled shift.  Only the lap X0 term can react.
  {
    HarmonicCoeffs shifted = emb.X0.coeffs();
    const double s = 1.0 + out.energy;
    const double f[3] = {0.1 * s, -0.2 * s, 0.3 * s};
    const double unit = std::sqrt(4.0 * kPi / 3.0);
    for (int i = 1; i <= 3; ++i)
      shifted.at(1, mu_of_axis(i)) += f[i - 1] * unit;
    const ScalarField x0s(std::move(shifted));
    const std::array<double, 3> js = angmom_reduced(d, 7, &x0s);
    double delta = 0.0;
    for (int k = 0; k < 3; ++k)
      delta = std::max(delta,
                       std::abs(js[k] - out.angular_momentum[k]));
    out.diagnostics["angmom_l1_gauge_delta"] = delta;
  }
  return out;
}

}  // namespace cwy
