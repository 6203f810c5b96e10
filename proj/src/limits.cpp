#include "cwy/limits.hpp"

#include <algorithm>
#include <cmath>

#include "cwy/errors.hpp"

namespace cwy {
namespace {

constexpr double kPi = SphereGrid::kPi;

struct AxisFrame {
  Vec v;
  GradGrid grad;
};

// Everything pointwise that the limit integrands consume, built once per
// (data, embedding) pair.  The grid sits one band above the data so products
// involving the band-(L+1) spatial embedding components are still analyzed
// exactly.
struct LimitFrame {
  SphereGrid g;
  double u = 0.0;
  double energy = 0.0;

  ShearFrame sf;
  std::array<AxisFrame, 3> xt;

  Vec mv, lapm;
  GradGrid gm;

  Vec cv, lapc, hp2c;
  GradGrid gcb;
  HessGrid kcb;          // Hessian of the magnetic potential
  Vec glapcb1, glapcb2;  // frame gradient of lap of the magnetic potential

  HessGrid hgw, hhw;  // Hessians of the two shear-divergence potentials

  Vec x0v, lapx0;
  GradGrid gx0;
  HessGrid hx0;

  std::array<Vec, 3> xiv;
  std::array<GradGrid, 3> gxi;

  CovectorValues nv;
  Vec divn;

  Vec r2v, lapcc;

  Vec hv, h0v, dsv;

  CovectorField j1;
  CovectorValues j1v;
  double div_j1 = 0.0;
  double j1_diff = 0.0;

  LimitFrame(const BondiData& d, const EmbeddingLevelZero& emb);

  double cval(int a, int b, std::size_t i) const {
    if (a == 1 && b == 1) return sf.P[i];
    if (a == 2 && b == 2) return -sf.P[i];
    return sf.Q[i];
  }
  // grad_e of the shear divergence covector, from the potential Hessians.
  double gradw(int e, int a, std::size_t i) const {
    return hgw.at(e, a)[i] + (a == 1 ? hhw.at(e, 2)[i] : -hhw.at(e, 1)[i]);
  }
};

LimitFrame::LimitFrame(const BondiData& d, const EmbeddingLevelZero& emb)
    : g(std::max({d.band_limit, d.shear.band_limit(), 2}) + 1),
      u(d.u),
      sf(make_shear_frame(d.shear, g, 2)) {
  const FrameReport fr = check_com_frame(d);
  if (!fr.passed) throw FrameError(fr.reason);
  energy = fr.energy;

  const std::size_t n = g.size();
  const int nphi = g.n_phi();

  for (int i = 1; i <= 3; ++i) {
    const FrameField f =
        make_frame_field(g, unit_sphere_coordinate(i, 1).coeffs(), 1);
    xt[i - 1] = {f.values, f.grad};
  }

  const HarmonicCoeffs mc =
      d.m.band_limit() < 0 ? HarmonicCoeffs(0) : d.m.coeffs();
  {
    const FrameField f = make_frame_field(g, mc, 1);
    mv = f.values;
    gm = f.grad;
  }
  lapm = synthesize(g, laplacian(ScalarField(mc)).coeffs());

  const ScalarField& c = d.shear.electric();
  const ScalarField& cb = d.shear.magnetic();
  cv = synthesize(g, c.coeffs());
  lapc = synthesize(g, laplacian(c).coeffs());
  hp2c = synthesize(g, helmholtz_plus_two(c).coeffs());
  {
    const FrameField f = make_frame_field(g, cb.coeffs(), 2);
    gcb = f.grad;
    kcb = f.hess;
  }
  {
    const HarmonicCoeffs lb = laplacian(cb).coeffs();
    glapcb1 = synthesize_partial(g, lb, 1, 0);
    const Vec dphi = synthesize_partial(g, lb, 0, 1);
    glapcb2.resize(n);
    for (std::size_t i = 0; i < n; ++i)
      glapcb2[i] = dphi[i] / g.sin_theta(static_cast<int>(i) / nphi);
  }
  hgw = frame_hess(
      g, make_jet(g, (0.5 * helmholtz_plus_two(c)).coeffs(), 2));
  hhw = frame_hess(
      g, make_jet(g, (0.5 * helmholtz_plus_two(cb)).coeffs(), 2));

  {
    const FrameField f = make_frame_field(g, emb.X0.coeffs(), 2);
    x0v = f.values;
    gx0 = f.grad;
    hx0 = f.hess;
  }
  lapx0 = synthesize(g, laplacian(emb.X0).coeffs());
  for (int j = 0; j < 3; ++j) {
    const FrameField f = make_frame_field(g, emb.Xi[j].coeffs(), 1);
    xiv[j] = f.values;
    gxi[j] = f.grad;
  }

  nv = covector_values(d.N, g);
  divn = synthesize(g, laplacian(d.N.grad_potential()).coeffs());

  r2v = synthesize(g, r2_scalar(d.shear, g).coeffs());
  lapcc = synthesize(g, laplacian(ScalarField(sf.CdotC_coeffs)).coeffs());

  hv.resize(n);
  h0v.resize(n);
  dsv.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w1 = sf.divC.a1[i], w2 = sf.divC.a2[i];
    const double ww = w1 * w1 + w2 * w2;
    double cw = 0.0;  // C^{EA} grad_E (divC)_A
    for (int e = 1; e <= 2; ++e)
      for (int a = 1; a <= 2; ++a) cw += cval(e, a, i) * gradw(e, a, i);

    hv[i] = 0.125 * sf.CdotC[i] - (1.0 / 32.0) * lapcc[i] +
            0.75 * ((4.0 / 3.0) * divn[i] + (4.0 * u / 3.0) * lapm[i] -
                    0.125 * lapcc[i]) -
            0.25 * cw - 0.5 * (ww + cw) - 0.5 * r2v[i] - mv[i] * mv[i] -
            (1.0 / 16.0) * sf.ddC[i] * sf.ddC[i] + 0.5 * mv[i] * sf.ddC[i];

    double xisq = 0.0;
    for (int j = 0; j < 3; ++j)
      xisq += gxi[j].a1[i] * gxi[j].a1[i] + gxi[j].a2[i] * gxi[j].a2[i];
    dsv[i] = 0.5 * sf.CdotC[i] - xisq + gx0.a1[i] * gx0.a1[i] +
             gx0.a2[i] * gx0.a2[i];

    double chg = 0.0;  // C^{AB} grad_A (div of electric part)_B
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b) chg += cval(a, b, i) * hgw.at(a, b)[i];
    h0v[i] = dsv[i] - 0.25 * lapx0[i] * lapx0[i] -
             0.5 * ((w1 * sf.divF.a1[i] + w2 * sf.divF.a2[i]) + chg) -
             0.5 * (w1 * sf.divB.a1[i] + w2 * sf.divB.a2[i]) -
             0.5 * (2.0 * (sf.P[i] * sf.BP[i] + sf.Q[i] * sf.BQ[i])) +
             (1.0 / 16.0) *
                 (glapcb1[i] * glapcb1[i] + glapcb2[i] * glapcb2[i]) +
             0.25 * ww;
  }

  const int jb =
      std::max({mc.band_limit(), c.band_limit(), emb.X0.band_limit()});
  HarmonicCoeffs v1g = mc.resized(jb);
  v1g -= (0.125 * laplacian(helmholtz_plus_two(c))).coeffs().resized(jb);
  v1g -= (0.25 * helmholtz_plus_two(c)).coeffs().resized(jb);
  v1g -= (0.5 * helmholtz_plus_two(emb.X0)).coeffs().resized(jb);
  const HarmonicCoeffs v1h =
      (-0.25 * helmholtz_plus_two(cb)).coeffs().resized(jb);
  j1 = CovectorField(ScalarField(v1g), ScalarField(v1h));
  j1_diff = j1.grad_potential().coeffs().max_abs_degree(0, jb);
  div_j1 = laplacian(j1.grad_potential()).coeffs().max_abs_degree(0, jb);
  j1v = covector_values(j1, g);
}

}  // namespace

ExpansionCoefficients compute_coefficients(const BondiData& d,
                                           const EmbeddingLevelZero& emb) {
  const LimitFrame f(d, emb);
  ExpansionCoefficients out;
  out.H_m3 = ScalarField(analyze(f.g, f.hv, f.g.table_degree()));
  out.H0_m3_weak = ScalarField(analyze(f.g, f.h0v, f.g.table_degree()));
  out.deltasigma_trace = ScalarField(analyze(f.g, f.dsv, f.g.table_degree()));
  out.j1 = f.j1;
  out.div_j1 = f.div_j1;
  out.j1_difference = f.j1_diff;
  return out;
}

std::array<double, 3> com_via_limit(const BondiData& d,
                                    const EmbeddingLevelZero& emb) {
  const LimitFrame f(d, emb);
  std::array<double, 3> out{0.0, 0.0, 0.0};
  Vec integrand(f.g.size());
  for (int i = 0; i < 3; ++i) {
    const Vec& x = f.xt[i].v;
    const GradGrid& gx = f.xt[i].grad;
    for (std::size_t p = 0; p < integrand.size(); ++p)
      integrand[p] =
          x[p] * (f.h0v[p] - f.hv[p]) + 2.0 * f.mv[p] * f.xiv[i][p] -
          2.0 * (gx.a1[p] * f.j1v.a1[p] + gx.a2[p] * f.j1v.a2[p]) * f.x0v[p];
    out[i] = f.g.integrate_values(integrand) / (8.0 * kPi * f.energy);
  }
  return out;
}

std::array<double, 3> angmom_via_limit(const BondiData& d,
                                       const EmbeddingLevelZero& emb) {
  const LimitFrame f(d, emb);
  std::array<double, 3> out{0.0, 0.0, 0.0};
  Vec integrand(f.g.size());
  for (int k = 0; k < 3; ++k) {
    const GradGrid& gx = f.xt[k].grad;
    for (std::size_t p = 0; p < integrand.size(); ++p) {
      const double y1 = gx.a2[p];
      const double y2 = -gx.a1[p];
      const double yn = y1 * f.nv.a1[p] + y2 * f.nv.a2[p];
      const double ygx0 = y1 * f.gx0.a1[p] + y2 * f.gx0.a2[p];
      const double yc1 = y1 * f.sf.P[p] + y2 * f.sf.Q[p];
      const double yc2 = y1 * f.sf.Q[p] - y2 * f.sf.P[p];
      const double w1 = f.sf.divC.a1[p], w2 = f.sf.divC.a2[p];
      const double yhx0_1 = y1 * f.hx0.at(1, 1)[p] + y2 * f.hx0.at(2, 1)[p];
      const double yhx0_2 = y1 * f.hx0.at(1, 2)[p] + y2 * f.hx0.at(2, 2)[p];
      const double ec1 = f.gcb.a2[p];
      const double ec2 = -f.gcb.a1[p];
      const double yb1 = y1 * f.sf.BP[p] + y2 * f.sf.BQ[p];
      const double yb2 = y1 * f.sf.BQ[p] - y2 * f.sf.BP[p];
      const double keps1 =
          f.kcb.at(1, 1)[p] * f.sf.divB.a1[p] + f.kcb.at(2, 1)[p] * f.sf.divB.a2[p];
      const double keps2 =
          f.kcb.at(1, 2)[p] * f.sf.divB.a1[p] + f.kcb.at(2, 2)[p] * f.sf.divB.a2[p];
      integrand[p] =
          -yn + 2.0 * f.mv[p] * ygx0 + 0.25 * (yc1 * w1 + yc2 * w2) +
          0.5 * (yc1 * f.gx0.a1[p] + yc2 * f.gx0.a2[p]) +
          0.5 * (yhx0_1 * f.sf.divF.a1[p] + yhx0_2 * f.sf.divF.a2[p]) +
          0.5 * (yhx0_1 * ec1 + yhx0_2 * ec2) +
          0.5 * (yb1 * f.sf.divB.a1[p] + yb2 * f.sf.divB.a2[p]) -
          0.5 * ((-y2) * keps1 + y1 * keps2);
    }
    out[k] = -f.g.integrate_values(integrand) / (8.0 * kPi);
  }
  return out;
}

std::map<std::string, double> lemma_residuals(const BondiData& d,
                                              const EmbeddingLevelZero& emb) {
  const LimitFrame f(d, emb);
  const std::size_t n = f.g.size();
  std::map<std::string, double> out;
  Vec work(n);

  const auto record = [&out](const std::string& key, double resid,
                             double magnitude) {
    out[key] = resid;
    out[key + "_scale"] = 1.0 + magnitude;
  };

  {
    double resid = 0.0, mag = 0.0;
    for (int i = 0; i < 3; ++i) {
      const Vec& x = f.xt[i].v;
      for (std::size_t p = 0; p < n; ++p)
        work[p] = x[p] * (f.dsv[p] - 0.25 * f.lapx0[p] * f.lapx0[p]);
      const double lhs = f.g.integrate_values(work);
      for (std::size_t p = 0; p < n; ++p) {
        const double fbfb =
            2.0 * (f.sf.BP[p] * f.sf.BP[p] + f.sf.BQ[p] * f.sf.BQ[p]);
        const double kk = f.kcb.at(1, 1)[p] * f.kcb.at(1, 1)[p] +
                          2.0 * f.kcb.at(1, 2)[p] * f.kcb.at(1, 2)[p] +
                          f.kcb.at(2, 2)[p] * f.kcb.at(2, 2)[p];
        const double dfecb = f.sf.divF.a1[p] * f.gcb.a2[p] -
                             f.sf.divF.a2[p] * f.gcb.a1[p];
        work[p] =
            x[p] * (0.25 * f.sf.CdotC[p] + 0.25 * fbfb - 0.25 * kk -
                    0.5 * dfecb -
                    0.25 * (f.gcb.a1[p] * f.gcb.a1[p] +
                            f.gcb.a2[p] * f.gcb.a2[p]) -
                    (1.0 / 16.0) * f.sf.ddC[p] * f.sf.ddC[p] -
                    f.mv[p] * f.mv[p] + 0.5 * f.mv[p] * f.hp2c[p] +
                    0.5 * f.mv[p] * f.sf.ddC[p]);
      }
      const double rhs = f.g.integrate_values(work);
      resid = std::max(resid, std::abs(lhs - rhs));
      mag = std::max({mag, std::abs(lhs), std::abs(rhs)});
    }
    record("x_minus_1", resid, mag);
  }

  {
    double resid = 0.0, mag = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      const double w1 = f.sf.divC.a1[p], w2 = f.sf.divC.a2[p];
      double cw = 0.0;
      for (int e = 1; e <= 2; ++e)
        for (int a = 1; a <= 2; ++a) cw += f.cval(e, a, p) * f.gradw(e, a, p);
      const double div_term = w1 * w1 + w2 * w2 + cw;
      const double val =
          0.5 * f.r2v[p] + 0.25 * div_term + (1.0 / 16.0) * f.lapcc[p];
      resid = std::max(resid, std::abs(val));
      mag = std::max({mag, std::abs(0.5 * f.r2v[p]), std::abs(0.25 * div_term),
                      std::abs(f.lapcc[p]) / 16.0});
    }
    record("magical_pointwise", resid, mag);
  }

  {
    double resid = 0.0, mag = 0.0;
    for (int i = 0; i < 3; ++i) {
      const Vec& x = f.xt[i].v;
      const GradGrid& gx = f.xt[i].grad;
      for (std::size_t p = 0; p < n; ++p)
        work[p] = 2.0 * f.mv[p] * f.xiv[i][p] -
                  2.0 * (gx.a1[p] * f.j1v.a1[p] + gx.a2[p] * f.j1v.a2[p]) *
                      f.x0v[p];
      const double lhs = f.g.integrate_values(work);
      for (std::size_t p = 0; p < n; ++p)
        work[p] = 0.5 * x[p] *
                      (f.sf.divF.a1[p] * f.sf.divB.a1[p] +
                       f.sf.divF.a2[p] * f.sf.divB.a2[p]) -
                  (gx.a1[p] * f.gm.a1[p] + gx.a2[p] * f.gm.a2[p]) * f.cv[p] +
                  2.0 * x[p] * f.cv[p] * f.mv[p] -
                  0.5 * x[p] * f.lapc[p] * f.mv[p] +
                  2.0 * (gx.a1[p] * f.gcb.a2[p] - gx.a2[p] * f.gcb.a1[p]) *
                      f.mv[p];
      const double rhs = f.g.integrate_values(work);
      resid = std::max(resid, std::abs(lhs - rhs));
      mag = std::max({mag, std::abs(lhs), std::abs(rhs)});
    }
    record("last_two_terms", resid, mag);
  }

  {
    double resid = 0.0, mag = 0.0;
    for (int k = 0; k < 3; ++k) {
      const GradGrid& gx = f.xt[k].grad;
      for (std::size_t p = 0; p < n; ++p) {
        const double y1 = gx.a2[p], y2 = -gx.a1[p];
        const double ygx0 = y1 * f.gx0.a1[p] + y2 * f.gx0.a2[p];
        const double yc1 = y1 * f.sf.P[p] + y2 * f.sf.Q[p];
        const double yc2 = y1 * f.sf.Q[p] - y2 * f.sf.P[p];
        const double yhx0_1 =
            y1 * f.hx0.at(1, 1)[p] + y2 * f.hx0.at(2, 1)[p];
        const double yhx0_2 =
            y1 * f.hx0.at(1, 2)[p] + y2 * f.hx0.at(2, 2)[p];
        work[p] = -2.0 * f.mv[p] * ygx0 -
                  0.5 * (yc1 * f.gx0.a1[p] + yc2 * f.gx0.a2[p]) -
                  0.5 * (yhx0_1 * f.sf.divF.a1[p] +
                         yhx0_2 * f.sf.divF.a2[p]) -
                  0.5 * (yhx0_1 * f.gcb.a2[p] - yhx0_2 * f.gcb.a1[p]);
      }
      const double lhs = f.g.integrate_values(work);
      for (std::size_t p = 0; p < n; ++p) {
        const double y1 = gx.a2[p], y2 = -gx.a1[p];
        work[p] = -f.cv[p] * (y1 * f.gm.a1[p] + y2 * f.gm.a2[p]) +
                  0.25 * f.lapx0[p] *
                      ((-y2) * f.gcb.a1[p] + y1 * f.gcb.a2[p]);
      }
      const double rhs = f.g.integrate_values(work);
      resid = std::max(resid, std::abs(lhs - rhs));
      mag = std::max({mag, std::abs(lhs), std::abs(rhs)});
    }
    record("ang_X0", resid, mag);
  }

  {
    double resid = 0.0, mag = 0.0;
    for (int k = 0; k < 3; ++k) {
      const GradGrid& gx = f.xt[k].grad;
      for (std::size_t p = 0; p < n; ++p) {
        const double y1 = gx.a2[p], y2 = -gx.a1[p];
        const double yc1 = y1 * f.sf.P[p] + y2 * f.sf.Q[p];
        const double yc2 = y1 * f.sf.Q[p] - y2 * f.sf.P[p];
        const double yb1 = y1 * f.sf.BP[p] + y2 * f.sf.BQ[p];
        const double yb2 = y1 * f.sf.BQ[p] - y2 * f.sf.BP[p];
        const double keps1 = f.kcb.at(1, 1)[p] * f.sf.divB.a1[p] +
                             f.kcb.at(2, 1)[p] * f.sf.divB.a2[p];
        const double keps2 = f.kcb.at(1, 2)[p] * f.sf.divB.a1[p] +
                             f.kcb.at(2, 2)[p] * f.sf.divB.a2[p];
        work[p] = -0.25 * (yc1 * f.sf.divC.a1[p] + yc2 * f.sf.divC.a2[p]) -
                  0.5 * (yb1 * f.sf.divB.a1[p] + yb2 * f.sf.divB.a2[p]) +
                  0.5 * ((-y2) * keps1 + y1 * keps2);
      }
      const double lhs = f.g.integrate_values(work);
      for (std::size_t p = 0; p < n; ++p) {
        const double y1 = gx.a2[p], y2 = -gx.a1[p];
        const double yf1 = y1 * f.sf.FP[p] + y2 * f.sf.FQ[p];
        const double yf2 = y1 * f.sf.FQ[p] - y2 * f.sf.FP[p];
        const double yb1 = y1 * f.sf.BP[p] + y2 * f.sf.BQ[p];
        const double yb2 = y1 * f.sf.BQ[p] - y2 * f.sf.BP[p];
        work[p] = -0.25 * (yf1 * f.sf.divB.a1[p] + yf2 * f.sf.divB.a2[p]) -
                  0.25 * (yb1 * f.sf.divF.a1[p] + yb2 * f.sf.divF.a2[p]);
      }
      const double rhs = f.g.integrate_values(work);
      resid = std::max(resid, std::abs(lhs - rhs));
      mag = std::max({mag, std::abs(lhs), std::abs(rhs)});
    }
    record("ang_shear_alone", resid, mag);
  }

  {
    double resid = 0.0;
    for (int k = 0; k < 3; ++k) {
      const GradGrid& gx = f.xt[k].grad;
      for (std::size_t p = 0; p < n; ++p)
        work[p] = gx.a2[p] * f.sf.divB.a1[p] - gx.a1[p] * f.sf.divB.a2[p];
      resid = std::max(resid, std::abs(f.g.integrate_values(work)));
    }
    record("top_order_finiteness", resid, 0.0);
  }

  return out;
}

}  // namespace cwy
