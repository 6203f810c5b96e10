#include "cwy/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "cwy/errors.hpp"

namespace cwy {
namespace {

double sup_abs(const Vec& v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

double eps_frame(int a, int b) {
  if (a == 1 && b == 2) return 1.0;
  if (a == 2 && b == 1) return -1.0;
  return 0.0;
}

// (grad F[q])_{a(bd)}: remove the (b,d)-trace from grad Hess q.
ThirdGrid traceless_part(const ThirdGrid& T) {
  ThirdGrid out;
  const std::size_t n = T.t[0][0].size();
  for (int a = 0; a < 2; ++a) {
    out.t[a][0].resize(n);
    out.t[a][1] = T.t[a][1];
    out.t[a][2].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double half = 0.5 * (T.t[a][0][i] - T.t[a][2][i]);
      out.t[a][0][i] = half;
      out.t[a][2][i] = -half;
    }
  }
  return out;
}

// grad Fbar[q] from grad F[q]: eps is parallel, so the rotation acts on the
// symmetric slot pair as (11, 12, 22) -> (12, -11, -12) at every order.
ThirdGrid rotate_pair(const ThirdGrid& F) {
  ThirdGrid out;
  const std::size_t n = F.t[0][0].size();
  for (int a = 0; a < 2; ++a) {
    out.t[a][0] = F.t[a][1];
    out.t[a][1].resize(n);
    out.t[a][2].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.t[a][1][i] = -F.t[a][0][i];
      out.t[a][2][i] = -F.t[a][1][i];
    }
  }
  return out;
}

ThirdGrid sum_third(const ThirdGrid& x, const ThirdGrid& y) {
  ThirdGrid out;
  const std::size_t n = x.t[0][0].size();
  for (int a = 0; a < 2; ++a)
    for (int s = 0; s < 3; ++s) {
      out.t[a][s].resize(n);
      for (std::size_t i = 0; i < n; ++i)
        out.t[a][s][i] = x.t[a][s][i] + y.t[a][s][i];
    }
  return out;
}

FourthGrid traceless_part4(const FourthGrid& R) {
  FourthGrid out;
  const std::size_t n = R.r[0][0][0].size();
  for (int e = 0; e < 2; ++e)
    for (int a = 0; a < 2; ++a) {
      out.r[e][a][0].resize(n);
      out.r[e][a][1] = R.r[e][a][1];
      out.r[e][a][2].resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double half = 0.5 * (R.r[e][a][0][i] - R.r[e][a][2][i]);
        out.r[e][a][0][i] = half;
        out.r[e][a][2][i] = -half;
      }
    }
  return out;
}

FourthGrid rotate_pair4(const FourthGrid& F) {
  FourthGrid out;
  const std::size_t n = F.r[0][0][0].size();
  for (int e = 0; e < 2; ++e)
    for (int a = 0; a < 2; ++a) {
      out.r[e][a][0] = F.r[e][a][1];
      out.r[e][a][1].resize(n);
      out.r[e][a][2].resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        out.r[e][a][1][i] = -F.r[e][a][0][i];
        out.r[e][a][2][i] = -F.r[e][a][1][i];
      }
    }
  return out;
}

FourthGrid sum_fourth(const FourthGrid& x, const FourthGrid& y) {
  FourthGrid out;
  const std::size_t n = x.r[0][0][0].size();
  for (int e = 0; e < 2; ++e)
    for (int a = 0; a < 2; ++a)
      for (int s = 0; s < 3; ++s) {
        out.r[e][a][s].resize(n);
        for (std::size_t i = 0; i < n; ++i)
          out.r[e][a][s][i] = x.r[e][a][s][i] + y.r[e][a][s][i];
      }
  return out;
}

void require_resolved(const TracelessTensor& t, const SphereGrid& g,
                      const char* what) {
  if (t.band_limit() > g.band_limit())
    throw BandLimitError(std::string(what) + ": tensor band limit " +
                         std::to_string(t.band_limit()) +
                         " exceeds grid band limit " +
                         std::to_string(g.band_limit()));
}

}  // namespace

TracelessTensor::TracelessTensor(ScalarField electric, ScalarField magnetic,
                                 bool strict) {
  const int band =
      std::max({electric.band_limit(), magnetic.band_limit(), 2});
  HarmonicCoeffs e = electric.coeffs().resized(band);
  HarmonicCoeffs b = magnetic.coeffs().resized(band);
  removed_ = std::max(e.resized(1).sup_bound(), b.resized(1).sup_bound());
  if (strict && removed_ > 0.0)
    throw ShapeError(
        "shear potential carries degree <= 1 content (sup bound " +
        std::to_string(removed_) + "), which the potential map annihilates");
  e.zero_degrees(0, 1);
  b.zero_degrees(0, 1);
  electric_ = ScalarField(std::move(e));
  magnetic_ = ScalarField(std::move(b));
}

CovectorValues covector_values(const CovectorField& v, const SphereGrid& g) {
  const Vec gt = synthesize_partial(g, v.grad_potential().coeffs(), 1, 0);
  const Vec gp = synthesize_partial(g, v.grad_potential().coeffs(), 0, 1);
  const Vec ht = synthesize_partial(g, v.curl_potential().coeffs(), 1, 0);
  const Vec hp = synthesize_partial(g, v.curl_potential().coeffs(), 0, 1);
  const int np = g.n_phi();
  CovectorValues out;
  out.a1.resize(g.size());
  out.a2.resize(g.size());
  for (int j = 0; j < g.n_theta(); ++j) {
    const double inv_s = 1.0 / g.sin_theta(j);
    for (int k = 0; k < np; ++k) {
      const std::size_t i = static_cast<std::size_t>(j) * np + k;
      out.a1[i] = gt[i] + hp[i] * inv_s;
      out.a2[i] = gp[i] * inv_s - ht[i];
    }
  }
  return out;
}

TensorComponents tensor_components(const TracelessTensor& t,
                                   const SphereGrid& g) {
  require_resolved(t, g, "tensor_components");
  const ScalarJet jc = make_jet(g, t.electric().coeffs(), 2);
  const ScalarJet jb = make_jet(g, t.magnetic().coeffs(), 2);
  const HessGrid hc = frame_hess(g, jc);
  const HessGrid hb = frame_hess(g, jb);
  const std::size_t n = g.size();
  TensorComponents out;
  out.tt.resize(n);
  out.tp.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double fp = 0.5 * (hc.m11[i] - hc.m22[i]);
    const double fq = hc.m12[i];
    const double bp = hb.m12[i];
    const double bq = 0.5 * (hb.m22[i] - hb.m11[i]);
    out.tt[i] = fp + bp;
    out.tp[i] = fq + bq;
  }
  out.pt = out.tp;
  out.pp.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.pp[i] = -out.tt[i];
  return out;
}

CovectorField div_tensor(const TracelessTensor& t) {
  return CovectorField(0.5 * helmholtz_plus_two(t.electric()),
                       0.5 * helmholtz_plus_two(t.magnetic()));
}

ScalarField double_divergence(const TracelessTensor& t) {
  return 0.5 * laplacian(helmholtz_plus_two(t.electric()));
}

ScalarField contract(const TracelessTensor& a, const TracelessTensor& b,
                     const SphereGrid& g) {
  require_resolved(a, g, "contract");
  require_resolved(b, g, "contract");
  const TensorComponents ca = tensor_components(a, g);
  const TensorComponents cb = tensor_components(b, g);
  Vec vals(g.size());
  for (std::size_t i = 0; i < vals.size(); ++i)
    vals[i] = 2.0 * (ca.tt[i] * cb.tt[i] + ca.tp[i] * cb.tp[i]);
  return ScalarField(analyze(g, vals, a.band_limit() + b.band_limit()));
}

ShearFrame make_shear_frame(const TracelessTensor& t, const SphereGrid& g,
                            int order) {
  require_resolved(t, g, "make_shear_frame");
  order = std::clamp(order, 2, 4);

  ShearFrame sf;
  sf.grid = &g;
  sf.order = order;

  const ScalarJet jc = make_jet(g, t.electric().coeffs(), order);
  const ScalarJet jb = make_jet(g, t.magnetic().coeffs(), order);
  const HessGrid hc = frame_hess(g, jc);
  const HessGrid hb = frame_hess(g, jb);

  const std::size_t n = g.size();
  sf.FP.resize(n);
  sf.FQ = hc.m12;
  sf.BP = hb.m12;
  sf.BQ.resize(n);
  sf.P.resize(n);
  sf.Q.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    sf.FP[i] = 0.5 * (hc.m11[i] - hc.m22[i]);
    sf.BQ[i] = 0.5 * (hb.m22[i] - hb.m11[i]);
    sf.P[i] = sf.FP[i] + sf.BP[i];
    sf.Q[i] = sf.FQ[i] + sf.BQ[i];
  }

  // Divergences from the closed forms through the potentials.
  const HarmonicCoeffs he = helmholtz_plus_two(t.electric()).coeffs();
  const HarmonicCoeffs hm = helmholtz_plus_two(t.magnetic()).coeffs();
  const Vec he10 = synthesize_partial(g, he, 1, 0);
  const Vec he01 = synthesize_partial(g, he, 0, 1);
  const Vec hm10 = synthesize_partial(g, hm, 1, 0);
  const Vec hm01 = synthesize_partial(g, hm, 0, 1);
  sf.divF.a1.resize(n);
  sf.divF.a2.resize(n);
  sf.divB.a1.resize(n);
  sf.divB.a2.resize(n);
  sf.divC.a1.resize(n);
  sf.divC.a2.resize(n);
  const int np = g.n_phi();
  for (int j = 0; j < g.n_theta(); ++j) {
    const double inv_s = 1.0 / g.sin_theta(j);
    for (int k = 0; k < np; ++k) {
      const std::size_t i = static_cast<std::size_t>(j) * np + k;
      sf.divF.a1[i] = 0.5 * he10[i];
      sf.divF.a2[i] = 0.5 * he01[i] * inv_s;
      sf.divB.a1[i] = 0.5 * hm01[i] * inv_s;
      sf.divB.a2[i] = -0.5 * hm10[i];
      sf.divC.a1[i] = sf.divF.a1[i] + sf.divB.a1[i];
      sf.divC.a2[i] = sf.divF.a2[i] + sf.divB.a2[i];
    }
  }

  sf.ddC = synthesize(g, (0.5 * laplacian(ScalarField(he))).coeffs());

  sf.CdotC.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    sf.CdotC[i] = 2.0 * (sf.P[i] * sf.P[i] + sf.Q[i] * sf.Q[i]);
  sf.CdotC_coeffs = analyze(g, sf.CdotC, 2 * t.band_limit());

  if (order >= 3) {
    const ThirdGrid tc = frame_third(g, jc);
    const ThirdGrid tb = frame_third(g, jb);
    sf.gradC = sum_third(traceless_part(tc), rotate_pair(traceless_part(tb)));
  }
  if (order >= 4) {
    const FourthGrid rc = frame_fourth(g, jc);
    const FourthGrid rb = frame_fourth(g, jb);
    sf.hessC =
        sum_fourth(traceless_part4(rc), rotate_pair4(traceless_part4(rb)));
  }
  return sf;
}

ShearDecomposition decompose_shear(const TensorComponents& comp,
                                   const SphereGrid& g, double tol) {
  const std::size_t n = g.size();
  if (comp.tt.size() != n || comp.tp.size() != n || comp.pt.size() != n ||
      comp.pp.size() != n)
    throw ShapeError("component arrays do not match the grid size");
  for (const Vec* v : {&comp.tt, &comp.tp, &comp.pt, &comp.pp})
    if (!all_finite(*v)) throw ShapeError("non-finite component value");
  if (tol < 0.0) tol = 1e-8;

  const double scale =
      1.0 + std::max({sup_abs(comp.tt), sup_abs(comp.tp), sup_abs(comp.pt),
                      sup_abs(comp.pp)});
  double sym = 0.0, trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sym = std::max(sym, std::abs(comp.tp[i] - comp.pt[i]));
    trace = std::max(trace, std::abs(comp.tt[i] + comp.pp[i]));
  }
  if (sym > tol * scale)
    throw ShapeError("components are not symmetric: sup |tp - pt| = " +
                     std::to_string(sym));
  if (trace > tol * scale)
    throw ShapeError("components are not trace-free: sup |tt + pp| = " +
                     std::to_string(trace));

  Vec P(n), Q(n);
  for (std::size_t i = 0; i < n; ++i) {
    P[i] = 0.5 * (comp.tt[i] - comp.pp[i]);
    Q[i] = 0.5 * (comp.tp[i] + comp.pt[i]);
  }

  // Longitudinal Fourier sums per latitude row.
  const int band = g.band_limit();
  const int nt = g.n_theta();
  const int nphi = g.n_phi();
  const auto cosT = g.cos_mphi();
  const auto sinT = g.sin_mphi();
  const std::size_t rows = static_cast<std::size_t>(band + 1) * nt;
  Vec Cp(rows, 0.0), Sp(rows, 0.0), Cq(rows, 0.0), Sq(rows, 0.0);
  for (int m = 0; m <= band; ++m)
    for (int j = 0; j < nt; ++j) {
      double cp = 0.0, sp = 0.0, cq = 0.0, sq = 0.0;
      const std::size_t base = static_cast<std::size_t>(j) * nphi;
      const std::size_t mb = static_cast<std::size_t>(m) * nphi;
      for (int k = 0; k < nphi; ++k) {
        const double c = cosT[mb + k], s = sinT[mb + k];
        cp += P[base + k] * c;
        sp += P[base + k] * s;
        cq += Q[base + k] * c;
        sq += Q[base + k] * s;
      }
      const std::size_t r = static_cast<std::size_t>(m) * nt + j;
      Cp[r] = cp;
      Sp[r] = sp;
      Cq[r] = cq;
      Sq[r] = sq;
    }

  // Pair the components against the tensor-harmonic image of each basis
  // function.  For a basis scalar N(theta) * trig(m phi) the image has
  // orthonormal components (N'' + lam/2 N) * trig and
  // (N' - cot N)/sin * trig', so each (l, mu) reduces to a latitude sum over
  // the precomputed Legendre tables; division by the squared norm
  // lam(lam - 2)/2 of the image inverts the potential map degree by degree.
  const auto p0 = g.legendre(0);
  const auto p1 = g.legendre(1);
  const auto p2 = g.legendre(2);
  const int npairs = g.n_pairs();
  const double wphi = g.phi_weight();
  const double root2 = std::sqrt(2.0);
  HarmonicCoeffs ec(band), bc(band);
  for (int l = 2; l <= band; ++l) {
    const double lam = static_cast<double>(l) * (l + 1);
    const double kappa = 0.5 * lam * (lam - 2.0);
    for (int m = 0; m <= l; ++m) {
      const int pidx = g.pair_index(l, m);
      double acc_cp = 0.0, acc_cm = 0.0, acc_bp = 0.0, acc_bm = 0.0;
      for (int j = 0; j < nt; ++j) {
        const std::size_t ti = static_cast<std::size_t>(j) * npairs + pidx;
        const double pb = p0[ti];
        const double b1 = p2[ti] + 0.5 * lam * pb;
        const double gg =
            (p1[ti] - (g.cos_theta(j) / g.sin_theta(j)) * pb) / g.sin_theta(j);
        const double w = g.weight(j);
        const std::size_t r = static_cast<std::size_t>(m) * nt + j;
        if (m == 0) {
          acc_cp += w * 2.0 * b1 * Cp[r];
          acc_bp += w * (-2.0) * b1 * Cq[r];
        } else {
          acc_cp += w * (2.0 * b1 * Cp[r] - 2.0 * m * gg * Sq[r]);
          acc_cm += w * (2.0 * b1 * Sp[r] + 2.0 * m * gg * Cq[r]);
          acc_bp += w * (-2.0 * m * gg * Sp[r] - 2.0 * b1 * Cq[r]);
          acc_bm += w * (2.0 * m * gg * Cp[r] - 2.0 * b1 * Sq[r]);
        }
      }
      if (m == 0) {
        ec.at(l, 0) = wphi * acc_cp / kappa;
        bc.at(l, 0) = wphi * acc_bp / kappa;
      } else {
        ec.at(l, m) = root2 * wphi * acc_cp / kappa;
        ec.at(l, -m) = root2 * wphi * acc_cm / kappa;
        bc.at(l, m) = root2 * wphi * acc_bp / kappa;
        bc.at(l, -m) = root2 * wphi * acc_bm / kappa;
      }
    }
  }

  ShearDecomposition out;
  out.tensor = TracelessTensor(ScalarField(std::move(ec)),
                               ScalarField(std::move(bc)));
  const TensorComponents back = tensor_components(out.tensor, g);
  double resid = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    resid = std::max(resid, std::abs(comp.tt[i] - back.tt[i]));
    resid = std::max(resid, std::abs(comp.tp[i] - back.tp[i]));
    resid = std::max(resid, std::abs(comp.pt[i] - back.pt[i]));
    resid = std::max(resid, std::abs(comp.pp[i] - back.pp[i]));
  }
  out.residual = resid / scale;
  return out;
}

ScalarField r2_scalar(const TracelessTensor& t, const SphereGrid& g) {
  const ShearFrame sf = make_shear_frame(t, g, 4);
  const Vec lapCC = synthesize(g, laplacian(ScalarField(sf.CdotC_coeffs)).coeffs());
  const std::size_t n = g.size();

  const auto cval = [&sf](int a, int b, std::size_t i) {
    if (a == 1 && b == 1) return sf.P[i];
    if (a == 2 && b == 2) return -sf.P[i];
    return sf.Q[i];
  };

  Vec total(n);
  for (std::size_t i = 0; i < n; ++i) {
    double t2 = 0.0, sq = 0.0, div2 = 0.0;
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b)
        for (int d = 1; d <= 2; ++d) {
          const double gabd = sf.gradC.at(a, b, d)[i];
          t2 += gabd * sf.gradC.at(b, a, d)[i];
          sq += gabd * gabd;
          div2 += gabd * sf.gradC.at(b, d, a)[i] +
                  cval(b, d, i) * sf.hessC.at(a, b, d, a)[i];
        }
    const double w1 = sf.divC.a1[i], w2 = sf.divC.a2[i];
    double div1 = w1 * w1 + w2 * w2;
    for (int a = 1; a <= 2; ++a)
      for (int b = 1; b <= 2; ++b) {
        double gw = 0.0;  // (grad divC)_{ab}
        for (int d = 1; d <= 2; ++d) gw += sf.hessC.at(a, d, b, d)[i];
        div1 += cval(a, b, i) * gw;
      }
    total[i] = 0.5 * sf.CdotC[i] + 0.5 * t2 + 0.25 * lapCC[i] - div1 - div2 -
               0.25 * sq;
  }
  return ScalarField(analyze(g, total, 2 * t.band_limit()));
}

InterchangeResiduals interchange_residuals(const TracelessTensor& t,
                                           const SphereGrid& g) {
  const ShearFrame sf = make_shear_frame(t, g, 4);
  const ScalarJet jc = make_jet(g, t.electric().coeffs(), 3);
  const ScalarJet jb = make_jet(g, t.magnetic().coeffs(), 3);
  const ThirdGrid tc = frame_third(g, jc);
  const ThirdGrid tb = frame_third(g, jb);
  const ThirdGrid gF = traceless_part(tc);
  const ThirdGrid gB = rotate_pair(traceless_part(tb));
  const GradGrid db = frame_grad(g, jb);

  const HarmonicCoeffs he = helmholtz_plus_two(t.electric()).coeffs();
  const HarmonicCoeffs hm = helmholtz_plus_two(t.magnetic()).coeffs();
  const Vec he10 = synthesize_partial(g, he, 1, 0);
  const Vec he01 = synthesize_partial(g, he, 0, 1);
  const Vec hm10 = synthesize_partial(g, hm, 1, 0);
  const Vec hm01 = synthesize_partial(g, hm, 0, 1);

  const std::size_t n = g.size();
  const int nphi = g.n_phi();
  const auto cval = [&sf](int a, int b, std::size_t i) {
    if (a == 1 && b == 1) return sf.P[i];
    if (a == 2 && b == 2) return -sf.P[i];
    return sf.Q[i];
  };

  InterchangeResiduals out;
  double first_deriv_sup = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int s = 0; s < 3; ++s)
      first_deriv_sup = std::max(first_deriv_sup, sup_abs(sf.gradC.t[a][s]));
  out.scale =
      1.0 + std::max({sup_abs(sf.P), sup_abs(sf.Q), first_deriv_sup});

  for (std::size_t i = 0; i < n; ++i) {
    const int j = static_cast<int>(i) / nphi;
    const double inv_s = 1.0 / g.sin_theta(j);
    // Frame gradients of the degree-shifted potentials.
    const double ghc1 = he10[i], ghc2 = he01[i] * inv_s;
    const double ghb1 = hm10[i], ghb2 = hm01[i] * inv_s;
    // Rough Laplacian of grad cbar: trace of the third derivative over the
    // two outer slots.
    const double rl1 = tb.at(1, 1, 1)[i] + tb.at(2, 2, 1)[i];
    const double rl2 = tb.at(1, 1, 2)[i] + tb.at(2, 2, 2)[i];
    const double rl[3] = {0.0, rl1, rl2};
    const double gcb[3] = {0.0, db.a1[i], db.a2[i]};
    const double dF[3] = {0.0, sf.divF.a1[i], sf.divF.a2[i]};

    for (int A = 1; A <= 2; ++A)
      for (int B = 1; B <= 2; ++B)
        for (int D = 1; D <= 2; ++D) {
          const double lhs1 = gF.at(A, B, D)[i] - gF.at(B, A, D)[i];
          const double rhs1 = (A == D ? dF[B] : 0.0) - (B == D ? dF[A] : 0.0);
          out.one = std::max(out.one, std::abs(lhs1 - rhs1));

          const double lhs2 = gB.at(A, B, D)[i] - gB.at(B, A, D)[i];
          const double rhs2 = -0.5 * eps_frame(A, B) * rl[D] +
                              0.5 * eps_frame(D, A) * gcb[B] -
                              0.5 * eps_frame(D, B) * gcb[A];
          out.two = std::max(out.two, std::abs(lhs2 - rhs2));
        }

    for (int A = 1; A <= 2; ++A)
      for (int B = A; B <= 2; ++B) {
        double lhs3 = 0.0;
        for (int D = 1; D <= 2; ++D)
          lhs3 += sf.hessC.at(D, A, B, D)[i] + sf.hessC.at(D, B, A, D)[i];
        for (int E = 1; E <= 2; ++E) lhs3 -= sf.hessC.at(E, E, A, B)[i];
        const double rhs3 =
            (A == B ? sf.ddC[i] : 0.0) + 2.0 * cval(A, B, i);
        out.three = std::max(out.three, std::abs(lhs3 - rhs3));
      }

    for (int D = 1; D <= 2; ++D) {
      const double curlF = gF.at(1, 2, D)[i] - gF.at(2, 1, D)[i];
      const double rhs4 = 0.5 * (D == 1 ? ghc2 : -ghc1);
      out.four = std::max(out.four, std::abs(curlF - rhs4));

      const double curlB = gB.at(1, 2, D)[i] - gB.at(2, 1, D)[i];
      const double rhs5 = -0.5 * (D == 1 ? ghb1 : ghb2);
      out.five = std::max(out.five, std::abs(curlB - rhs5));

      const double curlC = sf.gradC.at(1, 2, D)[i] - sf.gradC.at(2, 1, D)[i];
      const double rhs6 = (D == 1 ? sf.divC.a2[i] : -sf.divC.a1[i]);
      out.combined = std::max(out.combined, std::abs(curlC - rhs6));
    }
  }
  return out;
}

}  // namespace cwy
