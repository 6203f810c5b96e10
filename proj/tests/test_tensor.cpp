#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cwy/errors.hpp"
#include "cwy/tensor.hpp"
#include "helpers.hpp"

using namespace cwy;

namespace {

ScalarField harmonic(int band, int l, int mu) {
  HarmonicCoeffs c(band);
  c.at(l, mu) = 1.0;
  return ScalarField(std::move(c));
}

TracelessTensor random_shear(int band, std::uint64_t seed) {
  return TracelessTensor(ScalarField(testutil::random_coeffs(band, seed, 2)),
                         ScalarField(testutil::random_coeffs(band, seed + 1, 2)));
}

}  // namespace

TEST_CASE("tensor components match finite-difference hessians") {
  const SphereGrid g(6);
  const TracelessTensor t = random_shear(6, 31);
  const TensorComponents comp = tensor_components(t, g);
  const HarmonicCoeffs& ce = t.electric().coeffs();
  const HarmonicCoeffs& cb = t.magnetic().coeffs();
  for (int j = 3; j < g.n_theta() - 3; j += 3) {
    for (int k = 1; k < g.n_phi(); k += 7) {
      const std::size_t i = static_cast<std::size_t>(j) * g.n_phi() + k;
      const testutil::FdHessian hc = testutil::fd_hessian(ce, g.theta(j), g.phi(k));
      const testutil::FdHessian hb = testutil::fd_hessian(cb, g.theta(j), g.phi(k));
      const double p = 0.5 * (hc.h11 - hc.h22) + hb.h12;
      const double q = hc.h12 + 0.5 * (hb.h22 - hb.h11);
      CHECK(std::abs(comp.tt[i] - p) < 1e-5);
      CHECK(std::abs(comp.tp[i] - q) < 1e-5);
      CHECK(comp.pt[i] == comp.tp[i]);
      CHECK(comp.pp[i] == -comp.tt[i]);
    }
  }
}

TEST_CASE("divergence and covariant gradient match nested finite differences") {
  const SphereGrid g(6);
  const TracelessTensor t = random_shear(6, 33);
  const CovectorValues dv = covector_values(div_tensor(t), g);
  const ShearFrame sf = make_shear_frame(t, g, 3);
  const HarmonicCoeffs& ce = t.electric().coeffs();
  const HarmonicCoeffs& cb = t.magnetic().coeffs();

  auto pq_at = [&](double th, double ph, double* p, double* q) {
    const testutil::FdHessian hc = testutil::fd_hessian(ce, th, ph);
    const testutil::FdHessian hb = testutil::fd_hessian(cb, th, ph);
    *p = 0.5 * (hc.h11 - hc.h22) + hb.h12;
    *q = hc.h12 + 0.5 * (hb.h22 - hb.h11);
  };

  const double H = 1e-3;
  for (int j = 4; j < g.n_theta() - 4; j += 4) {
    for (int k = 3; k < g.n_phi(); k += 11) {
      const std::size_t i = static_cast<std::size_t>(j) * g.n_phi() + k;
      const double th = g.theta(j), ph = g.phi(k);
      const double s = std::sin(th), ct = std::cos(th);
      double p0, q0, pt, qt, pb, qb, pp, qp, pm, qm;
      pq_at(th, ph, &p0, &q0);
      pq_at(th + H, ph, &pt, &qt);
      pq_at(th - H, ph, &pb, &qb);
      pq_at(th, ph + H, &pp, &qp);
      pq_at(th, ph - H, &pm, &qm);
      const double dthp = (pt - pb) / (2.0 * H), dthq = (qt - qb) / (2.0 * H);
      const double dphp = (pp - pm) / (2.0 * H), dphq = (qp - qm) / (2.0 * H);

      CHECK(std::abs(dv.a1[i] - (dthp + dphq / s + 2.0 * ct / s * p0)) < 2e-4);
      CHECK(std::abs(dv.a2[i] - (dthq - dphp / s + 2.0 * ct / s * q0)) < 2e-4);

      // Covariant derivative slots of the component arrays.
      CHECK(std::abs(sf.gradC.at(1, 1, 1)[i] - dthp) < 2e-4);
      CHECK(std::abs(sf.gradC.at(1, 1, 2)[i] - dthq) < 2e-4);
      CHECK(std::abs(sf.gradC.at(2, 1, 1)[i] -
                     (dphp / s - 2.0 * ct / s * q0)) < 2e-4);
      CHECK(std::abs(sf.gradC.at(2, 1, 2)[i] -
                     (dphq / s + 2.0 * ct / s * p0)) < 2e-4);
      CHECK(std::abs(sf.gradC.at(2, 2, 2)[i] -
                     (-dphp / s + 2.0 * ct / s * q0)) < 2e-4);
    }
  }
}

TEST_CASE("potentials are recovered from component arrays") {
  const SphereGrid g(10);
  const TracelessTensor t = random_shear(10, 35);
  const ShearDecomposition dec = decompose_shear(tensor_components(t, g), g);
  CHECK(dec.residual < 1e-11);
  double worst = 0.0;
  for (int l = 2; l <= 10; ++l) {
    for (int mu = -l; mu <= l; ++mu) {
      worst = std::max(worst, std::abs(dec.tensor.electric().coeffs().at(l, mu) -
                                       t.electric().coeffs().at(l, mu)));
      worst = std::max(worst, std::abs(dec.tensor.magnetic().coeffs().at(l, mu) -
                                       t.magnetic().coeffs().at(l, mu)));
    }
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("component validation rejects malformed input") {
  const SphereGrid g(6);
  const TracelessTensor t = random_shear(6, 37);
  const TensorComponents good = tensor_components(t, g);

  TensorComponents asym = good;
  asym.pt[5] += 1e-3;
  CHECK_THROWS_AS(decompose_shear(asym, g), ShapeError);

  TensorComponents traced = good;
  traced.pp[17] += 1e-3;
  CHECK_THROWS_AS(decompose_shear(traced, g), ShapeError);

  TensorComponents inf = good;
  inf.tt[0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(decompose_shear(inf, g), ShapeError);

  TensorComponents wrong = good;
  wrong.tp.pop_back();
  CHECK_THROWS_AS(decompose_shear(wrong, g), ShapeError);
}

TEST_CASE("low-degree potential content is kernel and gets projected") {
  HarmonicCoeffs c = testutil::random_coeffs(5, 39, 2);
  HarmonicCoeffs dirty = c;
  dirty.at(0, 0) = 0.7;
  dirty.at(1, -1) = -0.4;
  const TracelessTensor clean(ScalarField(c), ScalarField(HarmonicCoeffs(5)));
  const TracelessTensor proj(ScalarField(dirty), ScalarField(HarmonicCoeffs(5)));
  CHECK(proj.removed_low_degrees() > 0.3);
  CHECK(clean.removed_low_degrees() == 0.0);
  CHECK_THROWS_AS(TracelessTensor(ScalarField(dirty),
                                  ScalarField(HarmonicCoeffs(5)), true),
                  ShapeError);

  const SphereGrid g(5);
  const TensorComponents a = tensor_components(clean, g);
  const TensorComponents b = tensor_components(proj, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(a.tt[i] - b.tt[i]) < 1e-13);
    CHECK(std::abs(a.tp[i] - b.tp[i]) < 1e-13);
  }
}

TEST_CASE("tensor harmonics carry the closed-form norm") {
  // The traceless-hessian image of a unit harmonic has squared L2 norm
  // lam(lam-2)/2 with lam = l(l+1), for either parity.
  const SphereGrid g(8);
  const int cases[][2] = {{2, 0}, {2, 2}, {3, 1}, {5, -4}, {7, 6}};
  for (const auto& lm : cases) {
    const double lam = static_cast<double>(lm[0] * (lm[0] + 1));
    const double want = 0.5 * lam * (lam - 2.0);
    const TracelessTensor te(harmonic(8, lm[0], lm[1]),
                             ScalarField(HarmonicCoeffs(8)));
    const TracelessTensor tb(ScalarField(HarmonicCoeffs(8)),
                             harmonic(8, lm[0], lm[1]));
    CHECK(std::abs(integrate(contract(te, te, g)) - want) < 1e-10 * want);
    CHECK(std::abs(integrate(contract(tb, tb, g)) - want) < 1e-10 * want);
    // Opposite parities are L2-orthogonal.
    CHECK(std::abs(integrate(contract(te, tb, g))) < 1e-11);
  }
  const TracelessTensor te(harmonic(8, 3, 1), ScalarField(HarmonicCoeffs(8)));
  const TracelessTensor tb(ScalarField(HarmonicCoeffs(8)), harmonic(8, 4, -2));
  CHECK(std::abs(integrate(contract(te, tb, g))) < 1e-11);
}

TEST_CASE("double divergence is diagonal on electric harmonics") {
  const TracelessTensor te(harmonic(7, 4, 2), ScalarField(HarmonicCoeffs(7)));
  const HarmonicCoeffs dd = double_divergence(te).coeffs();
  const double lam = 20.0;
  for (int l = 0; l <= dd.band_limit(); ++l)
    for (int mu = -l; mu <= l; ++mu) {
      const double want = (l == 4 && mu == 2) ? 0.5 * lam * (lam - 2.0) : 0.0;
      CHECK(std::abs(dd.at(l, mu) - want) < 1e-12);
    }

  const TracelessTensor tb(ScalarField(HarmonicCoeffs(7)), harmonic(7, 4, 2));
  CHECK(double_divergence(tb).coeffs().sup_bound() < 1e-13);
}

TEST_CASE("interchange residuals vanish to rounding on random shear") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const TracelessTensor t = random_shear(12, 100 + seed);
    const SphereGrid g(12);
    const InterchangeResiduals r = interchange_residuals(t, g);
    CHECK(r.one < 1e-9 * r.scale);
    CHECK(r.two < 1e-9 * r.scale);
    CHECK(r.three < 1e-9 * r.scale);
    CHECK(r.four < 1e-9 * r.scale);
    CHECK(r.five < 1e-9 * r.scale);
    CHECK(r.combined < 1e-9 * r.scale);
  }

  const SphereGrid g(4);
  const InterchangeResiduals z = interchange_residuals(TracelessTensor(), g);
  CHECK(z.one == 0.0);
  CHECK(z.combined == 0.0);

  CHECK_THROWS_AS(interchange_residuals(random_shear(12, 50), SphereGrid(4)),
                  BandLimitError);
  CHECK_THROWS_AS(r2_scalar(random_shear(12, 51), SphereGrid(4)),
                  BandLimitError);
}

TEST_CASE("shear frame caches are mutually consistent") {
  const SphereGrid g(9);
  const TracelessTensor t = random_shear(9, 41);
  const ShearFrame sf = make_shear_frame(t, g, 1);
  const Vec ddv = synthesize(g, double_divergence(t).coeffs());
  const TensorComponents comp = tensor_components(t, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(std::abs(sf.P[i] - (sf.FP[i] + sf.BP[i])) < 1e-13);
    CHECK(std::abs(sf.Q[i] - (sf.FQ[i] + sf.BQ[i])) < 1e-13);
    CHECK(std::abs(sf.P[i] - comp.tt[i]) < 1e-13);
    CHECK(std::abs(sf.divC.a1[i] - sf.divF.a1[i] - sf.divB.a1[i]) < 1e-12);
    CHECK(std::abs(sf.divC.a2[i] - sf.divF.a2[i] - sf.divB.a2[i]) < 1e-12);
    CHECK(std::abs(sf.CdotC[i] -
                   2.0 * (sf.P[i] * sf.P[i] + sf.Q[i] * sf.Q[i])) < 1e-12);
    CHECK(std::abs(sf.ddC[i] - ddv[i]) < 1e-11);
  }
}
