#include "cwy/frame.hpp"

#include <cmath>

#include "cwy/errors.hpp"

// Frame-component formulas below are the hand-expanded covariant derivative
// recursion
//   (grad T)_{a0 a1..ak} = e_{a0}(T_{a1..ak})
//                          - cot * [a0 = 2] * sum_j (index swaps on slot j)
// written out in coordinate partials f_pq = d^p_theta d^q_phi f.  They are
// validated by the Ricci-commutation and interchange-identity test suites and
// by finite-difference oracles away from the poles.

namespace cwy {

ScalarJet make_jet(const SphereGrid& g, const HarmonicCoeffs& c, int order) {
  if (order < 0 || order > 4) throw ShapeError("make_jet: order must be in [0,4]");
  ScalarJet j;
  j.order = order;
  j.n = g.size();
  for (int p = 0; p <= order; ++p)
    for (int q = 0; p + q <= order; ++q) j.d[p][q] = synthesize_partial(g, c, p, q);
  return j;
}

namespace {

struct Trig {
  double s, c, t, is, is2, is3, is4;  // sin, cos, cot, 1/sin powers
};

inline Trig trig_row(const SphereGrid& g, int jrow) {
  Trig t{};
  t.s = g.sin_theta(jrow);
  t.c = g.cos_theta(jrow);
  t.t = t.c / t.s;
  t.is = 1.0 / t.s;
  t.is2 = t.is * t.is;
  t.is3 = t.is2 * t.is;
  t.is4 = t.is2 * t.is2;
  return t;
}

template <class F>
void per_node(const SphereGrid& g, std::size_t n, F&& f) {
  const int np = g.n_phi();
  for (int j = 0; j < g.n_theta(); ++j) {
    const Trig tr = trig_row(g, j);
    const std::size_t base = static_cast<std::size_t>(j) * np;
    for (int k = 0; k < np; ++k) f(tr, base + k);
  }
  (void)n;
}

}  // namespace

GradGrid frame_grad(const SphereGrid& g, const ScalarJet& j) {
  GradGrid out;
  out.a1 = j.at(1, 0);
  out.a2.assign(j.n, 0.0);
  const Vec& f01 = j.at(0, 1);
  per_node(g, j.n, [&](const Trig& tr, std::size_t i) { out.a2[i] = f01[i] * tr.is; });
  return out;
}

HessGrid frame_hess(const SphereGrid& g, const ScalarJet& j) {
  HessGrid out;
  out.m11 = j.at(2, 0);
  out.m12.assign(j.n, 0.0);
  out.m22.assign(j.n, 0.0);
  const Vec& f10 = j.at(1, 0);
  const Vec& f01 = j.at(0, 1);
  const Vec& f11 = j.at(1, 1);
  const Vec& f02 = j.at(0, 2);
  per_node(g, j.n, [&](const Trig& tr, std::size_t i) {
    out.m12[i] = f11[i] * tr.is - f01[i] * tr.c * tr.is2;
    out.m22[i] = f02[i] * tr.is2 + f10[i] * tr.t;
  });
  return out;
}

ThirdGrid frame_third(const SphereGrid& g, const ScalarJet& j) {
  ThirdGrid out;
  for (auto& row : out.t)
    for (auto& v : row) v.assign(j.n, 0.0);
  const Vec& f10 = j.at(1, 0);
  const Vec& f01 = j.at(0, 1);
  const Vec& f20 = j.at(2, 0);
  const Vec& f11 = j.at(1, 1);
  const Vec& f02 = j.at(0, 2);
  const Vec& f30 = j.at(3, 0);
  const Vec& f21 = j.at(2, 1);
  const Vec& f12 = j.at(1, 2);
  const Vec& f03 = j.at(0, 3);
  per_node(g, j.n, [&](const Trig& tr, std::size_t i) {
    const double c = tr.c, t = tr.t;
    const double is = tr.is, is2 = tr.is2, is3 = tr.is3;
    // T_1bc = d_theta H_bc
    out.t[0][0][i] = f30[i];
    out.t[0][1][i] = f21[i] * is - 2.0 * c * f11[i] * is2 + (1.0 + c * c) * f01[i] * is3;
    out.t[0][2][i] = f12[i] * is2 - 2.0 * c * f02[i] * is3 + t * f20[i] - f10[i] * is2;
    // T_2bc = e_2(H_bc) + cot corrections
    out.t[1][0][i] = f21[i] * is - 2.0 * c * f11[i] * is2 + 2.0 * c * c * f01[i] * is3;
    out.t[1][1][i] = f12[i] * is2 - 2.0 * c * f02[i] * is3 + t * f20[i] - c * c * f10[i] * is2;
    out.t[1][2][i] = f03[i] * is3 + 3.0 * c * f11[i] * is2 - 2.0 * c * c * f01[i] * is3;
  });
  return out;
}

FourthGrid frame_fourth(const SphereGrid& g, const ScalarJet& j) {
  FourthGrid out;
  for (auto& e : out.r)
    for (auto& a : e)
      for (auto& v : a) v.assign(j.n, 0.0);
  const Vec& f10 = j.at(1, 0);
  const Vec& f01 = j.at(0, 1);
  const Vec& f20 = j.at(2, 0);
  const Vec& f11 = j.at(1, 1);
  const Vec& f02 = j.at(0, 2);
  const Vec& f30 = j.at(3, 0);
  const Vec& f21 = j.at(2, 1);
  const Vec& f12 = j.at(1, 2);
  const Vec& f03 = j.at(0, 3);
  const Vec& f40 = j.at(4, 0);
  const Vec& f31 = j.at(3, 1);
  const Vec& f22 = j.at(2, 2);
  const Vec& f13 = j.at(1, 3);
  const Vec& f04 = j.at(0, 4);
  per_node(g, j.n, [&](const Trig& tr, std::size_t i) {
    const double c = tr.c, t = tr.t;
    const double is = tr.is, is2 = tr.is2, is3 = tr.is3, is4 = tr.is4;
    const double c2 = c * c;

    // third-derivative values reused by the correction terms
    const double T111 = f30[i];
    const double T112 = f21[i] * is - 2.0 * c * f11[i] * is2 + (1.0 + c2) * f01[i] * is3;
    const double T122 = f12[i] * is2 - 2.0 * c * f02[i] * is3 + t * f20[i] - f10[i] * is2;
    const double T211 = f21[i] * is - 2.0 * c * f11[i] * is2 + 2.0 * c2 * f01[i] * is3;
    const double T212 = f12[i] * is2 - 2.0 * c * f02[i] * is3 + t * f20[i] - c2 * f10[i] * is2;
    const double T222 = f03[i] * is3 + 3.0 * c * f11[i] * is2 - 2.0 * c2 * f01[i] * is3;

    // R_1abc = d_theta T_abc (no corrections: the frame is parallel along e1)
    out.r[0][0][0][i] = f40[i];
    out.r[0][0][1][i] = f31[i] * is - 3.0 * c * f21[i] * is2 +
                        3.0 * (1.0 + c2) * f11[i] * is3 - c * (5.0 + c2) * f01[i] * is4;
    out.r[0][0][2][i] = f22[i] * is2 - 4.0 * c * f12[i] * is3 +
                        2.0 * (1.0 + 2.0 * c2) * f02[i] * is4 + c * f30[i] * is -
                        2.0 * f20[i] * is2 + 2.0 * c * f10[i] * is3;
    out.r[0][1][0][i] = f31[i] * is - 3.0 * c * f21[i] * is2 +
                        2.0 * (1.0 + 2.0 * c2) * f11[i] * is3 -
                        2.0 * c * (2.0 + c2) * f01[i] * is4;
    out.r[0][1][1][i] = f22[i] * is2 - 4.0 * c * f12[i] * is3 +
                        2.0 * (1.0 + 2.0 * c2) * f02[i] * is4 + c * f30[i] * is -
                        (1.0 + c2) * f20[i] * is2 + 2.0 * c * f10[i] * is3;
    out.r[0][1][2][i] = f13[i] * is3 - 3.0 * c * f03[i] * is4 + 3.0 * c * f21[i] * is2 -
                        (3.0 + 5.0 * c2) * f11[i] * is3 + 2.0 * c * (2.0 + c2) * f01[i] * is4;

    // R_2abc = e_2(T_abc) + cot corrections on all three lower slots
    const double e2T111 = f31[i] * is;
    const double e2T112 = f22[i] * is2 - 2.0 * c * f12[i] * is3 + (1.0 + c2) * f02[i] * is4;
    const double e2T122 = f13[i] * is3 - 2.0 * c * f03[i] * is4 + c * f21[i] * is2 - f11[i] * is3;
    const double e2T211 = f22[i] * is2 - 2.0 * c * f12[i] * is3 + 2.0 * c2 * f02[i] * is4;
    const double e2T212 = f13[i] * is3 - 2.0 * c * f03[i] * is4 + c * f21[i] * is2 - c2 * f11[i] * is3;
    const double e2T222 = f04[i] * is4 + 3.0 * c * f12[i] * is3 - 2.0 * c2 * f02[i] * is4;

    out.r[1][0][0][i] = e2T111 - t * (T211 + 2.0 * T112);
    out.r[1][0][1][i] = e2T112 - t * T212 - t * T122 + t * T111;
    out.r[1][0][2][i] = e2T122 - t * T222 + 2.0 * t * T112;
    out.r[1][1][0][i] = e2T211 + t * T111 - 2.0 * t * T212;
    out.r[1][1][1][i] = e2T212 + t * T112 - t * T222 + t * T211;
    out.r[1][1][2][i] = e2T222 + t * T122 + 2.0 * t * T212;
  });
  return out;
}

FrameField make_frame_field(const SphereGrid& g, const HarmonicCoeffs& c, int order) {
  FrameField f;
  f.order = order;
  ScalarJet j = make_jet(g, c, order);
  f.values = j.at(0, 0);
  if (order >= 1) f.grad = frame_grad(g, j);
  if (order >= 2) f.hess = frame_hess(g, j);
  if (order >= 3) f.third = frame_third(g, j);
  if (order >= 4) f.fourth = frame_fourth(g, j);
  return f;
}

}  // namespace cwy
