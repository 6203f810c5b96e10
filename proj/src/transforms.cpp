#include <cmath>
#include <cstring>

#include "cwy/errors.hpp"
#include "cwy/field.hpp"

namespace cwy {

namespace {
constexpr double kSqrt2 = 1.4142135623730950488;

void check_band(const SphereGrid& g, int band, const char* where) {
  if (band > g.table_degree())
    throw BandLimitError(std::string(where) + ": band limit exceeds grid resolution");
}
}  // namespace

Vec synthesize_partial(const SphereGrid& g, const HarmonicCoeffs& c,
                       int dtheta, int dphi) {
  check_band(g, c.band_limit(), "synthesize");
  if (dtheta < 0 || dtheta > 4 || dphi < 0)
    throw ShapeError("synthesize_partial: unsupported derivative order");
  // Default-constructed coefficients (band -1) are the zero field.
  if (c.band_limit() < 0) return Vec(g.size(), 0.0);

  const HarmonicCoeffs* cc = &c;
  HarmonicCoeffs tmp;
  for (int q = 0; q < dphi; ++q) {
    tmp = phi_derivative(*cc);
    cc = &tmp;
  }

  const int L = cc->band_limit();
  const int nt = g.n_theta(), np = g.n_phi(), npairs = g.n_pairs();
  const auto plm = g.legendre(dtheta);
  const auto cosm = g.cos_mphi();
  const auto sinm = g.sin_mphi();

  Vec out(g.size(), 0.0);
  // Legendre stage: A_{jm} (cos part), B_{jm} (sin part), sqrt(2) folded in.
  Vec A(static_cast<std::size_t>(nt) * (L + 1), 0.0);
  Vec B(static_cast<std::size_t>(nt) * (L + 1), 0.0);
  for (int j = 0; j < nt; ++j) {
    const double* tab = plm.data() + static_cast<std::size_t>(j) * npairs;
    double* Aj = A.data() + static_cast<std::size_t>(j) * (L + 1);
    double* Bj = B.data() + static_cast<std::size_t>(j) * (L + 1);
    for (int m = 0; m <= L; ++m) {
      const double* block = tab + g.pair_index(m, m);
      double am = 0.0, bm = 0.0;
      for (int l = m; l <= L; ++l) {
        am += cc->at(l, m) * block[l - m];
        if (m > 0) bm += cc->at(l, -m) * block[l - m];
      }
      Aj[m] = (m == 0) ? am : kSqrt2 * am;
      Bj[m] = kSqrt2 * bm;
    }
  }
  // Fourier stage.
  for (int j = 0; j < nt; ++j) {
    const double* Aj = A.data() + static_cast<std::size_t>(j) * (L + 1);
    const double* Bj = B.data() + static_cast<std::size_t>(j) * (L + 1);
    double* row = out.data() + static_cast<std::size_t>(j) * np;
    for (int k = 0; k < np; ++k) row[k] = Aj[0];
    for (int m = 1; m <= L; ++m) {
      const double* cm = cosm.data() + static_cast<std::size_t>(m) * np;
      const double* sm = sinm.data() + static_cast<std::size_t>(m) * np;
      const double a = Aj[m], b = Bj[m];
      if (a == 0.0 && b == 0.0) continue;
      for (int k = 0; k < np; ++k) row[k] += a * cm[k] + b * sm[k];
    }
  }
  return out;
}

Vec synthesize(const SphereGrid& g, const HarmonicCoeffs& c) {
  return synthesize_partial(g, c, 0, 0);
}

HarmonicCoeffs analyze(const SphereGrid& g, std::span<const double> values,
                       int band) {
  if (values.size() != g.size()) throw ShapeError("analyze: value array does not match grid");
  const int L = (band < 0) ? g.band_limit() : band;
  check_band(g, L, "analyze");

  const int nt = g.n_theta(), np = g.n_phi(), npairs = g.n_pairs();
  const auto plm = g.legendre(0);
  const auto cosm = g.cos_mphi();
  const auto sinm = g.sin_mphi();

  // Fourier stage: C_{jm}, S_{jm}.
  Vec C(static_cast<std::size_t>(nt) * (L + 1), 0.0);
  Vec S(static_cast<std::size_t>(nt) * (L + 1), 0.0);
  for (int j = 0; j < nt; ++j) {
    const double* row = values.data() + static_cast<std::size_t>(j) * np;
    double* Cj = C.data() + static_cast<std::size_t>(j) * (L + 1);
    double* Sj = S.data() + static_cast<std::size_t>(j) * (L + 1);
    for (int m = 0; m <= L; ++m) {
      const double* cm = cosm.data() + static_cast<std::size_t>(m) * np;
      const double* sm = sinm.data() + static_cast<std::size_t>(m) * np;
      double cs = 0.0, sn = 0.0;
      for (int k = 0; k < np; ++k) {
        cs += row[k] * cm[k];
        sn += row[k] * sm[k];
      }
      Cj[m] = cs;
      Sj[m] = sn;
    }
  }
  // Legendre stage.
  HarmonicCoeffs out(L);
  const double wphi = g.phi_weight();
  for (int m = 0; m <= L; ++m) {
    for (int l = m; l <= L; ++l) {
      double ac = 0.0, as = 0.0;
      for (int j = 0; j < nt; ++j) {
        const double p = plm[static_cast<std::size_t>(j) * npairs + g.pair_index(l, m)];
        const double w = g.weight(j) * p;
        ac += w * C[static_cast<std::size_t>(j) * (L + 1) + m];
        if (m > 0) as += w * S[static_cast<std::size_t>(j) * (L + 1) + m];
      }
      if (m == 0) {
        out.at(l, 0) = wphi * ac;
      } else {
        out.at(l, m) = kSqrt2 * wphi * ac;
        out.at(l, -m) = kSqrt2 * wphi * as;
      }
    }
  }
  return out;
}

double evaluate(const HarmonicCoeffs& c, double theta, double phi) {
  const int L = c.band_limit();
  Vec tab[1];
  legendre_values(theta, L, 0, tab);
  auto pair = [L](int l, int m) {
    return m * (L + 1) - m * (m - 1) / 2 + (l - m);
  };
  double v = 0.0;
  for (int l = 0; l <= L; ++l) v += c.at(l, 0) * tab[0][pair(l, 0)];
  for (int m = 1; m <= L; ++m) {
    double am = 0.0, bm = 0.0;
    for (int l = m; l <= L; ++l) {
      am += c.at(l, m) * tab[0][pair(l, m)];
      bm += c.at(l, -m) * tab[0][pair(l, m)];
    }
    v += kSqrt2 * (am * std::cos(m * phi) + bm * std::sin(m * phi));
  }
  return v;
}

}  // namespace cwy
