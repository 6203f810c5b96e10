#include "cwy/grid.hpp"

#include <cmath>
#include <cstddef>

#include "cwy/errors.hpp"

namespace cwy {

namespace {
constexpr double kPiLocal = 3.14159265358979323846;
}

void gauss_legendre(int n, Vec& nodes, Vec& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  // Newton on P_n from the standard asymptotic first guess; converges to
  // machine precision in < 10 iterations for every n used here.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPiLocal * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int l = 2; l <= n; ++l) {
        const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one clean-up step after convergence
        double q0 = 1.0, q1 = x;
        for (int l = 2; l <= n; ++l) {
          const double q2 = ((2.0 * l - 1.0) * x * q1 - (l - 1.0) * q0) / l;
          q0 = q1;
          q1 = q2;
        }
        pp = n * (x * q1 - q0) / (x * x - 1.0);
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    // roots come out descending in x for ascending i; store symmetric pair
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    // middle node is exactly zero
    nodes[n / 2] = 0.0;
    double p0 = 1.0, p1 = 0.0;
    for (int l = 2; l <= n; ++l) {
      const double p2 = (-(l - 1.0) * p0) / l;
      p0 = p1;
      p1 = p2;
    }
    // P_n'(0) = n * P_{n-1}(0)
    const double pp = n * p0;
    weights[n / 2] = 2.0 / (pp * pp);
  }
}

namespace {
// Derivatives of x = cos(theta) cycle with period 4: cos, -sin, -cos, sin.
inline double cos_deriv(int k, double s, double c) {
  switch (k & 3) {
    case 0: return c;
    case 1: return -s;
    case 2: return -c;
    default: return s;
  }
}

inline int binom(int n, int k) {
  static const int table[5][5] = {{1, 0, 0, 0, 0},
                                  {1, 1, 0, 0, 0},
                                  {1, 2, 1, 0, 0},
                                  {1, 3, 3, 1, 0},
                                  {1, 4, 6, 4, 1}};
  return table[n][k];
}
}  // namespace

void legendre_values(double theta, int degree, int orders, Vec* out) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  const int npairs = (degree + 1) * (degree + 2) / 2;
  for (int d = 0; d <= orders; ++d) out[d].assign(npairs, 0.0);

  // pair offsets, m-major
  auto pair = [degree](int l, int m) {
    // offset of block m is sum_{k<m} (degree+1-k)
    const int off = m * (degree + 1) - m * (m - 1) / 2;
    return off + (l - m);
  };

  // Diagonal start Pbar_m^m = c_m sin^m(theta), c_m = sqrt(1/4pi) *
  // prod sqrt((2k+1)/(2k)).  Derivative seeds are explicit monomials in
  // sin/cos; coefficients m(m-1)... vanish before any negative power of sin
  // is touched.
  double cm = std::sqrt(1.0 / (4.0 * kPiLocal));
  // powers sin^(m-4..m) maintained incrementally (only used when exponent >= 0)
  for (int m = 0; m <= degree; ++m) {
    if (m > 0) cm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m));
    const double dm = static_cast<double>(m);
    auto spow = [&](int e) { return e >= 0 ? std::pow(s, e) : 0.0; };
    double seed[5];
    seed[0] = cm * spow(m);
    seed[1] = cm * dm * spow(m - 1) * c;
    seed[2] = cm * (dm * (dm - 1.0) * spow(m - 2) * c * c - dm * spow(m));
    seed[3] = cm * (dm * (dm - 1.0) * (dm - 2.0) * spow(m - 3) * c * c * c -
                    (3.0 * dm * dm - 2.0 * dm) * spow(m - 1) * c);
    seed[4] = cm * (dm * (dm - 1.0) * (dm - 2.0) * (dm - 3.0) * spow(m - 4) * c * c * c * c -
                    (6.0 * dm * dm * dm - 14.0 * dm * dm + 8.0 * dm) *
                        spow(m - 2) * c * c +
                    (3.0 * dm * dm - 2.0 * dm) * spow(m));
    for (int d = 0; d <= orders; ++d) out[d][pair(m, m)] = seed[d];

    if (m + 1 <= degree) {
      // Pbar_{m+1}^m = sqrt(2m+3) * cos(theta) * Pbar_m^m, differentiated by
      // Leibniz.
      const double a = std::sqrt(2.0 * m + 3.0);
      for (int d = 0; d <= orders; ++d) {
        double v = 0.0;
        for (int k = 0; k <= d; ++k)
          v += binom(d, k) * cos_deriv(k, s, c) * out[d - k][pair(m, m)];
        out[d][pair(m + 1, m)] = a * v;
      }
    }
    for (int l = m + 2; l <= degree; ++l) {
      // Pbar_l^m = a_lm (x Pbar_{l-1}^m - b_lm Pbar_{l-2}^m)
      const double ll = static_cast<double>(l);
      const double mm2 = dm * dm;
      const double alm = std::sqrt((4.0 * ll * ll - 1.0) / (ll * ll - mm2));
      const double blm =
          std::sqrt(((ll - 1.0) * (ll - 1.0) - mm2) / (4.0 * (ll - 1.0) * (ll - 1.0) - 1.0));
      for (int d = 0; d <= orders; ++d) {
        double v = 0.0;
        for (int k = 0; k <= d; ++k)
          v += binom(d, k) * cos_deriv(k, s, c) * out[d - k][pair(l - 1, m)];
        out[d][pair(l, m)] = alm * (v - blm * out[d][pair(l - 2, m)]);
      }
    }
  }
}

SphereGrid::SphereGrid(int band_limit) {
  if (band_limit < 1) throw BandLimitError("SphereGrid: band limit must be >= 1");
  band_limit_ = band_limit;
  table_degree_ = 2 * band_limit;
  if (table_degree_ < band_limit + 2) table_degree_ = band_limit + 2;
  n_theta_ = 2 * band_limit + 8;
  n_phi_ = 4 * band_limit + 16;
  n_pairs_ = (table_degree_ + 1) * (table_degree_ + 2) / 2;

  Vec x, w;
  gauss_legendre(n_theta_, x, w);
  theta_.resize(n_theta_);
  cos_theta_.resize(n_theta_);
  sin_theta_.resize(n_theta_);
  weight_.resize(n_theta_);
  for (int j = 0; j < n_theta_; ++j) {
    // ascending theta = descending x
    const double xj = x[n_theta_ - 1 - j];
    theta_[j] = std::acos(xj);
    cos_theta_[j] = xj;
    sin_theta_[j] = std::sqrt(1.0 - xj * xj);
    weight_[j] = w[n_theta_ - 1 - j];
  }

  pair_offset_.resize(table_degree_ + 1);
  for (int m = 0; m <= table_degree_; ++m)
    pair_offset_[m] = m * (table_degree_ + 1) - m * (m - 1) / 2;

  for (auto& t : plm_) t.assign(static_cast<std::size_t>(n_theta_) * n_pairs_, 0.0);
  Vec scratch[5];
  for (int j = 0; j < n_theta_; ++j) {
    legendre_values(theta_[j], table_degree_, 4, scratch);
    for (int d = 0; d <= 4; ++d) {
      double* dst = plm_[d].data() + static_cast<std::size_t>(j) * n_pairs_;
      for (int p = 0; p < n_pairs_; ++p) dst[p] = scratch[d][p];
    }
  }

  cos_mphi_.resize(static_cast<std::size_t>(table_degree_ + 1) * n_phi_);
  sin_mphi_.resize(static_cast<std::size_t>(table_degree_ + 1) * n_phi_);
  for (int m = 0; m <= table_degree_; ++m) {
    for (int k = 0; k < n_phi_; ++k) {
      const double ang = m * (2.0 * kPiLocal * k / n_phi_);
      cos_mphi_[static_cast<std::size_t>(m) * n_phi_ + k] = std::cos(ang);
      sin_mphi_[static_cast<std::size_t>(m) * n_phi_ + k] = std::sin(ang);
    }
  }
}

double SphereGrid::integrate_values(std::span<const double> values) const {
  if (values.size() != size()) throw ShapeError("integrate_values: size mismatch");
  // phi sum first, then the weighted theta sum; fixed order keeps results
  // bit-reproducible.
  double total = 0.0;
  for (int j = 0; j < n_theta_; ++j) {
    double row = 0.0;
    const double* v = values.data() + static_cast<std::size_t>(j) * n_phi_;
    for (int k = 0; k < n_phi_; ++k) row += v[k];
    total += weight_[j] * row;
  }
  return total * phi_weight();
}

}  // namespace cwy
