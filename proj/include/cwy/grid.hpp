#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cwy {

using Vec = std::vector<double>;

// Pseudo-spectral collocation grid on the unit round sphere.
//
// Latitudes are the Gauss-Legendre nodes theta_j = acos(x_j) (theta
// increasing), longitudes are uniform phi_k = 2*pi*k/n_phi.  With
// n_theta = 2L + 8 and n_phi = 4L + 16 the quadrature
//
//   sum_{j,k} w_j * (2*pi/n_phi) * f(theta_j, phi_k)
//
// integrates any spherical polynomial of degree <= min(2*n_theta - 1,
// n_phi - 1) = 4L + 15 exactly, which covers every product of two fields of
// band limit <= 2L against a harmonic of degree <= 2L.  Associated Legendre
// tables (orthonormal, no Condon-Shortley phase) are precomputed at every
// node up to degree 2L together with their first four theta-derivatives, so
// synthesis of any coordinate partial d^p/dtheta^p d^q/dphi^q with p <= 4 is
// a table lookup.  The derivative tables are what make pointwise evaluation
// of covariant derivatives of tensors exact; frame components of tensors are
// never re-analyzed as scalars (they are not smooth at the poles).
class SphereGrid {
 public:
  // Grid resolving fields of band limit `band_limit`; products of two such
  // fields (band 2L) are still analyzed exactly.
  explicit SphereGrid(int band_limit);

  int band_limit() const { return band_limit_; }
  int table_degree() const { return table_degree_; }  // = 2L (>= L+2)
  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  std::size_t size() const { return static_cast<std::size_t>(n_theta_) * n_phi_; }

  double theta(int j) const { return theta_[j]; }
  double phi(int k) const { return (2.0 * kPi * k) / n_phi_; }
  double weight(int j) const { return weight_[j]; }      // GL weight in x = cos(theta)
  double phi_weight() const { return 2.0 * kPi / n_phi_; }
  double sin_theta(int j) const { return sin_theta_[j]; }
  double cos_theta(int j) const { return cos_theta_[j]; }

  std::span<const double> thetas() const { return theta_; }
  std::span<const double> weights() const { return weight_; }

  // Orthonormal associated Legendre values at node row j:
  //   table(d)[j * n_pairs + pair_index(l, m)] = d^d/dtheta^d Pbar_l^m(theta_j)
  // Pair layout is m-major, contiguous in l for fixed m.
  std::span<const double> legendre(int deriv) const { return plm_[deriv]; }
  int n_pairs() const { return n_pairs_; }
  int pair_index(int l, int m) const { return pair_offset_[m] + (l - m); }

  // cos(m*phi_k), sin(m*phi_k) for m = 0..table_degree, layout m*n_phi + k.
  std::span<const double> cos_mphi() const { return cos_mphi_; }
  std::span<const double> sin_mphi() const { return sin_mphi_; }

  // Quadrature of raw node values over the sphere (area measure).
  double integrate_values(std::span<const double> values) const;

  static constexpr double kPi = 3.14159265358979323846;

 private:
  int band_limit_ = 0;
  int table_degree_ = 0;
  int n_theta_ = 0;
  int n_phi_ = 0;
  int n_pairs_ = 0;
  Vec theta_, cos_theta_, sin_theta_, weight_;
  std::vector<int> pair_offset_;
  Vec plm_[5];
  Vec cos_mphi_, sin_mphi_;
};

// Gauss-Legendre nodes (ascending) and weights on [-1, 1].
void gauss_legendre(int n, Vec& nodes, Vec& weights);

// Orthonormal Pbar_l^m(theta) and theta-derivatives up to `orders` (0..4) for
// all 0 <= m <= l <= degree at a single angle; out[d] has n_pairs entries in
// the same m-major pair layout as SphereGrid.  Shared by the table builder
// and the arbitrary-point evaluators used by finite-difference oracles.
void legendre_values(double theta, int degree, int orders, Vec* out);

}  // namespace cwy
