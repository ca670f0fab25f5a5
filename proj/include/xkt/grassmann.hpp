#pragma once

// k-planes through the origin of R^n represented by orthonormal frames,
// Haar sampling of the Grassmannian, deterministic quadratures for the
// sphere cases, point projection and the projector-gap metric.

#include "xkt/exterior.hpp"
#include "xkt/rng.hpp"

#include <Eigen/Dense>
#include <Eigen/QR>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace xkt {

struct Plane {
  int n = 0;
  int k = 0;
  Eigen::MatrixXd frame;  // n x k, orthonormal columns

  Plane() = default;
  Plane(int n_, int k_, Eigen::MatrixXd frame_) : n(n_), k(k_), frame(std::move(frame_)) {
    if (frame.rows() != n || frame.cols() != k) throw std::domain_error("Plane: frame shape mismatch");
    const double err = (frame.transpose() * frame - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
    if (err > 1e-10) throw std::domain_error("Plane: frame columns not orthonormal");
  }

  Eigen::MatrixXd projector() const { return frame * frame.transpose(); }
};

// Discretization of the invariant probability measure on G(k, n): a finite
// set of planes with nonnegative weights summing to one.
struct PlaneSet {
  int n = 0;
  int k = 0;
  std::vector<Plane> planes;
  std::vector<double> weights;
  std::optional<std::uint64_t> seed;  // set when Haar-sampled

  size_t size() const { return planes.size(); }

  void validate() const {
    double total = 0.0;
    for (const auto& p : planes) {
      if (p.n != n || p.k != k) throw std::domain_error("PlaneSet: mixed (n, k)");
    }
    for (double w : weights) {
      if (w < 0.0) throw std::domain_error("PlaneSet: negative weight");
      total += w;
    }
    if (planes.size() != weights.size() || std::abs(total - 1.0) > 1e-12)
      throw std::domain_error("PlaneSet: weights must sum to 1");
  }
};

namespace detail {

// Thin QR with the sign fixed so R has positive diagonal; applied to an
// iid Gaussian matrix this yields the invariant frame distribution.
inline Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& g) {
  const int n = static_cast<int>(g.rows());
  const int k = static_cast<int>(g.cols());
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, k);
  const Eigen::MatrixXd r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  for (int j = 0; j < k; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace detail

// i.i.d. Haar samples of G(k, n) with uniform weights, deterministic for a
// given seed and stable under increasing count.
inline PlaneSet sample_haar(int n, int k, int count, std::uint64_t seed) {
  if (!(0 < k && k < n)) throw std::domain_error("sample_haar: need 0 < k < n");
  if (count < 1) throw std::domain_error("sample_haar: count must be >= 1");
  PlaneSet set;
  set.n = n;
  set.k = k;
  set.seed = seed;
  Rng root(seed);
  set.planes.reserve(count);
  for (int i = 0; i < count; ++i) {
    Rng r = root.split(static_cast<std::uint64_t>(i));
    Eigen::MatrixXd g(n, k);
    for (int row = 0; row < n; ++row)
      for (int col = 0; col < k; ++col) g(row, col) = r.normal();
    set.planes.emplace_back(n, k, detail::orthonormalize(g));
  }
  set.weights.assign(count, 1.0 / count);
  return set;
}

// Orthonormal frame spanning the orthocomplement, deterministic given the
// frame (Householder completion).
inline Plane complement_frame(const Plane& p) {
  const int n = p.n;
  const int k = p.k;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(p.frame);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  return Plane(n, n - k, q.rightCols(n - k));
}

// Deterministic quadrature on G(k, n) for the sphere-like cases k = 1 and
// k = n-1: an antipodally deduplicated direction grid (equal angles on S^1,
// a Fibonacci hemisphere on S^2) and its orthocomplement dual. Other (n, k)
// have no simple exact rule and require Monte Carlo.
inline PlaneSet fixed_quadrature(int n, int k, int resolution) {
  if (!(0 < k && k < n)) throw std::domain_error("fixed_quadrature: need 0 < k < n");
  if (resolution < 1) throw std::domain_error("fixed_quadrature: resolution must be >= 1");
  if (k == 1) {
    PlaneSet set;
    set.n = n;
    set.k = 1;
    if (n == 2) {
      for (int j = 0; j < resolution; ++j) {
        const double theta = std::numbers::pi * j / resolution;
        Eigen::MatrixXd f(2, 1);
        f << std::cos(theta), std::sin(theta);
        set.planes.emplace_back(2, 1, f);
      }
    } else if (n == 3) {
      // Fibonacci lattice on the upper hemisphere (lines are antipodal).
      const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
      for (int j = 0; j < resolution; ++j) {
        const double z = (j + 0.5) / resolution;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = 2.0 * std::numbers::pi * j / golden;
        Eigen::MatrixXd f(3, 1);
        f << rho * std::cos(phi), rho * std::sin(phi), z;
        set.planes.emplace_back(3, 1, f);
      }
    } else {
      throw std::domain_error("fixed_quadrature: k = 1 supported only for n in {2, 3}");
    }
    set.weights.assign(resolution, 1.0 / resolution);
    return set;
  }
  if (k == n - 1) {
    PlaneSet lines = fixed_quadrature(n, 1, resolution);
    PlaneSet set;
    set.n = n;
    set.k = k;
    for (const auto& line : lines.planes) set.planes.push_back(complement_frame(line));
    set.weights = lines.weights;
    return set;
  }
  throw std::domain_error("fixed_quadrature: unsupported (n, k); use sample_haar");
}

// Orthogonal projection of x onto P: in-plane coordinates and the ambient
// foot point.
inline std::pair<Eigen::VectorXd, Eigen::VectorXd> project_point(const Plane& p,
                                                                 const Eigen::VectorXd& x) {
  if (x.size() != p.n) throw std::domain_error("project_point: dimension mismatch");
  Eigen::VectorXd coords = p.frame.transpose() * x;
  Eigen::VectorXd foot = p.frame * coords;
  return {std::move(coords), std::move(foot)};
}

// Projector-gap metric ||pi_P - pi_Q||_2, a metric on G(k, n) with values
// in [0, 1].
inline double distance(const Plane& p, const Plane& q) {
  if (p.n != q.n || p.k != q.k) throw std::domain_error("distance: mismatched (n, k)");
  Eigen::MatrixXd diff = p.projector() - q.projector();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(diff, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

// Coordinates of v restricted to the plane's frame basis.
inline MVector restrict_to_plane(const MVector& v, const Plane& p) {
  return restrict_to_frame(v, p.frame);
}

// Inclusion Lambda^m(P) -> Lambda^m(R^n) in the plane's frame basis.
inline MVector include_from_plane(const MVector& v, const Plane& p) {
  if (v.dim != p.k) throw std::domain_error("include_from_plane: dimension mismatch");
  return induced_map(p.frame, v.degree).apply(v);
}

}  // namespace xkt
