#pragma once

// The exterior k-plane transform: forward integration over plane
// orthocomplements, the dual transform (backprojection with inclusion),
// and the associated norms. Sinograms store intrinsic Lambda^m(P)
// coordinates in each plane's frame basis.

#include "xkt/analytic.hpp"
#include "xkt/exterior.hpp"
#include "xkt/form_field.hpp"
#include "xkt/grassmann.hpp"
#include "xkt/grid.hpp"
#include "xkt/parallel.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace xkt {

// Tensor-product trapezoidal rule over [-radius, radius]^(n-k).
struct PerpQuadrature {
  double radius = 4.0;
  int points = 129;  // nodes per axis

  void validate() const {
    if (radius <= 0.0 || points < 3) throw std::domain_error("PerpQuadrature: bad parameters");
  }
};

struct Sinogram {
  PlaneSet planes;
  GridSpec kgrid;  // in-plane grid, dimension k
  int degree = 0;
  std::vector<FormField> plane_fields;  // one k-dimensional field per plane

  int ncoeff() const { return static_cast<int>(binomial(planes.k, degree)); }
};

namespace detail {

// Restriction matrix Lambda^m(frame)^T, mapping ambient coefficients to
// the plane's intrinsic wedge basis.
inline Eigen::MatrixXd restriction_matrix(const Plane& p, int m) {
  return induced_map(p.frame, m).matrix.transpose();
}

template <class Eval>
void forward_point_accumulate(Eval&& eval, const Plane& p, const Eigen::MatrixXd& complement,
                              const Eigen::MatrixXd& restrict_mat, const PerpQuadrature& quad,
                              const double* coords, double* out) {
  const int n = p.n;
  const int codim = static_cast<int>(complement.cols());
  const int nc_amb = static_cast<int>(restrict_mat.cols());
  const int nc_pl = static_cast<int>(restrict_mat.rows());
  const double h = 2.0 * quad.radius / (quad.points - 1);

  double base[8];
  for (int d = 0; d < n; ++d) {
    double v = 0.0;
    for (int j = 0; j < p.k; ++j) v += p.frame(d, j) * coords[j];
    base[d] = v;
  }

  for (int c = 0; c < nc_pl; ++c) out[c] = 0.0;

  std::int64_t total = 1;
  for (int d = 0; d < codim; ++d) total *= quad.points;

  double x[8];
  double amb[128];
  int idx[8];
  for (std::int64_t node = 0; node < total; ++node) {
    std::int64_t rest = node;
    double w = 1.0;
    for (int d = codim - 1; d >= 0; --d) {
      idx[d] = static_cast<int>(rest % quad.points);
      rest /= quad.points;
      w *= (idx[d] == 0 || idx[d] == quad.points - 1) ? 0.5 * h : h;
    }
    for (int d = 0; d < n; ++d) x[d] = base[d];
    for (int a = 0; a < codim; ++a) {
      const double t = -quad.radius + idx[a] * h;
      for (int d = 0; d < n; ++d) x[d] += complement(d, a) * t;
    }
    eval({x, static_cast<size_t>(n)}, {amb, static_cast<size_t>(nc_amb)});
    for (int c = 0; c < nc_pl; ++c) {
      double v = 0.0;
      for (int a = 0; a < nc_amb; ++a) v += restrict_mat(c, a) * amb[a];
      out[c] += w * v;
    }
  }
}

template <class Eval>
Sinogram forward_with(Eval&& eval, int degree, const PlaneSet& planes, const GridSpec& kgrid,
                      const PerpQuadrature& quad, int threads) {
  planes.validate();
  quad.validate();
  if (kgrid.dim != planes.k) throw std::domain_error("forward: k-grid dimension must equal k");
  if (degree > planes.k) throw std::domain_error("forward: degree exceeds plane dimension");
  Sinogram sino;
  sino.planes = planes;
  sino.kgrid = kgrid;
  sino.degree = degree;
  sino.plane_fields.assign(planes.size(), FormField(kgrid, degree));
  const std::int64_t nodes = kgrid.site_count();

  parallel_for(static_cast<std::int64_t>(planes.size()), threads,
               [&](std::int64_t begin, std::int64_t end) {
                 std::vector<double> coords(planes.k);
                 for (std::int64_t pi = begin; pi < end; ++pi) {
                   const Plane& p = planes.planes[pi];
                   const Eigen::MatrixXd comp = complement_frame(p).frame;
                   const Eigen::MatrixXd rest = restriction_matrix(p, degree);
                   FormField& field = sino.plane_fields[pi];
                   for (std::int64_t s = 0; s < nodes; ++s) {
                     kgrid.site_coords(s, coords);
                     forward_point_accumulate(eval, p, comp, rest, quad, coords.data(),
                                              field.at(s));
                   }
                 }
               });
  return sino;
}

}  // namespace detail

// R(alpha)(P, x): integral of alpha(x + y)|_P over y in the orthocomplement,
// with x given in the plane's frame coordinates. Returns intrinsic
// Lambda^m(P) coordinates.
inline MVector forward_point(const AnalyticForm& alpha, const Plane& p,
                             const Eigen::VectorXd& coords, const PerpQuadrature& quad) {
  if (alpha.dim != p.n) throw std::domain_error("forward_point: dimension mismatch");
  if (alpha.degree > p.k) throw std::domain_error("forward_point: degree exceeds plane dimension");
  quad.validate();
  const Eigen::MatrixXd comp = complement_frame(p).frame;
  const Eigen::MatrixXd rest = detail::restriction_matrix(p, alpha.degree);
  MVector out(p.k, alpha.degree);
  detail::forward_point_accumulate(
      [&alpha](std::span<const double> x, std::span<double> v) { alpha.eval_into(x, v); }, p, comp,
      rest, quad, coords.data(), out.coeffs.data());
  return out;
}

inline MVector forward_point(const FormField& alpha, const Plane& p, const Eigen::VectorXd& coords,
                             const PerpQuadrature& quad) {
  if (alpha.grid.dim != p.n) throw std::domain_error("forward_point: dimension mismatch");
  if (alpha.degree > p.k) throw std::domain_error("forward_point: degree exceeds plane dimension");
  quad.validate();
  const Eigen::MatrixXd comp = complement_frame(p).frame;
  const Eigen::MatrixXd rest = detail::restriction_matrix(p, alpha.degree);
  MVector out(p.k, alpha.degree);
  detail::forward_point_accumulate(
      [&alpha](std::span<const double> x, std::span<double> v) { alpha.interpolate_into(x, v); },
      p, comp, rest, quad, coords.data(), out.coeffs.data());
  return out;
}

inline Sinogram forward(const AnalyticForm& alpha, const PlaneSet& planes, const GridSpec& kgrid,
                        const PerpQuadrature& quad, int threads = 1) {
  if (alpha.dim != planes.n) throw std::domain_error("forward: dimension mismatch");
  return detail::forward_with(
      [&alpha](std::span<const double> x, std::span<double> v) { alpha.eval_into(x, v); },
      alpha.degree, planes, kgrid, quad, threads);
}

inline Sinogram forward(const FormField& alpha, const PlaneSet& planes, const GridSpec& kgrid,
                        const PerpQuadrature& quad, int threads = 1) {
  if (alpha.grid.dim != planes.n) throw std::domain_error("forward: dimension mismatch");
  return detail::forward_with(
      [&alpha](std::span<const double> x, std::span<double> v) { alpha.interpolate_into(x, v); },
      alpha.degree, planes, kgrid, quad, threads);
}

// Dual transform: at each output node x, the weighted plane average of the
// included sinogram value at the projected coordinates. Plane order is
// fixed, so the reduction is bit-reproducible for any worker count.
inline FormField adjoint(const Sinogram& sino, const GridSpec& out_grid, int threads = 1) {
  const int n = sino.planes.n;
  const int k = sino.planes.k;
  if (out_grid.dim != n) throw std::domain_error("adjoint: output grid dimension mismatch");
  sino.planes.validate();
  FormField out(out_grid, sino.degree);

  const size_t nplanes = sino.planes.size();
  std::vector<Eigen::MatrixXd> incl(nplanes);
  for (size_t p = 0; p < nplanes; ++p)
    incl[p] = induced_map(sino.planes.planes[p].frame, sino.degree).matrix;

  const std::int64_t sites = out_grid.site_count();
  const int nc_pl = static_cast<int>(binomial(k, sino.degree));
  const int nc_amb = out.ncoeff;

  parallel_for(sites, threads, [&](std::int64_t begin, std::int64_t end) {
    std::vector<double> x(n);
    double coords[8];
    double v[128];
    for (std::int64_t s = begin; s < end; ++s) {
      out_grid.site_coords(s, x);
      double* acc = out.at(s);
      for (size_t p = 0; p < nplanes; ++p) {
        const Plane& plane = sino.planes.planes[p];
        for (int j = 0; j < k; ++j) {
          double c = 0.0;
          for (int d = 0; d < n; ++d) c += plane.frame(d, j) * x[d];
          coords[j] = c;
        }
        sino.plane_fields[p].interpolate_into({coords, static_cast<size_t>(k)},
                                              {v, static_cast<size_t>(nc_pl)});
        const double w = sino.planes.weights[p];
        const Eigen::MatrixXd& B = incl[p];
        for (int a = 0; a < nc_amb; ++a) {
          double t = 0.0;
          for (int c = 0; c < nc_pl; ++c) t += B(a, c) * v[c];
          acc[a] += w * t;
        }
      }
    }
  });
  return out;
}

// Squared L^2(Gamma) norm: plane-weighted in-plane L^2 norms.
inline double sinogram_l2_sq(const Sinogram& sino) {
  double acc = 0.0;
  for (size_t p = 0; p < sino.planes.size(); ++p)
    acc += sino.planes.weights[p] * l2_norm_sq(sino.plane_fields[p]);
  return acc;
}

inline double sinogram_inner(const Sinogram& a, const Sinogram& b) {
  if (a.planes.size() != b.planes.size() || a.kgrid != b.kgrid || a.degree != b.degree)
    throw std::domain_error("sinogram_inner: mismatched sinograms");
  double acc = 0.0;
  for (size_t p = 0; p < a.planes.size(); ++p)
    acc += a.planes.weights[p] * l2_inner(a.plane_fields[p], b.plane_fields[p]);
  return acc;
}

// ||alpha||_X^2 = ||alpha||_{L^2}^2 + ||R alpha||_{L^2(Gamma)}^2.
inline double x_norm(const AnalyticForm& alpha, const PlaneSet& planes, const GridSpec& kgrid,
                     const GridSpec& ambient_grid, const PerpQuadrature& quad, int threads = 1) {
  const FormField sampled = sample_to_grid(alpha, ambient_grid, threads);
  const Sinogram sino = forward(alpha, planes, kgrid, quad, threads);
  return std::sqrt(l2_norm_sq(sampled) + sinogram_l2_sq(sino));
}

inline double x_norm(const FormField& alpha, const PlaneSet& planes, const GridSpec& kgrid,
                     const PerpQuadrature& quad, int threads = 1) {
  const Sinogram sino = forward(alpha, planes, kgrid, quad, threads);
  return std::sqrt(l2_norm_sq(alpha) + sinogram_l2_sq(sino));
}

}  // namespace xkt
