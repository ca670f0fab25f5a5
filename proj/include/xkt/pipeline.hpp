#pragma once

// End-to-end experiments: inversion through Q R* R, the per-plane
// decomposition of a form, pairing of currents through their plane
// projections, and the decay / Hoelder / boundedness diagnostics.

#include "xkt/analytic.hpp"
#include "xkt/currents.hpp"
#include "xkt/form_field.hpp"
#include "xkt/grassmann.hpp"
#include "xkt/multiplier.hpp"
#include "xkt/rng.hpp"
#include "xkt/xray.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace xkt {

struct PlaneSamplingConfig {
  std::string mode = "haar";  // "haar" | "fixed"
  int count = 200;
  std::uint64_t seed = 1;
};

struct ExperimentConfig {
  int n = 2, k = 1, m = 0;
  double L = 4.0;      // box half-width
  int N = 64;          // ambient nodes per axis
  int N_k = 128;       // in-plane nodes per axis
  int N_perp = 129;    // orthocomplement quadrature nodes per axis
  int padding = 2;     // zero-padding factor for Q
  PlaneSamplingConfig planes;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const {
    if (!(0 <= m && m < k && k < n)) throw std::domain_error("config: need 0 <= m < k < n");
    if (planes.mode != "haar" && planes.mode != "fixed")
      throw std::domain_error("config: planes.mode must be 'haar' or 'fixed'");
    if (planes.count < 1) throw std::domain_error("config: planes.count must be >= 1");
    ambient_grid().validate();
    plane_grid().validate();
    perp().validate();
    if (padding < 1) throw std::domain_error("config: padding must be >= 1");
  }

  GridSpec ambient_grid() const { return GridSpec(n, L, N); }
  GridSpec plane_grid() const { return GridSpec(k, L, N_k); }
  PerpQuadrature perp() const { return {L, N_perp}; }
  MultiplierSpec multiplier() const { return {n, k, m}; }

  PlaneSet sample_planes() const {
    return planes.mode == "haar" ? sample_haar(n, k, planes.count, planes.seed)
                                 : fixed_quadrature(n, k, planes.count);
  }
};

struct InvertResult {
  FormField reconstruction;
  FormField reference;  // the sampled input form
  double rel_l2_error = 0.0;
};

// alpha ~= Q R* R alpha, with the relative L^2 error against the sampled
// input reported alongside the reconstruction.
inline InvertResult invert(const AnalyticForm& alpha, const ExperimentConfig& cfg) {
  cfg.validate();
  if (alpha.dim != cfg.n || alpha.degree != cfg.m)
    throw std::domain_error("invert: form does not match config (n, m)");
  const PlaneSet planes = cfg.sample_planes();
  const Sinogram sino = forward(alpha, planes, cfg.plane_grid(), cfg.perp(), cfg.threads);
  const FormField back = adjoint(sino, cfg.ambient_grid(), cfg.threads);
  InvertResult res{apply_Q(back, cfg.multiplier(), cfg.padding, cfg.threads),
                   sample_to_grid(alpha, cfg.ambient_grid(), cfg.threads), 0.0};
  double num = 0.0;
  for (size_t i = 0; i < res.reconstruction.data.size(); ++i) {
    const double d = res.reconstruction.data[i] - res.reference.data[i];
    num += d * d;
  }
  const double den = l2_norm_sq(res.reference);
  res.rel_l2_error = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  return res;
}

struct DecompositionResult {
  Sinogram sinogram;  // per plane: alpha_P on the plane grid, frame coordinates
  std::uint64_t config_hash = 0;
};

// The family {alpha_P}: beta = R(Q alpha) restricted per plane, stored in
// frame coordinates on the plane grid.
inline DecompositionResult decompose(const AnalyticForm& alpha, const ExperimentConfig& cfg,
                                     std::uint64_t config_hash = 0) {
  cfg.validate();
  if (alpha.dim != cfg.n || alpha.degree != cfg.m)
    throw std::domain_error("decompose: form does not match config (n, m)");
  const FormField q_alpha =
      apply_Q(sample_to_grid(alpha, cfg.ambient_grid(), cfg.threads), cfg.multiplier(),
              cfg.padding, cfg.threads);
  const PlaneSet planes = cfg.sample_planes();
  DecompositionResult res;
  res.sinogram = forward(q_alpha, planes, cfg.plane_grid(), cfg.perp(), cfg.threads);
  res.config_hash = config_hash;
  return res;
}

// Plane average of the pulled-back decomposition at a point; converges to
// alpha(x) as the discretization is refined.
inline MVector decomposition_eval(const DecompositionResult& dec, const Eigen::VectorXd& x) {
  const PlaneSet& planes = dec.sinogram.planes;
  MVector acc(planes.n, dec.sinogram.degree);
  for (size_t p = 0; p < planes.size(); ++p) {
    const MVector term =
        pullback_form_eval(planes.planes[p], dec.sinogram.plane_fields[p], x);
    acc.coeffs += planes.weights[p] * term.coeffs;
  }
  return acc;
}

struct PairingResult {
  double estimate = 0.0;
  double std_error = 0.0;
  double truth = 0.0;
  std::vector<double> per_plane;
};

// int_T alpha via the plane decomposition: the weighted plane average of
// the pushforward pairings, with the Monte Carlo standard error of the
// mean and the directly computed truth.
inline PairingResult pair_via_projections(const DiracCurrent& t, const AnalyticForm& alpha,
                                          const ExperimentConfig& cfg) {
  cfg.validate();
  if (t.degree > cfg.k) throw std::domain_error("pair_via_projections: need m <= k");
  const DecompositionResult dec = decompose(alpha, cfg);
  const PlaneSet& planes = dec.sinogram.planes;
  PairingResult res;
  res.per_plane.resize(planes.size());
  for (size_t p = 0; p < planes.size(); ++p) {
    const PlaneCurrent pushed = pushforward(planes.planes[p], t);
    res.per_plane[p] = pair(pushed, dec.sinogram.plane_fields[p]);
    res.estimate += planes.weights[p] * res.per_plane[p];
  }
  const size_t count = planes.size();
  if (count > 1) {
    double var = 0.0;
    for (double s : res.per_plane) var += (s - res.estimate) * (s - res.estimate);
    res.std_error = std::sqrt(var / (static_cast<double>(count) * (count - 1)));
  }
  res.truth = pair(t, alpha);
  return res;
}

struct HolderReport {
  double theta = 0.0;
  int pairs = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  std::vector<double> ratios;
};

// Hoelder quotient |R Q alpha(P, x_P) - R Q alpha(Q, x_Q)| / dist(P, Q)^theta
// over random plane pairs and probe points, compared in the ambient wedge
// basis after inclusion. Probes stay inside |x|_inf <= L/2.
inline HolderReport holder_check(const AnalyticForm& alpha, const ExperimentConfig& cfg,
                                 double theta, int pairs, std::uint64_t probe_seed = 42) {
  cfg.validate();
  if (!(0.0 < theta && theta < 1.0)) throw std::domain_error("holder_check: need 0 < theta < 1");
  const FormField q_alpha =
      apply_Q(sample_to_grid(alpha, cfg.ambient_grid(), cfg.threads), cfg.multiplier(),
              cfg.padding, cfg.threads);
  HolderReport rep;
  rep.theta = theta;
  rep.pairs = pairs;
  Rng root(probe_seed);
  for (int i = 0; i < pairs; ++i) {
    Rng r = root.split(i);
    const PlaneSet two = sample_haar(cfg.n, cfg.k, 2, r.next_u64());
    const Plane& p = two.planes[0];
    const Plane& q = two.planes[1];
    const double d = distance(p, q);
    if (d < 1e-12) continue;
    Eigen::VectorXd x(cfg.n);
    for (int a = 0; a < cfg.n; ++a) x[a] = r.uniform(-cfg.L / 2.0, cfg.L / 2.0);
    const MVector vp = include_from_plane(
        forward_point(q_alpha, p, p.frame.transpose() * x, cfg.perp()), p);
    const MVector vq = include_from_plane(
        forward_point(q_alpha, q, q.frame.transpose() * x, cfg.perp()), q);
    const double ratio = (vp.coeffs - vq.coeffs).norm() / std::pow(d, theta);
    rep.ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    rep.mean_ratio += ratio;
  }
  if (!rep.ratios.empty()) rep.mean_ratio /= static_cast<double>(rep.ratios.size());
  return rep;
}

struct BoundednessReport {
  std::vector<double> ratios;  // per form
  double sup = 0.0;
};

// Empirical constant in || R* R alpha ||_{Hdot^{n-k}} / || alpha ||_{L^2}
// across a family of analytic forms.
inline BoundednessReport boundedness_check(const std::vector<AnalyticForm>& family,
                                           const ExperimentConfig& cfg) {
  cfg.validate();
  if (family.size() < 1) throw std::domain_error("boundedness_check: empty family");
  BoundednessReport rep;
  const PlaneSet planes = cfg.sample_planes();
  for (const auto& alpha : family) {
    const Sinogram sino = forward(alpha, planes, cfg.plane_grid(), cfg.perp(), cfg.threads);
    const FormField back = adjoint(sino, cfg.ambient_grid(), cfg.threads);
    const double denom = l2_norm(sample_to_grid(alpha, cfg.ambient_grid(), cfg.threads));
    if (denom == 0.0) throw std::domain_error("boundedness_check: zero form in family");
    const double ratio = hdot_norm(back, static_cast<double>(cfg.n - cfg.k)) / denom;
    rep.ratios.push_back(ratio);
    rep.sup = std::max(rep.sup, ratio);
  }
  return rep;
}

}  // namespace xkt
