#pragma once

// Compactly supported m-currents at the compute layer: finite atomic sums
// of weighted Dirac m-vectors. Simplicial currents are a front end
// converted by quadrature; pushforward to planes and pullback of plane
// forms realize the projection calculus.

#include "xkt/analytic.hpp"
#include "xkt/exterior.hpp"
#include "xkt/form_field.hpp"
#include "xkt/grassmann.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace xkt {

struct DiracCurrent {
  struct Atom {
    Eigen::VectorXd position;
    MVector weight;
  };
  int dim = 0;
  int degree = 0;
  std::vector<Atom> atoms;

  void validate() const {
    for (const auto& a : atoms) {
      if (a.position.size() != dim || a.weight.dim != dim || a.weight.degree != degree)
        throw std::domain_error("DiracCurrent: inconsistent atom");
      if (!a.position.allFinite()) throw std::domain_error("DiracCurrent: non-finite position");
    }
  }
};

struct SimplexCurrent {
  struct Simplex {
    Eigen::MatrixXd vertices;  // (m+1) rows of n coordinates
    double multiplicity = 1.0;
  };
  int dim = 0;
  int degree = 0;
  std::vector<Simplex> simplices;
};

// Atomic current living on a plane, positions and weights in the plane's
// frame coordinates.
struct PlaneCurrent {
  Plane plane;
  int degree = 0;
  std::vector<DiracCurrent::Atom> atoms;  // k-dimensional positions, Lambda^m(P) weights
};

namespace detail {

// Barycentric quadrature nodes on the m-simplex; weights sum to 1.
inline std::vector<std::pair<std::vector<double>, double>> simplex_rule(int m, int order) {
  using Node = std::pair<std::vector<double>, double>;
  std::vector<Node> rule;
  if (order <= 1) {
    rule.push_back({std::vector<double>(m + 1, 1.0 / (m + 1)), 1.0});
    return rule;
  }
  if (m == 1) {
    // Gauss-Legendre on [0, 1].
    static const double pts3[] = {0.5 - std::sqrt(15.0) / 10.0, 0.5, 0.5 + std::sqrt(15.0) / 10.0};
    static const double wts3[] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
    static const double p2 = 0.5 / std::sqrt(3.0);
    if (order == 2) {
      rule.push_back({{0.5 + p2, 0.5 - p2}, 0.5});
      rule.push_back({{0.5 - p2, 0.5 + p2}, 0.5});
    } else {
      for (int i = 0; i < 3; ++i) rule.push_back({{1.0 - pts3[i], pts3[i]}, wts3[i]});
    }
    return rule;
  }
  if (m == 2) {
    // Edge midpoints, exact for quadratics.
    rule.push_back({{0.5, 0.5, 0.0}, 1.0 / 3.0});
    rule.push_back({{0.5, 0.0, 0.5}, 1.0 / 3.0});
    rule.push_back({{0.0, 0.5, 0.5}, 1.0 / 3.0});
    return rule;
  }
  if (m == 3) {
    const double a = (5.0 + 3.0 * std::sqrt(5.0)) / 20.0;
    const double b = (5.0 - std::sqrt(5.0)) / 20.0;
    for (int i = 0; i < 4; ++i) {
      std::vector<double> bary(4, b);
      bary[i] = a;
      rule.push_back({bary, 0.25});
    }
    return rule;
  }
  throw std::domain_error("simplex_rule: order > 1 unsupported for this degree");
}

inline double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

}  // namespace detail

// Quadrature conversion of a simplicial current to Dirac atoms: each node
// carries (node weight) * (m-volume) * multiplicity * (unit orienting
// m-vector from the wedge of edge vectors).
inline DiracCurrent simplex_to_dirac(const SimplexCurrent& t, int order = 1) {
  if (t.degree < 1) throw std::domain_error("simplex_to_dirac: degree must be >= 1");
  const int m = t.degree;
  const int n = t.dim;
  DiracCurrent out;
  out.dim = n;
  out.degree = m;
  const auto rule = detail::simplex_rule(m, order);
  for (const auto& simplex : t.simplices) {
    if (simplex.vertices.rows() != m + 1 || simplex.vertices.cols() != n)
      throw std::domain_error("simplex_to_dirac: bad vertex matrix");
    MVector orient(n, 1);
    orient.coeffs = (simplex.vertices.row(1) - simplex.vertices.row(0)).transpose();
    for (int e = 2; e <= m; ++e) {
      MVector edge(n, 1);
      edge.coeffs = (simplex.vertices.row(e) - simplex.vertices.row(0)).transpose();
      orient = wedge(orient, edge);
    }
    const double wedge_norm = orient.norm();
    if (wedge_norm == 0.0) {
      if (simplex.multiplicity != 0.0)
        throw std::domain_error("simplex_to_dirac: degenerate simplex with nonzero multiplicity");
      continue;
    }
    const double volume = wedge_norm / detail::factorial(m);
    orient.coeffs /= wedge_norm;
    for (const auto& [bary, w] : rule) {
      DiracCurrent::Atom atom;
      atom.position = Eigen::VectorXd::Zero(n);
      for (int v = 0; v <= m; ++v) atom.position += bary[v] * simplex.vertices.row(v).transpose();
      atom.weight = MVector(n, m);
      atom.weight.coeffs = (w * volume * simplex.multiplicity) * orient.coeffs;
      out.atoms.push_back(std::move(atom));
    }
  }
  return out;
}

// T(alpha) = sum over atoms of <w, alpha(x)>, with a fixed summation order.
inline double pair(const DiracCurrent& t, const AnalyticForm& alpha) {
  if (alpha.dim != t.dim || alpha.degree != t.degree)
    throw std::domain_error("pair: mismatched current and form");
  double acc = 0.0;
  Eigen::VectorXd v(alpha.ncoeff());
  for (const auto& atom : t.atoms) {
    alpha.eval_into({atom.position.data(), static_cast<size_t>(atom.position.size())},
                    {v.data(), static_cast<size_t>(v.size())});
    acc += atom.weight.coeffs.dot(v);
  }
  return acc;
}

inline double pair(const DiracCurrent& t, const FormField& alpha) {
  if (alpha.grid.dim != t.dim || alpha.degree != t.degree)
    throw std::domain_error("pair: mismatched current and field");
  double acc = 0.0;
  Eigen::VectorXd v(alpha.ncoeff);
  for (const auto& atom : t.atoms) {
    alpha.interpolate_into({atom.position.data(), static_cast<size_t>(atom.position.size())},
                           {v.data(), static_cast<size_t>(v.size())});
    acc += atom.weight.coeffs.dot(v);
  }
  return acc;
}

// P_* T: atom (x, w) -> (frame^T x, Lambda^m(frame^T) w). Zero weights are
// kept to preserve linearity.
inline PlaneCurrent pushforward(const Plane& p, const DiracCurrent& t) {
  if (t.dim != p.n) throw std::domain_error("pushforward: dimension mismatch");
  if (t.degree > p.k) throw std::domain_error("pushforward: degree exceeds plane dimension");
  PlaneCurrent out;
  out.plane = p;
  out.degree = t.degree;
  out.atoms.reserve(t.atoms.size());
  for (const auto& atom : t.atoms) {
    DiracCurrent::Atom pushed;
    pushed.position = p.frame.transpose() * atom.position;
    pushed.weight = restrict_to_frame(atom.weight, p.frame);
    out.atoms.push_back(std::move(pushed));
  }
  return out;
}

// Pairing of a plane current with a plane form sampled on the plane's
// k-dimensional grid (frame coordinates).
inline double pair(const PlaneCurrent& t, const FormField& alpha_p) {
  if (alpha_p.grid.dim != t.plane.k || alpha_p.degree != t.degree)
    throw std::domain_error("pair: mismatched plane current and plane form");
  double acc = 0.0;
  Eigen::VectorXd v(alpha_p.ncoeff);
  for (const auto& atom : t.atoms) {
    alpha_p.interpolate_into({atom.position.data(), static_cast<size_t>(atom.position.size())},
                             {v.data(), static_cast<size_t>(v.size())});
    acc += atom.weight.coeffs.dot(v);
  }
  return acc;
}

// (P^* alpha_P)(x): evaluate the plane form at the projected coordinates
// and include the value back into Lambda^m(R^n), so that pairing with any
// ambient w equals pairing of alpha_P with Lambda^m(frame^T) w.
inline MVector pullback_form_eval(const Plane& p, const FormField& alpha_p,
                                  const Eigen::VectorXd& x) {
  if (x.size() != p.n || alpha_p.grid.dim != p.k)
    throw std::domain_error("pullback_form_eval: dimension mismatch");
  const Eigen::VectorXd coords = p.frame.transpose() * x;
  const MVector v = alpha_p.interpolate({coords.data(), static_cast<size_t>(coords.size())});
  return include_from_plane(v, p);
}

// Closed polygonal circle of the given radius in the (axes[0], axes[1])
// coordinate plane, as a 1-current.
inline SimplexCurrent polygonal_circle(int dim, double radius, int segments,
                                       std::pair<int, int> axes, const Eigen::VectorXd& center,
                                       double multiplicity = 1.0) {
  if (segments < 3) throw std::domain_error("polygonal_circle: need >= 3 segments");
  if (center.size() != dim) throw std::domain_error("polygonal_circle: bad center");
  SimplexCurrent t;
  t.dim = dim;
  t.degree = 1;
  for (int s = 0; s < segments; ++s) {
    const double a0 = 2.0 * std::numbers::pi * s / segments;
    const double a1 = 2.0 * std::numbers::pi * (s + 1) / segments;
    SimplexCurrent::Simplex seg;
    seg.vertices = Eigen::MatrixXd::Zero(2, dim);
    seg.vertices.row(0) = center.transpose();
    seg.vertices.row(1) = center.transpose();
    seg.vertices(0, axes.first) += radius * std::cos(a0);
    seg.vertices(0, axes.second) += radius * std::sin(a0);
    seg.vertices(1, axes.first) += radius * std::cos(a1);
    seg.vertices(1, axes.second) += radius * std::sin(a1);
    seg.multiplicity = multiplicity;
    t.simplices.push_back(std::move(seg));
  }
  return t;
}

}  // namespace xkt
