#pragma once

// Finite-dimensional exterior algebra over R^d in the lexicographic wedge
// basis: multi-index bookkeeping, m-vectors, wedge products, induced maps
// of linear maps, hyperplane projections and the inversion symbol h.

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace xkt {

inline long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Strictly increasing m-subset of {0, ..., d-1}.
struct MultiIndex {
  std::vector<int> entries;

  int degree() const { return static_cast<int>(entries.size()); }

  bool valid(int d) const {
    for (int i = 0; i < degree(); ++i) {
      if (entries[i] < 0 || entries[i] >= d) return false;
      if (i > 0 && entries[i] <= entries[i - 1]) return false;
    }
    return true;
  }
};

// All m-subsets of {0..d-1} in lexicographic order.
inline std::vector<MultiIndex> basis_indices(int d, int m) {
  if (m < 0 || m > d) throw std::domain_error("basis_indices: need 0 <= m <= d");
  std::vector<MultiIndex> out;
  out.reserve(static_cast<size_t>(binomial(d, m)));
  std::vector<int> cur(m);
  for (int i = 0; i < m; ++i) cur[i] = i;
  while (true) {
    out.push_back(MultiIndex{cur});
    if (m == 0) break;
    int i = m - 1;
    while (i >= 0 && cur[i] == d - m + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < m; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

// Lexicographic rank of a strictly increasing subset, inverse of the
// enumeration above.
inline long lex_rank(std::span<const int> entries, int d) {
  const int m = static_cast<int>(entries.size());
  long rank = 0;
  int prev = -1;
  for (int j = 0; j < m; ++j) {
    for (int v = prev + 1; v < entries[j]; ++v) rank += binomial(d - 1 - v, m - 1 - j);
    prev = entries[j];
  }
  return rank;
}

// Element of Lambda^m(R^dim), coefficients in lexicographic basis order.
struct MVector {
  int dim = 0;
  int degree = 0;
  Eigen::VectorXd coeffs;

  MVector() = default;
  MVector(int dim_, int degree_) : dim(dim_), degree(degree_) {
    if (degree_ < 0 || degree_ > dim_) throw std::domain_error("MVector: need 0 <= degree <= dim");
    coeffs = Eigen::VectorXd::Zero(binomial(dim_, degree_));
  }

  static MVector basis(int dim, std::span<const int> index) {
    MVector v(dim, static_cast<int>(index.size()));
    v.coeffs[lex_rank(index, dim)] = 1.0;
    return v;
  }

  double norm() const { return coeffs.norm(); }
};

inline double inner(const MVector& u, const MVector& v) {
  if (u.dim != v.dim || u.degree != v.degree)
    throw std::domain_error("inner: mismatched m-vectors");
  return u.coeffs.dot(v.coeffs);
}

// Linear map Lambda^m(R^src_dim) -> Lambda^m(R^dst_dim).
struct MOperator {
  int src_dim = 0;
  int dst_dim = 0;
  int degree = 0;
  Eigen::MatrixXd matrix;

  MVector apply(const MVector& v) const {
    if (v.dim != src_dim || v.degree != degree)
      throw std::domain_error("MOperator::apply: mismatched m-vector");
    MVector out(dst_dim, degree);
    out.coeffs.noalias() = matrix * v.coeffs;
    return out;
  }
};

namespace detail {

// Sign of merging two disjoint increasing index sets: parity of the pairs
// (i in I, j in J) with j < i.
inline int merge_sign(std::span<const int> I, std::span<const int> J) {
  int inversions = 0;
  for (int j : J)
    for (int i : I)
      if (i > j) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

inline bool merge_disjoint(std::span<const int> I, std::span<const int> J, std::vector<int>& out) {
  out.clear();
  size_t a = 0, b = 0;
  while (a < I.size() && b < J.size()) {
    if (I[a] == J[b]) return false;
    out.push_back(I[a] < J[b] ? I[a++] : J[b++]);
  }
  for (; a < I.size(); ++a) out.push_back(I[a]);
  for (; b < J.size(); ++b) out.push_back(J[b]);
  return true;
}

}  // namespace detail

// Graded-anticommutative wedge product in coordinates.
inline MVector wedge(const MVector& u, const MVector& v) {
  if (u.dim != v.dim) throw std::domain_error("wedge: mismatched ambient dimension");
  const int d = u.dim;
  if (u.degree + v.degree > d) throw std::domain_error("wedge: degree exceeds dimension");
  MVector out(d, u.degree + v.degree);
  const auto ubasis = basis_indices(d, u.degree);
  const auto vbasis = basis_indices(d, v.degree);
  std::vector<int> merged;
  for (size_t a = 0; a < ubasis.size(); ++a) {
    const double ua = u.coeffs[static_cast<long>(a)];
    if (ua == 0.0) continue;
    for (size_t b = 0; b < vbasis.size(); ++b) {
      const double vb = v.coeffs[static_cast<long>(b)];
      if (vb == 0.0) continue;
      if (!detail::merge_disjoint(ubasis[a].entries, vbasis[b].entries, merged)) continue;
      const int sign = detail::merge_sign(ubasis[a].entries, vbasis[b].entries);
      out.coeffs[lex_rank(merged, d)] += sign * ua * vb;
    }
  }
  return out;
}

// Matrix of Lambda^m(A) for A: R^src -> R^dst; entry (I, J) is the m x m
// minor of A with rows I and columns J. Columns are built by wedging the
// images of the source basis vectors, so functoriality is inherited from
// the wedge product.
inline MOperator induced_map(const Eigen::MatrixXd& A, int m) {
  const int src = static_cast<int>(A.cols());
  const int dst = static_cast<int>(A.rows());
  if (m < 0 || m > src || m > dst) throw std::domain_error("induced_map: degree out of range");
  MOperator op;
  op.src_dim = src;
  op.dst_dim = dst;
  op.degree = m;
  op.matrix = Eigen::MatrixXd::Zero(binomial(dst, m), binomial(src, m));
  if (m == 0) {
    op.matrix(0, 0) = 1.0;
    return op;
  }
  const auto cols = basis_indices(src, m);
  for (size_t J = 0; J < cols.size(); ++J) {
    MVector w(dst, 1);
    w.coeffs = A.col(cols[J].entries[0]);
    for (int t = 1; t < m; ++t) {
      MVector next(dst, 1);
      next.coeffs = A.col(cols[J].entries[t]);
      w = wedge(w, next);
    }
    op.matrix.col(static_cast<long>(J)) = w.coeffs;
  }
  return op;
}

// Coordinates of v restricted to the span of an orthonormal frame (n x k,
// orthonormal columns): the adjoint of the isometric inclusion, i.e.
// Lambda^m(frame)^T v.
inline MVector restrict_to_frame(const MVector& v, const Eigen::MatrixXd& frame) {
  const int n = static_cast<int>(frame.rows());
  const int k = static_cast<int>(frame.cols());
  if (v.dim != n) throw std::domain_error("restrict_to_frame: mismatched dimension");
  if (v.degree > k) throw std::domain_error("restrict_to_frame: degree exceeds plane dimension");
  const MOperator incl = induced_map(frame, v.degree);
  MVector out(k, v.degree);
  out.coeffs.noalias() = incl.matrix.transpose() * v.coeffs;
  return out;
}

// Deterministic orthonormal frame of the hyperplane orthogonal to xi:
// Gram-Schmidt over (xi/|xi|, e_0, ..., e_{n-1}), keeping the n-1
// directions that survive after xi itself.
inline Eigen::MatrixXd hyperplane_frame(const Eigen::VectorXd& xi) {
  const int n = static_cast<int>(xi.size());
  const double nrm = xi.norm();
  if (nrm == 0.0) throw std::domain_error("hyperplane_frame: xi must be nonzero");
  Eigen::MatrixXd frame(n, n - 1);
  Eigen::VectorXd u = xi / nrm;
  int kept = 0;
  Eigen::VectorXd w(n);
  for (int i = 0; i < n && kept < n - 1; ++i) {
    w = Eigen::VectorXd::Unit(n, i);
    w -= u.dot(w) * u;
    for (int j = 0; j < kept; ++j) w -= frame.col(j).dot(w) * frame.col(j);
    const double r = w.norm();
    if (r < 1e-6) continue;
    w /= r;
    // second pass stabilizes near-parallel candidates
    w -= u.dot(w) * u;
    for (int j = 0; j < kept; ++j) w -= frame.col(j).dot(w) * frame.col(j);
    frame.col(kept++) = w / w.norm();
  }
  if (kept != n - 1) throw std::runtime_error("hyperplane_frame: completion failed");
  return frame;
}

// Orthogonal projection Pi(xi) of Lambda^m(R^n) onto Lambda^m(H_xi) and its
// complement Psi(xi) = I - Pi(xi), both as square matrices in the ambient
// wedge basis.
inline std::pair<MOperator, MOperator> hyperplane_projections(const Eigen::VectorXd& xi, int m) {
  const int n = static_cast<int>(xi.size());
  if (m < 0 || m > n - 1) throw std::domain_error("hyperplane_projections: need 0 <= m <= n-1");
  const Eigen::MatrixXd frame = hyperplane_frame(xi);
  const MOperator incl = induced_map(frame, m);
  const long c = binomial(n, m);
  MOperator pi{n, n, m, Eigen::MatrixXd(c, c)};
  pi.matrix.noalias() = incl.matrix * incl.matrix.transpose();
  MOperator psi{n, n, m, Eigen::MatrixXd::Identity(c, c) - pi.matrix};
  return {pi, psi};
}

// Surface measure of the unit (d-1)-sphere, 2 pi^{d/2} / Gamma(d/2).
inline double sphere_volume(int d) {
  if (d <= 0) throw std::domain_error("sphere_volume: d must be positive");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

inline double symbol_constant(int n, int k, int m) {
  if (!(0 <= m && m < k && k < n)) throw std::domain_error("symbol: need 0 <= m < k < n");
  return k * sphere_volume(n) * static_cast<double>(binomial(n - 1, m)) /
         (sphere_volume(k) * static_cast<double>(binomial(n - k, m)));
}

// The 0-homogeneous symbol h(xi) = c [Pi(xi)/(k-m) + Psi(xi)/(n-m)],
// symmetric positive definite with eigenvalues c/(k-m) and c/(n-m).
inline MOperator symbol_h(const Eigen::VectorXd& xi, int n, int k, int m) {
  if (static_cast<int>(xi.size()) != n) throw std::domain_error("symbol_h: xi has wrong dimension");
  const double c = symbol_constant(n, k, m);
  auto [pi, psi] = hyperplane_projections(xi, m);
  MOperator h{n, n, m, Eigen::MatrixXd()};
  h.matrix = (c / (k - m)) * pi.matrix + (c / (n - m)) * psi.matrix;
  return h;
}

}  // namespace xkt
