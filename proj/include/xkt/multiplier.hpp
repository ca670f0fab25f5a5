#pragma once

// The matrix-valued Fourier multiplier |xi|^{n-k} h(xi) and its grid
// application by FFT. The symbol value at xi = 0 is the zero matrix, the
// continuous extension (|xi|^{n-k} -> 0 while h stays bounded); as a
// consequence the grid mean of Q gamma is zero.

#include "xkt/exterior.hpp"
#include "xkt/fft.hpp"
#include "xkt/form_field.hpp"
#include "xkt/grid.hpp"
#include "xkt/parallel.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace xkt {

struct MultiplierSpec {
  int n = 0;
  int k = 0;
  int m = 0;

  void validate() const {
    if (!(0 <= m && m < k && k < n)) throw std::domain_error("MultiplierSpec: need 0 <= m < k < n");
  }
};

namespace detail {

// Allocation-free evaluation of |xi|^{n-k} h(xi) for the per-frequency hot
// loop. Basis tables are precomputed once; the Gram-Schmidt completion
// matches hyperplane_frame.
struct SymbolEvaluator {
  int n, k, m;
  double c;                        // symbol constant
  long nc;                         // C(n, m)
  long nc_sub;                     // C(n-1, m)
  std::vector<int> amb_basis;      // C(n,m) x m, flattened
  std::vector<int> sub_basis;     // C(n-1,m) x m, flattened
  Eigen::MatrixXd frame;           // n x (n-1)
  Eigen::MatrixXd lam;             // nc x nc_sub
  Eigen::MatrixXd h;               // nc x nc
  Eigen::VectorXd u;

  SymbolEvaluator(int n_, int k_, int m_)
      : n(n_), k(k_), m(m_), c(symbol_constant(n_, k_, m_)), nc(binomial(n_, m_)),
        nc_sub(binomial(n_ - 1, m_)), frame(n_, n_ - 1), lam(nc, nc_sub), h(nc, nc),
        u(n_) {
    for (const auto& mi : basis_indices(n, m))
      amb_basis.insert(amb_basis.end(), mi.entries.begin(), mi.entries.end());
    for (const auto& mi : basis_indices(n - 1, m))
      sub_basis.insert(sub_basis.end(), mi.entries.begin(), mi.entries.end());
  }

  double minor_det(const int* rows, const int* cols, int order) const {
    if (order == 0) return 1.0;
    if (order == 1) return frame(rows[0], cols[0]);
    if (order == 2)
      return frame(rows[0], cols[0]) * frame(rows[1], cols[1]) -
             frame(rows[0], cols[1]) * frame(rows[1], cols[0]);
    // Laplace expansion along the first row.
    double det = 0.0;
    int sub_cols[8];
    double sign = 1.0;
    for (int j = 0; j < order; ++j) {
      int t = 0;
      for (int jj = 0; jj < order; ++jj)
        if (jj != j) sub_cols[t++] = cols[jj];
      det += sign * frame(rows[0], cols[j]) * minor_det(rows + 1, sub_cols, order - 1);
      sign = -sign;
    }
    return det;
  }

  // Fills this->h with |xi|^{n-k} h(xi); returns false (h untouched) when
  // xi = 0, where the multiplier is the zero matrix.
  bool eval(const double* xi) {
    double norm2 = 0.0;
    for (int d = 0; d < n; ++d) norm2 += xi[d] * xi[d];
    if (norm2 == 0.0) return false;
    const double inv = 1.0 / std::sqrt(norm2);
    for (int d = 0; d < n; ++d) u[d] = xi[d] * inv;

    // Gram-Schmidt completion of u by the standard basis, dropping u.
    int kept = 0;
    for (int i = 0; i < n && kept < n - 1; ++i) {
      auto col = frame.col(kept);
      col.setZero();
      col[i] = 1.0;
      col -= u.dot(col) * u;
      for (int j = 0; j < kept; ++j) col -= frame.col(j).dot(col) * frame.col(j);
      const double r = col.norm();
      if (r < 1e-6) continue;
      col /= r;
      col -= u.dot(col) * u;
      for (int j = 0; j < kept; ++j) col -= frame.col(j).dot(col) * frame.col(j);
      col /= col.norm();
      ++kept;
    }

    for (long i = 0; i < nc; ++i)
      for (long j = 0; j < nc_sub; ++j)
        lam(i, j) = minor_det(amb_basis.data() + i * m, sub_basis.data() + j * m, m);

    const double radial = std::pow(norm2, 0.5 * (n - k));
    const double a = radial * c / (k - m);   // on Lambda^m(H_xi)
    const double b = radial * c / (n - m);   // on the orthocomplement
    h.noalias() = lam * lam.transpose();
    h *= (a - b);
    h.diagonal().array() += b;
    return true;
  }
};

}  // namespace detail

// |xi|^{n-k} h(xi) for xi != 0 and the zero matrix at xi = 0.
inline MOperator multiplier_matrix(const Eigen::VectorXd& xi, const MultiplierSpec& spec) {
  spec.validate();
  if (static_cast<int>(xi.size()) != spec.n)
    throw std::domain_error("multiplier_matrix: xi has wrong dimension");
  detail::SymbolEvaluator ev(spec.n, spec.k, spec.m);
  MOperator op{spec.n, spec.n, spec.m, Eigen::MatrixXd::Zero(ev.nc, ev.nc)};
  if (ev.eval(xi.data())) op.matrix = ev.h;
  return op;
}

// Apply Q by FFT: pad by `padding` per axis (wrap-around control for the
// slowly decaying kernel), transform each coefficient channel, multiply by
// the symbol at each discrete frequency, invert, crop, and drop the
// imaginary residue after asserting it is negligible.
inline FormField apply_Q(const FormField& gamma, const MultiplierSpec& spec, int padding = 2,
                         int threads = 1) {
  spec.validate();
  if (gamma.grid.dim != spec.n) throw std::domain_error("apply_Q: grid dimension mismatch");
  if (gamma.degree != spec.m) throw std::domain_error("apply_Q: degree mismatch");
  if (padding < 1) throw std::domain_error("apply_Q: padding must be >= 1");

  const GridSpec& g = gamma.grid;
  const GridSpec pg(g.dim, g.half_width * padding, g.points * padding);
  const int nc = gamma.ncoeff;
  const std::int64_t psites = pg.site_count();
  const int offset = (pg.points - g.points) / 2;

  std::vector<std::vector<std::complex<double>>> ch(nc);
  for (int c = 0; c < nc; ++c) ch[c].assign(psites, {0.0, 0.0});

  const std::int64_t sites = g.site_count();
  std::vector<int> idx(g.dim);
  for (std::int64_t s = 0; s < sites; ++s) {
    g.site_index(s, idx);
    std::int64_t ps = 0;
    for (int d = 0; d < g.dim; ++d) ps = ps * pg.points + (idx[d] + offset);
    const double* src = gamma.at(s);
    for (int c = 0; c < nc; ++c) ch[c][ps] = src[c];
  }

  std::vector<int> dims(g.dim, pg.points);
  for (int c = 0; c < nc; ++c) fft_inplace(ch[c], dims, FFTW_FORWARD);

  parallel_for(psites, threads, [&](std::int64_t begin, std::int64_t end) {
    detail::SymbolEvaluator ev(spec.n, spec.k, spec.m);
    double xi[8];
    double re[128], im[128], ore[128], oim[128];
    std::vector<int> fidx(g.dim);
    for (std::int64_t s = begin; s < end; ++s) {
      pg.site_index(s, fidx);
      for (int d = 0; d < g.dim; ++d) xi[d] = pg.freq(fidx[d]);
      if (!ev.eval(xi)) {
        for (int c = 0; c < nc; ++c) ch[c][s] = {0.0, 0.0};
        continue;
      }
      for (int c = 0; c < nc; ++c) {
        re[c] = ch[c][s].real();
        im[c] = ch[c][s].imag();
      }
      for (int a = 0; a < nc; ++a) {
        double sr = 0.0, si = 0.0;
        for (int b = 0; b < nc; ++b) {
          const double hv = ev.h(a, b);
          sr += hv * re[b];
          si += hv * im[b];
        }
        ore[a] = sr;
        oim[a] = si;
      }
      for (int c = 0; c < nc; ++c) ch[c][s] = {ore[c], oim[c]};
    }
  });

  for (int c = 0; c < nc; ++c) fft_inplace(ch[c], dims, FFTW_BACKWARD);

  FormField out(g, spec.m);
  const double scale = 1.0 / static_cast<double>(psites);
  double max_abs = 0.0, max_imag = 0.0;
  for (std::int64_t s = 0; s < sites; ++s) {
    g.site_index(s, idx);
    std::int64_t ps = 0;
    for (int d = 0; d < g.dim; ++d) ps = ps * pg.points + (idx[d] + offset);
    double* dst = out.at(s);
    for (int c = 0; c < nc; ++c) {
      const std::complex<double> v = ch[c][ps] * scale;
      dst[c] = v.real();
      max_abs = std::max(max_abs, std::abs(v.real()));
      max_imag = std::max(max_imag, std::abs(v.imag()));
    }
  }
  if (max_imag > 1e-9 * std::max(1.0, max_abs))
    throw std::runtime_error("apply_Q: non-negligible imaginary residue");
  return out;
}

// Pointwise decay diagnostic for fields produced by Q: the weighted
// magnitude |gamma(x)| <x>^dim over the grid and its radial max-profile.
struct DecayReport {
  double max_ratio = 0.0;
  std::vector<double> radii;    // bin centers
  std::vector<double> profile;  // max ratio per radial bin
};

inline DecayReport decay_check(const FormField& gamma) {
  const GridSpec& g = gamma.grid;
  const double h = g.spacing();
  const int nbins = static_cast<int>(std::ceil(g.half_width * std::sqrt(g.dim) / h)) + 1;
  DecayReport rep;
  rep.radii.resize(nbins);
  rep.profile.assign(nbins, 0.0);
  for (int b = 0; b < nbins; ++b) rep.radii[b] = (b + 0.5) * h;
  const std::int64_t sites = g.site_count();
  std::vector<double> x(g.dim);
  for (std::int64_t s = 0; s < sites; ++s) {
    g.site_coords(s, x);
    double r2 = 0.0;
    for (int d = 0; d < g.dim; ++d) r2 += x[d] * x[d];
    double mag2 = 0.0;
    const double* v = gamma.at(s);
    for (int c = 0; c < gamma.ncoeff; ++c) mag2 += v[c] * v[c];
    const double ratio = std::sqrt(mag2) * std::pow(1.0 + r2, 0.5 * g.dim);
    const int bin = std::min(nbins - 1, static_cast<int>(std::sqrt(r2) / h));
    rep.profile[bin] = std::max(rep.profile[bin], ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  return rep;
}

}  // namespace xkt
