#pragma once

// m-form fields sampled on a regular grid: construction from analytic
// forms, multilinear interpolation, and the L^2 / homogeneous Sobolev
// norms. Storage is row-major over sites with the coefficient index
// fastest, matching the binary container.

#include "xkt/analytic.hpp"
#include "xkt/exterior.hpp"
#include "xkt/fft.hpp"
#include "xkt/grid.hpp"
#include "xkt/parallel.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace xkt {

struct FormField {
  GridSpec grid;
  int degree = 0;
  int ncoeff = 0;
  std::vector<double> data;  // site-major, coefficient-fastest

  FormField() = default;
  FormField(GridSpec grid_, int degree_) : grid(grid_), degree(degree_) {
    if (degree < 0 || degree > grid.dim) throw std::domain_error("FormField: bad degree");
    ncoeff = static_cast<int>(binomial(grid.dim, degree));
    data.assign(static_cast<size_t>(grid.site_count()) * ncoeff, 0.0);
  }

  double* at(std::int64_t site) { return data.data() + site * ncoeff; }
  const double* at(std::int64_t site) const { return data.data() + site * ncoeff; }

  // Multilinear interpolation of each coefficient channel; zero outside
  // [-L, L)^dim (the grid's last cell is closed off against an implicit
  // zero node at +L).
  void interpolate_into(std::span<const double> x, std::span<double> out) const {
    const int dim = grid.dim;
    const double L = grid.half_width;
    const double h = grid.spacing();
    int base[8];
    double frac[8];
    for (int d = 0; d < dim; ++d) {
      if (x[d] < -L || x[d] >= L) {
        for (int c = 0; c < ncoeff; ++c) out[c] = 0.0;
        return;
      }
      const double u = (x[d] + L) / h;
      double fl = std::floor(u);
      if (fl > grid.points - 1) fl = grid.points - 1;
      base[d] = static_cast<int>(fl);
      frac[d] = u - fl;
    }
    for (int c = 0; c < ncoeff; ++c) out[c] = 0.0;
    const int corners = 1 << dim;
    for (int corner = 0; corner < corners; ++corner) {
      double w = 1.0;
      std::int64_t site = 0;
      bool inside = true;
      for (int d = 0; d < dim; ++d) {
        const int bit = (corner >> d) & 1;
        const int j = base[d] + bit;
        w *= bit ? frac[d] : 1.0 - frac[d];
        if (j >= grid.points) {
          inside = false;  // phantom zero node at +L
          break;
        }
        site = site * grid.points + j;
      }
      if (!inside || w == 0.0) continue;
      const double* src = at(site);
      for (int c = 0; c < ncoeff; ++c) out[c] += w * src[c];
    }
  }

  MVector interpolate(std::span<const double> x) const {
    MVector v(grid.dim, degree);
    interpolate_into(x, {v.coeffs.data(), static_cast<size_t>(v.coeffs.size())});
    return v;
  }
};

inline FormField sample_to_grid(const AnalyticForm& form, const GridSpec& grid, int threads = 1) {
  if (form.dim != grid.dim) throw std::domain_error("sample_to_grid: dimension mismatch");
  FormField f(grid, form.degree);
  const std::int64_t sites = grid.site_count();
  parallel_for(sites, threads, [&](std::int64_t begin, std::int64_t end) {
    std::vector<double> x(grid.dim);
    for (std::int64_t s = begin; s < end; ++s) {
      grid.site_coords(s, x);
      form.eval_into(x, {f.at(s), static_cast<size_t>(f.ncoeff)});
    }
  });
  return f;
}

inline double l2_norm_sq(const FormField& f) {
  double acc = 0.0;
  for (double v : f.data) acc += v * v;
  return acc * std::pow(f.grid.spacing(), f.grid.dim);
}

inline double l2_norm(const FormField& f) { return std::sqrt(l2_norm_sq(f)); }

inline double l2_inner(const FormField& f, const FormField& g) {
  if (f.grid != g.grid || f.degree != g.degree) throw std::domain_error("l2_inner: mismatched fields");
  double acc = 0.0;
  for (size_t i = 0; i < f.data.size(); ++i) acc += f.data[i] * g.data[i];
  return acc * std::pow(f.grid.spacing(), f.grid.dim);
}

// Homogeneous Sobolev norm of order s >= 0 through the DFT with physical
// frequency scaling xi = j / (2L). The weight at xi = 0 is 0^{2s}, i.e. 1
// for s = 0 (Parseval) and 0 for s > 0.
inline double hdot_norm(const FormField& f, double s) {
  if (s < 0.0) throw std::domain_error("hdot_norm: s must be >= 0");
  const GridSpec& g = f.grid;
  const std::int64_t sites = g.site_count();
  std::vector<int> dims(g.dim, g.points);
  std::vector<std::complex<double>> hat(sites);
  const double cell_x = std::pow(g.spacing(), g.dim);      // dx
  const double cell_f = std::pow(1.0 / (2.0 * g.half_width), g.dim);  // dxi
  double acc = 0.0;
  std::vector<int> idx(g.dim);
  for (int c = 0; c < f.ncoeff; ++c) {
    for (std::int64_t site = 0; site < sites; ++site) hat[site] = f.at(site)[c];
    fft_inplace(hat, dims, FFTW_FORWARD);
    for (std::int64_t site = 0; site < sites; ++site) {
      g.site_index(site, idx);
      double xi2 = 0.0;
      for (int d = 0; d < g.dim; ++d) {
        const double fr = g.freq(idx[d]);
        xi2 += fr * fr;
      }
      const double w = (xi2 == 0.0) ? (s == 0.0 ? 1.0 : 0.0) : std::pow(xi2, s);
      acc += w * std::norm(hat[site]);
    }
  }
  // |F̂(xi)|^2 dxi with F̂ = dx * DFT.
  return std::sqrt(acc * cell_x * cell_x * cell_f);
}

}  // namespace xkt
