#pragma once

// Regular grids over the half-open box [-L, L)^dim with nodes
// x_j = -L + j * spacing, spacing = 2L / N.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace xkt {

struct GridSpec {
  int dim = 0;
  double half_width = 0.0;  // L
  int points = 0;           // N per axis

  GridSpec() = default;
  GridSpec(int dim_, double half_width_, int points_)
      : dim(dim_), half_width(half_width_), points(points_) {
    validate();
  }

  void validate() const {
    if (dim < 1 || dim > 8) throw std::domain_error("GridSpec: dim must be in [1, 8]");
    if (half_width <= 0.0) throw std::domain_error("GridSpec: half_width must be > 0");
    if (points < 8 || points % 2 != 0) throw std::domain_error("GridSpec: points must be even and >= 8");
  }

  double spacing() const { return 2.0 * half_width / points; }

  std::int64_t site_count() const {
    std::int64_t c = 1;
    for (int d = 0; d < dim; ++d) c *= points;
    return c;
  }

  double coord(int j) const { return -half_width + j * spacing(); }

  // Row-major decode: axis 0 slowest, last axis fastest.
  void site_index(std::int64_t site, std::span<int> idx) const {
    for (int d = dim - 1; d >= 0; --d) {
      idx[d] = static_cast<int>(site % points);
      site /= points;
    }
  }

  void site_coords(std::int64_t site, std::span<double> x) const {
    for (int d = dim - 1; d >= 0; --d) {
      x[d] = coord(static_cast<int>(site % points));
      site /= points;
    }
  }

  // Signed frequency index for DFT bin t: t for t < N/2, t - N otherwise.
  int signed_freq(int t) const { return t < points / 2 ? t : t - points; }

  // Physical frequency of DFT bin t along one axis, j / (2L).
  double freq(int t) const { return signed_freq(t) / (2.0 * half_width); }

  bool operator==(const GridSpec& other) const = default;
};

}  // namespace xkt
