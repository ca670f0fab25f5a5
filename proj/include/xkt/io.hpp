#pragma once

// Self-describing little-endian binary containers for grid fields and
// sinograms, plus a CSV export for plotting. Doubles are written raw; a
// runtime check refuses big-endian hosts.

#include "xkt/form_field.hpp"
#include "xkt/grid.hpp"
#include "xkt/xray.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>

namespace xkt {

namespace detail {

inline void require_little_endian() {
  if constexpr (std::endian::native != std::endian::little)
    throw std::runtime_error("binary io: little-endian host required");
}

template <class T>
void write_pod(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_pod(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("binary io: truncated stream");
  return v;
}

inline void write_magic(std::ostream& os, const char (&magic)[9]) { os.write(magic, 8); }

inline void check_magic(std::istream& is, const char (&magic)[9]) {
  char buf[8];
  is.read(buf, 8);
  if (!is || std::memcmp(buf, magic, 8) != 0)
    throw std::runtime_error("binary io: bad magic");
}

}  // namespace detail

inline void write_form_field(const FormField& f, std::ostream& os) {
  detail::require_little_endian();
  detail::write_magic(os, "XKTFORM1");
  detail::write_pod<std::uint32_t>(os, f.grid.dim);
  detail::write_pod<std::uint32_t>(os, f.degree);
  detail::write_pod<std::uint32_t>(os, f.grid.points);
  detail::write_pod<double>(os, f.grid.half_width);
  detail::write_pod<std::uint32_t>(os, f.ncoeff);
  detail::write_pod<std::uint64_t>(os, f.data.size());
  os.write(reinterpret_cast<const char*>(f.data.data()),
           static_cast<std::streamsize>(f.data.size() * sizeof(double)));
  if (!os) throw std::runtime_error("write_form_field: write failed");
}

inline FormField read_form_field(std::istream& is) {
  detail::require_little_endian();
  detail::check_magic(is, "XKTFORM1");
  const auto dim = detail::read_pod<std::uint32_t>(is);
  const auto degree = detail::read_pod<std::uint32_t>(is);
  const auto points = detail::read_pod<std::uint32_t>(is);
  const auto half_width = detail::read_pod<double>(is);
  const auto ncoeff = detail::read_pod<std::uint32_t>(is);
  const auto count = detail::read_pod<std::uint64_t>(is);
  FormField f(GridSpec(static_cast<int>(dim), half_width, static_cast<int>(points)),
              static_cast<int>(degree));
  if (f.ncoeff != static_cast<int>(ncoeff) || f.data.size() != count)
    throw std::runtime_error("read_form_field: inconsistent header");
  is.read(reinterpret_cast<char*>(f.data.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (!is) throw std::runtime_error("read_form_field: truncated payload");
  return f;
}

inline void write_form_field(const FormField& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_form_field: cannot open " + path);
  write_form_field(f, os);
}

inline FormField read_form_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_form_field: cannot open " + path);
  return read_form_field(is);
}

// Same container with a per-plane table of frames and weights.
inline void write_sinogram(const Sinogram& sino, std::ostream& os) {
  detail::require_little_endian();
  detail::write_magic(os, "XKTSINO1");
  detail::write_pod<std::uint32_t>(os, sino.planes.n);
  detail::write_pod<std::uint32_t>(os, sino.planes.k);
  detail::write_pod<std::uint32_t>(os, sino.degree);
  detail::write_pod<std::uint64_t>(os, sino.planes.size());
  detail::write_pod<std::uint32_t>(os, sino.kgrid.points);
  detail::write_pod<double>(os, sino.kgrid.half_width);
  detail::write_pod<std::uint8_t>(os, sino.planes.seed.has_value() ? 1 : 0);
  detail::write_pod<std::uint64_t>(os, sino.planes.seed.value_or(0));
  for (size_t p = 0; p < sino.planes.size(); ++p) {
    detail::write_pod<double>(os, sino.planes.weights[p]);
    const Eigen::MatrixXd& fr = sino.planes.planes[p].frame;
    for (int r = 0; r < fr.rows(); ++r)
      for (int c = 0; c < fr.cols(); ++c) detail::write_pod<double>(os, fr(r, c));
  }
  for (const auto& field : sino.plane_fields)
    os.write(reinterpret_cast<const char*>(field.data.data()),
             static_cast<std::streamsize>(field.data.size() * sizeof(double)));
  if (!os) throw std::runtime_error("write_sinogram: write failed");
}

inline Sinogram read_sinogram(std::istream& is) {
  detail::require_little_endian();
  detail::check_magic(is, "XKTSINO1");
  const int n = static_cast<int>(detail::read_pod<std::uint32_t>(is));
  const int k = static_cast<int>(detail::read_pod<std::uint32_t>(is));
  const int m = static_cast<int>(detail::read_pod<std::uint32_t>(is));
  const auto nplanes = detail::read_pod<std::uint64_t>(is);
  const int points = static_cast<int>(detail::read_pod<std::uint32_t>(is));
  const double half_width = detail::read_pod<double>(is);
  const bool has_seed = detail::read_pod<std::uint8_t>(is) != 0;
  const auto seed = detail::read_pod<std::uint64_t>(is);
  Sinogram sino;
  sino.planes.n = n;
  sino.planes.k = k;
  sino.degree = m;
  sino.kgrid = GridSpec(k, half_width, points);
  if (has_seed) sino.planes.seed = seed;
  for (std::uint64_t p = 0; p < nplanes; ++p) {
    sino.planes.weights.push_back(detail::read_pod<double>(is));
    Eigen::MatrixXd fr(n, k);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < k; ++c) fr(r, c) = detail::read_pod<double>(is);
    sino.planes.planes.emplace_back(n, k, std::move(fr));
  }
  for (std::uint64_t p = 0; p < nplanes; ++p) {
    FormField field(sino.kgrid, m);
    is.read(reinterpret_cast<char*>(field.data.data()),
            static_cast<std::streamsize>(field.data.size() * sizeof(double)));
    if (!is) throw std::runtime_error("read_sinogram: truncated payload");
    sino.plane_fields.push_back(std::move(field));
  }
  return sino;
}

inline void write_sinogram(const Sinogram& sino, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_sinogram: cannot open " + path);
  write_sinogram(sino, os);
}

inline Sinogram read_sinogram(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_sinogram: cannot open " + path);
  return read_sinogram(is);
}

// Site coordinates followed by the coefficient channels, one site per row.
inline void write_form_field_csv(const FormField& f, std::ostream& os) {
  const GridSpec& g = f.grid;
  for (int d = 0; d < g.dim; ++d) os << "x" << d << ",";
  for (int c = 0; c < f.ncoeff; ++c) os << "c" << c << (c + 1 < f.ncoeff ? "," : "\n");
  std::vector<double> x(g.dim);
  os.precision(17);
  for (std::int64_t s = 0; s < g.site_count(); ++s) {
    g.site_coords(s, x);
    for (int d = 0; d < g.dim; ++d) os << x[d] << ",";
    const double* v = f.at(s);
    for (int c = 0; c < f.ncoeff; ++c) os << v[c] << (c + 1 < f.ncoeff ? "," : "\n");
  }
}

inline void write_form_field_csv(const FormField& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("write_form_field_csv: cannot open " + path);
  write_form_field_csv(f, os);
}

}  // namespace xkt
