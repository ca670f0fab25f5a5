#pragma once

// Thin FFTW3 wrapper: in-place complex DFTs of row-major multidimensional
// arrays. Plans are created with FFTW_ESTIMATE | FFTW_UNALIGNED so the
// chosen algorithm depends only on the transform size, keeping outputs
// bit-reproducible run to run.

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace xkt {

namespace detail {
inline std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace detail

// sign: FFTW_FORWARD (-1) or FFTW_BACKWARD (+1). Unnormalized, like FFTW.
inline void fft_inplace(std::vector<std::complex<double>>& data, const std::vector<int>& dims,
                        int sign) {
  std::int64_t total = 1;
  for (int d : dims) total *= d;
  if (total != static_cast<std::int64_t>(data.size()))
    throw std::domain_error("fft_inplace: size mismatch");
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = nullptr;
  {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    plan = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), ptr, ptr, sign,
                         FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  if (!plan) throw std::runtime_error("fft_inplace: planner failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
}

}  // namespace xkt
