#include <fftw3.h>

#include <map>
#include <mutex>

#include "ekss/grid.hpp"
#include "fft_backend.hpp"

namespace ekss::detail {
namespace {

struct Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

// FFTW's planner is not reentrant, so plan creation is serialized. Executing a
// plan on new arrays is thread-safe.
std::mutex planner_mutex;

const Plans& plans_for(int n) {
  static std::map<int, Plans> cache;
  std::lock_guard lock(planner_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  const std::size_t real_size = static_cast<std::size_t>(n) * n * n;
  const std::size_t half_size = static_cast<std::size_t>(n) * n * (n / 2 + 1);
  AlignedVector<double> rbuf(real_size);
  AlignedVector<std::complex<double>> cbuf(half_size);
  auto* cptr = reinterpret_cast<fftw_complex*>(cbuf.data());

  // FFTW is row-major, so the slowest index comes first: (z, y, x).
  Plans p;
  p.forward = fftw_plan_dft_r2c_3d(n, n, n, rbuf.data(), cptr, FFTW_ESTIMATE);
  p.backward = fftw_plan_dft_c2r_3d(n, n, n, cptr, rbuf.data(), FFTW_ESTIMATE);
  return cache.emplace(n, p).first->second;
}

}  // namespace

void r2c(int n, const double* in, std::complex<double>* out) {
  const Plans& p = plans_for(n);
  fftw_execute_dft_r2c(p.forward, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void c2r(int n, std::complex<double>* in, double* out) {
  const Plans& p = plans_for(n);
  fftw_execute_dft_c2r(p.backward, reinterpret_cast<fftw_complex*>(in), out);
}

}  // namespace ekss::detail
