#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace zak::fft {

namespace {

struct PlanCache {
  std::mutex mtx;
  std::map<std::tuple<int, int, int>, fftw_plan> plans;

  fftw_plan get(int d, int n, int sign) {
    std::lock_guard<std::mutex> lock(mtx);
    auto key = std::make_tuple(d, n, sign);
    auto it = plans.find(key);
    if (it != plans.end()) return it->second;

    // Plan once on scratch buffers; executed later via fftw_execute_dft on
    // caller arrays. FFTW_UNALIGNED keeps new-array execution valid for
    // arbitrary std::vector storage, FFTW_ESTIMATE keeps planning
    // deterministic.
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(n);
    fftw_complex* buf_in = fftw_alloc_complex(total);
    fftw_complex* buf_out = fftw_alloc_complex(total);
    std::vector<int> dims(static_cast<std::size_t>(d), n);
    fftw_plan p = fftw_plan_dft(d, dims.data(), buf_in, buf_out,
                                sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf_in);
    fftw_free(buf_out);
    plans.emplace(key, p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

} // namespace

void dft(int d, int n, const std::complex<double>* in,
         std::complex<double>* out, int sign) {
  fftw_plan p = cache().get(d, n, sign);
  // std::complex<double> is layout-compatible with fftw_complex.
  fftw_execute_dft(p,
                   reinterpret_cast<fftw_complex*>(
                       const_cast<std::complex<double>*>(in)),
                   reinterpret_cast<fftw_complex*>(out));
}

} // namespace zak::fft
