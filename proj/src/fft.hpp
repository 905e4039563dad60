#ifndef ZAK_FFT_HPP
#define ZAK_FFT_HPP

#include <complex>
#include <vector>

namespace zak::fft {

// Unnormalized complex DFT on a d-dimensional cube of n points per axis,
// row-major, out-of-place. sign = -1 is the e^{-i} direction, +1 its inverse.
// Plans are cached per (d, n, sign) and reused; thread-safe.
void dft(int d, int n, const std::complex<double>* in,
         std::complex<double>* out, int sign);

inline void dft(int d, int n, const std::vector<std::complex<double>>& in,
                std::vector<std::complex<double>>& out, int sign) {
  out.resize(in.size());
  dft(d, n, in.data(), out.data(), sign);
}

} // namespace zak::fft

#endif
