#ifndef ZAK_GRID_HPP
#define ZAK_GRID_HPP

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "errors.hpp"

namespace zak {

using cplx = std::complex<double>;

// Periodic cubic grid [0,L)^d with n points per axis (n a power of two).
// Frequency lattice: xi_m = (2pi/L) m, m in {-n/2, ..., n/2-1} per axis.
// Flat indices are row-major with the FFT layout (index i maps to mode
// m = i for i < n/2 and m = i - n otherwise).
struct Grid {
  int d = 1;
  int n = 8;
  double L = 2.0 * 3.14159265358979323846;
  std::size_t npoints = 8;
  double dk = 1.0; // 2*pi/L
  std::array<std::size_t, 4> stride{}; // stride[axis]; axis d-1 is fastest
  std::vector<double> xi_abs;          // |xi| per flat index

  int mode_of_axis_index(int i) const { return i < n / 2 ? i : i - n; }
  int axis_index_of_mode(int m) const { return m >= 0 ? m : m + n; }

  void modes_of(std::size_t flat, int m[4]) const {
    for (int a = 0; a < d; ++a) {
      int idx = static_cast<int>((flat / stride[a]) % static_cast<std::size_t>(n));
      m[a] = mode_of_axis_index(idx);
    }
  }
  bool representable(const int m[4]) const {
    for (int a = 0; a < d; ++a)
      if (m[a] < -n / 2 || m[a] >= n / 2) return false;
    return true;
  }
  std::size_t index_of(const int m[4]) const {
    std::size_t flat = 0;
    for (int a = 0; a < d; ++a)
      flat += stride[a] * static_cast<std::size_t>(axis_index_of_mode(m[a]));
    return flat;
  }
  void xi_of(std::size_t flat, double xi[4]) const {
    int m[4];
    modes_of(flat, m);
    for (int a = 0; a < d; ++a) xi[a] = dk * m[a];
  }
  double xi2(std::size_t flat) const {
    double a = xi_abs[flat];
    return a * a;
  }
  bool same_as(const Grid& o) const { return d == o.d && n == o.n && L == o.L; }
};

using GridPtr = std::shared_ptr<const Grid>;

// Rejects d outside 1..4 and non-power-of-two n (n >= 8), L <= 0.
GridPtr make_grid(int d, int n, double L);

// Complex scalar field stored by its Fourier coefficients on a Grid.
// Immutable-by-convention value type: operations return new fields.
struct SpectralField {
  GridPtr grid;
  std::vector<cplx> c;

  SpectralField() = default;
  explicit SpectralField(GridPtr g)
      : grid(std::move(g)), c(grid->npoints, cplx(0.0, 0.0)) {}
  SpectralField(GridPtr g, std::vector<cplx> coeffs)
      : grid(std::move(g)), c(std::move(coeffs)) {
    if (c.size() != grid->npoints)
      throw InvalidArgument("SpectralField: coefficient count does not match grid");
  }
  std::size_t size() const { return c.size(); }
};

void check_same_grid(const SpectralField& a, const SpectralField& b);

// DFT convention: forward approximates int f(x) e^{-i x.xi} dx by the Riemann
// sum with weight (L/n)^d; inverse carries L^{-d} so the pair is mutually
// inverse. A unit mode e^{i xi_m x} has coefficient L^d at index m.
SpectralField transform_forward(const GridPtr& g, std::span<const cplx> physical);
std::vector<cplx> transform_inverse(const SpectralField& f);

// Coefficientwise product with symbol(xi). Errors if the symbol is non-finite
// at a lattice point carrying a nonzero coefficient.
SpectralField apply_multiplier(const SpectralField& f,
                               const std::function<cplx(std::span<const double>)>& symbol);

// Named multipliers used throughout (all exact, tabulated from |xi|).
SpectralField apply_D(const SpectralField& f);        // |xi|
SpectralField apply_inv_D(const SpectralField& f);    // 1/|xi|, 0 at xi=0
SpectralField apply_D2(const SpectralField& f);       // |xi|^2
SpectralField apply_bracket_pow(const SpectralField& f, double s); // <xi>^s

// Free propagators: S(t) = e^{i t |xi|^2}, W_alpha(t) = e^{i alpha t |xi|}.
SpectralField apply_S(const SpectralField& f, double t);
SpectralField apply_W(const SpectralField& f, double alpha, double t);

// Pointwise physical product computed on a 2x zero-padded grid and truncated
// back: the exact (dealiased) convolution restricted to the lattice window.
SpectralField dealias_product(const SpectralField& a, const SpectralField& b);

// Fourier coefficients of conj(f): c'_m = conj(c_{-m}) with Nyquist wrap.
SpectralField conj_field(const SpectralField& f);

// Padded-lattice helpers shared with the paraproduct machinery. Physical
// samples live on the 2n-per-axis refinement of the same box.
std::vector<cplx> padded_physical(const SpectralField& f);
SpectralField field_from_padded_physical(const GridPtr& g, std::span<const cplx> phys);

double l2_norm(const SpectralField& f);                 // Parseval, spectral side
double lp_norm_physical(const SpectralField& f, double p); // Riemann sum; p = inf -> sup
double sup_norm_physical(const SpectralField& f);

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(cplx s, const SpectralField& a);
SpectralField operator*(double s, const SpectralField& a);

// First-order state (u, N) at time t with ion sound speed alpha.
struct ZakharovState {
  SpectralField u;
  SpectralField N;
  double t = 0.0;
  double alpha = 1.0;
};

// Builds N = n0 - i D^{-1} n1 / alpha. The zero Fourier mode of n1 must
// vanish (discrete stand-in for n1 in \dot H^{-1}); otherwise errors.
ZakharovState make_state(const SpectralField& u0, const SpectralField& n0,
                         const SpectralField& n1, double alpha, double t = 0.0);

} // namespace zak

#endif
