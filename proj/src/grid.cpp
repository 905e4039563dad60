#include "grid.hpp"

#include <cmath>
#include <cstring>

#include "fft.hpp"

namespace zak {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

std::size_t ipow(int n, int d) {
  std::size_t r = 1;
  for (int i = 0; i < d; ++i) r *= static_cast<std::size_t>(n);
  return r;
}

} // namespace

GridPtr make_grid(int d, int n, double L) {
  if (d < 1 || d > 4)
    throw InvalidArgument("make_grid: dimension must be in 1..4, got " + std::to_string(d));
  if (n < 8 || !is_pow2(n))
    throw InvalidArgument("make_grid: n must be a power of two >= 8, got " + std::to_string(n));
  if (!(L > 0.0) || !std::isfinite(L))
    throw InvalidArgument("make_grid: box side L must be positive and finite");

  auto g = std::make_shared<Grid>();
  g->d = d;
  g->n = n;
  g->L = L;
  g->npoints = ipow(n, d);
  g->dk = 2.0 * M_PI / L;
  std::size_t s = 1;
  for (int a = d - 1; a >= 0; --a) {
    g->stride[a] = s;
    s *= static_cast<std::size_t>(n);
  }
  g->xi_abs.resize(g->npoints);
  for (std::size_t i = 0; i < g->npoints; ++i) {
    int m[4];
    g->modes_of(i, m);
    double s2 = 0.0;
    for (int a = 0; a < d; ++a) s2 += static_cast<double>(m[a]) * m[a];
    g->xi_abs[i] = g->dk * std::sqrt(s2);
  }
  return g;
}

void check_same_grid(const SpectralField& a, const SpectralField& b) {
  if (!a.grid || !b.grid || !a.grid->same_as(*b.grid))
    throw InvalidArgument("fields live on different grids");
}

SpectralField transform_forward(const GridPtr& g, std::span<const cplx> physical) {
  if (physical.size() != g->npoints)
    throw InvalidArgument("transform_forward: sample count " + std::to_string(physical.size()) +
                          " does not match grid (" + std::to_string(g->npoints) + ")");
  SpectralField f(g);
  fft::dft(g->d, g->n, physical.data(), f.c.data(), -1);
  const double w = std::pow(g->L / g->n, g->d);
  for (auto& z : f.c) z *= w;
  return f;
}

std::vector<cplx> transform_inverse(const SpectralField& f) {
  const Grid& g = *f.grid;
  std::vector<cplx> phys(g.npoints);
  fft::dft(g.d, g.n, f.c.data(), phys.data(), +1);
  const double w = std::pow(g.L, -g.d);
  for (auto& z : phys) z *= w;
  return phys;
}

SpectralField apply_multiplier(const SpectralField& f,
                               const std::function<cplx(std::span<const double>)>& symbol) {
  const Grid& g = *f.grid;
  SpectralField out(f.grid);
  double xi[4];
  for (std::size_t i = 0; i < g.npoints; ++i) {
    g.xi_of(i, xi);
    cplx s = symbol(std::span<const double>(xi, static_cast<std::size_t>(g.d)));
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      if (f.c[i] != cplx(0.0, 0.0))
        throw InvalidArgument("apply_multiplier: non-finite symbol at a lattice point "
                              "with nonzero coefficient");
      out.c[i] = cplx(0.0, 0.0);
      continue;
    }
    out.c[i] = s * f.c[i];
  }
  return out;
}

SpectralField apply_D(const SpectralField& f) {
  SpectralField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) out.c[i] = f.grid->xi_abs[i] * f.c[i];
  return out;
}

SpectralField apply_inv_D(const SpectralField& f) {
  SpectralField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double a = f.grid->xi_abs[i];
    out.c[i] = (a == 0.0) ? cplx(0.0, 0.0) : f.c[i] / a;
  }
  return out;
}

SpectralField apply_D2(const SpectralField& f) {
  SpectralField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) out.c[i] = f.grid->xi2(i) * f.c[i];
  return out;
}

SpectralField apply_bracket_pow(const SpectralField& f, double s) {
  SpectralField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double b = 1.0 + f.grid->xi2(i);
    out.c[i] = std::pow(b, 0.5 * s) * f.c[i];
  }
  return out;
}

SpectralField apply_S(const SpectralField& f, double t) {
  SpectralField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double ph = t * f.grid->xi2(i);
    out.c[i] = cplx(std::cos(ph), std::sin(ph)) * f.c[i];
  }
  return out;
}

SpectralField apply_W(const SpectralField& f, double alpha, double t) {
  if (!(alpha > 0.0))
    throw InvalidArgument("apply_W: alpha must be positive");
  SpectralField out(f.grid);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double ph = alpha * t * f.grid->xi_abs[i];
    out.c[i] = cplx(std::cos(ph), std::sin(ph)) * f.c[i];
  }
  return out;
}

namespace {

// Embed coefficients into the (2n)^d padded spectrum (same box, finer lattice).
std::vector<cplx> pad_spectrum(const SpectralField& f) {
  const Grid& g = *f.grid;
  const int n2 = 2 * g.n;
  std::vector<cplx> big(ipow(n2, g.d), cplx(0.0, 0.0));
  std::size_t big_stride[4];
  std::size_t s = 1;
  for (int a = g.d - 1; a >= 0; --a) {
    big_stride[a] = s;
    s *= static_cast<std::size_t>(n2);
  }
  int m[4];
  for (std::size_t i = 0; i < g.npoints; ++i) {
    g.modes_of(i, m);
    std::size_t flat = 0;
    for (int a = 0; a < g.d; ++a) {
      int idx = m[a] >= 0 ? m[a] : m[a] + n2;
      flat += big_stride[a] * static_cast<std::size_t>(idx);
    }
    big[flat] = f.c[i];
  }
  return big;
}

} // namespace

std::vector<cplx> padded_physical(const SpectralField& f) {
  const Grid& g = *f.grid;
  std::vector<cplx> big = pad_spectrum(f);
  std::vector<cplx> phys(big.size());
  fft::dft(g.d, 2 * g.n, big.data(), phys.data(), +1);
  const double w = std::pow(g.L, -g.d);
  for (auto& z : phys) z *= w;
  return phys;
}

SpectralField field_from_padded_physical(const GridPtr& g, std::span<const cplx> phys) {
  const int n2 = 2 * g->n;
  std::vector<cplx> big(phys.size());
  fft::dft(g->d, n2, phys.data(), big.data(), -1);
  const double w = std::pow(g->L / n2, g->d);
  std::size_t big_stride[4];
  std::size_t s = 1;
  for (int a = g->d - 1; a >= 0; --a) {
    big_stride[a] = s;
    s *= static_cast<std::size_t>(n2);
  }
  SpectralField out(g);
  int m[4];
  for (std::size_t i = 0; i < g->npoints; ++i) {
    g->modes_of(i, m);
    std::size_t flat = 0;
    for (int a = 0; a < g->d; ++a) {
      int idx = m[a] >= 0 ? m[a] : m[a] + n2;
      flat += big_stride[a] * static_cast<std::size_t>(idx);
    }
    out.c[i] = w * big[flat];
  }
  return out;
}

SpectralField dealias_product(const SpectralField& a, const SpectralField& b) {
  check_same_grid(a, b);
  std::vector<cplx> pa = padded_physical(a);
  std::vector<cplx> pb = padded_physical(b);
  for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
  return field_from_padded_physical(a.grid, pa);
}

SpectralField conj_field(const SpectralField& f) {
  const Grid& g = *f.grid;
  SpectralField out(f.grid);
  int m[4], mneg[4];
  for (std::size_t i = 0; i < g.npoints; ++i) {
    g.modes_of(i, m);
    for (int a = 0; a < g.d; ++a) {
      int neg = -m[a];
      if (neg == g.n / 2) neg = -g.n / 2; // Nyquist maps to itself
      mneg[a] = neg;
    }
    out.c[i] = std::conj(f.c[g.index_of(mneg)]);
  }
  return out;
}

double l2_norm(const SpectralField& f) {
  double s = 0.0;
  for (const auto& z : f.c) s += std::norm(z);
  return std::sqrt(s * std::pow(f.grid->L, -f.grid->d));
}

double lp_norm_physical(const SpectralField& f, double p) {
  const Grid& g = *f.grid;
  std::vector<cplx> phys = transform_inverse(f);
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& z : phys) m = std::max(m, std::abs(z));
    return m;
  }
  if (!(p >= 1.0))
    throw InvalidArgument("lp_norm_physical: p must be >= 1 or inf");
  double s = 0.0;
  for (const auto& z : phys) s += std::pow(std::abs(z), p);
  return std::pow(s * std::pow(g.L / g.n, g.d), 1.0 / p);
}

double sup_norm_physical(const SpectralField& f) {
  return lp_norm_physical(f, std::numeric_limits<double>::infinity());
}

SpectralField operator+(const SpectralField& a, const SpectralField& b) {
  check_same_grid(a, b);
  SpectralField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out.c[i] = a.c[i] + b.c[i];
  return out;
}

SpectralField operator-(const SpectralField& a, const SpectralField& b) {
  check_same_grid(a, b);
  SpectralField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out.c[i] = a.c[i] - b.c[i];
  return out;
}

SpectralField operator*(cplx s, const SpectralField& a) {
  SpectralField out(a.grid);
  for (std::size_t i = 0; i < a.size(); ++i) out.c[i] = s * a.c[i];
  return out;
}

SpectralField operator*(double s, const SpectralField& a) {
  return cplx(s, 0.0) * a;
}

ZakharovState make_state(const SpectralField& u0, const SpectralField& n0,
                         const SpectralField& n1, double alpha, double t) {
  check_same_grid(u0, n0);
  check_same_grid(u0, n1);
  if (!(alpha > 0.0))
    throw InvalidArgument("make_state: alpha must be positive");
  // n1 must carry no mean: the D^{-1} convention maps xi=0 to 0, which would
  // silently drop it otherwise.
  double scale = 0.0;
  for (const auto& z : n1.c) scale = std::max(scale, std::abs(z));
  std::size_t zero_idx = 0; // mode m = 0 has flat index 0 in FFT layout
  if (std::abs(n1.c[zero_idx]) > 1e-12 * std::max(1.0, scale))
    throw InvalidArgument("make_state: zero Fourier mode of n1 must vanish "
                          "(n1 is \\dot H^{-1} data)");
  SpectralField Ni = apply_inv_D(n1);
  ZakharovState st;
  st.u = u0;
  st.N = n0 - cplx(0.0, 1.0 / alpha) * Ni;
  st.t = t;
  st.alpha = alpha;
  return st;
}

} // namespace zak
