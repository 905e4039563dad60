#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "checkpoint.hpp"
#include "grid.hpp"
#include "test_util.hpp"

using namespace zak;
using namespace zak::test;

TEST_CASE("make_grid contract") {
  auto g = make_grid(1, 8, 2.0 * M_PI);
  CHECK(g->dk == doctest::Approx(1.0));
  CHECK(g->npoints == 8);
  // frequencies {-4,...,3}
  int m[4];
  std::vector<int> modes;
  for (std::size_t i = 0; i < g->npoints; ++i) {
    g->modes_of(i, m);
    modes.push_back(m[0]);
  }
  std::sort(modes.begin(), modes.end());
  CHECK(modes.front() == -4);
  CHECK(modes.back() == 3);

  CHECK(make_grid(4, 16, 50.0)->npoints == 65536);

  CHECK_THROWS_AS(make_grid(5, 8, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(0, 8, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(2, 12, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(2, 4, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid(2, 16, -1.0), InvalidArgument);
}

TEST_CASE("frequency lattice symmetry") {
  auto g = make_grid(3, 16, 5.0);
  int m[4], mm[4];
  for (std::size_t i = 0; i < g->npoints; ++i) {
    g->modes_of(i, m);
    bool has_neg = true;
    for (int a = 0; a < g->d; ++a) {
      mm[a] = -m[a];
      if (mm[a] >= g->n / 2) has_neg = false;
    }
    if (!has_neg) continue;
    double xi[4], xin[4];
    g->xi_of(i, xi);
    g->xi_of(g->index_of(mm), xin);
    for (int a = 0; a < g->d; ++a) CHECK(xin[a] == -xi[a]);
  }
}

TEST_CASE("transform conventions: constant and single mode") {
  auto g = make_grid(2, 16, 3.0);
  const double Ld = std::pow(g->L, g->d);

  std::vector<cplx> ones(g->npoints, cplx(1.0, 0.0));
  auto f = transform_forward(g, ones);
  CHECK(std::abs(f.c[0] - Ld) <= 1e-12 * Ld);
  double off = 0.0;
  for (std::size_t i = 1; i < f.size(); ++i) off = std::max(off, std::abs(f.c[i]));
  CHECK(off <= 1e-12 * Ld);

  int m[4] = {3, -5, 0, 0};
  auto mode = unit_mode_physical(g, m);
  auto fm = transform_forward(g, mode);
  std::size_t mi = g->index_of(m);
  CHECK(std::abs(fm.c[mi] - Ld) <= 1e-12 * Ld);
}

TEST_CASE("transform matches direct DFT oracle (d=1,2, n=8)") {
  for (int d : {1, 2}) {
    auto g = make_grid(d, 8, 2.7);
    auto phys = random_physical(g, 11 + d);
    auto fast = transform_forward(g, phys);
    auto slow = dft_oracle(g, phys);
    CHECK(rel_l2_error(fast, slow) <= 1e-12);
  }
}

TEST_CASE("round trip identity on all supported sizes") {
  struct Cfg { int d, n; };
  for (auto [d, n] : {Cfg{1, 16}, Cfg{2, 16}, Cfg{3, 16}, Cfg{4, 16}}) {
    auto g = make_grid(d, n, 6.0);
    auto phys = random_physical(g, 100 + d);
    auto f = transform_forward(g, phys);
    auto back = transform_inverse(f);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < phys.size(); ++i) {
      num += std::norm(back[i] - phys[i]);
      den += std::norm(phys[i]);
    }
    CHECK(std::sqrt(num / den) <= 1e-13);
  }
  auto g = make_grid(2, 8, 1.0);
  std::vector<cplx> bad(17);
  CHECK_THROWS_AS(transform_forward(g, bad), InvalidArgument);
}

TEST_CASE("apply_multiplier basics") {
  auto g = make_grid(2, 16, 2.0 * M_PI);
  auto f = random_coeff_field(g, 5);

  auto id = apply_multiplier(f, [](std::span<const double>) { return cplx(1.0); });
  CHECK(rel_l2_error(id, f) == 0.0);

  auto once = apply_D(apply_D(f));
  auto twice = apply_D2(f);
  CHECK(rel_l2_error(once, twice) <= 1e-14);

  int m[4] = {2, 1, 0, 0};
  SpectralField mode(g);
  mode.c[g->index_of(m)] = 1.0;
  auto Dm = apply_D(mode);
  CHECK(std::abs(Dm.c[g->index_of(m)] - g->dk * std::sqrt(5.0)) <= 1e-14);

  // linearity
  auto h = random_coeff_field(g, 6);
  auto sym = [](std::span<const double> xi) {
    double s = 0.0;
    for (double x : xi) s += x * x;
    return cplx(std::cos(s), 0.3 * s);
  };
  auto lhs = apply_multiplier(2.0 * f + cplx(0, 1) * h, sym);
  auto rhs = 2.0 * apply_multiplier(f, sym) + cplx(0, 1) * apply_multiplier(h, sym);
  CHECK(rel_l2_error(lhs, rhs) <= 1e-13);

  // non-finite symbol on a carried mode errors; harmless if coefficient is 0
  auto inv = [](std::span<const double> xi) {
    double s = 0.0;
    for (double x : xi) s += x * x;
    return cplx(1.0 / std::sqrt(s));
  };
  SpectralField with_mean(g);
  with_mean.c[0] = 1.0;
  CHECK_THROWS_AS(apply_multiplier(with_mean, inv), InvalidArgument);
  SpectralField no_mean(g);
  no_mean.c[g->index_of(m)] = 1.0;
  CHECK_NOTHROW(apply_multiplier(no_mean, inv));
}

TEST_CASE("propagators: phases, unitarity, group law") {
  auto g = make_grid(2, 16, 4.0);
  auto f = random_coeff_field(g, 7);

  CHECK(rel_l2_error(apply_S(f, 0.0), f) == 0.0);
  CHECK(rel_l2_error(apply_W(f, 2.0, 0.0), f) == 0.0);

  int m[4] = {3, -2, 0, 0};
  SpectralField mode(g);
  std::size_t mi = g->index_of(m);
  mode.c[mi] = 1.0;
  double xi2 = g->xi2(mi);
  auto sm = apply_S(mode, 1.0);
  CHECK(std::abs(sm.c[mi] - std::exp(cplx(0, xi2))) <= 1e-14);
  auto wm = apply_W(mode, 2.0, 0.5);
  CHECK(std::abs(wm.c[mi] - std::exp(cplx(0, g->xi_abs[mi]))) <= 1e-14);

  for (double t : {0.37, -2.0, 10.0}) {
    CHECK(std::abs(l2_norm(apply_S(f, t)) - l2_norm(f)) <= 1e-13 * l2_norm(f));
    CHECK(std::abs(l2_norm(apply_W(f, 1.7, t)) - l2_norm(f)) <= 1e-13 * l2_norm(f));
  }

  auto ab = apply_S(apply_S(f, 0.4), 0.35);
  CHECK(rel_l2_error(ab, apply_S(f, 0.75)) <= 1e-13);
  auto ww = apply_W(apply_W(f, 1.3, 0.6), 1.3, -0.6);
  CHECK(rel_l2_error(ww, f) <= 1e-13);

  CHECK_THROWS_AS(apply_W(f, -1.0, 0.1), InvalidArgument);
}

TEST_CASE("Parseval bookkeeping") {
  auto g = make_grid(2, 16, 3.3);
  auto f = random_coeff_field(g, 9);
  double spec = l2_norm(f);
  double phys = lp_norm_physical(f, 2.0);
  CHECK(spec == doctest::Approx(phys).epsilon(1e-12));
}

TEST_CASE("conj_field matches physical conjugation") {
  auto g = make_grid(2, 8, 5.1);
  auto f = random_coeff_field(g, 13);
  auto phys = transform_inverse(f);
  for (auto& z : phys) z = std::conj(z);
  auto direct = transform_forward(g, phys);
  CHECK(rel_l2_error(conj_field(f), direct) <= 1e-13);
}

TEST_CASE("dealias_product equals truncated convolution oracle") {
  auto g = make_grid(1, 8, 2.0 * M_PI);
  auto a = random_coeff_field(g, 21);
  auto b = random_coeff_field(g, 22);
  auto prod = dealias_product(a, b);
  SpectralField oracle(g);
  const double Linv = std::pow(g->L, -g->d);
  for (int mo = -4; mo <= 3; ++mo) {
    cplx acc(0.0);
    for (int me = -4; me <= 3; ++me) {
      int rest = mo - me;
      if (rest < -4 || rest > 3) continue;
      int m1[4] = {rest, 0, 0, 0}, m2[4] = {me, 0, 0, 0};
      acc += a.c[g->index_of(m1)] * b.c[g->index_of(m2)];
    }
    int m[4] = {mo, 0, 0, 0};
    oracle.c[g->index_of(m)] = Linv * acc;
  }
  CHECK(rel_l2_error(prod, oracle) <= 1e-13);
}

TEST_CASE("make_state applies the D^{-1} convention") {
  auto g = make_grid(2, 16, 2.0 * M_PI);
  auto u0 = random_coeff_field(g, 31);
  auto n0 = random_coeff_field(g, 32);
  auto n1 = random_coeff_field(g, 33);
  n1.c[0] = 0.0; // zero mean
  double alpha = 2.0;
  auto st = make_state(u0, n0, n1, alpha);
  for (std::size_t i = 1; i < g->npoints; ++i) {
    cplx expect = n0.c[i] - cplx(0, 1) * n1.c[i] / (alpha * g->xi_abs[i]);
    CHECK(std::abs(st.N.c[i] - expect) <= 1e-14 * (1.0 + std::abs(expect)));
  }
  CHECK(st.N.c[0] == n0.c[0]);

  auto bad = n1;
  bad.c[0] = 0.5;
  CHECK_THROWS_AS(make_state(u0, n0, bad, alpha), InvalidArgument);
  CHECK_THROWS_AS(make_state(u0, n0, n1, -1.0), InvalidArgument);
}

TEST_CASE("checkpoint round trip is exact") {
  auto g = make_grid(2, 8, 7.25);
  auto a = random_coeff_field(g, 41);
  auto b = random_coeff_field(g, 42);
  Checkpoint ck;
  ck.grid = g;
  ck.alpha = 1.5;
  ck.t = 0.625;
  ck.fields = {a, b};
  auto path = std::filesystem::temp_directory_path() / "zak4_test_ck.bin";
  save_checkpoint(path.string(), ck);
  auto back = load_checkpoint(path.string());
  CHECK(back.grid->same_as(*g));
  CHECK(back.alpha == 1.5);
  CHECK(back.t == 0.625);
  REQUIRE(back.fields.size() == 2);
  for (std::size_t i = 0; i < g->npoints; ++i) {
    CHECK(back.fields[0].c[i] == a.c[i]);
    CHECK(back.fields[1].c[i] == b.c[i]);
  }
  std::filesystem::remove(path);

  CHECK_THROWS_AS(load_checkpoint("/nonexistent/zak4.bin"), IoError);
}
