#include "dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <random>

namespace zak {

namespace {

double glue(double x) { return x <= 0.0 ? 0.0 : std::exp(-1.0 / x); }

} // namespace

double smoothstep01(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = glue(t);
  double b = glue(1.0 - t);
  return a / (a + b);
}

double eta0_radial(double r) {
  return 1.0 - smoothstep01((std::abs(r) - 0.8) / 0.8);
}

double eta0(std::span<const double> xi) {
  double s2 = 0.0;
  for (double x : xi) s2 += x * x;
  return eta0_radial(std::sqrt(s2));
}

ShellRange shell_range(const Grid& g) {
  const double ximin = g.dk;
  const double ximax = g.dk * (g.n / 2) * std::sqrt(static_cast<double>(g.d));
  ShellRange r;
  r.head = static_cast<int>(std::floor(std::log2(ximin) + 1e-12)) - 1;
  r.lo = r.head + 1;
  r.hi = static_cast<int>(std::ceil(std::log2(ximax) - 1e-12)) + 1;
  return r;
}

void DyadicConfig::validate() const {
  if (!(alpha > 0.0))
    throw InvalidArgument("DyadicConfig: alpha must be positive");
  if (K < 2)
    throw InvalidArgument("DyadicConfig: frequency gap K must be >= 2");
  if (K < 5 && !nonconforming)
    throw InvalidArgument("DyadicConfig: K >= 5 required (set nonconforming "
                          "for tiny-grid oracle runs with K >= 2)");
}

bool DyadicConfig::in_alpha_band(int k) const {
  return std::abs(static_cast<double>(k) - std::log2(alpha)) <= 1.0;
}

namespace {

std::atomic<std::uint64_t> g_range_warnings{0};

double chi_k(double r, int k) {
  return eta0_radial(std::ldexp(r, -k)) - eta0_radial(std::ldexp(r, -(k - 1)));
}

} // namespace

std::uint64_t projection_range_warnings() { return g_range_warnings.load(); }

SpectralField project(const SpectralField& f, int k) {
  const Grid& g = *f.grid;
  ShellRange r = shell_range(g);
  if (k < r.lo || k > r.hi) g_range_warnings.fetch_add(1);
  SpectralField out(f.grid);
  for (std::size_t i = 0; i < g.npoints; ++i)
    out.c[i] = chi_k(g.xi_abs[i], k) * f.c[i];
  return out;
}

SpectralField project_le(const SpectralField& f, int k) {
  const Grid& g = *f.grid;
  SpectralField out(f.grid);
  for (std::size_t i = 0; i < g.npoints; ++i)
    out.c[i] = eta0_radial(std::ldexp(g.xi_abs[i], -k)) * f.c[i];
  return out;
}

namespace {

struct TablesCache {
  std::mutex mtx;
  std::map<std::tuple<int, int, double>, std::shared_ptr<const LpTables>> map;
};

TablesCache& tables_cache() {
  static TablesCache c;
  return c;
}

std::shared_ptr<const LpTables> build_tables(const Grid& g) {
  auto T = std::make_shared<LpTables>();
  T->range = shell_range(g);
  const int head = T->range.head;
  const int hi = T->range.hi;
  T->shells.resize(static_cast<std::size_t>(hi - head + 1));
  T->lowcuts.resize(static_cast<std::size_t>(hi - head + 1));
  for (int k = head; k <= hi; ++k) {
    Support& sh = T->shells[static_cast<std::size_t>(k - head)];
    Support& lc = T->lowcuts[static_cast<std::size_t>(k - head)];
    for (std::size_t i = 0; i < g.npoints; ++i) {
      double r = g.xi_abs[i];
      double wsh = (k == head) ? eta0_radial(std::ldexp(r, -head)) : chi_k(r, k);
      if (wsh != 0.0) {
        sh.idx.push_back(static_cast<std::uint32_t>(i));
        sh.w.push_back(wsh);
      }
      double wlc = eta0_radial(std::ldexp(r, -k));
      if (wlc != 0.0) {
        lc.idx.push_back(static_cast<std::uint32_t>(i));
        lc.w.push_back(wlc);
      }
    }
  }
  return T;
}

} // namespace

const LpTables& lp_tables(const GridPtr& g) {
  auto& c = tables_cache();
  std::lock_guard<std::mutex> lock(c.mtx);
  auto key = std::make_tuple(g->d, g->n, g->L);
  auto it = c.map.find(key);
  if (it == c.map.end()) it = c.map.emplace(key, build_tables(*g)).first;
  return *it->second;
}

namespace {

bool near(double a, double b) { return std::abs(a - b) < 1e-9; }

void validate_besov(const BesovSpec& s) {
  const double ps[] = {4.0 / 3.0, 1.5, 2.0, 3.0, 4.0, 6.0, 8.0};
  bool ok = std::isinf(s.p);
  for (double p : ps) ok = ok || near(s.p, p);
  if (!ok)
    throw InvalidArgument("besov_norm: p must be one of 4/3, 3/2, 2, 3, 4, 6, 8, inf");
  if (!(near(s.q, 1.0) || near(s.q, 2.0) || std::isinf(s.q)))
    throw InvalidArgument("besov_norm: q must be 1, 2 or inf");
}

double shell_lp(const SpectralField& f, int k, double p) {
  SpectralField piece = project(f, k);
  if (near(p, 2.0)) return l2_norm(piece);
  return lp_norm_physical(piece, p);
}

} // namespace

double besov_norm(const SpectralField& f, const BesovSpec& spec) {
  validate_besov(spec);
  ShellRange r = shell_range(*f.grid);
  const bool qinf = std::isinf(spec.q);
  double acc = 0.0;
  int kfrom = spec.homogeneous ? r.lo : std::max(1, r.lo);
  for (int k = kfrom; k <= r.hi; ++k) {
    double term = std::pow(2.0, k * spec.s) * shell_lp(f, k, spec.p);
    if (qinf)
      acc = std::max(acc, term);
    else
      acc += std::pow(term, spec.q);
  }
  double tail = qinf ? acc : std::pow(acc, 1.0 / spec.q);
  if (spec.homogeneous) return tail;
  SpectralField head = project_le(f, 0);
  double hn = near(spec.p, 2.0) ? l2_norm(head) : lp_norm_physical(head, spec.p);
  return hn + tail;
}

double sobolev_norm(const SpectralField& f, double s) {
  const Grid& g = *f.grid;
  double acc = 0.0;
  for (std::size_t i = 0; i < g.npoints; ++i)
    acc += std::pow(1.0 + g.xi2(i), s) * std::norm(f.c[i]);
  return std::sqrt(acc * std::pow(g.L, -g.d));
}

// ---------------------------------------------------------------------------
// Paraproducts.
//
// All kinds are assembled from padded-physical shell pieces so every product
// is an exact (dealiased) convolution; the identities uv = LH + HL + HH and
// HL = alphaL + XL then hold to roundoff by construction of the partitions.
// ---------------------------------------------------------------------------

namespace {

using Buf = std::vector<cplx>;

std::size_t padded_size(const Grid& g) {
  std::size_t s = 1;
  for (int i = 0; i < g.d; ++i) s *= static_cast<std::size_t>(2 * g.n);
  return s;
}

Buf shell_piece_phys(const SpectralField& f, const Support& sup) {
  SpectralField piece(f.grid);
  for (std::size_t i = 0; i < sup.size(); ++i)
    piece.c[sup.idx[i]] = sup.w[i] * f.c[sup.idx[i]];
  return padded_physical(piece);
}

void add_into(Buf& acc, const Buf& x) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += x[i];
}

void mac_product(Buf& acc, const Buf& a, const Buf& b) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += a[i] * b[i];
}

void mac_product_diff(Buf& acc, const Buf& a, const Buf& b, const Buf& bsub) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += a[i] * (b[i] - bsub[i]);
}

// Lazily computed padded-physical family shells of one field, with optional
// caching when the memory budget allows.
class PieceSource {
public:
  PieceSource(const SpectralField& f, const LpTables& T, bool cache)
      : f_(f), T_(T), cache_(cache) {
    if (cache_) store_.resize(static_cast<std::size_t>(T.range.count()));
  }
  const Buf& piece(int k, Buf& scratch) {
    std::size_t j = static_cast<std::size_t>(k - T_.range.head);
    if (cache_) {
      if (store_[j].empty()) store_[j] = shell_piece_phys(f_, T_.shell(k));
      return store_[j];
    }
    scratch = shell_piece_phys(f_, T_.shell(k));
    return scratch;
  }

private:
  const SpectralField& f_;
  const LpTables& T_;
  bool cache_;
  std::vector<Buf> store_;
};

struct KindAccums {
  Buf all, band, comp; // unrestricted / alpha-band / complement
  bool want_all = false, want_band = false, want_comp = false;
};

// One ascending pass computing sum_k piece_hi(k) * lowcut_lo(k - K) with the
// alpha-band split. The low cutoff is accumulated from family shells, so it
// telescopes to eta0(xi / 2^{k-K}) exactly.
void highlow_pass(PieceSource& hi, PieceSource& lo, const LpTables& T,
                  const DyadicConfig& cfg, KindAccums& out, std::size_t psz) {
  const int head = T.range.head, top = T.range.hi;
  if (out.want_all) out.all.assign(psz, cplx(0));
  if (out.want_band) out.band.assign(psz, cplx(0));
  if (out.want_comp) out.comp.assign(psz, cplx(0));
  Buf low(psz, cplx(0));
  Buf scratch;
  int low_level = head - 1;
  for (int k = head + cfg.K; k <= top; ++k) {
    while (low_level < k - cfg.K) {
      ++low_level;
      add_into(low, lo.piece(low_level, scratch));
    }
    const Buf& hp = hi.piece(k, scratch);
    if (out.want_all) mac_product(out.all, hp, low);
    if (cfg.in_alpha_band(k)) {
      if (out.want_band) mac_product(out.band, hp, low);
    } else {
      if (out.want_comp) mac_product(out.comp, hp, low);
    }
  }
}

// HH pass: sum over k of piece_u(k) times the band-limited window of v with
// |k1 - k2| <= K - 1, maintained as a difference of two running lowcuts.
Buf hh_pass(PieceSource& u, PieceSource& v, const LpTables& T,
            const DyadicConfig& cfg, std::size_t psz) {
  const int head = T.range.head, top = T.range.hi;
  Buf acc(psz, cplx(0));
  Buf low_b(psz, cplx(0)), low_a(psz, cplx(0));
  Buf scratch_u, scratch_v;
  int b_level = head - 1, a_level = head - 1;
  for (int k = head; k <= top; ++k) {
    int b = std::min(top, k + cfg.K - 1);
    int am1 = std::max(head, k - cfg.K + 1) - 1;
    while (b_level < b) {
      ++b_level;
      add_into(low_b, v.piece(b_level, scratch_v));
    }
    while (a_level < am1) {
      ++a_level;
      add_into(low_a, v.piece(a_level, scratch_v));
    }
    mac_product_diff(acc, u.piece(k, scratch_u), low_b, low_a);
  }
  return acc;
}

bool cache_fits(const Grid& g, const LpTables& T) {
  std::size_t bytes = padded_size(g) * sizeof(cplx) *
                      static_cast<std::size_t>(T.range.count()) * 2;
  return bytes <= (std::size_t{1} << 29); // 512 MB budget for cached pieces
}

} // namespace

SpectralField paraproduct(const SpectralField& u, const SpectralField& v,
                          Para kind, const DyadicConfig& cfg) {
  check_same_grid(u, v);
  cfg.validate();
  const LpTables& T = lp_tables(u.grid);
  const std::size_t psz = padded_size(*u.grid);
  const bool cache = cache_fits(*u.grid, T);
  PieceSource pu(u, T, cache), pv(v, T, cache);

  if (kind == Para::HH) {
    Buf acc = hh_pass(pu, pv, T, cfg, psz);
    return field_from_padded_physical(u.grid, acc);
  }

  KindAccums acc;
  switch (kind) {
    case Para::LH: acc.want_all = true; break;
    case Para::HL: acc.want_all = true; break;
    case Para::AlphaL: acc.want_band = true; break;
    case Para::XL: acc.want_comp = true; break;
    case Para::LAlpha: acc.want_band = true; break;
    case Para::LX: acc.want_comp = true; break;
    default: break;
  }
  const bool high_is_u = (kind == Para::HL || kind == Para::AlphaL || kind == Para::XL);
  if (high_is_u)
    highlow_pass(pu, pv, T, cfg, acc, psz);
  else
    highlow_pass(pv, pu, T, cfg, acc, psz);
  const Buf& result = acc.want_all ? acc.all : (acc.want_band ? acc.band : acc.comp);
  return field_from_padded_physical(u.grid, result);
}

ParaDecomposition paraproduct_decompose(const SpectralField& u,
                                        const SpectralField& v,
                                        const DyadicConfig& cfg) {
  check_same_grid(u, v);
  cfg.validate();
  const LpTables& T = lp_tables(u.grid);
  const std::size_t psz = padded_size(*u.grid);
  const bool cache = cache_fits(*u.grid, T);
  PieceSource pu(u, T, cache), pv(v, T, cache);

  ParaDecomposition out;
  KindAccums hl;
  hl.want_all = hl.want_band = hl.want_comp = true;
  highlow_pass(pu, pv, T, cfg, hl, psz);
  out.hl = field_from_padded_physical(u.grid, hl.all);
  out.alpha_l = field_from_padded_physical(u.grid, hl.band);
  out.xl = field_from_padded_physical(u.grid, hl.comp);

  KindAccums lh;
  lh.want_all = lh.want_band = lh.want_comp = true;
  highlow_pass(pv, pu, T, cfg, lh, psz);
  out.lh = field_from_padded_physical(u.grid, lh.all);
  out.l_alpha = field_from_padded_physical(u.grid, lh.band);
  out.lx = field_from_padded_physical(u.grid, lh.comp);

  Buf hh = hh_pass(pu, pv, T, cfg, psz);
  out.hh = field_from_padded_physical(u.grid, hh);
  return out;
}

SpectralField random_field(const GridPtr& g, std::uint64_t seed,
                           ShellProfile profile, double param, double target_l2) {
  const LpTables& T = lp_tables(g);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  SpectralField white(g);
  for (auto& z : white.c) z = cplx(nd(rng), nd(rng));

  SpectralField out(g);
  for (int k = T.range.head; k <= T.range.hi; ++k) {
    double w = 0.0;
    switch (profile) {
      case ShellProfile::Flat: w = 1.0; break;
      case ShellProfile::SDecay: w = std::pow(2.0, -std::max(k, 0) * param); break;
      case ShellProfile::SingleShell:
        w = (k == static_cast<int>(std::lround(param))) ? 1.0 : 0.0;
        break;
    }
    if (w == 0.0) continue;
    const Support& sup = T.shell(k);
    SpectralField piece(g);
    for (std::size_t i = 0; i < sup.size(); ++i)
      piece.c[sup.idx[i]] = sup.w[i] * white.c[sup.idx[i]];
    double e = l2_norm(piece);
    if (e > 0.0) out = out + (w / e) * piece;
  }
  if (target_l2 >= 0.0) {
    double e = l2_norm(out);
    out = (e > 0.0 ? target_l2 / e : 0.0) * out;
  }
  return out;
}

} // namespace zak
