#include "normal_form.hpp"

#include <cmath>

namespace zak {

double default_delta_min(double alpha) {
  return 1e-6 * std::max(1.0, alpha * alpha);
}

namespace {

enum class SymKind { Schrod, Wave };

// Accumulates the symbol-weighted restricted convolution of one shell pair:
// F filtered by supF sits at zeta = xi - eta, G filtered by supG at eta.
// The guard is checked on every weight-carrying pair regardless of the field
// values, so failures are a property of (grid, cfg), not of the data.
void accumulate_pair(SpectralField& out, const SpectralField& F,
                     const Support& supF, const SpectralField& G,
                     const Support& supG, SymKind kind, double alpha,
                     double delta_min, int k_hi, int k_lo) {
  const Grid& g = *out.grid;
  const double Linv = std::pow(g.L, -g.d);
  const double dk2 = g.dk * g.dk;
  int mf[4], mg[4], ms[4];
  for (std::size_t a = 0; a < supF.size(); ++a) {
    const std::size_t ia = supF.idx[a];
    g.modes_of(ia, mf);
    const double zeta_abs = g.xi_abs[ia];
    const cplx zf = supF.w[a] * F.c[ia];
    for (std::size_t b = 0; b < supG.size(); ++b) {
      const std::size_t ib = supG.idx[b];
      g.modes_of(ib, mg);
      bool ok = true;
      double m2 = 0.0;
      for (int ax = 0; ax < g.d; ++ax) {
        ms[ax] = mf[ax] + mg[ax];
        if (ms[ax] < -g.n / 2 || ms[ax] >= g.n / 2) { ok = false; break; }
        m2 += static_cast<double>(ms[ax]) * ms[ax];
      }
      if (!ok) continue;
      const double eta_abs = g.xi_abs[ib];
      const double xi2 = dk2 * m2;
      double den, num;
      if (kind == SymKind::Schrod) {
        den = xi2 - alpha * zeta_abs - eta_abs * eta_abs;
        num = 1.0;
      } else {
        den = alpha * std::sqrt(xi2) + eta_abs * eta_abs - zeta_abs * zeta_abs;
        num = alpha;
      }
      if (std::abs(den) < delta_min)
        throw GuardError("resonance denominator " + std::to_string(den) +
                             " below the floor on shell pair (" +
                             std::to_string(k_hi) + ", " + std::to_string(k_lo) + ")",
                         k_hi, k_lo, den);
      out.c[g.index_of(ms)] += Linv * (num / den) * zf * G.c[ib] * supG.w[b];
    }
  }
}

} // namespace

SpectralField omega(const SpectralField& N, const SpectralField& u,
                    const DyadicConfig& cfg, double delta_min) {
  check_same_grid(N, u);
  cfg.validate();
  const LpTables& T = lp_tables(N.grid);
  SpectralField out(N.grid);
  for (int k = T.range.head + cfg.K; k <= T.range.hi; ++k) {
    if (cfg.in_alpha_band(k)) continue; // XL excludes the alpha band
    accumulate_pair(out, N, T.shell(k), u, T.lowcut(k - cfg.K), SymKind::Schrod,
                    cfg.alpha, delta_min, k, k - cfg.K);
  }
  return out;
}

SpectralField omega_tilde(const SpectralField& u, const SpectralField& v,
                          const DyadicConfig& cfg, double delta_min) {
  check_same_grid(u, v);
  cfg.validate();
  const LpTables& T = lp_tables(u.grid);
  SpectralField vbar = conj_field(v);
  SpectralField out(u.grid);
  for (int k = T.range.head + cfg.K; k <= T.range.hi; ++k) {
    if (cfg.in_alpha_band(k)) continue;
    // XL: first argument high, conjugated second low
    accumulate_pair(out, u, T.shell(k), vbar, T.lowcut(k - cfg.K), SymKind::Wave,
                    cfg.alpha, delta_min, k, k - cfg.K);
    // LX: conjugated second argument high, first low
    accumulate_pair(out, u, T.lowcut(k - cfg.K), vbar, T.shell(k), SymKind::Wave,
                    cfg.alpha, delta_min, k, k - cfg.K);
  }
  return out;
}

SpectralField d_omega_tilde(const SpectralField& u, const SpectralField& v,
                            const DyadicConfig& cfg, double delta_min) {
  return apply_D(omega_tilde(u, v, cfg, delta_min));
}

std::pair<SpectralField, SpectralField> psi_forward(const ZakharovState& state,
                                                    const DyadicConfig& cfg,
                                                    double delta_min) {
  return {state.u - omega(state.N, state.u, cfg, delta_min),
          state.N - d_omega_tilde(state.u, state.u, cfg, delta_min)};
}

namespace {

double pair_size(const SpectralField& du, const SpectralField& dN) {
  double a = sobolev_norm(du, 0.5);
  double b = l2_norm(dN);
  return std::sqrt(a * a + b * b);
}

} // namespace

PsiInverseResult psi_inverse(const SpectralField& u_prime,
                             const SpectralField& N_prime,
                             const DyadicConfig& cfg, double delta_min,
                             double tol, int max_iter) {
  check_same_grid(u_prime, N_prime);
  PsiInverseResult res;
  SpectralField u(u_prime.grid), N(u_prime.grid);
  for (int iter = 1; iter <= max_iter; ++iter) {
    SpectralField un = u_prime + omega(N, u, cfg, delta_min);
    SpectralField Nn = N_prime + d_omega_tilde(u, u, cfg, delta_min);
    double diff = pair_size(un - u, Nn - N);
    if (!res.diffs.empty() && res.diffs.back() > 0.0)
      res.ratios.push_back(diff / res.diffs.back());
    res.diffs.push_back(diff);
    u = std::move(un);
    N = std::move(Nn);
    res.iterations = iter;
    if (diff <= tol) {
      res.u = std::move(u);
      res.N = std::move(N);
      for (double r : res.ratios) res.contraction_ratio = std::max(res.contraction_ratio, r);
      return res;
    }
    std::size_t nr = res.ratios.size();
    if (nr >= 3 && res.ratios[nr - 1] >= 1.0 && res.ratios[nr - 2] >= 1.0 &&
        res.ratios[nr - 3] >= 1.0)
      throw DivergenceError("inverse iteration is not contracting", res.ratios);
  }
  throw DivergenceError("inverse iteration exceeded max_iter", res.ratios);
}

// ---------------------------------------------------------------------------
// Probes
// ---------------------------------------------------------------------------

const char* probe_lemma_name(ProbeLemma lemma) {
  switch (lemma) {
    case ProbeLemma::QuadLH: return "quad-LH";
    case ProbeLemma::QuadHH: return "quad-HH";
    case ProbeLemma::QuadWave: return "quad-wave";
    case ProbeLemma::Boundary1: return "boundary-1";
    case ProbeLemma::Boundary2: return "boundary-2";
    case ProbeLemma::Boundary3: return "boundary-3";
    case ProbeLemma::Boundary4: return "boundary-4";
    case ProbeLemma::Cubic1: return "cubic-1";
    case ProbeLemma::Cubic2: return "cubic-2";
    case ProbeLemma::Cubic3: return "cubic-3";
  }
  return "?";
}

std::optional<ProbeLemma> probe_lemma_from_name(const std::string& name) {
  for (ProbeLemma l : {ProbeLemma::QuadLH, ProbeLemma::QuadHH, ProbeLemma::QuadWave,
                       ProbeLemma::Boundary1, ProbeLemma::Boundary2,
                       ProbeLemma::Boundary3, ProbeLemma::Boundary4,
                       ProbeLemma::Cubic1, ProbeLemma::Cubic2, ProbeLemma::Cubic3})
    if (name == probe_lemma_name(l)) return l;
  return std::nullopt;
}

namespace {

// Field roles drive the decay exponent of the per-sample dyadic profile.
enum class Role { ULike, NLike };

struct ProbeDef {
  int nfields;
  Role roles[3];
  bool (*hyp)(double s, double l);
  bool (*theta_pos)(double s, double l);
};

bool pair_ne(double s, double l, double s0, double l0) {
  return !(std::abs(s - s0) < 1e-12 && std::abs(l - l0) < 1e-12);
}

ProbeDef probe_def(ProbeLemma lemma) {
  switch (lemma) {
    case ProbeLemma::QuadLH:
    case ProbeLemma::QuadHH:
      return {2, {Role::NLike, Role::ULike},
              [](double s, double l) { return s >= 0.0 && l >= 0.0; },
              [](double, double) { return false; }};
    case ProbeLemma::QuadWave:
      return {2, {Role::ULike, Role::ULike},
              [](double s, double l) { return l + 1.0 >= 0.0 && l + 1.0 <= 2.0 * s; },
              [](double, double) { return false; }};
    case ProbeLemma::Boundary1:
      return {2, {Role::NLike, Role::ULike},
              [](double s, double l) {
                return l >= std::max(0.0, s - 2.0) && pair_ne(s, l, 2.0, 0.0);
              },
              [](double s, double l) { return s < l + 2.0; }};
    case ProbeLemma::Boundary2:
      return {2, {Role::ULike, Role::ULike},
              [](double s, double l) {
                return l <= std::min(2.0 * s - 1.0, s + 1.0) && pair_ne(s, l, 2.0, 3.0);
              },
              [](double s, double l) { return l < s + 1.0; }};
    case ProbeLemma::Boundary3:
      return {2, {Role::NLike, Role::ULike},
              [](double s, double l) {
                return l >= std::min(0.0, s - 1.0) && pair_ne(s, l, 1.0, 0.0);
              },
              [](double s, double l) { return s < l + 1.0; }};
    case ProbeLemma::Boundary4:
      return {2, {Role::ULike, Role::ULike},
              [](double s, double l) {
                return l <= std::min(2.0 * s - 0.5, s + 1.5) && pair_ne(s, l, 2.0, 3.5);
              },
              [](double s, double l) { return l < s + 1.5; }};
    case ProbeLemma::Cubic1:
      return {3, {Role::ULike, Role::ULike, Role::ULike},
              [](double s, double) { return s >= 0.5; },
              [](double, double) { return true; }};
    case ProbeLemma::Cubic2:
      return {3, {Role::NLike, Role::NLike, Role::ULike},
              [](double s, double l) {
                return l >= 0.0 && -l < s && s <= l + 2.0 && s <= 2.0 * l + 1.0 &&
                       pair_ne(s, l, 1.0, 0.0);
              },
              [](double s, double l) { return s < l + 2.0; }};
    case ProbeLemma::Cubic3:
      return {3, {Role::NLike, Role::ULike, Role::ULike},
              [](double s, double l) {
                return s >= 0.5 && -s < l && l <= s + 1.0 && l <= 2.0 * s &&
                       pair_ne(s, l, 1.0, 2.0);
              },
              [](double s, double l) { return l < s + 1.0; }};
  }
  return {2, {Role::NLike, Role::ULike}, nullptr, nullptr};
}

double probe_lhs(ProbeLemma lemma, const std::vector<SpectralField>& f, double s,
                 double l, const DyadicConfig& cfg, double dmin) {
  const BesovSpec bs43{s, 4.0 / 3.0, 2.0, false};
  const BesovSpec bs4{s, 4.0, 2.0, false};
  switch (lemma) {
    case ProbeLemma::QuadLH:
      return besov_norm(paraproduct(f[0], f[1], Para::LH, cfg) +
                            paraproduct(f[0], f[1], Para::AlphaL, cfg),
                        bs43);
    case ProbeLemma::QuadHH:
      return besov_norm(paraproduct(f[0], f[1], Para::HH, cfg), bs43);
    case ProbeLemma::QuadWave:
      return sobolev_norm(apply_D(paraproduct(f[0], f[1], Para::HH, cfg)), l);
    case ProbeLemma::Boundary1:
      return sobolev_norm(omega(f[0], f[1], cfg, dmin), s);
    case ProbeLemma::Boundary2:
      return sobolev_norm(d_omega_tilde(f[0], f[1], cfg, dmin), l);
    case ProbeLemma::Boundary3:
      return besov_norm(omega(f[0], f[1], cfg, dmin), bs4);
    case ProbeLemma::Boundary4:
      return besov_norm(apply_bracket_pow(omega_tilde(f[0], f[1], cfg, dmin), l),
                        {1.0 / 6.0, 6.0, 2.0, true});
    case ProbeLemma::Cubic1:
      return sobolev_norm(
          omega(apply_D(dealias_product(f[0], f[1])), f[2], cfg, dmin), s);
    case ProbeLemma::Cubic2:
      return besov_norm(omega(f[0], dealias_product(f[1], f[2]), cfg, dmin), bs43);
    case ProbeLemma::Cubic3: {
      SpectralField nu = dealias_product(f[0], f[1]);
      return sobolev_norm(d_omega_tilde(nu, f[2], cfg, dmin), l) +
             sobolev_norm(d_omega_tilde(f[2], nu, cfg, dmin), l);
    }
  }
  return 0.0;
}

double probe_rhs(ProbeLemma lemma, const std::vector<SpectralField>& f, double s,
                 double l) {
  const BesovSpec bs4{s, 4.0, 2.0, false};
  const BesovSpec bhalf4{0.5, 4.0, 2.0, false};
  switch (lemma) {
    case ProbeLemma::QuadLH:
    case ProbeLemma::QuadHH:
      return sobolev_norm(f[0], l) * besov_norm(f[1], bs4);
    case ProbeLemma::QuadWave:
      return besov_norm(f[0], bs4) * besov_norm(f[1], bs4);
    case ProbeLemma::Boundary1:
      return sobolev_norm(f[0], l) * sobolev_norm(f[1], s);
    case ProbeLemma::Boundary2:
      return sobolev_norm(f[0], s) * sobolev_norm(f[1], s);
    case ProbeLemma::Boundary3:
      return sobolev_norm(f[0], l) * besov_norm(f[1], bs4);
    case ProbeLemma::Boundary4:
      return besov_norm(f[0], bs4) * sobolev_norm(f[1], s) +
             besov_norm(f[1], bs4) * sobolev_norm(f[0], s);
    case ProbeLemma::Cubic1:
      return (sobolev_norm(f[0], s) * besov_norm(f[1], bhalf4) +
              sobolev_norm(f[1], s) * besov_norm(f[0], bhalf4)) *
             besov_norm(f[2], bhalf4);
    case ProbeLemma::Cubic2:
      return sobolev_norm(f[0], l) * sobolev_norm(f[1], l) * besov_norm(f[2], bs4);
    case ProbeLemma::Cubic3:
      return sobolev_norm(f[0], l) * besov_norm(f[1], bs4) * besov_norm(f[2], bs4);
  }
  return 0.0;
}

} // namespace

ProbeReport probe_estimate(ProbeLemma lemma, double s, double l, double alpha,
                           const EnsembleSpec& ensemble,
                           const std::vector<int>& k_list) {
  if (!ensemble.grid) throw InvalidArgument("probe_estimate: ensemble grid missing");
  ProbeDef def = probe_def(lemma);
  ProbeReport rep;
  rep.lemma = probe_lemma_name(lemma);
  rep.s = s;
  rep.l = l;
  rep.sample_count = ensemble.samples;
  rep.hypothesis_ok = def.hyp(s, l);
  rep.decay_expected = def.theta_pos(s, l);

  ShellRange range = shell_range(*ensemble.grid);
  const int nshells = range.hi - range.lo + 1;

  // Fixed ensemble: fields depend only on (seed, sample index), never on K.
  std::vector<std::vector<SpectralField>> fields(static_cast<std::size_t>(ensemble.samples));
  for (int i = 0; i < ensemble.samples; ++i) {
    for (int j = 0; j < def.nfields; ++j) {
      std::uint64_t seed = ensemble.seed + 1000003ull * i + 7919ull * (j + 1);
      ShellProfile prof;
      double param = 0.0;
      switch (i % 3) {
        case 0: prof = ShellProfile::Flat; break;
        case 1:
          prof = ShellProfile::SDecay;
          param = std::max(def.roles[j] == Role::ULike ? s : l, 0.0);
          break;
        default:
          prof = ShellProfile::SingleShell;
          param = range.lo + ((i / 3) + j) % nshells;
          break;
      }
      fields[static_cast<std::size_t>(i)].push_back(
          random_field(ensemble.grid, seed, prof, param, ensemble.amplitude));
    }
  }

  std::vector<int> ks = k_list;
  std::sort(ks.begin(), ks.end());
  for (int K : ks) {
    DyadicConfig cfg;
    cfg.K = K;
    cfg.alpha = alpha;
    cfg.nonconforming = (K < 5);
    double dmin = default_delta_min(alpha);
    ProbeKRow row;
    row.K = K;
    for (int i = 0; i < ensemble.samples; ++i) {
      const auto& f = fields[static_cast<std::size_t>(i)];
      double rhs = probe_rhs(lemma, f, s, l);
      if (rhs < 1e-13) {
        if (K == ks.front()) ++rep.skipped;
        continue;
      }
      double lhs = probe_lhs(lemma, f, s, l, cfg, dmin);
      double ratio = lhs / rhs;
      row.samples.push_back({ensemble.seed + 1000003ull * i, ratio});
      row.sup_ratio = std::max(row.sup_ratio, ratio);
    }
    rep.rows.push_back(std::move(row));
  }

  rep.monotone_nonincreasing = true;
  for (std::size_t i = 1; i < rep.rows.size(); ++i)
    if (rep.rows[i].sup_ratio > rep.rows[i - 1].sup_ratio * (1.0 + 1e-9))
      rep.monotone_nonincreasing = false;
  if (!rep.rows.empty()) {
    double first = rep.rows.front().sup_ratio;
    double last = rep.rows.back().sup_ratio;
    if (first <= 0.0)
      rep.verdict = "flat";
    else if (last <= 0.8 * first)
      rep.verdict = "decaying";
    else if (last <= 1.05 * first)
      rep.verdict = "flat";
    else
      rep.verdict = "increasing";
  }
  return rep;
}

} // namespace zak
