#ifndef ZAK_NORMAL_FORM_HPP
#define ZAK_NORMAL_FORM_HPP

#include <optional>
#include <string>
#include <vector>

#include "dyadic.hpp"
#include "grid.hpp"

namespace zak {

// Resonance denominators of the bilinear multipliers: the phase mismatch
// (output dispersion minus input dispersions) of the interacting free waves,
//   schrod:  |xi|^2 - alpha|xi-eta| - |eta|^2     on XL pairs,
//   wave:    alpha|xi| + |eta|^2 - |xi-eta|^2     on XL+LX pairs.
// Every evaluated pair must satisfy |denominator| >= delta_min, else a
// GuardError reports the offending shell pair; no regularization is applied.
struct ResonanceSymbol {
  enum class Kind { Schrod, Wave };
  Kind kind = Kind::Schrod;
  double alpha = 1.0;
  double delta_min = 1e-6;
};

double default_delta_min(double alpha);

// omega(N, u): for each output frequency xi, the XL-restricted sum over eta of
// N_hat(xi-eta) u_hat(eta) weighted by the schrod resonance symbol and the
// grid's convolution constant. Evaluated shell-pairwise as the exact
// restricted sum over the (small) shell supports. Bilinear in (N, u).
SpectralField omega(const SpectralField& N, const SpectralField& u,
                    const DyadicConfig& cfg, double delta_min);

// omega_tilde(u, v): same with the wave symbol, the conjugate on the second
// argument, and the XL+LX restriction. d_omega_tilde post-multiplies by |xi|.
SpectralField omega_tilde(const SpectralField& u, const SpectralField& v,
                          const DyadicConfig& cfg, double delta_min);
SpectralField d_omega_tilde(const SpectralField& u, const SpectralField& v,
                            const DyadicConfig& cfg, double delta_min);

// Psi(u, N) = (u - omega(N, u), N - d_omega_tilde(u, u)).
std::pair<SpectralField, SpectralField> psi_forward(const ZakharovState& state,
                                                    const DyadicConfig& cfg,
                                                    double delta_min);

struct PsiInverseResult {
  SpectralField u;
  SpectralField N;
  int iterations = 0;
  std::vector<double> diffs;  // successive-iterate H^{1/2} x L^2 differences
  std::vector<double> ratios; // diffs[i] / diffs[i-1]
  double contraction_ratio = 0.0; // max observed ratio
};

// Inverse transform via the fixed-point iteration
// (u, N) <- (u' + omega(N, u), N' + d_omega_tilde(u, u)) from (0, 0).
// Throws DivergenceError (with ratio history) on non-contraction (ratio >= 1
// on 3 consecutive iterates) or when max_iter is exceeded.
PsiInverseResult psi_inverse(const SpectralField& u_prime,
                             const SpectralField& N_prime,
                             const DyadicConfig& cfg, double delta_min,
                             double tol, int max_iter);

// ---------------------------------------------------------------------------
// Empirical norm-ratio probes for the multilinear estimates.
// ---------------------------------------------------------------------------

enum class ProbeLemma {
  QuadLH,    // ||(Nu)_{LH+alphaL}||_{B^s_{4/3}}  <= C ||N||_{H^l} ||u||_{B^s_4}
  QuadHH,    // ||(Nu)_{HH}||_{B^s_{4/3}}         <= C(K) ...
  QuadWave,  // ||D(uv)_{HH}||_{H^l}              <= C(K) ||u||_{B^s_4}||v||_{B^s_4}
  Boundary1, // ||omega(N,u)||_{H^s}              vs ||N||_{H^l}||u||_{H^s}
  Boundary2, // ||D omega~(u,v)||_{H^l}           vs ||u||_{H^s}||v||_{H^s}
  Boundary3, // ||omega(N,u)||_{B^s_4}            vs ||N||_{H^l}||u||_{B^s_4}
  Boundary4, // ||<D>^l omega~(u,v)||_{B.^{1/6}_6} vs mixed Besov/Sobolev pair
  Cubic1,    // ||omega(D(uv),w)||_{H^s}          vs symmetric product bound
  Cubic2,    // ||omega(M,Nu)||_{B^s_{4/3}}       vs ||M||_{H^l}||N||_{H^l}||u||_{B^s_4}
  Cubic3,    // ||D omega~(Nu,v)||+||D omega~(v,Nu)||_{H^l} vs triple product
};

const char* probe_lemma_name(ProbeLemma lemma);
std::optional<ProbeLemma> probe_lemma_from_name(const std::string& name);

struct EnsembleSpec {
  GridPtr grid;
  int samples = 50;
  std::uint64_t seed = 1;
  double amplitude = 1.0; // 0 yields the all-zero ensemble (every sample skipped)
};

struct ProbeSample {
  std::uint64_t seed;
  double ratio;
};

struct ProbeKRow {
  int K;
  double sup_ratio = 0.0;
  std::vector<ProbeSample> samples;
};

struct ProbeReport {
  std::string lemma;
  double s = 0.0;
  double l = 0.0;
  int sample_count = 0;
  int skipped = 0;           // degenerate samples with vanishing right side
  bool hypothesis_ok = true; // exponents inside the cited hypothesis range
  bool decay_expected = false; // strict theta > 0 at these exponents
  std::vector<ProbeKRow> rows; // keyed by K, ascending
  std::string verdict;         // "decaying" | "flat" | "increasing"
  bool monotone_nonincreasing = false;
};

// Measures sup over the ensemble of the left/right norm ratio of the cited
// estimate, for each K in k_list. Out-of-hypothesis exponents are allowed and
// flagged. Degenerate samples are skipped and counted.
ProbeReport probe_estimate(ProbeLemma lemma, double s, double l, double alpha,
                           const EnsembleSpec& ensemble,
                           const std::vector<int>& k_list);

} // namespace zak

#endif
