#ifndef ZAK_DYADIC_HPP
#define ZAK_DYADIC_HPP

#include <atomic>
#include <cstdint>
#include <vector>

#include "grid.hpp"

namespace zak {

// Radial bump: 1 on |xi| <= 4/5, 0 on |xi| >= 8/5, monotone smooth
// (e^{-1/x} glue) in between.
double eta0_radial(double r);
double eta0(std::span<const double> xi);

// Smooth monotone step: 0 for t <= 0, 1 for t >= 1.
double smoothstep01(double t);

// Dyadic shell bookkeeping for a grid. Shells carry integer indices k with
// chi_k supported in 0.4*2^k < |xi| < 1.6*2^k. The grid's family runs from a
// "head" index (whose multiplier is the full cutoff eta0(xi/2^head), equal on
// the lattice to the xi = 0 indicator) up to k_hi with eta0(xi/2^{k_hi}) == 1
// everywhere, so the family sums to 1 exactly.
struct ShellRange {
  int head; // family head index
  int lo;   // head + 1: first genuine dyadic shell
  int hi;   // last shell
  int count() const { return hi - head + 1; }
};
ShellRange shell_range(const Grid& g);

// Frequency-gap configuration for paraproducts and normal-form multipliers.
struct DyadicConfig {
  int K = 5;
  double alpha = 1.0;
  // The paper-conforming regime requires K >= 5. Tiny oracle grids may relax
  // to K >= 2 by setting this flag explicitly.
  bool nonconforming = false;

  void validate() const;
  bool in_alpha_band(int k) const; // |k - log2(alpha)| <= 1
};

// chi_k multiplier (difference of eta0 cutoffs). Out-of-range k yields the
// zero field and bumps a warning counter.
SpectralField project(const SpectralField& f, int k);
// eta0(xi/2^k) cutoff multiplier P_{<=k}.
SpectralField project_le(const SpectralField& f, int k);
std::uint64_t projection_range_warnings();

// Precomputed support lists for the family shells and low cutoffs of a grid;
// memoized per (d, n, L).
struct Support {
  std::vector<std::uint32_t> idx;
  std::vector<double> w;
  std::size_t size() const { return idx.size(); }
};
struct LpTables {
  ShellRange range;
  std::vector<Support> shells;  // family shell k at [k - head]
  std::vector<Support> lowcuts; // lowcut j at [j - head], j in [head, hi]
  const Support& shell(int k) const { return shells[static_cast<std::size_t>(k - range.head)]; }
  const Support& lowcut(int j) const { return lowcuts[static_cast<std::size_t>(j - range.head)]; }
};
const LpTables& lp_tables(const GridPtr& g);

// Besov norm spec. p restricted to {4/3, 3/2, 2, 3, 4, 6, 8, inf} and q to
// {1, 2, inf}; the inhomogeneous norm uses the P_{<=0} head plus shells
// k >= 1, the homogeneous one sums all shells (zero mode drops out).
struct BesovSpec {
  double s = 0.0;
  double p = 2.0;
  double q = 2.0;
  bool homogeneous = false;
};
double besov_norm(const SpectralField& f, const BesovSpec& spec);
double sobolev_norm(const SpectralField& f, double s);

// Bony paraproduct kinds. With P'_k the family shells and gap K:
//   (uv)_LH = sum_{k >= head+K} (P_{<=k-K} u)(P'_k v),   (uv)_HL = (vu)_LH,
//   (uv)_HH = sum_{|k1-k2| <= K-1} (P'_{k1} u)(P'_{k2} v),
// and HL splits by the alpha band |k - log2(alpha)| <= 1 into alphaL + XL
// (LAlpha/LX are the mirrored restrictions of LH).
// The high index runs from head+K so the three kinds partition the family
// shell pairs exactly once (the zero mode rides in the head shell and meets
// everything of comparable depth inside HH). All shell products are formed on
// the 2x padded grid (exact convolutions), so uv = LH + HL + HH and
// HL = alphaL + XL hold to roundoff.
enum class Para { LH, HL, HH, AlphaL, LAlpha, XL, LX };

SpectralField paraproduct(const SpectralField& u, const SpectralField& v,
                          Para kind, const DyadicConfig& cfg);

struct ParaDecomposition {
  SpectralField lh, hl, hh, alpha_l, l_alpha, xl, lx;
};
// Computes all seven kinds sharing the per-shell transforms.
ParaDecomposition paraproduct_decompose(const SpectralField& u,
                                        const SpectralField& v,
                                        const DyadicConfig& cfg);

// Random fields with prescribed dyadic energy profiles, used by the
// estimate probes and tests. Deterministic in (seed, grid, profile).
enum class ShellProfile { Flat, SDecay, SingleShell };
SpectralField random_field(const GridPtr& g, std::uint64_t seed,
                           ShellProfile profile, double param = 0.0,
                           double target_l2 = 1.0);

} // namespace zak

#endif
