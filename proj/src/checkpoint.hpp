#ifndef ZAK_CHECKPOINT_HPP
#define ZAK_CHECKPOINT_HPP

#include <string>
#include <vector>

#include "grid.hpp"

namespace zak {

// Binary field checkpoint.
// Header: magic "ZAK4", format version u32, d u32, n u32, L f64, alpha f64,
// t f64, field count u32. Then each field as n^d little-endian (re, im) f64
// pairs, coefficients in row-major lattice order (FFT mode layout).
struct Checkpoint {
  GridPtr grid;
  double alpha = 1.0;
  double t = 0.0;
  std::vector<SpectralField> fields;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

void save_checkpoint(const std::string& path, const Checkpoint& ck);
Checkpoint load_checkpoint(const std::string& path);

} // namespace zak

#endif
