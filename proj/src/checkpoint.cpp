#include "checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace zak {

namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint writer assumes a little-endian host");

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw IoError("checkpoint: unexpected end of file");
  return v;
}

} // namespace

void save_checkpoint(const std::string& path, const Checkpoint& ck) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("checkpoint: cannot open for writing: " + path);
  const Grid& g = *ck.grid;
  os.write("ZAK4", 4);
  put<std::uint32_t>(os, kCheckpointVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.d));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(g.n));
  put<double>(os, g.L);
  put<double>(os, ck.alpha);
  put<double>(os, ck.t);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(ck.fields.size()));
  for (const auto& f : ck.fields) {
    if (!f.grid->same_as(g))
      throw InvalidArgument("checkpoint: all fields must share the header grid");
    os.write(reinterpret_cast<const char*>(f.c.data()),
             static_cast<std::streamsize>(f.c.size() * sizeof(cplx)));
  }
  if (!os) throw IoError("checkpoint: write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("checkpoint: cannot open: " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "ZAK4", 4) != 0)
    throw IoError("checkpoint: bad magic in " + path);
  auto version = get<std::uint32_t>(is);
  if (version != kCheckpointVersion)
    throw IoError("checkpoint: unsupported format version " + std::to_string(version));
  int d = static_cast<int>(get<std::uint32_t>(is));
  int n = static_cast<int>(get<std::uint32_t>(is));
  double L = get<double>(is);
  Checkpoint ck;
  ck.alpha = get<double>(is);
  ck.t = get<double>(is);
  ck.grid = make_grid(d, n, L);
  auto count = get<std::uint32_t>(is);
  ck.fields.reserve(count);
  for (std::uint32_t i = 0; i < count; ++i) {
    SpectralField f(ck.grid);
    is.read(reinterpret_cast<char*>(f.c.data()),
            static_cast<std::streamsize>(f.c.size() * sizeof(cplx)));
    if (!is) throw IoError("checkpoint: truncated field data in " + path);
    ck.fields.push_back(std::move(f));
  }
  return ck;
}

} // namespace zak
