#include "qsplit/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace qsplit {

namespace {

constexpr char kMagic[4] = {'Q', 'S', 'P', 'L'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw std::runtime_error("snapshot: truncated file");
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const Field& f, double time) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("snapshot: cannot open " + path);
  os.write(kMagic, 4);
  put<std::uint32_t>(os, kVersion);
  const int n = f.spec.dims();
  put<std::uint32_t>(os, static_cast<std::uint32_t>(n));
  for (int a = 0; a < n; ++a) put<std::uint32_t>(os, static_cast<std::uint32_t>(f.spec.points[a]));
  for (int a = 0; a < n; ++a) put<double>(os, f.spec.half_widths[a]);
  put<double>(os, time);
  for (int a = 0; a < n; ++a) put<std::uint8_t>(os, static_cast<std::uint8_t>(f.axis_state[a]));
  for (std::int64_t i = 0; i < f.values.size(); ++i) {
    put<double>(os, f.values[i].real());
    put<double>(os, f.values[i].imag());
  }
  if (!os) throw std::runtime_error("snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("snapshot: bad magic in " + path);
  if (get<std::uint32_t>(is) != kVersion)
    throw std::runtime_error("snapshot: unsupported version in " + path);
  const auto n = static_cast<int>(get<std::uint32_t>(is));
  if (n < 1 || n > 16) throw std::runtime_error("snapshot: bad dimension count");
  std::vector<int> pts(n);
  std::vector<double> rs(n);
  for (int a = 0; a < n; ++a) pts[a] = static_cast<int>(get<std::uint32_t>(is));
  for (int a = 0; a < n; ++a) rs[a] = get<double>(is);
  Snapshot snap;
  snap.time = get<double>(is);
  snap.field.spec = GridSpec::make(pts, rs);
  snap.field.axis_state.resize(n);
  for (int a = 0; a < n; ++a)
    snap.field.axis_state[a] = static_cast<AxisState>(get<std::uint8_t>(is));
  snap.field.values.resize(snap.field.spec.size());
  for (std::int64_t i = 0; i < snap.field.values.size(); ++i) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    snap.field.values[i] = cplx(re, im);
  }
  return snap;
}

}  // namespace qsplit
