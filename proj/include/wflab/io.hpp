#pragma once

#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include "wflab/grid.hpp"

namespace wflab {

// Binary field cache. Layout (little-endian, as on every platform we
// target):
//   bytes  0..15   magic "WFLABFIELDCACHE1"
//   u32            format version (1)
//   u32            rank
//   u64 * rank     points per axis
//   f64 * rank     period per axis (0 marks a non-spatial axis, e.g. a
//                  frequency ladder)
//   f64 * total    samples, row-major
inline constexpr char kFieldMagic[17] = "WFLABFIELDCACHE1";

inline void write_u32(std::ostream& os, std::uint32_t x) { os.write(reinterpret_cast<const char*>(&x), 4); }
inline void write_u64(std::ostream& os, std::uint64_t x) { os.write(reinterpret_cast<const char*>(&x), 8); }
inline void write_f64(std::ostream& os, double x) { os.write(reinterpret_cast<const char*>(&x), 8); }
inline std::uint32_t read_u32(std::istream& is) { std::uint32_t x; is.read(reinterpret_cast<char*>(&x), 4); return x; }
inline std::uint64_t read_u64(std::istream& is) { std::uint64_t x; is.read(reinterpret_cast<char*>(&x), 8); return x; }
inline double read_f64(std::istream& is) { double x; is.read(reinterpret_cast<char*>(&x), 8); return x; }

inline void save_field_cache(const Field& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw precondition_error("save_field_cache: cannot open " + path);
  os.write(kFieldMagic, 16);
  write_u32(os, 1);
  write_u32(os, std::uint32_t(f.grid.dim()));
  for (auto n : f.grid.n) write_u64(os, n);
  for (auto p : f.grid.period) write_f64(os, p);
  os.write(reinterpret_cast<const char*>(f.v.data()), std::streamsize(f.v.size() * 8));
  if (!os) throw numerical_error("save_field_cache: write failed for " + path);
}

inline Field load_field_cache(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw precondition_error("load_field_cache: cannot open " + path);
  char magic[16];
  is.read(magic, 16);
  if (!is || std::memcmp(magic, kFieldMagic, 16) != 0)
    throw precondition_error("load_field_cache: bad magic in " + path);
  if (read_u32(is) != 1) throw precondition_error("load_field_cache: unsupported version");
  std::uint32_t rank = read_u32(is);
  if (rank == 0 || rank > 8) throw precondition_error("load_field_cache: bad rank");
  std::vector<std::size_t> n(rank);
  std::vector<double> period(rank);
  for (auto& x : n) x = std::size_t(read_u64(is));
  for (auto& x : period) x = read_f64(is);
  // period 0 marks ladder axes; GridDesc wants positive entries.
  for (auto& p : period)
    if (p == 0.0) p = 1.0;
  Field f(GridDesc(std::move(n), std::move(period)));
  is.read(reinterpret_cast<char*>(f.v.data()), std::streamsize(f.v.size() * 8));
  if (!is) throw precondition_error("load_field_cache: truncated payload in " + path);
  return f;
}

// Columnar CSV: one row per sample, coordinates then value.
inline void save_field_csv(const Field& f, const std::string& path) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw precondition_error("save_field_csv: cannot open " + path);
  const auto& g = f.grid;
  for (std::size_t a = 0; a < g.dim(); ++a) os << "x" << a << ",";
  os << "value\n";
  char buf[64];
  std::vector<std::size_t> idx(g.dim());
  for (std::size_t i = 0; i < f.size(); ++i) {
    g.unflatten(i, idx.data());
    for (std::size_t a = 0; a < g.dim(); ++a) {
      std::snprintf(buf, sizeof buf, "%.17g,", g.coord(a, idx[a]));
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g\n", f.v[i]);
    os << buf;
  }
}

}  // namespace wflab
