#include "ctmhd/snapshot.hpp"

#include <fmt/core.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "ctmhd/mhd.hpp"

namespace ctmhd {

namespace {

constexpr const char* kMagic = "CTMHD-SNAPSHOT";

void put_le(std::ostream& out, double v) {
  std::uint64_t u;
  std::memcpy(&u, &v, 8);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(u >> (8 * i));
  out.write(reinterpret_cast<const char*>(b), 8);
}

double get_le(const unsigned char* b) {
  std::uint64_t u = 0;
  for (int i = 0; i < 8; ++i) u |= std::uint64_t(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &u, 8);
  return v;
}

}  // namespace

const std::vector<double>& Snapshot::variable(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return data[i];
  throw ConfigError("snapshot: no variable '" + name + "'");
}

Snapshot make_snapshot(const CtState& state) {
  Snapshot s;
  s.grid = state.q.spec();
  s.time = state.time;
  s.names = {"rho", "mx", "my", "mz", "E", "bx", "by", "bz", "a1", "a2", "a3"};
  for (int m = 0; m < kNumVars; ++m) s.data.push_back(state.q.interior(m));
  for (int c = 0; c < 3; ++c) s.data.push_back(state.A.a.interior(c));
  return s;
}

void write_snapshot(const std::string& path, const Snapshot& snap) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("snapshot: cannot write '" + path + "'");
  const GridSpec& g = snap.grid;
  out << kMagic << '\n'
      << "version 1\n"
      << fmt::format("nx ny nz {} {} {}\n", g.nx, g.ny, g.nz)
      << fmt::format("dx dy dz {:.17g} {:.17g} {:.17g}\n", g.dx, g.dy, g.dz)
      << fmt::format("origin {:.17g} {:.17g} {:.17g}\n", g.x0, g.y0, g.z0)
      << fmt::format("time {:.17g}\n", snap.time) << "variables";
  for (const auto& n : snap.names) out << ' ' << n;
  out << "\nbyteorder little\nend_header\n";
  for (const auto& block : snap.data)
    for (double v : block) put_le(out, v);
  if (!out) throw ConfigError("snapshot: write failed for '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("snapshot: cannot open '" + path + "'");
  Snapshot s;
  std::string line;
  if (!std::getline(in, line) || line != kMagic) throw ConfigError("snapshot: bad magic in '" + path + "'");
  bool little = false;
  while (std::getline(in, line) && line != "end_header") {
    std::istringstream is(line);
    std::string key;
    is >> key;
    if (key == "nx") {
      std::string a, b;
      is >> a >> b >> s.grid.nx >> s.grid.ny >> s.grid.nz;
    } else if (key == "dx") {
      std::string a, b;
      is >> a >> b >> s.grid.dx >> s.grid.dy >> s.grid.dz;
    } else if (key == "origin") {
      is >> s.grid.x0 >> s.grid.y0 >> s.grid.z0;
    } else if (key == "time") {
      is >> s.time;
    } else if (key == "variables") {
      std::string n;
      while (is >> n) s.names.push_back(n);
    } else if (key == "byteorder") {
      std::string b;
      is >> b;
      little = b == "little";
    }
  }
  if (line != "end_header" || !little) throw ConfigError("snapshot: malformed header in '" + path + "'");
  const std::size_t count = s.grid.cells();
  std::vector<unsigned char> buf(count * 8);
  for (std::size_t v = 0; v < s.names.size(); ++v) {
    in.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size()));
    if (!in) throw ConfigError("snapshot: truncated data in '" + path + "'");
    std::vector<double> block(count);
    for (std::size_t i = 0; i < count; ++i) block[i] = get_le(&buf[8 * i]);
    s.data.push_back(std::move(block));
  }
  return s;
}

}  // namespace ctmhd
