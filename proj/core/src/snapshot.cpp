#include "dsflow/snapshot.hpp"

#include "dsflow/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace dsflow {
namespace {

constexpr const char* kMagic = "DSFLOW v1";

int parse_int(const std::string& s, std::size_t line) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError("bad integer '" + s + "'", line);
  return v;
}

Grid make_grid(const std::map<std::string, std::string>& kv, std::size_t line) {
  for (const char* key : {"n", "grid", "dims"}) {
    if (!kv.contains(key)) throw ParseError(std::string("missing '") + key + "' in grid line", line);
  }
  const int n = parse_int(kv.at("n"), line);
  const std::string& kind = kv.at("grid");
  const std::string& dims = kv.at("dims");
  try {
    if (kind == "axisym") return AxisymGrid(n, parse_int(dims, line));
    if (kind == "latlong") {
      const auto comma = dims.find(',');
      if (comma == std::string::npos) throw ParseError("latlong dims must be 'ntheta,nphi'", line);
      if (n != 2) throw ParseError("latlong grids have n = 2", line);
      return LatLongGrid(parse_int(dims.substr(0, comma), line), parse_int(dims.substr(comma + 1), line));
    }
  } catch (const DomainError& e) {
    throw ParseError(e.what(), line);
  }
  throw ParseError("unknown grid kind '" + kind + "'", line);
}

}  // namespace

void write_snapshot(std::ostream& os, const Grid& grid, std::span<const double> rho) {
  if (rho.size() != static_cast<std::size_t>(grid.size())) {
    throw InputError("snapshot field size does not match grid");
  }
  os << kMagic << '\n'
     << "n=" << grid.dim() << " grid=" << grid.kind() << " dims=" << grid.dims() << '\n';
  char buf[32];
  for (std::size_t i = 0; i < rho.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", rho[i]);
    os << buf << ((i + 1) % 8 == 0 || i + 1 == rho.size() ? '\n' : ' ');
  }
}

void write_snapshot(const std::filesystem::path& path, const Grid& grid, std::span<const double> rho) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot open " + path.string() + " for writing");
  write_snapshot(os, grid, rho);
}

Snapshot read_snapshot(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  auto next = [&]() -> bool {
    while (std::getline(is, line)) {
      ++lineno;
      if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
    }
    return false;
  };
  if (!next()) throw ParseError("empty snapshot", 1);
  if (line.rfind(kMagic, 0) != 0) throw ParseError("expected header '" + std::string(kMagic) + "'", lineno);
  if (!next()) throw ParseError("missing grid line", lineno + 1);

  std::map<std::string, std::string> kv;
  {
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) throw ParseError("expected key=value, got '" + tok + "'", lineno);
      kv[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
  }
  Snapshot snap{make_grid(kv, lineno), {}};
  snap.rho.reserve(static_cast<std::size_t>(snap.grid.size()));

  while (next()) {
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError("bad value '" + tok + "'", lineno);
      }
      if (snap.rho.size() == static_cast<std::size_t>(snap.grid.size())) {
        throw ParseError("more values than grid nodes", lineno);
      }
      snap.rho.push_back(v);
    }
  }
  if (snap.rho.size() != static_cast<std::size_t>(snap.grid.size())) {
    throw ParseError("expected " + std::to_string(snap.grid.size()) + " values, found " +
                         std::to_string(snap.rho.size()),
                     lineno);
  }
  return snap;
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open " + path.string());
  return read_snapshot(is);
}

}  // namespace dsflow
