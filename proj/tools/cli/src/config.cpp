#include "dsflow/cli/config.hpp"

#include "dsflow/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

namespace dsflow::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value, std::size_t line) {
  T out{};
  const char* first = value.data();
  const char* last = first + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError("'" + key + "' expects a number, got '" + value + "'", line);
  }
  return out;
}

}  // namespace

Grid RunConfig::make_grid() const {
  if (grid == "axisym") return AxisymGrid(n, m);
  if (grid == "latlong") {
    if (n != 2) throw DomainError("latlong grid requires n = 2");
    return LatLongGrid(ntheta, nphi);
  }
  throw DomainError("grid must be axisym or latlong");
}

std::vector<double> RunConfig::sample_rho0(const Grid& g) const {
  if (!rho0) throw DomainError("rho0 is not set");
  std::vector<double> rho(static_cast<std::size_t>(g.size()));
  if (g.is_axisym()) {
    if (rho0->uses_phi()) throw DomainError("rho0 depends on phi but the grid is axisymmetric");
    const AxisymGrid& a = g.axisym();
    for (int j = 0; j < a.size(); ++j) rho[static_cast<std::size_t>(j)] = rho0->eval(a.theta(j));
  } else {
    const LatLongGrid& ll = g.latlong();
    for (int j = 0; j < ll.ntheta(); ++j) {
      for (int l = 0; l < ll.nphi(); ++l) {
        rho[static_cast<std::size_t>(ll.index(j, l))] = rho0->eval(ll.theta(j), ll.phi(l));
      }
    }
  }
  for (std::size_t i = 0; i < rho.size(); ++i) {
    if (!std::isfinite(rho[i])) throw DomainError("rho0 is not finite at node " + std::to_string(i));
  }
  return rho;
}

RadialGraph RunConfig::initial_graph() const {
  Grid g = make_grid();
  auto rho = sample_rho0(g);
  return RadialGraph(std::move(g), std::move(rho));
}

RunConfig parse_config(std::istream& is) {
  RunConfig c;
  std::set<std::string> seen;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(is, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line);
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (value.empty()) throw ParseError("empty value for '" + key + "'", line);
    if (!seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", line);

    if (key == "n") c.n = parse_number<int>(key, value, line);
    else if (key == "k") c.flow.k = parse_number<int>(key, value, line);
    else if (key == "m") c.m = parse_number<int>(key, value, line);
    else if (key == "ntheta") c.ntheta = parse_number<int>(key, value, line);
    else if (key == "nphi") c.nphi = parse_number<int>(key, value, line);
    else if (key == "cfl") c.flow.cfl = parse_number<double>(key, value, line);
    else if (key == "t_max") c.flow.t_max = parse_number<double>(key, value, line);
    else if (key == "conv_tol") c.flow.conv_tol = parse_number<double>(key, value, line);
    else if (key == "monitor_every") c.flow.monitor_every = parse_number<int>(key, value, line);
    else if (key == "out") c.out = value;
    else if (key == "grid") {
      if (value != "axisym" && value != "latlong") throw ParseError("grid must be axisym or latlong", line);
      c.grid = value;
    } else if (key == "scheme") {
      if (value == "euler") c.flow.scheme = Scheme::euler;
      else if (value == "rk4") c.flow.scheme = Scheme::rk4;
      else throw ParseError("scheme must be euler or rk4", line);
    } else if (key == "rho0") {
      try {
        c.rho0 = Expression::parse(value);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line);
      }
    } else {
      throw ParseError("unknown key '" + key + "'", line);
    }
  }
  if (!c.rho0) throw ParseError("missing required key 'rho0'", line);
  if (c.n < 2 || c.n > kMaxDim) throw DomainError("n must be in [2, " + std::to_string(kMaxDim) + "]");
  check_config(c.flow, c.n);
  if (c.grid == "latlong" && c.n != 2) throw DomainError("latlong grid requires n = 2");
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open config file " + path.string());
  return parse_config(is);
}

}  // namespace dsflow::cli
