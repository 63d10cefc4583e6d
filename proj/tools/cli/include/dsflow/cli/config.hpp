#pragma once

// Run configuration read from a key=value text file.
//
//   n = 3
//   k = 2
//   grid = axisym          # or latlong
//   m = 401                # axisym nodes; latlong uses ntheta, nphi
//   rho0 = 1.0 + 0.1*cos(2*theta)
//   cfl = 0.1
//   t_max = 50
//   conv_tol = 1e-6
//   monitor_every = 100
//   scheme = euler         # or rk4
//   out = runs/example
//
// '#' starts a comment.  Unknown or repeated keys are errors.

#include "dsflow/cli/expr.hpp"
#include "dsflow/flow.hpp"
#include "dsflow/grids.hpp"

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace dsflow::cli {

struct RunConfig {
  int n = 3;
  std::string grid = "axisym";
  int m = 201;
  int ntheta = 64;
  int nphi = 128;
  std::optional<Expression> rho0;
  FlowConfig flow;
  std::filesystem::path out = "dsflow-out";

  Grid make_grid() const;
  /// Samples rho0 at every node of `grid`.
  std::vector<double> sample_rho0(const Grid& grid) const;
  RadialGraph initial_graph() const;
};

/// Throws ParseError (with line number) or DomainError.
RunConfig parse_config(std::istream& is);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace dsflow::cli
