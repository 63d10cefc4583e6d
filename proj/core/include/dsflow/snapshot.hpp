#pragma once

// Text snapshot of a radial field:
//
//   DSFLOW v1
//   n=<int> grid=<axisym|latlong> dims=<m|ntheta,nphi>
//   <rho values in node order, whitespace separated, 17 significant digits>
//
// Values round-trip bit-exactly.

#include "dsflow/grids.hpp"

#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace dsflow {

struct Snapshot {
  Grid grid;
  std::vector<double> rho;
};

void write_snapshot(std::ostream& os, const Grid& grid, std::span<const double> rho);
void write_snapshot(const std::filesystem::path& path, const Grid& grid, std::span<const double> rho);

/// Throws ParseError carrying the offending line number.
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace dsflow
