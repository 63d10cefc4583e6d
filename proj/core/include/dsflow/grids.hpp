#pragma once

// Scalar fields on the round sphere S^n: node layouts, covariant derivative
// stencils in a sigma-orthonormal frame, divergence, and quadrature.
//
// AxisymGrid  -- fields depending on the polar angle only, any 2 <= n <= kMaxDim.
//                Nodes theta_j = j*pi/(m-1) including both poles; the field is
//                extended evenly through each pole (rho'(0) = rho'(pi) = 0).
//                Three-point centred stencils (second order).
//                Frame: {d_theta, sin^{-1}(theta) d_{phi_a}}, a = 1..n-1.
// LatLongGrid -- n = 2, rings theta_j = (j+1/2)*pi/ntheta, meridians
//                phi_l = 2*pi*l/nphi.  A stencil reaching across a pole reads the
//                ring at the antipodal longitude phi + pi.  Five-point centred
//                stencils (fourth order); for non-zonal fields the rings next
//                to a pole lose one order through the 1/sin(theta) frame factor.
//                Frame: {d_theta, sin^{-1}(theta) d_phi}.
//
// Quadrature is exact for band-limited zonal integrands: Clenshaw-Curtis in
// x = cos(theta) on the axisym nodes (trapezoid when n is odd), Fejer's first
// rule on the latlong rings, trapezoid in phi.

#include "dsflow/symfunc.hpp"

#include <Eigen/Core>

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace dsflow {

using FrameVector = Eigen::Matrix<double, Eigen::Dynamic, 1, 0, kMaxDim, 1>;
using FrameMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, kMaxDim, kMaxDim>;

/// |S^n| = 2 pi^{(n+1)/2} / Gamma((n+1)/2).
double sphere_area(int n);

class AxisymGrid {
 public:
  /// m >= 5 and odd.
  AxisymGrid(int n, int m);

  int dim() const noexcept { return n_; }
  int size() const noexcept { return m_; }
  double spacing() const noexcept { return h_; }
  double theta(int j) const noexcept { return j * h_; }
  std::span<const double> weights() const noexcept { return weights_; }
  /// cot(theta_j); zero at the poles.
  double cot(int j) const noexcept { return cot_[static_cast<std::size_t>(j)]; }

 private:
  int n_;
  int m_;
  double h_;
  std::vector<double> weights_;
  std::vector<double> cot_;
};

class LatLongGrid {
 public:
  /// ntheta >= 8, nphi >= 16 and even.
  LatLongGrid(int ntheta, int nphi);

  int dim() const noexcept { return 2; }
  int size() const noexcept { return ntheta_ * nphi_; }
  int ntheta() const noexcept { return ntheta_; }
  int nphi() const noexcept { return nphi_; }
  double dtheta() const noexcept { return dtheta_; }
  double dphi() const noexcept { return dphi_; }
  double theta(int j) const noexcept { return (j + 0.5) * dtheta_; }
  double phi(int l) const noexcept { return l * dphi_; }
  int index(int j, int l) const noexcept { return j * nphi_ + l; }
  /// Smallest distance between neighbouring nodes (along the first ring).
  double spacing() const noexcept;
  std::span<const double> weights() const noexcept { return weights_; }

 private:
  int ntheta_;
  int nphi_;
  double dtheta_;
  double dphi_;
  std::vector<double> weights_;
};

/// Either grid; immutable after construction and cheap to copy.
class Grid {
 public:
  Grid(AxisymGrid g) : g_(std::move(g)) {}  // NOLINT(google-explicit-constructor)
  Grid(LatLongGrid g) : g_(std::move(g)) {}  // NOLINT(google-explicit-constructor)

  int dim() const;
  int size() const;
  double spacing() const;
  std::span<const double> weights() const;
  /// Polar angle of a node.
  double theta_of(int node) const;
  bool is_axisym() const noexcept { return std::holds_alternative<AxisymGrid>(g_); }
  /// "axisym" or "latlong".
  std::string kind() const;
  /// "m" or "ntheta,nphi".
  std::string dims() const;

  const AxisymGrid& axisym() const { return std::get<AxisymGrid>(g_); }
  const LatLongGrid& latlong() const { return std::get<LatLongGrid>(g_); }
  const std::variant<AxisymGrid, LatLongGrid>& variant() const noexcept { return g_; }

 private:
  std::variant<AxisymGrid, LatLongGrid> g_;
};

/// Value, frame gradient and symmetric frame Hessian of a field at one node.
struct NodeJet {
  double value = 0.0;
  FrameVector grad;
  FrameMatrix hess;
};

using SphereJet = std::vector<NodeJet>;

/// Second-order centred derivatives of a nodal field; throws InputError on NaN/inf.
SphereJet sphere_jet(std::span<const double> field, const Grid& grid);

/// Quadrature of a nodal field against d sigma.
double integrate(std::span<const double> field, const Grid& grid);

/// Round-sphere divergence of a tangent field given by frame components per node.
std::vector<double> divergence(std::span<const FrameVector> field, const Grid& grid);

}  // namespace dsflow
