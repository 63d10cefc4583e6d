#pragma once

// Extrinsic geometry of a spacelike radial graph M = {(rho(xi), xi)} in de Sitter
// space, written in coordinates Y(r, xi) = sinh(r) E_1 + cosh(r) xi with
// ambient metric -dr^2 + cosh^2(r) sigma.
//
// All tensors are expressed in the sigma-orthonormal frame of the grid, so with
// p = grad rho and H = Hess rho (round-sphere covariant Hessian):
//
//   w^2  = cosh^2 rho - |p|^2                       (spacelike iff > 0)
//   g    = cosh^2 rho I - p p^T
//   g^-1 = (I + p p^T / w^2) / cosh^2 rho
//   h    = (cosh rho / w) (H - 2 tanh(rho) p p^T + sinh rho cosh rho I)
//   u    = cosh^2 rho / w
//
// and the area density against d sigma follows from
// det g = cosh^{2n} rho (1 - |p|^2 / cosh^2 rho):  d mu_g = cosh^{n-1}(rho) w d sigma.

#include "dsflow/grids.hpp"
#include "dsflow/symfunc.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace dsflow {

/// Star-shaped hypersurface given by its radial function on a sphere grid.
class RadialGraph {
 public:
  RadialGraph(Grid grid, std::vector<double> rho);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const double> rho() const noexcept { return rho_; }
  int dim() const { return grid_.dim(); }
  int size() const { return grid_.size(); }

 private:
  Grid grid_;
  std::vector<double> rho_;
};

struct PointGeometry {
  double rho = 0.0;
  double w = 0.0;  // Lorentz factor
  double u = 0.0;  // support function
  FrameMatrix g;
  FrameMatrix g_inv;
  FrameMatrix h;
  CurvatureVector kappa{0.0, 0.0};  // sorted non-increasing
  double area_weight = 0.0;         // cosh^{n-1}(rho) w
  double Phi = 0.0;                 // -sinh rho
  double dphi = 0.0;                // phi'(rho) = sinh rho
  double phi = 0.0;                 // cosh rho
};

/// Throws SpacelikeError (carrying `node`) when cosh^2 rho - |grad rho|^2 <= 0.
PointGeometry pointwise_geometry(const NodeJet& jet, int n, std::size_t node = 0);

/// Scalars the flow needs at one node.
struct PointCurvature {
  double w = 0.0;
  double u = 0.0;
  double cosh_rho = 1.0;
  double sinh_rho = 0.0;
  CurvatureVector kappa{0.0, 0.0};  // sorted non-increasing
};

/// Same w, u, kappa as pointwise_geometry; frame-diagonal jets (every axisym
/// node) skip the matrix assembly.
PointCurvature pointwise_curvature(const NodeJet& jet, int n, std::size_t node = 0);

/// Geometry at every node of M.
std::vector<PointGeometry> graph_geometry(const RadialGraph& M);

/// S = u - b_{n,k} phi' sigma_k^{-1/k}; throws ConeError unless kappa is strictly in Gamma_k.
/// S = u - b_{n,k} phi'(rho) sigma_k^{-1/k}.  Where phi' = 0 (rho = 0) the
/// curvature term is taken as 0 and S = u, whatever sigma_k is; elsewhere
/// throws ConeError outside the open cone Gamma_k.
double normal_speed(const PointGeometry& pt, int k);

struct ValidationReport {
  bool spacelike = true;
  bool convex = true;      // strictly k-convex at every spacelike node
  double min_w2 = 0.0;
  SymVector min_sigma;     // entry j-1 is min over nodes of sigma_j, j = 1..k
  double max_abs_kappa = 0.0;
  std::ptrdiff_t first_bad_node = -1;
  bool passed() const noexcept { return spacelike && convex; }
};

ValidationReport validate_hypersurface(const RadialGraph& M, int k);

struct IdentityReport {
  double gradient = 0.0;           // max |grad u + h(grad Phi, .)|
  double laplacian = 0.0;          // max |Lap_g Phi - (n phi' - sigma_1 u)|
  double laplacian_integral = 0.0; // int (Lap_g Phi - (n phi' - sigma_1 u)) d mu_g
};

/// Discrete residuals of grad u = -h(grad Phi) and of the traced identity
/// Lap_g Phi = n phi' - sigma_1 u, with Lap_g in divergence form.
IdentityReport identity_residuals(const RadialGraph& M);

}  // namespace dsflow
