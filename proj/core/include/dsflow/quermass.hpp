#pragma once

// Quermassintegrals of M = boundary of Omega:
//
//   A_{-1} = Vol(Omega),  A_0 = |M|,  A_1 = int sigma_1 - n Vol,
//   A_m    = int sigma_m - (n-m+1)/(m-1) A_{m-2},   2 <= m <= n.
//
// Vol uses the Lorentzian density |det gbar|^{1/2} = cosh^n r in (r, xi):
// Vol(Omega) = int_{S^n} int_0^{rho(xi)} cosh^n r dr d sigma.

#include "dsflow/geometry.hpp"

#include <vector>

namespace dsflow {

/// Closed forms for the coordinate slice {r = const}: kappa_i = tanh r.
class SliceModel {
 public:
  SliceModel(double r, int n);

  double radius() const noexcept { return r_; }
  int dim() const noexcept { return n_; }
  double kappa() const;
  double area() const;
  double sigma(int m) const;
  /// omega_n int_0^r cosh^n, from the reduction formula for int cosh^n.
  double volume() const;
  /// A_m for -1 <= m <= n.
  double quermass(int m) const;
  std::vector<double> quermass_all() const;

 private:
  double r_;
  int n_;
};

/// A_{-1} .. A_n from Vol and the curvature integrals int sigma_m d mu, m = 0..n.
std::vector<double> quermass_recursion(double volume, const std::vector<double>& sigma_integrals, int n);

struct QuermassReport {
  std::vector<double> A;            // A[m + 1] = A_m, m = -1..n
  std::vector<double> hm_residual;  // m = 0..n-1
  double gap = 0.0;                 // xi_{2,0}(A_0) - A_2; NaN when A_0 < omega_n
  double at(int m) const { return A.at(static_cast<std::size_t>(m + 1)); }
};

double curvature_integral(const RadialGraph& M, int m);
double enclosed_volume(const RadialGraph& M);
QuermassReport quermass_all(const RadialGraph& M);

/// int u sigma_{m+1} d mu - (n-m)/(m+1) int phi' sigma_m d mu.
double hsiung_minkowski_residual(const RadialGraph& M, int m);

/// xi_{k,0}(a): A_k of the coordinate slice whose area is a (a >= omega_n).
double xi(double a, int n, int k = 2);

/// Slice radius with area a.
double slice_radius_for_area(double a, int n);

/// xi_{2,0}(A_0) - A_2; non-negative for 2-convex M, zero on slices.
double inequality_gap(const RadialGraph& M);

}  // namespace dsflow
