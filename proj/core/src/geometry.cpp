#include "dsflow/geometry.hpp"

#include "dsflow/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace dsflow {
namespace {

// True when g and h are both diagonal in the frame, i.e. the gradient is
// carried by the first axis only and the Hessian has no off-diagonal part.
bool frame_diagonal(const NodeJet& jet, int n) {
  for (int i = 1; i < n; ++i) {
    if (jet.grad(i) != 0.0) return false;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (jet.hess(i, j) != 0.0 || jet.hess(j, i) != 0.0) return false;
    }
  }
  return true;
}

}  // namespace

RadialGraph::RadialGraph(Grid grid, std::vector<double> rho) : grid_(std::move(grid)), rho_(std::move(rho)) {
  if (rho_.size() != static_cast<std::size_t>(grid_.size())) {
    throw InputError("radial field has " + std::to_string(rho_.size()) + " values for a grid of " +
                     std::to_string(grid_.size()) + " nodes");
  }
  for (std::size_t i = 0; i < rho_.size(); ++i) {
    if (!std::isfinite(rho_[i])) throw InputError("rho is not finite at node " + std::to_string(i));
  }
}

PointGeometry pointwise_geometry(const NodeJet& jet, int n, std::size_t node) {
  if (jet.grad.size() != n || jet.hess.rows() != n || jet.hess.cols() != n) {
    throw InputError("jet dimension does not match n");
  }
  PointGeometry pt;
  const double rho = jet.value;
  const double c = std::cosh(rho);
  const double s = std::sinh(rho);
  const FrameVector& p = jet.grad;
  const double w2 = c * c - p.squaredNorm();
  if (!(w2 > 0.0)) throw SpacelikeError(node, w2);
  const double w = std::sqrt(w2);

  pt.rho = rho;
  pt.w = w;
  pt.u = c * c / w;
  pt.phi = c;
  pt.dphi = s;
  pt.Phi = -s;
  pt.area_weight = std::pow(c, n - 1) * w;

  const FrameMatrix ppt = p * p.transpose();
  const FrameMatrix I = FrameMatrix::Identity(n, n);
  pt.g = c * c * I - ppt;
  pt.g_inv = (I + ppt / w2) / (c * c);
  pt.h = (c / w) * (jet.hess - 2.0 * std::tanh(rho) * ppt + s * c * I);

  SymVector k(static_cast<std::size_t>(n));
  if (frame_diagonal(jet, n)) {
    for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)] = pt.h(i, i) / pt.g(i, i);
  } else {
    const FrameMatrix hs = 0.5 * (pt.h + pt.h.transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<FrameMatrix> es(hs, pt.g, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw InputError("generalized eigenproblem failed at node " + std::to_string(node));
    for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  }
  std::sort(k.begin(), k.end(), std::greater<>{});
  pt.kappa = CurvatureVector(std::span<const double>(k.data(), k.size()));
  return pt;
}

PointCurvature pointwise_curvature(const NodeJet& jet, int n, std::size_t node) {
  if (!frame_diagonal(jet, n)) {
    PointGeometry pt = pointwise_geometry(jet, n, node);
    return {pt.w, pt.u, pt.phi, pt.dphi, pt.kappa};
  }
  const double e = std::exp(jet.value);
  const double c = 0.5 * (e + 1.0 / e);
  const double s = std::abs(jet.value) < 1e-3 ? std::sinh(jet.value) : 0.5 * (e - 1.0 / e);
  const double p = jet.grad(0);
  const double w2 = c * c - p * p;
  if (!(w2 > 0.0)) throw SpacelikeError(node, w2);
  const double w = std::sqrt(w2);
  const double scale = c / w;
  SymVector k(static_cast<std::size_t>(n));
  // g_00 = w^2, g_aa = cosh^2.
  k[0] = scale * (jet.hess(0, 0) - 2.0 * (s / c) * p * p + s * c) / w2;
  for (int a = 1; a < n; ++a) k[static_cast<std::size_t>(a)] = scale * (jet.hess(a, a) + s * c) / (c * c);
  // The angular entries are already non-increasing; only the meridian entry moves.
  if (std::is_sorted(k.begin() + 1, k.end(), std::greater<>{})) {
    std::rotate(k.begin(), k.begin() + 1, std::lower_bound(k.begin() + 1, k.end(), k[0], std::greater<>{}));
  } else {
    std::sort(k.begin(), k.end(), std::greater<>{});
  }
  return {w, c * c / w, c, s, CurvatureVector(std::span<const double>(k.data(), k.size()))};
}

std::vector<PointGeometry> graph_geometry(const RadialGraph& M) {
  const SphereJet jet = sphere_jet(M.rho(), M.grid());
  std::vector<PointGeometry> out;
  out.reserve(jet.size());
  for (std::size_t i = 0; i < jet.size(); ++i) out.push_back(pointwise_geometry(jet[i], M.dim(), i));
  return out;
}

double normal_speed(const PointGeometry& pt, int k) {
  const int n = pt.kappa.size();
  if (pt.dphi == 0.0) return pt.u;
  if (!gamma_cone_test(pt.kappa, k, ConeMode::strict)) {
    throw ConeError("principal curvatures left Gamma_" + std::to_string(k));
  }
  const double sk = sigma(pt.kappa, k);
  return pt.u - normalization(n, k) * pt.dphi * std::pow(sk, -1.0 / k);
}

ValidationReport validate_hypersurface(const RadialGraph& M, int k) {
  const int n = M.dim();
  if (k < 1 || k > n) throw DomainError("convexity order k must be in [1, n]");
  const SphereJet jet = sphere_jet(M.rho(), M.grid());
  ValidationReport rep;
  rep.min_w2 = std::numeric_limits<double>::infinity();
  rep.min_sigma.assign(static_cast<std::size_t>(k), std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < jet.size(); ++i) {
    const double c = std::cosh(jet[i].value);
    const double w2 = c * c - jet[i].grad.squaredNorm();
    rep.min_w2 = std::min(rep.min_w2, w2);
    if (!(w2 > 0.0)) {
      rep.spacelike = false;
      if (rep.first_bad_node < 0) rep.first_bad_node = static_cast<std::ptrdiff_t>(i);
      continue;
    }
    const PointGeometry pt = pointwise_geometry(jet[i], n, i);
    const SymVector s = all_sigmas(pt.kappa);
    for (int j = 1; j <= k; ++j) {
      const double v = s[static_cast<std::size_t>(j)];
      rep.min_sigma[static_cast<std::size_t>(j - 1)] = std::min(rep.min_sigma[static_cast<std::size_t>(j - 1)], v);
      if (!(v > 0.0)) {
        rep.convex = false;
        if (rep.first_bad_node < 0) rep.first_bad_node = static_cast<std::ptrdiff_t>(i);
      }
    }
    for (double x : pt.kappa.values()) rep.max_abs_kappa = std::max(rep.max_abs_kappa, std::abs(x));
  }
  return rep;
}

IdentityReport identity_residuals(const RadialGraph& M) {
  const Grid& grid = M.grid();
  const int n = M.dim();
  const std::vector<PointGeometry> geo = graph_geometry(M);
  const SphereJet rho_jet = sphere_jet(M.rho(), grid);
  const std::size_t N = geo.size();

  std::vector<double> u(N);
  for (std::size_t i = 0; i < N; ++i) u[i] = geo[i].u;
  const SphereJet u_jet = sphere_jet(u, grid);

  IdentityReport rep;
  std::vector<FrameVector> flux(N);
  std::vector<double> target(N);
  for (std::size_t i = 0; i < N; ++i) {
    const PointGeometry& pt = geo[i];
    // grad Phi in the frame: Phi = -sinh(rho).
    const FrameVector dPhi = -pt.phi * rho_jet[i].grad;
    const FrameVector r = u_jet[i].grad + pt.h * (pt.g_inv * dPhi);
    rep.gradient = std::max(rep.gradient, r.norm());
    flux[i] = pt.area_weight * (pt.g_inv * dPhi);
    target[i] = n * pt.dphi - sigma(pt.kappa, 1) * pt.u;
  }
  const std::vector<double> div = divergence(flux, grid);
  std::vector<double> weighted(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double lap = div[i] / geo[i].area_weight;
    const double res = lap - target[i];
    rep.laplacian = std::max(rep.laplacian, std::abs(res));
    weighted[i] = res * geo[i].area_weight;
  }
  rep.laplacian_integral = integrate(weighted, grid);
  return rep;
}

}  // namespace dsflow
