#include "dsflow/errors.hpp"
#include "dsflow/geometry.hpp"
#include "testing.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

using namespace dsflow;
using oracle::Rng;

namespace {

NodeJet flat_jet(int n, double rho) {
  return NodeJet{rho, FrameVector::Zero(n), FrameMatrix::Zero(n, n)};
}

// Exact jet of an axisymmetric profile at theta (0 < theta < pi).
NodeJet analytic_jet(int n, double r, double r1, double r2, double theta) {
  NodeJet j = flat_jet(n, r);
  j.grad(0) = r1;
  j.hess(0, 0) = r2;
  for (int a = 1; a < n; ++a) j.hess(a, a) = r1 * std::cos(theta) / std::sin(theta);
  return j;
}

double profile(double t) { return 0.8 + 0.15 * std::cos(t) + 0.1 * std::cos(2 * t); }
double profile_d1(double t) { return -0.15 * std::sin(t) - 0.2 * std::sin(2 * t); }
double profile_d2(double t) { return -0.15 * std::cos(t) - 0.4 * std::cos(2 * t); }

NodeJet random_jet(Rng& rng, int n) {
  std::uniform_real_distribution<double> u(-0.4, 0.4);
  NodeJet j = flat_jet(n, 0.5 + u(rng));
  for (int i = 0; i < n; ++i) j.grad(i) = u(rng);
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) j.hess(i, k) = j.hess(k, i) = u(rng);
  return j;
}

}  // namespace

TEST(PointwiseGeometry, SliceClosedForm) {
  const PointGeometry pt = pointwise_geometry(flat_jet(3, 1.0), 3);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(pt.kappa[i], 0.7615941559557649, 1e-15);
  EXPECT_NEAR(pt.u, 1.5430806348152437, 1e-15);
  EXPECT_NEAR(pt.w, std::cosh(1.0), 1e-15);
  EXPECT_NEAR(pt.area_weight, std::pow(std::cosh(1.0), 3), 1e-14);
  EXPECT_NEAR(pt.dphi, std::sinh(1.0), 1e-15);
  EXPECT_NEAR(pt.Phi, -std::sinh(1.0), 1e-15);
}

TEST(PointwiseGeometry, Equator) {
  const PointGeometry pt = pointwise_geometry(flat_jet(4, 0.0), 4);
  for (int i = 0; i < 4; ++i) EXPECT_EQ(pt.kappa[i], 0.0);
  EXPECT_NEAR((pt.g - FrameMatrix::Identity(4, 4)).norm(), 0.0, 1e-15);
  EXPECT_EQ(pt.u, 1.0);
  EXPECT_EQ(pt.Phi, 0.0);
}

TEST(PointwiseGeometry, RejectsTimelikeGradient) {
  NodeJet j = flat_jet(2, 0.0);
  j.grad(0) = 1.0;  // |grad|^2 = cosh^2 0
  EXPECT_THROW(pointwise_geometry(j, 2), SpacelikeError);
  EXPECT_THROW(pointwise_curvature(j, 2), SpacelikeError);
  EXPECT_THROW(pointwise_geometry(flat_jet(2, 0.0), 3), InputError);
}

TEST(PointwiseGeometry, MatchesEmbeddingOracle) {
  // Exact jets against second fundamental forms of the Minkowski embedding.
  for (int n : {2, 3, 5}) {
    for (double t : {0.3, 1.0, 1.7, 2.6}) {
      const PointGeometry pt = pointwise_geometry(analytic_jet(n, profile(t), profile_d1(t), profile_d2(t), t), n);
      const auto ref = oracle::embedding_curvatures(profile, t, 1e-4);
      // Meridian curvature appears once, the rotational one n-1 times.
      std::vector<double> expect{ref.meridian};
      for (int a = 1; a < n; ++a) expect.push_back(ref.rotational);
      std::sort(expect.begin(), expect.end(), std::greater<>{});
      for (int i = 0; i < n; ++i) EXPECT_NEAR(pt.kappa[i], expect[static_cast<std::size_t>(i)], 1e-7) << n << " " << t;
      EXPECT_NEAR(ref.dr_dot_nu, -std::cosh(pt.rho) / pt.w, 1e-7);
    }
  }
}

TEST(PointwiseGeometry, GridCurvaturesConvergeToEmbeddingOracle) {
  double prev = 0.0;
  for (int m : {101, 201, 401}) {
    const RadialGraph M = oracle::axisym_graph(3, m, profile);
    const auto geo = graph_geometry(M);
    const AxisymGrid& g = M.grid().axisym();
    double err = 0.0;
    for (int j = 1; j < m - 1; ++j) {
      const auto ref = oracle::embedding_curvatures(profile, g.theta(j), 1e-4);
      const auto& k = geo[static_cast<std::size_t>(j)].kappa;
      const double hi = std::max(ref.meridian, ref.rotational), lo = std::min(ref.meridian, ref.rotational);
      err = std::max({err, std::abs(k[0] - hi), std::abs(k[2] - lo)});
    }
    if (prev > 0.0) EXPECT_NEAR(std::log2(prev / err), 2.0, 0.2);
    prev = err;
  }
}

TEST(PointwiseGeometry, FastPathMatchesFullPath) {
  for (int n : {2, 3, 6}) {
    for (double t : {0.4, 2.0}) {
      const NodeJet j = analytic_jet(n, profile(t), profile_d1(t), profile_d2(t), t);
      const PointGeometry full = pointwise_geometry(j, n);
      const PointCurvature fast = pointwise_curvature(j, n);
      EXPECT_NEAR(fast.w, full.w, 1e-14);
      EXPECT_NEAR(fast.u, full.u, 1e-14);
      for (int i = 0; i < n; ++i) EXPECT_NEAR(fast.kappa[i], full.kappa[i], 1e-13);
    }
  }
}

TEST(PointwiseGeometry, FrameRotationInvariance) {
  // A random orthogonal change of frame leaves kappa, u, w unchanged.
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    const NodeJet j = random_jet(rng, n);
    Eigen::MatrixXd A = Eigen::MatrixXd::Random(n, n);
    const Eigen::MatrixXd Q = Eigen::HouseholderQR<Eigen::MatrixXd>(A).householderQ();
    NodeJet r = j;
    r.grad = Q * j.grad;
    r.hess = Q * j.hess * Q.transpose();
    const PointGeometry a = pointwise_geometry(j, n), b = pointwise_geometry(r, n);
    EXPECT_NEAR(a.u, b.u, 1e-12);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(a.kappa[i], b.kappa[i], 1e-10);
    EXPECT_TRUE(a.kappa.is_sorted());
  }
}

TEST(PointwiseGeometry, SupportFunctionAndAreaInvariants) {
  Rng rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 6;
    const NodeJet j = random_jet(rng, n);
    const PointGeometry pt = pointwise_geometry(j, n);
    // u^2 - cosh^2 rho = |grad Phi|_g^2 with grad Phi = -cosh(rho) grad rho in the frame.
    const FrameVector dPhi = -std::cosh(pt.rho) * j.grad;
    const double lhs = pt.u * pt.u - std::cosh(pt.rho) * std::cosh(pt.rho);
    const double rhs = dPhi.dot(pt.g_inv * dPhi);
    EXPECT_GE(rhs, 0.0);
    EXPECT_NEAR(lhs, rhs, 1e-10 * std::max(1.0, std::abs(rhs)));
    // Area weight is sqrt(det g) in the orthonormal frame of sigma.
    const double det = Eigen::MatrixXd(pt.g).determinant();
    EXPECT_NEAR(pt.area_weight, std::sqrt(det), 1e-12 * std::sqrt(det));
    EXPECT_NEAR((pt.g * pt.g_inv - FrameMatrix::Identity(n, n)).norm(), 0.0, 1e-12);
  }
}

TEST(NormalSpeed, Slices) {
  for (int n = 2; n <= 6; ++n) {
    for (int k = 2; k <= n; ++k) {
      for (double r : {1e-9, 0.5, 1.0, 2.0}) {
        EXPECT_NEAR(normal_speed(pointwise_geometry(flat_jet(n, r), n), k), 0.0, 1e-13) << n << k << r;
      }
      // The equator itself: phi'(0) = 0 drops the curvature term, S = u = 1.
      EXPECT_EQ(normal_speed(pointwise_geometry(flat_jet(n, 0.0), n), k), 1.0);
    }
  }
  NodeJet bent = flat_jet(3, 0.2);
  bent.hess(0, 0) = -5.0;
  EXPECT_THROW(normal_speed(pointwise_geometry(bent, 3), 2), ConeError);
}

TEST(NormalSpeed, SignMatchesRearrangement) {
  Rng rng(23);
  int checked = 0;
  while (checked < 200) {
    const int n = 2 + checked % 5;
    const PointGeometry pt = pointwise_geometry(random_jet(rng, n), n);
    if (!gamma_cone_test(pt.kappa, 2)) continue;
    const double S = normal_speed(pt, 2);
    const double F = std::sqrt(sigma(pt.kappa, 2));
    const double other = pt.u * F - normalization(n, 2) * pt.dphi;
    EXPECT_EQ(S > 0, other > 0);
    ++checked;
  }
}

TEST(Validate, Examples) {
  const ValidationReport a = validate_hypersurface(oracle::axisym_graph(3, 41, [](double) { return 1.0; }), 2);
  EXPECT_TRUE(a.passed());
  EXPECT_NEAR(a.min_sigma[1], 3 * std::pow(std::tanh(1.0), 2), 1e-12);
  EXPECT_NEAR(a.min_sigma[1], 1.740077, 1e-6);

  const ValidationReport b = validate_hypersurface(oracle::axisym_graph(3, 41, [](double) { return 0.0; }), 2);
  EXPECT_TRUE(b.spacelike);
  EXPECT_FALSE(b.convex);

  // 1 + 0.9 cos(theta) has |grad rho| <= 0.9 < cosh(rho) and stays spacelike;
  // the amplitude must exceed cosh(rho) somewhere to break it.
  EXPECT_TRUE(validate_hypersurface(oracle::axisym_graph(3, 101, [](double t) { return 1 + 0.9 * std::cos(t); }), 1)
                  .spacelike);
  const ValidationReport c =
      validate_hypersurface(oracle::axisym_graph(3, 101, [](double t) { return 3 * std::cos(t); }), 2);
  EXPECT_FALSE(c.spacelike);
  EXPECT_LT(c.min_w2, 0.0);
  EXPECT_GE(c.first_bad_node, 0);
}

TEST(IdentityResiduals, SliceIsExact) {
  for (int n : {2, 3, 4}) {
    const IdentityReport r = identity_residuals(oracle::axisym_graph(n, 41, [](double) { return 0.7; }));
    EXPECT_LT(r.gradient, 1e-13);
    EXPECT_LT(r.laplacian, 1e-12);
    EXPECT_LT(std::abs(r.laplacian_integral), 1e-11);
  }
  const IdentityReport ll = identity_residuals(oracle::latlong_graph(16, 32, [](double, double) { return 0.7; }));
  EXPECT_LT(ll.gradient, 1e-13);
  EXPECT_LT(ll.laplacian, 1e-12);
}

TEST(IdentityResiduals, SecondOrderConvergence) {
  for (int n : {2, 3}) {
    IdentityReport prev;
    for (int m : {101, 201, 401}) {
      const IdentityReport r = identity_residuals(oracle::axisym_graph(n, m, profile));
      if (m > 101) {
        EXPECT_NEAR(std::log2(prev.gradient / r.gradient), 2.0, 0.2) << n;
        EXPECT_NEAR(std::log2(prev.laplacian / r.laplacian), 2.0, 0.2) << n;
        EXPECT_NEAR(std::log2(std::abs(prev.laplacian_integral / r.laplacian_integral)), 2.0, 0.2) << n;
      }
      prev = r;
    }
  }
}

TEST(GraphGeometry, LatLongMatchesAxisymForZonalData) {
  double prev = 0.0;
  for (int nt : {32, 64}) {
    const RadialGraph a = oracle::axisym_graph(2, 2 * nt + 1, profile);
    const RadialGraph b = oracle::latlong_graph(nt, 2 * nt, [](double t, double) { return profile(t); });
    const auto ga = graph_geometry(a), gb = graph_geometry(b);
    const LatLongGrid& ll = b.grid().latlong();
    double err = 0.0;
    for (int j = 0; j < nt; ++j) {
      const auto& x = ga[static_cast<std::size_t>(2 * j + 1)];
      const auto& y = gb[static_cast<std::size_t>(ll.index(j, 3))];
      err = std::max({err, std::abs(x.kappa[0] - y.kappa[0]), std::abs(x.kappa[1] - y.kappa[1]), std::abs(x.u - y.u)});
    }
    if (prev > 0.0) EXPECT_GT(prev / err, 3.0);
    prev = err;
  }
}
