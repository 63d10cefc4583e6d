#include "dsflow/errors.hpp"
#include "dsflow/flow.hpp"
#include "testing.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace dsflow;

namespace {

RadialGraph constant(int n, double r, int m = 101) {
  return oracle::axisym_graph(n, m, [r](double) { return r; });
}

double wavy(double t) { return 1.0 + 0.1 * std::cos(2 * t); }

double sup_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST(SpeedField, SlicesAreStationary) {
  for (int n : {2, 3, 4}) {
    for (double r : {0.5, 1.0, 1.5}) {
      for (int k = 2; k <= n; ++k) {
        const SpeedField f = speed_field(constant(n, r), k);
        EXPECT_LE(f.diag.max_abs_rate, 1e-12) << n << " " << r << " " << k;
      }
    }
  }
  const SpeedField ll = speed_field(oracle::latlong_graph(16, 32, [](double, double) { return 0.8; }), 2);
  EXPECT_LE(ll.diag.max_abs_rate, 1e-12);
}

TEST(SpeedField, EquatorMovesWithUnitSpeed) {
  const SpeedField f = speed_field(constant(3, 0.0), 2);
  for (double v : f.rho_t) EXPECT_EQ(v, 1.0);
}

TEST(SpeedField, SignFollowsDistanceToLimitSlice) {
  const RadialGraph M = oracle::axisym_graph(3, 201, wavy);
  const SpeedField f = speed_field(M, 2);
  EXPECT_LT(f.rho_t.front(), 0.0);  // rho = 1.1 at the pole, above the limit radius
  EXPECT_GT(f.rho_t[100], 0.0);     // rho = 0.9 at the equator
}

TEST(SpeedField, MatchesPointwiseNormalSpeed) {
  // rho_t = S w / cosh(rho), S from the geometry module's normal_speed.
  const RadialGraph M = oracle::axisym_graph(3, 101, wavy);
  const SpeedField f = speed_field(M, 2);
  const auto geo = graph_geometry(M);
  for (std::size_t i = 0; i < geo.size(); ++i) {
    const double S = normal_speed(geo[i], 2);
    EXPECT_NEAR(f.S[i], S, 1e-13);
    EXPECT_NEAR(f.rho_t[i], S * geo[i].w / std::cosh(geo[i].rho), 1e-13);
  }
}

TEST(SpeedField, NormalVelocityMatchesEmbedding) {
  // The surface moves with normal speed -rho_t <d_r, nu>; with the embedding
  // oracle's normal this must equal -S (X_t = S nu, <nu, nu> = -1).
  for (double t : {0.4, 1.2, 2.2}) {
    const RadialGraph M = oracle::axisym_graph(3, 801, wavy);
    const AxisymGrid& g = M.grid().axisym();
    const int j = static_cast<int>(std::lround(t / g.spacing()));
    const SpeedField f = speed_field(M, 2);
    const auto ref = oracle::embedding_curvatures(wavy, g.theta(j), 1e-4);
    const double normal = -f.rho_t[static_cast<std::size_t>(j)] * ref.dr_dot_nu;
    EXPECT_NEAR(normal, f.S[static_cast<std::size_t>(j)], 1e-5);
  }
}

TEST(SpeedField, ReportsViolations) {
  try {
    speed_field(oracle::latlong_graph(8, 16, [](double t, double p) { return 1.0 + 0.1 * std::cos(t) + 3.0 * std::sin(t) * std::cos(p); }), 2);
    FAIL();
  } catch (const FlowAbort& e) {
    // The gradient is steep at the north pole, the first node visited.
    EXPECT_EQ(e.reason(), "spacelike_violation");
    EXPECT_NE(std::string(e.what()).find("node 0"), std::string::npos);
  }
  try {
    speed_field(oracle::axisym_graph(3, 101, [](double t) { return 0.2 - 0.5 * std::cos(2 * t); }), 2);
    FAIL();
  } catch (const FlowAbort& e) {
    EXPECT_EQ(e.reason(), "cone_violation");
    EXPECT_NE(std::string(e.what()).find("sigma_2"), std::string::npos);
  }
}

TEST(ChooseDt, ScalesWithSpacingSquared) {
  double prev = 0.0, prev_h = 0.0;
  for (int m : {101, 201, 401}) {
    const FlowState s = initial_state(constant(3, 1.0, m));
    const double dt = choose_dt(s, 2, 0.1);
    const double h = s.M.grid().spacing();
    EXPECT_GT(dt, 0.0);
    if (prev > 0.0) EXPECT_NEAR(std::log(prev / dt) / std::log(prev_h / h), 2.0, 0.05);
    prev = dt;
    prev_h = h;
  }
}

TEST(ChooseDt, LinearInCfl) {
  const FlowState s = initial_state(oracle::axisym_graph(3, 201, wavy));
  const double a = choose_dt(s, 2, 0.05);
  const double b = choose_dt(s, 2, 0.1);
  EXPECT_NEAR(b / a, 2.0, 1e-12);
}

TEST(ChooseDt, ShrinksTowardsTheConeBoundary) {
  // Slices rho = eps: F = sqrt(3) tanh(eps) -> 0 and dt ~ eps.
  double prev = 1.0;
  for (double eps : {1e-1, 1e-3, 1e-6, 1e-10}) {
    const double dt = choose_dt(initial_state(constant(3, eps)), 2, 0.1);
    EXPECT_TRUE(std::isfinite(dt));
    EXPECT_GT(dt, 0.0);
    EXPECT_LT(dt, prev);
    prev = dt;
  }
  EXPECT_LT(prev, 1e-12);
}

TEST(Run, DegenerateProfileAbortsBeforeNaN) {
  FlowConfig c;
  c.t_max = 1.0;
  const RunResult r = run(c, oracle::axisym_graph(3, 101, [](double t) { return 1e-12 * (1.0 + 0.1 * std::cos(2 * t)); }));
  EXPECT_EQ(r.termination, Termination::aborted);
  EXPECT_EQ(r.reason, "dt_underflow");
  ASSERT_TRUE(r.final_state);
  for (double x : r.final_state->M.rho()) EXPECT_TRUE(std::isfinite(x));
}

TEST(Step, SliceIsFixed) {
  for (Scheme s : {Scheme::euler, Scheme::rk4}) {
    const RadialGraph M = constant(3, 1.0);
    const FlowState next = step(initial_state(M), 1e-3, s, 2);
    EXPECT_LE(sup_diff(next.M.rho(), M.rho()), 1e-15);
    EXPECT_EQ(next.steps, 1);
  }
}

TEST(Step, EulerFromEquator) {
  const double dt = 1e-3;
  const FlowState next = step(initial_state(constant(3, 0.0)), dt, Scheme::euler, 2);
  for (double x : next.M.rho()) EXPECT_DOUBLE_EQ(x, dt);
}

TEST(Step, Rk4AndEulerDifferAtSecondOrder) {
  const FlowState s = initial_state(oracle::axisym_graph(3, 51, wavy));
  const double dt0 = choose_dt(s, 2, 0.1);
  double prev = 0.0;
  for (double dt : {dt0, dt0 / 2, dt0 / 4}) {
    const double d =
        sup_diff(step(s, dt, Scheme::euler, 2).M.rho(), step(s, dt, Scheme::rk4, 2).M.rho());
    if (prev > 0.0) EXPECT_NEAR(std::log2(prev / d), 2.0, 0.1);
    prev = d;
  }
}

TEST(Step, RejectsAndHalvesInvalidSteps) {
  // A huge step from a slightly bent surface leaves the cone; the step is
  // halved until the result is valid.
  const FlowState s = initial_state(oracle::axisym_graph(3, 101, wavy));
  const FlowState next = step(s, 5.0, Scheme::euler, 2);
  EXPECT_GT(next.rejected, 0);
  EXPECT_LT(next.dt, 5.0);
  EXPECT_TRUE(validate_hypersurface(next.M, 2).passed());
  EXPECT_THROW(step(s, 0.0, Scheme::euler, 2), DomainError);
}

TEST(Run, ConstantProfileConvergesImmediately) {
  const RunResult r = run(FlowConfig{}, constant(3, 1.0));
  EXPECT_EQ(r.termination, Termination::converged);
  EXPECT_EQ(r.steps, 0);
  EXPECT_NEAR(r.r_infinity, 1.0, 1e-12);
  ASSERT_EQ(r.monitors.size(), 1u);
}

TEST(Run, PreconditionFailure) {
  EXPECT_THROW(run(FlowConfig{}, constant(3, 0.0)), ValidationError);
  EXPECT_THROW(run(FlowConfig{}, oracle::axisym_graph(3, 101, [](double t) { return 3 * std::cos(t); })),
               ValidationError);
  FlowConfig bad;
  bad.k = 4;
  EXPECT_THROW(run(bad, constant(3, 1.0)), DomainError);
}

TEST(Run, ShortRunKeepsMaximumPrinciples) {
  FlowConfig c;
  c.max_steps = 400;
  c.monitor_every = 50;
  const RunResult r = run(c, oracle::axisym_graph(3, 101, wavy));
  EXPECT_EQ(r.termination, Termination::step_limit);
  EXPECT_EQ(r.steps, 400);
  ASSERT_EQ(r.principles.size(), 4u);
  for (const PrincipleCheck& p : r.principles) EXPECT_EQ(p.violations, 0) << p.name;
  EXPECT_EQ(r.monitors.size(), 9u);
  EXPECT_EQ(r.monitors.back().A.size(), 5u);
  for (std::size_t i = 1; i < r.monitors.size(); ++i) {
    EXPECT_LE(r.monitors[i].max_rho, r.monitors[i - 1].max_rho);
    EXPECT_GE(r.monitors[i].min_rho, r.monitors[i - 1].min_rho);
  }
}

TEST(Run, TimeLimit) {
  FlowConfig c;
  c.t_max = 1e-3;
  const RunResult r = run(c, oracle::axisym_graph(3, 51, wavy));
  EXPECT_EQ(r.termination, Termination::t_max);
  EXPECT_NEAR(r.final_state->t, 1e-3, 1e-15);
}

TEST(PredictedDA, SliceIsStationary) {
  for (int l = -1; l <= 2; ++l) EXPECT_NEAR(predicted_dA(constant(3, 1.0), 2, l), 0.0, 1e-10);
  EXPECT_THROW(predicted_dA(constant(3, 1.0), 2, 3), DomainError);
}

TEST(PredictedDA, MonotoneQuantitySignOnRandomProfiles) {
  oracle::Rng rng(31);
  int checked = 0;
  while (checked < 10) {
    const auto p = oracle::random_profile(rng);
    const RadialGraph M = oracle::axisym_graph(3, 201, p);
    if (!validate_hypersurface(M, 2).passed()) continue;
    EXPECT_GE(predicted_dA(M, 2, 2), -1e-6);
    EXPECT_LE(predicted_dA(M, 2, 0), 1e-6);
    ++checked;
  }
}

namespace {

// Centred differences of the monitor series at row 3 minus predicted_dA.
std::vector<double> series_mismatch(int m, std::initializer_list<int> ls) {
  FlowConfig c;
  c.max_steps = 6;
  c.monitor_every = 1;
  const RunResult r = run(c, oracle::axisym_graph(3, m, wavy));
  FlowState s = initial_state(oracle::axisym_graph(3, m, wavy));
  for (int i = 0; i < 3; ++i) s = step(s, choose_dt(s, 2, c.cfl), c.scheme, 2);
  EXPECT_NEAR(s.t, r.monitors[3].t, 1e-16);
  const auto& a = r.monitors;
  const double h1 = a[3].t - a[2].t, h2 = a[4].t - a[3].t;
  std::vector<double> rel;
  for (int l : ls) {
    const auto i = static_cast<std::size_t>(l + 1);
    const double fd = (h1 * h1 * a[4].A[i] - h2 * h2 * a[2].A[i] + (h2 * h2 - h1 * h1) * a[3].A[i]) /
                      (h1 * h2 * (h1 + h2));
    const double pred = predicted_dA(s.M, 2, l);
    rel.push_back(std::abs(fd - pred) / std::abs(pred));
  }
  return rel;
}

}  // namespace

TEST(PredictedDA, MatchesFiniteDifferencesOfMonitorSeries) {
  for (double e : series_mismatch(401, {-1, 0, 2})) EXPECT_LE(e, 1e-3);
}

TEST(PredictedDA, MismatchIsSpatialDiscretization) {
  const auto coarse = series_mismatch(101, {-1, 0, 1, 2});
  const auto fine = series_mismatch(201, {-1, 0, 1, 2});
  for (std::size_t i = 0; i < coarse.size(); ++i) EXPECT_NEAR(std::log2(coarse[i] / fine[i]), 2.0, 0.15) << i;
}
