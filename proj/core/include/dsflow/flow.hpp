#pragma once

// Explicit time integration of the locally constrained inverse sigma_k flow
//
//   X_t = S nu,   S = u - b_{n,k} phi'(rho) sigma_k(kappa)^{-1/k},
//
// written for the radial function.  With <d_r, nu> = -cosh(rho)/w the graph
// moves by rho_t = S w / cosh(rho).
//
// Every accepted state is spacelike and strictly k-convex.  The integrator also
// checks the discrete maximum principles after each step: max rho and max u do
// not grow, min rho and min F do not shrink, each up to
// slack = 1e-8 + 10 dt h^2 (h = smallest node spacing).

#include "dsflow/geometry.hpp"
#include "dsflow/quermass.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace dsflow {

enum class Scheme { euler, rk4 };

struct FlowConfig {
  int k = 2;
  double cfl = 0.1;
  double t_max = 50.0;
  double conv_tol = 1e-6;
  int monitor_every = 100;
  Scheme scheme = Scheme::euler;
  /// Abort when the stable step falls below this.
  double dt_min = 1e-13;
  /// Upper bound on accepted steps; 0 means unlimited.
  long max_steps = 0;
};

/// Throws DomainError on out-of-range fields (k vs n, cfl, tolerances).
void check_config(const FlowConfig& config, int n);

struct SpeedDiagnostics {
  double min_S = 0.0;
  double max_S = 0.0;
  double max_abs_S = 0.0;
  double min_F = 0.0;
  double max_F = 0.0;
  double max_abs_kappa = 0.0;
  double max_u = 0.0;
  double min_rho = 0.0;
  double max_rho = 0.0;
  /// max over nodes of b phi' F^-2 max_i f^i / w^2 (diffusion coefficient of the linearization).
  double max_diffusion = 0.0;
  double max_abs_rate = 0.0;  // max |rho_t|
};

struct SpeedField {
  std::vector<double> rho_t;
  std::vector<double> S;
  SpeedDiagnostics diag;
};

/// Nodes with rho = 0 have phi' = 0 and move with S = u regardless of the
/// cone.  Throws FlowAbort("spacelike_violation" | "cone_violation", ...)
/// naming the node.
SpeedField speed_field(const RadialGraph& M, int k);

struct FlowState {
  double t = 0.0;
  RadialGraph M;
  double dt = 0.0;  // last accepted step
  long steps = 0;
  long rejected = 0;  // cumulative rejected step attempts
  /// Speed field at M, filled by step() so the next step does not recompute it.
  std::optional<SpeedField> speed;
};

FlowState initial_state(RadialGraph M);

/// cfl h^2 / D_max, capped by 0.5 / max |rho_t|.  Throws FlowAbort when D_max is not finite.
double choose_dt(const FlowState& state, int k, double cfl);

/// One explicit step.  A step whose result is not spacelike and strictly
/// k-convex is rejected and retried with half the step, at most 20 times.
FlowState step(const FlowState& state, double dt, Scheme scheme, int k);

/// (l+1) int S sigma_{l+1} d mu for 0 <= l <= n-1, int S d mu for l = -1:
/// the instantaneous rate of A_l along the flow.
double predicted_dA(const RadialGraph& M, int k, int l);

struct MonitorRecord {
  double t = 0.0;
  double dt = 0.0;
  double min_rho = 0.0;
  double max_rho = 0.0;
  double max_u = 0.0;
  double min_F = 0.0;
  double max_F = 0.0;
  double max_kappa = 0.0;
  std::vector<double> A;  // A_{-1} .. A_n
  double hm_residual_1 = 0.0;
  double gap = 0.0;
  long step = 0;
};

MonitorRecord make_monitor(const FlowState& state, const SpeedDiagnostics& diag);

/// Worst violation of one discrete maximum principle over a run.
struct PrincipleCheck {
  std::string name;
  double worst_excess = -std::numeric_limits<double>::infinity();  // max of (change beyond slack)
  long violations = 0;
  void record(double excess) {
    worst_excess = std::max(worst_excess, excess);
    if (excess > 0.0) ++violations;
  }
};

enum class Termination { converged, t_max, step_limit, aborted };
std::string to_string(Termination t);

struct RunResult {
  Termination termination = Termination::t_max;
  std::string reason;  // abort tag, empty otherwise
  std::string detail;
  double r_infinity = 0.0;  // sphere mean of rho on convergence
  double osc = 0.0;
  double max_abs_S = 0.0;
  long steps = 0;
  long rejected_steps = 0;
  double wall_seconds = 0.0;
  std::vector<MonitorRecord> monitors;
  std::vector<PrincipleCheck> principles;  // max_rho, min_rho, max_u, min_F
  std::optional<FlowState> final_state;
};

using MonitorCallback = std::function<void(const MonitorRecord&, const FlowState&)>;

/// Integrates until osc(rho) < conv_tol and max |S| < conv_tol, or t_max.
/// Throws ValidationError when rho0 is not spacelike and strictly k-convex.
RunResult run(const FlowConfig& config, RadialGraph rho0, const MonitorCallback& on_monitor = {});

}  // namespace dsflow
