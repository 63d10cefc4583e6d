#include "dsflow/flow.hpp"

#include "dsflow/errors.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace dsflow {
namespace {

constexpr int kMaxRetries = 20;

bool is_validity_abort(const FlowAbort& e) {
  return e.reason() == "spacelike_violation" || e.reason() == "cone_violation";
}

std::vector<double> advance(std::span<const double> rho, std::span<const double> rate, double dt) {
  std::vector<double> out(rho.begin(), rho.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += dt * rate[i];
  return out;
}

std::vector<double> integrate_step(const FlowState& state, const SpeedField& f0, double dt, Scheme scheme, int k) {
  const RadialGraph& M = state.M;
  if (scheme == Scheme::euler) return advance(M.rho(), f0.rho_t, dt);

  const auto& k1 = f0.rho_t;
  const auto k2 = speed_field(RadialGraph(M.grid(), advance(M.rho(), k1, 0.5 * dt)), k).rho_t;
  const auto k3 = speed_field(RadialGraph(M.grid(), advance(M.rho(), k2, 0.5 * dt)), k).rho_t;
  const auto k4 = speed_field(RadialGraph(M.grid(), advance(M.rho(), k3, dt)), k).rho_t;
  std::vector<double> out(M.rho().begin(), M.rho().end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

double sphere_mean(const RadialGraph& M) {
  return integrate(M.rho(), M.grid()) / sphere_area(M.dim());
}

}  // namespace

void check_config(const FlowConfig& c, int n) {
  if (c.k < 2 || c.k > n) throw DomainError("flow order k must satisfy 2 <= k <= n");
  if (!(c.cfl > 0.0 && c.cfl <= 1.0)) throw DomainError("cfl must be in (0, 1]");
  if (!(c.conv_tol > 0.0)) throw DomainError("conv_tol must be positive");
  if (!(c.t_max > 0.0)) throw DomainError("t_max must be positive");
  if (c.monitor_every < 1) throw DomainError("monitor_every must be >= 1");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::t_max: return "t_max";
    case Termination::step_limit: return "step_limit";
    case Termination::aborted: return "aborted";
  }
  return "unknown";
}

SpeedField speed_field(const RadialGraph& M, int k) {
  const int n = M.dim();
  const double b = normalization(n, k);
  const SphereJet jet = sphere_jet(M.rho(), M.grid());
  SpeedField out;
  out.rho_t.resize(jet.size());
  out.S.resize(jet.size());
  SpeedDiagnostics& d = out.diag;
  d.min_S = d.min_F = d.min_rho = std::numeric_limits<double>::infinity();
  d.max_S = d.max_F = d.max_rho = -std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < jet.size(); ++i) {
    PointCurvature pc;
    try {
      pc = pointwise_curvature(jet[i], n, i);
    } catch (const SpacelikeError& e) {
      throw FlowAbort("spacelike_violation", e.what());
    }
    const double rho = jet[i].value;
    const double c = pc.cosh_rho;
    const double dphi = pc.sinh_rho;
    const SymVector sig = all_sigmas(pc.kappa);
    bool in_cone = true;
    for (int j = 1; j <= k; ++j) in_cone = in_cone && sig[static_cast<std::size_t>(j)] > 0.0;
    // phi' = 0 removes the curvature term, so F is not needed there.
    if (!in_cone && dphi != 0.0) {
      std::ostringstream msg;
      msg << "node " << i << ":";
      for (int q = 1; q <= k; ++q) msg << " sigma_" << q << " = " << sig[static_cast<std::size_t>(q)];
      throw FlowAbort("cone_violation", msg.str());
    }
    double S = pc.u;
    double D = 0.0;
    if (in_cone) {
      const double sk = sig[static_cast<std::size_t>(k)];
      const double F = k == 2 ? std::sqrt(sk) : k == 3 ? std::cbrt(sk) : std::pow(sk, 1.0 / k);
      d.min_F = std::min(d.min_F, F);
      d.max_F = std::max(d.max_F, F);
      if (dphi != 0.0) {
        S -= b * dphi / F;
        // max_i f^i = F / (k sigma_k) max_i sigma_{k-1}(kappa|i).  On Gamma_k the
        // minor grows as the removed entry shrinks, so the maximum drops the last.
        const double fmax = F / (k * sk) * sigma_minor(pc.kappa, k - 1, n - 1);
        D = b * std::abs(dphi) * fmax / (F * F * pc.w * pc.w);
      }
    }
    const double rate = S * pc.w / c;
    out.S[i] = S;
    out.rho_t[i] = rate;

    d.min_S = std::min(d.min_S, S);
    d.max_S = std::max(d.max_S, S);
    d.max_abs_S = std::max(d.max_abs_S, std::abs(S));
    d.max_u = std::max(d.max_u, pc.u);
    d.min_rho = std::min(d.min_rho, rho);
    d.max_rho = std::max(d.max_rho, rho);
    d.max_diffusion = std::max(d.max_diffusion, D);
    d.max_abs_rate = std::max(d.max_abs_rate, std::abs(rate));
    for (double x : pc.kappa.values()) d.max_abs_kappa = std::max(d.max_abs_kappa, std::abs(x));
  }
  return out;
}

FlowState initial_state(RadialGraph M) {
  return FlowState{0.0, std::move(M), 0.0, 0, 0, std::nullopt};
}

double choose_dt(const FlowState& state, int k, double cfl) {
  const SpeedField f = state.speed ? *state.speed : speed_field(state.M, k);
  const double D = f.diag.max_diffusion;
  if (!std::isfinite(D)) throw FlowAbort("dt_nonfinite", "diffusion coefficient is not finite");
  const double h = state.M.grid().spacing();
  double dt = D > 0.0 ? cfl * h * h / D : std::numeric_limits<double>::infinity();
  if (f.diag.max_abs_rate > 0.0) dt = std::min(dt, 0.5 / f.diag.max_abs_rate);
  if (!std::isfinite(dt)) dt = cfl * h * h;
  return dt;
}

FlowState step(const FlowState& state, double dt, Scheme scheme, int k) {
  if (!(dt > 0.0)) throw DomainError("step size must be positive");
  const SpeedField f0 = state.speed ? *state.speed : speed_field(state.M, k);
  long rejected = state.rejected;
  std::string last;
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    try {
      RadialGraph next(state.M.grid(), integrate_step(state, f0, dt, scheme, k));
      SpeedField f1 = speed_field(next, k);
      return FlowState{state.t + dt, std::move(next), dt, state.steps + 1, rejected, std::move(f1)};
    } catch (const FlowAbort& e) {
      if (!is_validity_abort(e)) throw;
      last = e.what();
      ++rejected;
      dt *= 0.5;
    }
  }
  throw FlowAbort("step_rejected", "no valid step after " + std::to_string(kMaxRetries) + " halvings; " + last);
}

double predicted_dA(const RadialGraph& M, int k, int l) {
  const int n = M.dim();
  if (l < -1 || l > n - 1) throw DomainError("predicted_dA needs -1 <= l <= n-1");
  const std::vector<PointGeometry> geo = graph_geometry(M);
  const auto weights = M.grid().weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < geo.size(); ++i) {
    const double S = normal_speed(geo[i], k);
    const double s = l < 0 ? 1.0 : sigma(geo[i].kappa, l + 1);
    sum += weights[i] * geo[i].area_weight * S * s;
  }
  return (l + 1 == 0 ? 1.0 : l + 1.0) * sum;
}

MonitorRecord make_monitor(const FlowState& state, const SpeedDiagnostics& diag) {
  const QuermassReport q = quermass_all(state.M);
  MonitorRecord r;
  r.t = state.t;
  r.dt = state.dt;
  r.step = state.steps;
  r.min_rho = diag.min_rho;
  r.max_rho = diag.max_rho;
  r.max_u = diag.max_u;
  r.min_F = diag.min_F;
  r.max_F = diag.max_F;
  r.max_kappa = diag.max_abs_kappa;
  r.A = q.A;
  r.hm_residual_1 = q.hm_residual.size() > 1 ? q.hm_residual[1] : 0.0;
  r.gap = q.gap;
  return r;
}

RunResult run(const FlowConfig& config, RadialGraph rho0, const MonitorCallback& on_monitor) {
  const int n = rho0.dim();
  check_config(config, n);
  const ValidationReport v = validate_hypersurface(rho0, config.k);
  if (!v.passed()) {
    std::ostringstream msg;
    msg << "initial hypersurface is not " << (v.spacelike ? "strictly " + std::to_string(config.k) + "-convex" : "spacelike")
        << " (node " << v.first_bad_node << ", min w^2 = " << v.min_w2;
    for (std::size_t j = 0; j < v.min_sigma.size(); ++j) msg << ", min sigma_" << j + 1 << " = " << v.min_sigma[j];
    msg << ")";
    throw ValidationError(msg.str());
  }

  const auto start = std::chrono::steady_clock::now();
  const double h = rho0.grid().spacing();
  RunResult res;
  res.principles = {{"max_rho"}, {"min_rho"}, {"max_u"}, {"min_F"}};

  FlowState state = initial_state(std::move(rho0));
  state.speed = speed_field(state.M, config.k);
  long last_monitor = -1;
  auto monitor = [&](const FlowState& s) {
    if (s.steps == last_monitor) return;
    last_monitor = s.steps;
    res.monitors.push_back(make_monitor(s, s.speed->diag));
    if (on_monitor) on_monitor(res.monitors.back(), s);
  };

  try {
    for (;;) {
      const SpeedDiagnostics& d = state.speed->diag;
      res.osc = d.max_rho - d.min_rho;
      res.max_abs_S = d.max_abs_S;
      const bool converged = res.osc < config.conv_tol && d.max_abs_S < config.conv_tol;
      const bool out_of_time = state.t >= config.t_max * (1.0 - 1e-14);
      const bool out_of_steps = config.max_steps > 0 && state.steps >= config.max_steps;
      if (state.steps % config.monitor_every == 0 || converged || out_of_time || out_of_steps) monitor(state);
      if (converged) {
        res.termination = Termination::converged;
        res.r_infinity = sphere_mean(state.M);
        break;
      }
      if (out_of_time) {
        res.termination = Termination::t_max;
        break;
      }
      if (out_of_steps) {
        res.termination = Termination::step_limit;
        break;
      }

      double dt = std::min(choose_dt(state, config.k, config.cfl), config.t_max - state.t);
      if (dt < config.dt_min && config.t_max - state.t > config.dt_min) {
        throw FlowAbort("dt_underflow", "stable step " + std::to_string(dt) + " below dt_min");
      }
      FlowState next = step(state, dt, config.scheme, config.k);

      const SpeedDiagnostics& a = state.speed->diag;
      const SpeedDiagnostics& b = next.speed->diag;
      const double slack = 1e-8 + 10.0 * next.dt * h * h;
      res.principles[0].record(b.max_rho - a.max_rho - slack);
      res.principles[1].record(a.min_rho - b.min_rho - slack);
      res.principles[2].record(b.max_u - a.max_u - slack);
      res.principles[3].record(a.min_F - b.min_F - slack);
      state = std::move(next);
    }
  } catch (const FlowAbort& e) {
    res.termination = Termination::aborted;
    res.reason = e.reason();
    res.detail = e.what();
    if (state.speed) monitor(state);
  }

  res.steps = state.steps;
  res.rejected_steps = state.rejected;
  res.final_state = std::move(state);
  res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace dsflow
