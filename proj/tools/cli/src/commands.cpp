#include "dsflow/cli/commands.hpp"

#include "dsflow/cli/config.hpp"
#include "dsflow/errors.hpp"
#include "dsflow/flow.hpp"
#include "dsflow/quermass.hpp"
#include "dsflow/snapshot.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <vector>

namespace dsflow::cli {
namespace {

namespace fs = std::filesystem;

// Residual tolerances used by `check`.  The identities hold exactly for the
// continuous surface; the finite-difference residuals scale like C h^2 with C
// set by fourth derivatives of rho, so the bound carries an h^2 factor.
constexpr double kIdentityTolPerH2 = 50.0;
constexpr double kHmTolPerH2 = 1.0;
// Snapshots are written at every tenth monitor row and at the end.
constexpr int kSnapshotEvery = 10;

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

fs::path snapshot_name(const fs::path& dir, long step) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "snapshot_%08ld.dsf", step);
  return dir / buf;
}

}  // namespace

std::string monitor_header(int n) {
  std::string h = "t,dt";
  for (int m = -1; m <= n; ++m) h += ",A_" + std::to_string(m);
  h += ",min_rho,max_rho,max_u,min_F,max_F,max_kappa,hm_residual_1,gap";
  return h;
}

std::string slice_table_header(int n) {
  std::string h = "r";
  for (int m = 0; m <= n; ++m) h += ",A" + std::to_string(m);
  return h + ",xi_gap";
}

int cmd_run(const fs::path& config_path, const std::optional<fs::path>& out_override, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg;
  std::optional<RadialGraph> M;
  try {
    cfg = load_config(config_path);
    M = cfg.initial_graph();
  } catch (const Error& e) {
    err << "error: reason=config " << e.what() << '\n';
    return kConfigError;
  }
  const fs::path dir = out_override.value_or(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    err << "error: reason=config cannot create " << dir << ": " << ec.message() << '\n';
    return kConfigError;
  }

  nlohmann::json summary = {{"n", cfg.n}, {"k", cfg.flow.k}, {"grid", cfg.grid}, {"rho0", cfg.rho0->text()}};

  std::ofstream csv(dir / "monitors.csv");
  csv << monitor_header(cfg.n) << '\n';
  long rows = 0;
  auto on_monitor = [&](const MonitorRecord& r, const FlowState& s) {
    csv << fmt(r.t) << ',' << fmt(r.dt);
    for (double a : r.A) csv << ',' << fmt(a);
    csv << ',' << fmt(r.min_rho) << ',' << fmt(r.max_rho) << ',' << fmt(r.max_u) << ',' << fmt(r.min_F) << ','
        << fmt(r.max_F) << ',' << fmt(r.max_kappa) << ',' << fmt(r.hm_residual_1) << ',' << fmt(r.gap) << '\n';
    if (rows++ % kSnapshotEvery == 0) write_snapshot(snapshot_name(dir, s.steps), s.M.grid(), s.M.rho());
  };

  RunResult res;
  try {
    res = run(cfg.flow, std::move(*M), on_monitor);
  } catch (const ValidationError& e) {
    summary["termination"] = "invalid_initial";
    summary["reason"] = "precondition";
    summary["detail"] = e.what();
    write_json(dir / "summary.json", summary);
    err << "error: reason=precondition " << e.what() << '\n';
    return kValidationFailure;
  }
  csv.flush();
  if (res.final_state) write_snapshot(dir / "final.dsf", res.final_state->M.grid(), res.final_state->M.rho());

  summary["termination"] = to_string(res.termination);
  summary["reason"] = res.reason.empty() ? to_string(res.termination) : res.reason;
  summary["detail"] = res.detail;
  summary["r_infinity"] =
      res.termination == Termination::converged ? number_or_null(res.r_infinity) : nlohmann::json(nullptr);
  summary["wall_time_s"] = res.wall_seconds;
  summary["steps"] = res.steps;
  summary["rejected_steps"] = res.rejected_steps;
  summary["t_final"] = res.final_state ? res.final_state->t : 0.0;
  summary["osc_rho"] = res.osc;
  summary["max_abs_S"] = res.max_abs_S;
  nlohmann::json principles = nlohmann::json::object();
  for (const PrincipleCheck& p : res.principles) {
    principles[p.name] = {{"worst_excess", number_or_null(p.worst_excess)}, {"violations", p.violations}};
  }
  summary["max_principles"] = principles;
  write_json(dir / "summary.json", summary);

  out << "termination: " << to_string(res.termination) << "\nsteps: " << res.steps << "\nt: "
      << (res.final_state ? res.final_state->t : 0.0) << '\n';
  if (res.termination == Termination::converged) out << "r_infinity: " << fmt(res.r_infinity) << '\n';
  if (res.termination == Termination::aborted) {
    err << "error: reason=" << res.reason << ' ' << res.detail << '\n';
    return kFlowAbort;
  }
  return kOk;
}

int cmd_check(const fs::path& config_path, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::optional<RadialGraph> M;
  try {
    cfg = load_config(config_path);
    M = cfg.initial_graph();
  } catch (const Error& e) {
    err << "error: reason=config " << e.what() << '\n';
    return kConfigError;
  }
  const int n = M->dim();
  const double h = M->grid().spacing();
  const ValidationReport v = validate_hypersurface(*M, cfg.flow.k);

  out << std::left << std::setw(28) << "quantity" << std::setw(16) << "value" << std::setw(16) << "tolerance"
      << "status\n";
  bool ok = true;
  auto row = [&](const std::string& name, double value, double tol, bool pass) {
    out << std::left << std::setw(28) << name << std::setw(16) << fmt_short(value) << std::setw(16)
        << (std::isnan(tol) ? std::string("-") : fmt_short(tol)) << (pass ? "ok" : "FAIL") << '\n';
    ok = ok && pass;
  };
  row("min w^2", v.min_w2, 0.0, v.spacelike);
  if (!v.spacelike) {
    err << "error: reason=spacelike_violation node " << v.first_bad_node << " has w^2 = " << v.min_w2 << '\n';
    return kValidationFailure;
  }
  for (std::size_t j = 0; j < v.min_sigma.size(); ++j) {
    out << std::left << std::setw(28) << ("min sigma_" + std::to_string(j + 1)) << std::setw(16)
        << fmt_short(v.min_sigma[j]) << std::setw(16) << "-" << (v.min_sigma[j] > 0.0 ? "ok" : "info") << '\n';
  }

  const IdentityReport id = identity_residuals(*M);
  const double id_tol = kIdentityTolPerH2 * h * h;
  row("grad u identity", id.gradient, id_tol, id.gradient <= id_tol);
  row("laplacian identity", id.laplacian, id_tol, id.laplacian <= id_tol);
  row("laplacian integral", std::abs(id.laplacian_integral), id_tol, std::abs(id.laplacian_integral) <= id_tol);

  const QuermassReport q = quermass_all(*M);
  const double hm_tol = kHmTolPerH2 * h * h;
  for (int m = 0; m < n; ++m) {
    const double r = std::abs(q.hm_residual[static_cast<std::size_t>(m)]) / q.at(0);
    row("hm_residual_" + std::to_string(m) + " / A_0", r, hm_tol, r <= hm_tol);
  }
  if (!ok) {
    err << "error: reason=residual_tolerance at least one residual exceeds its tolerance\n";
    return kValidationFailure;
  }
  return kOk;
}

int cmd_slice_table(int n, double r_min, double r_max, int steps, std::ostream& out, std::ostream& err) {
  if (n < 2 || n > kMaxDim || steps < 1 || !(r_min >= 0.0) || !(r_max >= r_min)) {
    err << "error: reason=config slice-table needs 2 <= n <= " << kMaxDim
        << ", steps >= 1 and 0 <= r_min <= r_max\n";
    return kConfigError;
  }
  out << slice_table_header(n) << '\n';
  for (int i = 0; i <= steps; ++i) {
    const double r = r_min + (r_max - r_min) * i / steps;
    const SliceModel s(r, n);
    const std::vector<double> A = s.quermass_all();
    out << fmt(r);
    for (int m = 0; m <= n; ++m) out << ',' << fmt(A[static_cast<std::size_t>(m + 1)]);
    out << ',' << fmt(xi(A[1], n) - A[3]) << '\n';
  }
  return kOk;
}

int cmd_inequality(const fs::path& snapshot, std::ostream& out, std::ostream& err) {
  std::optional<RadialGraph> M;
  try {
    Snapshot s = read_snapshot(snapshot);
    M.emplace(std::move(s.grid), std::move(s.rho));
  } catch (const Error& e) {
    err << "error: reason=parse " << snapshot.string() << ": " << e.what() << '\n';
    return kConfigError;
  }
  try {
    const QuermassReport q = quermass_all(*M);
    const double a0 = q.at(0);
    const double a2 = q.at(2);
    const double x = xi(a0, M->dim());
    out << "A0 " << fmt(a0) << "\nA2 " << fmt(a2) << "\nxi " << fmt(x) << "\ngap " << fmt(x - a2) << '\n';
  } catch (const SpacelikeError& e) {
    err << "error: reason=spacelike_violation " << e.what() << '\n';
    return kValidationFailure;
  } catch (const DomainError& e) {
    err << "error: reason=domain " << e.what() << '\n';
    return kValidationFailure;
  }
  return kOk;
}

}  // namespace dsflow::cli
