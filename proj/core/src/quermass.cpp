#include "dsflow/quermass.hpp"

#include "dsflow/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <limits>

namespace dsflow {
namespace {

// int_0^r cosh^n(s) ds by I_n = cosh^{n-1} sinh / n + (n-1)/n I_{n-2}.
double cosh_power_integral(double r, int n) {
  if (n == 0) return r;
  if (n == 1) return std::sinh(r);
  return std::pow(std::cosh(r), n - 1) * std::sinh(r) / n + (n - 1.0) / n * cosh_power_integral(r, n - 2);
}

double column_volume(double rho, int n) {
  using boost::math::quadrature::gauss;
  return gauss<double, 16>::integrate([n](double r) { return std::pow(std::cosh(r), n); }, 0.0, rho);
}

struct Integrals {
  double volume = 0.0;
  std::vector<double> sigma;     // int sigma_m d mu, m = 0..n
  std::vector<double> u_sigma;   // int u sigma_m d mu
  std::vector<double> dphi_sigma;  // int phi' sigma_m d mu
};

Integrals gather(const RadialGraph& M) {
  const int n = M.dim();
  const std::vector<PointGeometry> geo = graph_geometry(M);
  const auto weights = M.grid().weights();
  Integrals I;
  I.sigma.assign(static_cast<std::size_t>(n) + 1, 0.0);
  I.u_sigma = I.sigma;
  I.dphi_sigma = I.sigma;
  for (std::size_t i = 0; i < geo.size(); ++i) {
    const PointGeometry& pt = geo[i];
    const double dmu = weights[i] * pt.area_weight;
    const SymVector s = all_sigmas(pt.kappa);
    for (std::size_t m = 0; m < s.size(); ++m) {
      I.sigma[m] += s[m] * dmu;
      I.u_sigma[m] += pt.u * s[m] * dmu;
      I.dphi_sigma[m] += pt.dphi * s[m] * dmu;
    }
    I.volume += weights[i] * column_volume(M.rho()[i], n);
  }
  return I;
}

double hm_from(const Integrals& I, int n, int m) {
  return I.u_sigma[static_cast<std::size_t>(m + 1)] -
         (n - m) / (m + 1.0) * I.dphi_sigma[static_cast<std::size_t>(m)];
}

}  // namespace

SliceModel::SliceModel(double r, int n) : r_(r), n_(n) {
  if (n < 2 || n > kMaxDim) throw DomainError("slice dimension out of range");
}

double SliceModel::kappa() const { return std::tanh(r_); }

double SliceModel::area() const { return sphere_area(n_) * std::pow(std::cosh(r_), n_); }

double SliceModel::sigma(int m) const { return binomial(n_, m) * std::pow(kappa(), m); }

double SliceModel::volume() const { return sphere_area(n_) * cosh_power_integral(r_, n_); }

std::vector<double> SliceModel::quermass_all() const {
  std::vector<double> ints(static_cast<std::size_t>(n_) + 1);
  for (int m = 0; m <= n_; ++m) ints[static_cast<std::size_t>(m)] = sigma(m) * area();
  return quermass_recursion(volume(), ints, n_);
}

double SliceModel::quermass(int m) const {
  if (m < -1 || m > n_) throw DomainError("quermassintegral index out of range");
  return quermass_all()[static_cast<std::size_t>(m + 1)];
}

std::vector<double> quermass_recursion(double volume, const std::vector<double>& sigma_integrals, int n) {
  if (sigma_integrals.size() != static_cast<std::size_t>(n) + 1) {
    throw DomainError("need int sigma_m for m = 0..n");
  }
  std::vector<double> A(static_cast<std::size_t>(n) + 2);
  auto a = [&](int m) -> double& { return A[static_cast<std::size_t>(m + 1)]; };
  a(-1) = volume;
  a(0) = sigma_integrals[0];
  a(1) = sigma_integrals[1] - n * volume;
  for (int m = 2; m <= n; ++m) {
    a(m) = sigma_integrals[static_cast<std::size_t>(m)] - (n - m + 1.0) / (m - 1.0) * a(m - 2);
  }
  return A;
}

double curvature_integral(const RadialGraph& M, int m) {
  if (m < 0 || m > M.dim()) throw DomainError("curvature integral order out of range");
  const std::vector<PointGeometry> geo = graph_geometry(M);
  const auto weights = M.grid().weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < geo.size(); ++i) {
    sum += weights[i] * geo[i].area_weight * (m == 0 ? 1.0 : dsflow::sigma(geo[i].kappa, m));
  }
  return sum;
}

double enclosed_volume(const RadialGraph& M) {
  std::vector<double> col(static_cast<std::size_t>(M.size()));
  for (std::size_t i = 0; i < col.size(); ++i) col[i] = column_volume(M.rho()[i], M.dim());
  return integrate(col, M.grid());
}

QuermassReport quermass_all(const RadialGraph& M) {
  const int n = M.dim();
  const Integrals I = gather(M);
  QuermassReport rep;
  rep.A = quermass_recursion(I.volume, I.sigma, n);
  rep.hm_residual.resize(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) rep.hm_residual[static_cast<std::size_t>(m)] = hm_from(I, n, m);
  const double a0 = rep.at(0);
  rep.gap = a0 >= sphere_area(n) ? xi(a0, n, 2) - rep.at(2) : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

double hsiung_minkowski_residual(const RadialGraph& M, int m) {
  const int n = M.dim();
  if (m < 0 || m > n - 1) throw DomainError("Hsiung-Minkowski index must be in [0, n-1]");
  return hm_from(gather(M), n, m);
}

double slice_radius_for_area(double a, int n) {
  const double omega = sphere_area(n);
  // Relative slack absorbs rounding in a = omega_n cosh^n(0).
  if (!(a >= omega * (1.0 - 1e-14))) {
    throw DomainError("area " + std::to_string(a) + " below the minimal slice area " + std::to_string(omega));
  }
  const double c = std::pow(a / omega, 1.0 / n);
  return c <= 1.0 ? 0.0 : std::acosh(c);
}

double xi(double a, int n, int k) {
  if (k < 0 || k > n) throw DomainError("xi order k must be in [0, n]");
  return SliceModel(slice_radius_for_area(a, n), n).quermass(k);
}

double inequality_gap(const RadialGraph& M) {
  const QuermassReport rep = quermass_all(M);
  if (std::isnan(rep.gap)) {
    throw DomainError("A_0 below omega_n; quadrature failure or invalid hypersurface");
  }
  return rep.gap;
}

}  // namespace dsflow
