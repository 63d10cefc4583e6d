#include "dsflow/grids.hpp"

#include "dsflow/errors.hpp"

#include <cmath>
#include <numbers>

namespace dsflow {
namespace {

constexpr double kPi = std::numbers::pi;

// Clenshaw-Curtis weights for int_{-1}^{1} f(x) dx at x_j = cos(j*pi/N), j = 0..N.
std::vector<double> clenshaw_curtis(int N) {
  std::vector<double> w(static_cast<std::size_t>(N) + 1);
  for (int j = 0; j <= N; ++j) {
    const double theta = j * kPi / N;
    double s = 0.0;
    for (int k = 1; k <= N / 2; ++k) {
      const double b = (2 * k == N) ? 1.0 : 2.0;
      s += b / (4.0 * k * k - 1.0) * std::cos(2.0 * k * theta);
    }
    const double c = (j == 0 || j == N) ? 1.0 : 2.0;
    w[static_cast<std::size_t>(j)] = c / N * (1.0 - s);
  }
  return w;
}

// Fejer's first rule for int_{-1}^{1} f(x) dx at x_j = cos((j+1/2)*pi/N), j = 0..N-1.
std::vector<double> fejer_first(int N) {
  std::vector<double> w(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) {
    const double theta = (j + 0.5) * kPi / N;
    double s = 0.0;
    for (int k = 1; k <= N / 2; ++k) s += std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
    w[static_cast<std::size_t>(j)] = 2.0 / N * (1.0 - 2.0 * s);
  }
  return w;
}

void check_finite(std::span<const double> field) {
  for (std::size_t i = 0; i < field.size(); ++i) {
    if (!std::isfinite(field[i])) {
      throw InputError("field value at node " + std::to_string(i) + " is not finite");
    }
  }
}

void check_size(std::size_t got, int want) {
  if (got != static_cast<std::size_t>(want)) {
    throw InputError("field has " + std::to_string(got) + " values, grid has " +
                     std::to_string(want) + " nodes");
  }
}

SphereJet axisym_jet(std::span<const double> f, const AxisymGrid& g) {
  const int n = g.dim();
  const int m = g.size();
  const double h = g.spacing();
  auto at = [&](int j) {
    if (j < 0) j = -j;
    if (j > m - 1) j = 2 * (m - 1) - j;
    return f[static_cast<std::size_t>(j)];
  };
  SphereJet jet(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double d1 = (at(j + 1) - at(j - 1)) / (2.0 * h);
    const double d2 = (at(j + 1) - 2.0 * at(j) + at(j - 1)) / (h * h);
    const bool pole = (j == 0 || j == m - 1);
    const double angular = pole ? d2 : d1 * g.cot(j);
    NodeJet& nj = jet[static_cast<std::size_t>(j)];
    nj.value = f[static_cast<std::size_t>(j)];
    nj.grad = FrameVector::Zero(n);
    nj.grad(0) = pole ? 0.0 : d1;
    nj.hess = FrameMatrix::Zero(n, n);
    nj.hess(0, 0) = d2;
    for (int a = 1; a < n; ++a) nj.hess(a, a) = angular;
  }
  return jet;
}

// Five-point centred weights for offsets -2..2.
constexpr double kD1[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
constexpr double kD2[5] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};

// Maps a ring index outside [0, nt) onto the ring reflected through the pole;
// returns true when the longitude must be shifted by pi.
bool reflect_ring(int& j, int nt) {
  if (j < 0) {
    j = -1 - j;
    return true;
  }
  if (j >= nt) {
    j = 2 * nt - 1 - j;
    return true;
  }
  return false;
}

SphereJet latlong_jet(std::span<const double> f, const LatLongGrid& g) {
  const int nt = g.ntheta();
  const int np = g.nphi();
  const double dt = g.dtheta();
  const double dp = g.dphi();
  auto at = [&](int j, int l) {
    if (reflect_ring(j, nt)) l += np / 2;
    l = ((l % np) + np) % np;
    return f[static_cast<std::size_t>(g.index(j, l))];
  };
  SphereJet jet(static_cast<std::size_t>(g.size()));
  for (int j = 0; j < nt; ++j) {
    const double s = std::sin(g.theta(j));
    const double cot = std::cos(g.theta(j)) / s;
    for (int l = 0; l < np; ++l) {
      double ft = 0.0, fp = 0.0, ftt = 0.0, fpp = 0.0, ftp = 0.0;
      for (int a = -2; a <= 2; ++a) {
        const double along_theta = at(j + a, l);
        const double along_phi = at(j, l + a);
        ft += kD1[a + 2] * along_theta;
        ftt += kD2[a + 2] * along_theta;
        fp += kD1[a + 2] * along_phi;
        fpp += kD2[a + 2] * along_phi;
        if (a == 0) continue;
        for (int b = -2; b <= 2; ++b) {
          if (b != 0) ftp += kD1[a + 2] * kD1[b + 2] * at(j + a, l + b);
        }
      }
      ft /= dt;
      ftt /= dt * dt;
      fp /= dp;
      fpp /= dp * dp;
      ftp /= dt * dp;
      NodeJet& nj = jet[static_cast<std::size_t>(g.index(j, l))];
      nj.value = at(j, l);
      nj.grad = FrameVector(2);
      nj.grad << ft, fp / s;
      nj.hess = FrameMatrix(2, 2);
      const double off = (ftp - cot * fp) / s;
      nj.hess << ftt, off, off, fpp / (s * s) + cot * ft;
    }
  }
  return jet;
}

std::vector<double> axisym_divergence(std::span<const FrameVector> v, const AxisymGrid& g) {
  const int n = g.dim();
  const int m = g.size();
  const double h = g.spacing();
  // The polar component is odd through each pole.
  auto at = [&](int j) {
    if (j < 0) return -v[static_cast<std::size_t>(-j)](0);
    if (j > m - 1) return -v[static_cast<std::size_t>(2 * (m - 1) - j)](0);
    return v[static_cast<std::size_t>(j)](0);
  };
  std::vector<double> div(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const double d1 = (at(j + 1) - at(j - 1)) / (2.0 * h);
    if (j == 0 || j == m - 1) {
      div[static_cast<std::size_t>(j)] = n * d1;
    } else {
      const double th = g.theta(j);
      div[static_cast<std::size_t>(j)] = d1 + (n - 1) * std::cos(th) / std::sin(th) * at(j);
    }
  }
  return div;
}

std::vector<double> latlong_divergence(std::span<const FrameVector> v, const LatLongGrid& g) {
  const int nt = g.ntheta();
  const int np = g.nphi();
  // Both frame vectors reverse direction through a pole.
  auto vt = [&](int j, int l) {
    const double sign = reflect_ring(j, nt) ? -1.0 : 1.0;
    if (sign < 0.0) l += np / 2;
    l = ((l % np) + np) % np;
    return sign * v[static_cast<std::size_t>(g.index(j, l))](0);
  };
  auto vp = [&](int j, int l) {
    l = ((l % np) + np) % np;
    return v[static_cast<std::size_t>(g.index(j, l))](1);
  };
  std::vector<double> div(static_cast<std::size_t>(g.size()));
  for (int j = 0; j < nt; ++j) {
    const double s = std::sin(g.theta(j));
    const double cot = std::cos(g.theta(j)) / s;
    for (int l = 0; l < np; ++l) {
      double dvt = 0.0, dvp = 0.0;
      for (int a = -2; a <= 2; ++a) {
        dvt += kD1[a + 2] * vt(j + a, l);
        dvp += kD1[a + 2] * vp(j, l + a);
      }
      div[static_cast<std::size_t>(g.index(j, l))] = dvt / g.dtheta() + cot * vt(j, l) + dvp / (g.dphi() * s);
    }
  }
  return div;
}

}  // namespace

double sphere_area(int n) {
  if (n < 0) throw DomainError("sphere dimension must be non-negative");
  return 2.0 * std::pow(kPi, (n + 1) / 2.0) / std::tgamma((n + 1) / 2.0);
}

AxisymGrid::AxisymGrid(int n, int m) : n_(n), m_(m), h_(0.0) {
  if (n < 2 || n > kMaxDim) throw DomainError("axisym grid needs 2 <= n <= " + std::to_string(kMaxDim));
  if (m < 5 || m % 2 == 0) throw DomainError("axisym grid needs an odd node count m >= 5");
  h_ = kPi / (m - 1);
  weights_.resize(static_cast<std::size_t>(m));
  cot_.assign(static_cast<std::size_t>(m), 0.0);
  for (int j = 1; j < m - 1; ++j) cot_[static_cast<std::size_t>(j)] = std::cos(theta(j)) / std::sin(theta(j));
  const double omega = sphere_area(n - 1);
  if (n % 2 == 1) {
    // sin^{n-1} is a polynomial in cos(theta): the even periodic trapezoid rule is spectral.
    for (int j = 0; j < m; ++j) {
      const double t = (j == 0 || j == m - 1) ? 0.5 * h_ : h_;
      weights_[static_cast<std::size_t>(j)] = omega * std::pow(std::sin(theta(j)), n - 1) * t;
    }
  } else {
    const std::vector<double> cc = clenshaw_curtis(m - 1);
    for (int j = 0; j < m; ++j) {
      weights_[static_cast<std::size_t>(j)] =
          omega * std::pow(std::sin(theta(j)), n - 2) * cc[static_cast<std::size_t>(j)];
    }
  }
}

LatLongGrid::LatLongGrid(int ntheta, int nphi)
    : ntheta_(ntheta), nphi_(nphi), dtheta_(kPi / ntheta), dphi_(2.0 * kPi / nphi) {
  if (ntheta < 8) throw DomainError("latlong grid needs ntheta >= 8");
  if (nphi < 16 || nphi % 2 != 0) throw DomainError("latlong grid needs an even nphi >= 16");
  const std::vector<double> fj = fejer_first(ntheta);
  weights_.resize(static_cast<std::size_t>(size()));
  for (int j = 0; j < ntheta; ++j) {
    for (int l = 0; l < nphi; ++l) {
      weights_[static_cast<std::size_t>(index(j, l))] = fj[static_cast<std::size_t>(j)] * dphi_;
    }
  }
}

double LatLongGrid::spacing() const noexcept {
  return std::min(dtheta_, std::sin(theta(0)) * dphi_);
}

int Grid::dim() const {
  return std::visit([](const auto& g) { return g.dim(); }, g_);
}

int Grid::size() const {
  return std::visit([](const auto& g) { return g.size(); }, g_);
}

double Grid::spacing() const {
  return std::visit([](const auto& g) { return g.spacing(); }, g_);
}

std::span<const double> Grid::weights() const {
  return std::visit([](const auto& g) { return g.weights(); }, g_);
}

double Grid::theta_of(int node) const {
  if (is_axisym()) return axisym().theta(node);
  const auto& g = latlong();
  return g.theta(node / g.nphi());
}

std::string Grid::kind() const { return is_axisym() ? "axisym" : "latlong"; }

std::string Grid::dims() const {
  if (is_axisym()) return std::to_string(axisym().size());
  return std::to_string(latlong().ntheta()) + "," + std::to_string(latlong().nphi());
}

SphereJet sphere_jet(std::span<const double> field, const Grid& grid) {
  check_size(field.size(), grid.size());
  check_finite(field);
  if (grid.is_axisym()) return axisym_jet(field, grid.axisym());
  return latlong_jet(field, grid.latlong());
}

double integrate(std::span<const double> field, const Grid& grid) {
  check_size(field.size(), grid.size());
  const auto w = grid.weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i) sum += w[i] * field[i];
  return sum;
}

std::vector<double> divergence(std::span<const FrameVector> field, const Grid& grid) {
  check_size(field.size(), grid.size());
  if (grid.is_axisym()) return axisym_divergence(field, grid.axisym());
  return latlong_divergence(field, grid.latlong());
}

}  // namespace dsflow
