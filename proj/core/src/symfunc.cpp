#include "dsflow/symfunc.hpp"

#include "dsflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

namespace dsflow {
namespace {

void check_entries(std::span<const double> values) {
  if (values.size() < 2 || values.size() > static_cast<std::size_t>(kMaxDim)) {
    throw DomainError("curvature vector needs 2.." + std::to_string(kMaxDim) + " entries, got " +
                      std::to_string(values.size()));
  }
  for (double x : values) {
    if (!std::isfinite(x)) throw InputError("curvature vector entry is not finite");
  }
}

// e_0..e_kmax of the entries of l, skipping index `skip` (or none when skip < 0).
SymVector running_products(std::span<const double> l, int kmax, int skip) {
  SymVector e(static_cast<std::size_t>(kmax) + 1, 0.0);
  e[0] = 1.0;
  int seen = 0;
  for (int i = 0; i < static_cast<int>(l.size()); ++i) {
    if (i == skip) continue;
    ++seen;
    const double x = l[static_cast<std::size_t>(i)];
    for (int j = std::min(seen, kmax); j >= 1; --j) {
      e[static_cast<std::size_t>(j)] += x * e[static_cast<std::size_t>(j - 1)];
    }
  }
  return e;
}

[[noreturn, gnu::noinline, gnu::cold]] void bad_order(int n, int k, int kmax) {
  throw DomainError("order k = " + std::to_string(k) + " outside [0, " + std::to_string(kmax) +
                    "] for n = " + std::to_string(n));
}

inline void check_order(int n, int k, int kmax) {
  if (k < 0 || k > kmax) [[unlikely]] bad_order(n, k, kmax);
}

}  // namespace

CurvatureVector::CurvatureVector(std::initializer_list<double> values)
    : CurvatureVector(std::span<const double>(values.begin(), values.size())) {}

CurvatureVector::CurvatureVector(std::span<const double> values) {
  check_entries(values);
  v_.assign(values.begin(), values.end());
}

bool CurvatureVector::is_sorted() const noexcept {
  return std::is_sorted(v_.begin(), v_.end(), std::greater<>{});
}

CurvatureVector CurvatureVector::sorted() const {
  CurvatureVector out = *this;
  std::sort(out.v_.begin(), out.v_.end(), std::greater<>{});
  return out;
}

double IdentityResiduals::max_abs() const noexcept {
  return std::max({std::abs(weighted_minor), std::abs(minor_sum), std::abs(squared)});
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return std::round(c);
}

double normalization(int n, int k) {
  if (k < 1 || k > n) throw DomainError("b_{n,k} needs 1 <= k <= n");
  return std::pow(binomial(n, k), 1.0 / k);
}

double sigma(const CurvatureVector& l, int k) {
  check_order(l.size(), k, l.size());
  return running_products(l.values(), k, -1)[static_cast<std::size_t>(k)];
}

SymVector all_sigmas(const CurvatureVector& l) {
  return running_products(l.values(), l.size(), -1);
}

double sigma_minor(const CurvatureVector& l, int k, int i) {
  if (i < 0 || i >= l.size()) throw DomainError("minor index " + std::to_string(i) + " out of range");
  check_order(l.size(), k, l.size() - 1);
  return running_products(l.values(), k, i)[static_cast<std::size_t>(k)];
}

SymDerivatives sym_derivatives(const CurvatureVector& l, int k, bool power) {
  const int n = l.size();
  check_order(n, k, n);
  SymDerivatives d;
  d.value = sigma(l, k);
  d.grad.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    d.grad[static_cast<std::size_t>(i)] = k == 0 ? 0.0 : sigma_minor(l, k - 1, i);
  }
  if (!power) return d;
  if (k == 0) throw DomainError("F = sigma_k^{1/k} needs k >= 1");
  if (!(d.value > 0.0)) {
    throw ConeError("sigma_" + std::to_string(k) + " = " + std::to_string(d.value) +
                    " <= 0; F = sigma_k^{1/k} undefined");
  }
  d.power_value = std::pow(d.value, 1.0 / k);
  // f^i = (1/k) sigma_k^{1/k - 1} sigma_{k-1}(l|i)
  const double scale = d.power_value / (k * d.value);
  d.power_grad.resize(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < d.grad.size(); ++i) d.power_grad[i] = scale * d.grad[i];
  return d;
}

bool gamma_cone_test(const CurvatureVector& l, int k, ConeMode mode) {
  if (k < 1 || k > l.size()) throw DomainError("cone order k must be in [1, n]");
  const SymVector s = running_products(l.values(), k, -1);
  for (int j = 1; j <= k; ++j) {
    const double v = s[static_cast<std::size_t>(j)];
    if (mode == ConeMode::strict ? !(v > 0.0) : !(v >= -kConeTol)) return false;
  }
  return true;
}

double maclaurin_gap(const CurvatureVector& l, int k, int lower) {
  const int n = l.size();
  if (!(k > lower && lower >= 0 && k <= n)) throw DomainError("maclaurin_gap needs n >= k > l >= 0");
  if (!gamma_cone_test(l, k)) throw ConeError("maclaurin_gap: curvature vector outside Gamma_k");
  const SymVector s = all_sigmas(l);
  auto mean = [&](int j) {
    return std::pow(s[static_cast<std::size_t>(j)] / binomial(n, j), 1.0 / j);
  };
  return mean(k) - (lower == 0 ? s[1] / n : mean(lower));
}

IdentityResiduals identity_suite(const CurvatureVector& l, int k) {
  const int n = l.size();
  if (k < 1 || k > n - 1) throw DomainError("identity_suite needs 1 <= k <= n-1");
  const SymVector s = all_sigmas(l);
  const auto sk = s[static_cast<std::size_t>(k)];
  double weighted = 0.0, minors = 0.0, squared = 0.0;
  for (int i = 0; i < n; ++i) {
    const double li = l[i];
    const double m_km1 = sigma_minor(l, k - 1, i);
    weighted += li * m_km1;
    minors += sigma_minor(l, k, i);
    squared += m_km1 * li * li;
  }
  IdentityResiduals r;
  r.weighted_minor = weighted - k * sk;
  r.minor_sum = minors - (n - k) * sk;
  r.squared = squared - (sk * s[1] - (k + 1) * s[static_cast<std::size_t>(k + 1)]);
  return r;
}

double sigma2_second_derivative(const CurvatureVector& l, int p, int q, int r, int s) {
  const int n = l.size();
  for (int idx : {p, q, r, s}) {
    if (idx < 0 || idx >= n) throw DomainError("matrix index out of range");
  }
  // sigma_{k-2}(l|pr) = sigma_0 = 1 for k = 2.
  if (p == q && r == s && p != r) return 1.0;
  if (p == s && q == r && p != q) return -1.0;
  return 0.0;
}

}  // namespace dsflow
