#pragma once

// Elementary symmetric functions of principal curvature vectors.
//
// sigma_k(l) = sum over 1 <= i_1 < ... < i_k <= n of l_{i_1} ... l_{i_k}, sigma_0 = 1.
// sigma_k(l|i) is the same function with entry i removed.  Everything here is
// pure and allocation-free; vectors hold at most kMaxDim entries.

#include <boost/container/static_vector.hpp>

#include <initializer_list>
#include <span>

namespace dsflow {

inline constexpr int kMaxDim = 8;

/// Absolute tolerance for closure membership in the Garding cone.
inline constexpr double kConeTol = 1e-12;

/// Ordered list of n principal curvatures, 2 <= n <= kMaxDim, all finite.
class CurvatureVector {
 public:
  using storage = boost::container::static_vector<double, kMaxDim>;

  CurvatureVector(std::initializer_list<double> values);
  explicit CurvatureVector(std::span<const double> values);

  int size() const noexcept { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const noexcept { return {v_.data(), v_.size()}; }

  /// Non-increasing order, as used for labelled ("sorted") curvature vectors.
  bool is_sorted() const noexcept;
  CurvatureVector sorted() const;

 private:
  storage v_;
};

// Holds up to kMaxDim + 1 entries so that sigma_0 .. sigma_n fit.
using SymVector = boost::container::static_vector<double, kMaxDim + 1>;

/// sigma_k together with its first derivatives and those of F = sigma_k^{1/k}.
struct SymDerivatives {
  double value = 0.0;        // sigma_k
  SymVector grad;            // d sigma_k / d l_i = sigma_{k-1}(l|i)
  double power_value = 0.0;  // F; 0 when not requested
  SymVector power_grad;      // f^i = dF / d l_i; empty when not requested
};

/// Residuals of the three summation identities for sigma_k minors.
struct IdentityResiduals {
  double weighted_minor = 0.0;  // sum l_i sigma_{k-1}(l|i) - k sigma_k
  double minor_sum = 0.0;       // sum sigma_k(l|i) - (n-k) sigma_k
  double squared = 0.0;         // sum sigma_{k-1}(l|i) l_i^2 - (sigma_k sigma_1 - (k+1) sigma_{k+1})
  double max_abs() const noexcept;
};

enum class ConeMode { strict, closure };

/// C_n^k as a double.
double binomial(int n, int k);

/// b_{n,k} = (C_n^k)^{1/k} = F(1, ..., 1).
double normalization(int n, int k);

double sigma(const CurvatureVector& l, int k);

/// sigma_0 ... sigma_n in one O(n^2) pass.
SymVector all_sigmas(const CurvatureVector& l);

double sigma_minor(const CurvatureVector& l, int k, int i);

/// Derivatives of sigma_k; with power = true also F and f^i, which need sigma_k > 0.
SymDerivatives sym_derivatives(const CurvatureVector& l, int k, bool power = true);

/// sigma_j(l) > 0 (strict) or >= -kConeTol (closure) for every 1 <= j <= k.
bool gamma_cone_test(const CurvatureVector& l, int k, ConeMode mode = ConeMode::strict);

/// (sigma_k/C_n^k)^{1/k} - (sigma_l/C_n^l)^{1/l}; <= 0 on Gamma_k, zero iff l is umbilic.
/// For l = 0 the comparison mean is sigma_1/n.
double maclaurin_gap(const CurvatureVector& l, int k, int lower);

IdentityResiduals identity_suite(const CurvatureVector& l, int k);

/// d^2 sigma_2 / d a_pq d a_rs at a diagonal matrix with eigenvalues l:
///   1 if p = q, r = s, p != r;  -1 if p = s, q = r, p != q;  0 otherwise.
/// Only used to cross-check the matrix-function calculus; the solver never needs it.
double sigma2_second_derivative(const CurvatureVector& l, int p, int q, int r, int s);

}  // namespace dsflow
