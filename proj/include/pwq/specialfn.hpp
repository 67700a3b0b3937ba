#pragma once

// One-variable special functions: complex log-Gamma, the regularized sinc
// products f_{n,R}, the rising-factorial polynomials q_n and Gamma_{a,b},
// and exact factored polynomials with half-integer roots.

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pwq/halfint.hpp"

namespace pwq::specialfn {

using cplx = std::complex<double>;

/// Principal-branch log of Gamma(z). Lanczos (g = 7, 9 terms) with
/// reflection for Re z < 1/2. Throws ErrorKind::Pole within 1e-12 of a
/// non-positive integer.
cplx log_gamma(cplx z);

/// log(sin(pi w)) on some branch, stable for large |Im w|. Returns a value
/// with real part -inf at integers.
cplx log_sin_pi(cplx w);

/// prod_{j=1..n} (1 + x/j); the empty product is 1.
double q_eval(int n, double x);
double log_q_eval(int n, double x);

/// Gamma_{a,b}(z) = Gamma(z+b)Gamma(a) / (Gamma(z+a)Gamma(b)), a polynomial
/// of degree b - a with Gamma_{a,b}(0) = 1.
class GammaRatioPoly {
 public:
  GammaRatioPoly(HalfInt a, HalfInt b);

  HalfInt a() const { return a_; }
  HalfInt b() const { return b_; }
  int degree() const { return static_cast<int>((b_ - a_).doubled() / 2); }

  cplx operator()(cplx z) const;

 private:
  HalfInt a_;
  HalfInt b_;
};

/// leading * prod (z - root)^multiplicity with half-integer roots.
class FactoredPoly {
 public:
  FactoredPoly() = default;
  explicit FactoredPoly(cplx leading) : leading_(leading) {}
  FactoredPoly(cplx leading, std::map<HalfInt, int> roots);

  static FactoredPoly from(const GammaRatioPoly& p);

  cplx leading() const { return leading_; }
  const std::map<HalfInt, int>& roots() const { return roots_; }
  int degree() const;

  cplx operator()(cplx z) const;
  /// Complex log of the value; real part is -inf at a root.
  cplx log_eval(cplx z) const;

  /// Smallest |z - root| over the roots, +inf for a constant.
  double distance_to_roots(cplx z) const;

  FactoredPoly operator*(const FactoredPoly& other) const;
  FactoredPoly pow(int k) const;

  /// Exact quotient this / d. Throws ErrorKind::Precondition unless d divides this.
  FactoredPoly divided_by(const FactoredPoly& d) const;

  std::string to_string() const;

 private:
  cplx leading_{1.0, 0.0};
  std::map<HalfInt, int> roots_;
};

/// Root-multiset inclusion; exact.
bool factored_divides(const FactoredPoly& d, const FactoredPoly& e);

/// e(z) = Gamma_{1,M+1}(z)^2 Gamma_{1/2,M+1/2}(z)^2 for M = m * ceil|tau| >= 1.
FactoredPoly e_tau_build(int m_ceil_tau);

/// f_{n,R}(z) = sin(pi R z) / (pi R z prod_{j<=n} (1 - (Rz/j)^2))
///            = prod_{j>n} (1 - (Rz/j)^2).
struct SincProduct {
  int n = 0;
  double R = 1.0;
};

/// Sine-quotient representation. Undefined where R z is an integer j, 0 < |j| <= n.
cplx log_f_sine_form(const SincProduct& s, cplx z);
/// Truncated infinite product to J = max(1000, ceil(10 R|z|), 10n) plus an
/// Euler-Maclaurin tail correction.
cplx log_f_product_form(const SincProduct& s, cplx z);

/// Distance from R z to the integers in [-n, n].
double distance_to_core_integers(const SincProduct& s, cplx z);

/// Branch selection: sine form when the distance above exceeds 0.25.
cplx log_f_eval(const SincProduct& s, cplx z);
cplx f_eval(const SincProduct& s, cplx z);

/// log_f_product_form for n = 0..n_max from one set of prefix sums; each n
/// keeps its own truncation index.
std::vector<cplx> log_f_product_row(double R, cplx z, int n_max);

/// log f_{n,R}(z) for n = 0..n_max with the same branch rule as log_f_eval,
/// sharing partial products between consecutive n.
std::vector<cplx> log_f_row(double R, cplx z, int n_max);

/// F~_{n,R}(z) = f_{n,R}(z) q_n(|z|).
struct EstimateKernel {
  int n = 0;
  double R = 1.0;

  cplx log_eval(cplx z) const;
  cplx operator()(cplx z) const;
};

/// Gamma-function form of F~_{n,R} for real z in (0, n/R):
/// Gamma(n+1+z)Gamma(n+1) / (Gamma(1+z)Gamma(n+1+Rz)Gamma(n+1-Rz)).
cplx log_estimate_kernel_gamma_form(int n, double R, cplx z);

}  // namespace pwq::specialfn
