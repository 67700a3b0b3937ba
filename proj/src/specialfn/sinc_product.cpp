#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "pwq/specialfn.hpp"

namespace pwq::specialfn {

namespace {

constexpr double kPi = std::numbers::pi;

// log((j - w)(j + w) / j^2) = log(1 - (w/j)^2), accurate near w = +-j.
cplx log_factor(int j, cplx w) {
  const double jd = static_cast<double>(j);
  return std::log((jd - w) * (jd + w) / (jd * jd));
}

// log(sin(pi w) / (pi w)), with a series near w = 0.
cplx log_sinc(cplx w) {
  const cplx x = kPi * w;
  if (std::abs(x) < 1e-4) {
    const cplx x2 = x * x;
    return std::log(1.0 - x2 / 6.0 + x2 * x2 / 120.0);
  }
  return log_sin_pi(w) - std::log(x);
}

// sum_{j > J} log(1 - (w/j)^2) = -sum_k w^{2k}/k * zeta(2k, J+1), each Hurwitz
// tail from Euler-Maclaurin: a^{1-s}/(s-1) + a^{-s}/2 + s a^{-s-1}/12.
cplx log_tail(cplx w, int J) {
  const double a = static_cast<double>(J) + 1.0;
  const cplx w2 = w * w;
  cplx sum = 0.0;
  cplx wpow = 1.0;
  for (int k = 1; k <= 200; ++k) {
    wpow *= w2;
    const double s = 2.0 * k;
    const double zeta =
        std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s) + s * std::pow(a, -s - 1.0) / 12.0;
    const cplx term = wpow * zeta / static_cast<double>(k);
    sum -= term;
    if (std::abs(term) <= 1e-18 * std::max(1.0, std::abs(sum))) break;
  }
  return sum;
}

int truncation_index(const SincProduct& s, cplx z) {
  const double J1 = std::ceil(10.0 * s.R * std::abs(z));
  return static_cast<int>(std::max({1000.0, J1, 10.0 * s.n}));
}

}  // namespace

double q_eval(int n, double x) {
  double p = 1.0;
  for (int j = 1; j <= n; ++j) p *= 1.0 + x / j;
  return p;
}

double log_q_eval(int n, double x) {
  double s = 0.0;
  for (int j = 1; j <= n; ++j) s += std::log1p(x / j);
  return s;
}

cplx log_f_sine_form(const SincProduct& s, cplx z) {
  const cplx w = s.R * z;
  cplx out = log_sinc(w);
  for (int j = 1; j <= s.n; ++j) out -= log_factor(j, w);
  return out;
}

cplx log_f_product_form(const SincProduct& s, cplx z) {
  const cplx w = s.R * z;
  const int J = truncation_index(s, z);
  cplx out = 0.0;
  for (int j = s.n + 1; j <= J; ++j) out += log_factor(j, w);
  return out + log_tail(w, J);
}

double distance_to_core_integers(const SincProduct& s, cplx z) {
  const cplx w = s.R * z;
  const double k = std::clamp(std::round(w.real()), -static_cast<double>(s.n), static_cast<double>(s.n));
  return std::abs(w - k);
}

cplx log_f_eval(const SincProduct& s, cplx z) {
  if (distance_to_core_integers(s, z) > 0.25) return log_f_sine_form(s, z);
  return log_f_product_form(s, z);
}

cplx f_eval(const SincProduct& s, cplx z) {
  const cplx l = log_f_eval(s, z);
  if (l.real() == -std::numeric_limits<double>::infinity()) return 0.0;
  return std::exp(l);
}

std::vector<cplx> log_f_product_row(double R, cplx z, int n_max) {
  const cplx w = R * z;
  std::vector<int> J(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) J[static_cast<std::size_t>(n)] = truncation_index(SincProduct{n, R}, z);
  const int J_max = J.back();
  std::vector<cplx> prefix(static_cast<std::size_t>(J_max) + 1);
  for (int j = 1; j <= J_max; ++j) {
    prefix[static_cast<std::size_t>(j)] = prefix[static_cast<std::size_t>(j - 1)] + log_factor(j, w);
  }
  std::vector<cplx> row(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    const int Jn = J[static_cast<std::size_t>(n)];
    row[static_cast<std::size_t>(n)] =
        prefix[static_cast<std::size_t>(Jn)] - prefix[static_cast<std::size_t>(n)] + log_tail(w, Jn);
  }
  return row;
}

std::vector<cplx> log_f_row(double R, cplx z, int n_max) {
  std::vector<cplx> row(static_cast<std::size_t>(n_max) + 1);
  std::vector<cplx> product;
  const cplx w = R * z;
  cplx sine = log_sinc(w);
  for (int n = 0; n <= n_max; ++n) {
    if (n > 0) sine -= log_factor(n, w);
    if (distance_to_core_integers(SincProduct{n, R}, z) > 0.25) {
      row[static_cast<std::size_t>(n)] = sine;
      continue;
    }
    if (product.empty()) product = log_f_product_row(R, z, n_max);
    row[static_cast<std::size_t>(n)] = product[static_cast<std::size_t>(n)];
  }
  return row;
}

cplx EstimateKernel::log_eval(cplx z) const {
  return log_f_eval(SincProduct{n, R}, z) + log_q_eval(n, std::abs(z));
}

cplx EstimateKernel::operator()(cplx z) const {
  const cplx l = log_eval(z);
  if (l.real() == -std::numeric_limits<double>::infinity()) return 0.0;
  return std::exp(l);
}

cplx log_estimate_kernel_gamma_form(int n, double R, cplx z) {
  const double n1 = n + 1.0;
  return log_gamma(n1 + z) + log_gamma(n1) - log_gamma(1.0 + z) - log_gamma(n1 + R * z) -
         log_gamma(n1 - R * z);
}

}  // namespace pwq::specialfn
