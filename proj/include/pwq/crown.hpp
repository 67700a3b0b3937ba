#pragma once

// Crown-domain geometry: membership tests for SU(1,1), SO_0(1,n) (n even) and
// the square-root domain of GL(n,R), brute-force boundary scans, and the
// exponential fit of the admissible torus radius r(R).

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pwq/report.hpp"

namespace pwq::crown {

using cplx = std::complex<double>;

struct DiscPair {
  cplx z;
  cplx w;

  bool in_bidisc() const { return std::abs(z) < 1.0 && std::abs(w) < 1.0; }
};

/// k_{i theta} a_t . z0 = (e^{2 theta} tanh t, e^{-2 theta} tanh t).
DiscPair su11_point(double theta, double t);
bool su11_member(double theta, double t);
/// 1/2 log coth(R / sqrt 8).
double su11_beta(double R);

/// Largest theta (nested grids down to final_step) with su11_member(theta', t)
/// for all grid |theta'| <= theta and grid |t| <= R / sqrt 8.
double su11_beta_scan(double R, double final_step = 1e-4);

/// cosh^2 t - sum_j cosh^2 beta_j (u_{2j-1}^2 + u_{2j}^2) > 0 with u = |sinh t| dir.
bool so1n_member(const std::vector<double>& beta, double t, const std::vector<double>& direction);
/// asinh(1 / sinh R'), R' = R / sqrt(2(n-1)); n >= 2 even.
double so1n_chamber_bound(double R, int n);
double so1n_rprime(double R, int n);

/// Brute-force chamber bound: largest b with beta = (b, ..., b) a member for
/// every grid t in [0, R'] and every sampled direction.
double so1n_chamber_scan(double R, int n, std::uint64_t seed, double final_step = 1e-4, double t_step = 1e-3);

/// Y - S(x) Y S(x)^T positive definite, tested by Cholesky with pivots > 1e-12.
bool gln_sqrt_member(const Eigen::MatrixXd& Y, const std::vector<double>& x);
Eigen::MatrixXd gln_S(int n, const std::vector<double>& x);

/// Trial 0 is the extremal diag(e^R, e^-R, ...); the others conjugate a
/// log-uniform spectrum in [e^-R, e^R] (endpoints pinned) by a random orthogonal matrix.
Eigen::MatrixXd gln_sample_Y(double R, int n, int trial, std::uint64_t seed);

struct GlnScan {
  double r_scan = 0.0;
  int gate_failures = 0;
  int gate_trials = 0;
};

/// Largest r on a log grid with membership for every sampled Y and |x|_inf <= r,
/// plus the sufficiency trials under tanh^2 r e^{2R} < 1.
GlnScan gln_radius_scan(double R, int n, int trials, std::uint64_t seed);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
};
LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

Report check_su11(const std::vector<double>& R_values, double final_step = 1e-4);
Report check_so1n(const std::vector<int>& n_values, const std::vector<double>& rprime_values, std::uint64_t seed);
Report check_gln(const std::vector<double>& R_values, int n, int trials, std::uint64_t seed);

/// CSV: R,beta_closed,beta_scan
std::string su11_csv(const std::vector<double>& R_values, double final_step = 1e-4);
/// CSV: n,R,rprime,bound_closed,bound_scan
std::string so1n_csv(const std::vector<int>& n_values, const std::vector<double>& R_values, std::uint64_t seed);
/// CSV: R,n,r_scan,sufficient_r,gate_failures
std::string gln_csv(const std::vector<double>& R_values, int n, int trials, std::uint64_t seed);

}  // namespace pwq::crown
