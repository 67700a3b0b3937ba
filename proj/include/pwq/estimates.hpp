#pragma once

// Grid verification of the one-variable inequalities and identities around
// f_{n,R}, q_n and Gamma_{a,b}. Every check returns a Report; sup-type claims
// are certified by stability of the calibrated sup when the n-range doubles.

#include <complex>
#include <cstdint>
#include <vector>

#include "pwq/report.hpp"

namespace pwq::estimates {

using cplx = std::complex<double>;

inline constexpr double kGateC = 0.2;
inline constexpr double kR0 = 3.0;
inline constexpr double kExactTolerance = 1e-12;
inline constexpr double kStabilityTolerance = 0.01;
inline constexpr std::uint64_t kDefaultSeed = 0x9E3779B97F4A7C15ULL;

/// (log R)^2 / R^2 < c r.
bool gate_holds(double R, double r, double c = kGateC);

Report check_dual_representation(int n_max, const std::vector<double>& R_values, int resolution,
                                 double half_width);
Report check_gamma_representation(int n_max, const std::vector<double>& R_values, int resolution);
Report check_reflection_product(int n_max, const std::vector<double>& R_values, int resolution,
                                double half_width);

Report check_separating_line(const std::vector<double>& b_values, int x_resolution);
Report check_phi_lower_bound(int t_resolution);
Report check_HR_bound(const std::vector<double>& R_values, int x_resolution);
/// |G(z)| <= G(|z|) <= q_{b-a}(|z|) (times b/a when a < 1) and |G(z)| >= 1 on
/// Re z >= 0, for a = 1/2, 1, ..., a_doubled_max/2 and degrees 0..max_degree.
Report check_gamma_ab_bounds(int a_doubled_max, int max_degree, int resolution, double half_width);

/// sup |F~_{n,R}(z)| e^{-pi R |Im z|} over |z| >= n/R.
Report check_largelambda(const GridSpec& g);
/// sup |F~_{n,R}(z)| e^{-r n} over z in [0, n/R].
Report check_smalllambda(double r, const GridSpec& g);
/// sup |F~_{n,R}(z)| e^{-r n - pi R |Im z|} over the complex region.
Report check_prop_basic(double r, double R, int k, const GridSpec& g);

/// min{|f_{0,R}(z0)|, ..., |f_{N-1,R}(z0)|, f_{N,R}(|z0|)}, N = ceil(R|z0|).
double inf_f_at(cplx z0, double R);
/// min over n <= n_max of |f_{n,R}(z0)|, each term evaluated on its own.
double inf_f_brute_force(cplx z0, double R, int n_max = 1000);
/// inf_f_at against the brute-force minimum on seeded real admissible cases.
Report check_normalization(std::uint64_t seed, int cases);

/// Band [C1, C2] of log(AR+B)/(AR+B) / (log R / R) for R in [C0, 1e6].
Report check_scaling_band(double A, double B, double a, int resolution);

}  // namespace pwq::estimates
