#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "pwq/crown.hpp"
#include "pwq/error.hpp"

namespace pwq::crown {

namespace {

// Grid of points lo, lo + step, ..., with hi always included.
std::vector<double> closed_grid(double lo, double hi, double step) {
  std::vector<double> g;
  const auto n = static_cast<long>(std::floor((hi - lo) / step));
  for (long k = 0; k <= n; ++k) g.push_back(lo + static_cast<double>(k) * step);
  if (g.empty() || g.back() < hi) g.push_back(hi);
  return g;
}

// Coarse-to-fine search for the last admissible value of a predicate that is
// checked at every grid value from 0 upwards. Steps 1e-2, 1e-3, ... down to final_step.
template <class Pred>
double nested_scan(Pred ok, double final_step, double cap) {
  double good = 0.0;
  if (!ok(0.0)) return 0.0;
  double step = 1e-2;
  double limit = cap;
  while (true) {
    double fail = limit;
    for (long k = 1;; ++k) {
      const double v = good + static_cast<double>(k) * step;
      if (v >= limit) break;
      if (!ok(v)) {
        fail = v;
        break;
      }
    }
    // the last passing grid value before the failure
    const long passed = static_cast<long>(std::floor((fail - good) / step - 1e-9));
    const double new_good = good + static_cast<double>(std::max(passed, 0L)) * step;
    if (fail >= limit && new_good + step >= limit) return new_good;
    good = new_good;
    limit = fail;
    if (step <= final_step * (1.0 + 1e-9)) return good;
    step /= 10.0;
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

Json rjson(double R) { return R; }

}  // namespace

DiscPair su11_point(double theta, double t) {
  const double th = std::tanh(t);
  return {cplx(std::exp(2.0 * theta) * th, 0.0), cplx(std::exp(-2.0 * theta) * th, 0.0)};
}

bool su11_member(double theta, double t) { return su11_point(theta, t).in_bidisc(); }

double su11_beta(double R) {
  if (!(R > 0.0)) throw Error(ErrorKind::Precondition, "R must be positive");
  return 0.5 * std::log(1.0 / std::tanh(R / std::sqrt(8.0)));
}

double su11_beta_scan(double R, double final_step) {
  if (!(R > 0.0)) throw Error(ErrorKind::Precondition, "R must be positive");
  const double T = R / std::sqrt(8.0);
  std::vector<double> ts = closed_grid(-T, T, final_step);
  auto ok = [&](double theta) {
    for (double t : ts) {
      if (!su11_member(theta, t) || !su11_member(-theta, t)) return false;
    }
    return true;
  };
  return nested_scan(ok, final_step, 50.0);
}

bool so1n_member(const std::vector<double>& beta, double t, const std::vector<double>& direction) {
  if (direction.size() != 2 * beta.size()) throw Error(ErrorKind::DimensionMismatch, "direction must have 2 l entries");
  const double sh = std::sinh(t);
  const double ch = std::cosh(t);
  double q = ch * ch;
  for (std::size_t j = 0; j < beta.size(); ++j) {
    const double cb = std::cosh(beta[j]);
    const double u1 = sh * direction[2 * j];
    const double u2 = sh * direction[2 * j + 1];
    q -= cb * cb * (u1 * u1 + u2 * u2);
  }
  return q > 0.0;
}

double so1n_rprime(double R, int n) {
  if (n < 2 || n % 2 != 0) throw Error(ErrorKind::Precondition, "only even n >= 2 is supported");
  return R / std::sqrt(2.0 * (n - 1));
}

double so1n_chamber_bound(double R, int n) {
  if (!(R > 0.0)) throw Error(ErrorKind::Precondition, "R must be positive");
  return std::asinh(1.0 / std::sinh(so1n_rprime(R, n)));
}

double so1n_chamber_scan(double R, int n, std::uint64_t seed, double final_step, double t_step) {
  const double Rp = so1n_rprime(R, n);
  const auto l = static_cast<std::size_t>(n / 2);
  std::vector<std::vector<double>> dirs;
  for (int k = 0; k < n; ++k) {
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(k)] = 1.0;
    dirs.push_back(e);
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N(0.0, 1.0);
  for (int k = 0; k < 32; ++k) {
    std::vector<double> d(static_cast<std::size_t>(n));
    double s = 0.0;
    for (auto& c : d) {
      c = N(rng);
      s += c * c;
    }
    for (auto& c : d) c /= std::sqrt(s);
    dirs.push_back(d);
  }
  const std::vector<double> ts = closed_grid(0.0, Rp, t_step);
  auto ok = [&](double b) {
    // a point of the closed chamber b = beta_1 >= beta_2 >= ... >= 0
    std::vector<double> beta(l);
    for (std::size_t j = 0; j < l; ++j) beta[j] = b * static_cast<double>(l - j) / static_cast<double>(l);
    for (double t : ts) {
      for (const auto& d : dirs) {
        if (!so1n_member(beta, t, d)) return false;
      }
    }
    return true;
  };
  return nested_scan(ok, final_step, 50.0);
}

Eigen::MatrixXd gln_S(int n, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != n / 2) throw Error(ErrorKind::DimensionMismatch, "x must have floor(n/2) entries");
  Eigen::MatrixXd S = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const auto i = static_cast<Eigen::Index>(2 * j);
    const double th = std::tanh(x[j]);
    S(i, i + 1) = -th;
    S(i + 1, i) = th;
  }
  return S;
}

bool gln_sqrt_member(const Eigen::MatrixXd& Y, const std::vector<double>& x) {
  if (Y.rows() != Y.cols()) throw Error(ErrorKind::DimensionMismatch, "Y must be square");
  const double scale = std::max(1.0, Y.cwiseAbs().maxCoeff());
  if ((Y - Y.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorKind::NonSymmetricInput, "Y is not symmetric");
  }
  const Eigen::MatrixXd S = gln_S(static_cast<int>(Y.rows()), x);
  Eigen::MatrixXd M = Y - S * Y * S.transpose();
  M = 0.5 * (M + M.transpose());
  const Eigen::LLT<Eigen::MatrixXd> llt(M);
  if (llt.info() != Eigen::Success) return false;
  const Eigen::MatrixXd L = llt.matrixL();
  for (Eigen::Index i = 0; i < L.rows(); ++i) {
    if (!(L(i, i) * L(i, i) > 1e-12)) return false;
  }
  return true;
}

Eigen::MatrixXd gln_sample_Y(double R, int n, int trial, std::uint64_t seed) {
  Eigen::VectorXd spectrum(n);
  if (trial == 0) {
    for (int i = 0; i < n; ++i) spectrum(i) = (i % 2 == 0) ? std::exp(R) : std::exp(-R);
    if (n % 2 == 1) spectrum(n - 1) = 1.0;
    return spectrum.asDiagonal();
  }
  std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                   static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(sq);
  std::normal_distribution<double> N(0.0, 1.0);
  std::uniform_real_distribution<double> U(-R, R);
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) G(i, j) = N(rng);
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  const Eigen::MatrixXd Q = qr.householderQ();
  for (int i = 0; i < n; ++i) spectrum(i) = std::exp(U(rng));
  spectrum(0) = std::exp(R);
  if (n > 1) spectrum(1) = std::exp(-R);
  Eigen::MatrixXd Y = Q * spectrum.asDiagonal() * Q.transpose();
  return 0.5 * (Y + Y.transpose());
}

namespace {

// Corners of the cube |x|_inf <= r plus seeded interior points, as unit-cube directions.
std::vector<std::vector<double>> cube_samples(int m, int random_count, std::mt19937_64& rng) {
  std::vector<std::vector<double>> out;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    std::vector<double> c(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) c[static_cast<std::size_t>(j)] = (mask & (1u << j)) ? -1.0 : 1.0;
    out.push_back(c);
  }
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int k = 0; k < random_count; ++k) {
    std::vector<double> c(static_cast<std::size_t>(m));
    for (auto& v : c) v = U(rng);
    out.push_back(c);
  }
  return out;
}

bool all_members(const std::vector<Eigen::MatrixXd>& Ys, const std::vector<std::vector<double>>& dirs, double r) {
  std::vector<double> x;
  for (const auto& Y : Ys) {
    for (const auto& d : dirs) {
      x.resize(d.size());
      for (std::size_t j = 0; j < d.size(); ++j) x[j] = r * d[j];
      if (!gln_sqrt_member(Y, x)) return false;
    }
  }
  return true;
}

}  // namespace

GlnScan gln_radius_scan(double R, int n, int trials, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::Precondition, "n must be at least 2");
  const int m = n / 2;
  std::mt19937_64 rng(seed);
  const auto dirs = cube_samples(m, 4, rng);
  GlnScan out;

  // radius scan over a log grid with ratio 1.005, a subset of the trials
  std::vector<Eigen::MatrixXd> Ys;
  for (int t = 0; t < std::min(trials, 20); ++t) Ys.push_back(gln_sample_Y(R, n, t, seed));
  const double ratio = std::log(1.005);
  for (long k = 0;; ++k) {
    const double r = std::exp(std::log(1e-5) + static_cast<double>(k) * ratio);
    if (r > 10.0 || !all_members(Ys, dirs, r)) break;
    out.r_scan = r;
  }

  // sufficiency just inside tanh^2 r e^{2R} < 1
  const double r_gate = std::atanh(std::exp(-R)) * (1.0 - 1e-6);
  const auto gate_dirs = cube_samples(m, 8, rng);
  for (int t = 0; t < trials; ++t) {
    ++out.gate_trials;
    if (!all_members({gln_sample_Y(R, n, t, seed)}, gate_dirs, r_gate)) ++out.gate_failures;
  }
  return out;
}

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorKind::Precondition, "line fit needs two or more points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  return f;
}

Report check_su11(const std::vector<double>& R_values, double final_step) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "crown-su11";
  rep.grid = {{"R_values", R_values}, {"final_step", final_step}, {"levels", {1e-2, 1e-3, final_step}}};
  ViolationTracker tr;
  for (double R : R_values) {
    const double closed = su11_beta(R);
    const double scan = su11_beta_scan(R, final_step);
    rep.constants["beta_R=" + fmt(R)] = closed;
    rep.constants["beta_scan_R=" + fmt(R)] = scan;
    tr.update(std::abs(closed - scan), {{"R", rjson(R)}, {"closed", closed}, {"scan", scan}});
  }
  // strict decrease in R
  for (int k = 1; k < 40; ++k) {
    const double R1 = 0.25 * k, R2 = 0.25 * (k + 1);
    if (!(su11_beta(R2) < su11_beta(R1))) tr.update(1.0, {{"monotonicity", {R1, R2}}});
  }
  // nesting: members for the larger R are members for the smaller one
  const std::vector<double> Rs{0.5, 1.0, 2.0, 2.0 * std::sqrt(2.0), 5.0};
  auto member_at = [](double theta, double R) {
    for (double t : closed_grid(-R / std::sqrt(8.0), R / std::sqrt(8.0), 1e-3)) {
      if (!su11_member(theta, t)) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i + 1 < Rs.size(); ++i) {
    for (int k = 0; k <= 100; ++k) {
      const double theta = 0.02 * k;
      if (member_at(theta, Rs[i + 1]) && !member_at(theta, Rs[i])) {
        tr.update(1.0, {{"nesting", {Rs[i], Rs[i + 1]}}, {"theta", theta}});
      }
    }
  }
  // decay rate of beta_R, recorded
  std::vector<double> xs, ys;
  for (double R = 5.0; R <= 10.0 + 1e-12; R += 0.5) {
    xs.push_back(R);
    ys.push_back(std::log(su11_beta(R)));
  }
  const LineFit fit = least_squares(xs, ys);
  rep.constants["log_beta_slope_R5_10"] = fit.slope;
  rep.constants["log_beta_slope_expected"] = -2.0 / std::sqrt(8.0);
  tr.store(rep);
  rep.tolerance = 2.0 * final_step;
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

Report check_so1n(const std::vector<int>& n_values, const std::vector<double>& rprime_values, std::uint64_t seed) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "crown-so1n";
  rep.grid = {{"n_values", n_values}, {"rprime_values", rprime_values}, {"t_step", 1e-3}, {"seed", seed},
              {"directions", "coordinate axes and 32 seeded unit vectors"}};
  ViolationTracker tr;
  for (int n : n_values) {
    for (double rp : rprime_values) {
      const double R = rp * std::sqrt(2.0 * (n - 1));
      const double closed = so1n_chamber_bound(R, n);
      const double scan = so1n_chamber_scan(R, n, seed);
      rep.constants["bound_n=" + std::to_string(n) + "_rprime=" + fmt(rp)] = closed;
      tr.update(std::abs(closed - scan), {{"n", n}, {"rprime", rp}, {"closed", closed}, {"scan", scan}});
    }
    for (int k = 1; k < 40; ++k) {
      const double R1 = 0.25 * k, R2 = 0.25 * (k + 1);
      if (!(so1n_chamber_bound(R2, n) < so1n_chamber_bound(R1, n))) {
        tr.update(1.0, {{"n", n}, {"monotonicity", {R1, R2}}});
      }
    }
    // nesting along the worst direction
    std::vector<double> axis(static_cast<std::size_t>(n), 0.0);
    axis[0] = 1.0;
    auto member_at = [&](double b, double R) {
      std::vector<double> beta(static_cast<std::size_t>(n / 2), 0.0);
      beta[0] = b;
      for (double t : closed_grid(0.0, so1n_rprime(R, n), 1e-3)) {
        if (!so1n_member(beta, t, axis)) return false;
      }
      return true;
    };
    const std::vector<double> Rs{0.5, 1.0, 2.0, 4.0};
    for (std::size_t i = 0; i + 1 < Rs.size(); ++i) {
      for (int k = 0; k <= 100; ++k) {
        const double b = 0.03 * k;
        if (member_at(b, Rs[i + 1]) && !member_at(b, Rs[i])) {
          tr.update(1.0, {{"n", n}, {"nesting", {Rs[i], Rs[i + 1]}}, {"b", b}});
        }
      }
    }
  }
  tr.store(rep);
  rep.tolerance = 1e-3;
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

Report check_gln(const std::vector<double>& R_values, int n, int trials, std::uint64_t seed) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "crown-gln";
  rep.grid = {{"R_values", R_values}, {"n", n}, {"trials", trials}, {"seed", seed}, {"r_grid_ratio", 1.005}};
  ViolationTracker tr;
  std::vector<double> xs, ys;
  for (double R : R_values) {
    const GlnScan s = gln_radius_scan(R, n, trials, seed);
    rep.constants["r_scan_R=" + fmt(R)] = s.r_scan;
    const Json where = {{"R", rjson(R)}, {"r_scan", s.r_scan}, {"gate_failures", s.gate_failures}};
    tr.update(static_cast<double>(s.gate_failures), where);
    tr.update(s.r_scan >= 0.9 * std::exp(-R) ? 0.0 : 1.0, where);
    xs.push_back(R);
    ys.push_back(std::log(s.r_scan));
  }
  if (xs.size() >= 2) {
    const LineFit fit = least_squares(xs, ys);
    rep.constants["slope"] = fit.slope;
    rep.constants["fitted_c"] = -fit.slope;
    rep.constants["fitted_C"] = std::exp(fit.intercept);
    const double outside = std::max({0.0, -1.15 - fit.slope, fit.slope + 0.85});
    tr.update(outside, {{"slope", fit.slope}, {"band", {-1.15, -0.85}}});
  }
  tr.store(rep);
  rep.tolerance = 0.0;
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

std::string su11_csv(const std::vector<double>& R_values, double final_step) {
  std::ostringstream os;
  os << "R,beta_closed,beta_scan\n";
  for (double R : R_values) os << fmt(R) << ',' << fmt(su11_beta(R)) << ',' << fmt(su11_beta_scan(R, final_step)) << '\n';
  return os.str();
}

std::string so1n_csv(const std::vector<int>& n_values, const std::vector<double>& R_values, std::uint64_t seed) {
  std::ostringstream os;
  os << "n,R,rprime,bound_closed,bound_scan\n";
  for (int n : n_values) {
    for (double R : R_values) {
      os << n << ',' << fmt(R) << ',' << fmt(so1n_rprime(R, n)) << ',' << fmt(so1n_chamber_bound(R, n)) << ','
         << fmt(so1n_chamber_scan(R, n, seed)) << '\n';
    }
  }
  return os.str();
}

std::string gln_csv(const std::vector<double>& R_values, int n, int trials, std::uint64_t seed) {
  std::ostringstream os;
  os << "R,n,r_scan,sufficient_r,gate_failures\n";
  for (double R : R_values) {
    const GlnScan s = gln_radius_scan(R, n, trials, seed);
    os << fmt(R) << ',' << n << ',' << fmt(s.r_scan) << ',' << fmt(std::atanh(std::exp(-R))) << ',' << s.gate_failures
       << '\n';
  }
  return os.str();
}

}  // namespace pwq::crown
