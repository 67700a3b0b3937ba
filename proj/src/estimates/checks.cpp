#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "pwq/error.hpp"
#include "pwq/estimates.hpp"
#include "pwq/specialfn.hpp"

namespace pwq::estimates {

namespace sf = pwq::specialfn;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double linspace(double lo, double hi, int res, int i) {
  return res == 1 ? lo : lo + (hi - lo) * i / (res - 1);
}

Json zjson(cplx z) { return Json::array({z.real(), z.imag()}); }

// |exp(d) - 1| for a log-difference d.
double rel_from_log(cplx d) { return std::abs(std::expm1(d.real()) * std::exp(cplx(0.0, d.imag())) +
                                              (std::exp(cplx(0.0, d.imag())) - 1.0)); }

double dist_to_nonzero_integer(cplx w) {
  double k = std::round(w.real());
  if (k == 0.0) k = w.real() >= 0.0 ? 1.0 : -1.0;
  return std::abs(w - k);
}

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

// Running sup of a log-value, split by n <= n_max/2 and n <= n_max. The sup
// over the upper half n > n_max/2 is kept as well.
struct HalfAndFullSup {
  int n_half;
  double half = kNegInf;
  double full = kNegInf;
  double upper = kNegInf;
  Json witness_full = Json::object();

  template <class Where>
  void add(int n, double log_value, Where&& where) {
    if (n <= n_half) half = std::max(half, log_value);
    else upper = std::max(upper, log_value);
    if (log_value > full) {
      full = log_value;
      witness_full = where();
    }
  }

  // Relative change of the sup when the n-range doubles.
  void store(Report& r, const std::string& name) const {
    const double M_half = std::exp(half);
    const double M = std::exp(full);
    r.worst_violation = std::isfinite(M) && M_half > 0.0 ? (M - M_half) / M_half
                                                         : std::numeric_limits<double>::infinity();
    r.witness = witness_full;
    r.constants[name] = M;
    r.constants[name + "_half_range"] = M_half;
    r.constants[name + "_upper_half_range"] = std::exp(upper);
    r.tolerance = kStabilityTolerance;
  }
};

void require_grid(const GridSpec& g) {
  if (g.resolution < 2) throw Error(ErrorKind::GridPrecondition, "resolution must be at least 2");
  if (g.n_max < g.n_min || g.n_min < 0) throw Error(ErrorKind::GridPrecondition, "bad n range");
  for (double R : g.R_values) {
    if (!(R > 0.0)) throw Error(ErrorKind::GridPrecondition, "R values must be positive");
  }
}

}  // namespace

bool gate_holds(double R, double r, double c) {
  const double l = std::log(R) / R;
  return l * l < c * r;
}

Report check_dual_representation(int n_max, const std::vector<double>& R_values, int resolution,
                                 double half_width) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "dual-representation";
  rep.grid = {{"n_range", {0, n_max}},
              {"R_values", R_values},
              {"region", {{"re", {-half_width, half_width}}, {"im", {-half_width, half_width}}}},
              {"resolution", resolution}};
  ViolationTracker tr;
  long compared = 0;
  for (double R : R_values) {
    for (int a = 0; a < resolution; ++a) {
      for (int b = 0; b < resolution; ++b) {
        const cplx z(linspace(-half_width, half_width, resolution, a),
                     linspace(-half_width, half_width, resolution, b));
        const auto product = sf::log_f_product_row(R, z, n_max);
        for (int n = 0; n <= n_max; ++n) {
          const sf::SincProduct s{n, R};
          // sine form undefined at R z = j, 0 < |j| <= n
          const cplx w = R * z;
          const double k = std::round(w.real());
          if (k != 0.0 && std::abs(k) <= n && std::abs(w - k) < 1e-9) continue;
          const cplx lp = product[static_cast<std::size_t>(n)];
          if (lp.real() < std::log(1e-6)) continue;
          const cplx ls = sf::log_f_sine_form(s, z);
          ++compared;
          tr.update(rel_from_log(ls - lp), {{"n", n}, {"R", R}, {"z", zjson(z)}});
        }
      }
    }
  }
  tr.store(rep);
  rep.tolerance = 1e-8;
  rep.constants["points_compared"] = static_cast<double>(compared);
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

Report check_gamma_representation(int n_max, const std::vector<double>& R_values, int resolution) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "gamma-representation";
  rep.grid = {{"n_range", {1, n_max}}, {"R_values", R_values}, {"interval", "(0, n/R)"}, {"resolution", resolution}};
  ViolationTracker tr;
  long compared = 0;
  for (double R : R_values) {
    for (int n = 1; n <= n_max; ++n) {
      const double hi = n / R;
      for (int i = 1; i <= resolution; ++i) {
        const double x = hi * i / (resolution + 1);
        const cplx lk = sf::EstimateKernel{n, R}.log_eval(x);
        const cplx lg = sf::log_estimate_kernel_gamma_form(n, R, x);
        ++compared;
        tr.update(rel_from_log(lk - lg), {{"n", n}, {"R", R}, {"z", x}});
      }
    }
  }
  tr.store(rep);
  rep.tolerance = 1e-8;
  rep.constants["points_compared"] = static_cast<double>(compared);
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

Report check_reflection_product(int n_max, const std::vector<double>& R_values, int resolution,
                                double half_width) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "reflection-product";
  rep.grid = {{"n_range", {0, n_max}},
              {"R_values", R_values},
              {"region", {{"re", {-half_width, half_width}}, {"im", {-half_width, half_width}}}},
              {"resolution", resolution}};
  ViolationTracker tr;
  long compared = 0;
  for (double R : R_values) {
    for (int a = 0; a < resolution; ++a) {
      for (int b = 0; b < resolution; ++b) {
        const cplx z(linspace(-half_width, half_width, resolution, a),
                     linspace(-half_width, half_width, resolution, b));
        const cplx w = R * z;
        if (std::abs(w - std::round(w.real())) < 1e-3) continue;
        // prod_{j<=n} (j+w)(j-w) * pi w / sin(pi w)
        cplx lhs = std::log(kPi * w) - sf::log_sin_pi(w);
        for (int n = 0; n <= n_max; ++n) {
          if (n > 0) lhs += std::log((static_cast<double>(n) + w) * (static_cast<double>(n) - w));
          const cplx rhs = sf::log_gamma(n + 1.0 - w) + sf::log_gamma(n + 1.0 + w);
          ++compared;
          tr.update(rel_from_log(lhs - rhs), {{"n", n}, {"R", R}, {"z", zjson(z)}});
        }
      }
    }
  }
  tr.store(rep);
  rep.tolerance = 1e-9;
  rep.constants["points_compared"] = static_cast<double>(compared);
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

Report check_separating_line(const std::vector<double>& b_values, int x_resolution) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "separating-line";
  rep.grid = {{"b_values", b_values}, {"interval", {0.0, 1.0}}, {"resolution", x_resolution}};
  for (double b : b_values) {
    if (b < std::exp(2.0) * (1.0 - 1e-15)) {
      throw Error(ErrorKind::Precondition, "separating line needs b >= e^2, got " + std::to_string(b));
    }
  }
  ViolationTracker tr;
  for (double b : b_values) {
    const double lb = std::log(b);
    for (int i = 1; i <= x_resolution; ++i) {
      const double x = static_cast<double>(i) / x_resolution;
      const double lhs = (1.0 + x) * std::log1p(x) - xlogx(x);
      const double rhs = lb * lb / b + b * x * x;
      tr.update(lhs - rhs, {{"b", b}, {"x", x}});
    }
  }
  tr.store(rep);
  rep.tolerance = kExactTolerance;
  rep.constants["points"] = static_cast<double>(b_values.size()) * x_resolution;
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

Report check_phi_lower_bound(int t_resolution) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "phi-lower-bound";
  const double t_max = 1.0 - 1e-6;
  rep.grid = {{"interval", {0.0, t_max}}, {"resolution", t_resolution}};
  ViolationTracker tr;
  for (int i = 0; i < t_resolution; ++i) {
    const double t = linspace(0.0, t_max, t_resolution, i);
    const double phi = (1.0 + t) * std::log1p(t) + (1.0 - t) * std::log1p(-t);
    tr.update(t * t - phi, {{"t", t}});
  }
  tr.store(rep);
  rep.tolerance = kExactTolerance;
  rep.constants["points"] = t_resolution;
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

Report check_HR_bound(const std::vector<double>& R_values, int x_resolution) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "HR-bound";
  rep.grid = {{"R_values", R_values}, {"interval", "(0, 1/R)"}, {"resolution", x_resolution}};
  for (double R : R_values) {
    if (R < std::numbers::e * (1.0 - 1e-15)) {
      throw Error(ErrorKind::Precondition, "H_R bound needs R >= e, got " + std::to_string(R));
    }
  }
  ViolationTracker tr;
  for (double R : R_values) {
    const double lR = std::log(R);
    const double bound = 4.0 * lR * lR / (R * R);
    for (int i = 1; i <= x_resolution; ++i) {
      const double x = i / (R * (x_resolution + 1));
      const double Rx = R * x;
      const double H = (1.0 + x) * std::log1p(x) - xlogx(x) - (1.0 + Rx) * std::log1p(Rx) -
                       (1.0 - Rx) * std::log1p(-Rx);
      tr.update(H - bound, {{"R", R}, {"x", x}});
    }
  }
  tr.store(rep);
  rep.tolerance = kExactTolerance;
  rep.constants["points"] = static_cast<double>(R_values.size()) * x_resolution;
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

Report check_gamma_ab_bounds(int a_doubled_max, int max_degree, int resolution, double half_width) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "gamma-ab-bounds";
  rep.grid = {{"a_values", {0.5, a_doubled_max / 2.0}},
              {"degrees", {0, max_degree}},
              {"region", {{"re", {-half_width, half_width}}, {"im", {-half_width, half_width}}}},
              {"resolution", resolution}};
  ViolationTracker tr;
  long points = 0;
  for (int ad = 1; ad <= a_doubled_max; ++ad) {
    const HalfInt a = HalfInt::from_doubled(ad);
    for (int deg = 0; deg <= max_degree; ++deg) {
      const sf::GammaRatioPoly G(a, a + HalfInt::from_int(deg));
      const double scale = a.value() >= 1.0 ? 1.0 : G.b().value() / a.value();
      for (int i = 0; i < resolution; ++i) {
        for (int j = 0; j < resolution; ++j) {
          const cplx z(linspace(-half_width, half_width, resolution, i),
                       linspace(-half_width, half_width, resolution, j));
          const double x = std::abs(z);
          const double g = std::abs(G(z));
          const double gx = G(cplx(x, 0.0)).real();
          const double q = scale * sf::q_eval(deg, x);
          const Json where = {{"a", a.value()}, {"degree", deg}, {"z", zjson(z)}};
          ++points;
          tr.update((g - gx) / std::max(1.0, gx), where);
          tr.update((gx - q) / std::max(1.0, q), where);
          if (z.real() >= 0.0) tr.update(1.0 - g, where);
        }
      }
    }
  }
  tr.store(rep);
  rep.tolerance = kExactTolerance;
  rep.constants["points"] = static_cast<double>(points);
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

Report check_largelambda(const GridSpec& g) {
  Stopwatch sw;
  require_grid(g);
  for (double R : g.R_values) {
    if (!(R > 3.0)) throw Error(ErrorKind::GridPrecondition, "largelambda needs R > 3, got " + std::to_string(R));
  }
  Report rep;
  rep.check_id = "large-lambda-bound";
  rep.grid = g.to_json();
  HalfAndFullSup sup{g.n_max / 2};
  for (double R : g.R_values) {
    // F~ is even and real on the real axis, so the first quadrant suffices.
    for (int a = 0; a < g.resolution; ++a) {
      for (int b = 0; b < g.resolution; ++b) {
        const cplx z(linspace(g.re_min, g.re_max, g.resolution, a), linspace(g.im_min, g.im_max, g.resolution, b));
        const double az = std::abs(z);
        const int n_top = std::min(g.n_max, static_cast<int>(std::floor(R * az + 1e-12)));
        if (n_top < g.n_min) continue;
        const auto row = sf::log_f_row(R, z, n_top);
        double lq = 0.0;
        for (int n = 0; n <= n_top; ++n) {
          if (n > 0) lq += std::log1p(az / n);
          if (n < g.n_min) continue;
          const double v = row[static_cast<std::size_t>(n)].real() + lq - kPi * R * std::abs(z.imag());
          sup.add(n, v, [&] { return Json{{"n", n}, {"R", R}, {"z", zjson(z)}}; });
        }
      }
    }
    // the circle |z| = n/R, where the constraint is active
    for (int n = std::max(g.n_min, 1); n <= g.n_max; ++n) {
      for (int k = 0; k < g.resolution; ++k) {
        const double th = 0.5 * kPi * k / (g.resolution - 1);
        const cplx z = std::polar(n / R, th);
        const double v = sf::EstimateKernel{n, R}.log_eval(z).real() - kPi * R * std::abs(z.imag());
        sup.add(n, v, [&] { return Json{{"n", n}, {"R", R}, {"z", zjson(z)}}; });
      }
    }
  }
  sup.store(rep, "C");
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

Report check_smalllambda(double r, const GridSpec& g) {
  Stopwatch sw;
  require_grid(g);
  for (double R : g.R_values) {
    if (!(R > std::numbers::e) || !gate_holds(R, r)) {
      throw Error(ErrorKind::Precondition,
                  "small-lambda estimate needs R > e and (log R)^2/R^2 < 0.2 r; got R = " + std::to_string(R) +
                      ", r = " + std::to_string(r));
    }
  }
  Report rep;
  rep.check_id = "small-lambda-bound";
  rep.grid = g.to_json();
  rep.grid["interval"] = "[0, n/R]";
  rep.grid["r"] = r;
  HalfAndFullSup sup{g.n_max / 2};
  for (double R : g.R_values) {
    for (int n = g.n_min; n <= g.n_max; ++n) {
      const sf::EstimateKernel K{n, R};
      for (int i = 0; i < g.resolution; ++i) {
        const double x = linspace(0.0, n / R, g.resolution, i);
        const double v = K.log_eval(x).real() - r * n;
        sup.add(n, v, [&] { return Json{{"n", n}, {"R", R}, {"z", x}}; });
      }
    }
  }
  sup.store(rep, "C");
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

Report check_prop_basic(double r, double R, int k, const GridSpec& g) {
  Stopwatch sw;
  require_grid(g);
  if (!(R > kR0) || !gate_holds(R, r)) {
    throw Error(ErrorKind::Precondition, "basic estimate needs R > 3 and (log R)^2/R^2 < 0.2 r; got R = " +
                                             std::to_string(R) + ", r = " + std::to_string(r));
  }
  if (k < 1) throw Error(ErrorKind::Precondition, "power k must be positive");
  Report rep;
  rep.check_id = "basic-estimate";
  rep.grid = g.to_json();
  rep.grid["R_values"] = {R};
  rep.grid["r"] = r;
  rep.grid["k"] = k;
  HalfAndFullSup sup{g.n_max / 2};
  for (int a = 0; a < g.resolution; ++a) {
    for (int b = 0; b < g.resolution; ++b) {
      const cplx z(linspace(g.re_min, g.re_max, g.resolution, a), linspace(g.im_min, g.im_max, g.resolution, b));
      const double az = std::abs(z);
      const auto row = sf::log_f_row(R, z, g.n_max);
      double lq = 0.0;
      for (int n = 0; n <= g.n_max; ++n) {
        if (n > 0) lq += std::log1p(az / n);
        if (n < g.n_min) continue;
        const double v = row[static_cast<std::size_t>(n)].real() + lq - r * n - kPi * R * std::abs(z.imag());
        sup.add(n, v, [&] { return Json{{"n", n}, {"z", zjson(z)}}; });
      }
    }
  }
  sup.store(rep, "C_r");
  // |F~|^k <= (C_r e^{rn} e^{pi R|Im z|})^k follows from k = 1
  rep.constants["C_r_pow_k"] = std::pow(rep.constants["C_r"], k);
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

double inf_f_at(cplx z0, double R) {
  if (!(R > 0.0)) throw Error(ErrorKind::Precondition, "R must be positive");
  if (dist_to_nonzero_integer(R * z0) < 1e-9) {
    throw Error(ErrorKind::ForbiddenParameter, "R z0 is a nonzero integer");
  }
  const double az = std::abs(z0);
  const int N = static_cast<int>(std::ceil(R * az));
  const auto row = sf::log_f_row(R, z0, std::max(N - 1, 0));
  double best = std::exp(sf::log_f_eval(sf::SincProduct{N, R}, az).real());
  for (int n = 0; n < N; ++n) best = std::min(best, std::exp(row[static_cast<std::size_t>(n)].real()));
  return best;
}

double inf_f_brute_force(cplx z0, double R, int n_max) {
  double best = std::numeric_limits<double>::infinity();
  for (int n = 0; n <= n_max; ++n) best = std::min(best, std::abs(sf::f_eval(sf::SincProduct{n, R}, z0)));
  return best;
}

Report check_normalization(std::uint64_t seed, int cases) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "inf-f-normalization";
  rep.grid = {{"seed", seed}, {"cases", cases}, {"z0_range", {-3.0, 3.0}}, {"R_range", {0.5, 10.0}},
              {"brute_force_n_max", 1000}};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> zd(-3.0, 3.0);
  std::uniform_real_distribution<double> Rd(0.5, 10.0);
  ViolationTracker tr;
  double smallest = std::numeric_limits<double>::infinity();
  double max_rel = 0.0;
  int made = 0;
  while (made < cases) {
    const double z0 = zd(rng);
    const double R = Rd(rng);
    if (dist_to_nonzero_integer(R * z0) < 1e-3) continue;
    const double v = inf_f_at(z0, R);
    const double brute = inf_f_brute_force(z0, R);
    smallest = std::min(smallest, v);
    max_rel = std::max(max_rel, std::abs(v - brute) / brute);
    tr.update(std::abs(v - brute), {{"z0", z0}, {"R", R}, {"inf_f_at", v}, {"brute_force", brute}});
    ++made;
  }
  // fixed example and a complex point, where the formula is only a lower bound
  const double ex = inf_f_at(0.5, 1.0);
  tr.update(std::abs(ex - 2.0 / kPi), {{"z0", 0.5}, {"R", 1.0}, {"inf_f_at", ex}, {"expected", 2.0 / kPi}});
  const cplx zc(0.3, 0.4);
  const double vc = inf_f_at(zc, 2.0);
  const double bc = inf_f_brute_force(zc, 2.0);
  tr.update(vc - bc, {{"z0", zjson(zc)}, {"R", 2.0}, {"inf_f_at", vc}, {"brute_force", bc}});
  tr.update(-vc, {{"z0", zjson(zc)}, {"R", 2.0}, {"inf_f_at", vc}});
  tr.store(rep);
  rep.tolerance = kExactTolerance;
  rep.constants["min_inf_f"] = smallest;
  rep.constants["max_relative_difference"] = max_rel;
  rep.constants["complex_lower_bound"] = vc;
  rep.constants["complex_brute_force"] = bc;
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

Report check_scaling_band(double A, double B, double a, int resolution) {
  Stopwatch sw;
  if (!(A > 0.0) || !(a > 0.0)) throw Error(ErrorKind::Precondition, "scaling needs A > 0 and a > 0");
  if (resolution < 2) throw Error(ErrorKind::GridPrecondition, "resolution must be at least 2");
  Report rep;
  rep.check_id = "scaling-band";
  // R and AR + B both beyond e, where log x / x is decreasing and positive
  const double C0 = std::max({std::numbers::e, (std::numbers::e - B) / A, 1.0}) * (1.0 + 1e-9);
  rep.grid = {{"A", A}, {"B", B}, {"a", a}, {"R_range", {C0, 1e6}}, {"resolution", resolution}, {"spacing", "log"}};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  Json lo_at;
  const double l0 = std::log(C0);
  const double l1 = std::log(1e6);
  for (int i = 0; i < resolution; ++i) {
    const double R = std::exp(linspace(l0, l1, resolution, i));
    const double S = A * R + B;
    const double ratio = (std::log(S) / S) / (std::log(R) / R);
    if (ratio < lo) {
      lo = ratio;
      lo_at = {{"R", R}, {"ratio", ratio}};
    }
    hi = std::max(hi, ratio);
  }
  rep.worst_violation = -lo;
  rep.witness = lo_at;
  rep.tolerance = 0.0;
  rep.constants["C0"] = C0;
  rep.constants["C1"] = lo;
  rep.constants["C2"] = hi;
  // (log S)^2/S^2 < d s implies (log R)^2/R^2 < c r for d = c a / C2^2
  rep.constants["d_over_c"] = a / (hi * hi);
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

}  // namespace pwq::estimates
