#include <algorithm>
#include <cmath>
#include <numbers>

#include "pwq/error.hpp"
#include "pwq/rankone.hpp"

namespace pwq::rankone {

namespace sf = pwq::specialfn;

namespace {

double dist_to_nonzero_integer(cplx w) {
  double k = std::round(w.real());
  if (k == 0.0) k = w.real() >= 0.0 ? 1.0 : -1.0;
  return std::abs(w - k);
}

KTypeTable table_or_default(const RankOneParams& p, KTypeTable t) {
  if (t) return t;
  return [p](int index) { return default_ktype(p, index); };
}

}  // namespace

void RankOneParams::validate() const {
  if (m_alpha < 1) throw Error(ErrorKind::Precondition, name + ": m_alpha must be positive");
  if (m_2alpha < 0) throw Error(ErrorKind::Precondition, name + ": m_2alpha must be non-negative");
  if (m < 1) throw Error(ErrorKind::Precondition, name + ": m must be positive");
  if (m_2alpha > 0) {
    if (m_alpha % 2 != 0) throw Error(ErrorKind::Precondition, name + ": m_alpha must be even when m_2alpha > 0");
    if (m_alpha / 2 + m_2alpha < 2) throw Error(ErrorKind::Precondition, name + ": d = m_alpha/2 + m_2alpha < 2");
  }
}

RankOneParams make_params(std::string name, int m_alpha, int m_2alpha) {
  RankOneParams p{std::move(name), m_alpha, m_2alpha, 1, static_cast<double>(m_alpha + 2 * m_2alpha)};
  p.validate();
  p.m = minimal_m(m_alpha, m_2alpha);
  return p;
}

RankOneParams preset_sl2() { return make_params("sl2", 1, 0); }

RankOneParams preset_so1n(int n) {
  if (n < 2) throw Error(ErrorKind::Precondition, "so(1,n) needs n >= 2");
  return make_params("so(1," + std::to_string(n) + ")", n - 1, 0);
}

RankOneParams preset_su_n1(int n) {
  if (n < 2) throw Error(ErrorKind::Precondition, "su(n,1) needs n >= 2");
  return make_params("su(" + std::to_string(n) + ",1)", 2 * (n - 1), 1);
}

RankOneParams preset_sp_n1(int n) {
  if (n < 2) throw Error(ErrorKind::Precondition, "sp(n,1) needs n >= 2");
  return make_params("sp(" + std::to_string(n) + ",1)", 4 * (n - 1), 3);
}

RankOneParams preset_f4() { return make_params("f4(-20)", 8, 7); }

std::vector<RankOneParams> all_presets() {
  return {preset_sl2(),   preset_so1n(2),  preset_so1n(3),  preset_so1n(4),  preset_so1n(6),
          preset_su_n1(2), preset_su_n1(3), preset_sp_n1(2), preset_sp_n1(3), preset_f4()};
}

int KTypeData::ceil_norm() const { return static_cast<int>(std::ceil(tau_norm - 1e-12)); }

KTypeData default_ktype(const RankOneParams& p, int index) {
  const int s = std::abs(index);
  return {static_cast<double>(s), p.m_2alpha == 0 ? 0 : s, s};
}

std::vector<sf::GammaRatioPoly> q_tilde_factors(const RankOneParams& p, const KTypeData& k) {
  if (k.r < 0 || k.r > k.s) throw Error(ErrorKind::Precondition, "K-type needs 0 <= r <= s");
  if (p.m_2alpha == 0) {
    const HalfInt a = HalfInt::from_doubled(p.m_alpha);
    return {sf::GammaRatioPoly(a, a + HalfInt::from_int(k.s))};
  }
  if ((k.s - k.r) % 2 != 0) {
    throw Error(ErrorKind::InconsistentParity,
                "r = " + std::to_string(k.r) + " and s = " + std::to_string(k.s) + " differ in parity");
  }
  const int d = p.m_alpha / 2 + p.m_2alpha;
  return {sf::GammaRatioPoly(HalfInt::from_doubled(d), HalfInt::from_doubled(k.s + k.r + d)),
          sf::GammaRatioPoly(HalfInt::from_doubled(d + 1 - p.m_2alpha),
                             HalfInt::from_doubled(k.s - k.r + d + 1 - p.m_2alpha))};
}

sf::FactoredPoly q_tilde_poly(const RankOneParams& p, const KTypeData& k) {
  sf::FactoredPoly out;
  for (const auto& g : q_tilde_factors(p, k)) out = out * sf::FactoredPoly::from(g);
  return out;
}

int minimal_m(int m_alpha, int m_2alpha, int s_max) {
  RankOneParams p{"probe", m_alpha, m_2alpha, 1, static_cast<double>(m_alpha + 2 * m_2alpha)};
  p.validate();
  for (int m = 1;; ++m) {
    bool ok = true;
    for (int s = 1; s <= s_max && ok; ++s) {
      const auto e = sf::e_tau_build(m * s);
      for (int r = 0; r <= s && ok; ++r) {
        if (m_2alpha == 0 && r > 0) break;
        if (m_2alpha > 0 && (s - r) % 2 != 0) continue;
        ok = sf::factored_divides(q_tilde_poly(p, {static_cast<double>(s), r, s}), e);
      }
    }
    if (ok) return m;
  }
}

cplx coroot_pairing(const RankOneParams& p, cplx z) { return p.m_2alpha == 0 ? 2.0 * z : 4.0 * z; }

bool kostant_ok(const std::vector<cplx>& coroot_pairings) {
  return std::all_of(coroot_pairings.begin(), coroot_pairings.end(),
                     [](cplx c) { return (cplx(0.0, 1.0) * c).real() >= -1e-12; });
}

cplx q_tilde_eval(const RankOneParams& p, const KTypeData& k, cplx z) {
  const cplx x = cplx(0.0, 1.0) * z;
  cplx out = 1.0;
  for (const auto& g : q_tilde_factors(p, k)) out *= g(x);
  return out;
}

cplx j_scalar(const RankOneParams& p, const KTypeData& k, cplx z) {
  const cplx den = q_tilde_eval(p, k, z);
  if (std::abs(den) <= 1e-12) {
    const cplx x = cplx(0.0, 1.0) * z;
    const auto poly = q_tilde_poly(p, k);
    HalfInt nearest;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [root, mult] : poly.roots()) {
      if (std::abs(x - root.value()) < best) {
        best = std::abs(x - root.value());
        nearest = root;
      }
    }
    throw Error(ErrorKind::Pole, "Q~ vanishes at i z = " + nearest.to_string());
  }
  return q_tilde_eval(p, k, -z) / den;
}

cplx sl2_q_tilde_closed(int n, cplx lambda_R) {
  const cplx il = cplx(0.0, 1.0) * lambda_R;
  cplx out = 1.0;
  for (int j = 1; j <= std::abs(n); ++j) out *= (2.0 * j - 1.0 + il) / (2.0 * j - 1.0);
  return out;
}

cplx sl2_j_closed(int n, cplx lambda_R) {
  const cplx il = cplx(0.0, 1.0) * lambda_R;
  cplx out = 1.0;
  for (int j = 1; j <= std::abs(n); ++j) out *= (2.0 * j - 1.0 - il) / (2.0 * j - 1.0 + il);
  return out;
}

AnalyticVector AnalyticVector::exponential(double decay, int truncation) {
  AnalyticVector v;
  v.decay = decay;
  v.truncation = truncation;
  for (int n = -truncation; n <= truncation; ++n) v.coeffs[n] = std::exp(-decay * std::abs(n));
  return v;
}

Json AnalyticVector::to_json() const {
  Json j;
  j["decay"] = decay;
  j["truncation"] = truncation;
  Json c = Json::array();
  for (const auto& [n, v] : coeffs) c.push_back({n, v.real(), v.imag()});
  j["coeffs"] = c;
  return j;
}

AnalyticVector AnalyticVector::from_json(const Json& j) {
  AnalyticVector v;
  try {
    v.decay = j.at("decay").get<double>();
    v.truncation = j.at("truncation").get<int>();
    for (const auto& e : j.at("coeffs")) {
      const int n = e.at(0).get<int>();
      if (std::abs(n) > v.truncation) throw Error(ErrorKind::MalformedConfig, "coefficient beyond truncation");
      v.coeffs[n] = cplx(e.at(1).get<double>(), e.at(2).get<double>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedConfig, std::string("analytic vector: ") + e.what());
  }
  if (!(v.decay > 0.0)) throw Error(ErrorKind::MalformedConfig, "analytic vector decay must be positive");
  return v;
}

double perturb_R(double R, const std::vector<cplx>& coords) {
  for (long k = 0; k <= 1000000; ++k) {
    const double Rp = R - 1e-6 * static_cast<double>(k);
    if (!(Rp > 0.0)) break;
    const bool clear = std::all_of(coords.begin(), coords.end(),
                                   [Rp](cplx c) { return dist_to_nonzero_integer(Rp * c) >= 1e-6; });
    if (clear) return Rp;
  }
  throw Error(ErrorKind::ForbiddenR, "no admissible R below " + std::to_string(R));
}

Ansatz1Interpolant::Ansatz1Interpolant(RankOneParams p, AnalyticVector v, cplx z0, double R, KTypeTable table)
    : p_(std::move(p)), v_(std::move(v)), z0_(z0), R_requested_(R), table_(table_or_default(p_, std::move(table))) {
  p_.validate();
  if (!kostant_ok({coroot_pairing(p_, z0_)})) {
    throw Error(ErrorKind::Kostant, "lambda0 violates Re(i lambda0(alpha^vee)) >= 0");
  }
  R_ = perturb_R(R, {z0_});
  std::string poles;
  for (const auto& [tau, coeff] : v_.coeffs) {
    const KTypeData k = table_(tau);
    const cplx q0 = q_tilde_eval(p_, k, z0_);
    if (std::abs(q0) <= 1e-12) poles += (poles.empty() ? "" : ", ") + std::to_string(tau);
    q0_[tau] = q0;
    const int M = p_.m * k.ceil_norm();
    if (!log_f0_.count(M)) log_f0_[M] = sf::log_f_eval(sf::SincProduct{M, R_}, z0_);
  }
  if (!poles.empty()) throw Error(ErrorKind::Pole, "Q~_tau(lambda0) = 0 for tau in {" + poles + "}");
}

cplx Ansatz1Interpolant::coefficient(int tau, cplx z) const {
  const auto it = v_.coeffs.find(tau);
  if (it == v_.coeffs.end()) return 0.0;
  const KTypeData k = table_(tau);
  const int M = p_.m * k.ceil_norm();
  const cplx lf = sf::log_f_eval(sf::SincProduct{M, R_}, z);
  const cplx phi = lf.real() == -std::numeric_limits<double>::infinity()
                       ? cplx(0.0)
                       : std::exp(static_cast<double>(kappa()) * (lf - log_f0_.at(M)));
  return phi * q_tilde_eval(p_, k, z) / q0_.at(tau) * it->second;
}

std::map<int, cplx> Ansatz1Interpolant::operator()(cplx z) const {
  std::map<int, cplx> out;
  // one f evaluation per distinct M
  std::map<int, cplx> phi;
  for (const auto& [tau, coeff] : v_.coeffs) {
    const KTypeData k = table_(tau);
    const int M = p_.m * k.ceil_norm();
    auto pit = phi.find(M);
    if (pit == phi.end()) {
      const cplx lf = sf::log_f_eval(sf::SincProduct{M, R_}, z);
      const cplx val = lf.real() == -std::numeric_limits<double>::infinity()
                           ? cplx(0.0)
                           : std::exp(static_cast<double>(kappa()) * (lf - log_f0_.at(M)));
      pit = phi.emplace(M, val).first;
    }
    out[tau] = pit->second * q_tilde_eval(p_, k, z) / q0_.at(tau) * coeff;
  }
  return out;
}

Report check_intertwining(const Ansatz1Interpolant& F, const std::vector<cplx>& grid) {
  Stopwatch sw;
  Report rep;
  rep.check_id = "intertwining-relation";
  rep.grid = {{"points", grid.size()}, {"R", F.R()}, {"truncation", F.vector().truncation}};
  const auto& p = F.params();
  for (const auto& [tau, coeff] : F.vector().coeffs) {
    const auto poly = q_tilde_poly(p, F.ktype(tau));
    for (cplx z : grid) {
      if (poly.distance_to_roots(cplx(0.0, 1.0) * z) < 1e-6) {
        throw Error(ErrorKind::GridPrecondition, "grid point within 1e-6 of a zero of Q~");
      }
    }
  }
  ViolationTracker tr;
  for (cplx z : grid) {
    const auto Fz = F(z);
    const auto Fm = F(-z);
    for (const auto& [tau, val] : Fz) {
      const cplx J = j_scalar(p, F.ktype(tau), z);
      const double res = std::abs(J * val - Fm.at(tau)) / (1.0 + std::abs(val));
      tr.update(res, {{"tau", tau}, {"z", {z.real(), z.imag()}}});
    }
  }
  tr.store(rep);
  rep.tolerance = 1e-8;
  rep.runtime_ms = sw.elapsed_ms();
  rep.finalize();
  return rep;
}

double pw_bound_estimate(const std::function<std::map<int, cplx>(cplx)>& F, double rate, int N, int k,
                         const std::vector<cplx>& grid) {
  double best = 0.0;
  for (cplx z : grid) {
    double pk = 0.0;
    for (const auto& [tau, val] : F(z)) pk += std::pow(1.0 + std::abs(tau), k) * std::abs(val);
    best = std::max(best, pk * std::pow(1.0 + std::abs(z), N) * std::exp(-rate * std::abs(z.imag())));
  }
  return best;
}

std::vector<cplx> rect_grid(double re_min, double re_max, double im_min, double im_max, int resolution) {
  std::vector<cplx> g;
  g.reserve(static_cast<std::size_t>(resolution) * resolution);
  for (int a = 0; a < resolution; ++a) {
    for (int b = 0; b < resolution; ++b) {
      g.emplace_back(re_min + (re_max - re_min) * a / (resolution - 1),
                     im_min + (im_max - im_min) * b / (resolution - 1));
    }
  }
  return g;
}

}  // namespace pwq::rankone
