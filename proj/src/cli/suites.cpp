#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pwq/ansatz2.hpp"
#include "pwq/cli.hpp"
#include "pwq/crown.hpp"
#include "pwq/error.hpp"
#include "pwq/estimates.hpp"
#include "pwq/rankone.hpp"
#include "pwq/weyl.hpp"

namespace pwq::cli {

namespace {

using cplx = std::complex<double>;

template <class T>
T get(const Json& p, const char* key) {
  try {
    return p.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedConfig, std::string("parameter '") + key + "': " + e.what());
  }
}

cplx get_cplx(const Json& p, const char* key) {
  const auto v = get<std::vector<double>>(p, key);
  if (v.size() != 2) throw Error(ErrorKind::MalformedConfig, std::string("parameter '") + key + "' must be [re, im]");
  return {v[0], v[1]};
}

std::vector<cplx> get_cplx_list(const Json& p, const char* key) {
  const auto v = get<std::vector<std::vector<double>>>(p, key);
  std::vector<cplx> out;
  for (const auto& c : v) {
    if (c.size() != 2) throw Error(ErrorKind::MalformedConfig, std::string("entries of '") + key + "' must be [re, im]");
    out.emplace_back(c[0], c[1]);
  }
  return out;
}

SuiteOutput one(Report r) {
  SuiteOutput o;
  o.reports.push_back(std::move(r));
  return o;
}

GridSpec spec_from(const Json& p, double re_min, double re_max, double im_min, double im_max) {
  GridSpec g;
  g.re_min = re_min;
  g.re_max = re_max;
  g.im_min = im_min;
  g.im_max = im_max;
  g.resolution = get<int>(p, "resolution");
  g.n_min = 0;
  g.n_max = get<int>(p, "n_max");
  g.R_values = get<std::vector<double>>(p, "R_values");
  return g;
}

ansatz2::CoordinateGrid coord_grid(const Json& g) {
  ansatz2::CoordinateGrid c;
  const auto re = get<std::vector<double>>(g, "re");
  const auto im = get<std::vector<double>>(g, "im");
  if (re.size() != 2 || im.size() != 2) throw Error(ErrorKind::MalformedConfig, "grid ranges must be [min, max]");
  c.re_min = re[0];
  c.re_max = re[1];
  c.im_min = im[0];
  c.im_max = im[1];
  c.resolution = get<int>(g, "resolution");
  return c;
}

// |u(z0)_tau - v_tau|, the intertwining residual on a shifted grid, |J| = 1 on
// the real axis and agreement with the closed forms.
SuiteOutput rank1_sl2(const Json& p) {
  const auto v = rankone::AnalyticVector::exponential(get<double>(p, "decay"), get<int>(p, "truncation"));
  const cplx z0 = get_cplx(p, "z0");
  const rankone::Ansatz1Interpolant F(rankone::preset_sl2(), v, z0, get<double>(p, "R"));
  SuiteOutput o;

  {
    Stopwatch sw;
    Report rep;
    rep.check_id = "rank1-interpolation";
    rep.grid = {{"z0", {z0.real(), z0.imag()}}, {"truncation", v.truncation}, {"decay", v.decay}, {"R", F.R()}};
    ViolationTracker tr;
    const auto u = F(z0);
    for (const auto& [tau, c] : v.coeffs) tr.update(std::abs(u.at(tau) - c), {{"tau", tau}});
    tr.store(rep);
    rep.tolerance = 1e-12;
    rep.runtime_ms = sw.elapsed_ms();
    rep.finalize();
    o.reports.push_back(rep);
  }

  const auto re = get<std::vector<double>>(p, "re");
  const auto im = get<std::vector<double>>(p, "im");
  const int res = get<int>(p, "resolution");
  o.reports.push_back(rankone::check_intertwining(F, rankone::rect_grid(re.at(0), re.at(1), im.at(0), im.at(1), res)));

  {
    Stopwatch sw;
    Report rep;
    rep.check_id = "rank1-unitarity";
    const int pts = get<int>(p, "unitarity_points");
    rep.grid = {{"interval", {re.at(0), re.at(1)}}, {"points", pts}, {"tau_max", v.truncation}};
    ViolationTracker tr;
    const auto sl2 = rankone::preset_sl2();
    for (int tau = 0; tau <= v.truncation; ++tau) {
      const auto k = rankone::default_ktype(sl2, tau);
      for (int i = 0; i < pts; ++i) {
        const double x = re[0] + (re[1] - re[0]) * i / (pts - 1);
        const cplx j = rankone::j_scalar(sl2, k, x);
        const double dev = std::abs(std::abs(j) - 1.0);
        if (!(dev <= tr.worst())) tr.update(dev, {{"tau", tau}, {"z", x}});
      }
    }
    tr.store(rep);
    rep.tolerance = 1e-10;
    rep.runtime_ms = sw.elapsed_ms();
    rep.finalize();
    o.reports.push_back(rep);
  }

  {
    Stopwatch sw;
    Report rep;
    rep.check_id = "rank1-closed-forms";
    rep.grid = {{"re", re}, {"im", im}, {"resolution", 21}, {"tau_max", v.truncation}};
    ViolationTracker tr;
    const auto sl2 = rankone::preset_sl2();
    for (cplx z : rankone::rect_grid(re.at(0), re.at(1), im.at(0), im.at(1), 21)) {
      const cplx lr = rankone::sl2_lambda_R_from_z(z);
      for (int tau = 0; tau <= v.truncation; ++tau) {
        const auto k = rankone::default_ktype(sl2, tau);
        const cplx q = rankone::q_tilde_eval(sl2, k, z);
        const cplx qc = rankone::sl2_q_tilde_closed(tau, lr);
        const cplx j = rankone::j_scalar(sl2, k, z);
        const cplx jc = rankone::sl2_j_closed(tau, lr);
        const double dev = std::max(std::abs(q - qc) / std::max(1.0, std::abs(qc)), std::abs(j - jc) / std::max(1.0, std::abs(jc)));
        if (!(dev <= tr.worst())) tr.update(dev, {{"tau", tau}, {"z", {z.real(), z.imag()}}});
      }
    }
    tr.store(rep);
    rep.tolerance = 1e-10;
    rep.runtime_ms = sw.elapsed_ms();
    rep.finalize();
    o.reports.push_back(rep);
  }
  return o;
}

SuiteOutput pole_cancellation_all(const Json& p) {
  const int tau_max = get<int>(p, "tau_max");
  Report out;
  bool first = true;
  double cases = 0.0;
  for (const auto& preset : rankone::all_presets()) {
    Report r = ansatz2::pole_cancellation_check(ansatz2::make_product_model({preset}), tau_max);
    cases += r.constants["cases"];
    r.constants.erase("cases");
    r.constants["m_" + preset.name] = preset.m;
    r.constants.erase("m");
    out = first ? r : merge(out, r);
    first = false;
  }
  Json names = Json::array();
  for (const auto& preset : rankone::all_presets()) names.push_back(preset.name);
  out.grid = {{"presets", names}, {"tau_max", tau_max}, {"ktypes", "all admissible (r, s) with 1 <= s <= tau_max"}};
  out.constants["cases"] = cases;
  out.finalize();
  return one(out);
}

SuiteOutput ansatz2_a1xa1(const Json& p) {
  const auto model = ansatz2::make_product_model({rankone::preset_sl2(), rankone::preset_sl2()});
  const auto l0 = get_cplx_list(p, "lambda0");
  const ansatz2::SymmetrizedInterpolant si(model, ansatz2::SpectralParameter(l0.begin(), l0.end()), get<double>(p, "R"));
  const int tau_max = get<int>(p, "tau_max");
  const int inv_tau = get<int>(p, "invariance_tau_max");
  const auto inv_grid = ansatz2::product_grid(model.rank(), coord_grid(p.at("invariance_grid")));
  SuiteOutput o;
  o.reports.push_back(ansatz2::check_interpolation(si, tau_max));
  o.reports.push_back(ansatz2::check_w_invariance(si, inv_tau, inv_grid));
  o.reports.push_back(ansatz2::check_cocycle(model, inv_tau, inv_grid));
  std::vector<ansatz2::ScanRow> rows;
  o.reports.push_back(ansatz2::estimate_condition_iii(si, tau_max, get<double>(p, "r"), coord_grid(p.at("scan_grid")), &rows));
  std::ostringstream csv;
  csv.precision(12);
  csv << "tau_1,tau_2,tau_norm,log_sup\n";
  for (const auto& r : rows) csv << r.tau[0] << ',' << r.tau[1] << ',' << r.tau_norm << ',' << r.log_sup << '\n';
  o.csv["ansatz2-condition-iii.csv"] = csv.str();
  return o;
}

const Json kEstimatesAllDefaults = Json::object();

std::vector<Suite> build_registry();

}  // namespace

const std::vector<Suite>& registry() {
  static const std::vector<Suite> r = build_registry();
  return r;
}

namespace {

const std::vector<std::string> kEstimatesAll{"large-lambda-bound", "small-lambda-bound", "separating-line",
                                              "ineq-phi",          "ineq-HR",           "basic-estimate",
                                              "inf-f-normalization", "scaling-band"};

std::vector<Suite> build_registry() {
  const double e = std::numbers::e;
  std::vector<Suite> s;
  s.push_back({"sinc-dual-representation",
               "sine-quotient and infinite-product forms of f_{n,R} agree",
               {{"n_max", 50}, {"R_values", {1.0, 3.0, 10.0}}, {"resolution", 41}, {"half_width", 5.0}},
               [](const Json& p, std::uint64_t) {
                 return one(estimates::check_dual_representation(get<int>(p, "n_max"), get<std::vector<double>>(p, "R_values"),
                                                                 get<int>(p, "resolution"), get<double>(p, "half_width")));
               }});
  s.push_back({"gamma-identities",
               "Gamma-function form of F~_{n,R} and the reflection product for f_{n,R}",
               {{"n_max", 50}, {"R_values", {1.0, 3.0, 10.0}}, {"resolution_real", 201}, {"resolution_complex", 41},
                {"half_width", 3.0}},
               [](const Json& p, std::uint64_t) {
                 SuiteOutput o;
                 const auto Rs = get<std::vector<double>>(p, "R_values");
                 o.reports.push_back(estimates::check_gamma_representation(get<int>(p, "n_max"), Rs, get<int>(p, "resolution_real")));
                 o.reports.push_back(estimates::check_reflection_product(get<int>(p, "n_max"), Rs, get<int>(p, "resolution_complex"),
                                                                         get<double>(p, "half_width")));
                 return o;
               }});
  s.push_back({"large-lambda-bound",
               "sup of |F~_{n,R}| e^{-pi R |Im z|} over |z| >= n/R is bounded uniformly in n",
               {{"re_max", 60.0}, {"im_max", 4.0}, {"resolution", 81}, {"n_max", 200}, {"R_values", {4.0, 10.0, 30.0}}},
               [](const Json& p, std::uint64_t) {
                 return one(estimates::check_largelambda(spec_from(p, 0.0, get<double>(p, "re_max"), 0.0, get<double>(p, "im_max"))));
               }});
  s.push_back({"small-lambda-bound",
               "sup of |F~_{n,R}| e^{-r n} over [0, n/R] is bounded under the gate",
               {{"r", 0.5}, {"resolution", 41}, {"n_max", 200}, {"R_values", {10.0, 20.0}}},
               [](const Json& p, std::uint64_t) {
                 return one(estimates::check_smalllambda(get<double>(p, "r"), spec_from(p, 0.0, 0.0, 0.0, 0.0)));
               }});
  s.push_back({"separating-line",
               "(1+x) log(1+x) - x log x <= (log b)^2 / b + b x^2 on [0, 1] for b >= e^2",
               {{"b_values", {e * e, 20.0, 100.0, 1e4}}, {"resolution", 10000}},
               [](const Json& p, std::uint64_t) {
                 return one(estimates::check_separating_line(get<std::vector<double>>(p, "b_values"), get<int>(p, "resolution")));
               }});
  s.push_back({"ineq-phi",
               "phi(t) >= t^2",
               {{"resolution", 100000}},
               [](const Json& p, std::uint64_t) { return one(estimates::check_phi_lower_bound(get<int>(p, "resolution"))); }});
  s.push_back({"ineq-HR",
               "H_R(x) <= 4 (log R)^2 / R^2 on (0, 1/R) for R >= e",
               {{"R_values", {e, 5.0, 10.0, 100.0, 1000.0}}, {"resolution", 10000}},
               [](const Json& p, std::uint64_t) {
                 return one(estimates::check_HR_bound(get<std::vector<double>>(p, "R_values"), get<int>(p, "resolution")));
               }});
  s.push_back({"basic-estimate",
               "|F~_{n,R}(z)| <= C e^{r n + pi R |Im z|} on a complex region",
               {{"r", 0.5}, {"R", 10.0}, {"k", 1}, {"re_max", 25.0}, {"im_max", 2.0}, {"resolution", 41}, {"n_max", 200}},
               [](const Json& p, std::uint64_t) {
                 GridSpec g = spec_from(Json{{"resolution", get<int>(p, "resolution")},
                                             {"n_max", get<int>(p, "n_max")},
                                             {"R_values", {get<double>(p, "R")}}},
                                        0.0, get<double>(p, "re_max"), 0.0, get<double>(p, "im_max"));
                 return one(estimates::check_prop_basic(get<double>(p, "r"), get<double>(p, "R"), get<int>(p, "k"), g));
               }});
  s.push_back({"inf-f-normalization",
               "closed-form infimum of |f_{n,R}(z0)| over n against brute force",
               {{"cases", 20}},
               [](const Json& p, std::uint64_t seed) { return one(estimates::check_normalization(seed, get<int>(p, "cases"))); }});
  s.push_back({"scaling-band",
               "log(AR+B)/(AR+B) stays within constant multiples of log R / R",
               {{"A", 2.0}, {"B", 0.0}, {"a", 1.0}, {"resolution", 200}},
               [](const Json& p, std::uint64_t) {
                 return one(estimates::check_scaling_band(get<double>(p, "A"), get<double>(p, "B"), get<double>(p, "a"),
                                                            get<int>(p, "resolution")));
               }});
  s.push_back({"gamma-ab-bounds",
               "growth and lower bounds for Gamma_{a,b} on the closed right half-plane",
               {{"a_doubled_max", 12}, {"max_degree", 20}, {"resolution", 61}, {"half_width", 10.0}},
               [](const Json& p, std::uint64_t) {
                 return one(estimates::check_gamma_ab_bounds(get<int>(p, "a_doubled_max"), get<int>(p, "max_degree"),
                                                             get<int>(p, "resolution"), get<double>(p, "half_width")));
               }});
  s.push_back({"rank1-sl2-pipeline",
               "SL(2,R): interpolation at lambda0, intertwining relation, |J| = 1 on real lambda",
               {{"decay", 0.5}, {"truncation", 30}, {"z0", {0.0, -2.0}}, {"R", 10.0}, {"resolution", 41},
                {"re", {-5.0, 5.0}}, {"im", {-2.03, 1.97}}, {"unitarity_points", 2001}},
               [](const Json& p, std::uint64_t) { return rank1_sl2(p); }});
  s.push_back({"weyl-factorization",
               "group orders and positive distinct roots w_j^{-1} alpha_{i_j} for every reduced word",
               {{"root_systems", {"A2", "B2", "G2", "A1^3"}}},
               [](const Json& p, std::uint64_t) {
                 return one(weyl::check_factorization(get<std::vector<std::string>>(p, "root_systems")));
               }});
  s.push_back({"weyl-p-lambda0",
               "p_lambda0 is 1/|W_lambda0| at lambda0 and vanishes on the rest of the orbit",
               {{"root_systems", {"A2", "B2", "G2", "A1^3"}}, {"samples", 50}},
               [](const Json& p, std::uint64_t seed) {
                 return one(weyl::check_p_lambda0(get<std::vector<std::string>>(p, "root_systems"), get<int>(p, "samples"), seed));
               }});
  s.push_back({"pole-cancellation",
               "every intertwining denominator divides e_tau, all rank-one presets",
               {{"tau_max", 30}},
               [](const Json& p, std::uint64_t) { return pole_cancellation_all(p); }});
  s.push_back({"ansatz2-a1xa1",
               "Weyl-averaged interpolant on A1 x A1: exactness, W-invariance, cocycle, growth bound",
               {{"lambda0", {{0.0, -1.0}, {0.0, -0.5}}},
                {"R", 10.0},
                {"r", 0.5},
                {"tau_max", 10},
                {"invariance_tau_max", 3},
                {"invariance_grid", {{"re", {-2.0, 2.0}}, {"im", {-1.03, 0.97}}, {"resolution", 7}}},
                {"scan_grid", {{"re", {-3.0, 3.0}}, {"im", {-1.0, 1.0}}, {"resolution", 21}}}},
               [](const Json& p, std::uint64_t) { return ansatz2_a1xa1(p); }});
  s.push_back({"crown-su11",
               "SU(1,1): closed-form beta_R against a nested brute-force scan",
               {{"R_values", {1.0, 2.0 * std::sqrt(2.0), 5.0}}, {"final_step", 1e-4}},
               [](const Json& p, std::uint64_t) {
                 const auto Rs = get<std::vector<double>>(p, "R_values");
                 const double step = get<double>(p, "final_step");
                 SuiteOutput o = one(crown::check_su11(Rs, step));
                 o.csv["crown-su11.csv"] = crown::su11_csv(Rs, step);
                 return o;
               }});
  s.push_back({"crown-so1n",
               "SO_0(1,n), n even: closed-form chamber bound against a brute-force scan",
               {{"n_values", {2, 4}}, {"rprime_values", {0.5, 1.0, 2.0}}},
               [](const Json& p, std::uint64_t seed) {
                 const auto ns = get<std::vector<int>>(p, "n_values");
                 const auto rps = get<std::vector<double>>(p, "rprime_values");
                 SuiteOutput o = one(crown::check_so1n(ns, rps, seed));
                 std::ostringstream csv;
                 csv << "n,R,rprime,bound_closed,bound_scan\n";
                 for (int n : ns) {
                   std::vector<double> Rn;
                   for (double rp : rps) Rn.push_back(rp * std::sqrt(2.0 * (n - 1)));
                   const std::string part = crown::so1n_csv({n}, Rn, seed);
                   csv << part.substr(part.find('\n') + 1);
                 }
                 o.csv["crown-so1n.csv"] = csv.str();
                 return o;
               }});
  s.push_back({"crown-gln",
               "GL(n,R) square-root domain: sufficiency gate and the exponential law for r(R)",
               {{"R_values", {1.0, 2.0, 3.0, 4.0, 5.0, 6.0}}, {"n", 4}, {"trials", 100}},
               [](const Json& p, std::uint64_t seed) {
                 const auto Rs = get<std::vector<double>>(p, "R_values");
                 SuiteOutput o = one(crown::check_gln(Rs, get<int>(p, "n"), get<int>(p, "trials"), seed));
                 o.csv["crown-gln.csv"] = crown::gln_csv(Rs, get<int>(p, "n"), get<int>(p, "trials"), seed);
                 return o;
               }});
  s.push_back({"estimates-all",
               "the eight boundedness, inequality, normalization and scaling checks",
               kEstimatesAllDefaults,
               [](const Json& p, std::uint64_t seed) {
                 SuiteOutput o;
                 for (const auto& id : kEstimatesAll) {
                   const Suite* sub = find_suite(id);
                   const Json sub_params = p.contains(id) ? p.at(id) : Json::object();
                   SuiteOutput part = run_suite(*sub, sub_params, seed);
                   for (auto& r : part.reports) o.reports.push_back(std::move(r));
                 }
                 return o;
               }});
  return s;
}

Json merge_into(const Json& defaults, const Json& params, const std::string& path) {
  Json out = defaults;
  if (!params.is_object()) throw Error(ErrorKind::MalformedConfig, "params" + path + " must be an object");
  for (const auto& [k, v] : params.items()) {
    if (!out.contains(k)) {
      out[k] = v;
      continue;
    }
    const Json& d = out[k];
    const bool same = (d.is_number() && v.is_number()) || (d.is_array() && v.is_array()) ||
                      (d.is_object() && v.is_object()) || (d.is_string() && v.is_string()) ||
                      (d.is_boolean() && v.is_boolean());
    if (!same) throw Error(ErrorKind::MalformedConfig, "parameter '" + path + k + "' has the wrong type");
    out[k] = d.is_object() ? merge_into(d, v, path + k + ".") : v;
  }
  return out;
}

}  // namespace

const Suite* find_suite(const std::string& id) {
  for (const auto& s : registry()) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

std::vector<const Suite*> list_suites(const std::string& filter) {
  std::vector<const Suite*> out;
  for (const auto& s : registry()) {
    if (filter.empty() || s.id.find(filter) != std::string::npos) out.push_back(&s);
  }
  return out;
}

Json merged_params(const Suite& s, const Json& params) {
  if (params.is_null()) return s.defaults;
  return merge_into(s.defaults, params, "");
}

SuiteOutput run_suite(const Suite& s, const Json& params, std::uint64_t seed) {
  return s.run(merged_params(s, params), seed);
}

}  // namespace pwq::cli
