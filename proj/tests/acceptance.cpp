// Acceptance gate: one PASS/FAIL line per criterion, default suite parameters
// and the default seed throughout. Exit status 0 only when every line passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "pwq/cli.hpp"
#include "pwq/error.hpp"
#include "pwq/estimates.hpp"

using namespace pwq;

namespace {

struct Run {
  cli::SuiteOutput out;
  Json params;
  double seconds = 0.0;
};

std::map<std::string, Run> first_runs;

const Run& run(const std::string& id) {
  auto it = first_runs.find(id);
  if (it != first_runs.end()) return it->second;
  const cli::Suite* s = cli::find_suite(id);
  if (!s) throw Error(ErrorKind::UnknownSuite, id);
  Run r;
  r.params = cli::merged_params(*s, Json::object());
  const auto t0 = std::chrono::steady_clock::now();
  r.out = cli::run_suite(*s, Json::object(), estimates::kDefaultSeed);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return first_runs.emplace(id, std::move(r)).first->second;
}

const Report& report(const std::string& suite, const std::string& check_id) {
  for (const auto& rep : run(suite).out.reports) {
    if (rep.check_id == check_id) return rep;
  }
  throw Error(ErrorKind::UnknownSuite, suite + " has no report " + check_id);
}

// Collects the sub-conditions of one criterion into a single verdict.
class Verdict {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      if (!failures_.empty()) failures_ += "; ";
      failures_ += what;
    }
  }
  void report_below(const Report& r, double tol) {
    require(r.passed, r.check_id + " failed");
    require(r.tolerance <= tol, r.check_id + " tolerance looser than " + fmt(tol));
    require(r.worst_violation <= tol, r.check_id + " worst " + fmt(r.worst_violation) + " > " + fmt(tol));
    note(r.check_id + " worst=" + fmt(r.worst_violation) + " (tol " + fmt(tol) + ")");
  }
  void runtime_below(double seconds, double limit) {
    require(seconds < limit, "runtime " + fmt(seconds) + " s >= " + fmt(limit) + " s");
    note("runtime=" + fmt(seconds) + " s (limit " + fmt(limit) + " s)");
  }
  void note(const std::string& s) {
    if (!notes_.empty()) notes_ += ", ";
    notes_ += s;
  }
  bool pass() const { return pass_; }
  std::string text() const { return pass_ ? notes_ : failures_ + " | " + notes_; }

  static std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(3);
    ss << v;
    return ss.str();
  }

 private:
  bool pass_ = true;
  std::string failures_;
  std::string notes_;
};

double seconds_of(std::initializer_list<const char*> ids) {
  double t = 0.0;
  for (const char* id : ids) t += run(id).seconds;
  return t;
}

struct Criterion {
  int number;
  std::string title;
  std::function<void(Verdict&)> body;
};

std::vector<Criterion> criteria() {
  std::vector<Criterion> c;

  c.push_back({1, "sine and product forms of f_{n,R} agree", [](Verdict& v) {
                 const Run& r = run("sinc-dual-representation");
                 v.require(r.params["n_max"] == 50, "n_max is not 50");
                 v.require(r.params["R_values"] == Json{1.0, 3.0, 10.0}, "R values differ from {1, 3, 10}");
                 v.report_below(report("sinc-dual-representation", "dual-representation"), 1e-8);
                 v.runtime_below(r.seconds, 10.0);
               }});

  c.push_back({2, "Gamma-function and reflection identities", [](Verdict& v) {
                 v.report_below(report("gamma-identities", "gamma-representation"), 1e-8);
                 v.report_below(report("gamma-identities", "reflection-product"), 1e-9);
                 v.runtime_below(run("gamma-identities").seconds, 5.0);
               }});

  c.push_back({3, "exact inequalities hold with 1e-12 slack", [](Verdict& v) {
                 const std::vector<std::pair<const char*, const char*>> ids = {
                     {"separating-line", "separating-line"},
                     {"ineq-phi", "phi-lower-bound"},
                     {"ineq-HR", "HR-bound"},
                     {"gamma-ab-bounds", "gamma-ab-bounds"}};
                 for (const auto& [suite, check] : ids) {
                   const Report& r = report(suite, check);
                   v.report_below(r, 1e-12);
                   const double pts = r.constants.count("points") ? r.constants.at("points") : 0.0;
                   v.require(pts >= 1e4, std::string(check) + " has fewer than 1e4 points");
                 }
                 v.runtime_below(seconds_of({"separating-line", "ineq-phi", "ineq-HR", "gamma-ab-bounds"}), 10.0);
               }});

  c.push_back({4, "calibrated sups stable as the n-range doubles from 100 to 200", [](Verdict& v) {
                 for (const char* id : {"large-lambda-bound", "small-lambda-bound", "basic-estimate"}) {
                   const Run& r = run(id);
                   v.require(r.params["n_max"] == 200, std::string(id) + " n_max is not 200");
                   v.report_below(r.out.reports.at(0), 0.01);
                 }
                 v.runtime_below(seconds_of({"large-lambda-bound", "small-lambda-bound", "basic-estimate"}), 60.0);
               }});

  c.push_back({5, "closed-form infimum of |f_{n,R}(z0)| matches brute force", [](Verdict& v) {
                 v.require(run("inf-f-normalization").params["cases"] == 20, "case count is not 20");
                 v.report_below(report("inf-f-normalization", "inf-f-normalization"), 1e-12);
                 const double ex = estimates::inf_f_at(0.5, 1.0);
                 const double dev = std::abs(ex - 2.0 / std::numbers::pi);
                 v.require(dev <= 1e-12, "inf at (0.5, 1) is " + Verdict::fmt(ex));
                 v.note("|inf(0.5, 1) - 2/pi|=" + Verdict::fmt(dev) + " (tol 1e-12)");
               }});

  c.push_back({6, "SL(2,R) rank-one pipeline", [](Verdict& v) {
                 const Run& r = run("rank1-sl2-pipeline");
                 v.require(r.params["z0"] == Json{0.0, -2.0}, "interpolation point is not -2i");
                 v.require(r.params["decay"] == 0.5 && r.params["truncation"] == 30 && r.params["R"] == 10.0,
                           "vector or R differs from decay 0.5, T = 30, R = 10");
                 v.report_below(report("rank1-sl2-pipeline", "rank1-interpolation"), 1e-12);
                 const Report& tw = report("rank1-sl2-pipeline", "intertwining-relation");
                 v.require(tw.grid.value("points", 0) == 41 * 41, "intertwining grid is not 41 x 41");
                 v.report_below(tw, 1e-8);
                 v.report_below(report("rank1-sl2-pipeline", "rank1-unitarity"), 1e-10);
                 v.runtime_below(r.seconds, 30.0);
               }});

  c.push_back({7, "reduced-word root factorization and Weyl group orders", [](Verdict& v) {
                 const Report& r = report("weyl-factorization", "weyl-factorization");
                 v.report_below(r, 0.0);
                 const std::map<std::string, double> orders = {
                     {"order_A2", 6}, {"order_B2", 8}, {"order_G2", 12}, {"order_A1^3", 8}};
                 for (const auto& [k, n] : orders) {
                   v.require(r.constants.count(k) && r.constants.at(k) == n, k + " is not " + Verdict::fmt(n));
                 }
                 v.note("orders 6/8/12/8");
                 v.runtime_below(run("weyl-factorization").seconds, 5.0);
               }});

  c.push_back({8, "orbit interpolant takes 1/|W_lambda0| and 0 on the orbit", [](Verdict& v) {
                 v.require(run("weyl-p-lambda0").params["samples"] == 50, "sample count is not 50");
                 v.report_below(report("weyl-p-lambda0", "weyl-p-lambda0"), 1e-12);
               }});

  c.push_back({9, "pole cancellation by exact divisibility, |tau| <= 30", [](Verdict& v) {
                 const Run& r = run("pole-cancellation");
                 v.require(r.params["tau_max"] == 30, "tau_max is not 30");
                 const Report& rep = report("pole-cancellation", "pole-cancellation");
                 v.require(rep.grid["presets"].size() == 10, "not every preset was checked");
                 v.report_below(rep, 0.0);
                 v.runtime_below(r.seconds, 2.0);
               }});

  c.push_back({10, "Weyl-averaged interpolant on A1 x A1", [](Verdict& v) {
                 v.report_below(report("ansatz2-a1xa1", "ansatz2-interpolation"), 1e-10);
                 v.report_below(report("ansatz2-a1xa1", "ansatz2-w-invariance"), 1e-8);
                 v.report_below(report("ansatz2-a1xa1", "ansatz2-cocycle"), 1e-10);
                 v.report_below(report("ansatz2-a1xa1", "ansatz2-condition-iii"), 0.02);
                 v.runtime_below(run("ansatz2-a1xa1").seconds, 120.0);
               }});

  c.push_back({11, "crown geometry against brute-force scans", [](Verdict& v) {
                 const Run& su = run("crown-su11");
                 v.require(su.params["final_step"] == 1e-4, "su11 final step is not 1e-4");
                 v.require(su.params["R_values"].size() == 3, "su11 R values differ");
                 v.report_below(report("crown-su11", "crown-su11"), 2e-4);
                 v.require(run("crown-so1n").params["n_values"] == Json{2, 4}, "so1n n values are not {2, 4}");
                 v.report_below(report("crown-so1n", "crown-so1n"), 1e-3);
                 const Run& gl = run("crown-gln");
                 v.require(gl.params["n"] == 4, "GL size is not 4");
                 v.require(gl.params["R_values"] == Json{1.0, 2.0, 3.0, 4.0, 5.0, 6.0}, "GL R values differ from 1..6");
                 const Report& g = report("crown-gln", "crown-gln");
                 v.report_below(g, 0.0);
                 const double slope = g.constants.count("slope") ? g.constants.at("slope") : 0.0;
                 v.require(slope >= -1.15 && slope <= -0.85, "slope " + Verdict::fmt(slope) + " outside [-1.15, -0.85]");
                 v.note("slope=" + Verdict::fmt(slope));
                 v.runtime_below(seconds_of({"crown-su11", "crown-so1n", "crown-gln"}), 120.0);
               }});

  c.push_back({12, "repeated runs give byte-identical reports", [](Verdict& v) {
                 int compared = 0;
                 for (const auto& s : cli::registry()) {
                   const cli::SuiteOutput& a = run(s.id).out;
                   const cli::SuiteOutput b = cli::run_suite(s, Json::object(), estimates::kDefaultSeed);
                   bool same = a.reports.size() == b.reports.size() && a.csv == b.csv;
                   for (std::size_t i = 0; same && i < a.reports.size(); ++i) {
                     same = a.reports[i].to_json(false).dump() == b.reports[i].to_json(false).dump();
                     ++compared;
                   }
                   v.require(same, s.id + " differs between runs");
                 }
                 v.note(std::to_string(cli::registry().size()) + " suites, " + std::to_string(compared) + " reports");
               }});
  return c;
}

}  // namespace

int main() {
  int failed = 0;
  for (const auto& c : criteria()) {
    Verdict v;
    try {
      c.body(v);
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    if (!v.pass()) ++failed;
    std::printf("%s  %2d  %s: %s\n", v.pass() ? "PASS" : "FAIL", c.number, c.title.c_str(), v.text().c_str());
    std::fflush(stdout);
  }
  std::printf("%s: %d of 12 criteria failed\n", failed == 0 ? "ACCEPTED" : "REJECTED", failed);
  return failed == 0 ? 0 : 1;
}
