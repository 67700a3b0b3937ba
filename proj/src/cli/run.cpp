#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "pwq/ansatz2.hpp"
#include "pwq/cli.hpp"
#include "pwq/crown.hpp"
#include "pwq/error.hpp"
#include "pwq/estimates.hpp"
#include "pwq/rankone.hpp"

namespace pwq::cli {

namespace {

using cplx = std::complex<double>;

struct Outcome {
  SuiteOutput output;
  bool config_error = false;
  std::string message;
};

Outcome run_guarded(const Suite& s, const Json& params, std::uint64_t seed) {
  Outcome o;
  try {
    o.output = run_suite(s, params, seed);
  } catch (const Error& e) {
    o.config_error = true;
    o.message = e.what();
  } catch (const nlohmann::json::exception& e) {
    o.config_error = true;
    o.message = std::string("malformed-config: ") + e.what();
  }
  return o;
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw Error(ErrorKind::MalformedConfig, "cannot write " + p.string());
  f << text;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw Error(ErrorKind::MalformedConfig, "not a number: " + item);
    }
  }
  return out;
}

cplx parse_cplx(const std::string& s) {
  const auto v = parse_list(s);
  if (v.size() != 2) throw Error(ErrorKind::MalformedConfig, "expected re,im: " + s);
  return {v[0], v[1]};
}

rankone::RankOneParams preset_by_name(const std::string& name) {
  for (const auto& p : rankone::all_presets()) {
    if (p.name == name) return p;
  }
  throw Error(ErrorKind::MalformedConfig, "unknown preset " + name);
}

int emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file(path, text);
  }
  return 0;
}

}  // namespace

RunConfig RunConfig::from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::MalformedConfig, "config must be a JSON object");
  RunConfig c;
  try {
    if (j.contains("suite")) {
      if (j["suite"].is_array()) {
        c.suites = j["suite"].get<std::vector<std::string>>();
      } else {
        c.suites = {j["suite"].get<std::string>()};
      }
    }
    if (j.contains("params")) c.params = j["params"];
    if (!c.params.is_object()) throw Error(ErrorKind::MalformedConfig, "params must be an object");
    if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
    c.seed = j.value("seed", estimates::kDefaultSeed);
    c.jobs = j.value("jobs", 1);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedConfig, e.what());
  }
  return c;
}

int run_config(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.suites.empty()) {
    err << "malformed-config: no suite given\n";
    return 2;
  }
  std::vector<const Suite*> suites;
  for (const auto& id : cfg.suites) {
    const Suite* s = find_suite(id);
    if (!s) {
      err << "unknown-suite: " << id << "\n";
      return 2;
    }
    suites.push_back(s);
  }

  std::vector<Outcome> results(suites.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < suites.size(); i = next++) results[i] = run_guarded(*suites[i], cfg.params, cfg.seed);
  };
  const int jobs = std::clamp(cfg.jobs, 1, static_cast<int>(suites.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  int code = 0;
  for (std::size_t i = 0; i < suites.size(); ++i) {
    if (results[i].config_error) {
      err << suites[i]->id << ": " << results[i].message << "\n";
      return 2;
    }
  }
  try {
    if (!cfg.output_dir.empty()) std::filesystem::create_directories(cfg.output_dir);
    for (std::size_t i = 0; i < suites.size(); ++i) {
      for (const auto& r : results[i].output.reports) {
        out << (r.passed ? "PASS " : "FAIL ") << suites[i]->id << " " << r.check_id << " worst=" << r.worst_violation
            << " tol=" << r.tolerance << "\n";
        if (!r.passed) code = 1;
        if (!cfg.output_dir.empty()) {
          write_file(std::filesystem::path(cfg.output_dir) / (r.check_id + ".json"), r.to_json().dump(2) + "\n");
        }
      }
      if (!cfg.output_dir.empty()) {
        for (const auto& [name, text] : results[i].output.csv) write_file(std::filesystem::path(cfg.output_dir) / name, text);
      }
    }
  } catch (const std::exception& e) {
    err << "output: " << e.what() << "\n";
    return 2;
  }
  return code;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification suites for spectral interpolation"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run verification suites and write JSON reports");
  std::vector<std::string> suite_ids;
  std::string config_path, out_dir;
  std::uint64_t seed = estimates::kDefaultSeed;
  int jobs = 1;
  verify->add_option("--suite", suite_ids, "suite id (repeatable)");
  verify->add_option("--config", config_path, "JSON run configuration");
  verify->add_option("--out", out_dir, "output directory");
  auto* seed_opt = verify->add_option("--seed", seed, "RNG seed");
  auto* jobs_opt = verify->add_option("--jobs", jobs, "worker count")->check(CLI::PositiveNumber);

  auto* list = app.add_subcommand("list", "list registered suites");
  std::string filter;
  list->add_option("filter", filter, "substring of the suite id");

  auto* scan = app.add_subcommand("scan", "normalized growth scan of the Weyl-averaged interpolant");
  std::string factors = "sl2,sl2", lambda0 = "[[0,-1],[0,-0.5]]", scan_out;
  double scan_R = 10.0, scan_r = 0.5, re_max = 3.0, im_max = 1.0;
  int tau_max = 10, resolution = 21;
  scan->add_option("--factors", factors, "comma-separated rank-one presets");
  scan->add_option("--lambda0", lambda0, "JSON list of [re, im] per factor");
  scan->add_option("--R", scan_R);
  scan->add_option("--r", scan_r);
  scan->add_option("--tau-max", tau_max);
  scan->add_option("--resolution", resolution);
  scan->add_option("--re-max", re_max);
  scan->add_option("--im-max", im_max);
  scan->add_option("--out", scan_out, "CSV path (stdout when absent)");

  auto* crown_cmd = app.add_subcommand("crown", "crown-domain boundary scans as CSV");
  std::string kind = "su11", R_list = "1,2,3,4,5,6", n_list = "2,4", crown_out;
  int trials = 100, gl_n = 4;
  std::uint64_t crown_seed = estimates::kDefaultSeed;
  crown_cmd->add_option("--kind", kind)->check(CLI::IsMember({"su11", "so1n", "gln"}));
  crown_cmd->add_option("--R", R_list, "comma-separated R values");
  crown_cmd->add_option("--n", n_list, "comma-separated even n for so1n");
  crown_cmd->add_option("--gl-n", gl_n, "matrix size for gln");
  crown_cmd->add_option("--trials", trials);
  crown_cmd->add_option("--seed", crown_seed);
  crown_cmd->add_option("--out", crown_out, "CSV path (stdout when absent)");

  auto* interp = app.add_subcommand("interp", "evaluate the rank-one interpolant");
  std::string preset = "sl2", z0_s = "0,-2", vector_path;
  std::vector<std::string> points;
  double interp_R = 10.0, decay = 0.5;
  int truncation = 30;
  interp->add_option("--preset", preset);
  interp->add_option("--z0", z0_s, "re,im");
  interp->add_option("--R", interp_R);
  interp->add_option("--decay", decay);
  interp->add_option("--truncation", truncation);
  interp->add_option("--vector", vector_path, "JSON file with the K-type coefficients");
  interp->add_option("--z", points, "evaluation point re,im (repeatable)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*list) {
      for (const Suite* s : list_suites(filter)) out << s->id << "\t" << s->verifies << "\n";
      return 0;
    }
    if (*verify) {
      RunConfig cfg;
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw Error(ErrorKind::MalformedConfig, "cannot read " + config_path);
        Json j;
        try {
          j = Json::parse(f);
        } catch (const nlohmann::json::exception& e) {
          throw Error(ErrorKind::MalformedConfig, e.what());
        }
        cfg = RunConfig::from_json(j);
      } else {
        cfg.seed = estimates::kDefaultSeed;
      }
      if (!suite_ids.empty()) cfg.suites = suite_ids;
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      if (seed_opt->count() > 0) cfg.seed = seed;
      if (jobs_opt->count() > 0) cfg.jobs = jobs;
      return run_config(cfg, out, err);
    }
    if (*scan) {
      std::vector<rankone::RankOneParams> fs;
      std::stringstream ss(factors);
      std::string item;
      while (std::getline(ss, item, ',')) fs.push_back(preset_by_name(item));
      Json lj;
      try {
        lj = Json::parse(lambda0);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::MalformedConfig, e.what());
      }
      ansatz2::SpectralParameter l0;
      for (const auto& c : lj) l0.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
      const ansatz2::SymmetrizedInterpolant si(ansatz2::make_product_model(fs), l0, scan_R);
      std::vector<ansatz2::ScanRow> rows;
      const Report rep =
          ansatz2::estimate_condition_iii(si, tau_max, scan_r, {-re_max, re_max, -im_max, im_max, resolution}, &rows);
      std::ostringstream csv;
      csv.precision(12);
      for (std::size_t i = 0; i < fs.size(); ++i) csv << "tau_" << i + 1 << ',';
      csv << "tau_norm,log_sup\n";
      for (const auto& r : rows) {
        for (int t : r.tau) csv << t << ',';
        csv << r.tau_norm << ',' << r.log_sup << '\n';
      }
      emit(csv.str(), scan_out, out);
      err << rep.to_json(false).dump() << "\n";
      return rep.passed ? 0 : 1;
    }
    if (*crown_cmd) {
      const auto Rs = parse_list(R_list);
      std::string text;
      if (kind == "su11") {
        text = crown::su11_csv(Rs);
      } else if (kind == "so1n") {
        std::vector<int> ns;
        for (double n : parse_list(n_list)) ns.push_back(static_cast<int>(n));
        text = crown::so1n_csv(ns, Rs, crown_seed);
      } else {
        text = crown::gln_csv(Rs, gl_n, trials, crown_seed);
      }
      return emit(text, crown_out, out);
    }
    if (*interp) {
      rankone::AnalyticVector v = rankone::AnalyticVector::exponential(decay, truncation);
      if (!vector_path.empty()) {
        std::ifstream f(vector_path);
        if (!f) throw Error(ErrorKind::MalformedConfig, "cannot read " + vector_path);
        Json j;
        try {
          j = Json::parse(f);
        } catch (const nlohmann::json::exception& e) {
          throw Error(ErrorKind::MalformedConfig, e.what());
        }
        v = rankone::AnalyticVector::from_json(j);
      }
      const rankone::Ansatz1Interpolant F(preset_by_name(preset), v, parse_cplx(z0_s), interp_R);
      Json res;
      res["R_used"] = F.R();
      res["points"] = Json::array();
      for (const auto& s : points) {
        const cplx z = parse_cplx(s);
        Json coeffs = Json::array();
        for (const auto& [tau, c] : F(z)) coeffs.push_back({tau, c.real(), c.imag()});
        res["points"].push_back({{"z", {z.real(), z.imag()}}, {"coeffs", coeffs}});
      }
      out << res.dump(2) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "malformed-config: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace pwq::cli
