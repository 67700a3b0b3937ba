#pragma once

// Suite registry and the batch driver behind the pwverify tool.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pwq/report.hpp"

namespace pwq::cli {

struct SuiteOutput {
  std::vector<Report> reports;
  std::map<std::string, std::string> csv;  // file name -> contents
};

struct Suite {
  std::string id;
  std::string verifies;
  Json defaults;
  std::function<SuiteOutput(const Json& params, std::uint64_t seed)> run;
};

const std::vector<Suite>& registry();
/// nullptr when unknown.
const Suite* find_suite(const std::string& id);
/// Suites whose id contains filter (all when empty), in registry order.
std::vector<const Suite*> list_suites(const std::string& filter = "");

/// Defaults overridden key by key by params; MalformedConfig on type clashes.
Json merged_params(const Suite& s, const Json& params);
SuiteOutput run_suite(const Suite& s, const Json& params, std::uint64_t seed);

struct RunConfig {
  std::vector<std::string> suites;
  Json params = Json::object();
  std::string output_dir;
  std::uint64_t seed = 0;
  int jobs = 1;

  /// {"suite": id or [ids], "params": {...}, "output_dir": path, "seed": u64, "jobs": n}
  static RunConfig from_json(const Json& j);
};

/// Runs every suite (up to jobs at a time), writes <check_id>.json and CSV
/// files under output_dir when set. 0 all pass, 1 any failure, 2 config error.
int run_config(const RunConfig& cfg, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace pwq::cli
