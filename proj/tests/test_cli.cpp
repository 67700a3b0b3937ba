#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pwq/cli.hpp"
#include "pwq/error.hpp"

using namespace pwq;
using namespace pwq::cli;
namespace fs = std::filesystem;

namespace {

int run_args(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "pwverify");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pwq_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json without_runtime(Json j) {
  j.erase("runtime_ms");
  return j;
}

}  // namespace

TEST_CASE("registry and listing") {
  CHECK(registry().size() == 20);
  CHECK(list_suites().size() == registry().size());
  CHECK(list_suites("crown").size() == 3);
  CHECK(list_suites("zzz").empty());
  CHECK(find_suite("pole-cancellation") != nullptr);
  CHECK(find_suite("bogus") == nullptr);

  std::string text;
  CHECK(run_args({"list", "crown"}, &text) == 0);
  CHECK(text.find("crown-gln") != std::string::npos);
  CHECK(run_args({"list", "zzz"}) == 0);
}

TEST_CASE("parameter merging") {
  const Suite& s = *find_suite("pole-cancellation");
  CHECK(merged_params(s, Json::object())["tau_max"] == 30);
  CHECK(merged_params(s, Json{{"tau_max", 4}})["tau_max"] == 4);
  CHECK_THROWS_AS(merged_params(s, Json{{"tau_max", "four"}}), Error);
}

TEST_CASE("exit codes") {
  std::ostringstream out, err;
  RunConfig ok;
  ok.suites = {"weyl-factorization"};
  CHECK(run_config(ok, out, err) == 0);
  CHECK(out.str().find("PASS weyl-factorization") != std::string::npos);

  RunConfig unknown = ok;
  unknown.suites = {"bogus"};
  CHECK(run_config(unknown, out, err) == 2);

  RunConfig wrong_type = ok;
  wrong_type.suites = {"pole-cancellation"};
  wrong_type.params = {{"tau_max", "x"}};
  CHECK(run_config(wrong_type, out, err) == 2);

  // a one-point-per-axis scan misses the sup at the origin, so refinement moves it
  RunConfig failing;
  failing.suites = {"ansatz2-a1xa1"};
  failing.params = {{"tau_max", 2},
                    {"invariance_tau_max", 1},
                    {"invariance_grid", {{"resolution", 2}}},
                    {"scan_grid", {{"resolution", 2}}}};
  CHECK(run_config(failing, out, err) == 1);

  CHECK(run_args({"verify", "--suite", "bogus"}) == 2);
  CHECK(run_args({"verify", "--suite", "gamma-identities", "--jobs", "0"}) == 2);
  CHECK(run_args({"--help"}) == 0);
}

TEST_CASE("malformed configuration files") {
  const fs::path dir = scratch("config");
  fs::create_directories(dir);
  std::ofstream(dir / "broken.json") << "{\"suite\": ";
  CHECK(run_args({"verify", "--config", (dir / "broken.json").string()}) == 2);
  std::ofstream(dir / "array.json") << "[1, 2]";
  CHECK(run_args({"verify", "--config", (dir / "array.json").string()}) == 2);
  CHECK_THROWS_AS(RunConfig::from_json(Json{{"suite", 3}}), Error);
  const RunConfig c = RunConfig::from_json(Json{{"suite", {"a", "b"}}, {"seed", 5}, {"jobs", 2}});
  CHECK(c.suites.size() == 2);
  CHECK(c.seed == 5);
  CHECK(c.jobs == 2);
  fs::remove_all(dir);
}

TEST_CASE("reports are written and reproducible") {
  const fs::path a = scratch("a");
  const fs::path b = scratch("b");
  const std::vector<std::string> common = {"verify", "--suite", "weyl-p-lambda0", "--suite", "crown-so1n",
                                           "--seed", "17", "--jobs", "2"};
  auto with_out = [&](const fs::path& p) {
    auto args = common;
    args.push_back("--out");
    args.push_back(p.string());
    return args;
  };
  REQUIRE(run_args(with_out(a)) == 0);
  REQUIRE(run_args(with_out(b)) == 0);
  for (const char* name : {"weyl-p-lambda0.json", "crown-so1n.json", "crown-so1n.csv"}) {
    REQUIRE(fs::exists(a / name));
    if (fs::path(name).extension() == ".json") {
      CHECK(without_runtime(Json::parse(slurp(a / name))).dump() == without_runtime(Json::parse(slurp(b / name))).dump());
    } else {
      CHECK(slurp(a / name) == slurp(b / name));
    }
  }
  const Json rep = Json::parse(slurp(a / "weyl-p-lambda0.json"));
  for (const char* key : {"check_id", "grid", "worst_violation", "witness", "constants", "passed", "tolerance"}) {
    CHECK(rep.contains(key));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("interp and crown subcommands") {
  std::string text;
  CHECK(run_args({"interp", "--preset", "sl2", "--z0", "0,-2", "--truncation", "3", "--z", "0,-2"}, &text) == 0);
  CHECK_FALSE(text.empty());
  CHECK(run_args({"interp", "--preset", "sl2", "--z0", "0,2", "--z", "1,0"}) == 2);
  CHECK(run_args({"crown", "--kind", "su11", "--R", "1"}, &text) == 0);
  CHECK(text.rfind("R,beta_closed,beta_scan", 0) == 0);
  CHECK(run_args({"crown", "--kind", "nope"}) == 2);
}
