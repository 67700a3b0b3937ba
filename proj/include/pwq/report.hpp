#pragma once

#include <chrono>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace pwq {

using Json = nlohmann::ordered_json;

/// Sampling description shared by the grid checks. Region is a rectangle in
/// the complex plane (im_min = im_max = 0 for a real interval).
struct GridSpec {
  double re_min = 0.0;
  double re_max = 1.0;
  double im_min = 0.0;
  double im_max = 0.0;
  int resolution = 2;
  int n_min = 0;
  int n_max = 0;
  std::vector<double> R_values;

  Json to_json() const;
};

/// Outcome of one verification. passed == (worst_violation <= tolerance).
struct Report {
  std::string check_id;
  Json grid = Json::object();
  double worst_violation = -std::numeric_limits<double>::infinity();
  Json witness = Json::object();
  std::map<std::string, double> constants;
  bool passed = false;
  double tolerance = 0.0;
  double runtime_ms = 0.0;

  void finalize();
  Json to_json(bool with_runtime = true) const;
};

/// Keeps the largest violation seen and where it happened; the first
/// occurrence wins ties, so serial scans are deterministic.
class ViolationTracker {
 public:
  void update(double violation, const Json& where);
  double worst() const { return worst_; }
  const Json& witness() const { return witness_; }
  void store(Report& r) const;

 private:
  double worst_ = -std::numeric_limits<double>::infinity();
  Json witness_ = Json::object();
};

/// Max of violations; ties broken by the serialized witness; constants merged
/// by max. Associative and commutative.
Report merge(const Report& a, const Report& b);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace pwq
