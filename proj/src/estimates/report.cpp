#include <algorithm>
#include <cmath>

#include "pwq/report.hpp"

namespace pwq {

Json GridSpec::to_json() const {
  Json j;
  j["region"] = {{"re", {re_min, re_max}}, {"im", {im_min, im_max}}};
  j["resolution"] = resolution;
  j["n_range"] = {n_min, n_max};
  j["R_values"] = R_values;
  return j;
}

void Report::finalize() { passed = !std::isnan(worst_violation) && worst_violation <= tolerance; }

Json Report::to_json(bool with_runtime) const {
  Json j;
  j["check_id"] = check_id;
  j["grid"] = grid;
  j["worst_violation"] = worst_violation;
  j["witness"] = witness;
  Json c = Json::object();
  for (const auto& [k, v] : constants) c[k] = v;
  j["constants"] = c;
  j["passed"] = passed;
  j["tolerance"] = tolerance;
  if (with_runtime) j["runtime_ms"] = runtime_ms;
  return j;
}

void ViolationTracker::update(double violation, const Json& where) {
  if (std::isnan(violation)) {
    if (!std::isnan(worst_)) {
      worst_ = violation;
      witness_ = where;
    }
    return;
  }
  if (std::isnan(worst_)) return;
  if (violation > worst_) {
    worst_ = violation;
    witness_ = where;
  }
}

void ViolationTracker::store(Report& r) const {
  r.worst_violation = worst_;
  r.witness = witness_;
}

Report merge(const Report& a, const Report& b) {
  auto ranks_higher = [](const Report& x, const Report& y) {
    if (std::isnan(x.worst_violation) != std::isnan(y.worst_violation)) return std::isnan(x.worst_violation);
    if (x.worst_violation != y.worst_violation) return x.worst_violation > y.worst_violation;
    return x.witness.dump() < y.witness.dump();
  };
  Report out = ranks_higher(b, a) ? b : a;
  const Report& other = ranks_higher(b, a) ? a : b;
  for (const auto& [k, v] : other.constants) {
    auto it = out.constants.find(k);
    if (it == out.constants.end()) out.constants.emplace(k, v);
    else it->second = std::max(it->second, v);
  }
  out.tolerance = std::max(a.tolerance, b.tolerance);
  out.runtime_ms = a.runtime_ms + b.runtime_ms;
  out.finalize();
  return out;
}

}  // namespace pwq
