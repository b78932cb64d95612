#include "acm/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace acm {

CheckResult& ResidualReport::add(std::string name, double residual, double tolerance, bool advisory, std::string note) {
  checks.push_back(CheckResult{std::move(name), residual, tolerance, advisory, std::move(note)});
  return checks.back();
}

void ResidualReport::append(const ResidualReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

bool ResidualReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.advisory || c.passed(); });
}

const CheckResult* ResidualReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void MaxAbs::add(double x) {
  if (std::isnan(value_)) return;
  if (!std::isfinite(x)) {
    value_ = std::numeric_limits<double>::quiet_NaN();
    return;
  }
  value_ = std::max(value_, std::fabs(x));
}

std::string format_constant(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", std::fabs(v) < 1e-13 ? 0.0 : v);
  return buf;
}

}  // namespace acm
