#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace acm {

struct CheckResult {
  std::string name;
  double residual = 0.0;  // max over samples; NaN when it could not be evaluated
  double tolerance = 0.0;
  bool advisory = false;  // reported, but not part of the pass/fail surface
  std::string note;

  bool passed() const { return residual <= tolerance; }
};

struct ResidualReport {
  std::vector<CheckResult> checks;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::size_t rejected = 0;
  std::vector<std::string> notes;

  CheckResult& add(std::string name, double residual, double tolerance, bool advisory = false, std::string note = {});
  void append(const ResidualReport& other);
  /// Every non-advisory check passed.
  bool passed() const;
  /// nullptr when absent.
  const CheckResult* find(const std::string& name) const;
};

/// Running maximum of |x|; NaN is sticky so a failed evaluation cannot pass.
class MaxAbs {
 public:
  void add(double x);
  double value() const { return value_; }

 private:
  double value_ = 0.0;
};

/// Twelve significant digits, with magnitudes below 1e-13 shown as 0. Used
/// for constants that appear in labels.
std::string format_constant(double v);

}  // namespace acm
