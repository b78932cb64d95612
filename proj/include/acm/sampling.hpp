#pragma once

// Seeded sample points for the sampled-residual verdicts.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "acm/expr.hpp"

namespace acm {

inline constexpr std::size_t kDefaultSamples = 50;
inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr double kDefaultTolerance = 1e-7;

struct SampleConfig {
  std::size_t count = kDefaultSamples;
  std::vector<std::pair<double, double>> ranges;  // per coordinate; empty means [-1, 1] each
  std::uint64_t seed = kDefaultSeed;
  double tolerance = kDefaultTolerance;
};

struct SampleSet {
  std::vector<Point> points;
  std::size_t rejected = 0;
  std::uint64_t seed = 0;
};

/// Draws `count` points uniformly in the box; a candidate is rejected and
/// redrawn when `accept` returns false or throws. Throws std::runtime_error
/// when more than 100·count + 1000 candidates are rejected.
SampleSet draw_samples(const SampleConfig& config, std::size_t dim,
                       const std::function<bool(const Point&)>& accept);

}  // namespace acm
