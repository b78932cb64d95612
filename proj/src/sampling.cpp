#include "acm/sampling.hpp"

#include <random>
#include <stdexcept>
#include <string>

namespace acm {

SampleSet draw_samples(const SampleConfig& config, std::size_t dim, const std::function<bool(const Point&)>& accept) {
  std::vector<std::pair<double, double>> ranges = config.ranges;
  if (ranges.empty()) ranges.assign(dim, {-1.0, 1.0});
  if (ranges.size() != dim) throw std::invalid_argument("sample ranges do not match the chart dimension");
  for (const auto& [lo, hi] : ranges) {
    if (!(lo < hi)) throw std::invalid_argument("sample range needs min < max");
  }
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SampleSet out;
  out.seed = config.seed;
  const std::size_t budget = 100 * config.count + 1000;
  while (out.points.size() < config.count) {
    Point p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = ranges[i].first + (ranges[i].second - ranges[i].first) * unit(rng);
    bool ok = false;
    try {
      ok = accept(p);
    } catch (const std::exception&) {
      ok = false;
    }
    if (ok) {
      out.points.push_back(std::move(p));
    } else if (++out.rejected > budget) {
      throw std::runtime_error("sampling rejected " + std::to_string(out.rejected) + " points; domain too degenerate");
    }
  }
  return out;
}

}  // namespace acm
