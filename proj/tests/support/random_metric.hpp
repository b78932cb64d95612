#pragma once

// Seeded random analytic metrics. Diagonal entries stay >= 1.3 and every
// off-diagonal entry is bounded by 0.12 on [-1,1]^n, so the metric is
// diagonally dominant, hence positive definite, on the whole sample box.

#include <random>
#include <string>
#include <vector>

#include "acm/tensor.hpp"

namespace acm::testing {

inline std::vector<std::string> coordinate_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("u" + std::to_string(i));
  return names;
}

class RandomMetricGenerator {
 public:
  explicit RandomMetricGenerator(std::uint64_t seed) : rng_(seed) {}

  MetricField generate(std::size_t n) {
    using sym::Expr;
    ExprMatrix g(n, std::vector<Expr>(n));
    for (std::size_t i = 0; i < n; ++i) {
      // 2 + 0.4 sin(a·u_p + b·u_q) + 0.3 u_r^2 − 0.3 tanh(c·u_s)
      g[i][i] = Expr(2.0) + 0.4 * sym::sin(coef() * var(pick(n)) + coef() * var(pick(n))) +
                0.3 * sym::pow(var(pick(n)), Expr(2.0)) - 0.3 * sym::tanh(coef() * var(pick(n)));
      for (std::size_t j = i + 1; j < n; ++j) {
        const double amp = 0.12;
        Expr off;
        switch (pick(3)) {
          case 0: off = amp * sym::cos(coef() * var(pick(n))) * sym::sin(coef() * var(pick(n))); break;
          case 1: off = amp * var(pick(n)) * sym::exp(Expr(-1.0) - 0.5 * var(pick(n)) * var(pick(n))) * 2.0; break;
          default: off = amp * sym::tanh(coef() * var(pick(n)) - coef() * var(pick(n))); break;
        }
        g[i][j] = off;
        g[j][i] = off;
      }
    }
    return MetricField(std::move(g));
  }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  double coef() { return std::uniform_real_distribution<double>(0.5, 1.5)(rng_); }
  static sym::Expr var(std::size_t i) { return sym::Expr::variable(i, "u" + std::to_string(i)); }

  std::mt19937_64 rng_;
};

}  // namespace acm::testing
