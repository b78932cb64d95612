#pragma once

// Seeded generator of random expressions over (x, y, z) and a filter for
// well-conditioned evaluation points. Shared by unit and acceptance tests.

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "acm/expr.hpp"

namespace acm::testing {

inline const std::vector<std::string>& xyz() {
  static const std::vector<std::string> names{"x", "y", "z"};
  return names;
}

class RandomExprGenerator {
 public:
  explicit RandomExprGenerator(std::uint64_t seed) : rng_(seed) {}

  sym::Expr generate(int depth) {
    using sym::Expr;
    using sym::Op;
    std::uniform_int_distribution<int> pick(0, 9);
    if (depth <= 0 || pick(rng_) < 2) return leaf();
    const int kind = pick(rng_);
    switch (kind) {
      case 0: return Expr::raw_unary(Op::Neg, generate(depth - 1));
      case 1: return Expr::raw_binary(Op::Add, generate(depth - 1), generate(depth - 1));
      case 2: return Expr::raw_binary(Op::Sub, generate(depth - 1), generate(depth - 1));
      case 3: return Expr::raw_binary(Op::Mul, generate(depth - 1), generate(depth - 1));
      case 4: return Expr::raw_binary(Op::Div, generate(depth - 1), generate(depth - 1));
      case 5: {
        static constexpr double exps[] = {2.0, 3.0, -1.0, 0.5, 1.5};
        std::uniform_int_distribution<int> e(0, 4);
        return Expr::raw_binary(Op::Pow, generate(depth - 1), Expr::constant(exps[e(rng_)]));
      }
      default: {
        std::uniform_int_distribution<int> f(0, 8);
        return Expr::raw_function(static_cast<sym::Fn>(f(rng_)), generate(depth - 1));
      }
    }
  }

  Point point() {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng_), u(rng_), u(rng_)};
  }

 private:
  sym::Expr leaf() {
    std::uniform_int_distribution<int> pick(0, 4);
    const int k = pick(rng_);
    if (k < 3) return sym::Expr::variable(static_cast<std::size_t>(k), xyz()[static_cast<std::size_t>(k)]);
    std::uniform_int_distribution<int> c(-12, 12);
    int v = c(rng_);
    if (v == 0) v = 1;
    return sym::Expr::constant(v / 4.0);
  }

  std::mt19937_64 rng_;
};

// Value of e at p when every subexpression is comfortably inside its domain:
// bounded magnitude, denominators and log/sqrt/fractional-power bases away
// from zero, tangent away from its poles.
inline std::optional<double> well_conditioned_value(const sym::Expr& e, const Point& p, double bound = 10.0,
                                                    double margin = 1e-2) {
  using sym::Fn;
  using sym::Op;
  double v = 0.0;
  switch (e.op()) {
    case Op::Const: return e.constant_value();
    case Op::Var: return p[e.var_index()];
    case Op::Neg: {
      auto a = well_conditioned_value(e.operand(), p, bound, margin);
      if (!a) return std::nullopt;
      v = -*a;
      break;
    }
    case Op::Func: {
      auto a = well_conditioned_value(e.operand(), p, bound, margin);
      if (!a) return std::nullopt;
      const double x = *a;
      switch (e.function()) {
        case Fn::Ln:
        case Fn::Sqrt:
          if (x < margin) return std::nullopt;
          break;
        case Fn::Tan:
          if (std::fabs(std::cos(x)) < 0.1) return std::nullopt;
          break;
        case Fn::Exp:
        case Fn::Sinh:
        case Fn::Cosh:
          if (std::fabs(x) > 6.0) return std::nullopt;
          break;
        default: break;
      }
      v = sym::evaluate(sym::Expr::raw_function(e.function(), sym::Expr::constant(x)), {});
      break;
    }
    default: {
      auto a = well_conditioned_value(e.lhs(), p, bound, margin);
      auto b = well_conditioned_value(e.rhs(), p, bound, margin);
      if (!a || !b) return std::nullopt;
      switch (e.op()) {
        case Op::Add: v = *a + *b; break;
        case Op::Sub: v = *a - *b; break;
        case Op::Mul: v = *a * *b; break;
        case Op::Div:
          if (std::fabs(*b) < margin) return std::nullopt;
          v = *a / *b;
          break;
        case Op::Pow:
          if (*b != std::nearbyint(*b) && *a < margin) return std::nullopt;
          if (*b < 0.0 && std::fabs(*a) < margin) return std::nullopt;
          v = std::pow(*a, *b);
          break;
        default: break;
      }
    }
  }
  if (!std::isfinite(v) || std::fabs(v) > bound) return std::nullopt;
  return v;
}

struct ExprCase {
  sym::Expr expr;
  std::vector<Point> points;
};

// The deterministic corpus used by the property checks: `count` expressions of
// depth <= max_depth, each with `points_per_expr` well-conditioned points.
inline std::vector<ExprCase> expression_corpus(std::size_t count = 100, int max_depth = 5,
                                               std::size_t points_per_expr = 10, std::uint64_t seed = 2024) {
  RandomExprGenerator gen(seed);
  std::vector<ExprCase> corpus;
  while (corpus.size() < count) {
    ExprCase c{gen.generate(max_depth), {}};
    for (int attempt = 0; attempt < 200 && c.points.size() < points_per_expr; ++attempt) {
      Point p = gen.point();
      if (well_conditioned_value(c.expr, p)) c.points.push_back(p);
    }
    if (c.points.size() == points_per_expr) corpus.push_back(std::move(c));
  }
  return corpus;
}

}  // namespace acm::testing
