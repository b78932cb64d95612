#pragma once

// Expression-valued tensor fields on a single coordinate chart.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "acm/expr.hpp"

namespace acm {

using ExprMatrix = std::vector<std::vector<Expr>>;

class Chart {
 public:
  /// Throws std::invalid_argument on an empty, duplicate or malformed name.
  explicit Chart(std::vector<std::string> names);

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t index_of(std::string_view name) const;
  Expr coordinate(std::size_t i) const { return Expr::variable(i, names_[i]); }
  Expr parse(std::string_view source) const;

 private:
  std::vector<std::string> names_;
};

struct VectorField {
  std::vector<Expr> c;  // contravariant components X^i

  std::size_t dim() const { return c.size(); }
  const Expr& operator[](std::size_t i) const { return c[i]; }
  static VectorField zero(std::size_t n) { return {std::vector<Expr>(n)}; }
  static VectorField coordinate(std::size_t n, std::size_t i);
};

struct OneForm {
  std::vector<Expr> c;  // covariant components

  std::size_t dim() const { return c.size(); }
  const Expr& operator[](std::size_t i) const { return c[i]; }
};

/// Mixed (1,1) tensor; m[i][j] = T^i_j, so (TX)^i = T^i_j X^j.
struct Tensor11 {
  ExprMatrix m;

  std::size_t dim() const { return m.size(); }
  const Expr& operator()(std::size_t i, std::size_t j) const { return m[i][j]; }
  static Tensor11 zero(std::size_t n);
  static Tensor11 identity(std::size_t n);
};

/// Symmetric covariant 2-tensor.
struct SymTensor2 {
  ExprMatrix m;

  std::size_t dim() const { return m.size(); }
  const Expr& operator()(std::size_t i, std::size_t j) const { return m[i][j]; }
};

class MetricField {
 public:
  /// Throws std::invalid_argument unless g is square and symmetric after simplification.
  explicit MetricField(ExprMatrix g);

  std::size_t dim() const { return g_.size(); }
  const Expr& operator()(std::size_t i, std::size_t j) const { return g_[i][j]; }
  const ExprMatrix& components() const { return g_; }
  bool is_diagonal() const;

 private:
  ExprMatrix g_;
};

struct Christoffel {
  std::size_t n = 0;
  std::vector<Expr> data;  // Γ^k_ij at (k*n + i)*n + j

  const Expr& operator()(std::size_t k, std::size_t i, std::size_t j) const { return data[(k * n + i) * n + j]; }
  Expr& operator()(std::size_t k, std::size_t i, std::size_t j) { return data[(k * n + i) * n + j]; }
};

/// R^l_ijk with R(∂_i, ∂_j)∂_k = R^l_ijk ∂_l and R(X,Y) = [∇_X, ∇_Y] − ∇_[X,Y].
struct RiemannTensor {
  std::size_t n = 0;
  std::vector<Expr> data;

  const Expr& operator()(std::size_t l, std::size_t i, std::size_t j, std::size_t k) const {
    return data[((l * n + i) * n + j) * n + k];
  }
  Expr& operator()(std::size_t l, std::size_t i, std::size_t j, std::size_t k) {
    return data[((l * n + i) * n + j) * n + k];
  }
};

/// Differential k-form; components live on strictly increasing index tuples,
/// absent tuples are zero. dx^0∧dx^1 has component 1 at (0, 1).
class KForm {
 public:
  using Index = std::vector<std::size_t>;

  KForm(std::size_t dim, std::size_t degree);
  static KForm scalar(std::size_t dim, Expr f);
  static KForm from_one_form(const OneForm& a);

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  const std::map<Index, Expr>& components() const { return comps_; }

  /// Component at any index tuple, with the permutation sign applied.
  Expr at(const Index& idx) const;
  /// Sets the component at an increasing tuple; zero values are dropped.
  void set(const Index& idx, Expr value);

  /// α(X_1, ..., X_k) at a point, given the vectors' values there.
  double evaluate(std::span<const double> p, const std::vector<std::vector<double>>& vectors) const;

 private:
  std::size_t dim_;
  std::size_t degree_;
  std::map<Index, Expr> comps_;
};

/// All strictly increasing k-tuples from {0, ..., n-1}, lexicographic.
std::vector<KForm::Index> increasing_tuples(std::size_t n, std::size_t k);

// Pointwise numeric values of the fields.
std::vector<double> evaluate(const VectorField& v, std::span<const double> p);
std::vector<double> evaluate(const OneForm& a, std::span<const double> p);
std::vector<std::vector<double>> evaluate(const ExprMatrix& m, std::span<const double> p);

}  // namespace acm
