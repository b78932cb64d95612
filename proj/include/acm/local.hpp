#pragma once

// Pointwise Riemannian geometry from exact derivatives of the metric.
//
// MetricJets differentiates g symbolically up to third order once; at() then
// evaluates those derivatives at a point and assembles Γ, ∂Γ, ∂²Γ, Riemann,
// its first derivatives, Ricci, ∇Ric, R and dR by dense contraction. No
// symbolic inversion or simplification is involved, so this scales to any
// metric the expression language can write down.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "acm/tensor.hpp"

namespace acm {

/// Dense n^Rank array of doubles.
template <std::size_t Rank>
class Array {
 public:
  Array() = default;
  explicit Array(std::size_t n) : n_(n), data_(power(n)) {}

  std::size_t dim() const { return n_; }

  template <class... I>
  double& operator()(I... idx) {
    static_assert(sizeof...(I) == Rank);
    return data_[flat({static_cast<std::size_t>(idx)...})];
  }
  template <class... I>
  double operator()(I... idx) const {
    static_assert(sizeof...(I) == Rank);
    return data_[flat({static_cast<std::size_t>(idx)...})];
  }

  const std::vector<double>& data() const { return data_; }

 private:
  static std::size_t power(std::size_t n) {
    std::size_t s = 1;
    for (std::size_t r = 0; r < Rank; ++r) s *= n;
    return s;
  }
  std::size_t flat(const std::array<std::size_t, Rank>& idx) const {
    std::size_t f = 0;
    for (std::size_t r = 0; r < Rank; ++r) f = f * n_ + idx[r];
    return f;
  }

  std::size_t n_ = 0;
  std::vector<double> data_;
};

using Vec = std::vector<double>;

/// Raised when the metric is not positive definite at a point (some leading
/// principal minor below the threshold).
class DegenerateMetric : public std::runtime_error {
 public:
  explicit DegenerateMetric(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kMinorThreshold = 1e-10;

/// Value, gradient and Hessian of a scalar at a point.
struct ScalarJet {
  double v = 0.0;
  Vec d;           // ∂_a
  Array<2> dd;     // ∂_a ∂_b
};

/// Value and first derivatives of a vector field at a point.
struct VectorJet {
  Vec v;           // X^i
  Array<2> d;      // (a, i) = ∂_a X^i
};

/// A scalar expression with its derivatives precomputed to second order.
class ScalarField {
 public:
  ScalarField(Expr e, std::size_t dim);
  const Expr& expr() const { return e_; }
  ScalarJet at(std::span<const double> p) const;

 private:
  Expr e_;
  std::vector<Expr> d_;
  std::vector<Expr> dd_;  // row-major n×n
};

/// A vector field with first derivatives precomputed.
class VectorFieldJets {
 public:
  explicit VectorFieldJets(const VectorField& x);
  VectorJet at(std::span<const double> p) const;

 private:
  std::vector<Expr> v_;
  std::vector<Expr> d_;  // (a, i) row-major
};

struct LocalGeometry {
  std::size_t n = 0;
  Point p;
  Array<2> g, ginv;
  Array<3> dg;           // (a, i, j) = ∂_a g_ij
  Array<4> ddg;          // (a, b, i, j)
  Array<3> dginv;        // (a, i, j) = ∂_a g^ij
  Array<3> gamma;        // (k, i, j) = Γ^k_ij
  Array<4> dgamma;       // (a, k, i, j) = ∂_a Γ^k_ij
  Array<4> riemann;      // (l, i, j, k) = R^l_ijk
  Array<5> driemann;     // (a, l, i, j, k)
  Array<2> ricci;        // (j, k) = R^i_ijk
  Array<3> dricci;       // (a, j, k) = ∂_a Ric_jk
  Array<3> nabla_ricci;  // (a, j, k) = (∇_a Ric)_jk
  double scalar = 0.0;
  Vec dscalar;           // ∂_a R

  double inner(std::span<const double> x, std::span<const double> y) const;
  Vec lower(std::span<const double> x) const;
  Vec raise(std::span<const double> a) const;
  /// Q^i_j = g^{ik} Ric_kj.
  Array<2> ricci_operator() const;
  Vec apply_ricci_operator(std::span<const double> x) const;
  /// R(X,Y)Z.
  Vec curvature(std::span<const double> x, std::span<const double> y, std::span<const double> z) const;
  /// Rm_ijkl = g(R(∂_i, ∂_j)∂_k, ∂_l).
  Array<4> lowered_riemann() const;
  /// (a, i) = ∇_a X^i.
  Array<2> nabla(const VectorJet& x) const;
  double divergence(const VectorJet& x) const;
  /// (L_X g)_ij.
  Array<2> lie_derivative_metric(const VectorJet& x) const;
  /// ∇dF, symmetric.
  Array<2> hessian(const ScalarJet& f) const;
  /// Jet of DF from a jet of F (needs only ∂F and ∂²F).
  VectorJet gradient(const ScalarJet& f) const;
  /// g-norm of a covariant 2-tensor, g^{ik} g^{jl} S_ij S_kl.
  double norm_squared(const Array<2>& s) const;
};

class MetricJets {
 public:
  explicit MetricJets(const MetricField& g);
  std::size_t dim() const { return n_; }
  const MetricField& metric() const { return g_; }

  /// Throws DegenerateMetric or sym::DomainError.
  LocalGeometry at(std::span<const double> p) const;
  /// Metric values only, with the same degeneracy test.
  Array<2> metric_at(std::span<const double> p) const;

 private:
  MetricField g_;
  std::size_t n_;
  // Symmetric storage: one entry per (i<=j) and per sorted derivative index.
  std::vector<Expr> d1_;  // [(a)(ij)]
  std::vector<Expr> d2_;  // [(a,b)(ij)]
  std::vector<Expr> d3_;  // [(a,b,c)(ij)]
};

/// Gram–Schmidt of the coordinate basis at the point. With `distinguished`
/// given, it is normalized first, the coordinate vectors are orthogonalized
/// against it, and it is returned last. Throws DegenerateMetric.
std::vector<Vec> orthonormal_frame(const Array<2>& g, std::optional<Vec> distinguished = std::nullopt);

struct RiemannSymmetry {
  double antisym_first_pair = 0.0;   // Rm_ijkl + Rm_jikl
  double antisym_second_pair = 0.0;  // Rm_ijkl + Rm_ijlk
  double pair_exchange = 0.0;        // Rm_ijkl − Rm_klij
  double first_bianchi = 0.0;        // Rm_ijkl + Rm_jkil + Rm_kijl
  double scale = 1.0;                // max(1, max |Rm|)
};

RiemannSymmetry riemann_symmetry_residuals(const LocalGeometry& L);

/// max |∂_a g_ij − Γ^m_ai g_mj − Γ^m_aj g_im|.
double metric_compatibility_residual(const LocalGeometry& L);

/// |Σ_i [(∇_Z Ric)(e_i,e_i) − 2(∇_{e_i} Ric)(e_i,Z)]| over an orthonormal frame.
double contracted_bianchi_residual(const LocalGeometry& L, std::span<const double> z);

/// Max over coordinate X, Y, Z of the deviation of R(X,Y)Z from the
/// three-dimensional decomposition through Q, Ric and R. Requires n = 3.
double curvature_3d_decomposition_residual(const LocalGeometry& L);

}  // namespace acm
