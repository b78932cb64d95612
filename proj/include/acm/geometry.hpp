#pragma once

// Symbolic Riemannian operations on one chart. Every result component is
// simplified. These are exact but grow quickly with the metric's complexity;
// sampled verification goes through LocalGeometry (local.hpp) instead.

#include <stdexcept>
#include <string>

#include "acm/tensor.hpp"

namespace acm {

class SingularMetric : public std::runtime_error {
 public:
  explicit SingularMetric(const std::string& what) : std::runtime_error(what) {}
};

/// Symbolic inverse g^{ij}; throws SingularMetric when det g simplifies to 0.
ExprMatrix inverse_metric(const MetricField& g);

Christoffel christoffel(const MetricField& g);
RiemannTensor riemann(const MetricField& g);
RiemannTensor riemann(const Christoffel& gamma);
SymTensor2 ricci(const MetricField& g);
SymTensor2 ricci(const RiemannTensor& r);
Expr scalar_curvature(const MetricField& g);
Expr scalar_curvature(const ExprMatrix& g_inverse, const SymTensor2& ric);
/// Q^i_j = g^{ik} Ric_kj.
Tensor11 ricci_operator(const MetricField& g);
Tensor11 ricci_operator(const ExprMatrix& g_inverse, const SymTensor2& ric);

/// [X,Y]^i = X^j ∂_j Y^i − Y^j ∂_j X^i.
VectorField lie_bracket(const VectorField& x, const VectorField& y);
/// (∇_D X)^i = D^j (∂_j X^i + Γ^i_jk X^k).
VectorField covariant_derivative_vector(const Christoffel& gamma, const VectorField& x, const VectorField& direction);
/// L_V g from the coordinate formula V^k ∂_k g_ij + g_kj ∂_i V^k + g_ik ∂_j V^k.
SymTensor2 lie_derivative_metric(const MetricField& g, const VectorField& v);
/// (L_V φ)X = [V, φX] − φ[V, X].
Tensor11 lie_derivative_tensor11(const Tensor11& phi, const VectorField& v);

/// Throws std::invalid_argument when degree(α) = dim.
KForm exterior_derivative(const KForm& alpha);
/// Throws std::invalid_argument when the degrees sum past dim.
KForm wedge(const KForm& a, const KForm& b);

VectorField apply(const Tensor11& t, const VectorField& x);
Expr inner(const MetricField& g, const VectorField& x, const VectorField& y);
/// X(F) = X^i ∂_i F.
Expr directional(const VectorField& x, const Expr& f);

/// (DF)^i = g^{ij} ∂_j F.
VectorField gradient(const Expr& f, const MetricField& g);
VectorField gradient(const Expr& f, const ExprMatrix& g_inverse);
/// Hess_ij = ∂_i ∂_j F − Γ^k_ij ∂_k F.
SymTensor2 hessian(const Expr& f, const MetricField& g);
SymTensor2 hessian(const Expr& f, const Christoffel& gamma);
/// div V = ∂_i V^i + Γ^i_ik V^k.
Expr divergence(const VectorField& v, const MetricField& g);
Expr divergence(const VectorField& v, const Christoffel& gamma);
/// ΔF = g^{ij} Hess_ij.
Expr laplacian(const Expr& f, const MetricField& g);

}  // namespace acm
