#include "acm/geometry.hpp"

#include <stdexcept>

#include "acm/simplify.hpp"

namespace acm {

namespace {

using sym::differentiate;
using sym::simplify;

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

ExprMatrix minor_without(const ExprMatrix& m, std::size_t row, std::size_t col) {
  ExprMatrix out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == row) continue;
    std::vector<Expr> r;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != col) r.push_back(m[i][j]);
    }
    out.push_back(std::move(r));
  }
  return out;
}

Expr determinant(const ExprMatrix& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Expr det;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_constant(0.0)) continue;
    const Expr term = m[0][j] * determinant(minor_without(m, 0, j));
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

}  // namespace

ExprMatrix inverse_metric(const MetricField& g) {
  const std::size_t n = g.dim();
  ExprMatrix inv(n, std::vector<Expr>(n));
  if (g.is_diagonal()) {
    for (std::size_t i = 0; i < n; ++i) {
      const Expr d = simplify(g(i, i));
      if (d.is_constant(0.0)) throw SingularMetric("metric has a zero diagonal entry");
      inv[i][i] = simplify(Expr(1.0) / d);
    }
    return inv;
  }
  const Expr det = simplify(determinant(g.components()));
  if (det.is_constant(0.0)) throw SingularMetric("metric determinant is identically zero");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Expr cof = determinant(minor_without(g.components(), j, i));
      inv[i][j] = simplify(((i + j) % 2 == 0 ? cof : -cof) / det);
    }
  }
  return inv;
}

Christoffel christoffel(const MetricField& g) {
  const std::size_t n = g.dim();
  const ExprMatrix inv = inverse_metric(g);
  // dg[a][i][j] = ∂_a g_ij
  std::vector<ExprMatrix> dg(n, ExprMatrix(n, std::vector<Expr>(n)));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) dg[a][i][j] = simplify(differentiate(g(i, j), a));
    }
  }
  Christoffel gamma{n, std::vector<Expr>(n * n * n)};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        Expr sum;
        for (std::size_t l = 0; l < n; ++l) {
          if (inv[k][l].is_constant(0.0)) continue;
          sum = sum + inv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        }
        gamma(k, i, j) = simplify(0.5 * sum);
        gamma(k, j, i) = gamma(k, i, j);
      }
    }
  }
  return gamma;
}

RiemannTensor riemann(const Christoffel& gamma) {
  const std::size_t n = gamma.n;
  RiemannTensor r{n, std::vector<Expr>(n * n * n * n)};
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          Expr e = differentiate(gamma(l, j, k), i) - differentiate(gamma(l, i, k), j);
          for (std::size_t m = 0; m < n; ++m) {
            e = e + gamma(l, i, m) * gamma(m, j, k) - gamma(l, j, m) * gamma(m, i, k);
          }
          r(l, i, j, k) = simplify(e);
          r(l, j, i, k) = simplify(-r(l, i, j, k));
        }
      }
    }
  }
  return r;
}

RiemannTensor riemann(const MetricField& g) { return riemann(christoffel(g)); }

SymTensor2 ricci(const RiemannTensor& r) {
  const std::size_t n = r.n;
  SymTensor2 ric{ExprMatrix(n, std::vector<Expr>(n))};
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      Expr sum;
      for (std::size_t i = 0; i < n; ++i) sum = sum + r(i, i, j, k);
      ric.m[j][k] = simplify(sum);
    }
  }
  return ric;
}

SymTensor2 ricci(const MetricField& g) { return ricci(riemann(g)); }

Expr scalar_curvature(const ExprMatrix& g_inverse, const SymTensor2& ric) {
  Expr sum;
  for (std::size_t j = 0; j < ric.dim(); ++j) {
    for (std::size_t k = 0; k < ric.dim(); ++k) sum = sum + g_inverse[j][k] * ric(j, k);
  }
  return simplify(sum);
}

Expr scalar_curvature(const MetricField& g) { return scalar_curvature(inverse_metric(g), ricci(g)); }

Tensor11 ricci_operator(const ExprMatrix& g_inverse, const SymTensor2& ric) {
  const std::size_t n = ric.dim();
  Tensor11 q = Tensor11::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Expr sum;
      for (std::size_t k = 0; k < n; ++k) sum = sum + g_inverse[i][k] * ric(k, j);
      q.m[i][j] = simplify(sum);
    }
  }
  return q;
}

Tensor11 ricci_operator(const MetricField& g) { return ricci_operator(inverse_metric(g), ricci(g)); }

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  require_same_dim(x.dim(), y.dim(), "lie_bracket");
  const std::size_t n = x.dim();
  VectorField out = VectorField::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    Expr sum;
    for (std::size_t j = 0; j < n; ++j) {
      sum = sum + x[j] * differentiate(y[i], j) - y[j] * differentiate(x[i], j);
    }
    out.c[i] = simplify(sum);
  }
  return out;
}

VectorField covariant_derivative_vector(const Christoffel& gamma, const VectorField& x, const VectorField& direction) {
  require_same_dim(gamma.n, x.dim(), "covariant_derivative_vector");
  require_same_dim(gamma.n, direction.dim(), "covariant_derivative_vector");
  const std::size_t n = gamma.n;
  VectorField out = VectorField::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    Expr sum;
    for (std::size_t j = 0; j < n; ++j) {
      Expr inner = differentiate(x[i], j);
      for (std::size_t k = 0; k < n; ++k) inner = inner + gamma(i, j, k) * x[k];
      sum = sum + direction[j] * inner;
    }
    out.c[i] = simplify(sum);
  }
  return out;
}

SymTensor2 lie_derivative_metric(const MetricField& g, const VectorField& v) {
  require_same_dim(g.dim(), v.dim(), "lie_derivative_metric");
  const std::size_t n = g.dim();
  SymTensor2 out{ExprMatrix(n, std::vector<Expr>(n))};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      Expr sum;
      for (std::size_t k = 0; k < n; ++k) {
        sum = sum + v[k] * differentiate(g(i, j), k) + g(k, j) * differentiate(v[k], i) +
              g(i, k) * differentiate(v[k], j);
      }
      out.m[i][j] = simplify(sum);
      out.m[j][i] = out.m[i][j];
    }
  }
  return out;
}

Tensor11 lie_derivative_tensor11(const Tensor11& phi, const VectorField& v) {
  require_same_dim(phi.dim(), v.dim(), "lie_derivative_tensor11");
  const std::size_t n = phi.dim();
  Tensor11 out = Tensor11::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Expr sum;
      for (std::size_t k = 0; k < n; ++k) {
        sum = sum + v[k] * differentiate(phi(i, j), k) - phi(k, j) * differentiate(v[i], k) +
              phi(i, k) * differentiate(v[k], j);
      }
      out.m[i][j] = simplify(sum);
    }
  }
  return out;
}

KForm exterior_derivative(const KForm& alpha) {
  const std::size_t n = alpha.dim();
  const std::size_t k = alpha.degree();
  if (k >= n) throw std::invalid_argument("exterior derivative of a top-degree form");
  KForm out(n, k + 1);
  for (const auto& idx : increasing_tuples(n, k + 1)) {
    Expr sum;
    for (std::size_t r = 0; r <= k; ++r) {
      KForm::Index rest;
      for (std::size_t s = 0; s <= k; ++s) {
        if (s != r) rest.push_back(idx[s]);
      }
      const Expr d = differentiate(alpha.at(rest), idx[r]);
      sum = (r % 2 == 0) ? sum + d : sum - d;
    }
    out.set(idx, simplify(sum));
  }
  return out;
}

KForm wedge(const KForm& a, const KForm& b) {
  require_same_dim(a.dim(), b.dim(), "wedge");
  const std::size_t n = a.dim();
  const std::size_t p = a.degree();
  const std::size_t q = b.degree();
  if (p + q > n) throw std::invalid_argument("wedge degree exceeds dimension");
  KForm out(n, p + q);
  for (const auto& idx : increasing_tuples(n, p + q)) {
    Expr sum;
    // each choice of p positions for a's indices is a shuffle with its sign
    for (const auto& pos : increasing_tuples(p + q, p)) {
      KForm::Index ia;
      KForm::Index ib;
      std::size_t inversions = 0;
      std::size_t next = 0;
      for (std::size_t s = 0; s < p + q; ++s) {
        if (next < p && pos[next] == s) {
          ia.push_back(idx[s]);
          inversions += s - next;  // b-indices placed before this a-index
          ++next;
        } else {
          ib.push_back(idx[s]);
        }
      }
      const Expr term = a.at(ia) * b.at(ib);
      sum = (inversions % 2 == 0) ? sum + term : sum - term;
    }
    out.set(idx, simplify(sum));
  }
  return out;
}

VectorField apply(const Tensor11& t, const VectorField& x) {
  require_same_dim(t.dim(), x.dim(), "apply");
  VectorField out = VectorField::zero(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i) {
    Expr sum;
    for (std::size_t j = 0; j < x.dim(); ++j) sum = sum + t(i, j) * x[j];
    out.c[i] = simplify(sum);
  }
  return out;
}

Expr inner(const MetricField& g, const VectorField& x, const VectorField& y) {
  Expr sum;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) sum = sum + g(i, j) * x[i] * y[j];
  }
  return simplify(sum);
}

Expr directional(const VectorField& x, const Expr& f) {
  Expr sum;
  for (std::size_t i = 0; i < x.dim(); ++i) sum = sum + x[i] * differentiate(f, i);
  return simplify(sum);
}

VectorField gradient(const Expr& f, const ExprMatrix& g_inverse) {
  const std::size_t n = g_inverse.size();
  VectorField out = VectorField::zero(n);
  for (std::size_t i = 0; i < n; ++i) {
    Expr sum;
    for (std::size_t j = 0; j < n; ++j) sum = sum + g_inverse[i][j] * differentiate(f, j);
    out.c[i] = simplify(sum);
  }
  return out;
}

VectorField gradient(const Expr& f, const MetricField& g) { return gradient(f, inverse_metric(g)); }

SymTensor2 hessian(const Expr& f, const Christoffel& gamma) {
  const std::size_t n = gamma.n;
  SymTensor2 out{ExprMatrix(n, std::vector<Expr>(n))};
  for (std::size_t i = 0; i < n; ++i) {
    const Expr fi = differentiate(f, i);
    for (std::size_t j = i; j < n; ++j) {
      Expr e = differentiate(fi, j);
      for (std::size_t k = 0; k < n; ++k) e = e - gamma(k, i, j) * differentiate(f, k);
      out.m[i][j] = simplify(e);
      out.m[j][i] = out.m[i][j];
    }
  }
  return out;
}

SymTensor2 hessian(const Expr& f, const MetricField& g) { return hessian(f, christoffel(g)); }

Expr divergence(const VectorField& v, const Christoffel& gamma) {
  require_same_dim(gamma.n, v.dim(), "divergence");
  Expr sum;
  for (std::size_t i = 0; i < gamma.n; ++i) {
    sum = sum + differentiate(v[i], i);
    for (std::size_t k = 0; k < gamma.n; ++k) sum = sum + gamma(i, i, k) * v[k];
  }
  return simplify(sum);
}

Expr divergence(const VectorField& v, const MetricField& g) { return divergence(v, christoffel(g)); }

Expr laplacian(const Expr& f, const MetricField& g) {
  const ExprMatrix inv = inverse_metric(g);
  const SymTensor2 hess = hessian(f, christoffel(g));
  Expr sum;
  for (std::size_t i = 0; i < g.dim(); ++i) {
    for (std::size_t j = 0; j < g.dim(); ++j) sum = sum + inv[i][j] * hess(i, j);
  }
  return simplify(sum);
}

}  // namespace acm
