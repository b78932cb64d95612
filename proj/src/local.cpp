#include "acm/local.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace acm {

namespace {

using Mat = Eigen::MatrixXd;

std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i + 1) / 2 + j;
}

Mat to_eigen(const Array<2>& a) {
  const std::size_t n = a.dim();
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
  }
  return m;
}

void check_minors(const Mat& g) {
  for (Eigen::Index k = 1; k <= g.rows(); ++k) {
    const double minor = g.topLeftCorner(k, k).determinant();
    if (!(minor >= kMinorThreshold)) {
      throw DegenerateMetric("leading principal minor " + std::to_string(k) + " is " + std::to_string(minor));
    }
  }
}

}  // namespace

ScalarField::ScalarField(Expr e, std::size_t dim) : e_(std::move(e)), d_(dim), dd_(dim * dim) {
  for (std::size_t a = 0; a < dim; ++a) d_[a] = sym::differentiate(e_, a);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = a; b < dim; ++b) {
      dd_[a * dim + b] = sym::differentiate(d_[a], b);
      dd_[b * dim + a] = dd_[a * dim + b];
    }
  }
}

ScalarJet ScalarField::at(std::span<const double> p) const {
  const std::size_t n = d_.size();
  ScalarJet j{sym::evaluate(e_, p), Vec(n), Array<2>(n)};
  for (std::size_t a = 0; a < n; ++a) j.d[a] = sym::evaluate(d_[a], p);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      j.dd(a, b) = sym::evaluate(dd_[a * n + b], p);
      j.dd(b, a) = j.dd(a, b);
    }
  }
  return j;
}

VectorFieldJets::VectorFieldJets(const VectorField& x) : v_(x.c), d_(x.dim() * x.dim()) {
  const std::size_t n = x.dim();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) d_[a * n + i] = sym::differentiate(x[i], a);
  }
}

VectorJet VectorFieldJets::at(std::span<const double> p) const {
  const std::size_t n = v_.size();
  VectorJet j{Vec(n), Array<2>(n)};
  for (std::size_t i = 0; i < n; ++i) j.v[i] = sym::evaluate(v_[i], p);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) j.d(a, i) = sym::evaluate(d_[a * n + i], p);
  }
  return j;
}

MetricJets::MetricJets(const MetricField& g) : g_(g), n_(g.dim()) {
  const std::size_t n = n_;
  const std::size_t P = n * (n + 1) / 2;
  d1_.resize(n * P);
  d2_.resize(n * n * P);
  d3_.resize(n * n * n * P);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const std::size_t q = pair_index(i, j, n);
      for (std::size_t a = 0; a < n; ++a) d1_[a * P + q] = sym::differentiate(g(i, j), a);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
          const Expr e2 = sym::differentiate(d1_[a * P + q], b);
          d2_[(a * n + b) * P + q] = e2;
          d2_[(b * n + a) * P + q] = e2;
          for (std::size_t c = b; c < n; ++c) {
            const Expr e3 = sym::differentiate(e2, c);
            const std::size_t idx[3] = {a, b, c};
            std::size_t perm[3] = {0, 1, 2};
            do {
              d3_[((idx[perm[0]] * n + idx[perm[1]]) * n + idx[perm[2]]) * P + q] = e3;
            } while (std::next_permutation(perm, perm + 3));
          }
        }
      }
    }
  }
}

Array<2> MetricJets::metric_at(std::span<const double> p) const {
  if (p.size() != n_) throw std::invalid_argument("point arity does not match chart dimension");
  Array<2> g(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i; j < n_; ++j) {
      g(i, j) = sym::evaluate(g_(i, j), p);
      g(j, i) = g(i, j);
    }
  }
  check_minors(to_eigen(g));
  return g;
}

LocalGeometry MetricJets::at(std::span<const double> p) const {
  const std::size_t n = n_;
  const std::size_t P = n * (n + 1) / 2;
  LocalGeometry L;
  L.n = n;
  L.p.assign(p.begin(), p.end());
  L.g = metric_at(p);

  const Mat G = to_eigen(L.g).inverse();
  L.ginv = Array<2>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) L.ginv(i, j) = G(i, j);
  }

  L.dg = Array<3>(n);
  L.ddg = Array<4>(n);
  Array<5> dddg(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const std::size_t q = pair_index(i, j, n);
      for (std::size_t a = 0; a < n; ++a) {
        L.dg(a, i, j) = L.dg(a, j, i) = sym::evaluate(d1_[a * P + q], p);
        for (std::size_t b = a; b < n; ++b) {
          const double v2 = sym::evaluate(d2_[(a * n + b) * P + q], p);
          L.ddg(a, b, i, j) = L.ddg(a, b, j, i) = L.ddg(b, a, i, j) = L.ddg(b, a, j, i) = v2;
          for (std::size_t c = b; c < n; ++c) {
            const double v3 = sym::evaluate(d3_[((a * n + b) * n + c) * P + q], p);
            const std::size_t idx[3] = {a, b, c};
            std::size_t perm[3] = {0, 1, 2};
            do {
              dddg(idx[perm[0]], idx[perm[1]], idx[perm[2]], i, j) = v3;
              dddg(idx[perm[0]], idx[perm[1]], idx[perm[2]], j, i) = v3;
            } while (std::next_permutation(perm, perm + 3));
          }
        }
      }
    }
  }

  // ∂G = −G ∂g G,  ∂∂G = −G ∂∂g G + G ∂g_a G ∂g_b G + G ∂g_b G ∂g_a G
  std::vector<Mat> dgm(n);
  std::vector<Mat> GdgG(n);
  for (std::size_t a = 0; a < n; ++a) {
    dgm[a] = Mat(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) dgm[a](i, j) = L.dg(a, i, j);
    }
    GdgG[a] = G * dgm[a] * G;
  }
  L.dginv = Array<3>(n);
  Array<4> ddginv(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) L.dginv(a, i, j) = -GdgG[a](i, j);
    }
    for (std::size_t b = 0; b < n; ++b) {
      Mat ddgm(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) ddgm(i, j) = L.ddg(a, b, i, j);
      }
      const Mat m = -G * ddgm * G + GdgG[a] * dgm[b] * G + GdgG[b] * dgm[a] * G;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) ddginv(a, b, i, j) = m(i, j);
      }
    }
  }

  // C_lij = ∂_i g_jl + ∂_j g_il − ∂_l g_ij and its derivatives
  Array<3> C(n);
  Array<4> dC(n);
  Array<5> ddC(n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        C(l, i, j) = L.dg(i, j, l) + L.dg(j, i, l) - L.dg(l, i, j);
        for (std::size_t a = 0; a < n; ++a) {
          dC(a, l, i, j) = L.ddg(a, i, j, l) + L.ddg(a, j, i, l) - L.ddg(a, l, i, j);
          for (std::size_t b = 0; b < n; ++b) {
            ddC(a, b, l, i, j) = dddg(a, b, i, j, l) + dddg(a, b, j, i, l) - dddg(a, b, l, i, j);
          }
        }
      }
    }
  }

  L.gamma = Array<3>(n);
  L.dgamma = Array<4>(n);
  Array<5> ddgamma(n);  // (a, b, k, i, j), with a <= b filled symmetrically
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < n; ++l) s += L.ginv(k, l) * C(l, i, j);
        L.gamma(k, i, j) = 0.5 * s;
        for (std::size_t a = 0; a < n; ++a) {
          double s1 = 0.0;
          for (std::size_t l = 0; l < n; ++l) s1 += L.dginv(a, k, l) * C(l, i, j) + L.ginv(k, l) * dC(a, l, i, j);
          L.dgamma(a, k, i, j) = 0.5 * s1;
          for (std::size_t b = a; b < n; ++b) {
            double s2 = 0.0;
            for (std::size_t l = 0; l < n; ++l) {
              s2 += ddginv(a, b, k, l) * C(l, i, j) + L.dginv(a, k, l) * dC(b, l, i, j) +
                    L.dginv(b, k, l) * dC(a, l, i, j) + L.ginv(k, l) * ddC(a, b, l, i, j);
            }
            ddgamma(a, b, k, i, j) = ddgamma(b, a, k, i, j) = 0.5 * s2;
          }
        }
      }
    }
  }

  // R^l_ijk = ∂_i Γ^l_jk − ∂_j Γ^l_ik + Γ^l_im Γ^m_jk − Γ^l_jm Γ^m_ik
  L.riemann = Array<4>(n);
  L.driemann = Array<5>(n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          double r = L.dgamma(i, l, j, k) - L.dgamma(j, l, i, k);
          for (std::size_t m = 0; m < n; ++m) r += L.gamma(l, i, m) * L.gamma(m, j, k) - L.gamma(l, j, m) * L.gamma(m, i, k);
          L.riemann(l, i, j, k) = r;
          for (std::size_t a = 0; a < n; ++a) {
            double dr = ddgamma(a, i, l, j, k) - ddgamma(a, j, l, i, k);
            for (std::size_t m = 0; m < n; ++m) {
              dr += L.dgamma(a, l, i, m) * L.gamma(m, j, k) + L.gamma(l, i, m) * L.dgamma(a, m, j, k) -
                    L.dgamma(a, l, j, m) * L.gamma(m, i, k) - L.gamma(l, j, m) * L.dgamma(a, m, i, k);
            }
            L.driemann(a, l, i, j, k) = dr;
          }
        }
      }
    }
  }

  L.ricci = Array<2>(n);
  L.dricci = Array<3>(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      double r = 0.0;
      for (std::size_t i = 0; i < n; ++i) r += L.riemann(i, i, j, k);
      L.ricci(j, k) = r;
      for (std::size_t a = 0; a < n; ++a) {
        double dr = 0.0;
        for (std::size_t i = 0; i < n; ++i) dr += L.driemann(a, i, i, j, k);
        L.dricci(a, j, k) = dr;
      }
    }
  }

  L.nabla_ricci = Array<3>(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        double v = L.dricci(a, j, k);
        for (std::size_t m = 0; m < n; ++m) v -= L.gamma(m, a, j) * L.ricci(m, k) + L.gamma(m, a, k) * L.ricci(j, m);
        L.nabla_ricci(a, j, k) = v;
      }
    }
  }

  L.scalar = 0.0;
  L.dscalar.assign(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      L.scalar += L.ginv(j, k) * L.ricci(j, k);
      for (std::size_t a = 0; a < n; ++a) {
        L.dscalar[a] += L.dginv(a, j, k) * L.ricci(j, k) + L.ginv(j, k) * L.dricci(a, j, k);
      }
    }
  }
  return L;
}

double LocalGeometry::inner(std::span<const double> x, std::span<const double> y) const {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s += g(i, j) * x[i] * y[j];
  }
  return s;
}

Vec LocalGeometry::lower(std::span<const double> x) const {
  Vec out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += g(i, j) * x[j];
  }
  return out;
}

Vec LocalGeometry::raise(std::span<const double> a) const {
  Vec out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += ginv(i, j) * a[j];
  }
  return out;
}

Array<2> LocalGeometry::ricci_operator() const {
  Array<2> q(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += ginv(i, k) * ricci(k, j);
      q(i, j) = s;
    }
  }
  return q;
}

Vec LocalGeometry::apply_ricci_operator(std::span<const double> x) const {
  const Array<2> q = ricci_operator();
  Vec out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i] += q(i, j) * x[j];
  }
  return out;
}

Vec LocalGeometry::curvature(std::span<const double> x, std::span<const double> y, std::span<const double> z) const {
  Vec out(n, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (x[i] == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (y[j] == 0.0) continue;
        for (std::size_t k = 0; k < n; ++k) s += riemann(l, i, j, k) * x[i] * y[j] * z[k];
      }
    }
    out[l] = s;
  }
  return out;
}

Array<4> LocalGeometry::lowered_riemann() const {
  Array<4> rm(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          double s = 0.0;
          for (std::size_t m = 0; m < n; ++m) s += g(l, m) * riemann(m, i, j, k);
          rm(i, j, k, l) = s;
        }
      }
    }
  }
  return rm;
}

Array<2> LocalGeometry::nabla(const VectorJet& x) const {
  Array<2> out(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = x.d(a, i);
      for (std::size_t k = 0; k < n; ++k) s += gamma(i, a, k) * x.v[k];
      out(a, i) = s;
    }
  }
  return out;
}

double LocalGeometry::divergence(const VectorJet& x) const {
  const Array<2> nx = nabla(x);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += nx(i, i);
  return s;
}

Array<2> LocalGeometry::lie_derivative_metric(const VectorJet& x) const {
  Array<2> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        s += x.v[k] * dg(k, i, j) + g(k, j) * x.d(i, k) + g(i, k) * x.d(j, k);
      }
      out(i, j) = s;
    }
  }
  return out;
}

Array<2> LocalGeometry::hessian(const ScalarJet& f) const {
  Array<2> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = f.dd(i, j);
      for (std::size_t k = 0; k < n; ++k) s -= gamma(k, i, j) * f.d[k];
      out(i, j) = s;
    }
  }
  return out;
}

VectorJet LocalGeometry::gradient(const ScalarJet& f) const {
  VectorJet out{raise(f.d), Array<2>(n)};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += dginv(a, i, j) * f.d[j] + ginv(i, j) * f.dd(a, j);
      out.d(a, i) = s;
    }
  }
  return out;
}

double LocalGeometry::norm_squared(const Array<2>& s) const {
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) total += ginv(i, k) * ginv(j, l) * s(i, j) * s(k, l);
      }
    }
  }
  return total;
}

std::vector<Vec> orthonormal_frame(const Array<2>& g, std::optional<Vec> distinguished) {
  const std::size_t n = g.dim();
  check_minors(to_eigen(g));
  auto dot = [&](const Vec& x, const Vec& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) s += g(i, j) * x[i] * y[j];
    }
    return s;
  };
  std::vector<Vec> basis;
  if (distinguished) {
    if (distinguished->size() != n) throw std::invalid_argument("distinguished vector has the wrong arity");
    const double len = std::sqrt(dot(*distinguished, *distinguished));
    if (!(len > 1e-12)) throw DegenerateMetric("distinguished vector vanishes");
    Vec e = *distinguished;
    for (double& c : e) c /= len;
    basis.push_back(std::move(e));
  }
  for (std::size_t k = 0; k < n && basis.size() < n; ++k) {
    Vec v(n, 0.0);
    v[k] = 1.0;
    const double original = std::sqrt(dot(v, v));
    for (int pass = 0; pass < 2; ++pass) {  // re-orthogonalize once for stability
      for (const Vec& e : basis) {
        const double c = dot(v, e);
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * e[i];
      }
    }
    const double len = std::sqrt(dot(v, v));
    if (len <= 1e-8 * original) continue;  // coordinate direction already spanned
    for (double& c : v) c /= len;
    basis.push_back(std::move(v));
  }
  if (basis.size() != n) throw DegenerateMetric("could not complete an orthonormal frame");
  if (distinguished) std::rotate(basis.begin(), basis.begin() + 1, basis.end());
  return basis;
}

RiemannSymmetry riemann_symmetry_residuals(const LocalGeometry& L) {
  const std::size_t n = L.n;
  const Array<4> rm = L.lowered_riemann();
  RiemannSymmetry r;
  for (double v : rm.data()) r.scale = std::max(r.scale, std::fabs(v));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          r.antisym_first_pair = std::max(r.antisym_first_pair, std::fabs(rm(i, j, k, l) + rm(j, i, k, l)));
          r.antisym_second_pair = std::max(r.antisym_second_pair, std::fabs(rm(i, j, k, l) + rm(i, j, l, k)));
          r.pair_exchange = std::max(r.pair_exchange, std::fabs(rm(i, j, k, l) - rm(k, l, i, j)));
          r.first_bianchi =
              std::max(r.first_bianchi, std::fabs(rm(i, j, k, l) + rm(j, k, i, l) + rm(k, i, j, l)));
        }
      }
    }
  }
  return r;
}

double metric_compatibility_residual(const LocalGeometry& L) {
  const std::size_t n = L.n;
  double worst = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double v = L.dg(a, i, j);
        for (std::size_t m = 0; m < n; ++m) v -= L.gamma(m, a, i) * L.g(m, j) + L.gamma(m, a, j) * L.g(i, m);
        worst = std::max(worst, std::fabs(v));
      }
    }
  }
  return worst;
}

double contracted_bianchi_residual(const LocalGeometry& L, std::span<const double> z) {
  const std::size_t n = L.n;
  const std::vector<Vec> frame = orthonormal_frame(L.g);
  auto nabla_ric = [&](std::span<const double> dir, std::span<const double> x, std::span<const double> y) {
    double s = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) s += dir[a] * L.nabla_ricci(a, j, k) * x[j] * y[k];
      }
    }
    return s;
  };
  double total = 0.0;
  for (const Vec& e : frame) total += nabla_ric(z, e, e) - 2.0 * nabla_ric(e, e, z);
  return std::fabs(total);
}

double curvature_3d_decomposition_residual(const LocalGeometry& L) {
  if (L.n != 3) throw std::invalid_argument("the three-dimensional curvature decomposition needs dim 3");
  const std::size_t n = 3;
  const Array<2> q = L.ricci_operator();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = 0; l < n; ++l) {
          const double di = (l == i) ? 1.0 : 0.0;
          const double dj = (l == j) ? 1.0 : 0.0;
          const double rhs = L.g(j, k) * q(l, i) - L.g(i, k) * q(l, j) + L.ricci(j, k) * di - L.ricci(i, k) * dj -
                             0.5 * L.scalar * (L.g(j, k) * di - L.g(i, k) * dj);
          worst = std::max(worst, std::fabs(L.riemann(l, i, j, k) - rhs));
        }
      }
    }
  }
  return worst;
}

}  // namespace acm
