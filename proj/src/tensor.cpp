#include "acm/tensor.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "acm/parse.hpp"
#include "acm/simplify.hpp"

namespace acm {

namespace {

bool valid_identifier(const std::string& s) {
  if (s.empty() || std::isalpha(static_cast<unsigned char>(s[0])) == 0) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; });
}

// Sign of the permutation sorting idx, 0 if an index repeats.
int sort_sign(KForm::Index& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i) {
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  }
  return sign;
}

}  // namespace

Chart::Chart(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw std::invalid_argument("chart needs at least one coordinate");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    sym::Fn fn{};
    if (!valid_identifier(names_[i]) || sym::function_from_name(names_[i], fn)) {
      throw std::invalid_argument("invalid coordinate name '" + names_[i] + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[j] == names_[i]) throw std::invalid_argument("duplicate coordinate name '" + names_[i] + "'");
    }
  }
}

std::size_t Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  throw std::invalid_argument("unknown coordinate '" + std::string(name) + "'");
}

Expr Chart::parse(std::string_view source) const { return sym::parse_expr(source, names_); }

VectorField VectorField::coordinate(std::size_t n, std::size_t i) {
  VectorField v = zero(n);
  v.c[i] = Expr(1.0);
  return v;
}

Tensor11 Tensor11::zero(std::size_t n) { return {ExprMatrix(n, std::vector<Expr>(n))}; }

Tensor11 Tensor11::identity(std::size_t n) {
  Tensor11 t = zero(n);
  for (std::size_t i = 0; i < n; ++i) t.m[i][i] = Expr(1.0);
  return t;
}

MetricField::MetricField(ExprMatrix g) : g_(std::move(g)) {
  const std::size_t n = g_.size();
  if (n == 0) throw std::invalid_argument("metric must be non-empty");
  for (const auto& row : g_) {
    if (row.size() != n) throw std::invalid_argument("metric must be square");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!equal(sym::simplify(g_[i][j]), sym::simplify(g_[j][i]))) {
        throw std::invalid_argument("metric is not symmetric at (" + std::to_string(i) + ", " + std::to_string(j) + ")");
      }
    }
  }
}

bool MetricField::is_diagonal() const {
  for (std::size_t i = 0; i < dim(); ++i) {
    for (std::size_t j = 0; j < dim(); ++j) {
      if (i != j && !g_[i][j].is_constant(0.0)) return false;
    }
  }
  return true;
}

KForm::KForm(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {
  if (degree > dim) throw std::invalid_argument("form degree exceeds dimension");
}

KForm KForm::scalar(std::size_t dim, Expr f) {
  KForm k(dim, 0);
  k.set({}, std::move(f));
  return k;
}

KForm KForm::from_one_form(const OneForm& a) {
  KForm k(a.dim(), 1);
  for (std::size_t i = 0; i < a.dim(); ++i) k.set({i}, a[i]);
  return k;
}

Expr KForm::at(const Index& idx) const {
  if (idx.size() != degree_) throw std::invalid_argument("index length does not match form degree");
  Index sorted = idx;
  const int sign = sort_sign(sorted);
  if (sign == 0) return Expr();
  auto it = comps_.find(sorted);
  if (it == comps_.end()) return Expr();
  return sign > 0 ? it->second : -it->second;
}

void KForm::set(const Index& idx, Expr value) {
  if (idx.size() != degree_) throw std::invalid_argument("index length does not match form degree");
  for (std::size_t i = 0; i < idx.size(); ++i) {
    if (idx[i] >= dim_ || (i > 0 && idx[i - 1] >= idx[i])) {
      throw std::invalid_argument("form components are stored on increasing indices");
    }
  }
  if (value.is_constant(0.0)) {
    comps_.erase(idx);
  } else {
    comps_[idx] = std::move(value);
  }
}

double KForm::evaluate(std::span<const double> p, const std::vector<std::vector<double>>& vectors) const {
  if (vectors.size() != degree_) throw std::invalid_argument("form evaluated on the wrong number of vectors");
  double total = 0.0;
  for (const auto& [idx, value] : comps_) {
    // determinant of the k×k minor vectors[r][idx[c]]
    std::vector<std::size_t> perm(degree_);
    for (std::size_t i = 0; i < degree_; ++i) perm[i] = i;
    double det = 0.0;
    do {
      double prod = 1.0;
      for (std::size_t r = 0; r < degree_; ++r) prod *= vectors[r][idx[perm[r]]];
      Index copy(perm.begin(), perm.end());
      det += sort_sign(copy) * prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    total += sym::evaluate(value, p) * det;
  }
  return total;
}

std::vector<KForm::Index> increasing_tuples(std::size_t n, std::size_t k) {
  std::vector<KForm::Index> out;
  if (k > n) return out;
  KForm::Index idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    out.push_back(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return out;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<double> evaluate(const VectorField& v, std::span<const double> p) {
  std::vector<double> out(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) out[i] = sym::evaluate(v[i], p);
  return out;
}

std::vector<double> evaluate(const OneForm& a, std::span<const double> p) {
  std::vector<double> out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) out[i] = sym::evaluate(a[i], p);
  return out;
}

std::vector<std::vector<double>> evaluate(const ExprMatrix& m, std::span<const double> p) {
  std::vector<std::vector<double>> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].resize(m[i].size());
    for (std::size_t j = 0; j < m[i].size(); ++j) out[i][j] = sym::evaluate(m[i][j], p);
  }
  return out;
}

}  // namespace acm
