#include "acm/simplify.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <unordered_map>
#include <utility>

namespace acm::sym {

// The simplifier maps an expression to a sum of monomials,
//
//   constant + sum_i coeff_i * prod_j base_ij ^ power_ij
//
// with bases kept in canonical order, and rebuilds a binary tree from that.
// All exp factors of a monomial are merged into a single exp whose argument
// has had its c*ln(u) terms pulled out as u^c. Products and positive integer
// powers of sums are expanded, which is what lets like terms cancel.

namespace {

constexpr std::size_t kExpansionCap = 20000;

bool is_integer(double v) { return std::isfinite(v) && v == std::nearbyint(v); }

struct Factor {
  Expr base;
  double power;
};
using Monomial = std::vector<Factor>;

struct Term {
  double coeff;
  Monomial mono;
};

struct Poly {
  double constant = 0.0;
  std::vector<Term> terms;  // sorted by monomial, no zero coefficients

  bool is_constant() const { return terms.empty(); }
  bool is_multi_term() const { return terms.size() > 1 || (terms.size() == 1 && constant != 0.0); }
  bool is_single_term() const { return terms.size() == 1 && constant == 0.0; }
};

int compare_mono(const Monomial& a, const Monomial& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (int c = compare(a[i].base, b[i].base); c != 0) return c;
    if (a[i].power != b[i].power) return a[i].power < b[i].power ? -1 : 1;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

// Sorts terms and merges equal monomials.
void combine(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return compare_mono(x.mono, y.mono) < 0; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && compare_mono(out.back().mono, t.mono) == 0) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coeff == 0.0; });
  terms = std::move(out);
}

Poly constant_poly(double c) { return Poly{c, {}}; }

Poly atom_poly(const Expr& base, double power = 1.0) {
  Poly p;
  p.terms.push_back(Term{1.0, {Factor{base, power}}});
  return p;
}

Poly scale(Poly p, double s) {
  if (s == 0.0) return Poly{};
  p.constant *= s;
  for (auto& t : p.terms) t.coeff *= s;
  return p;
}

Poly add(const Poly& a, const Poly& b) {
  Poly out;
  out.constant = a.constant + b.constant;
  out.terms.reserve(a.terms.size() + b.terms.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.terms.size() || j < b.terms.size()) {
    int c = 0;
    if (i == a.terms.size()) {
      c = 1;
    } else if (j == b.terms.size()) {
      c = -1;
    } else {
      c = compare_mono(a.terms[i].mono, b.terms[j].mono);
    }
    if (c < 0) {
      out.terms.push_back(a.terms[i++]);
    } else if (c > 0) {
      out.terms.push_back(b.terms[j++]);
    } else {
      const double sum = a.terms[i].coeff + b.terms[j].coeff;
      if (sum != 0.0) out.terms.push_back(Term{sum, a.terms[i].mono});
      ++i;
      ++j;
    }
  }
  return out;
}

Expr term_expr(double magnitude, const Monomial& mono, bool negate) {
  std::vector<Expr> num;
  std::vector<Expr> den;
  for (const auto& f : mono) {
    const double p = std::fabs(f.power);
    Expr piece = p == 1.0 ? f.base : Expr::raw_binary(Op::Pow, f.base, Expr::constant(p));
    (f.power > 0.0 ? num : den).push_back(std::move(piece));
  }
  Expr numerator;
  bool have_num = false;
  auto push_num = [&](Expr e) {
    numerator = have_num ? Expr::raw_binary(Op::Mul, numerator, std::move(e)) : std::move(e);
    have_num = true;
  };
  if (magnitude != 1.0 || num.empty()) push_num(Expr::constant(negate ? -magnitude : magnitude));
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (negate && magnitude == 1.0 && i == 0) {
      push_num(Expr::raw_unary(Op::Neg, num[i]));
    } else {
      push_num(num[i]);
    }
  }
  if (den.empty()) return numerator;
  Expr denominator = den[0];
  for (std::size_t i = 1; i < den.size(); ++i) denominator = Expr::raw_binary(Op::Mul, denominator, den[i]);
  return Expr::raw_binary(Op::Div, numerator, denominator);
}

Expr rebuild(const Poly& p) {
  if (p.terms.empty()) return Expr::constant(p.constant);
  Expr acc = term_expr(std::fabs(p.terms[0].coeff), p.terms[0].mono, p.terms[0].coeff < 0.0);
  for (std::size_t i = 1; i < p.terms.size(); ++i) {
    const Term& t = p.terms[i];
    acc = Expr::raw_binary(t.coeff < 0.0 ? Op::Sub : Op::Add, acc, term_expr(std::fabs(t.coeff), t.mono, false));
  }
  if (p.constant != 0.0) {
    acc = Expr::raw_binary(p.constant < 0.0 ? Op::Sub : Op::Add, acc, Expr::constant(std::fabs(p.constant)));
  }
  return acc;
}

class Simplifier {
 public:
  Expr run(const Expr& e) { return rebuild(from(e)); }

 private:
  // Canonical sum for e. Memoized by node; the memo keeps the key alive so a
  // freed node's address can never alias a later one.
  const Poly& from(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second.second;
    Poly p = compute(e);
    auto [it, _] = memo_.emplace(e.id(), std::make_pair(e, std::move(p)));
    return it->second.second;
  }

  Poly compute(const Expr& e) {
    switch (e.op()) {
      case Op::Const: return constant_poly(e.constant_value());
      case Op::Var: return atom_poly(e);
      case Op::Neg: return scale(from(e.operand()), -1.0);
      case Op::Add: return add(from(e.lhs()), from(e.rhs()));
      case Op::Sub: return add(from(e.lhs()), scale(from(e.rhs()), -1.0));
      case Op::Mul: return mul(from(e.lhs()), from(e.rhs()));
      case Op::Div: return mul(from(e.lhs()), power_of(e.rhs(), -1.0));
      case Op::Pow: {
        const Poly& k = from(e.rhs());
        if (k.is_constant()) return power_of(e.lhs(), k.constant);
        const Poly& b = from(e.lhs());
        if (const Expr* arg = single_exp(b)) return exp_poly(mul(from(*arg), k));
        return atom_poly(Expr::raw_binary(Op::Pow, rebuild(b), rebuild(k)));
      }
      case Op::Func: return function(e.function(), from(e.operand()));
    }
    return Poly{};
  }

  // exp(X) alone with coefficient 1, as produced by exp_poly
  static const Expr* single_exp(const Poly& p) {
    if (!p.is_single_term() || p.terms[0].coeff != 1.0 || p.terms[0].mono.size() != 1) return nullptr;
    const Factor& f = p.terms[0].mono[0];
    if (f.power != 1.0 || f.base.op() != Op::Func || f.base.function() != Fn::Exp) return nullptr;
    return &f.base.operand();
  }

  Poly function(Fn fn, const Poly& arg) {
    if (arg.is_constant()) {
      const Expr folded = apply(fn, Expr::constant(arg.constant));
      if (folded.is_constant()) return constant_poly(folded.constant_value());
      try {
        const double v = evaluate(folded, {});
        return constant_poly(v);
      } catch (const DomainError&) {
        return atom_poly(folded);
      }
    }
    if (fn == Fn::Exp) return exp_poly(arg);
    if (fn == Fn::Ln) {
      if (const Expr* inner = single_exp(arg)) return from(*inner);
    }
    return atom_poly(Expr::raw_function(fn, rebuild(arg)));
  }

  static bool is_ln_term(const Term& t) {
    return t.mono.size() == 1 && t.mono[0].power == 1.0 && t.mono[0].base.op() == Op::Func &&
           t.mono[0].base.function() == Fn::Ln;
  }

  // exp of a canonical sum: c*ln(u) terms become u^c, constants fold only when
  // nothing else remains
  Poly exp_poly(const Poly& arg) {
    Poly rest;
    rest.constant = arg.constant;
    Poly result = constant_poly(1.0);
    for (const Term& t : arg.terms) {
      if (is_ln_term(t)) {
        result = mul(result, power_of(t.mono[0].base.operand(), t.coeff));
      } else {
        rest.terms.push_back(t);
      }
    }
    if (rest.terms.empty()) return scale(result, std::exp(rest.constant));
    return mul(result, atom_poly(Expr::raw_function(Fn::Exp, rebuild(rest))));
  }

  // Poly for e^k, pushing integer powers through products and quotients so
  // that 1/(x+1)^2 keeps (x+1) as its base.
  Poly power_of(const Expr& e, double k) {
    if (k == 1.0) return from(e);
    if (e.op() == Op::Pow) {
      const Poly& a = from(e.rhs());
      if (a.is_constant() && (is_integer(k) || !is_integer(a.constant) || a.constant == 1.0)) {
        return power_of(e.lhs(), a.constant * k);
      }
    }
    if (is_integer(k)) {
      switch (e.op()) {
        case Op::Neg: return scale(power_of(e.operand(), k), std::fmod(std::fabs(k), 2.0) == 1.0 ? -1.0 : 1.0);
        case Op::Mul: return mul(power_of(e.lhs(), k), power_of(e.rhs(), k));
        case Op::Div: return mul(power_of(e.lhs(), k), power_of(e.rhs(), -k));
        default: break;
      }
    }
    return pow_const(from(e), k);
  }

  static bool power_allowed(double inner, double k) {
    // (u^a)^k == u^(a*k) needs k integer, or u > 0 already forced by a
    return is_integer(k) || !is_integer(inner) || inner == 1.0;
  }

  Poly pow_const(const Poly& p, double k) {
    if (k == 0.0) return constant_poly(1.0);
    if (k == 1.0) return p;
    if (p.is_constant()) {
      const double c = p.constant;
      if (c > 0.0 || (is_integer(k) && c != 0.0) || (c == 0.0 && k > 0.0)) {
        const double v = std::pow(c, k);
        if (std::isfinite(v)) return constant_poly(v);
      }
      return atom_poly(Expr::raw_binary(Op::Pow, Expr::constant(c), Expr::constant(k)));
    }
    if (p.is_single_term()) {
      const Term& t = p.terms[0];
      bool ok = t.coeff > 0.0 || is_integer(k);
      for (const auto& f : t.mono) {
        // a lone u^1 may take the power; in a product each base must be known positive
        ok = ok && (t.mono.size() == 1 ? power_allowed(f.power, k) : is_integer(k) || !is_integer(f.power));
      }
      if (ok) {
        Monomial m = t.mono;
        for (auto& f : m) f.power *= k;
        return normalize(std::pow(t.coeff, k), std::move(m));
      }
      return atom_poly(rebuild(p), k);
    }
    if (is_integer(k) && k > 0.0 && expansion_fits(p, static_cast<int>(k))) {
      Poly acc = p;
      for (int i = 1; i < static_cast<int>(k); ++i) acc = mul(acc, p);
      return acc;
    }
    return atom_poly(rebuild(p), k);
  }

  static bool expansion_fits(const Poly& p, int k) {
    double n = 1.0;
    for (int i = 0; i < k; ++i) n *= static_cast<double>(p.terms.size() + 1);
    return n <= static_cast<double>(kExpansionCap);
  }

  Poly mul(const Poly& a, const Poly& b) {
    if (a.is_constant()) return scale(b, a.constant);
    if (b.is_constant()) return scale(a, b.constant);
    if (auto p = absorb(a, b)) return *p;
    if (auto p = absorb(b, a)) return *p;
    if ((a.terms.size() + 1) * (b.terms.size() + 1) > kExpansionCap) {
      Poly p;
      Monomial m{Factor{rebuild(a), 1.0}, Factor{rebuild(b), 1.0}};
      if (compare(m[1].base, m[0].base) < 0) std::swap(m[0], m[1]);
      p.terms.push_back(Term{1.0, std::move(m)});
      return p;
    }
    Poly out;
    out.constant = a.constant * b.constant;
    auto append = [&out](const Poly& q) {
      out.constant += q.constant;
      out.terms.insert(out.terms.end(), q.terms.begin(), q.terms.end());
    };
    for (const Term& s : a.terms) {
      for (const Term& t : b.terms) {
        Monomial m = s.mono;
        m.insert(m.end(), t.mono.begin(), t.mono.end());
        append(normalize(s.coeff * t.coeff, std::move(m)));
      }
      if (b.constant != 0.0) append(Poly{0.0, {Term{s.coeff * b.constant, s.mono}}});
    }
    if (a.constant != 0.0) {
      for (const Term& t : b.terms) append(Poly{0.0, {Term{a.constant * t.coeff, t.mono}}});
    }
    combine(out.terms);
    return out;
  }

  // A single term carrying a power of the sum b takes b as one more factor of
  // the same base, so (x+1)/(x+1)^2 becomes 1/(x+1) rather than an expansion.
  std::optional<Poly> absorb(const Poly& a, const Poly& b) {
    if (!a.is_single_term() || !b.is_multi_term()) return std::nullopt;
    const Expr base = rebuild(b);
    const Term& t = a.terms[0];
    for (const auto& f : t.mono) {
      if (compare(f.base, base) == 0) {
        Monomial m = t.mono;
        m.push_back(Factor{base, 1.0});
        return normalize(t.coeff, std::move(m));
      }
    }
    return std::nullopt;
  }

  bool is_atom(const Expr& base) {
    if (base.op() == Op::Var || base.op() == Op::Func) return true;
    const Poly& p = from(base);
    return p.is_single_term() && p.terms[0].coeff == 1.0 && p.terms[0].mono.size() == 1 &&
           p.terms[0].mono[0].power == 1.0 && compare(p.terms[0].mono[0].base, base) == 0;
  }

  bool is_clean_exp_arg(const Expr& arg) {
    const Poly& p = from(arg);
    if (p.terms.empty()) return false;
    return std::none_of(p.terms.begin(), p.terms.end(), is_ln_term);
  }

  // Canonical form of coeff * prod(factors).
  Poly normalize(double coeff, Monomial factors) {
    if (coeff == 0.0) return Poly{};
    std::sort(factors.begin(), factors.end(),
              [](const Factor& x, const Factor& y) { return compare(x.base, y.base) < 0; });
    Monomial merged;
    for (auto& f : factors) {
      if (!merged.empty() && compare(merged.back().base, f.base) == 0) {
        merged.back().power += f.power;
      } else {
        merged.push_back(std::move(f));
      }
    }
    std::erase_if(merged, [](const Factor& f) { return f.power == 0.0; });

    Monomial kept;
    Monomial exps;
    std::vector<Poly> expanded;
    for (auto& f : merged) {
      if (f.base.op() == Op::Func && f.base.function() == Fn::Exp) {
        exps.push_back(std::move(f));
        continue;
      }
      if (is_atom(f.base)) {
        kept.push_back(std::move(f));
        continue;
      }
      const Poly& pb = from(f.base);
      const bool integral = is_integer(f.power);
      if (pb.is_multi_term()) {
        if (integral && f.power > 0.0 && expansion_fits(pb, static_cast<int>(f.power))) {
          expanded.push_back(pow_const(pb, f.power));
        } else {
          kept.push_back(std::move(f));
        }
      } else if (integral) {
        expanded.push_back(pow_const(pb, f.power));
      } else {
        kept.push_back(std::move(f));
      }
    }

    if (exps.size() == 1 && exps[0].power == 1.0 && is_clean_exp_arg(exps[0].base.operand())) {
      kept.push_back(std::move(exps[0]));
      std::sort(kept.begin(), kept.end(),
                [](const Factor& x, const Factor& y) { return compare(x.base, y.base) < 0; });
    } else if (!exps.empty()) {
      Poly arg;
      for (const auto& f : exps) arg = add(arg, scale(from(f.base.operand()), f.power));
      expanded.push_back(exp_poly(arg));
    }

    Poly result;
    result.terms.push_back(Term{coeff, std::move(kept)});
    if (result.terms[0].mono.empty()) result = constant_poly(coeff);
    for (const auto& p : expanded) result = mul(result, p);
    return result;
  }

  std::unordered_map<const Node*, std::pair<Expr, Poly>> memo_;
};

}  // namespace

Expr simplify(const Expr& e) { return Simplifier().run(e); }

}  // namespace acm::sym
