#include "acm/expr.hpp"

#include <charconv>
#include <cmath>
#include <unordered_map>

namespace acm::sym {

namespace {

std::shared_ptr<const Node> make_node(Node n) { return std::make_shared<const Node>(std::move(n)); }

const std::shared_ptr<const Node>& zero_node() {
  static const std::shared_ptr<const Node> zero = make_node(Node{});
  return zero;
}

bool is_integer(double v) { return std::isfinite(v) && v == std::nearbyint(v); }

}  // namespace

const char* function_name(Fn fn) {
  switch (fn) {
    case Fn::Exp: return "exp";
    case Fn::Ln: return "ln";
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Tan: return "tan";
    case Fn::Sinh: return "sinh";
    case Fn::Cosh: return "cosh";
    case Fn::Tanh: return "tanh";
    case Fn::Sqrt: return "sqrt";
  }
  return "?";
}

bool function_from_name(std::string_view name, Fn& out) {
  static constexpr Fn all[] = {Fn::Exp,  Fn::Ln,   Fn::Sin,  Fn::Cos, Fn::Tan,
                               Fn::Sinh, Fn::Cosh, Fn::Tanh, Fn::Sqrt};
  for (Fn fn : all) {
    if (name == function_name(fn)) {
      out = fn;
      return true;
    }
  }
  return false;
}

Expr::Expr() : node_(zero_node()) {}

Expr::Expr(double value) : Expr(constant(value)) {}

Expr Expr::constant(double value) {
  if (value == 0.0) return Expr();  // also normalizes -0.0
  Node n;
  n.op = Op::Const;
  n.value = value;
  return Expr(make_node(std::move(n)));
}

Expr Expr::variable(std::size_t index, std::string name) {
  Node n;
  n.op = Op::Var;
  n.index = index;
  n.name = std::move(name);
  return Expr(make_node(std::move(n)));
}

Expr Expr::raw_unary(Op op, Expr operand) {
  Node n;
  n.op = op;
  n.children.push_back(std::move(operand));
  return Expr(make_node(std::move(n)));
}

Expr Expr::raw_binary(Op op, Expr lhs, Expr rhs) {
  Node n;
  n.op = op;
  n.children.push_back(std::move(lhs));
  n.children.push_back(std::move(rhs));
  return Expr(make_node(std::move(n)));
}

Expr Expr::raw_function(Fn fn, Expr arg) {
  Node n;
  n.op = Op::Func;
  n.fn = fn;
  n.children.push_back(std::move(arg));
  return Expr(make_node(std::move(n)));
}

Op Expr::op() const { return node_->op; }
bool Expr::is_constant(double v) const { return op() == Op::Const && node_->value == v; }
double Expr::constant_value() const { return node_->value; }
std::size_t Expr::var_index() const { return node_->index; }
const std::string& Expr::var_name() const { return node_->name; }
Fn Expr::function() const { return node_->fn; }
const Expr& Expr::operand() const { return node_->children[0]; }
const Expr& Expr::lhs() const { return node_->children[0]; }
const Expr& Expr::rhs() const { return node_->children[1]; }

// ---------------------------------------------------------------------------
// folding constructors

Expr operator-(const Expr& a) {
  if (a.is_constant()) return Expr::constant(-a.constant_value());
  if (a.op() == Op::Neg) return a.operand();
  return Expr::raw_unary(Op::Neg, a);
}

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() + b.constant_value());
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  if (b.op() == Op::Neg) return Expr::raw_binary(Op::Sub, a, b.operand());
  return Expr::raw_binary(Op::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() - b.constant_value());
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  if (b.op() == Op::Neg) return Expr::raw_binary(Op::Add, a, b.operand());
  return Expr::raw_binary(Op::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant()) return Expr::constant(a.constant_value() * b.constant_value());
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr();
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(-1.0)) return -b;
  if (b.is_constant(-1.0)) return -a;
  return Expr::raw_binary(Op::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (a.is_constant() && b.is_constant() && b.constant_value() != 0.0)
    return Expr::constant(a.constant_value() / b.constant_value());
  if (a.is_constant(0.0)) return Expr();
  if (b.is_constant(1.0)) return a;
  return Expr::raw_binary(Op::Div, a, b);
}

Expr pow(const Expr& base, const Expr& exponent) {
  if (exponent.is_constant(0.0)) return Expr(1.0);
  if (exponent.is_constant(1.0)) return base;
  if (base.is_constant() && exponent.is_constant()) {
    const double b = base.constant_value();
    const double k = exponent.constant_value();
    if (b > 0.0 || is_integer(k)) {
      const double v = std::pow(b, k);
      if (std::isfinite(v)) return Expr::constant(v);
    }
  }
  return Expr::raw_binary(Op::Pow, base, exponent);
}

Expr apply(Fn fn, const Expr& arg) {
  if (arg.is_constant()) {
    // fold only where the value is exact, so printed output stays readable
    const double v = arg.constant_value();
    if (v == 0.0) {
      switch (fn) {
        case Fn::Exp:
        case Fn::Cos:
        case Fn::Cosh: return Expr(1.0);
        case Fn::Sin:
        case Fn::Tan:
        case Fn::Sinh:
        case Fn::Tanh:
        case Fn::Sqrt: return Expr();
        case Fn::Ln: break;
      }
    }
    if (v == 1.0 && fn == Fn::Ln) return Expr();
    if (v == 1.0 && fn == Fn::Sqrt) return Expr(1.0);
  }
  return Expr::raw_function(fn, arg);
}

Expr exp(const Expr& a) { return apply(Fn::Exp, a); }
Expr ln(const Expr& a) { return apply(Fn::Ln, a); }
Expr sin(const Expr& a) { return apply(Fn::Sin, a); }
Expr cos(const Expr& a) { return apply(Fn::Cos, a); }
Expr tan(const Expr& a) { return apply(Fn::Tan, a); }
Expr sinh(const Expr& a) { return apply(Fn::Sinh, a); }
Expr cosh(const Expr& a) { return apply(Fn::Cosh, a); }
Expr tanh(const Expr& a) { return apply(Fn::Tanh, a); }
Expr sqrt(const Expr& a) { return apply(Fn::Sqrt, a); }

// ---------------------------------------------------------------------------

int compare(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return 0;
  if (a.op() != b.op()) return a.op() < b.op() ? -1 : 1;
  switch (a.op()) {
    case Op::Const: {
      const double x = a.constant_value();
      const double y = b.constant_value();
      return x < y ? -1 : (x > y ? 1 : 0);
    }
    case Op::Var:
      if (a.var_index() != b.var_index()) return a.var_index() < b.var_index() ? -1 : 1;
      return 0;
    case Op::Neg: return compare(a.operand(), b.operand());
    case Op::Func:
      if (a.function() != b.function()) return a.function() < b.function() ? -1 : 1;
      return compare(a.operand(), b.operand());
    default: {
      const int c = compare(a.lhs(), b.lhs());
      return c != 0 ? c : compare(a.rhs(), b.rhs());
    }
  }
}

std::size_t size(const Expr& e) {
  switch (e.op()) {
    case Op::Const:
    case Op::Var: return 1;
    case Op::Neg:
    case Op::Func: return 1 + size(e.operand());
    default: return 1 + size(e.lhs()) + size(e.rhs());
  }
}

bool depends_on(const Expr& e, std::size_t index) {
  switch (e.op()) {
    case Op::Const: return false;
    case Op::Var: return e.var_index() == index;
    case Op::Neg:
    case Op::Func: return depends_on(e.operand(), index);
    default: return depends_on(e.lhs(), index) || depends_on(e.rhs(), index);
  }
}

// ---------------------------------------------------------------------------
// evaluation

namespace {

double checked(double v, const Expr& e) {
  if (!std::isfinite(v)) throw DomainError("non-finite value", to_string(e));
  return v;
}

double eval_function(Fn fn, double x, const Expr& e) {
  switch (fn) {
    case Fn::Exp: return checked(std::exp(x), e);
    case Fn::Ln:
      if (x <= 0.0) throw DomainError("logarithm of non-positive value", to_string(e));
      return std::log(x);
    case Fn::Sin: return std::sin(x);
    case Fn::Cos: return std::cos(x);
    case Fn::Tan: {
      if (std::cos(x) == 0.0) throw DomainError("tangent pole", to_string(e));
      return checked(std::tan(x), e);
    }
    case Fn::Sinh: return checked(std::sinh(x), e);
    case Fn::Cosh: return checked(std::cosh(x), e);
    case Fn::Tanh: return std::tanh(x);
    case Fn::Sqrt:
      if (x < 0.0) throw DomainError("square root of negative value", to_string(e));
      return std::sqrt(x);
  }
  return 0.0;
}

}  // namespace

double evaluate(const Expr& e, std::span<const double> p) {
  switch (e.op()) {
    case Op::Const: return e.constant_value();
    case Op::Var:
      if (e.var_index() >= p.size()) throw std::out_of_range("point has fewer coordinates than '" + e.var_name() + "' needs");
      return p[e.var_index()];
    case Op::Neg: return -evaluate(e.operand(), p);
    case Op::Func: return eval_function(e.function(), evaluate(e.operand(), p), e);
    case Op::Add: return checked(evaluate(e.lhs(), p) + evaluate(e.rhs(), p), e);
    case Op::Sub: return checked(evaluate(e.lhs(), p) - evaluate(e.rhs(), p), e);
    case Op::Mul: return checked(evaluate(e.lhs(), p) * evaluate(e.rhs(), p), e);
    case Op::Div: {
      const double num = evaluate(e.lhs(), p);
      const double den = evaluate(e.rhs(), p);
      if (den == 0.0) throw DomainError("division by zero", to_string(e));
      return checked(num / den, e);
    }
    case Op::Pow: {
      const double b = evaluate(e.lhs(), p);
      const double k = evaluate(e.rhs(), p);
      if (b > 0.0) return checked(std::pow(b, k), e);
      if (!is_integer(k)) throw DomainError("non-integer power of non-positive base", to_string(e));
      if (b == 0.0 && k < 0.0) throw DomainError("division by zero", to_string(e));
      return checked(std::pow(b, k), e);
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// differentiation

namespace {

class Differentiator {
 public:
  explicit Differentiator(std::size_t index) : index_(index) {}

  Expr operator()(const Expr& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Expr d = compute(e);
    memo_.emplace(e.id(), d);
    return d;
  }

 private:
  Expr compute(const Expr& e) {
    switch (e.op()) {
      case Op::Const: return Expr();
      case Op::Var: return e.var_index() == index_ ? Expr(1.0) : Expr();
      case Op::Neg: return -(*this)(e.operand());
      case Op::Add: return (*this)(e.lhs()) + (*this)(e.rhs());
      case Op::Sub: return (*this)(e.lhs()) - (*this)(e.rhs());
      case Op::Mul: {
        const Expr& u = e.lhs();
        const Expr& v = e.rhs();
        return (*this)(u) * v + u * (*this)(v);
      }
      case Op::Div: {
        const Expr& u = e.lhs();
        const Expr& v = e.rhs();
        const Expr du = (*this)(u);
        const Expr dv = (*this)(v);
        if (dv.is_constant(0.0)) return du / v;
        return (du * v - u * dv) / pow(v, Expr(2.0));
      }
      case Op::Pow: {
        const Expr& u = e.lhs();
        const Expr& k = e.rhs();
        const Expr du = (*this)(u);
        const Expr dk = (*this)(k);
        if (dk.is_constant(0.0)) {
          if (du.is_constant(0.0)) return Expr();
          return k * pow(u, k - Expr(1.0)) * du;
        }
        return e * (dk * ln(u) + k * du / u);
      }
      case Op::Func: {
        const Expr& u = e.operand();
        const Expr du = (*this)(u);
        if (du.is_constant(0.0)) return Expr();
        switch (e.function()) {
          case Fn::Exp: return e * du;
          case Fn::Ln: return du / u;
          case Fn::Sin: return cos(u) * du;
          case Fn::Cos: return -(sin(u) * du);
          case Fn::Tan: return (Expr(1.0) + pow(e, Expr(2.0))) * du;
          case Fn::Sinh: return cosh(u) * du;
          case Fn::Cosh: return sinh(u) * du;
          case Fn::Tanh: return (Expr(1.0) - pow(e, Expr(2.0))) * du;
          case Fn::Sqrt: return du / (Expr(2.0) * e);
        }
      }
    }
    return Expr();
  }

  std::size_t index_;
  std::unordered_map<const Node*, Expr> memo_;
};

}  // namespace

Expr differentiate(const Expr& e, std::size_t index) { return Differentiator(index)(e); }

// ---------------------------------------------------------------------------
// printing

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

// binding strength of the printed form; higher binds tighter
enum Prec { kSum = 1, kProduct = 2, kUnary = 3, kPower = 4, kAtom = 5 };

int precedence(const Expr& e) {
  switch (e.op()) {
    case Op::Const: return e.constant_value() < 0.0 ? kUnary : kAtom;
    case Op::Var:
    case Op::Func: return kAtom;
    case Op::Neg: return kUnary;
    case Op::Add:
    case Op::Sub: return kSum;
    case Op::Mul:
    case Op::Div: return kProduct;
    case Op::Pow: return kPower;
  }
  return kAtom;
}

void print(const Expr& e, std::string& out);

void print_at_least(const Expr& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

void print(const Expr& e, std::string& out) {
  switch (e.op()) {
    case Op::Const: out += format_number(e.constant_value()); return;
    case Op::Var: out += e.var_name(); return;
    case Op::Func:
      out += function_name(e.function());
      out += '(';
      print(e.operand(), out);
      out += ')';
      return;
    case Op::Neg:
      out += '-';
      // "-a*b" would reparse as (-a)*b, so products need parentheses here
      print_at_least(e.operand(), kUnary + 1, out);
      return;
    case Op::Add:
    case Op::Sub:
      print_at_least(e.lhs(), kSum, out);
      out += e.op() == Op::Add ? " + " : " - ";
      // a bare "a - -b" is legal but hard to read
      print_at_least(e.rhs(), precedence(e.rhs()) == kUnary ? kPower : kProduct, out);
      return;
    case Op::Mul:
    case Op::Div:
      print_at_least(e.lhs(), kProduct, out);
      out += e.op() == Op::Mul ? "*" : "/";
      print_at_least(e.rhs(), kPower, out);
      return;
    case Op::Pow:
      print_at_least(e.lhs(), kAtom, out);
      out += '^';
      print_at_least(e.rhs(), kAtom, out);
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, out);
  return out;
}

double finite_diff_check(const Expr& e, std::size_t index, std::span<const double> p, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("finite_diff_check: step must be positive");
  if (index >= p.size()) throw std::out_of_range("finite_diff_check: coordinate index out of range");
  std::vector<double> q(p.begin(), p.end());
  q[index] = p[index] + step;
  const double up = evaluate(e, q);
  q[index] = p[index] - step;
  const double down = evaluate(e, q);
  const double central = (up - down) / (2.0 * step);
  return std::fabs(central - evaluate(differentiate(e, index), p));
}

}  // namespace acm::sym
