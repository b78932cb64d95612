#pragma once

// Scalar expressions over chart coordinates.
//
// An Expr is an immutable, reference-counted tree. Copies are cheap and
// sharing subtrees across threads is safe because nodes are never mutated
// after construction.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace acm {

/// Coordinates of a point on a chart, one entry per coordinate.
using Point = std::vector<double>;

namespace sym {

enum class Op : std::uint8_t { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Func };
enum class Fn : std::uint8_t { Exp, Ln, Sin, Cos, Tan, Sinh, Cosh, Tanh, Sqrt };

const char* function_name(Fn fn);
/// Looks up a function by its grammar name; returns false when unknown.
bool function_from_name(std::string_view name, Fn& out);

struct Node;

class Expr {
 public:
  /// The constant 0.
  Expr();
  Expr(double value);  // NOLINT(google-explicit-constructor): literals read naturally in formulas

  static Expr constant(double value);
  static Expr variable(std::size_t index, std::string name);

  // Raw constructors build exactly the requested node, no folding. The parser
  // uses these so that printing reproduces the parsed structure.
  static Expr raw_unary(Op op, Expr operand);
  static Expr raw_binary(Op op, Expr lhs, Expr rhs);
  static Expr raw_function(Fn fn, Expr arg);

  Op op() const;
  bool is_constant() const { return op() == Op::Const; }
  bool is_constant(double v) const;
  double constant_value() const;
  std::size_t var_index() const;
  const std::string& var_name() const;
  Fn function() const;
  const Expr& operand() const;  // Neg, Func
  const Expr& lhs() const;
  const Expr& rhs() const;

  /// Node identity, used for memoization and fast equality.
  const Node* id() const { return node_.get(); }

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Node {
  Op op = Op::Const;
  Fn fn = Fn::Exp;
  double value = 0.0;
  std::size_t index = 0;
  std::string name;
  std::vector<Expr> children;
};

/// Raised when an expression is evaluated outside its real domain.
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, std::string subexpression)
      : std::runtime_error(what + " in '" + subexpression + "'"),
        subexpression_(std::move(subexpression)) {}
  const std::string& subexpression() const { return subexpression_; }

 private:
  std::string subexpression_;
};

// Folding constructors: combine constants and absorb 0 and 1.
Expr operator-(const Expr& a);
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr pow(const Expr& base, const Expr& exponent);
Expr apply(Fn fn, const Expr& arg);
Expr exp(const Expr& a);
Expr ln(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);
Expr tan(const Expr& a);
Expr sinh(const Expr& a);
Expr cosh(const Expr& a);
Expr tanh(const Expr& a);
Expr sqrt(const Expr& a);

/// Total structural order; 0 means structurally equal.
int compare(const Expr& a, const Expr& b);
inline bool equal(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

/// Number of nodes in the tree (shared subtrees counted once per use).
std::size_t size(const Expr& e);
/// True when the coordinate with this index occurs in e.
bool depends_on(const Expr& e, std::size_t index);

double evaluate(const Expr& e, std::span<const double> p);

/// Symbolic partial derivative with respect to coordinate `index`.
Expr differentiate(const Expr& e, std::size_t index);

/// Prints in the input grammar with minimal parentheses; parsing the output
/// reproduces the same tree.
std::string to_string(const Expr& e);

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);

/// |central difference - symbolic derivative| at p along `index`.
double finite_diff_check(const Expr& e, std::size_t index, std::span<const double> p, double step);

}  // namespace sym

using sym::Expr;

}  // namespace acm
