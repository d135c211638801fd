#pragma once

// Immutable scalar expression trees with exact symbolic differentiation.
//
// Grammar accepted by parse():
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          (right-associative, constant exponent)
//   primary := number | identifier | identifier '(' expr ')' | '(' expr ')'
//
// Functions: sin cos sinh cosh tanh exp log sqrt. The identifier `pi` is the
// constant 3.14159...; every other identifier is a free variable.

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace biharm {

using Bindings = std::vector<std::pair<std::string, double>>;

class Expr {
 public:
  enum class Kind {
    Constant,
    Variable,
    Neg,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
  };

  struct Node;

  Expr();  // the constant 0
  Expr(double value);  // NOLINT(google-explicit-constructor): lets `2.0 * e` read naturally

  static Expr constant(double value);
  static Expr variable(std::string name);

  // Raw constructors build exactly the requested node. The only rewrite they
  // perform is neg(constant c) -> constant(-c), which is how negative literals
  // are represented.
  static Expr make_unary(Kind kind, Expr operand);
  static Expr make_binary(Kind kind, Expr lhs, Expr rhs);
  static Expr make_pow(Expr base, double exponent);

  Kind kind() const;
  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_constant(double v) const;
  // Constant value, or the exponent of a Pow node.
  double value() const;
  const std::string& name() const;
  std::size_t arity() const;
  const Expr& operand(std::size_t i) const;

  bool structurally_equal(const Expr& other) const;
  std::set<std::string> free_variables() const;
  std::size_t node_count() const;

 private:
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Folding constructors: apply only the 0/1 identities (x+0, x*1, x*0, x/1,
// 0/x, x^1, x^0) and negation of constants. Used by differentiate().
Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, double exponent);
Expr sin(const Expr& e);
Expr cos(const Expr& e);
Expr sinh(const Expr& e);
Expr cosh(const Expr& e);
Expr tanh(const Expr& e);
Expr exp(const Expr& e);
Expr log(const Expr& e);
Expr sqrt(const Expr& e);

Expr parse(std::string_view text);

Expr differentiate(const Expr& e, std::string_view var);

// Throws UnboundVariable / DomainError.
double evaluate(const Expr& e, const Bindings& bindings);

// Shortest round-trippable text; parse(to_string(e)) is structurally equal to e.
std::string to_string(const Expr& e);

Expr substitute(const Expr& e, std::string_view var, const Expr& replacement);

}  // namespace biharm
