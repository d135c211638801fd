#include "biharm/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>

#include "biharm/error.hpp"

namespace biharm {

struct Expr::Node {
  Kind kind = Kind::Constant;
  double value = 0.0;
  std::string name;
  std::vector<Expr> operands;
};

namespace {

struct FunctionName {
  std::string_view name;
  Expr::Kind kind;
};

constexpr std::array<FunctionName, 8> kFunctions{{
    {"sin", Expr::Kind::Sin},
    {"cos", Expr::Kind::Cos},
    {"sinh", Expr::Kind::Sinh},
    {"cosh", Expr::Kind::Cosh},
    {"tanh", Expr::Kind::Tanh},
    {"exp", Expr::Kind::Exp},
    {"log", Expr::Kind::Log},
    {"sqrt", Expr::Kind::Sqrt},
}};

bool is_function(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Sin:
    case Expr::Kind::Cos:
    case Expr::Kind::Sinh:
    case Expr::Kind::Cosh:
    case Expr::Kind::Tanh:
    case Expr::Kind::Exp:
    case Expr::Kind::Log:
    case Expr::Kind::Sqrt:
      return true;
    default:
      return false;
  }
}

std::string_view function_name(Expr::Kind k) {
  for (const auto& f : kFunctions) {
    if (f.kind == k) return f.name;
  }
  return "?";
}

}  // namespace

Expr::Expr() : Expr(0.0) {}

Expr::Expr(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Constant;
  n->value = value;
  node_ = std::move(n);
}

Expr Expr::constant(double value) { return Expr(value); }

Expr Expr::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->name = std::move(name);
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::make_unary(Kind kind, Expr operand) {
  if (kind == Kind::Neg && operand.is_constant()) return constant(-operand.value());
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->operands.push_back(std::move(operand));
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::make_binary(Kind kind, Expr lhs, Expr rhs) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->operands.push_back(std::move(lhs));
  n->operands.push_back(std::move(rhs));
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr Expr::make_pow(Expr base, double exponent) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->value = exponent;
  n->operands.push_back(std::move(base));
  return Expr(std::shared_ptr<const Node>(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }
bool Expr::is_constant(double v) const { return is_constant() && node_->value == v; }
double Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
std::size_t Expr::arity() const { return node_->operands.size(); }
const Expr& Expr::operand(std::size_t i) const { return node_->operands.at(i); }

bool Expr::structurally_equal(const Expr& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind() || arity() != other.arity()) return false;
  switch (kind()) {
    case Kind::Constant:
    case Kind::Pow:
      if (value() != other.value()) return false;
      break;
    case Kind::Variable:
      if (name() != other.name()) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < arity(); ++i) {
    if (!operand(i).structurally_equal(other.operand(i))) return false;
  }
  return true;
}

std::set<std::string> Expr::free_variables() const {
  std::set<std::string> out;
  std::vector<const Expr*> stack{this};
  while (!stack.empty()) {
    const Expr* e = stack.back();
    stack.pop_back();
    if (e->kind() == Kind::Variable) out.insert(e->name());
    for (const auto& op : e->node_->operands) stack.push_back(&op);
  }
  return out;
}

std::size_t Expr::node_count() const {
  std::size_t n = 1;
  for (const auto& op : node_->operands) n += op.node_count();
  return n;
}

// ---------------------------------------------------------------------------
// Folding constructors

Expr operator+(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0)) return b;
  if (b.is_constant(0.0)) return a;
  return Expr::make_binary(Expr::Kind::Add, a, b);
}

Expr operator-(const Expr& a, const Expr& b) {
  if (b.is_constant(0.0)) return a;
  if (a.is_constant(0.0)) return -b;
  return Expr::make_binary(Expr::Kind::Sub, a, b);
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_constant(0.0) || b.is_constant(0.0)) return Expr(0.0);
  if (a.is_constant(1.0)) return b;
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(-1.0)) return -b;
  if (b.is_constant(-1.0)) return -a;
  return Expr::make_binary(Expr::Kind::Mul, a, b);
}

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_constant(1.0)) return a;
  if (a.is_constant(0.0)) return Expr(0.0);
  return Expr::make_binary(Expr::Kind::Div, a, b);
}

Expr operator-(const Expr& a) { return Expr::make_unary(Expr::Kind::Neg, a); }

Expr pow(const Expr& base, double exponent) {
  if (exponent == 1.0) return base;
  if (exponent == 0.0) return Expr(1.0);
  return Expr::make_pow(base, exponent);
}

Expr sin(const Expr& e) { return Expr::make_unary(Expr::Kind::Sin, e); }
Expr cos(const Expr& e) { return Expr::make_unary(Expr::Kind::Cos, e); }
Expr sinh(const Expr& e) { return Expr::make_unary(Expr::Kind::Sinh, e); }
Expr cosh(const Expr& e) { return Expr::make_unary(Expr::Kind::Cosh, e); }
Expr tanh(const Expr& e) { return Expr::make_unary(Expr::Kind::Tanh, e); }
Expr exp(const Expr& e) { return Expr::make_unary(Expr::Kind::Exp, e); }
Expr log(const Expr& e) { return Expr::make_unary(Expr::Kind::Log, e); }
Expr sqrt(const Expr& e) { return Expr::make_unary(Expr::Kind::Sqrt, e); }

// ---------------------------------------------------------------------------
// Parser

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "operator or end of input");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::make_binary(Expr::Kind::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::make_binary(Expr::Kind::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::make_binary(Expr::Kind::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::make_binary(Expr::Kind::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::make_unary(Expr::Kind::Neg, parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    skip_ws();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t exponent_pos = pos_;
    Expr exponent = parse_unary();
    double value = 0.0;
    if (!fold_constant(exponent, value)) throw SyntaxError(exponent_pos, "constant exponent");
    return Expr::make_pow(base, value);
  }

  static bool fold_constant(const Expr& e, double& out) {
    using K = Expr::Kind;
    switch (e.kind()) {
      case K::Constant:
        out = e.value();
        return true;
      case K::Neg: {
        double v = 0.0;
        if (!fold_constant(e.operand(0), v)) return false;
        out = -v;
        return true;
      }
      case K::Add:
      case K::Sub:
      case K::Mul:
      case K::Div: {
        double a = 0.0;
        double b = 0.0;
        if (!fold_constant(e.operand(0), a) || !fold_constant(e.operand(1), b)) return false;
        out = e.kind() == K::Add ? a + b : e.kind() == K::Sub ? a - b : e.kind() == K::Mul ? a * b : a / b;
        return true;
      }
      case K::Pow: {
        double a = 0.0;
        if (!fold_constant(e.operand(0), a)) return false;
        out = std::pow(a, e.value());
        return true;
      }
      default:
        return false;
    }
  }

  Expr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError(pos_, "operand");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!accept(')')) throw SyntaxError(pos_, "')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw SyntaxError(pos_, "operand");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_;
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits();
      } else {
        pos_ = save;
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) throw SyntaxError(start, "number");
    return Expr::constant(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      const FunctionName* fn = nullptr;
      for (const auto& f : kFunctions) {
        if (f.name == name) fn = &f;
      }
      if (fn == nullptr) throw Error(ErrorCode::UnknownFunction, name);
      Expr arg = parse_expr();
      if (!accept(')')) throw SyntaxError(pos_, "')'");
      return Expr::make_unary(fn->kind, std::move(arg));
    }
    if (name == "pi") return Expr::constant(std::numbers::pi);
    return Expr::variable(std::move(name));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

// ---------------------------------------------------------------------------
// Differentiation

Expr differentiate(const Expr& e, std::string_view var) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant:
      return Expr(0.0);
    case K::Variable:
      return Expr(e.name() == var ? 1.0 : 0.0);
    default:
      break;
  }
  const Expr& a = e.operand(0);
  const Expr da = differentiate(a, var);
  switch (e.kind()) {
    case K::Neg:
      return -da;
    case K::Sin:
      return cos(a) * da;
    case K::Cos:
      return -(sin(a) * da);
    case K::Sinh:
      return cosh(a) * da;
    case K::Cosh:
      return sinh(a) * da;
    case K::Tanh:
      return (Expr(1.0) - pow(tanh(a), 2.0)) * da;
    case K::Exp:
      return e * da;
    case K::Log:
      return da / a;
    case K::Sqrt:
      return da / (Expr(2.0) * e);
    case K::Pow:
      return Expr(e.value()) * pow(a, e.value() - 1.0) * da;
    default:
      break;
  }
  const Expr& b = e.operand(1);
  const Expr db = differentiate(b, var);
  switch (e.kind()) {
    case K::Add:
      return da + db;
    case K::Sub:
      return da - db;
    case K::Mul:
      return da * b + a * db;
    case K::Div:
      return (da * b - a * db) / pow(b, 2.0);
    default:
      break;
  }
  return Expr(0.0);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void domain_error(const Expr& node, double arg) {
  throw Error(ErrorCode::DomainError, to_string(node) + " with argument " + std::to_string(arg));
}

double eval(const Expr& e, const Bindings& b) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant:
      return e.value();
    case K::Variable:
      for (const auto& [name, value] : b) {
        if (name == e.name()) return value;
      }
      throw Error(ErrorCode::UnboundVariable, e.name());
    default:
      break;
  }
  const double x = eval(e.operand(0), b);
  switch (e.kind()) {
    case K::Neg:
      return -x;
    case K::Sin:
      return std::sin(x);
    case K::Cos:
      return std::cos(x);
    case K::Sinh:
      return std::sinh(x);
    case K::Cosh:
      return std::cosh(x);
    case K::Tanh:
      return std::tanh(x);
    case K::Exp:
      return std::exp(x);
    case K::Log:
      if (!(x > 0.0)) domain_error(e, x);
      return std::log(x);
    case K::Sqrt:
      if (!(x >= 0.0)) domain_error(e, x);
      return std::sqrt(x);
    case K::Pow: {
      const double p = e.value();
      if (x < 0.0 && p != std::floor(p)) domain_error(e, x);
      if (x == 0.0 && p < 0.0) domain_error(e, x);
      return std::pow(x, p);
    }
    default:
      break;
  }
  const double y = eval(e.operand(1), b);
  switch (e.kind()) {
    case K::Add:
      return x + y;
    case K::Sub:
      return x - y;
    case K::Mul:
      return x * y;
    case K::Div:
      if (y == 0.0) domain_error(e, y);
      return x / y;
    default:
      break;
  }
  return 0.0;
}

}  // namespace

double evaluate(const Expr& e, const Bindings& bindings) { return eval(e, bindings); }

// ---------------------------------------------------------------------------
// Printing

namespace {

// Binding strength used to decide where parentheses are required.
int precedence(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Add:
    case K::Sub:
      return 1;
    case K::Mul:
    case K::Div:
      return 2;
    case K::Neg:
      return 3;
    case K::Constant:
      return std::signbit(e.value()) ? 3 : 5;
    case K::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string number_text(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void print(const Expr& e, int min_prec, std::string& out);

void print_child(const Expr& e, int min_prec, std::string& out) {
  if (precedence(e) < min_prec) {
    out += '(';
    print(e, 0, out);
    out += ')';
  } else {
    print(e, min_prec, out);
  }
}

void print(const Expr& e, int /*min_prec*/, std::string& out) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant:
      out += number_text(e.value());
      return;
    case K::Variable:
      out += e.name();
      return;
    case K::Neg:
      out += '-';
      print_child(e.operand(0), 3, out);
      return;
    case K::Pow: {
      print_child(e.operand(0), 5, out);
      out += '^';
      const double p = e.value();
      if (std::signbit(p)) {
        out += '(' + number_text(p) + ')';
      } else {
        out += number_text(p);
      }
      return;
    }
    case K::Add:
    case K::Sub:
      print_child(e.operand(0), 1, out);
      out += e.kind() == K::Add ? " + " : " - ";
      print_child(e.operand(1), 2, out);
      return;
    case K::Mul:
    case K::Div:
      print_child(e.operand(0), 2, out);
      out += e.kind() == K::Mul ? "*" : "/";
      print_child(e.operand(1), 3, out);
      return;
    default:
      break;
  }
  if (is_function(e.kind())) {
    out += function_name(e.kind());
    out += '(';
    print(e.operand(0), 0, out);
    out += ')';
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  print(e, 0, out);
  return out;
}

Expr substitute(const Expr& e, std::string_view var, const Expr& replacement) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Constant:
      return e;
    case K::Variable:
      return e.name() == var ? replacement : e;
    case K::Pow:
      return Expr::make_pow(substitute(e.operand(0), var, replacement), e.value());
    case K::Add:
    case K::Sub:
    case K::Mul:
    case K::Div:
      return Expr::make_binary(e.kind(), substitute(e.operand(0), var, replacement),
                               substitute(e.operand(1), var, replacement));
    default:
      return Expr::make_unary(e.kind(), substitute(e.operand(0), var, replacement));
  }
}

}  // namespace biharm
