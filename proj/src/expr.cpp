#include "grwsym/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "grwsym/errors.hpp"

namespace grwsym {

namespace {

using Kind = ExprNode::Kind;

struct FuncEntry {
  const char* name;
  Func func;
};

constexpr FuncEntry kFunctions[] = {
    {"sin", Func::Sin},   {"cos", Func::Cos},   {"tan", Func::Tan}, {"sinh", Func::Sinh},
    {"cosh", Func::Cosh}, {"tanh", Func::Tanh}, {"exp", Func::Exp}, {"log", Func::Log},
    {"sqrt", Func::Sqrt}, {"abs", Func::Abs},
};

NodePtr make_number(double v) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Number;
  n->number = v;
  return n;
}

NodePtr make_unary(Kind kind, NodePtr operand, Func f = Func::Sin) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->func = f;
  n->lhs = std::move(operand);
  return n;
}

NodePtr make_binary(Kind kind, NodePtr a, NodePtr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->lhs = std::move(a);
  n->rhs = std::move(b);
  return n;
}

NodePtr make_variable(const std::string& name, std::size_t slot) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Variable;
  n->name = name;
  n->slot = slot;
  return n;
}

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void print(const ExprNode& n, std::string& out) {
  switch (n.kind) {
    case Kind::Number: out += format_number(n.number); return;
    case Kind::Variable: out += n.name; return;
    case Kind::Neg:
      out += "(-";
      print(*n.lhs, out);
      out += ')';
      return;
    case Kind::Call:
      out += func_name(n.func);
      out += '(';
      print(*n.lhs, out);
      out += ')';
      return;
    default: break;
  }
  const char* op = n.kind == Kind::Add ? " + " : n.kind == Kind::Sub ? " - " : n.kind == Kind::Mul ? " * " : n.kind == Kind::Div ? " / " : " ^ ";
  out += '(';
  print(*n.lhs, out);
  out += op;
  print(*n.rhs, out);
  out += ')';
}

std::string node_string(const ExprNode& n) {
  std::string s;
  print(n, s);
  return s;
}

// ---------------------------------------------------------------- parser

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

  NodePtr parse() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("empty expression", pos_, "expression");
    NodePtr e = expression();
    skip_ws();
    if (pos_ < src_.size()) throw ParseError("unexpected character '" + std::string(1, src_[pos_]) + "'", pos_, "operator or end of input");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r')) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expression() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make_binary(Kind::Add, lhs, term());
      else if (accept('-')) lhs = make_binary(Kind::Sub, lhs, term());
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make_binary(Kind::Mul, lhs, unary());
      else if (accept('/')) lhs = make_binary(Kind::Div, lhs, unary());
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make_unary(Kind::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make_binary(Kind::Pow, base, unary());
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_, "number, identifier or '('");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expression();
      if (!accept(')')) throw ParseError("unbalanced parenthesis", position(), "')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    throw ParseError("unexpected character '" + std::string(1, c) + "'", pos_, "number, identifier or '('");
  }

  std::size_t position() {
    skip_ws();
    return pos_;
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) throw ParseError("malformed number", start, "digit");
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw ParseError("malformed exponent", pos_, "digit");
    }
    double value = 0.0;
    auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (res.ec != std::errc{} || !std::isfinite(value)) throw ParseError("number out of range", start);
    return make_number(value);
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
    std::string name(src_.substr(start, pos_ - start));
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '(') {
      auto it = std::find_if(std::begin(kFunctions), std::end(kFunctions), [&](const FuncEntry& e) { return name == e.name; });
      if (it == std::end(kFunctions)) throw UnknownFunctionError(name, start);
      ++pos_;
      NodePtr arg = expression();
      if (!accept(')')) throw ParseError("unbalanced parenthesis", position(), "')'");
      return make_unary(Kind::Call, arg, it->func);
    }
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw UnknownIdentifierError(name, start);
    return make_variable(name, static_cast<std::size_t>(it - vars_.begin()));
  }

  std::string_view src_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------- evaluation

// Scalar counterparts of the Jet3 helpers so one evaluator serves both.
double powi(double x, long k) { return std::pow(x, static_cast<double>(k)); }
double powr(double x, double p) { return std::pow(x, p); }
double reciprocal(double x) { return 1.0 / x; }
double value_of(double x) { return x; }
double value_of(const Jet3& x) { return x.v; }
bool constant_of(double) { return true; }
bool constant_of(const Jet3& x) { return x.is_constant(); }

bool integer_literal(const ExprNode& n, long& k) {
  const ExprNode* p = &n;
  double sign = 1.0;
  if (p->kind == Kind::Neg) {
    sign = -1.0;
    p = p->lhs.get();
  }
  if (p->kind != Kind::Number) return false;
  const double v = sign * p->number;
  if (v != std::floor(v) || std::abs(v) > 1e9) return false;
  k = static_cast<long>(v);
  return true;
}

template <class T>
T evaluate(const ExprNode& n, std::span<const T> slots) {
  using std::abs, std::cos, std::cosh, std::exp, std::log, std::sin, std::sinh, std::sqrt, std::tan, std::tanh;
  switch (n.kind) {
    case Kind::Number: return T(n.number);
    case Kind::Variable: return slots[n.slot];
    case Kind::Neg: return -evaluate(*n.lhs, slots);
    case Kind::Add: return evaluate(*n.lhs, slots) + evaluate(*n.rhs, slots);
    case Kind::Sub: return evaluate(*n.lhs, slots) - evaluate(*n.rhs, slots);
    case Kind::Mul: return evaluate(*n.lhs, slots) * evaluate(*n.rhs, slots);
    case Kind::Div: {
      const T den = evaluate(*n.rhs, slots);
      if (value_of(den) == 0.0) throw DomainError("division by zero", node_string(n));
      return evaluate(*n.lhs, slots) * reciprocal(den);
    }
    case Kind::Pow: {
      const T base = evaluate(*n.lhs, slots);
      long k = 0;
      if (integer_literal(*n.rhs, k)) {
        if (k < 0 && value_of(base) == 0.0) throw DomainError("negative power of zero", node_string(n));
        return powi(base, k);
      }
      const T expo = evaluate(*n.rhs, slots);
      const double b = value_of(base);
      if (constant_of(expo)) {
        const double p = value_of(expo);
        if (p == std::floor(p) && std::abs(p) <= 1e9) {
          if (p < 0.0 && b == 0.0) throw DomainError("negative power of zero", node_string(n));
          return powi(base, static_cast<long>(p));
        }
      }
      if (b < 0.0) throw DomainError("non-integer power of negative base", node_string(n));
      if (constant_of(expo)) {
        const double p = value_of(expo);
        if (b == 0.0 && p <= 0.0) throw DomainError("non-positive power of zero", node_string(n));
        return powr(base, p);
      }
      if (b == 0.0) throw DomainError("variable power of zero", node_string(n));
      return exp(expo * log(base));
    }
    case Kind::Call: {
      const T x = evaluate(*n.lhs, slots);
      switch (n.func) {
        case Func::Sin: return sin(x);
        case Func::Cos: return cos(x);
        case Func::Tan: return tan(x);
        case Func::Sinh: return sinh(x);
        case Func::Cosh: return cosh(x);
        case Func::Tanh: return tanh(x);
        case Func::Exp: return exp(x);
        case Func::Log:
          if (value_of(x) <= 0.0) throw DomainError("log of non-positive argument", node_string(n));
          return log(x);
        case Func::Sqrt:
          if (value_of(x) < 0.0) throw DomainError("sqrt of negative argument", node_string(n));
          return sqrt(x);
        case Func::Abs: return abs(x);
      }
    }
  }
  throw Error("corrupt expression node");
}

void collect_vars(const ExprNode& n, std::vector<bool>& used) {
  if (n.kind == Kind::Variable) used[n.slot] = true;
  if (n.lhs) collect_vars(*n.lhs, used);
  if (n.rhs) collect_vars(*n.rhs, used);
}

NodePtr remap(const NodePtr& n, const std::vector<std::string>& slots) {
  switch (n->kind) {
    case Kind::Number: return n;
    case Kind::Variable: {
      auto it = std::find(slots.begin(), slots.end(), n->name);
      if (it == slots.end()) throw UnboundVariableError(n->name);
      return make_variable(n->name, static_cast<std::size_t>(it - slots.begin()));
    }
    default: {
      auto copy = std::make_shared<ExprNode>(*n);
      if (n->lhs) copy->lhs = remap(n->lhs, slots);
      if (n->rhs) copy->rhs = remap(n->rhs, slots);
      return copy;
    }
  }
}

bool nodes_equal(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Kind::Number: return a.number == b.number;
    case Kind::Variable: return a.name == b.name;
    case Kind::Call:
      if (a.func != b.func) return false;
      [[fallthrough]];
    case Kind::Neg: return nodes_equal(*a.lhs, *b.lhs);
    default: return nodes_equal(*a.lhs, *b.lhs) && nodes_equal(*a.rhs, *b.rhs);
  }
}

std::vector<std::string> merged_slots(const ScalarExpr& a, const ScalarExpr& b) {
  std::vector<std::string> out = a.slots();
  for (const auto& s : b.slots())
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  return out;
}

bool is_number(const NodePtr& n, double v) { return n->kind == Kind::Number && n->number == v; }

}  // namespace

const char* func_name(Func f) {
  for (const auto& e : kFunctions)
    if (e.func == f) return e.name;
  return "?";
}

ScalarExpr::ScalarExpr() : root_(make_number(0.0)) {}

ScalarExpr::ScalarExpr(NodePtr root, std::vector<std::string> slots) : root_(std::move(root)), slots_(std::move(slots)) {}

ScalarExpr ScalarExpr::constant(double value, std::vector<std::string> slots) {
  NodePtr n = value < 0.0 ? make_unary(Kind::Neg, make_number(-value)) : make_number(value);
  return ScalarExpr(n, std::move(slots));
}

ScalarExpr ScalarExpr::variable(const std::string& name, std::vector<std::string> slots) {
  auto it = std::find(slots.begin(), slots.end(), name);
  if (it == slots.end()) throw UnboundVariableError(name);
  return ScalarExpr(make_variable(name, static_cast<std::size_t>(it - slots.begin())), std::move(slots));
}

std::vector<std::string> ScalarExpr::free_vars() const {
  std::vector<bool> used(slots_.size(), false);
  collect_vars(*root_, used);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < slots_.size(); ++i)
    if (used[i]) out.push_back(slots_[i]);
  return out;
}

ScalarExpr ScalarExpr::rebind(const std::vector<std::string>& slots) const { return ScalarExpr(remap(root_, slots), slots); }

Jet3 ScalarExpr::eval(std::span<const Jet3> slot_values) const {
  if (slot_values.size() < slots_.size()) throw Error("too few slot values");
  return evaluate<Jet3>(*root_, slot_values);
}

double ScalarExpr::eval(std::span<const double> slot_values) const {
  if (slot_values.size() < slots_.size()) throw Error("too few slot values");
  return evaluate<double>(*root_, slot_values);
}

bool ScalarExpr::is_constant_zero() const { return is_number(root_, 0.0); }

std::string ScalarExpr::to_string() const { return node_string(*root_); }

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
  auto slots = merged_slots(a, b);
  if (a.is_constant_zero()) return b.rebind(slots);
  if (b.is_constant_zero()) return a.rebind(slots);
  return ScalarExpr(make_binary(Kind::Add, a.rebind(slots).root(), b.rebind(slots).root()), slots);
}

ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
  auto slots = merged_slots(a, b);
  if (b.is_constant_zero()) return a.rebind(slots);
  return ScalarExpr(make_binary(Kind::Sub, a.rebind(slots).root(), b.rebind(slots).root()), slots);
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  auto slots = merged_slots(a, b);
  if (a.is_constant_zero() || b.is_constant_zero()) return ScalarExpr::constant(0.0, slots);
  if (is_number(a.root(), 1.0)) return b.rebind(slots);
  if (is_number(b.root(), 1.0)) return a.rebind(slots);
  return ScalarExpr(make_binary(Kind::Mul, a.rebind(slots).root(), b.rebind(slots).root()), slots);
}

ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
  auto slots = merged_slots(a, b);
  return ScalarExpr(make_binary(Kind::Div, a.rebind(slots).root(), b.rebind(slots).root()), slots);
}

ScalarExpr operator-(const ScalarExpr& a) {
  if (a.is_constant_zero()) return a;
  return ScalarExpr(make_unary(Kind::Neg, a.root()), a.slots());
}

ScalarExpr pow(const ScalarExpr& a, long exponent) {
  NodePtr e = exponent < 0 ? make_unary(Kind::Neg, make_number(static_cast<double>(-exponent)))
                           : make_number(static_cast<double>(exponent));
  return ScalarExpr(make_binary(Kind::Pow, a.root(), e), a.slots());
}

ScalarExpr apply(Func f, const ScalarExpr& a) { return ScalarExpr(make_unary(Kind::Call, a.root(), f), a.slots()); }

ScalarExpr parse_expr(std::string_view source, const std::vector<std::string>& allowed_vars) {
  Parser p(source, allowed_vars);
  return ScalarExpr(p.parse(), allowed_vars);
}

namespace {
template <class T>
T eval_bound(const ScalarExpr& expr, const std::map<std::string, T>& bindings) {
  std::vector<T> slots(expr.slots().size(), T(0.0));
  for (const auto& name : expr.free_vars()) {
    auto it = bindings.find(name);
    if (it == bindings.end()) throw UnboundVariableError(name);
    auto pos = std::find(expr.slots().begin(), expr.slots().end(), name) - expr.slots().begin();
    slots[static_cast<std::size_t>(pos)] = it->second;
  }
  return expr.eval(std::span<const T>(slots));
}
}  // namespace

Jet3 eval_jet(const ScalarExpr& expr, const std::map<std::string, Jet3>& bindings) { return eval_bound(expr, bindings); }

double eval_scalar(const ScalarExpr& expr, const std::map<std::string, double>& bindings) { return eval_bound(expr, bindings); }

bool structurally_equal(const ScalarExpr& a, const ScalarExpr& b) { return nodes_equal(*a.root(), *b.root()); }

}  // namespace grwsym
