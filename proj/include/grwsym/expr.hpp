#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "grwsym/jet.hpp"

namespace grwsym {

enum class Func { Sin, Cos, Tan, Sinh, Cosh, Tanh, Exp, Log, Sqrt, Abs };

const char* func_name(Func f);

/// Immutable expression tree node. Variables refer to a slot of the owning
/// ScalarExpr's slot list.
struct ExprNode {
  enum class Kind { Number, Variable, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind = Kind::Number;
  double number = 0.0;
  std::string name;  // variable name
  std::size_t slot = 0;
  Func func = Func::Sin;
  std::shared_ptr<const ExprNode> lhs;  // also the operand of Neg and Call
  std::shared_ptr<const ExprNode> rhs;
};

using NodePtr = std::shared_ptr<const ExprNode>;

/// A parsed scalar field. `slots()` is the ordered variable list the tree is
/// bound against; `free_vars()` is the subset actually referenced.
class ScalarExpr {
 public:
  ScalarExpr();  // the constant 0 with no slots

  static ScalarExpr constant(double value, std::vector<std::string> slots = {});
  static ScalarExpr variable(const std::string& name, std::vector<std::string> slots);

  const NodePtr& root() const { return root_; }
  const std::vector<std::string>& slots() const { return slots_; }
  std::vector<std::string> free_vars() const;

  /// Re-express over a different slot list; every referenced variable must be present.
  ScalarExpr rebind(const std::vector<std::string>& slots) const;

  /// Evaluate with one value per slot (unreferenced slots are ignored).
  Jet3 eval(std::span<const Jet3> slot_values) const;
  double eval(std::span<const double> slot_values) const;

  bool is_constant_zero() const;
  std::string to_string() const;

  friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator-(const ScalarExpr& a);
  friend ScalarExpr pow(const ScalarExpr& a, long exponent);
  friend ScalarExpr apply(Func f, const ScalarExpr& a);

 private:
  ScalarExpr(NodePtr root, std::vector<std::string> slots);
  friend ScalarExpr parse_expr(std::string_view, const std::vector<std::string>&);

  NodePtr root_;
  std::vector<std::string> slots_;
};

/// Grammar: decimal literals (optional exponent), identifiers from
/// `allowed_vars`, + - * / ^ (^ right-associative and tighter than unary
/// minus), parentheses and sin cos tan sinh cosh tanh exp log sqrt abs.
ScalarExpr parse_expr(std::string_view source, const std::vector<std::string>& allowed_vars);

Jet3 eval_jet(const ScalarExpr& expr, const std::map<std::string, Jet3>& bindings);
double eval_scalar(const ScalarExpr& expr, const std::map<std::string, double>& bindings);

bool structurally_equal(const ScalarExpr& a, const ScalarExpr& b);

}  // namespace grwsym
