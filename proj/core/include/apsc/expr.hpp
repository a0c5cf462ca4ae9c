#pragma once

#include <array>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "apsc/jet.hpp"

namespace apsc {

/// Named real bindings, ordered by name.
using ParamTable = std::map<std::string, double>;

enum class NodeKind { Constant, Variable, Parameter, Unary, Binary };
enum class UnaryOp { Neg, Exp, Log, Sqrt, Sin, Cos };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprNode {
  NodeKind kind = NodeKind::Constant;
  std::size_t offset = 0;  // source position of the token that produced the node
  double constant = 0.0;
  int variable = -1;
  std::string name;  // parameter name, or variable spelling
  UnaryOp unary_op = UnaryOp::Neg;
  BinaryOp binary_op = BinaryOp::Add;
  std::shared_ptr<const ExprNode> lhs;  // operand of a unary node
  std::shared_ptr<const ExprNode> rhs;
};

/// Which identifiers name variables, and whether sin/cos are accepted.
/// The energy dialect uses I1, I2, I3 and exp/log/sqrt only; boundary data
/// uses x1, x2 and may also call sin and cos.
struct Dialect {
  std::vector<std::string> variables{"I1", "I2", "I3"};
  bool trig = false;

  static Dialect energy() { return {}; }
  static Dialect boundary() { return {{"x1", "x2"}, true}; }
};

/// Immutable parsed expression.
class Expr {
public:
  Expr() = default;
  Expr(std::shared_ptr<const ExprNode> root, std::string source, Dialect dialect);

  const ExprNode& root() const { return *root_; }
  const std::string& source() const { return source_; }
  const Dialect& dialect() const { return dialect_; }

  /// Parameter names referenced anywhere in the tree.
  std::set<std::string> parameters() const;

  /// Throws std::invalid_argument naming the first parameter missing from `params`.
  void require_bound(const ParamTable& params) const;

  double eval(std::span<const double> vars, const ParamTable& params) const;
  Jet2 eval(std::span<const Jet2> vars, const ParamTable& params) const;

private:
  std::shared_ptr<const ExprNode> root_;
  std::string source_;
  Dialect dialect_;
};

/// Recursive-descent parser for
///   expr := term (("+"|"-") term)* ; term := factor (("*"|"/") factor)* ;
///   factor := unary ("^" factor)? ; unary := "-" unary | primary ;
///   primary := number | ident | ident "(" expr ")" | "(" expr ")" .
/// Throws ParseError with the offending offset.
Expr parse(const std::string& source, const Dialect& dialect = Dialect::energy());

/// Fully parenthesized text that parses back to the same tree.
std::string print(const Expr& e);
std::string print(const ExprNode& n);

/// Structural equality, ignoring source offsets.
bool same_structure(const ExprNode& a, const ExprNode& b);

}  // namespace apsc
