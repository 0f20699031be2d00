#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hesse/jet.hpp"

namespace hesse {

// Abstract syntax tree of a potential expression over x1..xn.
//
// Grammar (whitespace insignificant):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' exponent)?
//   exponent:= ('-' | '+') exponent | power          (right associative)
//   primary := number | 'x' digits | func '(' expr ')' | '(' expr ')'
//   func    := log | exp | sqrt | sin | cos
//
// Precedence is ^ > unary minus > *, / > +, -. Variables are 1-based in the
// source text and 0-based in the tree.
namespace expr {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Log, Exp, Sqrt, Sin, Cos };

struct Number {
  double value;
};
struct Variable {
  int index;
};
struct Negate {
  NodePtr operand;
};
struct Binary {
  BinaryOp op;
  NodePtr lhs;
  NodePtr rhs;
};
struct Call {
  Function fn;
  NodePtr arg;
};

struct Node {
  std::variant<Number, Variable, Negate, Binary, Call> data;
};

}  // namespace expr

class Expression {
 public:
  Expression() = default;
  Expression(int dimension, expr::NodePtr root) : dimension_(dimension), root_(std::move(root)) {}

  int dimension() const { return dimension_; }
  const expr::NodePtr& root() const { return root_; }
  bool empty() const { return root_ == nullptr; }

  // Evaluates the expression on coordinate jets. Throws DomainError when an
  // operation leaves its domain at the expansion point.
  JetD evaluate(std::span<const JetD> variables) const;
  JetD jet(const Eigen::VectorXd& point, int order) const;
  double value(const Eigen::VectorXd& point) const { return jet(point, 0).value(); }

  // Fully parenthesised source text; parsing it yields a structurally equal tree.
  std::string to_string() const;

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  int dimension_ = 0;
  expr::NodePtr root_;
};

Expression parse_potential(std::string_view source, int dimension);

// Constant leaves only (no variables).
bool is_constant(const expr::NodePtr& node);

}  // namespace hesse
