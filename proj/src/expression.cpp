#include "hesse/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace hesse {

using namespace expr;

namespace {

NodePtr make(auto value) { return std::make_shared<const Node>(Node{std::move(value)}); }

class Parser {
 public:
  Parser(std::string_view source, int dimension) : src_(source), dimension_(dimension) {}

  NodePtr parse() {
    skip_space();
    if (pos_ == src_.size()) throw ParseError("empty expression", pos_);
    NodePtr root = parse_expr();
    skip_space();
    if (pos_ != src_.size()) throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= src_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (true) {
      if (accept('+'))
        lhs = make(Binary{BinaryOp::Add, lhs, parse_term()});
      else if (accept('-'))
        lhs = make(Binary{BinaryOp::Sub, lhs, parse_term()});
      else
        return lhs;
    }
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_unary();
    while (true) {
      if (accept('*'))
        lhs = make(Binary{BinaryOp::Mul, lhs, parse_unary()});
      else if (accept('/'))
        lhs = make(Binary{BinaryOp::Div, lhs, parse_unary()});
      else
        return lhs;
    }
  }

  NodePtr parse_unary() {
    if (accept('-')) return make(Negate{parse_unary()});
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  NodePtr parse_exponent() {
    if (accept('-')) return make(Negate{parse_exponent()});
    if (accept('+')) return parse_exponent();
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_primary();
    if (accept('^')) return make(Binary{BinaryOp::Pow, base, parse_exponent()});
    return base;
  }

  NodePtr parse_primary() {
    skip_space();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_identifier();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  NodePtr parse_number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) ++pos_;
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        pos_ = look;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
    }
    double value = 0;
    const auto [end, ec] = std::from_chars(src_.data() + start, src_.data() + pos_, value);
    if (ec != std::errc() || end != src_.data() + pos_) throw ParseError("malformed number", start);
    return make(Number{value});
  }

  NodePtr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    static constexpr std::pair<std::string_view, Function> functions[] = {
        {"log", Function::Log}, {"exp", Function::Exp}, {"sqrt", Function::Sqrt},
        {"sin", Function::Sin}, {"cos", Function::Cos}};
    for (const auto& [fname, fn] : functions) {
      if (name == fname) {
        expect('(');
        NodePtr arg = parse_expr();
        expect(')');
        return make(Call{fn, arg});
      }
    }
    if (name.size() >= 2 && name[0] == 'x' &&
        name.substr(1).find_first_not_of("0123456789") == std::string_view::npos) {
      int index = 0;
      std::from_chars(name.data() + 1, name.data() + name.size(), index);
      if (index < 1 || index > dimension_)
        throw ParseError("variable " + std::string(name) + " out of range for dimension " +
                             std::to_string(dimension_),
                         start);
      return make(Variable{index - 1});
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view src_;
  int dimension_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* function_name(Function fn) {
  switch (fn) {
    case Function::Log: return "log";
    case Function::Exp: return "exp";
    case Function::Sqrt: return "sqrt";
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
  }
  return "?";
}

char op_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
  }
  return '?';
}

void print(const NodePtr& node, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Number>) {
          out += format_number(n.value);
        } else if constexpr (std::is_same_v<T, Variable>) {
          out += "x" + std::to_string(n.index + 1);
        } else if constexpr (std::is_same_v<T, Negate>) {
          out += "(-";
          print(n.operand, out);
          out += ")";
        } else if constexpr (std::is_same_v<T, Binary>) {
          out += "(";
          print(n.lhs, out);
          out += ' ';
          out += op_symbol(n.op);
          out += ' ';
          print(n.rhs, out);
          out += ")";
        } else {
          out += function_name(n.fn);
          out += "(";
          print(n.arg, out);
          out += ")";
        }
      },
      node->data);
}

bool equal(const NodePtr& a, const NodePtr& b) {
  if (a == b) return true;
  if (!a || !b || a->data.index() != b->data.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b->data);
        if constexpr (std::is_same_v<T, Number>) return x.value == y.value;
        else if constexpr (std::is_same_v<T, Variable>) return x.index == y.index;
        else if constexpr (std::is_same_v<T, Negate>) return equal(x.operand, y.operand);
        else if constexpr (std::is_same_v<T, Binary>) return x.op == y.op && equal(x.lhs, y.lhs) && equal(x.rhs, y.rhs);
        else return x.fn == y.fn && equal(x.arg, y.arg);
      },
      a->data);
}

JetD eval(const NodePtr& node, std::span<const JetD> vars, int dimension, int order) {
  return std::visit(
      [&](const auto& n) -> JetD {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Number>) {
          return JetD::constant(dimension, order, n.value);
        } else if constexpr (std::is_same_v<T, Variable>) {
          return vars[n.index];
        } else if constexpr (std::is_same_v<T, Negate>) {
          return -eval(n.operand, vars, dimension, order);
        } else if constexpr (std::is_same_v<T, Binary>) {
          if (n.op == BinaryOp::Pow) {
            const JetD base = eval(n.lhs, vars, dimension, order);
            if (is_constant(n.rhs)) {
              const double e = eval(n.rhs, vars, dimension, order).value();
              if (std::nearbyint(e) == e && std::abs(e) <= 1 << 20) return pow(base, static_cast<int>(e));
              return pow(base, e);
            }
            const JetD e = eval(n.rhs, vars, dimension, order);
            if (!(base.value() > 0)) throw DomainError("variable exponent requires a positive base");
            return exp(e * log(base));
          }
          const JetD a = eval(n.lhs, vars, dimension, order);
          const JetD b = eval(n.rhs, vars, dimension, order);
          switch (n.op) {
            case BinaryOp::Add: return a + b;
            case BinaryOp::Sub: return a - b;
            case BinaryOp::Mul: return a * b;
            default: return a / b;
          }
        } else {
          const JetD a = eval(n.arg, vars, dimension, order);
          switch (n.fn) {
            case Function::Log: return log(a);
            case Function::Exp: return exp(a);
            case Function::Sqrt: return sqrt(a);
            case Function::Sin: return sin(a);
            default: return cos(a);
          }
        }
      },
      node->data);
}

}  // namespace

bool is_constant(const NodePtr& node) {
  return std::visit(
      [](const auto& n) -> bool {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Number>) return true;
        else if constexpr (std::is_same_v<T, Variable>) return false;
        else if constexpr (std::is_same_v<T, Negate>) return is_constant(n.operand);
        else if constexpr (std::is_same_v<T, Binary>) return is_constant(n.lhs) && is_constant(n.rhs);
        else return is_constant(n.arg);
      },
      node->data);
}

Expression parse_potential(std::string_view source, int dimension) {
  if (dimension < 0) throw InvalidArgument("negative dimension");
  return Expression(dimension, Parser(source, dimension).parse());
}

JetD Expression::evaluate(std::span<const JetD> variables) const {
  if (!root_) throw InvalidArgument("evaluating an empty expression");
  if (static_cast<int>(variables.size()) != dimension_)
    throw InvalidArgument("expression of dimension " + std::to_string(dimension_) + " given " +
                          std::to_string(variables.size()) + " variables");
  const int order = variables.empty() ? 0 : variables.front().order();
  return eval(root_, variables, dimension_, order);
}

JetD Expression::jet(const Eigen::VectorXd& point, int order) const {
  const auto vars = coordinate_jets<double>(point, order);
  return evaluate(vars);
}

std::string Expression::to_string() const {
  std::string out;
  if (root_) print(root_, out);
  return out;
}

bool operator==(const Expression& a, const Expression& b) {
  return a.dimension_ == b.dimension_ && equal(a.root_, b.root_);
}

}  // namespace hesse
