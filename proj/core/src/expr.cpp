#include "apsc/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "apsc/error.hpp"

namespace apsc {

namespace {

enum class Tok { Number, Ident, Op, End };

struct Token {
  Tok kind = Tok::End;
  std::size_t offset = 0;
  double number = 0.0;
  std::string text;
  char op = 0;
};

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (true) {
    while (i < n && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= n) break;
    const char c = s[i];
    Token t;
    t.offset = i;
    if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(s[i + 1]))) {
      std::size_t j = i;
      while (j < n && is_digit(s[j])) ++j;
      if (j < n && s[j] == '.') {
        ++j;
        while (j < n && is_digit(s[j])) ++j;
      }
      if (j < n && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < n && (s[k] == '+' || s[k] == '-')) ++k;
        if (k >= n || !is_digit(s[k])) throw ParseError(k, "malformed exponent in number");
        while (k < n && is_digit(s[k])) ++k;
        j = k;
      }
      const auto res = std::from_chars(s.data() + i, s.data() + j, t.number);
      if (res.ec != std::errc() || res.ptr != s.data() + j)
        throw ParseError(i, "malformed number");
      t.kind = Tok::Number;
      i = j;
    } else if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < n && is_ident_char(s[j])) ++j;
      t.kind = Tok::Ident;
      t.text = s.substr(i, j - i);
      i = j;
    } else if (std::string_view("+-*/^()").find(c) != std::string_view::npos) {
      t.kind = Tok::Op;
      t.op = c;
      ++i;
    } else {
      throw ParseError(i, std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.offset = n;
  out.push_back(end);
  return out;
}

using NodePtr = std::shared_ptr<const ExprNode>;

class Parser {
public:
  Parser(const std::string& src, const Dialect& d) : toks_(lex(src)), dialect_(d) {}

  NodePtr run() {
    NodePtr e = expr();
    const Token& t = peek();
    if (t.kind != Tok::End) {
      if (t.kind == Tok::Op && t.op == ')') throw ParseError(t.offset, "unbalanced ')'");
      throw ParseError(t.offset, "unexpected token after expression");
    }
    return e;
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  bool at_op(char c) const { return peek().kind == Tok::Op && peek().op == c; }

  NodePtr expr() {
    NodePtr lhs = term();
    while (at_op('+') || at_op('-')) {
      const Token op = toks_[pos_++];
      lhs = binary(op.op == '+' ? BinaryOp::Add : BinaryOp::Sub, lhs, term(), op.offset);
    }
    return lhs;
  }

  NodePtr term() {
    NodePtr lhs = factor();
    while (at_op('*') || at_op('/')) {
      const Token op = toks_[pos_++];
      lhs = binary(op.op == '*' ? BinaryOp::Mul : BinaryOp::Div, lhs, factor(), op.offset);
    }
    return lhs;
  }

  NodePtr factor() {
    NodePtr base = unary();
    if (at_op('^')) {
      const Token op = toks_[pos_++];
      return binary(BinaryOp::Pow, base, factor(), op.offset);
    }
    return base;
  }

  NodePtr unary() {
    if (at_op('-')) {
      const Token op = toks_[pos_++];
      return make_unary(UnaryOp::Neg, unary(), op.offset);
    }
    return primary();
  }

  NodePtr primary() {
    const Token t = peek();
    if (t.kind == Tok::Number) {
      ++pos_;
      auto n = std::make_shared<ExprNode>();
      n->kind = NodeKind::Constant;
      n->constant = t.number;
      n->offset = t.offset;
      return n;
    }
    if (t.kind == Tok::Ident) {
      ++pos_;
      if (at_op('(')) {
        const auto op = function(t);
        ++pos_;
        NodePtr arg = expr();
        close_paren();
        return make_unary(op, arg, t.offset);
      }
      if (is_function_name(t.text))
        throw ParseError(t.offset, "function '" + t.text + "' needs a parenthesized argument");
      auto n = std::make_shared<ExprNode>();
      n->offset = t.offset;
      n->name = t.text;
      const auto& vars = dialect_.variables;
      const auto it = std::find(vars.begin(), vars.end(), t.text);
      if (it != vars.end()) {
        n->kind = NodeKind::Variable;
        n->variable = static_cast<int>(it - vars.begin());
      } else {
        n->kind = NodeKind::Parameter;
      }
      return n;
    }
    if (at_op('(')) {
      ++pos_;
      NodePtr e = expr();
      close_paren();
      return e;
    }
    if (t.kind == Tok::End) throw ParseError(t.offset, "expected an operand, found end of input");
    if (t.kind == Tok::Op && t.op == ')') throw ParseError(t.offset, "unbalanced ')'");
    throw ParseError(t.offset, std::string("expected an operand, found '") + t.op + "'");
  }

  void close_paren() {
    if (!at_op(')')) throw ParseError(peek().offset, "expected ')'");
    ++pos_;
  }

  bool is_function_name(const std::string& s) const {
    return s == "exp" || s == "log" || s == "sqrt" || (dialect_.trig && (s == "sin" || s == "cos"));
  }

  UnaryOp function(const Token& t) const {
    if (t.text == "exp") return UnaryOp::Exp;
    if (t.text == "log") return UnaryOp::Log;
    if (t.text == "sqrt") return UnaryOp::Sqrt;
    if (dialect_.trig && t.text == "sin") return UnaryOp::Sin;
    if (dialect_.trig && t.text == "cos") return UnaryOp::Cos;
    throw ParseError(t.offset, "unknown function '" + t.text + "'");
  }

  static NodePtr binary(BinaryOp op, NodePtr l, NodePtr r, std::size_t off) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Binary;
    n->binary_op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    n->offset = off;
    return n;
  }

  static NodePtr make_unary(UnaryOp op, NodePtr a, std::size_t off) {
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Unary;
    n->unary_op = op;
    n->lhs = std::move(a);
    n->offset = off;
    return n;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Dialect& dialect_;
};

const char* unary_name(UnaryOp op) {
  switch (op) {
    case UnaryOp::Neg: return "-";
    case UnaryOp::Exp: return "exp";
    case UnaryOp::Log: return "log";
    case UnaryOp::Sqrt: return "sqrt";
    case UnaryOp::Sin: return "sin";
    case UnaryOp::Cos: return "cos";
  }
  return "?";
}

char binary_symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
  }
  return '?';
}

Jet2 sin_of(const Jet2& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return Jet2::unary(a, s, c, -s);
}
Jet2 cos_of(const Jet2& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return Jet2::unary(a, c, -s, -c);
}
double sin_of(double a) { return std::sin(a); }
double cos_of(double a) { return std::cos(a); }

template <class T>
T eval_node(const ExprNode& n, std::span<const T> vars, const ParamTable& params) {
  switch (n.kind) {
    case NodeKind::Constant:
      return T(n.constant);
    case NodeKind::Variable:
      if (static_cast<std::size_t>(n.variable) >= vars.size())
        throw std::invalid_argument("variable '" + n.name + "' has no value");
      return vars[n.variable];
    case NodeKind::Parameter: {
      const auto it = params.find(n.name);
      if (it == params.end())
        throw std::invalid_argument("unbound parameter '" + n.name + "' at offset " +
                                    std::to_string(n.offset));
      return T(it->second);
    }
    case NodeKind::Unary: {
      const T a = eval_node(*n.lhs, vars, params);
      try {
        switch (n.unary_op) {
          case UnaryOp::Neg: return -a;
          case UnaryOp::Exp: return apsc::exp(a);
          case UnaryOp::Log: return apsc::log(a);
          case UnaryOp::Sqrt: return apsc::sqrt(a);
          case UnaryOp::Sin: return sin_of(a);
          case UnaryOp::Cos: return cos_of(a);
        }
      } catch (const DomainError& e) {
        throw DomainError(std::string(unary_name(n.unary_op)) + " at offset " +
                              std::to_string(n.offset),
                          e.what());
      }
      break;
    }
    case NodeKind::Binary: {
      const T a = eval_node(*n.lhs, vars, params);
      const T b = eval_node(*n.rhs, vars, params);
      try {
        switch (n.binary_op) {
          case BinaryOp::Add: return a + b;
          case BinaryOp::Sub: return a - b;
          case BinaryOp::Mul: return a * b;
          case BinaryOp::Div:
            if (value_of(b) == 0.0) throw DomainError("div", "division by zero");
            return a / b;
          case BinaryOp::Pow: return apsc::pow(a, b);
        }
      } catch (const DomainError& e) {
        throw DomainError(std::string(1, binary_symbol(n.binary_op)) + " at offset " +
                              std::to_string(n.offset),
                          e.what());
      }
      break;
    }
  }
  throw std::logic_error("corrupt expression node");
}

void collect_parameters(const ExprNode& n, std::set<std::string>& out) {
  if (n.kind == NodeKind::Parameter) out.insert(n.name);
  if (n.lhs) collect_parameters(*n.lhs, out);
  if (n.rhs) collect_parameters(*n.rhs, out);
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Expr::Expr(std::shared_ptr<const ExprNode> root, std::string source, Dialect dialect)
    : root_(std::move(root)), source_(std::move(source)), dialect_(std::move(dialect)) {}

std::set<std::string> Expr::parameters() const {
  std::set<std::string> out;
  if (root_) collect_parameters(*root_, out);
  return out;
}

void Expr::require_bound(const ParamTable& params) const {
  for (const auto& p : parameters())
    if (!params.count(p)) throw std::invalid_argument("unbound parameter '" + p + "'");
}

double Expr::eval(std::span<const double> vars, const ParamTable& params) const {
  return eval_node<double>(*root_, vars, params);
}

Jet2 Expr::eval(std::span<const Jet2> vars, const ParamTable& params) const {
  return eval_node<Jet2>(*root_, vars, params);
}

Expr parse(const std::string& source, const Dialect& dialect) {
  if (source.find_first_not_of(" \t\r\n") == std::string::npos)
    throw ParseError(0, "empty expression");
  Parser p(source, dialect);
  return Expr(p.run(), source, dialect);
}

std::string print(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::Constant: return format_number(n.constant);
    case NodeKind::Variable:
    case NodeKind::Parameter: return n.name;
    case NodeKind::Unary:
      if (n.unary_op == UnaryOp::Neg) return "(-" + print(*n.lhs) + ")";
      return std::string(unary_name(n.unary_op)) + "(" + print(*n.lhs) + ")";
    case NodeKind::Binary:
      return "(" + print(*n.lhs) + " " + binary_symbol(n.binary_op) + " " + print(*n.rhs) + ")";
  }
  return {};
}

std::string print(const Expr& e) { return print(e.root()); }

bool same_structure(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case NodeKind::Constant: return a.constant == b.constant;
    case NodeKind::Variable: return a.variable == b.variable;
    case NodeKind::Parameter: return a.name == b.name;
    case NodeKind::Unary: return a.unary_op == b.unary_op && same_structure(*a.lhs, *b.lhs);
    case NodeKind::Binary:
      return a.binary_op == b.binary_op && same_structure(*a.lhs, *b.lhs) &&
             same_structure(*a.rhs, *b.rhs);
  }
  return false;
}

}  // namespace apsc
