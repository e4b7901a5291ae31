#include "witt/expression.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace witt {

namespace {
constexpr double kDivGuard = 1e-14;
}

Jet1 operator+(const Jet1& a, const Jet1& b) { return {a.v + b.v, a.g + b.g}; }
Jet1 operator-(const Jet1& a, const Jet1& b) { return {a.v - b.v, a.g - b.g}; }
Jet1 operator-(const Jet1& a) { return {-a.v, -a.g}; }
Jet1 operator*(const Jet1& a, const Jet1& b) { return {a.v * b.v, a.g * b.v + b.g * a.v}; }
Jet1 operator/(const Jet1& a, const Jet1& b) {
  if (std::abs(b.v) < kDivGuard) fail(ErrorCode::DomainGuard, "division by value below guard");
  const double inv = 1.0 / b.v;
  return {a.v * inv, (a.g - b.g * (a.v * inv)) * inv};
}
Jet1 sin(const Jet1& a) { return {std::sin(a.v), std::cos(a.v) * a.g}; }
Jet1 cos(const Jet1& a) { return {std::cos(a.v), -std::sin(a.v) * a.g}; }
Jet1 exp(const Jet1& a) {
  const double e = std::exp(a.v);
  return {e, e * a.g};
}

Jet2 operator+(const Jet2& a, const Jet2& b) { return {a.v + b.v, a.g + b.g, a.h + b.h}; }
Jet2 operator-(const Jet2& a, const Jet2& b) { return {a.v - b.v, a.g - b.g, a.h - b.h}; }
Jet2 operator-(const Jet2& a) { return {-a.v, -a.g, -a.h}; }
Jet2 operator*(const Jet2& a, const Jet2& b) {
  return {a.v * b.v, a.g * b.v + b.g * a.v,
          a.h * b.v + b.h * a.v + a.g * b.g.transpose() + b.g * a.g.transpose()};
}
Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (std::abs(b.v) < kDivGuard) fail(ErrorCode::DomainGuard, "division by value below guard");
  const double inv = 1.0 / b.v;
  Jet2 binv{inv, -b.g * (inv * inv),
            -b.h * (inv * inv) + 2.0 * (inv * inv * inv) * b.g * b.g.transpose()};
  return a * binv;
}

namespace {
Jet2 chain(const Jet2& a, double f, double df, double ddf) {
  return {f, df * a.g, df * a.h + ddf * a.g * a.g.transpose()};
}
}  // namespace

Jet2 sin(const Jet2& a) { return chain(a, std::sin(a.v), std::cos(a.v), -std::sin(a.v)); }
Jet2 cos(const Jet2& a) { return chain(a, std::cos(a.v), -std::sin(a.v), -std::cos(a.v)); }
Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.v);
  return chain(a, e, e, e);
}

struct Expression::Node {
  enum class Op { Const, Coord, Add, Sub, Mul, Div, Neg, Sin, Cos, Exp };
  Op op = Op::Const;
  double value = 0.0;
  int coord = -1;
  std::shared_ptr<const Node> a, b;
};

namespace {

using Node = Expression::Node;
using NodePtr = std::shared_ptr<const Node>;

NodePtr make_op(Node::Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr make_const(double value) {
  auto n = std::make_shared<Node>();
  n->op = Node::Op::Const;
  n->value = value;
  return n;
}

NodePtr make_coord(int index) {
  auto n = std::make_shared<Node>();
  n->op = Node::Op::Coord;
  n->coord = index;
  return n;
}

template <typename Scalar, typename MakeConst, typename MakeCoord>
Scalar eval_node(const Node& n, const MakeConst& mk_const, const MakeCoord& mk_coord) {
  using Op = Node::Op;
  switch (n.op) {
    case Op::Const: return mk_const(n.value);
    case Op::Coord: return mk_coord(n.coord);
    case Op::Add:
      return eval_node<Scalar>(*n.a, mk_const, mk_coord) + eval_node<Scalar>(*n.b, mk_const, mk_coord);
    case Op::Sub:
      return eval_node<Scalar>(*n.a, mk_const, mk_coord) - eval_node<Scalar>(*n.b, mk_const, mk_coord);
    case Op::Mul:
      return eval_node<Scalar>(*n.a, mk_const, mk_coord) * eval_node<Scalar>(*n.b, mk_const, mk_coord);
    case Op::Div:
      return eval_node<Scalar>(*n.a, mk_const, mk_coord) / eval_node<Scalar>(*n.b, mk_const, mk_coord);
    case Op::Neg: return -eval_node<Scalar>(*n.a, mk_const, mk_coord);
    case Op::Sin: {
      using std::sin;
      return sin(eval_node<Scalar>(*n.a, mk_const, mk_coord));
    }
    case Op::Cos: {
      using std::cos;
      return cos(eval_node<Scalar>(*n.a, mk_const, mk_coord));
    }
    case Op::Exp: {
      using std::exp;
      return exp(eval_node<Scalar>(*n.a, mk_const, mk_coord));
    }
  }
  fail(ErrorCode::ParseError, "corrupt expression node");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string emit(const Node& n, const std::vector<std::string>& names) {
  using Op = Node::Op;
  switch (n.op) {
    case Op::Const: return format_number(n.value);
    case Op::Coord:
      if (n.coord < 0 || n.coord >= static_cast<int>(names.size()))
        fail(ErrorCode::ParseError, "coordinate index out of range in emission");
      return names[n.coord];
    case Op::Add: return "(" + emit(*n.a, names) + " + " + emit(*n.b, names) + ")";
    case Op::Sub: return "(" + emit(*n.a, names) + " - " + emit(*n.b, names) + ")";
    case Op::Mul: return "(" + emit(*n.a, names) + " * " + emit(*n.b, names) + ")";
    case Op::Div: return "(" + emit(*n.a, names) + " / " + emit(*n.b, names) + ")";
    case Op::Neg: return "(-" + emit(*n.a, names) + ")";
    case Op::Sin: return "sin(" + emit(*n.a, names) + ")";
    case Op::Cos: return "cos(" + emit(*n.a, names) + ")";
    case Op::Exp: return "exp(" + emit(*n.a, names) + ")";
  }
  return "";
}

class Parser {
public:
  Parser(const std::string& text, const std::vector<std::string>& names)
      : text_(text), names_(names) {}

  NodePtr parse() {
    auto e = expression();
    skip_space();
    if (pos_ != text_.size())
      fail(ErrorCode::ParseError,
           "trailing input at position " + std::to_string(pos_) + " in '" + text_ + "'");
    return e;
  }

private:
  NodePtr expression() {
    auto lhs = term();
    for (;;) {
      skip_space();
      if (consume('+')) {
        lhs = make_op(Node::Op::Add, lhs, term());
      } else if (consume('-')) {
        lhs = make_op(Node::Op::Sub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  NodePtr term() {
    auto lhs = factor();
    for (;;) {
      skip_space();
      if (consume('*')) {
        lhs = make_op(Node::Op::Mul, lhs, factor());
      } else if (consume('/')) {
        lhs = make_op(Node::Op::Div, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  NodePtr factor() {
    skip_space();
    if (consume('-')) return make_op(Node::Op::Neg, factor());
    if (consume('+')) return factor();
    return primary();
  }

  NodePtr primary() {
    skip_space();
    if (pos_ >= text_.size())
      fail(ErrorCode::ParseError, "unexpected end of expression '" + text_ + "'");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (consume('(')) {
      auto e = expression();
      expect(')');
      return e;
    }
    fail(ErrorCode::ParseError, std::string("unexpected character '") + c + "' in '" + text_ + "'");
  }

  NodePtr number() {
    size_t end = pos_;
    while (end < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '.' ||
            text_[end] == 'e' || text_[end] == 'E' ||
            ((text_[end] == '+' || text_[end] == '-') && end > pos_ &&
             (text_[end - 1] == 'e' || text_[end - 1] == 'E'))))
      ++end;
    const std::string tok = text_.substr(pos_, end - pos_);
    char* parsed_end = nullptr;
    const double v = std::strtod(tok.c_str(), &parsed_end);
    if (parsed_end == tok.c_str() || *parsed_end != '\0')
      fail(ErrorCode::ParseError, "bad numeric literal '" + tok + "'");
    pos_ = end;
    return make_const(v);
  }

  NodePtr identifier() {
    size_t end = pos_;
    while (end < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
      ++end;
    const std::string name = text_.substr(pos_, end - pos_);
    pos_ = end;
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      auto arg = expression();
      expect(')');
      if (name == "sin") return make_op(Node::Op::Sin, arg);
      if (name == "cos") return make_op(Node::Op::Cos, arg);
      if (name == "exp") return make_op(Node::Op::Exp, arg);
      fail(ErrorCode::ParseError, "unknown function '" + name + "'");
    }
    for (size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return make_coord(static_cast<int>(i));
    fail(ErrorCode::ParseError, "unknown name '" + name + "' (not a declared coordinate)");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!consume(c)) fail(ErrorCode::ParseError, std::string("expected '") + c + "' in '" + text_ + "'");
  }

  const std::string& text_;
  const std::vector<std::string>& names_;
  size_t pos_ = 0;
};

}  // namespace

Expression Expression::constant(double value) { return Expression(make_const(value)); }

Expression Expression::coordinate(int index) { return Expression(make_coord(index)); }

double Expression::eval(const VectorXd& coords) const {
  if (!node_) fail(ErrorCode::ParseError, "empty expression");
  return eval_node<double>(*node_, [](double v) { return v; }, [&](int i) { return coords[i]; });
}

Jet1 Expression::eval_jet1(const VectorXd& coords) const {
  if (!node_) fail(ErrorCode::ParseError, "empty expression");
  const int d = static_cast<int>(coords.size());
  return eval_node<Jet1>(*node_, [d](double v) { return Jet1::constant(d, v); },
                         [&](int i) { return Jet1::coordinate(d, i, coords[i]); });
}

Jet2 Expression::eval_jet2(const VectorXd& coords) const {
  if (!node_) fail(ErrorCode::ParseError, "empty expression");
  const int d = static_cast<int>(coords.size());
  return eval_node<Jet2>(*node_, [d](double v) { return Jet2::constant(d, v); },
                         [&](int i) { return Jet2::coordinate(d, i, coords[i]); });
}

Jet2 jet_eval(const Expression& expr, const VectorXd& x) { return expr.eval_jet2(x); }

std::string Expression::str(const std::vector<std::string>& coord_names) const {
  if (!node_) fail(ErrorCode::ParseError, "empty expression");
  return emit(*node_, coord_names);
}

Expression operator+(const Expression& a, const Expression& b) {
  return Expression(make_op(Node::Op::Add, a.node_, b.node_));
}
Expression operator-(const Expression& a, const Expression& b) {
  return Expression(make_op(Node::Op::Sub, a.node_, b.node_));
}
Expression operator-(const Expression& a) { return Expression(make_op(Node::Op::Neg, a.node_)); }
Expression operator*(const Expression& a, const Expression& b) {
  return Expression(make_op(Node::Op::Mul, a.node_, b.node_));
}
Expression operator/(const Expression& a, const Expression& b) {
  return Expression(make_op(Node::Op::Div, a.node_, b.node_));
}
Expression expr_sin(const Expression& a) { return Expression(make_op(Node::Op::Sin, a.node_)); }
Expression expr_cos(const Expression& a) { return Expression(make_op(Node::Op::Cos, a.node_)); }
Expression expr_exp(const Expression& a) { return Expression(make_op(Node::Op::Exp, a.node_)); }

Expression parse_expression(const std::string& text, const std::vector<std::string>& coord_names) {
  return Expression(Parser(text, coord_names).parse());
}

}  // namespace witt
