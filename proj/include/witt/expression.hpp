#ifndef WITT_EXPRESSION_HPP
#define WITT_EXPRESSION_HPP

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "witt/types.hpp"

namespace witt {

/// First-order forward jet: value and gradient with respect to the chart
/// coordinates.
struct Jet1 {
  double v = 0.0;
  VectorXd g;

  static Jet1 constant(int dim, double value) { return {value, VectorXd::Zero(dim)}; }
  static Jet1 coordinate(int dim, int i, double value) {
    Jet1 j = constant(dim, value);
    j.g[i] = 1.0;
    return j;
  }
};

/// Second-order forward jet: value, gradient and (symmetric) Hessian.
struct Jet2 {
  double v = 0.0;
  VectorXd g;
  MatrixXd h;

  static Jet2 constant(int dim, double value) {
    return {value, VectorXd::Zero(dim), MatrixXd::Zero(dim, dim)};
  }
  static Jet2 coordinate(int dim, int i, double value) {
    Jet2 j = constant(dim, value);
    j.g[i] = 1.0;
    return j;
  }
};

Jet1 operator+(const Jet1&, const Jet1&);
Jet1 operator-(const Jet1&, const Jet1&);
Jet1 operator-(const Jet1&);
Jet1 operator*(const Jet1&, const Jet1&);
Jet1 operator/(const Jet1&, const Jet1&);
Jet1 sin(const Jet1&);
Jet1 cos(const Jet1&);
Jet1 exp(const Jet1&);

Jet2 operator+(const Jet2&, const Jet2&);
Jet2 operator-(const Jet2&, const Jet2&);
Jet2 operator-(const Jet2&);
Jet2 operator*(const Jet2&, const Jet2&);
Jet2 operator/(const Jet2&, const Jet2&);
Jet2 sin(const Jet2&);
Jet2 cos(const Jet2&);
Jet2 exp(const Jet2&);

/// Closed expression over named chart coordinates. Nodes cover constants,
/// coordinates, the four arithmetic operations and sin/cos/exp; evaluation is
/// generic over the scalar so the same tree yields values or forward jets.
class Expression {
public:
  Expression() = default;

  static Expression constant(double value);
  static Expression coordinate(int index);

  bool valid() const { return node_ != nullptr; }

  double eval(const VectorXd& coords) const;
  Jet1 eval_jet1(const VectorXd& coords) const;
  Jet2 eval_jet2(const VectorXd& coords) const;

  /// Normalized emission; parse(str()) reproduces the tree.
  std::string str(const std::vector<std::string>& coord_names) const;

  friend Expression operator+(const Expression&, const Expression&);
  friend Expression operator-(const Expression&, const Expression&);
  friend Expression operator-(const Expression&);
  friend Expression operator*(const Expression&, const Expression&);
  friend Expression operator/(const Expression&, const Expression&);
  friend Expression expr_sin(const Expression&);
  friend Expression expr_cos(const Expression&);
  friend Expression expr_exp(const Expression&);
  friend Expression parse_expression(const std::string&, const std::vector<std::string>&);

  struct Node;

private:
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Parses `text` over the declared coordinate names. Unknown identifiers are
/// a ParseError; the guard against division by tiny values fires at
/// evaluation time as DomainGuard.
Expression parse_expression(const std::string& text, const std::vector<std::string>& coord_names);

/// Second-order forward evaluation at a point.
Jet2 jet_eval(const Expression& expr, const VectorXd& x);

}  // namespace witt

#endif
