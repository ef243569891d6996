#include "certopt/expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace certopt {

Expr Expr::variable(int index) {
  if (index < 0) throw std::invalid_argument("Expr::variable: negative index");
  Expr e;
  ExprNode n;
  n.op = ExprOp::Variable;
  n.var = index;
  e.nodes_.push_back(n);
  e.dimension_ = index + 1;
  return e;
}

Expr Expr::constant(double value) { return constant(Interval(value)); }

Expr Expr::constant(const Interval& enclosure) {
  Expr e;
  ExprNode n;
  n.op = ExprOp::Constant;
  n.value = enclosure;
  e.nodes_.push_back(n);
  return e;
}

Expr Expr::pi() { return constant(pi_interval()); }

int Expr::occurrences(int index) const {
  int count = 0;
  for (const ExprNode& n : nodes_) {
    if (n.op == ExprOp::Variable && n.var == index) ++count;
  }
  return count;
}

Expr Expr::combine(ExprOp op, const Expr& a, const Expr& b) {
  if (!a.valid() || !b.valid()) {
    throw std::invalid_argument("Expr: operand is default-constructed");
  }
  Expr e;
  e.nodes_.reserve(a.nodes_.size() + b.nodes_.size() + 1);
  e.nodes_ = a.nodes_;
  const auto offset = static_cast<std::int32_t>(a.nodes_.size());
  for (ExprNode n : b.nodes_) {
    if (n.lhs >= 0) n.lhs += offset;
    if (n.rhs >= 0) n.rhs += offset;
    e.nodes_.push_back(n);
  }
  ExprNode top;
  top.op = op;
  top.lhs = static_cast<std::int32_t>(a.nodes_.size()) - 1;
  top.rhs = static_cast<std::int32_t>(e.nodes_.size()) - 1;
  e.nodes_.push_back(top);
  e.dimension_ = std::max(a.dimension_, b.dimension_);
  return e;
}

Expr Expr::wrap(ExprOp op, const Expr& a) {
  if (!a.valid()) {
    throw std::invalid_argument("Expr: operand is default-constructed");
  }
  Expr e = a;
  ExprNode top;
  top.op = op;
  top.lhs = static_cast<std::int32_t>(e.nodes_.size()) - 1;
  e.nodes_.push_back(top);
  return e;
}

Expr operator+(const Expr& a, const Expr& b) {
  return Expr::combine(ExprOp::Add, a, b);
}
Expr operator-(const Expr& a, const Expr& b) {
  return Expr::combine(ExprOp::Sub, a, b);
}
Expr operator*(const Expr& a, const Expr& b) {
  return Expr::combine(ExprOp::Mul, a, b);
}
Expr operator/(const Expr& a, const Expr& b) {
  return Expr::combine(ExprOp::Div, a, b);
}
Expr operator-(const Expr& a) { return Expr::wrap(ExprOp::Neg, a); }
Expr sin(const Expr& a) { return Expr::wrap(ExprOp::Sin, a); }
Expr cos(const Expr& a) { return Expr::wrap(ExprOp::Cos, a); }
Expr exp(const Expr& a) { return Expr::wrap(ExprOp::Exp, a); }
Expr sqrt(const Expr& a) { return Expr::wrap(ExprOp::Sqrt, a); }
Expr abs(const Expr& a) { return Expr::wrap(ExprOp::Abs, a); }

Expr pow(const Expr& a, int k) {
  Expr e = Expr::wrap(ExprOp::Pow, a);
  e.nodes_.back().exponent = k;
  return e;
}

Expr sum(std::span<const Expr> terms) {
  if (terms.empty()) return Expr::constant(0.0);
  Expr acc = terms[0];
  for (std::size_t i = 1; i < terms.size(); ++i) acc = acc + terms[i];
  return acc;
}

Expr product(std::span<const Expr> factors) {
  if (factors.empty()) return Expr::constant(1.0);
  Expr acc = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) acc = acc * factors[i];
  return acc;
}

bool contains_abs(const Expr& e) {
  for (const ExprNode& n : e.nodes()) {
    if (n.op == ExprOp::Abs) return true;
  }
  return false;
}

namespace {

bool is_const(const Expr& e, double v) {
  const ExprNode& root = e.nodes().back();
  return root.op == ExprOp::Constant && root.value == Interval(v);
}

Expr mk_add(const Expr& a, const Expr& b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return a + b;
}

Expr mk_sub(const Expr& a, const Expr& b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return -b;
  return a - b;
}

Expr mk_mul(const Expr& a, const Expr& b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return Expr::constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  return a * b;
}

// Rebuilds the subtree rooted at `node` as a standalone expression.
Expr subtree(const Expr& e, int node) {
  const ExprNode& n = e.nodes()[static_cast<std::size_t>(node)];
  switch (n.op) {
    case ExprOp::Constant:
      return Expr::constant(n.value);
    case ExprOp::Variable:
      return Expr::variable(n.var);
    case ExprOp::Add:
      return subtree(e, n.lhs) + subtree(e, n.rhs);
    case ExprOp::Sub:
      return subtree(e, n.lhs) - subtree(e, n.rhs);
    case ExprOp::Mul:
      return subtree(e, n.lhs) * subtree(e, n.rhs);
    case ExprOp::Div:
      return subtree(e, n.lhs) / subtree(e, n.rhs);
    case ExprOp::Neg:
      return -subtree(e, n.lhs);
    case ExprOp::Sin:
      return sin(subtree(e, n.lhs));
    case ExprOp::Cos:
      return cos(subtree(e, n.lhs));
    case ExprOp::Exp:
      return exp(subtree(e, n.lhs));
    case ExprOp::Sqrt:
      return sqrt(subtree(e, n.lhs));
    case ExprOp::Abs:
      return abs(subtree(e, n.lhs));
    case ExprOp::Pow:
      return pow(subtree(e, n.lhs), n.exponent);
  }
  throw std::logic_error("subtree: unknown operator");
}

Expr diff_node(const Expr& e, int node, int var) {
  const ExprNode& n = e.nodes()[static_cast<std::size_t>(node)];
  switch (n.op) {
    case ExprOp::Constant:
      return Expr::constant(0.0);
    case ExprOp::Variable:
      return Expr::constant(n.var == var ? 1.0 : 0.0);
    case ExprOp::Add:
      return mk_add(diff_node(e, n.lhs, var), diff_node(e, n.rhs, var));
    case ExprOp::Sub:
      return mk_sub(diff_node(e, n.lhs, var), diff_node(e, n.rhs, var));
    case ExprOp::Mul:
      return mk_add(mk_mul(diff_node(e, n.lhs, var), subtree(e, n.rhs)),
                    mk_mul(subtree(e, n.lhs), diff_node(e, n.rhs, var)));
    case ExprOp::Div: {
      Expr da = diff_node(e, n.lhs, var);
      Expr db = diff_node(e, n.rhs, var);
      if (is_const(db, 0.0)) {
        if (is_const(da, 0.0)) return Expr::constant(0.0);
        return da / subtree(e, n.rhs);
      }
      return mk_sub(mk_mul(da, subtree(e, n.rhs)),
                    mk_mul(subtree(e, n.lhs), db)) /
             pow(subtree(e, n.rhs), 2);
    }
    case ExprOp::Neg:
      return -diff_node(e, n.lhs, var);
    case ExprOp::Sin:
      return mk_mul(cos(subtree(e, n.lhs)), diff_node(e, n.lhs, var));
    case ExprOp::Cos:
      return -mk_mul(sin(subtree(e, n.lhs)), diff_node(e, n.lhs, var));
    case ExprOp::Exp:
      return mk_mul(exp(subtree(e, n.lhs)), diff_node(e, n.lhs, var));
    case ExprOp::Sqrt:
      return diff_node(e, n.lhs, var) /
             mk_mul(Expr::constant(2.0), sqrt(subtree(e, n.lhs)));
    case ExprOp::Abs:
      throw std::domain_error("differentiate: |.| has no single-valued derivative");
    case ExprOp::Pow: {
      if (n.exponent == 0) return Expr::constant(0.0);
      Expr inner = diff_node(e, n.lhs, var);
      Expr power = n.exponent == 2
                       ? subtree(e, n.lhs)
                       : pow(subtree(e, n.lhs), n.exponent - 1);
      return mk_mul(Expr::constant(static_cast<double>(n.exponent)),
                    mk_mul(power, inner));
    }
  }
  throw std::logic_error("differentiate: unknown operator");
}

}  // namespace

Expr differentiate(const Expr& e, int var) {
  if (!e.valid()) throw std::invalid_argument("differentiate: empty expression");
  return diff_node(e, e.root(), var);
}

}  // namespace certopt
