#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "certopt/interval.hpp"

namespace certopt {

enum class ExprOp : std::uint8_t {
  Constant,
  Variable,
  Add,
  Sub,
  Mul,
  Div,
  Neg,
  Sin,
  Cos,
  Exp,
  Sqrt,
  Abs,
  Pow,  // integer exponent
};

struct ExprNode {
  ExprOp op = ExprOp::Constant;
  std::int32_t lhs = -1;
  std::int32_t rhs = -1;
  std::int32_t var = -1;
  std::int32_t exponent = 0;
  Interval value;  // Constant payload, stored as an enclosure
};

/// Immutable expression tree over elementary operations, stored as a flat
/// arena in topological order (children precede parents, root last).
/// Composition copies operand arenas; common subexpressions are deliberately
/// not shared, so the syntactic form written is the form evaluated.
class Expr {
 public:
  Expr() = default;

  static Expr variable(int index);
  static Expr constant(double value);
  static Expr constant(const Interval& enclosure);
  static Expr pi();

  bool valid() const { return !nodes_.empty(); }
  const std::vector<ExprNode>& nodes() const { return nodes_; }
  int root() const { return static_cast<int>(nodes_.size()) - 1; }
  /// 1 + largest variable index referenced (0 for constant expressions).
  int dimension() const { return dimension_; }
  /// Number of Variable nodes referencing index i.
  int occurrences(int index) const;

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  friend Expr operator/(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a);
  friend Expr sin(const Expr& a);
  friend Expr cos(const Expr& a);
  friend Expr exp(const Expr& a);
  friend Expr sqrt(const Expr& a);
  friend Expr abs(const Expr& a);
  friend Expr pow(const Expr& a, int k);

 private:
  static Expr combine(ExprOp op, const Expr& a, const Expr& b);
  static Expr wrap(ExprOp op, const Expr& a);

  std::vector<ExprNode> nodes_;
  int dimension_ = 0;
};

inline Expr operator+(const Expr& a, double b) { return a + Expr::constant(b); }
inline Expr operator+(double a, const Expr& b) { return Expr::constant(a) + b; }
inline Expr operator-(const Expr& a, double b) { return a - Expr::constant(b); }
inline Expr operator-(double a, const Expr& b) { return Expr::constant(a) - b; }
inline Expr operator*(const Expr& a, double b) { return a * Expr::constant(b); }
inline Expr operator*(double a, const Expr& b) { return Expr::constant(a) * b; }
inline Expr operator/(const Expr& a, double b) { return a / Expr::constant(b); }
inline Expr operator/(double a, const Expr& b) { return Expr::constant(a) / b; }

/// Left-folded n-ary sum/product, lowered to binary nodes.
Expr sum(std::span<const Expr> terms);
Expr product(std::span<const Expr> factors);

bool contains_abs(const Expr& e);

/// Symbolic partial derivative with trivial algebraic cleanup (zero and one
/// folding). Defined for abs-free expressions; throws std::domain_error on an
/// Abs node, whose derivative is set-valued at the kink.
Expr differentiate(const Expr& e, int var);

}  // namespace certopt
