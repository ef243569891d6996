#include "certopt/eval.hpp"

#include <cmath>

namespace certopt {

void forward_eval(const Expr& e, const Box& box, std::vector<Interval>& values) {
  const auto& nodes = e.nodes();
  values.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const ExprNode& n = nodes[i];
    switch (n.op) {
      case ExprOp::Constant:
        values[i] = n.value;
        break;
      case ExprOp::Variable:
        values[i] = box[n.var];
        break;
      case ExprOp::Add:
        values[i] = values[n.lhs] + values[n.rhs];
        break;
      case ExprOp::Sub:
        values[i] = values[n.lhs] - values[n.rhs];
        break;
      case ExprOp::Mul:
        values[i] = values[n.lhs] * values[n.rhs];
        break;
      case ExprOp::Div:
        values[i] = values[n.lhs] / values[n.rhs];
        break;
      case ExprOp::Neg:
        values[i] = -values[n.lhs];
        break;
      case ExprOp::Sin:
        values[i] = sin(values[n.lhs]);
        break;
      case ExprOp::Cos:
        values[i] = cos(values[n.lhs]);
        break;
      case ExprOp::Exp:
        values[i] = exp(values[n.lhs]);
        break;
      case ExprOp::Sqrt: {
        const Interval& a = values[n.lhs];
        if (!a.is_empty() && a.hi < 0) {
          throw EvalDomainError(static_cast<int>(i),
                                "sqrt of an entirely negative enclosure");
        }
        values[i] = sqrt(a);
        break;
      }
      case ExprOp::Abs:
        values[i] = abs(values[n.lhs]);
        break;
      case ExprOp::Pow:
        values[i] = pow_k(values[n.lhs], n.exponent);
        break;
    }
  }
}

Interval natural_extension(const Expr& e, const Box& box) {
  thread_local std::vector<Interval> values;
  forward_eval(e, box, values);
  return values.back();
}

Interval certified_point_value(const Expr& e, const Vector& x) {
  return natural_extension(e, Box::degenerate(x));
}

double eval_point(const Expr& e, const Vector& x) {
  const auto& nodes = e.nodes();
  thread_local std::vector<double> v;
  v.resize(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const ExprNode& n = nodes[i];
    switch (n.op) {
      case ExprOp::Constant:
        v[i] = n.value.mid();
        break;
      case ExprOp::Variable:
        v[i] = x[n.var];
        break;
      case ExprOp::Add:
        v[i] = v[n.lhs] + v[n.rhs];
        break;
      case ExprOp::Sub:
        v[i] = v[n.lhs] - v[n.rhs];
        break;
      case ExprOp::Mul:
        v[i] = v[n.lhs] * v[n.rhs];
        break;
      case ExprOp::Div:
        v[i] = v[n.lhs] / v[n.rhs];
        break;
      case ExprOp::Neg:
        v[i] = -v[n.lhs];
        break;
      case ExprOp::Sin:
        v[i] = std::sin(v[n.lhs]);
        break;
      case ExprOp::Cos:
        v[i] = std::cos(v[n.lhs]);
        break;
      case ExprOp::Exp:
        v[i] = std::exp(v[n.lhs]);
        break;
      case ExprOp::Sqrt:
        v[i] = std::sqrt(v[n.lhs]);
        break;
      case ExprOp::Abs:
        v[i] = std::abs(v[n.lhs]);
        break;
      case ExprOp::Pow:
        v[i] = std::pow(v[n.lhs], n.exponent);
        break;
    }
  }
  return v.back();
}

namespace {

// Subderivative enclosure of |.| over the argument enclosure.
Interval abs_subderivative(const Interval& a) {
  if (a.hi < 0) return {-1.0, -1.0};
  if (a.lo > 0) return {1.0, 1.0};
  return {-1.0, 1.0};
}

}  // namespace

GradientEnclosure gradient_enclosure(const Expr& e, const Box& box) {
  const auto& nodes = e.nodes();
  thread_local std::vector<Interval> values;
  forward_eval(e, box, values);

  GradientEnclosure out;
  for (const ExprNode& n : nodes) {
    if (n.op == ExprOp::Abs && values[n.lhs].contains_zero()) {
      out.abs_kink_possible = true;
    }
  }

  const int dim = box.size();
  out.components.resize(static_cast<std::size_t>(dim));
  thread_local std::vector<Interval> d;
  d.resize(nodes.size());

  // One tangent sweep per variable; values are shared across sweeps.
  for (int var = 0; var < dim; ++var) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const ExprNode& n = nodes[i];
      switch (n.op) {
        case ExprOp::Constant:
          d[i] = Interval(0.0);
          break;
        case ExprOp::Variable:
          d[i] = n.var == var ? Interval(1.0) : Interval(0.0);
          break;
        case ExprOp::Add:
          d[i] = d[n.lhs] + d[n.rhs];
          break;
        case ExprOp::Sub:
          d[i] = d[n.lhs] - d[n.rhs];
          break;
        case ExprOp::Mul:
          d[i] = d[n.lhs] * values[n.rhs] + values[n.lhs] * d[n.rhs];
          break;
        case ExprOp::Div:
          // d(a/b) = (da - q db) / b with q the computed quotient enclosure.
          d[i] = (d[n.lhs] - values[i] * d[n.rhs]) / values[n.rhs];
          break;
        case ExprOp::Neg:
          d[i] = -d[n.lhs];
          break;
        case ExprOp::Sin:
          d[i] = cos(values[n.lhs]) * d[n.lhs];
          break;
        case ExprOp::Cos:
          d[i] = -(sin(values[n.lhs]) * d[n.lhs]);
          break;
        case ExprOp::Exp:
          d[i] = values[i] * d[n.lhs];
          break;
        case ExprOp::Sqrt:
          // Unbounded at zero; extended division keeps the enclosure sound.
          d[i] = d[n.lhs] / (Interval(2.0) * values[i]);
          break;
        case ExprOp::Abs:
          d[i] = abs_subderivative(values[n.lhs]) * d[n.lhs];
          break;
        case ExprOp::Pow:
          d[i] = Interval(static_cast<double>(n.exponent)) *
                 pow_k(values[n.lhs], n.exponent - 1) * d[n.lhs];
          break;
      }
    }
    out.components[static_cast<std::size_t>(var)] = d.back();
  }
  return out;
}

}  // namespace certopt
