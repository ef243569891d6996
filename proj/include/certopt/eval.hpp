#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "certopt/box.hpp"
#include "certopt/expr.hpp"

namespace certopt {

/// Raised when an elementary operation leaves its domain (e.g. sqrt of an
/// entirely negative enclosure). Carries the offending node index.
class EvalDomainError : public std::runtime_error {
 public:
  EvalDomainError(int node, const std::string& what)
      : std::runtime_error(what + " (node " + std::to_string(node) + ")"),
        node_(node) {}
  int node() const { return node_; }

 private:
  int node_;
};

/// Forward sweep storing one enclosure per node; values.back() is the result.
/// The box dimension must cover every variable index of e.
void forward_eval(const Expr& e, const Box& box, std::vector<Interval>& values);

/// Natural interval extension F_N(box), an enclosure of {f(x) | x in box}.
Interval natural_extension(const Expr& e, const Box& box);

/// Interval evaluation over the point box; the upper bound is a rigorous
/// upper bound of f(x) under all rounding errors.
Interval certified_point_value(const Expr& e, const Vector& x);

/// Plain binary64 evaluation (heuristic paths and test oracles).
double eval_point(const Expr& e, const Vector& x);

/// Componentwise enclosure of all (sub)gradients of e over the box. Abs nodes
/// contribute their subderivative enclosure ([-1,-1], [1,1], or [-1,1] when
/// the argument spans zero); abs_kink_possible reports whether the last case
/// occurred anywhere in the sweep.
struct GradientEnclosure {
  std::vector<Interval> components;
  bool abs_kink_possible = false;
};

GradientEnclosure gradient_enclosure(const Expr& e, const Box& box);

}  // namespace certopt
