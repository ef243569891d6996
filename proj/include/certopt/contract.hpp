#pragma once

#include <span>

#include "certopt/box.hpp"
#include "certopt/eval.hpp"
#include "certopt/expr.hpp"

namespace certopt {

/// Inequality constraint normalized to body(x) <= 0.
struct Constraint {
  Expr body;
};

/// Constraint with an arbitrary allowed range for the body value; this is how
/// the solver phrases the cut-off constraint f(x) <= fbest without rebuilding
/// the objective tree each iteration.
struct BoundedConstraint {
  const Expr* body = nullptr;
  Interval allowed;
};

/// One HC4 revision: forward evaluation storing node enclosures, then
/// backward projection of the intersection with `allowed` through inverse
/// elementary operations. The result is contained in `box` and contains every
/// point of `box` with body(x) in `allowed`; an empty box proves
/// infeasibility. Multivalued trigonometric inversions fall back to no
/// contraction of the child.
Box hc4_revise(const Expr& body, const Interval& allowed, const Box& box);
Box hc4_revise(const Constraint& c, const Box& box);

struct ContractionResult {
  Box box;
  int passes = 0;
};

/// Applies hc4_revise over all constraints until a full pass shrinks the sum
/// of component widths by less than rel_tol (relative), the box empties, or
/// max_passes is reached.
ContractionResult fixpoint_contract(std::span<const BoundedConstraint> cs,
                                    const Box& box, double rel_tol = 0.01,
                                    int max_passes = 100);
ContractionResult fixpoint_contract(std::span<const Constraint> cs,
                                    const Box& box, double rel_tol = 0.01,
                                    int max_passes = 100);

enum class BoxFate { Keep, Discard };

/// First-order pruning: discard a box strictly interior to the search domain
/// when some gradient component enclosure excludes zero. Boxes touching the
/// boundary, and boxes where an abs kink makes the enclosure a subderivative
/// hull, are always kept. Valid for unconstrained minimization only; callers
/// with constraints must not invoke it.
BoxFate stationarity_prune(const Expr& objective, const Box& box,
                           const Box& domain);

}  // namespace certopt
