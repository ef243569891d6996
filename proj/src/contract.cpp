#include "certopt/contract.hpp"

#include <cmath>
#include <vector>

namespace certopt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double total_width(const Box& box) {
  double w = 0.0;
  for (int i = 0; i < box.size(); ++i) w += box[i].width();
  return w;
}

// Preimage of p under |.| restricted to the current child enclosure.
Interval abs_preimage(const Interval& child, const Interval& p) {
  Interval pos = intersect(p, Interval(0.0, kInf));
  return hull(intersect(child, pos), intersect(child, -pos));
}

Interval pow_preimage(const Interval& child, const Interval& p, int k) {
  if (k <= 0) return child;  // a^0 = 1 and negative exponents: no narrowing
  if (k % 2 == 0) {
    Interval r = root_k(p, k);  // nonnegative branch
    return hull(intersect(child, r), intersect(child, -r));
  }
  return intersect(child, root_k(p, k));
}

// Hull of the preimage branches of sin/cos meeting the child enclosure.
// A child spanning a full period cannot be narrowed; otherwise at most a few
// branch translates overlap it and their hull is enclosed outward.
Interval trig_preimage(const Interval& child, const Interval& p, bool is_sin) {
  if (child.is_empty() || !child.is_bounded() || child.width() >= 7.0) {
    return child;
  }
  Interval base1 = is_sin ? asin(p) : acos(p);
  if (base1.is_empty()) return Interval::empty();
  Interval base2 = is_sin ? pi_interval() - base1 : -base1;
  const Interval period = Interval(2.0) * pi_interval();

  Interval out = Interval::empty();
  for (const Interval& base : {base1, base2}) {
    long k_lo =
        static_cast<long>(std::floor((child.lo - base.hi) / 6.283185)) - 1;
    long k_hi =
        static_cast<long>(std::ceil((child.hi - base.lo) / 6.283185)) + 1;
    for (long k = k_lo; k <= k_hi && k - k_lo < 8; ++k) {
      Interval piece = base + Interval(static_cast<double>(k)) * period;
      out = hull(out, intersect(child, piece));
    }
  }
  return out;
}

}  // namespace

namespace {

Box empty_like(const Box& box) {
  Box empty_box(box.size());
  for (int i = 0; i < box.size(); ++i) empty_box[i] = Interval::empty();
  return empty_box;
}

}  // namespace

Box hc4_revise(const Expr& body, const Interval& allowed, const Box& box) {
  const auto& nodes = body.nodes();
  thread_local std::vector<Interval> values;
  forward_eval(body, box, values);

  thread_local std::vector<Interval> proj;
  proj = values;
  proj.back() = intersect(proj.back(), allowed);
  if (proj.back().is_empty()) return empty_like(box);

  for (int i = static_cast<int>(nodes.size()) - 1; i >= 0; --i) {
    const ExprNode& n = nodes[i];
    const Interval& p = proj[i];
    switch (n.op) {
      case ExprOp::Constant:
      case ExprOp::Variable:
        break;
      case ExprOp::Add:
        proj[n.lhs] = intersect(proj[n.lhs], p - values[n.rhs]);
        proj[n.rhs] = intersect(proj[n.rhs], p - values[n.lhs]);
        break;
      case ExprOp::Sub:
        proj[n.lhs] = intersect(proj[n.lhs], p + values[n.rhs]);
        proj[n.rhs] = intersect(proj[n.rhs], values[n.lhs] - p);
        break;
      case ExprOp::Mul:
        proj[n.lhs] = intersect(proj[n.lhs], p / values[n.rhs]);
        proj[n.rhs] = intersect(proj[n.rhs], p / values[n.lhs]);
        break;
      case ExprOp::Div:
        proj[n.lhs] = intersect(proj[n.lhs], p * values[n.rhs]);
        proj[n.rhs] = intersect(proj[n.rhs], values[n.lhs] / p);
        break;
      case ExprOp::Neg:
        proj[n.lhs] = intersect(proj[n.lhs], -p);
        break;
      case ExprOp::Sin:
        proj[n.lhs] = trig_preimage(proj[n.lhs], p, true);
        break;
      case ExprOp::Cos:
        proj[n.lhs] = trig_preimage(proj[n.lhs], p, false);
        break;
      case ExprOp::Exp:
        proj[n.lhs] = intersect(proj[n.lhs], log(p));
        break;
      case ExprOp::Sqrt:
        proj[n.lhs] =
            intersect(proj[n.lhs], pow_k(intersect(p, Interval(0.0, kInf)), 2));
        break;
      case ExprOp::Abs:
        proj[n.lhs] = abs_preimage(proj[n.lhs], p);
        break;
      case ExprOp::Pow:
        proj[n.lhs] = pow_preimage(proj[n.lhs], p, n.exponent);
        break;
    }
    if (n.lhs >= 0 && proj[n.lhs].is_empty()) return empty_like(box);
    if (n.rhs >= 0 && proj[n.rhs].is_empty()) return empty_like(box);
  }

  Box out = box;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].op != ExprOp::Variable) continue;
    int v = nodes[i].var;
    out[v] = intersect(out[v], proj[i]);
    if (out[v].is_empty()) return empty_like(box);
  }
  return out;
}

Box hc4_revise(const Constraint& c, const Box& box) {
  return hc4_revise(c.body, Interval(-kInf, 0.0), box);
}

ContractionResult fixpoint_contract(std::span<const BoundedConstraint> cs,
                                    const Box& box, double rel_tol,
                                    int max_passes) {
  ContractionResult res{box, 0};
  if (cs.empty() || box.is_empty()) return res;
  while (res.passes < max_passes) {
    double before = total_width(res.box);
    for (const BoundedConstraint& c : cs) {
      res.box = hc4_revise(*c.body, c.allowed, res.box);
      if (res.box.is_empty()) {
        ++res.passes;
        return res;
      }
    }
    ++res.passes;
    double after = total_width(res.box);
    if (!(after < before * (1.0 - rel_tol))) break;
  }
  return res;
}

ContractionResult fixpoint_contract(std::span<const Constraint> cs,
                                    const Box& box, double rel_tol,
                                    int max_passes) {
  std::vector<BoundedConstraint> bounded;
  bounded.reserve(cs.size());
  for (const Constraint& c : cs) {
    bounded.push_back({&c.body, Interval(-kInf, 0.0)});
  }
  return fixpoint_contract(std::span<const BoundedConstraint>(bounded), box,
                           rel_tol, max_passes);
}

BoxFate stationarity_prune(const Expr& objective, const Box& box,
                           const Box& domain) {
  for (int i = 0; i < box.size(); ++i) {
    if (box[i].lo <= domain[i].lo || box[i].hi >= domain[i].hi) {
      return BoxFate::Keep;
    }
  }
  GradientEnclosure g;
  try {
    g = gradient_enclosure(objective, box);
  } catch (const EvalDomainError&) {
    return BoxFate::Keep;
  }
  if (g.abs_kink_possible) return BoxFate::Keep;
  for (const Interval& comp : g.components) {
    if (!comp.contains_zero()) return BoxFate::Discard;
  }
  return BoxFate::Keep;
}

}  // namespace certopt
