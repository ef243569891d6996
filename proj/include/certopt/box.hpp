#pragma once

#include <initializer_list>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "certopt/interval.hpp"

namespace certopt {

using Vector = Eigen::VectorXd;

/// Interval vector. A box is empty as soon as one component is empty.
class Box {
 public:
  Box() = default;
  explicit Box(int n) : comps_(static_cast<std::size_t>(n)) {}
  Box(std::initializer_list<Interval> comps) : comps_(comps) {}
  explicit Box(std::vector<Interval> comps) : comps_(std::move(comps)) {}

  /// The point box ([x1,x1], ..., [xn,xn]).
  static Box degenerate(const Vector& x);

  int size() const { return static_cast<int>(comps_.size()); }
  Interval& operator[](int i) { return comps_[static_cast<std::size_t>(i)]; }
  const Interval& operator[](int i) const {
    return comps_[static_cast<std::size_t>(i)];
  }
  const std::vector<Interval>& components() const { return comps_; }

  bool is_empty() const;
  /// Largest component width.
  double max_width() const;
  Vector midpoint() const;
  bool contains(const Vector& x) const;
  /// Product of component widths (coverage audits; small n only).
  double volume() const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Interval> comps_;
};

/// Splits the widest component (ties to the lowest index) at its midpoint.
/// The union of the halves is the input; interiors are disjoint.
/// Throws std::invalid_argument when no component has positive width.
std::pair<Box, Box> bisect(const Box& box);

Box intersect(const Box& x, const Box& y);

}  // namespace certopt
