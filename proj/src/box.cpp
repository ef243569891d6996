#include "certopt/box.hpp"

#include <cmath>
#include <stdexcept>

namespace certopt {

Box Box::degenerate(const Vector& x) {
  Box b(static_cast<int>(x.size()));
  for (int i = 0; i < b.size(); ++i) b[i] = Interval(x[i]);
  return b;
}

bool Box::is_empty() const {
  if (comps_.empty()) return true;
  for (const Interval& c : comps_) {
    if (c.is_empty()) return true;
  }
  return false;
}

double Box::max_width() const {
  double w = 0.0;
  for (const Interval& c : comps_) w = std::max(w, c.width());
  return w;
}

Vector Box::midpoint() const {
  Vector m(size());
  for (int i = 0; i < size(); ++i) m[i] = comps_[static_cast<std::size_t>(i)].mid();
  return m;
}

bool Box::contains(const Vector& x) const {
  if (x.size() != size()) return false;
  for (int i = 0; i < size(); ++i) {
    if (!(*this)[i].contains(x[i])) return false;
  }
  return true;
}

double Box::volume() const {
  double v = 1.0;
  for (const Interval& c : comps_) v *= c.width();
  return v;
}

std::pair<Box, Box> bisect(const Box& box) {
  int widest = -1;
  double w = 0.0;
  for (int i = 0; i < box.size(); ++i) {
    double wi = box[i].width();
    if (wi > w) {
      w = wi;
      widest = i;
    }
  }
  if (widest < 0) {
    throw std::invalid_argument("bisect: cannot branch on a degenerate box");
  }
  double m = box[widest].mid();
  if (m <= box[widest].lo) m = std::nextafter(box[widest].lo, box[widest].hi);
  if (m >= box[widest].hi) m = box[widest].hi;
  Box left = box, right = box;
  left[widest] = Interval(box[widest].lo, m);
  right[widest] = Interval(m, box[widest].hi);
  return {left, right};
}

Box intersect(const Box& x, const Box& y) {
  Box out(x.size());
  for (int i = 0; i < x.size(); ++i) out[i] = intersect(x[i], y[i]);
  return out;
}

}  // namespace certopt
