// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace speedm {

//! A finite real interval with independently open/closed endpoints.
//!
//! Degenerate intervals [a,a] are allowed only with both ends closed.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  static Interval make(double lo, double hi, bool lo_closed, bool hi_closed) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw std::invalid_argument("interval endpoints must be finite");
    }
    if (lo > hi) {
      throw std::invalid_argument("interval requires lo <= hi");
    }
    if (lo == hi && !(lo_closed && hi_closed)) {
      throw std::invalid_argument("degenerate interval must be closed on both ends");
    }
    return Interval{lo, hi, lo_closed, hi_closed};
  }

  static Interval closed(double lo, double hi) { return make(lo, hi, true, true); }
  static Interval open(double lo, double hi) { return make(lo, hi, false, false); }
  static Interval left_open(double lo, double hi) { return make(lo, hi, false, true); }
  static Interval right_open(double lo, double hi) { return make(lo, hi, true, false); }

  double length() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool degenerate() const { return lo == hi; }

  bool contains(double t) const {
    if (t < lo || t > hi) return false;
    if (t == lo && !lo_closed) return false;
    if (t == hi && !hi_closed) return false;
    return true;
  }

  // Set inclusion respecting the boundary flags.
  bool contains(const Interval& j) const {
    if (j.lo < lo || (j.lo == lo && j.lo_closed && !lo_closed)) return false;
    if (j.hi > hi || (j.hi == hi && j.hi_closed && !hi_closed)) return false;
    return true;
  }

  std::string str() const {
    return std::string(lo_closed ? "[" : "(") + std::to_string(lo) + ", " +
           std::to_string(hi) + (hi_closed ? "]" : ")");
  }
};

inline bool operator==(const Interval& a, const Interval& b) {
  return a.lo == b.lo && a.hi == b.hi && a.lo_closed == b.lo_closed &&
         a.hi_closed == b.hi_closed;
}

// True when the two intervals share at least one point.
inline bool intervals_overlap(const Interval& a, const Interval& b) {
  const Interval& x = (a.lo <= b.lo) ? a : b;
  const Interval& y = (a.lo <= b.lo) ? b : a;
  if (y.lo > x.hi) return false;
  if (y.lo == x.hi) return y.lo_closed && x.hi_closed;
  return true;
}

}  // namespace speedm
