// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "speedm/interval.hpp"
#include "speedm/metric_space.hpp"

namespace speedm {

class Curve;

enum class LimitStatus { resolved, not_resolved };

//! One-sided discontinuity gaps at a parameter value.
//!
//! left_gap = d(gamma(t-), gamma(t)), right_gap = d(gamma(t), gamma(t+)),
//! with the conventions gamma(a-) := gamma(a) and gamma(b+) := gamma(b)
//! at included domain endpoints.
struct JumpGaps {
  double t = 0.0;
  double left_gap = 0.0;
  double right_gap = 0.0;
  LimitStatus left_status = LimitStatus::resolved;
  LimitStatus right_status = LimitStatus::resolved;

  bool resolved() const {
    return left_status == LimitStatus::resolved && right_status == LimitStatus::resolved;
  }
  double total() const { return left_gap + right_gap; }
};

//! A declared discontinuity of an analytic curve. A missing one-sided limit
//! means the curve is continuous from that side at t.
struct DeclaredJump {
  double t = 0.0;
  std::optional<Point> left_limit;
  std::optional<Point> right_limit;
};

struct AnalyticBody {
  std::function<Point(double)> eval;
  std::function<Point(double)> left_limit;   // optional, exact gamma(t-)
  std::function<Point(double)> right_limit;  // optional, exact gamma(t+)
  std::vector<DeclaredJump> jumps;           // sorted by t
  // When true the jump list is exhaustive: the curve is continuous at every
  // t not listed. Oracle curves set this; black-box evaluators do not.
  bool jumps_complete = false;
};

struct Sample {
  double t = 0.0;
  Point value;
};

//! Right-continuous piecewise-constant interpretation of samples:
//! eval(t) is the value at the largest sample time <= t.
struct SampledCadlagBody {
  std::vector<Sample> samples;
};

//! Linear interpolation between breakpoints; vector-structure spaces only.
struct PiecewiseLinearBody {
  std::vector<Sample> breakpoints;
};

//! Pointwise sum of real-valued component curves on a shared domain.
struct CompositeBody {
  std::vector<Curve> parts;
};

using CurveBody =
    std::variant<AnalyticBody, SampledCadlagBody, PiecewiseLinearBody, CompositeBody>;

//! Provenance metadata for curves produced by the oracle library.
struct OracleInfo {
  std::string name;
  std::string parameter_summary;
  bool simple = false;      // injective on its domain
  bool continuous = false;  // known continuous
  std::optional<double> known_variation;  // over the default domain
  std::optional<double> known_ac_mass;
  std::optional<double> known_sc_mass;
  std::optional<double> known_atomic_mass;
};

//! A map gamma: I -> X. Immutable after construction; all queries are pure.
class Curve {
 public:
  Curve(MetricSpace space, Interval domain, CurveBody body,
        std::optional<double> gap_tol = std::nullopt);

  const MetricSpace& space() const { return space_; }
  const Interval& domain() const { return domain_; }
  const CurveBody& body() const { return body_; }
  double gap_tol() const { return gap_tol_; }

  const std::optional<OracleInfo>& oracle() const { return oracle_; }
  Curve& set_oracle(OracleInfo info) {
    oracle_ = std::move(info);
    return *this;
  }

  /// Evaluate at t. Throws std::domain_error outside the domain, and for
  /// cadlag samples also before the first sample time.
  Point eval(double t) const;

  /// Exact one-sided limit points where the representation provides them.
  std::optional<Point> exact_left_limit(double t) const;
  std::optional<Point> exact_right_limit(double t) const;

  /// One-sided gaps at t: exact when declared, otherwise estimated along the
  /// h schedule (default 2^-4 .. 2^-40). Non-convergent estimates come back
  /// with status not_resolved rather than a fabricated value.
  JumpGaps one_sided_limits(double t) const;
  JumpGaps one_sided_limits(double t, std::span<const double> h_schedule) const;

  /// Numeric estimation even when exact limits are declared (used to
  /// cross-check declared jumps).
  JumpGaps one_sided_limits_numeric(double t, std::span<const double> h_schedule) const;

  /// Times of known discontinuities (declared for analytic bodies, derived
  /// for sampled ones). Sorted.
  std::vector<double> jump_times() const;

  /// True when one-sided limits are exactly computable everywhere, so jump
  /// detection needs no numeric scanning.
  bool limits_declared() const;

  double dist(const Point& p, const Point& q) const { return distance(space_, p, q); }

 private:
  MetricSpace space_;
  Interval domain_;
  CurveBody body_;
  double gap_tol_;
  std::optional<OracleInfo> oracle_;

  void validate() const;
};

/// Default step schedule for one-sided limit estimation: 2^-4 .. 2^-40.
std::vector<double> default_h_schedule();

}  // namespace speedm
