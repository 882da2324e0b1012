// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "speedm/curve.hpp"
#include "speedm/interval.hpp"
#include "speedm/variation.hpp"

namespace speedm {

//! A point mass of the speed measure with its one-sided decomposition:
//! mass = left_gap + right_gap = V(t+) - V(t-).
struct Atom {
  double t = 0.0;
  double left_gap = 0.0;
  double right_gap = 0.0;
  double mass = 0.0;
};

//! The speed measure nu of a locally-BV map: the Lebesgue-Stieltjes measure
//! of the right-continuous modification v of the cumulative variation, with
//! nu({a}) := V(a+) - V(a) at an included left endpoint.
//!
//! Represented by the distribution function plus an explicit atom list, so
//! interval queries with any boundary flags reduce to exact algebra on v and
//! atom masses.
class SpeedMeasure {
 public:
  /// Computes the profile, collects atoms (declared jumps, or a numeric jump
  /// scan for black-box evaluators) and verifies the curve is BV on its
  /// domain. Throws NotBvError when the variation blows up.
  static SpeedMeasure build(const Curve& curve, const VariationOptions& opt = {});

  const Interval& domain() const { return domain_; }
  const Curve& curve() const { return *curve_; }
  const VariationOptions& options() const { return opt_; }
  const VariationProfile& profile() const { return profile_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  double left_endpoint_mass() const { return left_endpoint_mass_; }
  double base_point() const { return base_point_; }

  /// Distribution function v(t) = V_gamma(t+); memoized per query point so
  /// repeated interval queries telescope exactly.
  double distribution(double t) const;

  /// nu(J) for any boundary configuration of J within the domain.
  double measure(const Interval& j) const;

  /// Sum of nu over pairwise disjoint intervals; throws std::invalid_argument
  /// when two of them overlap.
  double measure_union(std::span<const Interval> intervals) const;

  double atom_mass_at(double t) const;
  double total_mass() const;

  /// True iff nu has no atoms: the map is a curve (continuous).
  bool continuity_verdict() const;

 private:
  SpeedMeasure() = default;

  std::shared_ptr<const Curve> curve_;
  VariationOptions opt_;
  Interval domain_;  // effective domain (sampled curves start at their first sample)
  double base_point_ = 0.0;
  std::vector<Atom> atoms_;
  double left_endpoint_mass_ = 0.0;
  VariationProfile profile_;
  double v_lo_limit_ = 0.0;  // lim v at an excluded lo endpoint
  double v_hi_limit_ = 0.0;  // lim v at an excluded hi endpoint

  struct Cache {
    std::mutex mu;
    std::map<double, double> v;
  };
  std::shared_ptr<Cache> cache_;

  double v_at_boundary(double t) const;
};

struct VarVsMeasureReport {
  double var = 0.0;
  double nu = 0.0;
  double diff = 0.0;  // nu - var, >= -tol always
  bool lo_is_continuity_point = true;
  bool hi_is_continuity_point = true;
  bool var_le_nu = false;
  bool equality_expected = false;  // included endpoints are continuity points
  bool equality_within_tol = false;
  bool consistent = false;  // equality holds exactly when expected
};

/// Compares Var(gamma; J) with nu(J): Var <= nu always, with equality iff the
/// included endpoints of J are continuity points.
VarVsMeasureReport var_vs_measure_check(const SpeedMeasure& nu, const Interval& j,
                                        double tol);

/// Columns: t, V, v, cumulative atom mass.
void write_profile_csv(const SpeedMeasure& nu, std::ostream& os);
/// Columns: t, left_gap, right_gap, mass.
void write_atoms_csv(const SpeedMeasure& nu, std::ostream& os);

}  // namespace speedm
