// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "speedm/curve.hpp"
#include "speedm/interval.hpp"
#include "speedm/speed_measure.hpp"

namespace speedm {

//! A finite family of intervals (a_k, b_k) with pairwise disjoint interiors,
//! the shape quantified over in the epsilon-delta definition of absolute
//! continuity.
struct IntervalFamily {
  std::vector<std::pair<double, double>> pairs;  // sorted by left endpoint

  /// Validates a_k < b_k and disjoint interiors; throws std::invalid_argument.
  static IntervalFamily of(std::vector<std::pair<double, double>> pairs);

  double total_length() const;
  std::size_t size() const { return pairs.size(); }
};

//! A Lebesgue-null set described by nested interval covers with total length
//! decreasing to zero (e.g. the Cantor construction).
struct NestedNullSet {
  std::vector<IntervalFamily> generations;

  /// Generation g consists of the 2^g closed intervals of width 3^-g of the
  /// Cantor construction, scaled to `base`.
  static NestedNullSet cantor_generations(int depth, Interval base = Interval::closed(0.0, 1.0));
  /// Intervals [t - hw, t + hw] with hw halving per generation.
  static NestedNullSet shrinking_to_point(double t, int depth, double initial_halfwidth);

  /// Checks nesting and strictly decreasing total length; throws
  /// std::invalid_argument on failure.
  void validate() const;
};

struct AcProbeResult {
  double epsilon = 0.0;
  // Largest delta for which no discovered family of total length <= delta
  // exceeds epsilon; 0 when violating families of arbitrarily small length
  // exist (atoms, or a shrinking violation trend).
  double delta_estimate = 0.0;
  std::optional<IntervalFamily> witness;  // present only when delta_estimate == 0
  double witness_chord_sum = 0.0;
  double witness_length = 0.0;
  double max_density_ratio = 0.0;  // largest nu(cell)/lambda(cell) probed
  bool evidence_based = false;     // black-box curve: no finite certificate
  int rounds_used = 0;
};

/// Searches for disjoint families maximizing the chord sum per unit length by
/// ternary refinement that drops zero-mass cells (so mass concentrates where
/// nu/lambda blows up), plus straddling intervals around every atom.
AcProbeResult ac_probe(const SpeedMeasure& nu, double epsilon, int budget = 16);
AcProbeResult ac_probe(const Curve& curve, double epsilon, int budget = 16,
                       const VariationOptions& vopt = {});

struct AcMeasureRow {
  double delta = 0.0;
  double worst_nu = 0.0;
  double worst_lambda = 0.0;
  bool passes = false;  // every candidate F with lambda(F) <= delta had nu(F) <= eps
};

struct AcMeasureReport {
  double epsilon = 0.0;
  std::vector<AcMeasureRow> rows;
  bool some_delta_passes = false;
};

/// Measure-level absolute continuity evidence: over candidate finite unions
/// of closed intervals, reports for each delta whether lambda(F) <= delta
/// implied nu(F) <= epsilon.
AcMeasureReport ac_measure_test(const SpeedMeasure& nu, double epsilon,
                                std::span<const double> delta_grid, int budget = 13);
std::vector<double> default_delta_grid(double epsilon);

struct BanachZaretskyReport {
  bool bv = false;
  bool has_atoms = false;
  double sc_mass = 0.0;
  bool probe_witness = false;
  bool ac_loc = false;
  // True when the verdict is decided by exact structure (declared oracle
  // components, sampled or piecewise-linear bodies); otherwise the verdict is
  // evidence-based.
  bool exact = false;
  std::vector<std::string> reasons;
  AcProbeResult probe;
};

/// gamma is locally absolutely continuous iff it is locally BV and nu << lambda:
/// combines the BV check, the atom list, the singular-continuous mass and the
/// probe evidence into one verdict.
BanachZaretskyReport banach_zaretsky_verdict(const Curve& curve,
                                             const VariationOptions& vopt = {});
BanachZaretskyReport banach_zaretsky_verdict(const SpeedMeasure& nu, double tol = 1e-6,
                                             int probe_budget = 12);

struct LuzinReport {
  std::vector<double> diam_bounds;  // sum of diam(gamma([a,b])) per generation
  std::vector<double> nu_bounds;    // sum of nu([a,b]) per generation
  bool tends_to_zero = false;
  bool h1_equality_case = false;  // simple curve: the bound doubles as an H^1 estimate
};

/// Per generation g of the null set, bound_g = sum_k diam(gamma([a_k,b_k]))
/// <= sum_k nu([a_k,b_k]); Luzin's property (N) holds on this null set when
/// the bounds tend to zero.
LuzinReport luzin_n_upper_bound(const Curve& curve, const NestedNullSet& null_set,
                                const SpeedMeasure& nu);

}  // namespace speedm
