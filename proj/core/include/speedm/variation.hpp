// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "speedm/curve.hpp"
#include "speedm/interval.hpp"

namespace speedm {

//! A finite nondecreasing sequence of parameter values.
struct Partition {
  std::vector<double> times;

  static Partition of(std::vector<double> times);
};

/// Sum of consecutive distances d(gamma(t_k), gamma(t_{k+1})) over the
/// partition. Empty and singleton partitions give 0.
double var_sum(const Curve& curve, const Partition& partition);

struct VariationOptions {
  double tol = 1e-6;
  int max_depth = 24;
  // Cells are split unconditionally until this sweep depth, and convergence
  // is never declared before it; guards against plateaus of staircase-like
  // curves where one doubling can add nothing.
  int min_depth = 10;
  double blowup_bound = 1e12;
  std::size_t cell_budget = std::size_t{1} << 22;
};

struct VariationResult {
  double value = 0.0;
  bool converged = false;
  bool infinite = false;  // running value exceeded blowup_bound: not BV on J
  int depth = 0;
  double residual = 0.0;  // increment of the last refinement sweep
};

/// Var(gamma; J). Exact for sampled-cadlag and piecewise-linear bodies;
/// estimated by adaptive dyadic refinement (seeded with declared jump points
/// and their 2^-k neighbors) for analytic bodies. Open and half-open J are
/// handled by inner regularity. The returned value never decreases under
/// deeper refinement, so it is a certified lower bound for the supremum.
VariationResult variation(const Curve& curve, const Interval& j,
                          const VariationOptions& opt = {});

/// Var(gamma; [a,b]) with the sign convention Var(gamma;[b,a]) = -Var(gamma;[a,b]).
double signed_variation(const Curve& curve, double a, double b,
                        const VariationOptions& opt = {});

//! Cumulative variation V_gamma(t) = Var(gamma; [c,t]) on a grid, together
//! with its right-continuous modification v(t) = V_gamma(t+).
struct VariationProfile {
  double base_point = 0.0;
  std::vector<double> grid;
  std::vector<double> V_values;
  std::vector<double> v_values;
  int refinement_depth = 0;
  bool converged = false;
  double residual = 0.0;
};

/// One-sweep computation of the profile using additivity over grid segments.
/// Throws std::invalid_argument when the grid is not strictly increasing.
VariationProfile cumulative_profile(const Curve& curve, double c, std::vector<double> grid,
                                    const VariationOptions& opt = {});

}  // namespace speedm
