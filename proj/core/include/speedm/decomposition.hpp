// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "speedm/curve.hpp"
#include "speedm/speed_measure.hpp"
#include "speedm/variation.hpp"

namespace speedm {

enum class DerivativeStatus { converged, not_resolved, undefined_at_jump };

struct MetricDerivativeEstimate {
  double t = 0.0;
  double value = 0.0;
  DerivativeStatus status = DerivativeStatus::not_resolved;
  double h_used = 0.0;
};

struct DerivativeOptions {
  // Convergence band: last three levels (both signs) within
  // deriv_tol + rel_tol * |value|.
  double deriv_tol = 1e-6;
  double rel_tol = 1e-5;
  int k_min = 4;
  int k_max = 26;
  double blowup = 1e9;
};

/// Metric derivative |gamma'|(t), the limit of d(gamma(t+eps), gamma(t)) / |eps|,
/// estimated along eps = +-2^-k. Endpoints use one-sided quotients; points with
/// a positive jump mass report undefined_at_jump.
MetricDerivativeEstimate metric_derivative(const Curve& curve, double t,
                                           const DerivativeOptions& opt = {});

enum class DensitySource { derivative, variation_quotient, unresolved };

struct DensityProfile {
  std::vector<double> grid;         // atom times removed
  std::vector<double> values;       // unresolved points filled from neighbors
  std::vector<DensitySource> sources;
  std::size_t unresolved_count = 0;
};

/// Density |gamma'| on the grid: metric derivative where it converges, the
/// variation quotient Var(gamma;[t,t+h])/h at the smallest stable h as a
/// fallback, and a neighbor fill (recorded as unresolved) where neither
/// resolves -- that set carries the singular mass.
DensityProfile density_profile(const Curve& curve, std::vector<double> grid,
                               const DerivativeOptions& dopt = {},
                               const VariationOptions& vopt = {});

//! Per-cell split nu = nu_ac + nu_atomic + nu_sc on a grid.
struct LebesgueDecomposition {
  std::vector<double> grid;
  std::vector<double> density;  // at grid points
  std::vector<DensitySource> density_sources;
  std::vector<Atom> atomic;
  std::vector<double> ac_mass_per_cell;
  std::vector<double> atomic_mass_per_cell;
  std::vector<double> sc_mass_per_cell;  // clamped at 0 within noise
  std::vector<double> nu_per_cell;
  double tol = 0.0;
  double ac_total = 0.0;
  double atomic_total = 0.0;
  double sc_total = 0.0;
  double nu_total = 0.0;
};

/// Splits nu over the grid cells: nu_ac by trapezoidal integration of the
/// density, atoms collected per cell, and the singular-continuous residual
/// nu(cell) - ac - atomic clamped at -tol. A residual below -10*tol signals
/// density overestimation and throws InconsistencyError.
LebesgueDecomposition decompose(const Curve& curve, const SpeedMeasure& nu,
                                std::vector<double> grid, double tol,
                                const DerivativeOptions& dopt = {});

/// Uniform-grid convenience overload.
LebesgueDecomposition decompose(const Curve& curve, const SpeedMeasure& nu, int cells,
                                double tol, const DerivativeOptions& dopt = {});

struct LengthIdentityReport {
  double var = 0.0;
  double density_integral = 0.0;
  double atomic_mass = 0.0;
  double sc_mass = 0.0;
  double rhs = 0.0;  // integral + atomic + sc
  double gap = 0.0;  // rhs - var
  bool var_le_rhs = false;
  bool equality_expected = false;
  bool equality_within_tol = false;
  bool curve_continuous = false;
};

/// Checks Var(gamma;J) <= int_J |gamma'| dl + nu_sing(J), with equality when
/// the included endpoints of J are continuity points (and hence the length
/// identity for curves).
LengthIdentityReport length_identity_check(const Curve& curve, const SpeedMeasure& nu,
                                           const Interval& j, double tol, int cells = 2048,
                                           const DerivativeOptions& dopt = {});

struct AcpSubintervalCheck {
  double s = 0.0;
  double t = 0.0;
  double var = 0.0;
  double integral = 0.0;
  bool holds = false;
};

struct AcpReport {
  double p = 1.0;
  bool ac_loc = false;
  bool ac_loc_exact = false;
  double integral = 0.0;  // int |gamma'|^p over the domain (last refinement level)
  std::vector<double> integral_levels;
  bool integral_finite = false;
  bool is_acp = false;  // ac_loc and the integral is finite/stable
  std::vector<AcpSubintervalCheck> strong_condition;
  bool strong_condition_holds = false;
};

/// AC^p membership: the curve is AC^p iff it is locally absolutely continuous
/// and int |gamma'|^p is finite, detected by stability of the integral under
/// grid refinement. Throws std::invalid_argument for p < 1.
AcpReport acp_classify(const Curve& curve, double p, double tol,
                       const VariationOptions& vopt = {});

}  // namespace speedm
