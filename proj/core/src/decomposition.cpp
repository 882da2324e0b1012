// SPDX-License-Identifier: Apache-2.0
#include "speedm/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

#include "speedm/ac_analysis.hpp"
#include "speedm/errors.hpp"

namespace speedm {

namespace {

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Options for variation over the tiny intervals of difference quotients.
VariationOptions quotient_opts(double h, double deriv_tol, const VariationOptions& base) {
  VariationOptions q = base;
  q.tol = std::max(1e-14, 0.05 * deriv_tol * h);
  q.min_depth = 4;
  q.max_depth = 12;
  return q;
}

}  // namespace

MetricDerivativeEstimate metric_derivative(const Curve& curve, double t,
                                           const DerivativeOptions& opt) {
  const Interval& dom = curve.domain();
  if (!dom.contains(t)) {
    throw std::domain_error("metric derivative requested outside the domain");
  }
  MetricDerivativeEstimate est;
  est.t = t;

  const JumpGaps gaps = curve.one_sided_limits(t);
  if (gaps.resolved() && gaps.total() > 100.0 * curve.gap_tol()) {
    est.status = DerivativeStatus::undefined_at_jump;
    return est;
  }

  const Point at = curve.eval(t);
  std::deque<std::vector<double>> levels;  // difference quotients, last three k
  double last_mean = 0.0;
  double h_used = 0.0;
  for (int k = opt.k_min; k <= opt.k_max; ++k) {
    const double h = std::ldexp(1.0, -k);
    std::vector<double> vals;
    if (dom.contains(t + h)) vals.push_back(curve.dist(curve.eval(t + h), at) / h);
    if (dom.contains(t - h)) vals.push_back(curve.dist(curve.eval(t - h), at) / h);
    if (vals.empty()) continue;
    for (const double v : vals) {
      if (v > opt.blowup) {  // divergent quotient
        est.value = v;
        est.h_used = h;
        est.status = DerivativeStatus::not_resolved;
        return est;
      }
    }
    levels.push_back(vals);
    if (levels.size() > 3) levels.pop_front();
    last_mean = mean(levels.back());
    h_used = h;
    if (levels.size() == 3) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (const auto& lv : levels) {
        for (const double v : lv) {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
      }
      if (hi - lo <= opt.deriv_tol + opt.rel_tol * std::abs(last_mean)) {
        est.value = last_mean;
        est.h_used = h;
        est.status = DerivativeStatus::converged;
        return est;
      }
    }
  }
  est.value = last_mean;
  est.h_used = h_used;
  est.status = DerivativeStatus::not_resolved;
  return est;
}

DensityProfile density_profile(const Curve& curve, std::vector<double> grid,
                               const DerivativeOptions& dopt, const VariationOptions& vopt) {
  DensityProfile out;
  out.grid.reserve(grid.size());
  const Interval& dom = curve.domain();
  for (const double t : grid) {
    const MetricDerivativeEstimate est = metric_derivative(curve, t, dopt);
    if (est.status == DerivativeStatus::undefined_at_jump) continue;  // atoms excluded
    out.grid.push_back(t);
    if (est.status == DerivativeStatus::converged) {
      out.values.push_back(std::max(0.0, est.value));
      out.sources.push_back(DensitySource::derivative);
      continue;
    }
    // Variation-quotient fallback at the smallest stable h; the one-sided
    // cell (t, t+h] is preferred, mirroring the shrinking family of v'.
    double prev = std::numeric_limits<double>::quiet_NaN();
    bool ok = false;
    double val = 0.0;
    for (int k = std::max(8, dopt.k_min); k <= dopt.k_max; ++k) {
      const double h = std::ldexp(1.0, -k);
      Interval cell;
      if (dom.contains(t + h)) {
        cell = Interval::closed(t, t + h);
      } else if (dom.contains(t - h)) {
        cell = Interval::closed(t - h, t);
      } else {
        continue;
      }
      const double r = variation(curve, cell, quotient_opts(h, dopt.deriv_tol, vopt)).value / h;
      if (!std::isnan(prev) && std::abs(r - prev) <= dopt.deriv_tol + dopt.rel_tol * std::abs(r)) {
        val = r;
        ok = true;
        break;
      }
      prev = r;
    }
    if (ok) {
      out.values.push_back(std::max(0.0, val));
      out.sources.push_back(DensitySource::variation_quotient);
    } else {
      out.values.push_back(0.0);
      out.sources.push_back(DensitySource::unresolved);
      ++out.unresolved_count;
    }
  }

  // The unresolved set is lambda-null for BV inputs; fill those entries from
  // the nearest resolved neighbors so quadrature is not punctured by it.
  const std::size_t n = out.grid.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (out.sources[i] != DensitySource::unresolved) continue;
    double left = std::numeric_limits<double>::quiet_NaN();
    double right = left;
    for (std::size_t j = i; j-- > 0;) {
      if (out.sources[j] != DensitySource::unresolved) {
        left = out.values[j];
        break;
      }
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (out.sources[j] != DensitySource::unresolved) {
        right = out.values[j];
        break;
      }
    }
    if (!std::isnan(left) && !std::isnan(right)) {
      out.values[i] = 0.5 * (left + right);
    } else if (!std::isnan(left)) {
      out.values[i] = left;
    } else if (!std::isnan(right)) {
      out.values[i] = right;
    }
  }
  return out;
}

LebesgueDecomposition decompose(const Curve& curve, const SpeedMeasure& nu,
                                std::vector<double> grid, double tol,
                                const DerivativeOptions& dopt) {
  if (!(tol > 0.0)) throw std::invalid_argument("decompose tol must be positive");
  if (grid.size() < 2) throw std::invalid_argument("decompose needs at least two grid points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!nu.domain().contains(grid[i])) {
      throw std::domain_error("decomposition grid point outside the domain");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("decomposition grid must be strictly increasing");
    }
  }
  // Atom times never enter the density grid.
  std::erase_if(grid, [&](double t) { return nu.atom_mass_at(t) > 0.0; });
  if (grid.size() < 2) {
    throw std::invalid_argument("decomposition grid is degenerate after removing atoms");
  }

  LebesgueDecomposition dec;
  dec.tol = tol;
  DensityProfile dens = density_profile(curve, std::move(grid), dopt, nu.options());
  dec.grid = std::move(dens.grid);
  dec.density = std::move(dens.values);
  dec.density_sources = std::move(dens.sources);
  dec.atomic = nu.atoms();

  const Interval& dom = nu.domain();
  const std::size_t cells = dec.grid.size() - 1;
  dec.ac_mass_per_cell.resize(cells);
  dec.atomic_mass_per_cell.resize(cells);
  dec.sc_mass_per_cell.resize(cells);
  dec.nu_per_cell.resize(cells);

  for (std::size_t i = 0; i < cells; ++i) {
    const double lo = dec.grid[i];
    const double hi = dec.grid[i + 1];
    const bool lo_closed = (i == 0 && lo == dom.lo) ? dom.lo_closed : true;
    const bool hi_closed = (i + 1 == cells) ? ((hi == dom.hi) ? dom.hi_closed : true) : false;
    const Interval cell = Interval::make(lo, hi, lo_closed, hi_closed);

    const double nu_cell = nu.measure(cell);
    const double ac = 0.5 * (dec.density[i] + dec.density[i + 1]) * (hi - lo);
    double atomic = 0.0;
    for (const auto& a : dec.atomic) {
      if (cell.contains(a.t)) atomic += a.mass;
    }
    const double sc_raw = nu_cell - ac - atomic;
    if (sc_raw < -10.0 * tol) {
      throw InconsistencyError(
          "singular-continuous residual is negative beyond noise in cell " + cell.str() +
          ": " + std::to_string(sc_raw) + " (density overestimation)");
    }
    dec.nu_per_cell[i] = nu_cell;
    dec.ac_mass_per_cell[i] = ac;
    dec.atomic_mass_per_cell[i] = atomic;
    dec.sc_mass_per_cell[i] = std::max(0.0, sc_raw);

    dec.ac_total += ac;
    dec.atomic_total += atomic;
    dec.sc_total += dec.sc_mass_per_cell[i];
    dec.nu_total += nu_cell;
  }
  return dec;
}

LebesgueDecomposition decompose(const Curve& curve, const SpeedMeasure& nu, int cells,
                                double tol, const DerivativeOptions& dopt) {
  if (cells < 1) throw std::invalid_argument("decompose needs at least one cell");
  const Interval& dom = nu.domain();
  const double w = dom.length();
  const double inset = w / (100.0 * cells);
  const double lo = dom.lo_closed ? dom.lo : dom.lo + inset;
  const double hi = dom.hi_closed ? dom.hi : dom.hi - inset;
  std::vector<double> grid(static_cast<std::size_t>(cells) + 1);
  for (int i = 0; i <= cells; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / cells;
  }
  return decompose(curve, nu, std::move(grid), tol, dopt);
}

LengthIdentityReport length_identity_check(const Curve& curve, const SpeedMeasure& nu,
                                           const Interval& j, double tol, int cells,
                                           const DerivativeOptions& dopt) {
  if (!nu.domain().contains(j)) {
    throw std::domain_error("length identity requested outside the domain");
  }
  LengthIdentityReport rep;
  rep.var = variation(curve, j, nu.options()).value;

  std::vector<double> grid(static_cast<std::size_t>(cells) + 1);
  for (int i = 0; i <= cells; ++i) {
    grid[static_cast<std::size_t>(i)] = j.lo + (j.hi - j.lo) * static_cast<double>(i) / cells;
  }
  std::erase_if(grid, [&](double t) {
    return !nu.domain().contains(t) || nu.atom_mass_at(t) > 0.0;
  });
  const DensityProfile dens = density_profile(curve, std::move(grid), dopt, nu.options());
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < dens.grid.size(); ++i) {
    integral +=
        0.5 * (dens.values[i] + dens.values[i + 1]) * (dens.grid[i + 1] - dens.grid[i]);
  }
  rep.density_integral = integral;

  for (const auto& a : nu.atoms()) {
    if (j.contains(a.t)) rep.atomic_mass += a.mass;
  }
  const double nu_j = nu.measure(j);
  rep.sc_mass = std::max(0.0, nu_j - integral - rep.atomic_mass);
  rep.rhs = rep.density_integral + rep.atomic_mass + rep.sc_mass;
  rep.gap = rep.rhs - rep.var;
  rep.var_le_rhs = rep.var <= rep.rhs + tol;
  rep.equality_expected = (!j.lo_closed || nu.atom_mass_at(j.lo) == 0.0) &&
                          (!j.hi_closed || nu.atom_mass_at(j.hi) == 0.0);
  rep.equality_within_tol = std::abs(rep.gap) <= tol;
  rep.curve_continuous = nu.continuity_verdict();
  return rep;
}

namespace {

// int |gamma'|^p estimated through the variation quotient per grid cell, the
// a.e. derivative of v; evaluated on nested grids so divergence shows up as
// growth under refinement.
std::vector<double> acp_integral_levels(const Curve& curve, double p, double tol,
                                        const VariationOptions& vopt) {
  const Interval& dom = curve.domain();
  const int finest = 1 << 15;
  const double w = dom.length();
  const double inset = w / (100.0 * finest);
  const double lo = dom.lo_closed ? dom.lo : dom.lo + inset;
  const double hi = dom.hi_closed ? dom.hi : dom.hi - inset;

  VariationOptions seg = vopt;
  seg.tol = std::max(1e-14, tol / finest);
  seg.min_depth = 2;
  seg.max_depth = 10;

  std::vector<double> prefix(static_cast<std::size_t>(finest) + 1, 0.0);
  std::vector<double> ts(static_cast<std::size_t>(finest) + 1, 0.0);
  for (int i = 0; i <= finest; ++i) {
    ts[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / finest;
  }
  for (int i = 0; i < finest; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    prefix[idx + 1] =
        prefix[idx] + variation(curve, Interval::closed(ts[idx], ts[idx + 1]), seg).value;
  }

  std::vector<double> levels;
  for (int n = finest / 8; n <= finest; n *= 2) {
    const int step = finest / n;
    double total = 0.0;
    for (int jcell = 0; jcell < finest; jcell += step) {
      const auto a = static_cast<std::size_t>(jcell);
      const auto b = static_cast<std::size_t>(jcell + step);
      const double cw = ts[b] - ts[a];
      if (!(cw > 0.0)) continue;
      const double q = (prefix[b] - prefix[a]) / cw;
      total += std::pow(q, p) * cw;
    }
    levels.push_back(total);
  }
  return levels;
}

}  // namespace

AcpReport acp_classify(const Curve& curve, double p, double tol,
                       const VariationOptions& vopt) {
  if (p < 1.0) throw std::invalid_argument("acp_classify requires p >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("acp_classify tol must be positive");

  const BanachZaretskyReport bz = banach_zaretsky_verdict(curve, vopt);

  AcpReport rep;
  rep.p = p;
  rep.ac_loc = bz.ac_loc;
  rep.ac_loc_exact = bz.exact;
  rep.integral_levels = acp_integral_levels(curve, p, tol, vopt);
  const auto& lv = rep.integral_levels;
  rep.integral = lv.back();
  const double d2 = lv[2] - lv[1];
  const double d3 = lv[3] - lv[2];
  if (std::abs(d3) <= std::max(tol, 1e-12 * std::abs(lv.back()))) {
    rep.integral_finite = true;
  } else {
    rep.integral_finite = std::abs(d3) <= 0.9 * std::abs(d2);
  }
  rep.is_acp = rep.ac_loc && rep.integral_finite;

  // Spot checks of L(gamma|[s,t]) <= int_s^t |gamma'| on a fixed lattice of
  // subintervals, evaluated against the metric-derivative density.
  const Interval& dom = curve.domain();
  const double w = dom.length();
  const double lo = dom.lo_closed ? dom.lo : dom.lo + w * 1e-6;
  const double hi = dom.hi_closed ? dom.hi : dom.hi - w * 1e-6;
  std::vector<double> grid(513);
  for (int i = 0; i <= 512; ++i) {
    grid[static_cast<std::size_t>(i)] = lo + (hi - lo) * static_cast<double>(i) / 512;
  }
  const DensityProfile dens = density_profile(curve, std::move(grid), {}, vopt);
  std::vector<double> dprefix(dens.grid.size(), 0.0);
  for (std::size_t i = 0; i + 1 < dens.grid.size(); ++i) {
    dprefix[i + 1] = dprefix[i] + 0.5 * (dens.values[i] + dens.values[i + 1]) *
                                      (dens.grid[i + 1] - dens.grid[i]);
  }
  auto integral_on = [&](double s, double t) {
    auto is = std::lower_bound(dens.grid.begin(), dens.grid.end(), s) - dens.grid.begin();
    auto it = std::lower_bound(dens.grid.begin(), dens.grid.end(), t) - dens.grid.begin();
    is = std::min<std::ptrdiff_t>(is, static_cast<std::ptrdiff_t>(dprefix.size()) - 1);
    it = std::min<std::ptrdiff_t>(it, static_cast<std::ptrdiff_t>(dprefix.size()) - 1);
    return dprefix[static_cast<std::size_t>(it)] - dprefix[static_cast<std::size_t>(is)];
  };

  const int eighths[][2] = {{0, 1}, {0, 4}, {2, 6}, {3, 5}, {1, 7}, {0, 8}};
  rep.strong_condition_holds = true;
  for (const auto& e : eighths) {
    AcpSubintervalCheck chk;
    chk.s = lo + (hi - lo) * e[0] / 8.0;
    chk.t = lo + (hi - lo) * e[1] / 8.0;
    chk.var = variation(curve, Interval::closed(chk.s, chk.t), vopt).value;
    chk.integral = integral_on(chk.s, chk.t);
    chk.holds = chk.var <= chk.integral + std::max(20.0 * tol, 1e-3 * std::abs(chk.var) + 1e-9);
    rep.strong_condition_holds = rep.strong_condition_holds && chk.holds;
    rep.strong_condition.push_back(chk);
  }
  return rep;
}

}  // namespace speedm
