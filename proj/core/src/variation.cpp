// SPDX-License-Identifier: Apache-2.0
#include "speedm/variation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "speedm/errors.hpp"

namespace speedm {

namespace {

struct Cell {
  double lo, hi;
  Point plo, phi;
  double chord;
};

void check_options(const VariationOptions& opt) {
  if (!(opt.tol > 0.0)) throw std::invalid_argument("variation tol must be positive");
  if (opt.max_depth < 0 || opt.min_depth < 0) {
    throw std::invalid_argument("refinement depths must be nonnegative");
  }
}

// Adaptive dyadic refinement of Var(gamma; [a,b]), both endpoints evaluable.
VariationResult refine_closed(const Curve& curve, double a, double b,
                              const VariationOptions& opt) {
  VariationResult res;
  if (a >= b) {
    res.converged = true;
    return res;
  }

  // Seed with the interval ends, every declared jump inside, and shrinking
  // neighbors of each jump so jump chords are captured at full size early.
  std::vector<double> seeds = {a, b};
  for (const double t : curve.jump_times()) {
    if (t < a || t > b) continue;
    seeds.push_back(t);
    for (int k = 8; k <= 40; k += 8) {
      const double h = std::ldexp(1.0, -k);
      if (t - h > a) seeds.push_back(t - h);
      if (t + h < b) seeds.push_back(t + h);
    }
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());

  std::vector<Cell> cells;
  cells.reserve(2 * seeds.size());
  {
    Point prev = curve.eval(seeds.front());
    for (std::size_t i = 1; i < seeds.size(); ++i) {
      Point next = curve.eval(seeds[i]);
      cells.push_back({seeds[i - 1], seeds[i], prev, next, curve.dist(prev, next)});
      prev = std::move(next);
    }
  }

  double frozen = 0.0;
  auto active_sum = [&cells]() {
    double s = 0.0;
    for (const auto& c : cells) s += c.chord;
    return s;
  };

  double total = frozen + active_sum();
  const double width = b - a;
  double inc_prev = std::numeric_limits<double>::infinity();
  double inc = std::numeric_limits<double>::infinity();
  int depth = 0;

  while (depth < opt.max_depth && !cells.empty()) {
    if (total > opt.blowup_bound) {
      res = {total, false, true, depth, inc};
      return res;
    }
    const bool force = depth < opt.min_depth;
    std::vector<Cell> next;
    next.reserve(2 * cells.size());
    double sum = 0.0;
    for (auto& c : cells) {
      const double m = 0.5 * (c.lo + c.hi);
      if (!(m > c.lo && m < c.hi)) {  // cell width exhausted in double precision
        frozen += c.chord;
        continue;
      }
      Point pm = curve.eval(m);
      const double left = curve.dist(c.plo, pm);
      const double right = curve.dist(pm, c.phi);
      const double gain = left + right - c.chord;
      // Unproductive cells stop refining once past the forced depth; the
      // per-cell allowance keeps the total unseen gain per sweep below tol/8.
      const double allowance = opt.tol * ((c.hi - c.lo) / width) * 0.125;
      if (force || gain > allowance) {
        sum += left + right;
        next.push_back({c.lo, m, std::move(c.plo), pm, left});
        next.push_back({m, c.hi, std::move(pm), std::move(c.phi), right});
      } else {
        frozen += c.chord;
      }
    }
    cells = std::move(next);
    ++depth;
    const double new_total = frozen + sum;
    inc = std::max(0.0, new_total - total);
    total = new_total;
    if (depth >= opt.min_depth && inc < opt.tol && inc_prev < opt.tol) {
      res = {total, true, false, depth, inc};
      return res;
    }
    inc_prev = inc;
    if (cells.size() > opt.cell_budget) break;
  }
  res = {total, cells.empty(), false, depth, std::isfinite(inc) ? inc : 0.0};
  return res;
}

// Exact variation of a piecewise-constant cadlag path: the sum of chords at
// sample transitions captured inside J.
VariationResult sampled_variation(const Curve& curve, const SampledCadlagBody& body,
                                  const Interval& j) {
  const auto& s = body.samples;
  if (j.lo < s.front().t) {
    throw std::domain_error("cadlag curve undefined before its first sample");
  }
  double total = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    const double t = s[i].t;
    // A transition at t contributes iff points on both sides of it lie in J.
    const bool inside = t > j.lo && (t < j.hi || (t == j.hi && j.hi_closed));
    if (!inside) continue;
    total += curve.dist(s[i - 1].value, s[i].value);
  }
  return {total, true, false, 0, 0.0};
}

// Exact variation of a piecewise-linear path: lengths of clipped segments.
VariationResult pl_variation(const Curve& curve, const PiecewiseLinearBody& body,
                             const Interval& j) {
  const auto& bp = body.breakpoints;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const double lo = std::max(bp[i].t, j.lo);
    const double hi = std::min(bp[i + 1].t, j.hi);
    if (lo >= hi) continue;
    total += curve.dist(curve.eval(lo), curve.eval(hi));
  }
  return {total, true, false, 0, 0.0};
}

// Inner-regularity exhaustion: sup of Var over closed [a+h, b-h] with h
// halving until the value stabilizes.
VariationResult exhaust_open(const Curve& curve, const Interval& j,
                             const VariationOptions& opt) {
  const double width = j.length();
  double h = width / 8.0;
  VariationResult last;
  double prev = std::numeric_limits<double>::quiet_NaN();
  int stable = 0;
  for (int step = 0; step < 56; ++step, h *= 0.5) {
    const double a = j.lo_closed ? j.lo : j.lo + h;
    const double b = j.hi_closed ? j.hi : j.hi - h;
    if (!(a < b)) continue;
    VariationResult r = refine_closed(curve, a, b, opt);
    if (r.infinite) return r;
    r.residual = std::isnan(prev) ? r.residual : std::abs(r.value - prev);
    if (!std::isnan(prev) && std::abs(r.value - prev) < 0.5 * opt.tol) {
      ++stable;
      if (stable >= 2) {
        r.converged = r.converged && true;
        return r;
      }
    } else {
      stable = 0;
    }
    prev = r.value;
    last = r;
    if (h < 1e-14 * width) break;
  }
  last.converged = false;
  return last;
}

}  // namespace

Partition Partition::of(std::vector<double> times) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (times[i] < times[i - 1]) {
      throw std::invalid_argument("partition times must be nondecreasing");
    }
  }
  return Partition{std::move(times)};
}

double var_sum(const Curve& curve, const Partition& partition) {
  const auto& ts = partition.times;
  for (const double t : ts) {
    if (!curve.domain().contains(t)) {
      throw std::domain_error("partition time outside the curve domain");
    }
  }
  if (ts.size() < 2) return 0.0;
  double total = 0.0;
  Point prev = curve.eval(ts.front());
  for (std::size_t i = 1; i < ts.size(); ++i) {
    Point next = curve.eval(ts[i]);
    total += curve.dist(prev, next);
    prev = std::move(next);
  }
  return total;
}

VariationResult variation(const Curve& curve, const Interval& j,
                          const VariationOptions& opt) {
  check_options(opt);
  if (!curve.domain().contains(j)) {
    throw std::domain_error("variation requested outside the curve domain");
  }
  if (j.degenerate()) return {0.0, true, false, 0, 0.0};

  if (const auto* s = std::get_if<SampledCadlagBody>(&curve.body())) {
    return sampled_variation(curve, *s, j);
  }
  if (const auto* p = std::get_if<PiecewiseLinearBody>(&curve.body())) {
    return pl_variation(curve, *p, j);
  }

  const bool ends_evaluable = curve.domain().contains(j.lo) && curve.domain().contains(j.hi);
  if (j.lo_closed && j.hi_closed) {
    return refine_closed(curve, j.lo, j.hi, opt);
  }
  if (ends_evaluable && curve.limits_declared()) {
    // Evaluated inner-regularity limit: open ends shed the one-sided gap at
    // the excluded endpoint, Var(gamma;(a,b]) = Var(gamma;[a,b]) - d(gamma(a),gamma(a+)).
    VariationResult r = refine_closed(curve, j.lo, j.hi, opt);
    if (r.infinite) return r;
    const JumpGaps glo = curve.one_sided_limits(j.lo);
    const JumpGaps ghi = curve.one_sided_limits(j.hi);
    if (!j.lo_closed) r.value -= glo.right_gap;
    if (!j.hi_closed) r.value -= ghi.left_gap;
    r.value = std::max(0.0, r.value);
    return r;
  }
  return exhaust_open(curve, j, opt);
}

double signed_variation(const Curve& curve, double a, double b,
                        const VariationOptions& opt) {
  if (a <= b) return variation(curve, Interval::closed(a, b), opt).value;
  return -variation(curve, Interval::closed(b, a), opt).value;
}

VariationProfile cumulative_profile(const Curve& curve, double c, std::vector<double> grid,
                                    const VariationOptions& opt) {
  check_options(opt);
  if (!curve.domain().contains(c)) {
    throw std::domain_error("profile base point outside the curve domain");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!curve.domain().contains(grid[i])) {
      throw std::domain_error("profile grid point outside the curve domain");
    }
    if (i > 0 && !(grid[i] > grid[i - 1])) {
      throw std::invalid_argument("profile grid must be strictly increasing");
    }
  }

  std::vector<double> merged = grid;
  merged.push_back(c);
  std::sort(merged.begin(), merged.end());
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());

  // Work is one sweep over segments; V at each grid time follows from
  // additivity relative to the base point. Segments are already narrow, so
  // their forced depth is reduced accordingly.
  VariationOptions seg_opt = opt;
  if (merged.size() > 2) {
    const int shift = static_cast<int>(std::round(std::log2(static_cast<double>(merged.size() - 1))));
    seg_opt.min_depth = std::clamp(opt.min_depth - shift, 2, opt.min_depth);
  }

  VariationProfile profile;
  profile.base_point = c;
  profile.grid = std::move(grid);

  std::vector<double> prefix(merged.size(), 0.0);
  int depth = 0;
  bool converged = true;
  double residual = 0.0;
  for (std::size_t i = 1; i < merged.size(); ++i) {
    const VariationResult r =
        variation(curve, Interval::closed(merged[i - 1], merged[i]), seg_opt);
    if (r.infinite) {
      throw NotBvError("variation blow-up while building the cumulative profile");
    }
    prefix[i] = prefix[i - 1] + r.value;
    depth = std::max(depth, r.depth);
    converged = converged && r.converged;
    residual = std::max(residual, r.residual);
  }

  const auto at = [&](double t) {
    const auto it = std::lower_bound(merged.begin(), merged.end(), t);
    return prefix[static_cast<std::size_t>(std::distance(merged.begin(), it))];
  };
  const double s_c = at(c);

  profile.V_values.reserve(profile.grid.size());
  profile.v_values.reserve(profile.grid.size());
  for (const double t : profile.grid) {
    const double v_cum = at(t) - s_c;
    const JumpGaps g = curve.one_sided_limits(t);
    converged = converged && g.right_status == LimitStatus::resolved;
    profile.V_values.push_back(v_cum);
    profile.v_values.push_back(v_cum + g.right_gap);
  }
  profile.refinement_depth = depth;
  profile.converged = converged;
  profile.residual = residual;
  return profile;
}

}  // namespace speedm
