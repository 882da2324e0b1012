// SPDX-License-Identifier: Apache-2.0
#include "speedm/speed_measure.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "speedm/errors.hpp"

namespace speedm {

namespace {

constexpr double kJumpFloor = 1e-7;

// Bisect a suspicious cell down to float resolution, following the side
// whose chord dominates, and return the two bracket ends as probe candidates.
std::pair<double, double> localize_jump(const Curve& curve, double u, double w) {
  Point pu = curve.eval(u);
  Point pw = curve.eval(w);
  while (true) {
    const double m = 0.5 * (u + w);
    if (!(m > u && m < w)) break;
    if (w - u < 1e-13 * std::max(1.0, std::abs(u))) break;
    Point pm = curve.eval(m);
    const double dl = curve.dist(pu, pm);
    const double dr = curve.dist(pm, pw);
    if (dl >= dr) {
      w = m;
      pw = std::move(pm);
    } else {
      u = m;
      pu = std::move(pm);
    }
  }
  return {u, w};
}

}  // namespace

SpeedMeasure SpeedMeasure::build(const Curve& curve, const VariationOptions& opt) {
  SpeedMeasure nu;
  nu.curve_ = std::make_shared<Curve>(curve);
  nu.opt_ = opt;
  nu.cache_ = std::make_shared<Cache>();

  Interval domain = curve.domain();
  if (const auto* s = std::get_if<SampledCadlagBody>(&curve.body())) {
    // The path is undefined before its first sample; start the measure there.
    const double first = s->samples.front().t;
    if (first > domain.lo) domain = Interval::make(first, domain.hi, true, domain.hi_closed);
  }
  nu.domain_ = domain;

  const VariationResult full = variation(curve, domain, opt);
  if (full.infinite) {
    throw NotBvError("curve is not of bounded variation on " + domain.str() +
                     ": running variation exceeded " + std::to_string(opt.blowup_bound));
  }

  nu.base_point_ = domain.lo_closed ? domain.lo : domain.midpoint();

  // Atoms. Declared representations give them exactly; black-box evaluators
  // get a scan of the profile for cells whose variation exceeds the local
  // continuity budget, followed by a one-sided limit probe.
  const auto sched = default_h_schedule();
  const double atom_floor = std::max(kJumpFloor, 100.0 * curve.gap_tol());
  if (curve.limits_declared()) {
    for (const double t : curve.jump_times()) {
      if (!domain.contains(t)) continue;
      const JumpGaps g = curve.one_sided_limits(t, sched);
      const double mass = g.left_gap + g.right_gap;
      if (mass > 0.0) nu.atoms_.push_back({t, g.left_gap, g.right_gap, mass});
    }
  }

  // Profile grid: sample times for sampled bodies, otherwise uniform with
  // atom times merged in.
  std::vector<double> grid;
  if (const auto* s = std::get_if<SampledCadlagBody>(&curve.body())) {
    for (const auto& smp : s->samples) grid.push_back(smp.t);
    if (domain.hi_closed && (grid.empty() || grid.back() != domain.hi)) {
      grid.push_back(domain.hi);
    }
  } else {
    const int n = 512;
    const double w = domain.length();
    const double lo = domain.lo_closed ? domain.lo : domain.lo + w / (4.0 * n);
    const double hi = domain.hi_closed ? domain.hi : domain.hi - w / (4.0 * n);
    for (int i = 0; i <= n; ++i) {
      grid.push_back(lo + (hi - lo) * static_cast<double>(i) / n);
    }
    for (const auto& a : nu.atoms_) grid.push_back(a.t);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  }
  nu.profile_ = cumulative_profile(curve, nu.base_point_, std::move(grid), opt);

  if (!curve.limits_declared()) {
    // Jump scan over profile cells.
    const auto& g = nu.profile_.grid;
    const auto& V = nu.profile_.V_values;
    const double total = V.empty() ? 0.0 : V.back() - V.front();
    const double density = total / std::max(domain.length(), 1e-300);
    for (std::size_t i = 1; i < g.size(); ++i) {
      const double w = g[i] - g[i - 1];
      const double cell_var = V[i] - V[i - 1];
      if (cell_var <= 8.0 * density * w + kJumpFloor) continue;
      const auto [u, wv] = localize_jump(curve, g[i - 1], g[i]);
      JumpGaps best;
      double best_mass = 0.0;
      for (const double cand : {wv, u}) {
        const JumpGaps jg = curve.one_sided_limits_numeric(cand, sched);
        const double mass = jg.left_gap + jg.right_gap;
        if (jg.resolved() && mass > best_mass) {
          best = jg;
          best_mass = mass;
        }
      }
      if (best_mass >= atom_floor) {
        nu.atoms_.push_back({best.t, best.left_gap, best.right_gap, best_mass});
      }
    }
  }

  std::sort(nu.atoms_.begin(), nu.atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.t < b.t; });
  nu.atoms_.erase(std::unique(nu.atoms_.begin(), nu.atoms_.end(),
                              [](const Atom& a, const Atom& b) { return a.t == b.t; }),
                  nu.atoms_.end());

  nu.left_endpoint_mass_ = domain.lo_closed ? nu.atom_mass_at(domain.lo) : 0.0;

  if (!domain.lo_closed) {
    nu.v_lo_limit_ =
        -variation(curve, Interval::make(domain.lo, nu.base_point_, false, true), opt).value;
  }
  if (!domain.hi_closed) {
    nu.v_hi_limit_ =
        variation(curve, Interval::make(nu.base_point_, domain.hi, true, false), opt).value;
  }
  return nu;
}

double SpeedMeasure::atom_mass_at(double t) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), t,
                             [](const Atom& a, double x) { return a.t < x; });
  if (it != atoms_.end() && it->t == t) return it->mass;
  return 0.0;
}

double SpeedMeasure::distribution(double t) const {
  if (!domain_.contains(t)) {
    throw std::domain_error("distribution function queried outside the domain");
  }
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto it = cache_->v.find(t);
  if (it != cache_->v.end()) return it->second;
  double right_gap = 0.0;
  {
    auto at = std::lower_bound(atoms_.begin(), atoms_.end(), t,
                               [](const Atom& a, double x) { return a.t < x; });
    if (at != atoms_.end() && at->t == t) right_gap = at->right_gap;
  }
  const double value = signed_variation(*curve_, base_point_, t, opt_) + right_gap;
  cache_->v.emplace(t, value);
  return value;
}

double SpeedMeasure::v_at_boundary(double t) const {
  if (t == domain_.lo && !domain_.lo_closed) return v_lo_limit_;
  if (t == domain_.hi && !domain_.hi_closed) return v_hi_limit_;
  return distribution(t);
}

double SpeedMeasure::measure(const Interval& j) const {
  if (!domain_.contains(j)) {
    throw std::domain_error("measure queried outside the domain " + domain_.str());
  }
  if (j.degenerate()) return atom_mass_at(j.lo);
  // nu(s,t] = v(t) - v(s); closing the left end adds the atom at s, opening
  // the right end removes the atom at t.
  double value = v_at_boundary(j.hi) - v_at_boundary(j.lo);
  if (j.lo_closed) value += atom_mass_at(j.lo);
  if (!j.hi_closed) value -= atom_mass_at(j.hi);
  return std::max(0.0, value);
}

double SpeedMeasure::measure_union(std::span<const Interval> intervals) const {
  std::vector<Interval> sorted(intervals.begin(), intervals.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (intervals_overlap(sorted[i - 1], sorted[i])) {
      throw std::invalid_argument("measure_union requires pairwise disjoint intervals");
    }
  }
  double total = 0.0;
  for (const auto& j : sorted) total += measure(j);
  return total;
}

double SpeedMeasure::total_mass() const { return measure(domain_); }

bool SpeedMeasure::continuity_verdict() const {
  return atoms_.empty() && left_endpoint_mass_ == 0.0;
}

VarVsMeasureReport var_vs_measure_check(const SpeedMeasure& nu, const Interval& j,
                                        double tol) {
  VarVsMeasureReport rep;
  rep.var = variation(nu.curve(), j, nu.options()).value;
  rep.nu = nu.measure(j);
  rep.diff = rep.nu - rep.var;
  rep.lo_is_continuity_point = nu.atom_mass_at(j.lo) == 0.0;
  rep.hi_is_continuity_point = nu.atom_mass_at(j.hi) == 0.0;
  rep.var_le_nu = rep.var <= rep.nu + tol;
  rep.equality_expected = (!j.lo_closed || rep.lo_is_continuity_point) &&
                          (!j.hi_closed || rep.hi_is_continuity_point);
  rep.equality_within_tol = std::abs(rep.diff) <= tol;
  rep.consistent = rep.var_le_nu && (rep.equality_within_tol == rep.equality_expected);
  return rep;
}

void write_profile_csv(const SpeedMeasure& nu, std::ostream& os) {
  os << "t,V,v,cumulative_atom_mass\n";
  const auto& p = nu.profile();
  const auto& atoms = nu.atoms();
  std::size_t ai = 0;
  double cum = 0.0;
  os.precision(17);
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    while (ai < atoms.size() && atoms[ai].t <= p.grid[i]) cum += atoms[ai++].mass;
    os << p.grid[i] << ',' << p.V_values[i] << ',' << p.v_values[i] << ',' << cum << '\n';
  }
}

void write_atoms_csv(const SpeedMeasure& nu, std::ostream& os) {
  os << "t,left_gap,right_gap,mass\n";
  os.precision(17);
  for (const auto& a : nu.atoms()) {
    os << a.t << ',' << a.left_gap << ',' << a.right_gap << ',' << a.mass << '\n';
  }
}

}  // namespace speedm
