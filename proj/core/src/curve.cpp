// SPDX-License-Identifier: Apache-2.0
#include "speedm/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace speedm {

namespace {

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Index of the largest sample time <= t, or kNone.
std::size_t sample_at_or_before(const std::vector<Sample>& v, double t) {
  auto it = std::upper_bound(v.begin(), v.end(), t,
                             [](double x, const Sample& s) { return x < s.t; });
  if (it == v.begin()) return kNone;
  return static_cast<std::size_t>(std::distance(v.begin(), it)) - 1;
}

}  // namespace

std::vector<double> default_h_schedule() {
  std::vector<double> h;
  h.reserve(37);
  for (int k = 4; k <= 40; ++k) h.push_back(std::ldexp(1.0, -k));
  return h;
}

Curve::Curve(MetricSpace space, Interval domain, CurveBody body,
             std::optional<double> gap_tol)
    : space_(std::move(space)),
      domain_(domain),
      body_(std::move(body)),
      gap_tol_(gap_tol.value_or(1e-6)) {
  if (!(gap_tol_ > 0.0)) throw std::invalid_argument("gap_tol must be positive");
  validate();
}

void Curve::validate() const {
  // Re-validate the interval in case it was aggregate-initialized.
  (void)Interval::make(domain_.lo, domain_.hi, domain_.lo_closed, domain_.hi_closed);
  std::visit(
      Overload{
          [&](const AnalyticBody& b) {
            if (!b.eval) throw std::invalid_argument("analytic body requires an evaluator");
            double prev = -std::numeric_limits<double>::infinity();
            for (const auto& j : b.jumps) {
              if (!(j.t > prev)) {
                throw std::invalid_argument("declared jumps must be strictly increasing");
              }
              if (!domain_.contains(j.t)) {
                throw std::invalid_argument("declared jump lies outside the domain");
              }
              prev = j.t;
            }
          },
          [&](const SampledCadlagBody& b) {
            if (b.samples.empty()) {
              throw std::invalid_argument("sampled body requires at least one sample");
            }
            double prev = -std::numeric_limits<double>::infinity();
            for (const auto& s : b.samples) {
              if (!(s.t > prev)) {
                throw std::invalid_argument("sample times must be strictly increasing");
              }
              if (!domain_.contains(s.t)) {
                throw std::invalid_argument("sample time lies outside the domain");
              }
              if (!point_in_space(space_, s.value)) {
                throw std::invalid_argument("sample value does not belong to the space");
              }
              prev = s.t;
            }
          },
          [&](const PiecewiseLinearBody& b) {
            const bool vector_structure = std::holds_alternative<EuclideanSpace>(space_) ||
                                          std::holds_alternative<RealLineSpace>(space_);
            if (!vector_structure) {
              throw std::invalid_argument(
                  "piecewise-linear bodies need a space with vector structure");
            }
            if (b.breakpoints.empty()) {
              throw std::invalid_argument("piecewise-linear body requires breakpoints");
            }
            double prev = -std::numeric_limits<double>::infinity();
            for (const auto& s : b.breakpoints) {
              if (!(s.t > prev)) {
                throw std::invalid_argument("breakpoint times must be strictly increasing");
              }
              if (!point_in_space(space_, s.value)) {
                throw std::invalid_argument("breakpoint value does not belong to the space");
              }
              prev = s.t;
            }
            if (b.breakpoints.front().t != domain_.lo || b.breakpoints.back().t != domain_.hi) {
              throw std::invalid_argument("breakpoints must span the whole domain");
            }
          },
          [&](const CompositeBody& b) {
            if (!std::holds_alternative<RealLineSpace>(space_)) {
              throw std::invalid_argument("composite curves live on the real line");
            }
            if (b.parts.empty()) {
              throw std::invalid_argument("composite body requires at least one part");
            }
            for (const auto& part : b.parts) {
              if (!std::holds_alternative<RealLineSpace>(part.space())) {
                throw std::invalid_argument("composite parts must be real-valued");
              }
              if (!(part.domain() == domain_)) {
                throw std::invalid_argument("composite parts must share the curve domain");
              }
            }
          },
      },
      body_);
}

Point Curve::eval(double t) const {
  if (!domain_.contains(t)) {
    throw std::domain_error("curve evaluated outside its domain at t=" + std::to_string(t));
  }
  return std::visit(
      Overload{
          [&](const AnalyticBody& b) { return b.eval(t); },
          [&](const SampledCadlagBody& b) {
            const std::size_t i = sample_at_or_before(b.samples, t);
            if (i == kNone) {
              throw std::domain_error("cadlag curve evaluated before its first sample");
            }
            return b.samples[i].value;
          },
          [&](const PiecewiseLinearBody& b) {
            const auto& bp = b.breakpoints;
            const std::size_t i = sample_at_or_before(bp, t);
            if (i + 1 >= bp.size() || bp[i].t == t) return bp[i].value;
            const double w = (t - bp[i].t) / (bp[i + 1].t - bp[i].t);
            if (std::holds_alternative<ScalarPoint>(bp[i].value)) {
              const double a = std::get<ScalarPoint>(bp[i].value).value;
              const double c = std::get<ScalarPoint>(bp[i + 1].value).value;
              return scalar_point(a + w * (c - a));
            }
            const auto& a = std::get<VectorPoint>(bp[i].value).coords;
            const auto& c = std::get<VectorPoint>(bp[i + 1].value).coords;
            std::vector<double> out(a.size());
            for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] + w * (c[k] - a[k]);
            return vector_point(std::move(out));
          },
          [&](const CompositeBody& b) {
            double s = 0.0;
            for (const auto& part : b.parts) {
              s += std::get<ScalarPoint>(part.eval(t)).value;
            }
            return scalar_point(s);
          },
      },
      body_);
}

std::optional<Point> Curve::exact_left_limit(double t) const {
  if (t == domain_.lo) return eval(t);  // gamma(a-) := gamma(a)
  return std::visit(
      Overload{
          [&](const AnalyticBody& b) -> std::optional<Point> {
            auto it = std::lower_bound(b.jumps.begin(), b.jumps.end(), t,
                                       [](const DeclaredJump& j, double x) { return j.t < x; });
            if (it != b.jumps.end() && it->t == t) {
              return it->left_limit ? *it->left_limit : eval(t);
            }
            if (b.left_limit) return b.left_limit(t);
            if (b.jumps_complete) return eval(t);
            return std::nullopt;
          },
          [&](const SampledCadlagBody& b) -> std::optional<Point> {
            // value at the largest sample time strictly below t
            auto it = std::lower_bound(b.samples.begin(), b.samples.end(), t,
                                       [](const Sample& s, double x) { return s.t < x; });
            if (it == b.samples.begin()) return eval(t);  // may throw before first sample
            return std::prev(it)->value;
          },
          [&](const PiecewiseLinearBody&) -> std::optional<Point> { return eval(t); },
          [&](const CompositeBody& b) -> std::optional<Point> {
            double s = 0.0;
            for (const auto& part : b.parts) {
              auto l = part.exact_left_limit(t);
              if (!l) return std::nullopt;
              s += std::get<ScalarPoint>(*l).value;
            }
            return scalar_point(s);
          },
      },
      body_);
}

std::optional<Point> Curve::exact_right_limit(double t) const {
  if (t == domain_.hi) return eval(t);  // gamma(b+) := gamma(b)
  return std::visit(
      Overload{
          [&](const AnalyticBody& b) -> std::optional<Point> {
            auto it = std::lower_bound(b.jumps.begin(), b.jumps.end(), t,
                                       [](const DeclaredJump& j, double x) { return j.t < x; });
            if (it != b.jumps.end() && it->t == t) {
              return it->right_limit ? *it->right_limit : eval(t);
            }
            if (b.right_limit) return b.right_limit(t);
            if (b.jumps_complete) return eval(t);
            return std::nullopt;
          },
          // cadlag by construction
          [&](const SampledCadlagBody&) -> std::optional<Point> { return eval(t); },
          [&](const PiecewiseLinearBody&) -> std::optional<Point> { return eval(t); },
          [&](const CompositeBody& b) -> std::optional<Point> {
            double s = 0.0;
            for (const auto& part : b.parts) {
              auto r = part.exact_right_limit(t);
              if (!r) return std::nullopt;
              s += std::get<ScalarPoint>(*r).value;
            }
            return scalar_point(s);
          },
      },
      body_);
}

namespace {

struct SideEstimate {
  double gap = 0.0;
  LimitStatus status = LimitStatus::resolved;
};

}  // namespace

JumpGaps Curve::one_sided_limits_numeric(double t, std::span<const double> sched) const {
  if (!domain_.contains(t)) {
    throw std::domain_error("one-sided limits queried outside the domain");
  }
  for (std::size_t i = 1; i < sched.size(); ++i) {
    if (!(sched[i] < sched[i - 1]) || !(sched[i] > 0.0)) {
      throw std::invalid_argument("h schedule must be strictly decreasing and positive");
    }
  }
  const Point at = eval(t);
  auto estimate = [&](int dir) -> SideEstimate {
    double prev = std::numeric_limits<double>::quiet_NaN();
    bool any = false;
    for (const double h : sched) {
      const double s = t + dir * h;
      if (!domain_.contains(s) || s == t) continue;  // clip to the domain
      const double v = dist(eval(s), at);
      if (any && std::abs(v - prev) < gap_tol_) {
        return {v, LimitStatus::resolved};
      }
      prev = v;
      any = true;
    }
    if (!any) return {0.0, LimitStatus::resolved};  // endpoint convention
    return {prev, LimitStatus::not_resolved};
  };
  JumpGaps g;
  g.t = t;
  if (t == domain_.lo) {
    g.left_gap = 0.0;
  } else {
    auto e = estimate(-1);
    g.left_gap = e.gap;
    g.left_status = e.status;
  }
  if (t == domain_.hi) {
    g.right_gap = 0.0;
  } else {
    auto e = estimate(+1);
    g.right_gap = e.gap;
    g.right_status = e.status;
  }
  return g;
}

JumpGaps Curve::one_sided_limits(double t, std::span<const double> sched) const {
  if (!domain_.contains(t)) {
    throw std::domain_error("one-sided limits queried outside the domain");
  }
  const auto left = exact_left_limit(t);
  const auto right = exact_right_limit(t);
  if (left && right) {
    const Point at = eval(t);
    JumpGaps g;
    g.t = t;
    g.left_gap = dist(*left, at);
    g.right_gap = dist(at, *right);
    return g;
  }
  JumpGaps g = one_sided_limits_numeric(t, sched);
  if (left) {
    g.left_gap = dist(*left, eval(t));
    g.left_status = LimitStatus::resolved;
  }
  if (right) {
    g.right_gap = dist(eval(t), *right);
    g.right_status = LimitStatus::resolved;
  }
  return g;
}

JumpGaps Curve::one_sided_limits(double t) const {
  const auto sched = default_h_schedule();
  return one_sided_limits(t, sched);
}

std::vector<double> Curve::jump_times() const {
  return std::visit(
      Overload{
          [&](const AnalyticBody& b) {
            std::vector<double> out;
            out.reserve(b.jumps.size());
            for (const auto& j : b.jumps) out.push_back(j.t);
            return out;
          },
          [&](const SampledCadlagBody& b) {
            std::vector<double> out;
            for (std::size_t i = 1; i < b.samples.size(); ++i) {
              if (dist(b.samples[i - 1].value, b.samples[i].value) > 0.0) {
                out.push_back(b.samples[i].t);
              }
            }
            return out;
          },
          [&](const PiecewiseLinearBody&) { return std::vector<double>{}; },
          [&](const CompositeBody& b) {
            std::vector<double> out;
            for (const auto& part : b.parts) {
              auto j = part.jump_times();
              out.insert(out.end(), j.begin(), j.end());
            }
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return out;
          },
      },
      body_);
}

bool Curve::limits_declared() const {
  return std::visit(
      Overload{
          [&](const AnalyticBody& b) {
            return b.jumps_complete || (static_cast<bool>(b.left_limit) && static_cast<bool>(b.right_limit));
          },
          [&](const SampledCadlagBody&) { return true; },
          [&](const PiecewiseLinearBody&) { return true; },
          [&](const CompositeBody& b) {
            return std::all_of(b.parts.begin(), b.parts.end(),
                               [](const Curve& p) { return p.limits_declared(); });
          },
      },
      body_);
}

}  // namespace speedm
