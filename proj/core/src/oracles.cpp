// SPDX-License-Identifier: Apache-2.0
#include "speedm/oracles.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace speedm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kOracleGapTol = 1e-9;  // exact-arithmetic evaluators

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

double cantor_function(double t) {
  if (!(t > 0.0)) return 0.0;
  if (t >= 1.0) return 1.0;
  // Below this the value is under 2^-42; the leading ternary digits of t are
  // all zero and the fixed-point conversion would no longer be exact.
  if (t < std::ldexp(1.0, -67)) return 0.0;
  // t = num / 2^120 exactly.
  auto num = static_cast<unsigned __int128>(std::ldexp(t, 120));
  const unsigned __int128 mask = ((static_cast<unsigned __int128>(1) << 120) - 1);
  double value = 0.0;
  double bit = 0.5;
  for (int i = 0; i < 120 && num != 0; ++i) {
    num *= 3;
    const auto digit = static_cast<unsigned>(num >> 120);
    num &= mask;
    if (digit == 1) {  // first ternary digit 1 terminates the expansion
      value += bit;
      break;
    }
    if (digit == 2) value += bit;
    bit *= 0.5;
  }
  return value;
}

Curve cantor_curve() {
  AnalyticBody body;
  body.eval = [](double t) { return scalar_point(cantor_function(t)); };
  body.jumps_complete = true;
  Curve c(real_line_space(), Interval::closed(0.0, 1.0), std::move(body), kOracleGapTol);
  OracleInfo info;
  info.name = "cantor";
  info.continuous = true;
  info.simple = false;  // constant on every middle-third gap
  info.known_variation = 1.0;
  info.known_ac_mass = 0.0;
  info.known_sc_mass = 1.0;
  info.known_atomic_mass = 0.0;
  c.set_oracle(std::move(info));
  return c;
}

Curve identity_curve(Interval domain) {
  AnalyticBody body;
  body.eval = [](double t) { return scalar_point(t); };
  body.jumps_complete = true;
  Curve c(real_line_space(), domain, std::move(body), kOracleGapTol);
  OracleInfo info;
  info.name = "identity";
  info.continuous = true;
  info.simple = true;
  info.known_variation = domain.length();
  info.known_ac_mass = domain.length();
  info.known_sc_mass = 0.0;
  info.known_atomic_mass = 0.0;
  c.set_oracle(std::move(info));
  return c;
}

Curve circle_arc_curve(double speed, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle_arc radius must be positive");
  AnalyticBody body;
  body.eval = [speed](double t) { return angle_point(speed * t); };
  body.jumps_complete = true;
  const Interval domain = Interval::closed(0.0, kTwoPi);
  Curve c(circle_space(radius), domain, std::move(body), kOracleGapTol);
  OracleInfo info;
  info.name = "circle_arc";
  info.parameter_summary = "speed=" + fmt(speed) + ", radius=" + fmt(radius);
  info.continuous = true;
  info.simple = std::abs(speed) * kTwoPi < kTwoPi;  // no wrap-around
  const double var = std::abs(speed) * radius * kTwoPi;
  info.known_variation = var;
  info.known_ac_mass = var;
  info.known_sc_mass = 0.0;
  info.known_atomic_mass = 0.0;
  c.set_oracle(std::move(info));
  return c;
}

Curve step_curve(double jump_time, double before, double after, bool cadlag,
                 Interval domain) {
  if (!domain.contains(jump_time)) {
    throw std::invalid_argument("step jump time must lie in the domain");
  }
  const double gap = std::abs(after - before);
  AnalyticBody body;
  if (cadlag) {
    body.eval = [=](double t) { return scalar_point(t < jump_time ? before : after); };
    body.jumps = {{jump_time, scalar_point(before), scalar_point(after)}};
  } else {
    // Isolated value at the jump time; both one-sided limits equal `before`.
    body.eval = [=](double t) { return scalar_point(t == jump_time ? after : before); };
    body.jumps = {{jump_time, scalar_point(before), scalar_point(before)}};
  }
  body.jumps_complete = true;
  Curve c(real_line_space(), domain, std::move(body), kOracleGapTol);
  OracleInfo info;
  info.name = "step";
  info.parameter_summary = "jump_time=" + fmt(jump_time) + ", before=" + fmt(before) +
                           ", after=" + fmt(after) + (cadlag ? ", cadlag" : ", non-cadlag");
  info.continuous = gap == 0.0;
  info.simple = false;
  const double var = cadlag ? gap : 2.0 * gap;
  info.known_variation = var;
  info.known_ac_mass = 0.0;
  info.known_sc_mass = 0.0;
  info.known_atomic_mass = var;
  c.set_oracle(std::move(info));
  return c;
}

Curve sin_wave_curve() {
  AnalyticBody body;
  body.eval = [](double t) { return scalar_point(std::sin(t)); };
  body.jumps_complete = true;
  Curve c(real_line_space(), Interval::closed(0.0, kTwoPi), std::move(body), kOracleGapTol);
  OracleInfo info;
  info.name = "sin_wave";
  info.continuous = true;
  info.simple = false;
  info.known_variation = 4.0;
  info.known_ac_mass = 4.0;
  info.known_sc_mass = 0.0;
  info.known_atomic_mass = 0.0;
  c.set_oracle(std::move(info));
  return c;
}

Curve cantor_plus_linear_curve() {
  const Interval domain = Interval::closed(0.0, 1.0);
  CompositeBody body;
  body.parts.push_back(cantor_curve());
  body.parts.push_back(identity_curve(domain));
  Curve c(real_line_space(), domain, std::move(body), kOracleGapTol);
  OracleInfo info;
  info.name = "cantor_plus_linear";
  info.continuous = true;
  info.simple = true;  // strictly increasing
  info.known_variation = 2.0;
  info.known_ac_mass = 1.0;
  info.known_sc_mass = 1.0;
  info.known_atomic_mass = 0.0;
  c.set_oracle(std::move(info));
  return c;
}

Curve staircase_curve(int jumps) {
  if (jumps < 1) throw std::invalid_argument("staircase needs at least one jump");
  SampledCadlagBody body;
  body.samples.push_back({0.0, scalar_point(0.0)});
  for (int i = 1; i <= jumps; ++i) {
    const double t = static_cast<double>(i) / (jumps + 1);
    body.samples.push_back({t, scalar_point(static_cast<double>(i) / jumps)});
  }
  Curve c(real_line_space(), Interval::closed(0.0, 1.0), std::move(body), kOracleGapTol);
  OracleInfo info;
  info.name = "staircase";
  info.parameter_summary = "jumps=" + std::to_string(jumps);
  info.continuous = false;
  info.simple = false;
  info.known_variation = 1.0;
  info.known_ac_mass = 0.0;
  info.known_sc_mass = 0.0;
  info.known_atomic_mass = 1.0;
  c.set_oracle(std::move(info));
  return c;
}

Curve power_curve(double exponent, Interval domain) {
  if (!(exponent > 0.0)) throw std::invalid_argument("power exponent must be positive");
  if (domain.lo < 0.0) throw std::invalid_argument("power curve needs a nonnegative domain");
  AnalyticBody body;
  body.eval = [exponent](double t) { return scalar_point(std::pow(t, exponent)); };
  body.jumps_complete = true;
  Curve c(real_line_space(), domain, std::move(body), kOracleGapTol);
  OracleInfo info;
  info.name = "power";
  info.parameter_summary = "exponent=" + fmt(exponent);
  info.continuous = true;
  info.simple = true;
  const double var =
      std::pow(domain.hi, exponent) - std::pow(domain.lo, exponent);
  info.known_variation = var;
  info.known_ac_mass = var;
  info.known_sc_mass = 0.0;
  info.known_atomic_mass = 0.0;
  c.set_oracle(std::move(info));
  return c;
}

Curve make_oracle(const std::string& name, const OracleParams& p) {
  if (name == "cantor") return cantor_curve();
  if (name == "identity") return identity_curve(p.domain.value_or(Interval::closed(0.0, 1.0)));
  if (name == "circle_arc") {
    return circle_arc_curve(p.speed.value_or(1.0), p.radius.value_or(1.0));
  }
  if (name == "step") {
    return step_curve(p.jump_time.value_or(0.5), p.before.value_or(0.0),
                      p.after.value_or(1.0), p.cadlag.value_or(true),
                      p.domain.value_or(Interval::closed(0.0, 1.0)));
  }
  if (name == "sin_wave") return sin_wave_curve();
  if (name == "cantor_plus_linear") return cantor_plus_linear_curve();
  if (name == "staircase") return staircase_curve(p.jumps.value_or(4));
  throw std::invalid_argument("unknown oracle: " + name);
}

std::vector<std::string> oracle_names() {
  return {"cantor", "identity", "circle_arc", "step",
          "sin_wave", "cantor_plus_linear", "staircase"};
}

std::vector<OracleCatalogEntry> oracle_catalog() {
  std::vector<OracleCatalogEntry> out;
  out.push_back({"cantor", "(none)", "real-line", "[0, 1]",
                 "continuous, singular: Var = 1, nu_ac = 0, nu_sc = 1, no atoms",
                 {}, 1.0});
  out.push_back({"identity", "(none)", "real-line", "[0, 1]",
                 "absolutely continuous: Var = 1, density 1 everywhere",
                 {}, 1.0});
  out.push_back({"circle_arc", "speed (default 1), radius (default 1)", "circle(radius)",
                 "[0, 2*pi]",
                 "absolutely continuous, unit metric speed: Var = 2*pi*speed*radius",
                 {}, kTwoPi});
  out.push_back({"step",
                 "jump_time (0.5), before (0), after (1), cadlag (true)", "real-line",
                 "[0, 1]",
                 "one atom; cadlag: Var = |after-before|; non-cadlag keeps an isolated "
                 "value at the jump time and doubles the atom",
                 {0.5}, 1.0});
  out.push_back({"sin_wave", "(none)", "real-line", "[0, 2*pi]",
                 "absolutely continuous: Var = 4, density |cos|",
                 {}, 4.0});
  out.push_back({"cantor_plus_linear", "(none)", "real-line", "[0, 1]",
                 "continuous, mixed: Var = 2, nu_ac = 1, nu_sc = 1, no atoms",
                 {}, 2.0});
  {
    OracleCatalogEntry e{"staircase", "jumps (default 4)", "real-line", "[0, 1]",
                         "purely atomic: Var = 1 split over n equal jumps at k/(n+1)",
                         {}, 1.0};
    for (int i = 1; i <= 4; ++i) e.declared_jumps.push_back(i / 5.0);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace speedm
