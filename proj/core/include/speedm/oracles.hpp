// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "speedm/curve.hpp"

namespace speedm {

/// Cantor function ("devil's staircase") evaluated exactly from the ternary
/// digit expansion of t computed in 128-bit fixed point.
double cantor_function(double t);

Curve cantor_curve();
Curve identity_curve(Interval domain = Interval::closed(0.0, 1.0));
Curve circle_arc_curve(double speed = 1.0, double radius = 1.0);
Curve step_curve(double jump_time = 0.5, double before = 0.0, double after = 1.0,
                 bool cadlag = true, Interval domain = Interval::closed(0.0, 1.0));
Curve sin_wave_curve();
Curve cantor_plus_linear_curve();
Curve staircase_curve(int jumps);

/// t^exponent on [0,1] (real line); exponent in (0,1) gives an absolutely
/// continuous curve with unbounded derivative at 0. Test fixture, not part
/// of the named oracle set.
Curve power_curve(double exponent, Interval domain = Interval::closed(0.0, 1.0));

//! Parameters accepted by make_oracle; unset fields take oracle defaults.
struct OracleParams {
  std::optional<double> speed;
  std::optional<double> radius;
  std::optional<double> jump_time;
  std::optional<double> before;
  std::optional<double> after;
  std::optional<int> jumps;
  std::optional<bool> cadlag;
  std::optional<Interval> domain;
};

/// Factory for the named oracle curves. Throws std::invalid_argument for an
/// unknown name.
Curve make_oracle(const std::string& name, const OracleParams& params = {});

std::vector<std::string> oracle_names();

struct OracleCatalogEntry {
  std::string name;
  std::string parameters;
  std::string space;
  std::string domain;
  std::string ground_truth;
  std::vector<double> declared_jumps;
  std::optional<double> known_variation;
};

std::vector<OracleCatalogEntry> oracle_catalog();

}  // namespace speedm
