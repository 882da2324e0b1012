// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace speedm {

// ---------------------------------------------------------------------------
// Points

struct ScalarPoint {
  double value = 0.0;
};

struct VectorPoint {
  std::vector<double> coords;
};

//! Angle on a circle, stored reduced to [0, 2*pi).
struct AnglePoint {
  double radians = 0.0;
  AnglePoint() = default;
  explicit AnglePoint(double r);
};

struct LabelPoint {
  std::string name;
};

using Point = std::variant<ScalarPoint, VectorPoint, AnglePoint, LabelPoint>;

inline Point scalar_point(double v) { return ScalarPoint{v}; }
inline Point vector_point(std::vector<double> c) { return VectorPoint{std::move(c)}; }
inline Point angle_point(double r) { return AnglePoint{r}; }
inline Point label_point(std::string s) { return LabelPoint{std::move(s)}; }

bool point_equal(const Point& a, const Point& b);
std::string point_str(const Point& p);

// ---------------------------------------------------------------------------
// Spaces

struct EuclideanSpace {
  int dim = 1;
};
struct RealLineSpace {};
//! d(x,y) = |x-y|^alpha with alpha in (0,1]; alpha = 1 is the real line.
struct SnowflakeSpace {
  double alpha = 0.5;
};
struct DiscreteSpace {};
//! Geodesic (arc) distance on a circle of the given radius.
struct CircleSpace {
  double radius = 1.0;
};

using MetricSpace =
    std::variant<EuclideanSpace, RealLineSpace, SnowflakeSpace, DiscreteSpace, CircleSpace>;

MetricSpace euclidean_space(int dim);
MetricSpace real_line_space();
MetricSpace snowflake_space(double alpha);
MetricSpace discrete_space();
MetricSpace circle_space(double radius);

std::string space_str(const MetricSpace& s);

bool point_in_space(const MetricSpace& space, const Point& p);

/// Distance in the given space. Throws std::invalid_argument when either
/// point does not belong to the space.
double distance(const MetricSpace& space, const Point& p, const Point& q);

// ---------------------------------------------------------------------------
// Axiom checking

struct AxiomViolation {
  enum class Kind { symmetry, identity, positivity, triangle };
  Kind kind;
  std::array<std::size_t, 3> witness{};  // indices into the sample set
  double lhs = 0.0;
  double rhs = 0.0;
  std::string describe() const;
};

struct MetricAxiomReport {
  bool passed = true;
  std::vector<AxiomViolation> violations;
};

using DistanceFn = std::function<double(const Point&, const Point&)>;

/// Checks symmetry, d(x,x)=0, positivity off the diagonal and the triangle
/// inequality over all triples of the sample set. Failures are reported
/// with witnesses; the function itself never throws on a bad metric.
MetricAxiomReport metric_axiom_report(const DistanceFn& d, std::span<const Point> samples,
                                      double tol = 1e-12);
MetricAxiomReport metric_axiom_report(const MetricSpace& space, std::span<const Point> samples,
                                      double tol = 1e-12);

}  // namespace speedm
