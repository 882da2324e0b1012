// SPDX-License-Identifier: Apache-2.0
#include "speedm/metric_space.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace speedm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double r) {
  double x = std::fmod(r, kTwoPi);
  if (x < 0.0) x += kTwoPi;
  // fmod can land exactly on 2*pi after the correction
  if (x >= kTwoPi) x -= kTwoPi;
  return x;
}

template <class... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overload(Ts...) -> Overload<Ts...>;

[[noreturn]] void mismatch(const MetricSpace& s, const Point& p) {
  throw std::invalid_argument("point " + point_str(p) + " does not belong to space " +
                              space_str(s));
}

}  // namespace

AnglePoint::AnglePoint(double r) : radians(reduce_angle(r)) {}

bool point_equal(const Point& a, const Point& b) {
  if (a.index() != b.index()) return false;
  return std::visit(
      Overload{
          [&](const ScalarPoint& x) { return x.value == std::get<ScalarPoint>(b).value; },
          [&](const VectorPoint& x) { return x.coords == std::get<VectorPoint>(b).coords; },
          [&](const AnglePoint& x) { return x.radians == std::get<AnglePoint>(b).radians; },
          [&](const LabelPoint& x) { return x.name == std::get<LabelPoint>(b).name; },
      },
      a);
}

std::string point_str(const Point& p) {
  std::ostringstream os;
  std::visit(Overload{
                 [&](const ScalarPoint& x) { os << x.value; },
                 [&](const VectorPoint& x) {
                   os << "(";
                   for (std::size_t i = 0; i < x.coords.size(); ++i) {
                     if (i) os << ", ";
                     os << x.coords[i];
                   }
                   os << ")";
                 },
                 [&](const AnglePoint& x) { os << "angle(" << x.radians << ")"; },
                 [&](const LabelPoint& x) { os << '"' << x.name << '"'; },
             },
             p);
  return os.str();
}

MetricSpace euclidean_space(int dim) {
  if (dim <= 0) throw std::invalid_argument("euclidean dimension must be positive");
  return EuclideanSpace{dim};
}

MetricSpace real_line_space() { return RealLineSpace{}; }

MetricSpace snowflake_space(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) {
    throw std::invalid_argument("snowflake alpha must lie in (0, 1]");
  }
  return SnowflakeSpace{alpha};
}

MetricSpace discrete_space() { return DiscreteSpace{}; }

MetricSpace circle_space(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle radius must be positive");
  return CircleSpace{radius};
}

std::string space_str(const MetricSpace& s) {
  return std::visit(
      Overload{
          [](const EuclideanSpace& e) {
            return "euclidean(" + std::to_string(e.dim) + ")";
          },
          [](const RealLineSpace&) { return std::string("real-line"); },
          [](const SnowflakeSpace& f) {
            return "snowflake(" + std::to_string(f.alpha) + ")";
          },
          [](const DiscreteSpace&) { return std::string("discrete"); },
          [](const CircleSpace& c) { return "circle(" + std::to_string(c.radius) + ")"; },
      },
      s);
}

bool point_in_space(const MetricSpace& space, const Point& p) {
  return std::visit(
      Overload{
          [&](const EuclideanSpace& e) {
            const auto* v = std::get_if<VectorPoint>(&p);
            return v != nullptr && v->coords.size() == static_cast<std::size_t>(e.dim);
          },
          [&](const RealLineSpace&) { return std::holds_alternative<ScalarPoint>(p); },
          [&](const SnowflakeSpace&) { return std::holds_alternative<ScalarPoint>(p); },
          [&](const DiscreteSpace&) { return std::holds_alternative<LabelPoint>(p); },
          [&](const CircleSpace&) { return std::holds_alternative<AnglePoint>(p); },
      },
      space);
}

double distance(const MetricSpace& space, const Point& p, const Point& q) {
  if (!point_in_space(space, p)) mismatch(space, p);
  if (!point_in_space(space, q)) mismatch(space, q);
  return std::visit(
      Overload{
          [&](const EuclideanSpace&) {
            const auto& a = std::get<VectorPoint>(p).coords;
            const auto& b = std::get<VectorPoint>(q).coords;
            double s = 0.0;
            for (std::size_t i = 0; i < a.size(); ++i) {
              const double d = a[i] - b[i];
              s += d * d;
            }
            return std::sqrt(s);
          },
          [&](const RealLineSpace&) {
            return std::abs(std::get<ScalarPoint>(p).value - std::get<ScalarPoint>(q).value);
          },
          [&](const SnowflakeSpace& f) {
            const double d =
                std::abs(std::get<ScalarPoint>(p).value - std::get<ScalarPoint>(q).value);
            // alpha = 1 must coincide with the real line exactly
            return f.alpha == 1.0 ? d : std::pow(d, f.alpha);
          },
          [&](const DiscreteSpace&) {
            return std::get<LabelPoint>(p).name == std::get<LabelPoint>(q).name ? 0.0 : 1.0;
          },
          [&](const CircleSpace& c) {
            const double a = std::get<AnglePoint>(p).radians;
            const double b = std::get<AnglePoint>(q).radians;
            const double d = std::abs(a - b);
            return c.radius * std::min(d, kTwoPi - d);
          },
      },
      space);
}

std::string AxiomViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::symmetry:
      os << "symmetry violated at (" << witness[0] << "," << witness[1] << "): " << lhs
         << " vs " << rhs;
      break;
    case Kind::identity:
      os << "d(x,x) != 0 at " << witness[0] << ": " << lhs;
      break;
    case Kind::positivity:
      os << "zero distance between distinct points (" << witness[0] << "," << witness[1]
         << ")";
      break;
    case Kind::triangle:
      os << "triangle inequality violated at (" << witness[0] << "," << witness[1] << ","
         << witness[2] << "): " << lhs << " > " << rhs;
      break;
  }
  return os.str();
}

MetricAxiomReport metric_axiom_report(const DistanceFn& d, std::span<const Point> samples,
                                      double tol) {
  MetricAxiomReport rep;
  const std::size_t n = samples.size();
  std::vector<double> dist(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dist[i * n + j] = d(samples[i], samples[j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(dist[i * n + i]) > tol) {
      rep.violations.push_back({AxiomViolation::Kind::identity, {i, i, i},
                                dist[i * n + i], 0.0});
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(dist[i * n + j] - dist[j * n + i]) > tol) {
        rep.violations.push_back({AxiomViolation::Kind::symmetry, {i, j, j},
                                  dist[i * n + j], dist[j * n + i]});
      }
      if (!point_equal(samples[i], samples[j]) && dist[i * n + j] <= tol) {
        rep.violations.push_back({AxiomViolation::Kind::positivity, {i, j, j},
                                  dist[i * n + j], 0.0});
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        const double lhs = dist[i * n + k];
        const double rhs = dist[i * n + j] + dist[j * n + k];
        if (lhs > rhs + tol * (1.0 + std::abs(rhs))) {
          rep.violations.push_back({AxiomViolation::Kind::triangle, {i, j, k}, lhs, rhs});
        }
      }
    }
  }
  rep.passed = rep.violations.empty();
  return rep;
}

MetricAxiomReport metric_axiom_report(const MetricSpace& space, std::span<const Point> samples,
                                      double tol) {
  return metric_axiom_report(
      [&space](const Point& p, const Point& q) { return distance(space, p, q); }, samples,
      tol);
}

}  // namespace speedm
