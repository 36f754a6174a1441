#include "phasescat/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace phasescat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Radial profile rho(t) and its first two derivatives for star-shaped curves.
struct Radial {
  double value, first, second;
};

Radial radial_profile(CurveKind kind, double radius, double t) {
  switch (kind) {
    case CurveKind::peanut: {
      const double s = std::sqrt(3.0 * std::cos(t) * std::cos(t) + 1.0);
      const double s2t = std::sin(2.0 * t);
      return {2.0 * s, -3.0 * s2t / s, -6.0 * std::cos(2.0 * t) / s - 4.5 * s2t * s2t / (s * s * s)};
    }
    case CurveKind::pear:
      return {2.0 + 0.3 * std::cos(3.0 * t), -0.9 * std::sin(3.0 * t), -2.7 * std::cos(3.0 * t)};
    case CurveKind::circle:
      return {radius, 0.0, 0.0};
    case CurveKind::kite:
      break;
  }
  return {0.0, 0.0, 0.0};
}

double segment_distance(const Point& p, const Point& a, const Point& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  double s = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return (p - (a + s * ab)).norm();
}

}  // namespace

bool polygon_contains(const std::vector<Point>& poly, const Point& p) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point& a = poly[i];
    const Point& b = poly[j];
    if ((a.y() > p.y()) != (b.y() > p.y())) {
      const double x_cross = a.x() + (p.y() - a.y()) * (b.x() - a.x()) / (b.y() - a.y());
      if (p.x() < x_cross) inside = !inside;
    }
  }
  return inside;
}

double polygon_distance(const std::vector<Point>& poly, const Point& p) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, segment_distance(p, poly[i], poly[(i + 1) % n]));
  }
  return best;
}

std::string_view to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::kite: return "kite";
    case CurveKind::peanut: return "peanut";
    case CurveKind::pear: return "pear";
    case CurveKind::circle: return "circle";
  }
  return "?";
}

std::string_view to_string(BoundaryCondition bc) {
  return bc == BoundaryCondition::dirichlet ? "dirichlet" : "neumann";
}

CurveKind parse_curve_kind(std::string_view name) {
  if (name == "kite") return CurveKind::kite;
  if (name == "peanut") return CurveKind::peanut;
  if (name == "pear") return CurveKind::pear;
  if (name == "circle") return CurveKind::circle;
  throw std::invalid_argument("unknown curve kind '" + std::string(name) + "'");
}

BoundaryCondition parse_boundary_condition(std::string_view name) {
  if (name == "dirichlet" || name == "soft") return BoundaryCondition::dirichlet;
  if (name == "neumann" || name == "hard") return BoundaryCondition::neumann;
  throw std::invalid_argument("unknown boundary condition '" + std::string(name) + "'");
}

BoundaryCurve::BoundaryCurve(CurveKind kind, Point center, double radius)
    : kind_(kind), center_(std::move(center)), radius_(radius) {
  if (kind_ == CurveKind::circle && !(radius_ > 0.0)) {
    throw std::invalid_argument("circle radius must be positive");
  }
}

Point BoundaryCurve::point(double t) const {
  if (kind_ == CurveKind::kite) {
    return center_ + Point(std::cos(t) + 0.65 * std::cos(2.0 * t) - 0.65, 1.5 * std::sin(t));
  }
  const Radial r = radial_profile(kind_, radius_, t);
  return center_ + r.value * Point(std::cos(t), std::sin(t));
}

CurveDerivatives BoundaryCurve::derivatives(double t) const {
  const double c = std::cos(t);
  const double s = std::sin(t);
  if (kind_ == CurveKind::kite) {
    return {{-s - 1.3 * std::sin(2.0 * t), 1.5 * c}, {-c - 2.6 * std::cos(2.0 * t), -1.5 * s}};
  }
  const Radial r = radial_profile(kind_, radius_, t);
  const Eigen::Vector2d radial(c, s);
  const Eigen::Vector2d tangential(-s, c);
  return {r.first * radial + r.value * tangential,
          (r.second - r.value) * radial + 2.0 * r.first * tangential};
}

Eigen::Vector2d BoundaryCurve::outward_normal(double t) const {
  const Eigen::Vector2d d = derivatives(t).first;
  return Eigen::Vector2d(d.y(), -d.x()) / d.norm();
}

BoundaryCurve BoundaryCurve::translated(const Eigen::Vector2d& h) const {
  return {kind_, center_ + h, radius_};
}

std::vector<Point> BoundaryCurve::polygon(int segments) const {
  std::vector<Point> poly;
  poly.reserve(static_cast<std::size_t>(segments));
  for (int i = 0; i < segments; ++i) poly.push_back(point(kTwoPi * i / segments));
  return poly;
}

double BoundaryCurve::diameter() const {
  const auto poly = polygon(256);
  double best = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    for (std::size_t j = i + 1; j < poly.size(); ++j) best = std::max(best, (poly[i] - poly[j]).norm());
  }
  return best;
}

bool BoundaryCurve::contains(const Point& p) const { return polygon_contains(polygon(), p); }

double BoundaryCurve::distance_to(const Point& p) const { return polygon_distance(polygon(), p); }

Scene Scene::translated(const Eigen::Vector2d& h) const {
  Scene out;
  for (const auto& s : scatterers) out.scatterers.push_back({s.curve.translated(h), s.condition});
  return out;
}

void Scene::validate() const {
  std::vector<std::vector<Point>> polys;
  for (const auto& s : scatterers) polys.push_back(s.curve.polygon());
  for (std::size_t a = 0; a < polys.size(); ++a) {
    for (std::size_t b = a + 1; b < polys.size(); ++b) {
      if (polygon_contains(polys[a], polys[b][0]) || polygon_contains(polys[b], polys[a][0])) {
        throw std::invalid_argument("scene: scatterers " + std::to_string(a) + " and " +
                                    std::to_string(b) + " overlap");
      }
      double gap = std::numeric_limits<double>::infinity();
      for (const auto& p : polys[b]) gap = std::min(gap, polygon_distance(polys[a], p));
      if (!(gap > 0.0)) {
        throw std::invalid_argument("scene: scatterers " + std::to_string(a) + " and " +
                                    std::to_string(b) + " touch");
      }
      for (const auto& p : polys[b]) {
        if (polygon_contains(polys[a], p)) {
          throw std::invalid_argument("scene: scatterers " + std::to_string(a) + " and " +
                                      std::to_string(b) + " intersect");
        }
      }
    }
  }
}

bool Scene::contains(const Point& p) const {
  return std::any_of(scatterers.begin(), scatterers.end(),
                     [&](const Scatterer& s) { return s.curve.contains(p); });
}

double Scene::distance_to_boundary(const Point& p) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : scatterers) best = std::min(best, s.curve.distance_to(p));
  return best;
}

std::vector<double> quadrature_nodes(int m) {
  if (m < 4 || m % 2 != 0) {
    throw std::invalid_argument("quadrature_nodes: M must be even and at least 4, got " +
                                std::to_string(m));
  }
  std::vector<double> t(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) t[static_cast<std::size_t>(i)] = kTwoPi * i / m;
  return t;
}

}  // namespace phasescat
