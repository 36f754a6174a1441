#pragma once

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace phasescat {

using Point = Eigen::Vector2d;

enum class CurveKind { kite, peanut, pear, circle };
enum class BoundaryCondition { dirichlet, neumann };

std::string_view to_string(CurveKind kind);
std::string_view to_string(BoundaryCondition bc);
/// Parses the names used in scene configs; throws std::invalid_argument otherwise.
CurveKind parse_curve_kind(std::string_view name);
BoundaryCondition parse_boundary_condition(std::string_view name);

struct CurveDerivatives {
  Eigen::Vector2d first;
  Eigen::Vector2d second;
};

/// One of the four smooth closed test curves, oriented counterclockwise.
class BoundaryCurve {
 public:
  BoundaryCurve(CurveKind kind, Point center, double radius = 1.0);

  static BoundaryCurve kite(Point center) { return {CurveKind::kite, center}; }
  static BoundaryCurve peanut(Point center) { return {CurveKind::peanut, center}; }
  static BoundaryCurve pear(Point center) { return {CurveKind::pear, center}; }
  static BoundaryCurve circle(Point center, double radius) {
    return {CurveKind::circle, center, radius};
  }

  CurveKind kind() const { return kind_; }
  const Point& center() const { return center_; }
  double radius() const { return radius_; }

  Point point(double t) const;
  CurveDerivatives derivatives(double t) const;
  /// Unit outward normal (x2', -x1') / |x'|.
  Eigen::Vector2d outward_normal(double t) const;

  /// Same shape moved by h.
  BoundaryCurve translated(const Eigen::Vector2d& h) const;

  /// Closed polygon with `segments` vertices sampled at equispaced t.
  std::vector<Point> polygon(int segments = 2048) const;
  /// Largest distance between two sampled boundary points.
  double diameter() const;
  /// Point-in-curve test against the polygonal approximation.
  bool contains(const Point& p) const;
  /// Distance from p to the polygonal approximation of the curve.
  double distance_to(const Point& p) const;

 private:
  CurveKind kind_;
  Point center_;
  double radius_;
};

struct Scatterer {
  BoundaryCurve curve;
  BoundaryCondition condition = BoundaryCondition::dirichlet;
};

/// The obstacle part of a scattering configuration.
struct Scene {
  std::vector<Scatterer> scatterers;

  bool empty() const { return scatterers.empty(); }
  Scene translated(const Eigen::Vector2d& h) const;
  /// Throws std::invalid_argument if two curves intersect or nest.
  void validate() const;
  /// True when p lies inside or on some curve.
  bool contains(const Point& p) const;
  /// Minimum distance from p to any boundary (infinity for an empty scene).
  double distance_to_boundary(const Point& p) const;
};

/// Even-odd point-in-polygon test on a closed vertex list.
bool polygon_contains(const std::vector<Point>& polygon, const Point& p);
/// Distance from p to the closed polyline through the vertices.
double polygon_distance(const std::vector<Point>& polygon, const Point& p);

/// t_i = 2 pi i / M. M must be even and at least 4.
std::vector<double> quadrature_nodes(int m);

}  // namespace phasescat
