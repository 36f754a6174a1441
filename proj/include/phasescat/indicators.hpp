#pragma once

#include <string>
#include <vector>

#include "phasescat/farfield.hpp"

namespace phasescat {

/// Rectangular sampling grid [x_min, x_max] x [y_min, y_max] with uniform spacing.
struct GridSpec {
  double x_min = -6.0;
  double x_max = 6.0;
  double y_min = -6.0;
  double y_max = 6.0;
  double spacing = 0.05;

  /// floor(range / spacing) + 1 nodes per axis.
  int nx() const;
  int ny() const;
  Point node(int ix, int iy) const { return {x_min + ix * spacing, y_min + iy * spacing}; }
  void validate() const;
};

/// Indicator values on a grid; values(iy, ix) belongs to node(ix, iy).
struct GridField {
  GridSpec spec;
  RealMatrix values;
  std::string provenance;

  int nx() const { return static_cast<int>(values.cols()); }
  int ny() const { return static_cast<int>(values.rows()); }
  Point node(int ix, int iy) const { return spec.node(ix, iy); }
};

/// F = |u_{D+z0}|^2 - |u_D|^2 - |tau|^2, entrywise.
struct FMatrix {
  RealMatrix values;
  Complex tau = 0.0;
  Point z0 = Point::Zero();
  double k = 0.0;
};

/// Indices of a finite set of incident directions on the direction grid.
struct ThetaSet {
  std::vector<int> indices;

  /// Throws std::invalid_argument for an empty set or a direction not on the grid.
  static ThetaSet from_directions(const std::vector<Eigen::Vector2d>& directions, const DirectionGrid& grid);
};

FMatrix f_matrix(const PhaselessMatrix& combined, const PhaselessMatrix& bare, Complex tau);

/// |sum_j sum_l F cos(k (x_j - theta_l) . (z - z0))| (2 pi / N)^2.
GridField indicator_iz0(const FMatrix& f, const GridSpec& grid);
/// |sum_{theta in Theta} sum_j F(x_j, theta) cos(k x_j . (z - z0))| (2 pi / N).
GridField indicator_itheta(const FMatrix& f, const ThetaSet& theta, const GridSpec& grid);

/// G(z, theta_l) = (2 pi / N) sum_j U(j, l) exp(i k x_j . z).
Complex auxiliary_g(const FarFieldMatrix& u, const Point& z, int incidence);
/// A(z) = (2 pi / N)^2 sum_j sum_l U(j, l) exp(i k (x_j - theta_l) . z).
Complex auxiliary_a(const FarFieldMatrix& u, const Point& z);

/// |G(z, theta_l)| on the grid.
GridField indicator_i3(const FarFieldMatrix& u, int incidence, const GridSpec& grid);
/// |A(z)| on the grid.
GridField indicator_i2(const FarFieldMatrix& u, const GridSpec& grid);

}  // namespace phasescat
