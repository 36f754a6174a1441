#pragma once

#include <vector>

#include "phasescat/farfield.hpp"
#include "phasescat/geometry.hpp"
#include "phasescat/nystrom.hpp"

namespace phasescat {

inline constexpr int kDefaultNodesPerCurve = 256;

/// Density values of one curve from a combined-field solve.
struct BoundaryDensity {
  std::size_t curve = 0;
  Eigen::VectorXcd values;
  double eta = 0.0;
  /// Relative residual of the full discrete system this density belongs to.
  double residual = 0.0;
};

/// tau * exp(i k z0 . (theta_l - x_j)).
FarFieldMatrix far_field_point(const PointScatterer& point, double k, const DirectionGrid& grid);

/// Densities for one incident field, split per curve.
std::vector<BoundaryDensity> solve_boundary_densities(const Scene& scene, double k, const Incident& incident,
                                                      int nodes_per_curve = kDefaultNodesPerCurve);

/// Scattered field of the layer potential built from `densities` at an exterior point.
Complex scattered_field_at(const Scene& scene, double k, const std::vector<BoundaryDensity>& densities,
                           const Point& x);

/// Obstacle-only far-field matrix; the zero matrix for an empty scene.
FarFieldMatrix far_field_obstacle(const Scene& scene, double k, const DirectionGrid& grid,
                                  int nodes_per_curve = kDefaultNodesPerCurve);

enum class CombinedModel { additive, coupled };

/// Far field of the obstacles together with the reference point scatterer.
/// `additive` sums the two separate far fields; `coupled` includes the point/obstacle
/// interaction through a Foldy closure on the point's excitation.
FarFieldMatrix far_field_combined(const Scene& scene, const PointScatterer& point, double k,
                                  const DirectionGrid& grid, CombinedModel model,
                                  int nodes_per_curve = kDefaultNodesPerCurve);

/// Same as far_field_combined for several strengths sharing one factorization.
std::vector<FarFieldMatrix> far_field_combined(const Scene& scene, const Point& z0,
                                               const std::vector<Complex>& strengths, double k,
                                               const DirectionGrid& grid, CombinedModel model,
                                               int nodes_per_curve = kDefaultNodesPerCurve);

/// Separation-of-variables far field of a disk; an analytic reference for the solver.
FarFieldMatrix mie_far_field_circle(double radius, const Point& center, BoundaryCondition condition, double k,
                                    const DirectionGrid& grid);

}  // namespace phasescat
