#pragma once

#include <Eigen/Core>
#include <Eigen/LU>
#include <stdexcept>
#include <variant>
#include <vector>

#include "phasescat/farfield.hpp"
#include "phasescat/geometry.hpp"

namespace phasescat {

/// The dense combined-field system could not be solved reliably.
class SolveError : public std::runtime_error {
 public:
  SolveError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

struct PlaneWave {
  Eigen::Vector2d direction;
};
/// Incident field Phi(., source) radiated from a point outside every obstacle.
struct PointSource {
  Point source;
};
using Incident = std::variant<PlaneWave, PointSource>;

/// Sampled parameterization of one curve at the quadrature nodes.
struct CurveNodes {
  std::vector<Point> x;
  std::vector<Eigen::Vector2d> dx;
  std::vector<Eigen::Vector2d> ddx;
  /// Unnormalized normal (x2', -x1'); its length equals the speed |x'|.
  std::vector<Eigen::Vector2d> n;
  std::vector<double> speed;

  static CurveNodes sample(const BoundaryCurve& curve, int m);
};

/// Nystrom discretization of the combined-layer ansatz u^s = (K - i eta S) psi on all
/// curves of a scene, with Kress' logarithmic splitting on the self-interaction blocks.
/// Dirichlet rows impose the trace, Neumann rows the normal derivative (Maue form).
/// The matrix is assembled and LU-factored once in the constructor.
class BoundarySolver {
 public:
  BoundarySolver(Scene scene, double k, int nodes_per_curve, double eta = 0.0);

  const Scene& scene() const { return scene_; }
  double wavenumber() const { return k_; }
  double coupling() const { return eta_; }
  int nodes_per_curve() const { return m_; }
  Eigen::Index unknowns() const { return system_.rows(); }
  const CurveNodes& nodes(std::size_t curve) const { return nodes_[curve]; }

  /// Boundary data for one incident field, one entry per node (curve-major).
  Eigen::VectorXcd right_hand_side(const Incident& incident) const;
  /// Right-hand sides for plane waves from every direction of the grid.
  Eigen::MatrixXcd plane_wave_right_hand_sides(const DirectionGrid& grid) const;

  Eigen::MatrixXcd solve(const Eigen::MatrixXcd& rhs) const;
  /// ||A psi - g|| / ||g|| for the unfactored system.
  double residual(const Eigen::VectorXcd& density, const Eigen::VectorXcd& rhs) const;
  double condition_estimate() const { return condition_; }

  /// Far field of the layer potential; rows follow `observation`, columns follow `densities`.
  Eigen::MatrixXcd far_field(const Eigen::MatrixXcd& densities, const DirectionGrid& observation) const;
  /// Row vector w with w * psi = (K - i eta S) psi evaluated at the exterior point x.
  /// The density is trigonometrically interpolated onto `refine` times as many nodes
  /// before the trapezoid rule is applied; refine = 1 is the plain rule.
  Eigen::RowVectorXcd evaluation_weights(const Point& x, int refine = 4) const;
  Complex evaluate(const Eigen::VectorXcd& density, const Point& x, int refine = 4) const;
  /// Smallest admissible distance between an evaluation point and a boundary.
  double evaluation_margin(int refine = 4) const;

 private:
  void assemble();
  Eigen::MatrixXcd self_block(std::size_t curve) const;
  Eigen::MatrixXcd cross_block(std::size_t row_curve, std::size_t col_curve) const;

  Scene scene_;
  double k_;
  double eta_;
  int m_;
  std::vector<CurveNodes> nodes_;
  Eigen::MatrixXcd system_;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
  double condition_ = 1.0;
};

}  // namespace phasescat
