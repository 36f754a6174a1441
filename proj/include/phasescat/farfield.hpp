#pragma once

#include <Eigen/Core>
#include <complex>
#include <optional>
#include <string>
#include <string_view>

#include "phasescat/geometry.hpp"

namespace phasescat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// N equispaced unit directions, theta_m = 2 pi m / N. Shared by incidence and observation.
class DirectionGrid {
 public:
  explicit DirectionGrid(int n);

  int size() const { return n_; }
  double angle(int m) const;
  Eigen::Vector2d direction(int m) const;
  /// Index of the grid direction matching `d` (unit length assumed) within `tol`.
  std::optional<int> index_of(const Eigen::Vector2d& d, double tol = 1e-9) const;
  /// Index of -direction(m); only defined for even N.
  int opposite(int m) const;

 private:
  int n_;
};

enum class FieldModel { obstacle, point, additive, coupled, retrieved };

std::string_view to_string(FieldModel model);
/// Accepts the file tags: obstacle-only, point-only, additive, coupled, retrieved.
FieldModel parse_field_model(std::string_view tag);

struct FieldMetadata {
  double k = 0.0;
  FieldModel model = FieldModel::obstacle;
  std::optional<Complex> tau;
  std::optional<Point> z0;
};

/// Phased far-field samples u(x_j, theta_l): row j = observation, column l = incidence.
struct FarFieldMatrix {
  ComplexMatrix values;
  FieldMetadata meta;

  int size() const { return static_cast<int>(values.rows()); }
};

/// Entrywise moduli of a far-field matrix; all entries are nonnegative.
struct PhaselessMatrix {
  RealMatrix values;
  FieldMetadata meta;

  int size() const { return static_cast<int>(values.rows()); }
  static PhaselessMatrix from(const FarFieldMatrix& field);
  /// Throws std::invalid_argument on a negative or non-finite entry.
  void validate() const;
};

/// Point-like reference scatterer of strength tau located at z0.
struct PointScatterer {
  Point z0 = Point::Zero();
  Complex tau = 0.0;
};

}  // namespace phasescat
