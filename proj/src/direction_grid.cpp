#include <cmath>
#include <numbers>
#include <stdexcept>

#include "phasescat/farfield.hpp"

namespace phasescat {

DirectionGrid::DirectionGrid(int n) : n_(n) {
  if (n <= 0) throw std::invalid_argument("DirectionGrid: N must be positive");
}

double DirectionGrid::angle(int m) const { return 2.0 * std::numbers::pi * m / n_; }

Eigen::Vector2d DirectionGrid::direction(int m) const {
  const double a = angle(m);
  return {std::cos(a), std::sin(a)};
}

std::optional<int> DirectionGrid::index_of(const Eigen::Vector2d& d, double tol) const {
  double a = std::atan2(d.y(), d.x());
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  const int m = static_cast<int>(std::lround(a * n_ / (2.0 * std::numbers::pi))) % n_;
  if ((direction(m) - d).norm() <= tol) return m;
  return std::nullopt;
}

int DirectionGrid::opposite(int m) const {
  if (n_ % 2 != 0) throw std::logic_error("DirectionGrid: opposite directions need even N");
  return (m + n_ / 2) % n_;
}

std::string_view to_string(FieldModel model) {
  switch (model) {
    case FieldModel::obstacle: return "obstacle-only";
    case FieldModel::point: return "point-only";
    case FieldModel::additive: return "additive";
    case FieldModel::coupled: return "coupled";
    case FieldModel::retrieved: return "retrieved";
  }
  return "?";
}

FieldModel parse_field_model(std::string_view tag) {
  if (tag == "obstacle-only" || tag == "obstacle") return FieldModel::obstacle;
  if (tag == "point-only" || tag == "point") return FieldModel::point;
  if (tag == "additive") return FieldModel::additive;
  if (tag == "coupled") return FieldModel::coupled;
  if (tag == "retrieved") return FieldModel::retrieved;
  throw std::invalid_argument("unknown field model '" + std::string(tag) + "'");
}

PhaselessMatrix PhaselessMatrix::from(const FarFieldMatrix& field) {
  return {field.values.cwiseAbs(), field.meta};
}

void PhaselessMatrix::validate() const {
  for (Eigen::Index j = 0; j < values.rows(); ++j) {
    for (Eigen::Index l = 0; l < values.cols(); ++l) {
      const double v = values(j, l);
      if (!std::isfinite(v) || v < 0.0) {
        throw std::invalid_argument("phaseless matrix entry (" + std::to_string(j) + "," +
                                    std::to_string(l) + ") is negative or not finite");
      }
    }
  }
}

}  // namespace phasescat
