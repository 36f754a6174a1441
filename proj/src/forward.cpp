#include "phasescat/forward.hpp"

#include <cmath>
#include <stdexcept>

namespace phasescat {

namespace {

constexpr Complex kI{0.0, 1.0};

FieldMetadata metadata(double k, FieldModel model, std::optional<Complex> tau = std::nullopt,
                       std::optional<Point> z0 = std::nullopt) {
  return {k, model, tau, z0};
}

void check_wavenumber(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("wavenumber must be positive");
}

}  // namespace

FarFieldMatrix far_field_point(const PointScatterer& point, double k, const DirectionGrid& grid) {
  const int n = grid.size();
  FarFieldMatrix out{ComplexMatrix(n, n), metadata(k, FieldModel::point, point.tau, point.z0)};
  for (int l = 0; l < n; ++l) {
    const double incident = point.z0.dot(grid.direction(l));
    for (int j = 0; j < n; ++j) {
      out.values(j, l) = point.tau * std::polar(1.0, k * (incident - point.z0.dot(grid.direction(j))));
    }
  }
  return out;
}

std::vector<BoundaryDensity> solve_boundary_densities(const Scene& scene, double k, const Incident& incident,
                                                      int nodes_per_curve) {
  check_wavenumber(k);
  if (scene.empty()) throw std::invalid_argument("solve_boundary_densities: empty scene");
  if (const auto* ps = std::get_if<PointSource>(&incident)) {
    if (scene.contains(ps->source) || scene.distance_to_boundary(ps->source) == 0.0) {
      throw std::invalid_argument("solve_boundary_densities: point source must lie outside every obstacle");
    }
  }
  scene.validate();
  const BoundarySolver solver(scene, k, nodes_per_curve);
  const Eigen::VectorXcd rhs = solver.right_hand_side(incident);
  const Eigen::VectorXcd psi = solver.solve(rhs);
  const double residual = solver.residual(psi, rhs);
  std::vector<BoundaryDensity> out;
  for (std::size_t c = 0; c < scene.scatterers.size(); ++c) {
    out.push_back({c, psi.segment(static_cast<Eigen::Index>(c) * nodes_per_curve, nodes_per_curve),
                   solver.coupling(), residual});
  }
  return out;
}

Complex scattered_field_at(const Scene& scene, double k, const std::vector<BoundaryDensity>& densities,
                           const Point& x) {
  if (densities.empty()) return 0.0;
  if (densities.size() != scene.scatterers.size()) {
    throw std::invalid_argument("scattered_field_at: one density per scatterer required");
  }
  const int m = static_cast<int>(densities.front().values.size());
  const BoundarySolver solver(scene, k, m, densities.front().eta);
  Eigen::VectorXcd psi(solver.unknowns());
  for (const auto& d : densities) psi.segment(static_cast<Eigen::Index>(d.curve) * m, m) = d.values;
  return solver.evaluate(psi, x);
}

FarFieldMatrix far_field_obstacle(const Scene& scene, double k, const DirectionGrid& grid, int nodes_per_curve) {
  check_wavenumber(k);
  const int n = grid.size();
  FarFieldMatrix out{ComplexMatrix::Zero(n, n), metadata(k, FieldModel::obstacle)};
  if (scene.empty()) return out;
  scene.validate();
  const BoundarySolver solver(scene, k, nodes_per_curve);
  const Eigen::MatrixXcd psi = solver.solve(solver.plane_wave_right_hand_sides(grid));
  out.values = solver.far_field(psi, grid);
  return out;
}

std::vector<FarFieldMatrix> far_field_combined(const Scene& scene, const Point& z0,
                                               const std::vector<Complex>& strengths, double k,
                                               const DirectionGrid& grid, CombinedModel model,
                                               int nodes_per_curve) {
  check_wavenumber(k);
  const int n = grid.size();
  const FieldModel tag = model == CombinedModel::additive ? FieldModel::additive : FieldModel::coupled;
  std::vector<FarFieldMatrix> out;
  if (scene.empty()) {
    for (const Complex& tau : strengths) {
      FarFieldMatrix f = far_field_point({z0, tau}, k, grid);
      f.meta.model = tag;
      out.push_back(std::move(f));
    }
    return out;
  }
  if (scene.contains(z0) || scene.distance_to_boundary(z0) == 0.0) {
    throw std::invalid_argument("far_field_combined: z0 must lie outside every obstacle");
  }
  scene.validate();
  const BoundarySolver solver(scene, k, nodes_per_curve);
  const Eigen::MatrixXcd psi = solver.solve(solver.plane_wave_right_hand_sides(grid));
  const Eigen::MatrixXcd obstacle = solver.far_field(psi, grid);

  if (model == CombinedModel::additive) {
    for (const Complex& tau : strengths) {
      FarFieldMatrix f{obstacle + far_field_point({z0, tau}, k, grid).values, metadata(k, tag, tau, z0)};
      out.push_back(std::move(f));
    }
    return out;
  }

  // Point excitation c = (u^i(z0) + P[psi_1](z0)) / (1 - tau P[psi_2](z0)), where psi_2
  // is the obstacle response to Phi(., z0).
  const Eigen::VectorXcd psi_point = solver.solve(solver.right_hand_side(PointSource{z0}));
  const Eigen::RowVectorXcd weights = solver.evaluation_weights(z0);
  const Eigen::RowVectorXcd reflected = weights * psi;
  const Complex self_reflected = (weights * psi_point)(0);
  const Eigen::VectorXcd point_obstacle = solver.far_field(psi_point, grid);
  Eigen::VectorXcd point_direct(n);
  for (int j = 0; j < n; ++j) point_direct(j) = std::polar(1.0, -k * z0.dot(grid.direction(j)));

  for (const Complex& tau : strengths) {
    const Complex denom = 1.0 - tau * self_reflected;
    if (std::abs(denom) < 1e-8) {
      throw std::runtime_error("far_field_combined: resonant point/obstacle coupling (|1 - tau P| < 1e-8)");
    }
    FarFieldMatrix f{obstacle, metadata(k, tag, tau, z0)};
    for (int l = 0; l < n; ++l) {
      const Complex excitation = (std::polar(1.0, k * z0.dot(grid.direction(l))) + reflected(l)) / denom;
      const Complex amplitude = tau * excitation;
      f.values.col(l) += amplitude * (point_obstacle + point_direct);
    }
    out.push_back(std::move(f));
  }
  return out;
}

FarFieldMatrix far_field_combined(const Scene& scene, const PointScatterer& point, double k,
                                  const DirectionGrid& grid, CombinedModel model, int nodes_per_curve) {
  return far_field_combined(scene, point.z0, {point.tau}, k, grid, model, nodes_per_curve).front();
}

}  // namespace phasescat
