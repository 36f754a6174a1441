#include <cmath>
#include <stdexcept>

#include "phasescat/forward.hpp"
#include "phasescat/specfun.hpp"

namespace phasescat {

// u(x, theta) = 4i sum_n a_n e^{i n (phi_x - phi_theta)} with a_n = J_n(ka)/H_n(ka)
// (Dirichlet) or J_n'(ka)/H_n'(ka) (Neumann), a_{-n} = a_n. The factor 4i converts the
// Hankel asymptotics to the far-field normalization in which Phi(., y) has pattern e^{-ik x.y}.
FarFieldMatrix mie_far_field_circle(double radius, const Point& center, BoundaryCondition condition, double k,
                                    const DirectionGrid& grid) {
  if (!(radius > 0.0) || !(k > 0.0)) throw std::invalid_argument("mie_far_field_circle: radius and k must be positive");
  const double ka = k * radius;
  const int order = static_cast<int>(std::ceil(ka)) + 40;
  std::vector<Complex> coef(static_cast<std::size_t>(order) + 1);
  for (int n = 0; n <= order; ++n) {
    if (condition == BoundaryCondition::dirichlet) {
      coef[static_cast<std::size_t>(n)] = specfun::bessel_j(n, ka) / specfun::hankel1(n, ka);
    } else {
      coef[static_cast<std::size_t>(n)] = specfun::bessel_j_prime(n, ka) / specfun::hankel1_prime(n, ka);
    }
  }
  const int size = grid.size();
  // The centered pattern depends only on the index difference j - l.
  std::vector<Complex> pattern(static_cast<std::size_t>(size));
  for (int d = 0; d < size; ++d) {
    const double angle = grid.angle(d);
    Complex sum = coef[0];
    for (int n = 1; n <= order; ++n) sum += 2.0 * coef[static_cast<std::size_t>(n)] * std::cos(n * angle);
    pattern[static_cast<std::size_t>(d)] = Complex(0.0, 4.0) * sum;
  }
  FarFieldMatrix out{ComplexMatrix(size, size), {k, FieldModel::obstacle, std::nullopt, std::nullopt}};
  for (int l = 0; l < size; ++l) {
    const Eigen::Vector2d theta = grid.direction(l);
    for (int j = 0; j < size; ++j) {
      const Complex shift = std::polar(1.0, k * center.dot(theta - grid.direction(j)));
      out.values(j, l) = shift * pattern[static_cast<std::size_t>(((j - l) % size + size) % size)];
    }
  }
  return out;
}

}  // namespace phasescat
