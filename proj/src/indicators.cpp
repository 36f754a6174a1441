#include "phasescat/indicators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace phasescat {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int axis_nodes(double lo, double hi, double spacing) {
  return static_cast<int>(std::floor((hi - lo) / spacing + 1e-9)) + 1;
}

// Rows e^{i sign k d_m . (z - origin)} for the nodes of grid row iy; d_m are the grid directions.
Eigen::MatrixXcd phase_rows(const GridSpec& spec, int iy, const Point& origin, double k, const DirectionGrid& dirs,
                            double sign) {
  const int nx = spec.nx();
  Eigen::MatrixXcd p(nx, dirs.size());
  for (int ix = 0; ix < nx; ++ix) {
    const Eigen::Vector2d w = spec.node(ix, iy) - origin;
    for (int m = 0; m < dirs.size(); ++m) p(ix, m) = std::polar(1.0, sign * k * dirs.direction(m).dot(w));
  }
  return p;
}

GridField make_field(const GridSpec& spec, std::string provenance) {
  spec.validate();
  return {spec, RealMatrix::Zero(spec.ny(), spec.nx()), std::move(provenance)};
}

// |(2 pi/N)^2 p^T M q| per node (or its real part when `real_part` is set).
template <class Matrix>
GridField bilinear_sweep(const Matrix& data, double k, const Point& origin, const GridSpec& spec, bool real_part,
                         std::string provenance) {
  GridField out = make_field(spec, std::move(provenance));
  const DirectionGrid dirs(static_cast<int>(data.rows()));
  const double weight = std::pow(kTwoPi / dirs.size(), 2);
  const Eigen::MatrixXcd m = data.template cast<Complex>();
  for (int iy = 0; iy < spec.ny(); ++iy) {
    const Eigen::MatrixXcd p = phase_rows(spec, iy, origin, k, dirs, 1.0);
    const Eigen::MatrixXcd q = phase_rows(spec, iy, origin, k, dirs, -1.0);
    const Eigen::MatrixXcd pm = p * m;
    for (int ix = 0; ix < spec.nx(); ++ix) {
      const Complex v = weight * pm.row(ix).cwiseProduct(q.row(ix)).sum();
      out.values(iy, ix) = real_part ? std::abs(v.real()) : std::abs(v);
    }
  }
  return out;
}

std::string describe(const char* kind, double k, const Point* z0, const Complex* tau) {
  std::ostringstream s;
  s.precision(17);
  s << kind << " k=" << k;
  if (z0) s << " z0=" << z0->x() << "," << z0->y();
  if (tau) s << " tau=" << tau->real() << "," << tau->imag();
  return s.str();
}

}  // namespace

int GridSpec::nx() const { return axis_nodes(x_min, x_max, spacing); }
int GridSpec::ny() const { return axis_nodes(y_min, y_max, spacing); }

void GridSpec::validate() const {
  if (!(spacing > 0.0)) throw std::invalid_argument("grid: spacing must be positive");
  if (!(x_max >= x_min) || !(y_max >= y_min)) throw std::invalid_argument("grid: empty range");
}

ThetaSet ThetaSet::from_directions(const std::vector<Eigen::Vector2d>& directions, const DirectionGrid& grid) {
  if (directions.empty()) throw std::invalid_argument("theta set must not be empty");
  ThetaSet out;
  for (const auto& d : directions) {
    const auto index = grid.index_of(d.normalized(), 1e-9);
    if (!index) {
      std::ostringstream msg;
      msg << "direction (" << d.x() << "," << d.y() << ") is not on the " << grid.size() << "-point grid";
      throw std::invalid_argument(msg.str());
    }
    out.indices.push_back(*index);
  }
  return out;
}

FMatrix f_matrix(const PhaselessMatrix& combined, const PhaselessMatrix& bare, Complex tau) {
  if (combined.values.rows() != bare.values.rows() || combined.values.cols() != bare.values.cols()) {
    throw std::invalid_argument("f_matrix: size mismatch");
  }
  if (combined.meta.k != bare.meta.k) throw std::invalid_argument("f_matrix: wavenumber mismatch");
  if (!combined.meta.z0) throw std::invalid_argument("f_matrix: combined data carries no z0");
  if (bare.meta.z0 && (*bare.meta.z0 - *combined.meta.z0).norm() > 1e-12 * (1.0 + combined.meta.z0->norm())) {
    throw std::invalid_argument("f_matrix: z0 mismatch");
  }
  FMatrix f;
  f.values = combined.values.array().square() - bare.values.array().square() - std::norm(tau);
  f.tau = tau;
  f.z0 = *combined.meta.z0;
  f.k = combined.meta.k;
  return f;
}

GridField indicator_iz0(const FMatrix& f, const GridSpec& grid) {
  return bilinear_sweep(f.values, f.k, f.z0, grid, true, describe("iz0", f.k, &f.z0, &f.tau));
}

GridField indicator_itheta(const FMatrix& f, const ThetaSet& theta, const GridSpec& grid) {
  const int n = static_cast<int>(f.values.rows());
  Eigen::VectorXd summed = Eigen::VectorXd::Zero(n);
  for (int l : theta.indices) {
    if (l < 0 || l >= n) throw std::invalid_argument("indicator_itheta: incidence index outside the grid");
    summed += f.values.col(l);
  }
  GridField out = make_field(grid, describe("itheta", f.k, &f.z0, &f.tau));
  const DirectionGrid dirs(n);
  const double weight = kTwoPi / n;
  for (int iy = 0; iy < grid.ny(); ++iy) {
    for (int ix = 0; ix < grid.nx(); ++ix) {
      const Eigen::Vector2d w = grid.node(ix, iy) - f.z0;
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += summed(j) * std::cos(f.k * dirs.direction(j).dot(w));
      out.values(iy, ix) = std::abs(weight * s);
    }
  }
  return out;
}

Complex auxiliary_g(const FarFieldMatrix& u, const Point& z, int incidence) {
  const int n = u.size();
  if (incidence < 0 || incidence >= n) throw std::invalid_argument("auxiliary_g: incidence index outside the grid");
  const DirectionGrid dirs(n);
  Complex s = 0.0;
  for (int j = 0; j < n; ++j) s += u.values(j, incidence) * std::polar(1.0, u.meta.k * dirs.direction(j).dot(z));
  return (kTwoPi / n) * s;
}

Complex auxiliary_a(const FarFieldMatrix& u, const Point& z) {
  const int n = u.size();
  const DirectionGrid dirs(n);
  Eigen::RowVectorXcd p(n);
  Eigen::VectorXcd q(n);
  for (int m = 0; m < n; ++m) {
    const double phase = u.meta.k * dirs.direction(m).dot(z);
    p(m) = std::polar(1.0, phase);
    q(m) = std::polar(1.0, -phase);
  }
  return std::pow(kTwoPi / n, 2) * (p * u.values * q)(0);
}

GridField indicator_i3(const FarFieldMatrix& u, int incidence, const GridSpec& grid) {
  const int n = u.size();
  if (incidence < 0 || incidence >= n) throw std::invalid_argument("indicator_i3: incidence index outside the grid");
  std::ostringstream tag;
  tag << "i3 k=" << u.meta.k << " incidence=" << incidence;
  GridField out = make_field(grid, tag.str());
  const DirectionGrid dirs(n);
  const Eigen::VectorXcd column = u.values.col(incidence);
  for (int iy = 0; iy < grid.ny(); ++iy) {
    const Eigen::VectorXcd g = phase_rows(grid, iy, Point::Zero(), u.meta.k, dirs, 1.0) * column;
    for (int ix = 0; ix < grid.nx(); ++ix) out.values(iy, ix) = std::abs((kTwoPi / n) * g(ix));
  }
  return out;
}

GridField indicator_i2(const FarFieldMatrix& u, const GridSpec& grid) {
  return bilinear_sweep(u.values, u.meta.k, Point::Zero(), grid, false, describe("i2", u.meta.k, nullptr, nullptr));
}

}  // namespace phasescat
