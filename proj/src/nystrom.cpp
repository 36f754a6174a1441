#include "phasescat/nystrom.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "phasescat/specfun.hpp"

namespace phasescat {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = 0.57721566490153286061;
constexpr Complex kI{0.0, 1.0};

// Kernel split K(t,tau) = K1 ln(4 sin^2((t-tau)/2)) + K2.
struct Split {
  Complex full;      // K off the diagonal, the smooth part K2 on it
  Complex log_coef;  // K1
};

// Weights R_k of the product rule for the logarithmic factor, k = |i - j|, M = 2n nodes.
std::vector<double> log_weights(int m) {
  const int n = m / 2;
  std::vector<double> r(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    const double t = k * kPi / n;
    double s = 0.0;
    for (int p = 1; p < n; ++p) s += std::cos(p * t) / p;
    r[static_cast<std::size_t>(k)] = -(2.0 * kPi / n) * s - (kPi / (static_cast<double>(n) * n)) * std::cos(n * t);
  }
  return r;
}

template <class Kernel>
Eigen::MatrixXcd kress_matrix(int m, Kernel&& kernel) {
  const auto r = log_weights(m);
  const double h = kPi / (m / 2);
  std::vector<double> log_factor(static_cast<std::size_t>(m), 0.0);
  for (int k = 1; k < m; ++k) {
    const double s = std::sin(0.5 * k * h);
    log_factor[static_cast<std::size_t>(k)] = std::log(4.0 * s * s);
  }
  Eigen::MatrixXcd a(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const Split s = kernel(i, j);
      const std::size_t off = static_cast<std::size_t>(std::abs(i - j));
      const Complex smooth = i == j ? s.full : s.full - s.log_coef * log_factor[off];
      a(i, j) = r[off] * s.log_coef + h * smooth;
    }
  }
  return a;
}

// Fourier differentiation on M equispaced periodic nodes (M even).
Eigen::MatrixXd spectral_derivative(int m) {
  const double h = 2.0 * kPi / m;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      if (i == j) continue;
      const int k = i - j;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      d(i, j) = 0.5 * sign / std::tan(0.5 * k * h);
    }
  }
  return d;
}

// Trigonometric interpolation from M to `fine` equispaced periodic nodes (fine x M),
// with the Nyquist mode carried as a cosine.
Eigen::MatrixXd interpolation_matrix(int m, int fine) {
  const int half = m / 2;
  Eigen::MatrixXd p(fine, m);
  for (int q = 0; q < fine; ++q) {
    const double tq = 2.0 * kPi * q / fine;
    for (int j = 0; j < m; ++j) {
      const double tj = 2.0 * kPi * j / m;
      // 1 + 2 sum_{f<half} cos(f theta) in closed form (Dirichlet kernel)
      const double theta = tq - tj;
      const double denom = std::sin(0.5 * theta);
      double s = std::abs(denom) < 1e-14 ? 2.0 * half - 1.0 : std::sin((half - 0.5) * theta) / denom;
      s += std::cos(half * tq) * std::cos(half * tj);
      p(q, j) = s / m;
    }
  }
  return p;
}

}  // namespace

CurveNodes CurveNodes::sample(const BoundaryCurve& curve, int m) {
  CurveNodes out;
  for (double t : quadrature_nodes(m)) {
    const auto d = curve.derivatives(t);
    out.x.push_back(curve.point(t));
    out.dx.push_back(d.first);
    out.ddx.push_back(d.second);
    out.n.emplace_back(d.first.y(), -d.first.x());
    out.speed.push_back(d.first.norm());
  }
  return out;
}

BoundarySolver::BoundarySolver(Scene scene, double k, int nodes_per_curve, double eta)
    : scene_(std::move(scene)), k_(k), eta_(eta > 0.0 ? eta : k), m_(nodes_per_curve) {
  if (!(k_ > 0.0)) throw std::invalid_argument("BoundarySolver: wavenumber must be positive");
  if (m_ < 16 || m_ % 2 != 0) {
    throw std::invalid_argument("BoundarySolver: nodes per curve must be even and at least 16");
  }
  if (scene_.empty()) throw std::invalid_argument("BoundarySolver: scene has no scatterers");
  for (const auto& s : scene_.scatterers) nodes_.push_back(CurveNodes::sample(s.curve, m_));
  assemble();
}

Eigen::MatrixXcd BoundarySolver::self_block(std::size_t curve) const {
  const CurveNodes& c = nodes_[curve];
  const double k = k_;
  const double eta = eta_;
  const int m = m_;

  auto diag_phi = [&](int i) {
    return kI / 4.0 - kEulerGamma / (2.0 * kPi) - std::log(0.5 * k * c.speed[static_cast<std::size_t>(i)]) / (2.0 * kPi);
  };
  auto curvature_term = [&](int i) {
    const std::size_t u = static_cast<std::size_t>(i);
    return c.n[u].dot(c.ddx[u]) / (2.0 * kPi * c.speed[u] * c.speed[u]);
  };

  if (scene_.scatterers[curve].condition == BoundaryCondition::dirichlet) {
    // I + 2K - 2 i eta S
    Eigen::MatrixXcd a = kress_matrix(m, [&](int i, int j) -> Split {
      const std::size_t u = static_cast<std::size_t>(i), v = static_cast<std::size_t>(j);
      if (i == j) {
        const Complex m2 = 2.0 * diag_phi(i) * c.speed[u];
        const Complex m1 = -c.speed[u] / (2.0 * kPi);
        return {curvature_term(i) - kI * eta * m2, -kI * eta * m1};
      }
      const Eigen::Vector2d d = c.x[u] - c.x[v];
      const double r = d.norm();
      const auto h = specfun::hankel1_01(k * r);
      const double nd = c.n[v].dot(d) / r;
      const Complex l = kI * k / 2.0 * h.h1 * nd;
      const double l1 = -k / (2.0 * kPi) * h.h1.real() * nd;
      const Complex mk = kI / 2.0 * h.h0 * c.speed[v];
      const double m1 = -h.h0.real() * c.speed[v] / (2.0 * kPi);
      return {l - kI * eta * mk, l1 - kI * eta * m1};
    });
    a += Eigen::MatrixXcd::Identity(m, m);
    return a;
  }

  // Neumann: 2T - 2 i eta K' + i eta I with T = d/ds S d/ds + k^2 nu.S(nu .)
  const Eigen::MatrixXcd s_plain = kress_matrix(m, [&](int i, int j) -> Split {
    if (i == j) return {diag_phi(i), -1.0 / (4.0 * kPi)};
    const std::size_t u = static_cast<std::size_t>(i), v = static_cast<std::size_t>(j);
    const auto h = specfun::hankel1_01(k * (c.x[u] - c.x[v]).norm());
    return {kI / 4.0 * h.h0, -h.h0.real() / (4.0 * kPi)};
  });
  const Eigen::MatrixXcd s_normal = kress_matrix(m, [&](int i, int j) -> Split {
    const std::size_t u = static_cast<std::size_t>(i), v = static_cast<std::size_t>(j);
    const double w = c.n[u].dot(c.n[v]) / c.speed[u];
    if (i == j) return {diag_phi(i) * w, -w / (4.0 * kPi)};
    const auto h = specfun::hankel1_01(k * (c.x[u] - c.x[v]).norm());
    return {kI / 4.0 * h.h0 * w, -h.h0.real() * w / (4.0 * kPi)};
  });
  const Eigen::MatrixXcd k_adjoint = kress_matrix(m, [&](int i, int j) -> Split {
    if (i == j) return {curvature_term(i), 0.0};
    const std::size_t u = static_cast<std::size_t>(i), v = static_cast<std::size_t>(j);
    const Eigen::Vector2d d = c.x[u] - c.x[v];
    const double r = d.norm();
    const auto h = specfun::hankel1_01(k * r);
    const double nd = c.n[u].dot(d) / r * c.speed[v] / c.speed[u];
    return {-kI * k / 2.0 * h.h1 * nd, k / (2.0 * kPi) * h.h1.real() * nd};
  });

  const Eigen::MatrixXd diff = spectral_derivative(m);
  Eigen::MatrixXcd a = diff.cast<Complex>() * s_plain * diff.cast<Complex>();
  for (int i = 0; i < m; ++i) a.row(i) *= 2.0 / c.speed[static_cast<std::size_t>(i)];
  a += 2.0 * k * k * s_normal;
  a -= kI * eta * k_adjoint;
  a.diagonal().array() += kI * eta;
  return a;
}

Eigen::MatrixXcd BoundarySolver::cross_block(std::size_t row_curve, std::size_t col_curve) const {
  const CurveNodes& a = nodes_[row_curve];
  const CurveNodes& b = nodes_[col_curve];
  const double h = 2.0 * kPi / m_;
  const bool neumann = scene_.scatterers[row_curve].condition == BoundaryCondition::neumann;
  Eigen::MatrixXcd block(m_, m_);
  for (int i = 0; i < m_; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    for (int j = 0; j < m_; ++j) {
      const std::size_t v = static_cast<std::size_t>(j);
      const Eigen::Vector2d d = a.x[u] - b.x[v];
      const double r = d.norm();
      const auto hk = specfun::hankel1_01(k_ * r);
      if (!neumann) {
        const Complex dl = kI * k_ / 4.0 * hk.h1 * b.n[v].dot(d) / r;
        const Complex sl = kI / 4.0 * hk.h0 * b.speed[v];
        block(i, j) = 2.0 * h * (dl - kI * eta_ * sl);
      } else {
        const Eigen::Vector2d nx = a.n[u] / a.speed[u];
        const Eigen::Vector2d ny = b.n[v] / b.speed[v];
        const double dx = d.dot(nx);
        const double dy = d.dot(ny);
        const Complex hyper =
            kI * k_ / 4.0 * ((k_ * r * hk.h0 - 2.0 * hk.h1) * dx * dy / (r * r * r) + hk.h1 * nx.dot(ny) / r);
        const Complex adj = -kI * k_ / 4.0 * hk.h1 * dx / r;
        block(i, j) = 2.0 * h * b.speed[v] * (hyper - kI * eta_ * adj);
      }
    }
  }
  return block;
}

void BoundarySolver::assemble() {
  const Eigen::Index curves = static_cast<Eigen::Index>(nodes_.size());
  system_.resize(curves * m_, curves * m_);
  for (Eigen::Index a = 0; a < curves; ++a) {
    for (Eigen::Index b = 0; b < curves; ++b) {
      system_.block(a * m_, b * m_, m_, m_) =
          a == b ? self_block(static_cast<std::size_t>(a))
                 : cross_block(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
    }
  }
  lu_.compute(system_);
  const double rcond = lu_.rcond();
  condition_ = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  if (!(rcond > 1e-14)) {
    std::ostringstream msg;
    msg << "combined-field system is numerically singular (condition estimate " << condition_ << ")";
    throw SolveError(msg.str(), condition_);
  }
}

Eigen::VectorXcd BoundarySolver::right_hand_side(const Incident& incident) const {
  Eigen::VectorXcd g(unknowns());
  for (std::size_t c = 0; c < nodes_.size(); ++c) {
    const CurveNodes& cn = nodes_[c];
    const bool neumann = scene_.scatterers[c].condition == BoundaryCondition::neumann;
    for (int i = 0; i < m_; ++i) {
      const std::size_t u = static_cast<std::size_t>(i);
      const Eigen::Vector2d nu = cn.n[u] / cn.speed[u];
      Complex value;
      Complex normal;
      if (const auto* pw = std::get_if<PlaneWave>(&incident)) {
        value = std::polar(1.0, k_ * cn.x[u].dot(pw->direction));
        normal = kI * k_ * pw->direction.dot(nu) * value;
      } else {
        const Point& y = std::get<PointSource>(incident).source;
        const Eigen::Vector2d d = cn.x[u] - y;
        const double r = d.norm();
        if (!(r > 0.0)) throw std::invalid_argument("point source lies on a boundary node");
        const auto h = specfun::hankel1_01(k_ * r);
        value = kI / 4.0 * h.h0;
        normal = -kI * k_ / 4.0 * h.h1 * d.dot(nu) / r;
      }
      g(static_cast<Eigen::Index>(c) * m_ + i) = -2.0 * (neumann ? normal : value);
    }
  }
  return g;
}

Eigen::MatrixXcd BoundarySolver::plane_wave_right_hand_sides(const DirectionGrid& grid) const {
  Eigen::MatrixXcd g(unknowns(), grid.size());
  for (int l = 0; l < grid.size(); ++l) g.col(l) = right_hand_side(PlaneWave{grid.direction(l)});
  return g;
}

Eigen::MatrixXcd BoundarySolver::solve(const Eigen::MatrixXcd& rhs) const { return lu_.solve(rhs); }

double BoundarySolver::residual(const Eigen::VectorXcd& density, const Eigen::VectorXcd& rhs) const {
  const double scale = rhs.norm();
  const double res = (system_ * density - rhs).norm();
  return scale > 0.0 ? res / scale : res;
}

Eigen::MatrixXcd BoundarySolver::far_field(const Eigen::MatrixXcd& densities,
                                           const DirectionGrid& observation) const {
  const double h = 2.0 * kPi / m_;
  Eigen::MatrixXcd e(observation.size(), unknowns());
  for (int q = 0; q < observation.size(); ++q) {
    const Eigen::Vector2d xhat = observation.direction(q);
    for (std::size_t c = 0; c < nodes_.size(); ++c) {
      const CurveNodes& cn = nodes_[c];
      for (int j = 0; j < m_; ++j) {
        const std::size_t v = static_cast<std::size_t>(j);
        const Complex weight = -kI * (k_ * xhat.dot(cn.n[v]) + eta_ * cn.speed[v]);
        e(q, static_cast<Eigen::Index>(c) * m_ + j) = h * weight * std::polar(1.0, -k_ * xhat.dot(cn.x[v]));
      }
    }
  }
  return e * densities;
}

Eigen::RowVectorXcd BoundarySolver::evaluation_weights(const Point& x, int refine) const {
  if (refine < 1) throw std::invalid_argument("evaluate: refinement factor must be positive");
  if (scene_.contains(x)) throw std::invalid_argument("evaluate: point lies inside an obstacle");
  if (scene_.distance_to_boundary(x) < evaluation_margin(refine)) {
    throw std::invalid_argument("evaluate: point too close to a boundary for the quadrature");
  }
  const int fine = refine * m_;
  const double h = 2.0 * kPi / fine;
  Eigen::RowVectorXcd w(unknowns());
  for (std::size_t c = 0; c < nodes_.size(); ++c) {
    const CurveNodes cn = refine == 1 ? nodes_[c] : CurveNodes::sample(scene_.scatterers[c].curve, fine);
    Eigen::RowVectorXcd fine_weights(fine);
    for (int j = 0; j < fine; ++j) {
      const std::size_t v = static_cast<std::size_t>(j);
      const Eigen::Vector2d d = x - cn.x[v];
      const double r = d.norm();
      const auto hk = specfun::hankel1_01(k_ * r);
      const Complex dl = kI * k_ / 4.0 * hk.h1 * cn.n[v].dot(d) / r;
      const Complex sl = kI / 4.0 * hk.h0 * cn.speed[v];
      fine_weights(j) = h * (dl - kI * eta_ * sl);
    }
    w.segment(static_cast<Eigen::Index>(c) * m_, m_) =
        refine == 1 ? fine_weights : Eigen::RowVectorXcd(fine_weights * interpolation_matrix(m_, fine));
  }
  return w;
}

double BoundarySolver::evaluation_margin(int refine) const {
  double diameter = 0.0;
  for (const auto& s : scene_.scatterers) diameter = std::max(diameter, s.curve.diameter());
  return 2.0 * kPi * diameter / (static_cast<double>(refine) * m_);
}

Complex BoundarySolver::evaluate(const Eigen::VectorXcd& density, const Point& x, int refine) const {
  return evaluation_weights(x, refine) * density;
}

}  // namespace phasescat
