// End-to-end checks of the toolkit. Prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "phasescat/forward.hpp"
#include "phasescat/indicators.hpp"
#include "phasescat/noise.hpp"
#include "phasescat/phase_retrieval.hpp"
#include "phasescat/schemes.hpp"

using namespace phasescat;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& name, const std::string& detail) {
  std::printf("%s criterion %2d  %-34s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void info(const std::string& detail) {
  std::printf("     info          %s\n", detail.c_str());
  std::fflush(stdout);
}

template <class... Args>
std::string format(const char* fmt, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

Scene single(const BoundaryCurve& curve, BoundaryCondition bc) {
  Scene s;
  s.scatterers.push_back({curve, bc});
  return s;
}

Scene kite_scene() { return single(BoundaryCurve::kite(Point::Zero()), BoundaryCondition::dirichlet); }

Scene mini_disks() {
  Scene s;
  s.scatterers.push_back({BoundaryCurve::circle(Point(3.0, 3.0), 0.05), BoundaryCondition::dirichlet});
  s.scatterers.push_back({BoundaryCurve::circle(Point(1.0, 1.0), 0.15), BoundaryCondition::neumann});
  return s;
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (std::log(x[i]) - mx) * (std::log(y[i]) - my);
    sxx += (std::log(x[i]) - mx) * (std::log(x[i]) - mx);
  }
  return sxy / sxx;
}

Point argmax(const GridField& g) {
  Eigen::Index iy = 0;
  Eigen::Index ix = 0;
  g.values.maxCoeff(&iy, &ix);
  return g.node(static_cast<int>(ix), static_cast<int>(iy));
}

struct Peak {
  Point at;
  double value;
};

// Interior nodes not exceeded by any of their eight neighbours, largest first.
std::vector<Peak> local_maxima(const GridField& g) {
  std::vector<Peak> peaks;
  for (int iy = 1; iy + 1 < g.ny(); ++iy) {
    for (int ix = 1; ix + 1 < g.nx(); ++ix) {
      const double v = g.values(iy, ix);
      bool is_peak = v > 0.0;
      for (int dy = -1; dy <= 1 && is_peak; ++dy) {
        for (int dx = -1; dx <= 1 && is_peak; ++dx) {
          if ((dx != 0 || dy != 0) && g.values(iy + dy, ix + dx) > v) is_peak = false;
        }
      }
      if (is_peak) peaks.push_back({g.node(ix, iy), v});
    }
  }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.value > b.value; });
  return peaks;
}

// The two largest local maxima sit within `radius` of distinct centres.
bool two_dominant_peaks(const GridField& g, const std::vector<Point>& centres, double radius, std::string& detail) {
  const std::vector<Peak> peaks = local_maxima(g);
  if (peaks.size() < 2) {
    detail = "fewer than two local maxima";
    return false;
  }
  auto nearest = [&](const Point& p, int& which) {
    double best = INFINITY;
    for (std::size_t c = 0; c < centres.size(); ++c) {
      const double d = (p - centres[c]).norm();
      if (d < best) {
        best = d;
        which = static_cast<int>(c);
      }
    }
    return best;
  };
  int c0 = -1;
  int c1 = -1;
  const double d0 = nearest(peaks[0].at, c0);
  const double d1 = nearest(peaks[1].at, c1);
  const double contrast = peaks.size() > 2 ? peaks[1].value / peaks[2].value : INFINITY;
  detail = format("peaks (%.2f,%.2f) d=%.3f, (%.2f,%.2f) d=%.3f, second/third=%.2f", peaks[0].at.x(), peaks[0].at.y(),
                  d0, peaks[1].at.x(), peaks[1].at.y(), d1, contrast);
  return d0 <= radius && d1 <= radius && c0 != c1;
}

void criterion_1() {
  const DirectionGrid grid(128);
  const Scene disk_soft = single(BoundaryCurve::circle(Point::Zero(), 2.0), BoundaryCondition::dirichlet);
  const Scene disk_hard = single(BoundaryCurve::circle(Point::Zero(), 2.0), BoundaryCondition::neumann);
  bool pass = true;
  std::string detail;
  for (const auto& [scene, bc, name] : {std::tuple{disk_soft, BoundaryCondition::dirichlet, "soft"},
                                        std::tuple{disk_hard, BoundaryCondition::neumann, "hard"}}) {
    const auto start = Clock::now();
    const FarFieldMatrix u = far_field_obstacle(scene, 8.0, grid, 256);
    const double elapsed = seconds_since(start);
    const FarFieldMatrix mie = mie_far_field_circle(2.0, Point::Zero(), bc, 8.0, grid);
    const double err = max_abs(u.values - mie.values) / max_abs(mie.values);
    pass = pass && err <= 1e-6 && elapsed <= 10.0;
    detail += format("%s rel.err %.2e in %.2f s; ", name, err, elapsed);
  }
  report(1, pass, "Mie oracle (radius 2, k=8)", detail + "tol 1e-6, 10 s");
}

void criterion_2(const FarFieldMatrix& u) {
  const DirectionGrid grid(u.size());
  double worst = 0.0;
  for (int j = 0; j < u.size(); ++j) {
    for (int l = 0; l < u.size(); ++l) {
      worst = std::max(worst, std::abs(u.values(j, l) - u.values(grid.opposite(l), grid.opposite(j))));
    }
  }
  const double rel = worst / max_abs(u.values);
  report(2, rel <= 1e-6, "reciprocity (kite, N=128)", format("max defect %.2e relative, tol 1e-6", rel));
}

void criterion_3(const FarFieldMatrix& u) {
  const DirectionGrid grid(u.size());
  const Eigen::Vector2d h(1.0, 1.0);
  const FarFieldMatrix shifted = far_field_obstacle(kite_scene().translated(h), 8.0, grid);
  double phased = 0.0;
  double moduli = 0.0;
  for (int j = 0; j < u.size(); ++j) {
    for (int l = 0; l < u.size(); ++l) {
      const Complex factor = std::polar(1.0, 8.0 * h.dot(grid.direction(l) - grid.direction(j)));
      phased = std::max(phased, std::abs(shifted.values(j, l) - factor * u.values(j, l)));
      moduli = std::max(moduli, std::abs(std::abs(shifted.values(j, l)) - std::abs(u.values(j, l))) /
                                    std::abs(u.values(j, l)));
    }
  }
  phased /= max_abs(u.values);
  report(3, phased <= 1e-6 && moduli <= 1e-6, "translation by (1,1)",
         format("phased %.2e relative, moduli %.2e entrywise relative, tol 1e-6", phased, moduli));
}

void criterion_4() {
  const auto start = Clock::now();
  const DirectionGrid grid(128);
  const Scene scene = kite_scene();
  const Eigen::Vector2d dir = Eigen::Vector2d(1.0, 1.0).normalized();
  std::vector<double> rho{10.0, 40.0, 160.0};
  std::vector<double> diff;
  for (double r : rho) {
    const PointScatterer p{r * dir, 1.0};
    const FarFieldMatrix coupled = far_field_combined(scene, p, 8.0, grid, CombinedModel::coupled);
    const FarFieldMatrix additive = far_field_combined(scene, p, 8.0, grid, CombinedModel::additive);
    diff.push_back(max_abs(coupled.values - additive.values));
  }
  const double elapsed = seconds_since(start);
  const double slope = loglog_slope(rho, diff);
  report(4, slope >= -0.65 && slope <= -0.35 && elapsed <= 60.0, "coupling decay in rho",
         format("sup diff %.4g, %.4g, %.4g; slope %.3f in %.1f s, want [-0.65,-0.35], 60 s", diff[0], diff[1],
                diff[2], slope, elapsed));
  const PointScatterer far{640.0 * dir, 1.0};
  const double d640 = max_abs(far_field_combined(scene, far, 8.0, grid, CombinedModel::coupled).values -
                              far_field_combined(scene, far, 8.0, grid, CombinedModel::additive).values);
  info(format("rho=640: sup diff %.4g; slope 160->640 %.3f", d640, std::log(d640 / diff[2]) / std::log(4.0)));
}

void criterion_5(const FarFieldMatrix& u) {
  const DirectionGrid grid(u.size());
  const RetrievalTriple triple;
  const std::vector<FarFieldMatrix> fields =
      far_field_combined(kite_scene(), triple.z0, {triple.tau.begin(), triple.tau.end()}, 8.0, grid,
                         CombinedModel::additive);
  const FarFieldMatrix r = retrieve_far_field(PhaselessMatrix::from(fields[0]), PhaselessMatrix::from(fields[1]),
                                              PhaselessMatrix::from(fields[2]), triple);
  const double err = max_abs(r.values - u.values);
  report(5, err <= 1e-10, "retrieval exactness (N=128)", format("max abs error %.2e, tol 1e-10", err));
}

void criterion_6(const FarFieldMatrix& u) {
  const DirectionGrid grid(u.size());
  const RetrievalTriple triple;
  const std::vector<FarFieldMatrix> fields =
      far_field_combined(kite_scene(), triple.z0, {triple.tau.begin(), triple.tau.end()}, 8.0, grid,
                         CombinedModel::additive);
  double tau_max = 0.0;
  for (Complex t : triple.tau) tau_max = std::max(tau_max, std::abs(t));
  std::vector<double> eps;
  std::vector<double> err;
  bool bounded = true;
  for (double level : {1e-3, 1e-2, 5e-2}) {
    const double e = level * tau_max;
    const NoiseSpec spec{NoiseModel::absolute, e, 2024};
    const PhaselessMatrix p0 = add_noise(PhaselessMatrix::from(fields[0]), spec, 0);
    const PhaselessMatrix p1 = add_noise(PhaselessMatrix::from(fields[1]), spec, 1);
    const PhaselessMatrix p2 = add_noise(PhaselessMatrix::from(fields[2]), spec, 2);
    const double worst = max_abs(retrieve_far_field(p0, p1, p2, triple).values - u.values);
    eps.push_back(e);
    err.push_back(worst);
    bounded = bounded && worst <= 10.0 * e;
  }
  const double slope = loglog_slope(eps, err);
  report(6, bounded && std::abs(slope - 1.0) <= 0.2, "retrieval Lipschitz stability",
         format("error/eps %.1f, %.1f, %.1f (want <= 10); slope %.3f (want 1 +- 0.2)", err[0] / eps[0],
                err[1] / eps[1], err[2] / eps[2], slope));
  info(format("max|u_D| / max|tau| = %.1f", max_abs(u.values) / tau_max));
}

double symmetry_defect(const GridField& g) {
  double worst = 0.0;
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ix = 0; ix < g.nx(); ++ix) {
      worst = std::max(worst, std::abs(g.values(iy, ix) - g.values(g.ny() - 1 - iy, g.nx() - 1 - ix)));
    }
  }
  return worst / g.values.maxCoeff();
}

void criterion_7() {
  ScenarioConfig c;
  c.scene = kite_scene();
  c.z0 = Point(4.0, 4.0);
  c.grid = {-2.0, 10.0, -2.0, 10.0, 0.05};
  const double iz0 = symmetry_defect(run_scheme_one(c));
  c.theta = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  const double itheta = symmetry_defect(run_scheme_one(c));
  report(7, iz0 <= 1e-12 && itheta <= 1e-12, "indicator symmetry about z0",
         format("I_z0 %.2e, I_theta %.2e relative to max, tol 1e-12", iz0, itheta));
}

void criterion_8() {
  const auto start = Clock::now();
  ScenarioConfig c;
  c.scene = kite_scene();
  c.noise = {NoiseModel::relative, 0.1, 1};
  const GridField g = run_scheme_one(c);
  const double elapsed = seconds_since(start);
  const Point best = argmax(g);
  const double dist = c.scene.distance_to_boundary(best);
  double far_sum = 0.0;
  int far_count = 0;
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ix = 0; ix < g.nx(); ++ix) {
      if (c.scene.distance_to_boundary(g.node(ix, iy)) > 2.0) {
        far_sum += g.values(iy, ix);
        ++far_count;
      }
    }
  }
  const double ratio = far_sum / far_count / g.values.maxCoeff();
  report(8, dist <= 0.3 && ratio <= 0.2 && elapsed <= 120.0, "scheme one localization (kite)",
         format("max at (%.2f,%.2f), %.3f from boundary; far mean/max %.3f; %.1f s", best.x(), best.y(), dist, ratio,
                elapsed));
}

void criterion_9(const FarFieldMatrix& u) {
  ScenarioConfig c;
  c.scene = kite_scene();
  const GridField truth = indicator_i2(u, c.grid);
  const GridField clean = run_scheme_two(c);
  const double rel = (clean.values - truth.values).cwiseAbs().maxCoeff() / truth.values.maxCoeff();
  c.noise = {NoiseModel::relative, 0.1, 1};
  const GridField noisy = run_scheme_two(c);
  const Point best = argmax(noisy);
  const double dist = c.scene.distance_to_boundary(best);
  report(9, rel <= 0.05 && dist <= 0.3, "scheme two end to end (kite)",
         format("clean I2 rel.dev %.3f (tol 0.05); noisy max at (%.2f,%.2f), %.3f from boundary", rel, best.x(),
                best.y(), dist));
  c.noise = {};
  c.model = CombinedModel::additive;
  const double additive = (run_scheme_two(c).values - truth.values).cwiseAbs().maxCoeff() / truth.values.maxCoeff();
  const FarFieldMatrix coupled = far_field_combined(c.scene, {c.z0, 1.0}, c.k, DirectionGrid(c.n), CombinedModel::coupled);
  const FarFieldMatrix sum = far_field_combined(c.scene, {c.z0, 1.0}, c.k, DirectionGrid(c.n), CombinedModel::additive);
  info(format("additive data: I2 rel.dev %.1e; coupled minus additive sup %.3f with |tau| = 1", additive,
              max_abs(coupled.values - sum.values)));
}

void criterion_10() {
  const std::vector<Point> centres{Point(3.0, 3.0), Point(1.0, 1.0)};
  ScenarioConfig c;
  c.scene = mini_disks();
  c.noise = {NoiseModel::relative, 0.1, 1};
  c.theta = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  std::string theta_detail;
  const bool theta_ok = two_dominant_peaks(run_scheme_one(c), centres, 0.2, theta_detail);
  c.theta.clear();
  c.incidence = Eigen::Vector2d(1.0, 0.0);
  std::string i3_detail;
  const bool i3_ok = two_dominant_peaks(run_scheme_two(c), centres, 0.2, i3_detail);
  report(10, theta_ok && i3_ok, "small scatterers (I_theta, I3)", "I_theta: " + theta_detail);
  info("I3:      " + i3_detail);
}

void criterion_11() {
  const int n = 1000;
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> dist(0.0, 60.0);
  PhaselessMatrix m{RealMatrix(n, n), {8.0, FieldModel::coupled, std::nullopt, std::nullopt}};
  for (Eigen::Index i = 0; i < m.values.size(); ++i) m.values.data()[i] = dist(rng);
  m.values(0, 0) = 0.0;
  const double delta = 0.3;
  const PhaselessMatrix rel = add_noise(m, {NoiseModel::relative, delta, 77});
  bool within = true;
  for (Eigen::Index i = 0; i < m.values.size(); ++i) {
    const double in = m.values.data()[i];
    const double out = rel.values.data()[i];
    within = within && out >= (1.0 - delta) * in && out <= (1.0 + delta) * in;
  }
  const PhaselessMatrix small{m.values / 100.0, m.meta};
  const PhaselessMatrix abs = add_noise(small, {NoiseModel::absolute, delta, 77});
  const bool nonnegative = abs.values.minCoeff() >= 0.0;
  const int clamped = static_cast<int>((abs.values.array() == 0.0).count());
  const PhaselessMatrix rel_again = add_noise(m, {NoiseModel::relative, delta, 77});
  const PhaselessMatrix abs_again = add_noise(small, {NoiseModel::absolute, delta, 77});
  const bool same = std::memcmp(rel.values.data(), rel_again.values.data(), sizeof(double) * rel.values.size()) == 0 &&
                    std::memcmp(abs.values.data(), abs_again.values.data(), sizeof(double) * abs.values.size()) == 0;
  report(11, within && nonnegative && same, "noise model (delta 0.3, 1e6)",
         format("relative band %s, absolute >= 0 %s (%d clamped), reproducible %s", within ? "ok" : "violated",
                nonnegative ? "ok" : "violated", clamped, same ? "yes" : "no"));
}

}  // namespace

int main() {
  const auto start = Clock::now();
  criterion_1();
  const FarFieldMatrix kite = far_field_obstacle(kite_scene(), 8.0, DirectionGrid(128));
  criterion_2(kite);
  criterion_3(kite);
  criterion_4();
  criterion_5(kite);
  criterion_6(kite);
  criterion_7();
  criterion_8();
  criterion_9(kite);
  criterion_10();
  criterion_11();
  std::printf("%d of 11 criteria failed; total %.1f s\n", failures, seconds_since(start));
  return failures == 0 ? 0 : 1;
}
