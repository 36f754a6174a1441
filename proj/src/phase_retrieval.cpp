#include "phasescat/phase_retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "phasescat/farfield.hpp"

namespace phasescat {

namespace {

void check_anchors(const std::array<Complex, 3>& z) {
  double spread = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      const double d = std::abs(z[a] - z[b]);
      if (!(d > 0.0)) throw std::invalid_argument("trilaterate: anchors must be pairwise distinct");
      spread = std::max(spread, d * d);
    }
  }
  const double area = std::imag((z[1] - z[0]) * std::conj(z[2] - z[0]));
  if (!(std::abs(area) > 1e-9 * spread)) throw std::invalid_argument("trilaterate: anchors are collinear");
}

void check_distances(const std::array<double, 3>& r) {
  for (double v : r) {
    if (!std::isfinite(v) || v < 0.0) throw std::invalid_argument("trilaterate: distances must be nonnegative");
  }
}

// Kahan's form of Heron's formula; zero when the sides violate the triangle inequality.
double triangle_area(double a, double b, double c) {
  if (a < b) std::swap(a, b);
  if (b < c) std::swap(b, c);
  if (a < b) std::swap(a, b);
  const double p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
  return p > 0.0 ? 0.25 * std::sqrt(p) : 0.0;
}

// Steps (2)-(4) with anchor 2 as pivot, anchor 1 as reference ray and anchor 3 as selector.
TrilaterationWork intersect(const std::array<Complex, 3>& z, const std::array<double, 3>& r, double& sin_alpha) {
  TrilaterationWork w{z, r, 0.0, 0.0, 0.0, 0.0, 0.0};
  const Complex ray = z[0] - z[1];
  const double d12 = std::abs(ray);
  w.m = z[1] + (r[1] / d12) * ray;
  // Angle at anchor 2 between the rays towards anchor 1 and towards the solution. The sine
  // comes from the triangle area so that nearly flat triangles keep full precision.
  const double cos_alpha =
      std::clamp((d12 * d12 + (r[1] - r[0]) * (r[1] + r[0])) / (2.0 * d12 * r[1]), -1.0, 1.0);
  sin_alpha = 2.0 * triangle_area(d12, r[0], r[1]) / (d12 * r[1]);
  w.alpha = std::atan2(sin_alpha, cos_alpha);
  const Complex arm = w.m - z[1];
  w.candidate_a = z[1] + arm * std::polar(1.0, -w.alpha);
  w.candidate_b = z[1] + arm * std::polar(1.0, w.alpha);
  const double miss_a = std::abs(std::abs(w.candidate_a - z[2]) - r[2]);
  const double miss_b = std::abs(std::abs(w.candidate_b - z[2]) - r[2]);
  w.result = miss_a <= miss_b ? w.candidate_a : w.candidate_b;
  return w;
}

// The circle intersection loses accuracy when the solution is nearly collinear with the
// reference pair, so the cyclic labelling with the widest angle at the pivot is used.
TrilaterationWork trilaterate_unchecked(const std::array<Complex, 3>& z, const std::array<double, 3>& r) {
  for (int j = 0; j < 3; ++j) {
    if (r[j] == 0.0) return {z, r, z[j], 0.0, z[j], z[j], z[j]};
  }
  TrilaterationWork best;
  double best_sin = -1.0;
  for (int shift = 0; shift < 3; ++shift) {
    const int a = shift;
    const int b = (shift + 1) % 3;
    const int c = (shift + 2) % 3;
    double sin_alpha = 0.0;
    TrilaterationWork w = intersect({z[a], z[b], z[c]}, {r[a], r[b], r[c]}, sin_alpha);
    if (sin_alpha > best_sin) {
      best = w;
      best_sin = sin_alpha;
    }
  }
  return best;
}

bool same_point(const std::optional<Point>& a, const Point& b) {
  return a.has_value() && (*a - b).norm() <= 1e-12 * (1.0 + b.norm());
}

}  // namespace

void RetrievalTriple::validate() const {
  check_anchors(tau);
  if (!(k > 0.0)) throw std::invalid_argument("retrieval: wavenumber must be positive");
}

Complex trilaterate(const std::array<Complex, 3>& anchors, const std::array<double, 3>& distances) {
  return trilaterate_detailed(anchors, distances).result;
}

TrilaterationWork trilaterate_detailed(const std::array<Complex, 3>& anchors,
                                       const std::array<double, 3>& distances) {
  check_anchors(anchors);
  check_distances(distances);
  return trilaterate_unchecked(anchors, distances);
}

FarFieldMatrix retrieve_far_field(const std::array<const PhaselessMatrix*, 3>& moduli,
                                  const RetrievalTriple& triple) {
  triple.validate();
  const int n = moduli[0]->size();
  for (int m = 0; m < 3; ++m) {
    const PhaselessMatrix& p = *moduli[m];
    const std::string which = "retrieve_far_field: input " + std::to_string(m + 1);
    if (p.values.rows() != n || p.values.cols() != n) throw std::invalid_argument(which + " has a different size");
    if (p.meta.k != triple.k) throw std::invalid_argument(which + " has a different wavenumber");
    if (p.meta.z0 && !same_point(p.meta.z0, triple.z0)) throw std::invalid_argument(which + " has a different z0");
    if (p.meta.tau && std::abs(*p.meta.tau - triple.tau[m]) > 1e-12 * (1.0 + std::abs(triple.tau[m]))) {
      throw std::invalid_argument(which + " was measured with a different strength");
    }
    p.validate();
  }

  const DirectionGrid grid(n);
  FarFieldMatrix out{ComplexMatrix(n, n), {triple.k, FieldModel::retrieved, std::nullopt, triple.z0}};
  for (int l = 0; l < n; ++l) {
    const double incident = triple.z0.dot(grid.direction(l));
    for (int j = 0; j < n; ++j) {
      const Complex phase = std::polar(1.0, triple.k * (incident - triple.z0.dot(grid.direction(j))));
      const std::array<Complex, 3> anchors{-triple.tau[0] * phase, -triple.tau[1] * phase, -triple.tau[2] * phase};
      const std::array<double, 3> r{moduli[0]->values(j, l), moduli[1]->values(j, l), moduli[2]->values(j, l)};
      out.values(j, l) = trilaterate_unchecked(anchors, r).result;
    }
  }
  return out;
}

FarFieldMatrix retrieve_far_field(const PhaselessMatrix& first, const PhaselessMatrix& second,
                                  const PhaselessMatrix& third, const RetrievalTriple& triple) {
  return retrieve_far_field(std::array<const PhaselessMatrix*, 3>{&first, &second, &third}, triple);
}

}  // namespace phasescat
