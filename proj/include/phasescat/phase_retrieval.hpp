#pragma once

#include <array>

#include "phasescat/farfield.hpp"

namespace phasescat {

/// Three reference strengths used to measure |u_D + u_z0(tau_j)|.
struct RetrievalTriple {
  std::array<Complex, 3> tau{Complex(-1.0, 0.0), Complex(1.0, 0.0), Complex(0.0, 1.0)};
  Point z0 = Point(12.0, 12.0);
  double k = 8.0;

  /// Throws std::invalid_argument unless the strengths are pairwise distinct and,
  /// as points of the plane, not collinear.
  void validate() const;
};

/// Intermediate quantities of one trilateration. `anchors` and `distances` are listed in the
/// cyclic order actually used: anchor 2 is the pivot and anchor 3 selects the candidate.
struct TrilaterationWork {
  std::array<Complex, 3> anchors;
  std::array<double, 3> distances;
  Complex m;  // on the ray from anchor 2 towards anchor 1, at distance r2 from anchor 2
  double alpha = 0.0;
  Complex candidate_a;  // m rotated about anchor 2 by -alpha
  Complex candidate_b;  // m rotated about anchor 2 by +alpha
  Complex result;
};

/// Point whose distances to three non-collinear anchors best match `distances`.
/// Throws std::invalid_argument for collinear or coincident anchors or negative distances.
Complex trilaterate(const std::array<Complex, 3>& anchors, const std::array<double, 3>& distances);
TrilaterationWork trilaterate_detailed(const std::array<Complex, 3>& anchors,
                                       const std::array<double, 3>& distances);

/// Recovers the obstacle far field from three phaseless measurements that differ only in
/// the strength of the reference point scatterer. Entry (j,l) uses the anchors
/// -tau_m exp(i k z0 . (theta_l - x_j)).
FarFieldMatrix retrieve_far_field(const std::array<const PhaselessMatrix*, 3>& moduli,
                                  const RetrievalTriple& triple);
FarFieldMatrix retrieve_far_field(const PhaselessMatrix& first, const PhaselessMatrix& second,
                                  const PhaselessMatrix& third, const RetrievalTriple& triple);

}  // namespace phasescat
