#pragma once

#include <complex>
#include <stdexcept>

namespace phasescat::specfun {

/// Thrown for orders or arguments outside the supported range.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr int kMaxOrder = 200;
inline constexpr double kMaxArgument = 5000.0;
inline constexpr double kMinYArgument = 1e-8;

/// Bessel function of the first kind J_n(x), integer n in [0, 200], x in [0, 5000].
double bessel_j(int order, double x);

/// Bessel function of the second kind Y_n(x), x in [1e-8, 5000].
/// Returns -inf when the true value overflows a double.
double bessel_y(int order, double x);

/// Hankel function of the first kind, H_n(x) = J_n(x) + i Y_n(x).
std::complex<double> hankel1(int order, double x);

/// H_0 and H_1 at the same argument; the pair needed by the Helmholtz kernels.
struct Hankel01 {
  std::complex<double> h0;
  std::complex<double> h1;
};
Hankel01 hankel1_01(double x);

/// Derivatives with respect to the argument.
double bessel_j_prime(int order, double x);
std::complex<double> hankel1_prime(int order, double x);

}  // namespace phasescat::specfun
