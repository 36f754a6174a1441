#include "phasescat/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace phasescat::specfun {

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;
// Above this argument orders 0 and 1 come from the Hankel asymptotic expansion.
constexpr double kAsymptoticThreshold = 25.0;
constexpr double kRescaleAbove = 1e250;

void check_order(int order) {
  if (order < 0 || order > kMaxOrder) {
    throw DomainError("bessel: order " + std::to_string(order) + " outside [0, " +
                      std::to_string(kMaxOrder) + "]");
  }
}

// J_n(x) = (x/2)^n / n! * sum_m (-x^2/4)^m / (m! (n+1)_m)
// Used when x^2/4 <= n + 1, where the terms decrease from the start.
double j_series(int n, double x) {
  const double log_prefactor = n * std::log(0.5 * x) - std::lgamma(n + 1.0);
  if (log_prefactor < -745.0) return 0.0;
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int m = 1; m < 200; ++m) {
    term *= q / (static_cast<double>(m) * (n + m));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::exp(log_prefactor) * sum;
}

int miller_start(int n, double x) {
  const double reach = std::max(static_cast<double>(n), x);
  int m = static_cast<int>(reach + 30.0 + std::sqrt(160.0 * reach));
  return m + (m % 2);
}

// Miller's backward recurrence normalized with J_0 + 2 sum_k J_2k = 1.
// Returns J_0 .. J_last.
std::vector<double> j_sequence(double x, int last) {
  const int start = std::max(miller_start(last, x), last + 2);
  std::vector<double> values(static_cast<std::size_t>(start) + 1, 0.0);
  double next = 0.0;
  double current = 1.0;
  values[static_cast<std::size_t>(start)] = current;
  double sum = 2.0 * current;  // start is even
  for (int i = start; i > 0; --i) {
    const double previous = (2.0 * i / x) * current - next;
    next = current;
    current = previous;
    values[static_cast<std::size_t>(i - 1)] = current;
    if (i - 1 > 0 && (i - 1) % 2 == 0) sum += 2.0 * current;
    if (std::abs(current) > kRescaleAbove) {
      current /= kRescaleAbove;
      next /= kRescaleAbove;
      sum /= kRescaleAbove;
      for (int j = i - 1; j <= start; ++j) values[static_cast<std::size_t>(j)] /= kRescaleAbove;
    }
  }
  sum += current;
  values.resize(static_cast<std::size_t>(last) + 1);
  for (double& v : values) v /= sum;
  return values;
}

// Single-order Miller pass without storing the whole sequence.
double j_miller(int n, double x) {
  const int start = miller_start(n, x);
  double next = 0.0;
  double current = 1.0;
  double sum = 2.0 * current;
  double answer = 0.0;
  for (int i = start; i > 0; --i) {
    const double previous = (2.0 * i / x) * current - next;
    next = current;
    current = previous;
    if (i - 1 == n) answer = current;
    if (i - 1 > 0 && (i - 1) % 2 == 0) sum += 2.0 * current;
    if (std::abs(current) > kRescaleAbove) {
      current /= kRescaleAbove;
      next /= kRescaleAbove;
      sum /= kRescaleAbove;
      answer /= kRescaleAbove;
    }
  }
  sum += current;
  return answer / sum;
}

// H_nu(x) ~ sqrt(2/(pi x)) e^{i(x - nu pi/2 - pi/4)} sum_k i^k a_k(nu) / x^k
std::complex<double> hankel_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  std::complex<double> sum = 1.0;
  std::complex<double> term = 1.0;
  double previous_size = 1.0;
  for (int k = 1; k < 80; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= std::complex<double>(0.0, 1.0) * ((mu - odd * odd) / (8.0 * k * x));
    const double size = std::abs(term);
    if (size > previous_size) break;
    sum += term;
    if (size < 1e-17 * std::abs(sum)) break;
    previous_size = size;
  }
  const double phase = x - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * x)) * std::polar(1.0, phase) * sum;
}

struct Pair {
  double j0, j1, y0, y1;
};

// Y_0 and Y_1 from the Neumann series
//   Y_0 = (2/pi) [ (ln(x/2)+gamma) J_0 - 2 sum_k (-1)^k J_2k / k ]
//   Y_1 = (2/pi) [ -J_0/x + (ln(x/2)+gamma) J_1 + sum_k (-1)^k (J_2k-1 - J_2k+1) / k ]
// the second being minus the derivative of the first.
Pair order01_small(double x) {
  const int last = miller_start(0, x);
  const auto j = j_sequence(x, last);
  const double log_term = std::log(0.5 * x) + kEulerGamma;
  double s0 = 0.0;
  double s1 = 0.0;
  double sign = -1.0;
  for (int k = 1; 2 * k + 1 <= last; ++k) {
    s0 += sign * j[static_cast<std::size_t>(2 * k)] / k;
    s1 += sign * (j[static_cast<std::size_t>(2 * k - 1)] - j[static_cast<std::size_t>(2 * k + 1)]) / k;
    sign = -sign;
  }
  const double two_over_pi = 2.0 / std::numbers::pi;
  Pair p{};
  p.j0 = x * x < 4.0 ? j_series(0, x) : j[0];
  p.j1 = x * x < 8.0 ? j_series(1, x) : j[1];
  p.y0 = two_over_pi * (log_term * j[0] - 2.0 * s0);
  p.y1 = two_over_pi * (-j[0] / x + log_term * j[1] + s1);
  return p;
}

Pair order01(double x) {
  if (x >= kAsymptoticThreshold) {
    const auto h0 = hankel_asymptotic(0, x);
    const auto h1 = hankel_asymptotic(1, x);
    return {h0.real(), h1.real(), h0.imag(), h1.imag()};
  }
  return order01_small(x);
}

double y_forward(int n, double x, double y0, double y1) {
  if (n == 0) return y0;
  double previous = y0;
  double current = y1;
  for (int k = 1; k < n; ++k) {
    const double next = (2.0 * k / x) * current - previous;
    previous = current;
    current = next;
    if (!std::isfinite(current)) return -std::numeric_limits<double>::infinity();
  }
  return current;
}

}  // namespace

double bessel_j(int order, double x) {
  check_order(order);
  if (!(x >= 0.0) || x > kMaxArgument) {
    throw DomainError("bessel_j: argument outside [0, 5000]");
  }
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  if (x * x < 4.0 * (order + 1)) return j_series(order, x);
  if (x >= kAsymptoticThreshold && order < x) {
    const double j0 = hankel_asymptotic(0, x).real();
    if (order == 0) return j0;
    double previous = j0;
    double current = hankel_asymptotic(1, x).real();
    for (int k = 1; k < order; ++k) {
      const double next = (2.0 * k / x) * current - previous;
      previous = current;
      current = next;
    }
    return current;
  }
  return j_miller(order, x);
}

double bessel_y(int order, double x) {
  check_order(order);
  if (!(x > 0.0)) throw DomainError("bessel_y: argument must be positive");
  if (x < kMinYArgument || x > kMaxArgument) {
    throw DomainError("bessel_y: argument outside [1e-8, 5000]");
  }
  const Pair p = order01(x);
  return y_forward(order, x, p.y0, p.y1);
}

std::complex<double> hankel1(int order, double x) {
  return {bessel_j(order, x), bessel_y(order, x)};
}

Hankel01 hankel1_01(double x) {
  if (!(x > 0.0)) throw DomainError("hankel1: argument must be positive");
  const Pair p = order01(x);
  return {{p.j0, p.y0}, {p.j1, p.y1}};
}

double bessel_j_prime(int order, double x) {
  if (order == 0) return -bessel_j(1, x);
  return 0.5 * (bessel_j(order - 1, x) - bessel_j(order + 1, x));
}

std::complex<double> hankel1_prime(int order, double x) {
  if (order == 0) return -hankel1(1, x);
  return 0.5 * (hankel1(order - 1, x) - hankel1(order + 1, x));
}

}  // namespace phasescat::specfun
