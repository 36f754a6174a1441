#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>

#include "phasescat/noise.hpp"

using namespace phasescat;

namespace {

PhaselessMatrix random_moduli(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  PhaselessMatrix m{RealMatrix(n, n), {8.0, FieldModel::coupled, Complex(1.0, 0.0), Point(12, 12)}};
  for (Eigen::Index i = 0; i < m.values.size(); ++i) m.values.data()[i] = u(rng);
  return m;
}

bool bitwise_equal(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (std::memcmp(a.data() + i, b.data() + i, sizeof(double)) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("uniform stream stays inside the open interval and is centred") {
  UniformStream s(7);
  double sum = 0.0;
  double lo = 1.0;
  double hi = -1.0;
  const int count = 200000;
  for (int i = 0; i < count; ++i) {
    const double e = s.next();
    REQUIRE(e > -1.0);
    REQUIRE(e < 1.0);
    sum += e;
    lo = std::min(lo, e);
    hi = std::max(hi, e);
  }
  CHECK(std::abs(sum / count) < 0.01);
  CHECK(lo < -0.999);
  CHECK(hi > 0.999);
}

TEST_CASE("zero level or model none returns the data unchanged") {
  const PhaselessMatrix m = random_moduli(16, 1);
  for (NoiseModel model : {NoiseModel::none, NoiseModel::relative, NoiseModel::absolute}) {
    CAPTURE(to_string(model));
    const PhaselessMatrix out = add_noise(m, {model, 0.0, 99});
    CHECK(bitwise_equal(out.values, m.values));
  }
  CHECK(bitwise_equal(add_noise(m, {NoiseModel::none, 0.5, 3}).values, m.values));
}

TEST_CASE("same seed and index reproduce the output bit for bit") {
  const PhaselessMatrix m = random_moduli(16, 2);
  const NoiseSpec spec{NoiseModel::relative, 0.1, 42};
  CHECK(bitwise_equal(add_noise(m, spec, 3).values, add_noise(m, spec, 3).values));
  CHECK_FALSE(bitwise_equal(add_noise(m, spec, 3).values, add_noise(m, spec, 4).values));
  CHECK_FALSE(bitwise_equal(add_noise(m, spec, 0).values, add_noise(m, {NoiseModel::relative, 0.1, 43}, 0).values));
}

TEST_CASE("relative noise stays within the multiplicative band") {
  const PhaselessMatrix m = random_moduli(32, 3);
  const double delta = 0.3;
  const PhaselessMatrix out = add_relative_noise(m, {NoiseModel::relative, delta, 5});
  for (Eigen::Index i = 0; i < m.values.size(); ++i) {
    const double v = m.values.data()[i];
    CHECK(std::abs(out.values.data()[i] - v) <= delta * v * (1.0 + 1e-15));
    CHECK(out.values.data()[i] >= 0.0);
  }
  CHECK(out.meta.k == m.meta.k);
  CHECK(out.meta.tau == m.meta.tau);
}

TEST_CASE("relative noise follows the documented draw order") {
  const PhaselessMatrix m = random_moduli(4, 4);
  const NoiseSpec spec{NoiseModel::relative, 0.2, 11};
  const PhaselessMatrix out = add_relative_noise(m, spec, 2);
  UniformStream s(13);
  for (int j = 0; j < 4; ++j) {
    for (int l = 0; l < 4; ++l) CHECK(out.values(j, l) == m.values(j, l) * (1.0 + 0.2 * s.next()));
  }
}

TEST_CASE("absolute noise is clamped at zero") {
  PhaselessMatrix m{RealMatrix::Zero(20, 20), {}};
  const PhaselessMatrix out = add_absolute_noise(m, {NoiseModel::absolute, 0.5, 9});
  CHECK(out.values.minCoeff() == 0.0);
  CHECK(out.values.maxCoeff() > 0.0);
  CHECK(out.values.maxCoeff() < 0.5);
  const PhaselessMatrix big = random_moduli(20, 6);
  const PhaselessMatrix shifted = add_absolute_noise(big, {NoiseModel::absolute, 0.05, 9});
  for (Eigen::Index i = 0; i < big.values.size(); ++i) {
    CHECK(shifted.values.data()[i] >= 0.0);
    CHECK(std::abs(shifted.values.data()[i] - big.values.data()[i]) <= 0.05 + 1e-15);
  }
}

TEST_CASE("invalid levels are rejected") {
  const PhaselessMatrix m = random_moduli(4, 7);
  CHECK_THROWS_AS(add_noise(m, {NoiseModel::relative, -0.1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(add_noise(m, {NoiseModel::absolute, std::numeric_limits<double>::quiet_NaN(), 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(add_noise(m, {NoiseModel::relative, 1.5, 0}), std::invalid_argument);
  CHECK_NOTHROW(add_noise(m, {NoiseModel::relative, 1.0, 0}));
  CHECK_NOTHROW(add_noise(m, {NoiseModel::absolute, 1.5, 0}));
}

TEST_CASE("noise model names") {
  for (NoiseModel model : {NoiseModel::none, NoiseModel::relative, NoiseModel::absolute}) {
    CHECK(parse_noise_model(to_string(model)) == model);
  }
  CHECK_THROWS_AS(parse_noise_model("gaussian"), std::invalid_argument);
}
