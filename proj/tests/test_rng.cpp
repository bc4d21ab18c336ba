#include <doctest.h>

#include <cmath>

#include "dppquad/rng.hpp"

using namespace dppquad;

TEST_CASE("identical (seed, stream) reproduces identical draws") {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("distinct streams differ") {
  RngStream a(42, 1), b(42, 2);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += a.next_u64() == b.next_u64();
  CHECK(same == 0);
}

TEST_CASE("uniform stays strictly inside (0,1)") {
  RngStream rng(3, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform moments") {
  RngStream rng(11, 0);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    s += u;
    s2 += u * u;
  }
  CHECK(s / n == doctest::Approx(0.5).epsilon(0.01));
  CHECK(s2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.01));
}

TEST_CASE("beta moments match across shape regimes") {
  // E = s/(s+t), Var = st/((s+t)^2(s+t+1)); covers shapes below and above 1
  const double cases[][2] = {{0.5, 0.5}, {0.3, 2.0}, {3.0, 1.5}, {5.0, 5.0}};
  RngStream rng(19, 0);
  for (const auto& c : cases) {
    const double s = c[0], t = c[1];
    const int n = 200000;
    double acc = 0.0, acc2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.beta(s, t);
      acc += x;
      acc2 += x * x;
    }
    const double mean = acc / n;
    const double var = acc2 / n - mean * mean;
    const double emean = s / (s + t);
    const double evar = s * t / ((s + t) * (s + t) * (s + t + 1.0));
    CHECK(mean == doctest::Approx(emean).epsilon(0.02));
    CHECK(var == doctest::Approx(evar).epsilon(0.05));
  }
}

TEST_CASE("normal moments") {
  RngStream rng(23, 0);
  const int n = 200000;
  double s = 0.0, s2 = 0.0, s4 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s += z;
    s2 += z * z;
    s4 += z * z * z * z;
  }
  CHECK(s / n == doctest::Approx(0.0).epsilon(0.02));
  CHECK(std::abs(s / n) < 0.02);
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.02));
  CHECK(s4 / n == doctest::Approx(3.0).epsilon(0.05));
}

TEST_CASE("uniform_index is unbiased over small ranges") {
  RngStream rng(5, 0);
  const int n = 120000;
  int counts[6] = {0, 0, 0, 0, 0, 0};
  for (int i = 0; i < n; ++i) ++counts[rng.uniform_index(6)];
  for (int c : counts) CHECK(c == doctest::Approx(n / 6.0).epsilon(0.05));
}
