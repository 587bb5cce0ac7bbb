#include <doctest.h>

#include <cmath>

#include <Eigen/LU>

#include "bures/bures_metric.hpp"
#include "bures/error.hpp"
#include "test_support.hpp"

using namespace bures;

TEST_CASE("metric reproduces the second-order Bures distance") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  for (int trial = 0; trial < 5; ++trial) {
    const ParameterPoint p = testing::random_interior(rng);
    const Mat8 g = metric_tensor(p);
    Vec8 v;
    for (int i = 0; i < kDim; ++i) v(i) = n01(rng);
    v.normalize();
    const double h = 1e-4;
    ParameterPoint plus = p, minus = p;
    for (int i = 0; i < kDim; ++i) {
      plus[static_cast<std::size_t>(i)] += h * v(i);
      minus[static_cast<std::size_t>(i)] -= h * v(i);
    }
    const Mat3c r0 = density(p).rho;
    const double d2 = 0.5 * (testing::bures_distance2(r0, density(plus).rho) +
                             testing::bures_distance2(r0, density(minus).rho));
    CHECK(d2 / (h * h) == doctest::Approx(v.dot(g * v)).epsilon(1e-4));
  }
}

TEST_CASE("calibration scales the metric linearly") {
  const ParameterPoint p = testing::generic_point();
  GeometryOptions one;
  one.calibration = 1.0;
  CHECK((metric_tensor(p, one) - 2.0 * metric_tensor(p)).norm() < 1e-12);
}

TEST_CASE("inverse, determinant and closed forms") {
  const ParameterPoint p = testing::generic_point();
  const MetricAtPoint m = metric(p);
  CHECK((m.g - m.g.transpose()).norm() == 0.0);
  CHECK((m.g * m.g_inv - Mat8::Identity()).norm() < 1e-10);
  CHECK(m.sqrt_det == doctest::Approx(std::sqrt(m.g.determinant())).epsilon(1e-10));
  CHECK(volume_element(p) == doctest::Approx(m.sqrt_det).epsilon(1e-12));
  CHECK(closed_form_volume(p) == doctest::Approx(m.sqrt_det).epsilon(1e-10));
  CHECK(m.g(kTheta, kTheta) == doctest::Approx(closed_form_entries(p).g_theta_theta).epsilon(1e-12));
}

TEST_CASE("qubit metric is the round three-sphere of radius one half") {
  const double r = 0.6, th = 0.8, ph = 0.3;
  const Eigen::Matrix3d g = bloch_metric(r, th, ph);
  CHECK(g(0, 0) == doctest::Approx(0.25 / (1 - r * r)));
  CHECK(g(1, 1) == doctest::Approx(0.25 * r * r));
  CHECK(g(2, 2) == doctest::Approx(0.25 * r * r * std::sin(th) * std::sin(th)));
  CHECK(std::abs(g(0, 1)) < 1e-14);
}

TEST_CASE("degenerate spectrum is rejected") {
  ParameterPoint p = testing::generic_point();
  p[kZeta1] = kZeta1Max;
  p[kZeta2] = kZeta2Max;
  try {
    metric(p);
    FAIL("expected degenerate_spectrum");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_spectrum);
  }
}
