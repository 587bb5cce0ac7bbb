#include <doctest.h>

#include <cmath>
#include <numeric>

#include "bures/error.hpp"
#include "bures/quadrature.hpp"
#include "test_support.hpp"

using namespace bures;

TEST_CASE("counter uniforms have the moments of U(0,1)") {
  const int n = 200000;
  for (std::uint32_t slot = 0; slot < 6; ++slot) {
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double u = counter_uniform(99, static_cast<std::uint64_t>(i), 0, slot);
      REQUIRE(u >= 0.0);
      REQUIRE(u < 1.0);
      s += u;
      s2 += u * u;
    }
    const double mean = s / n, var = s2 / n - mean * mean;
    CHECK(std::abs(mean - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(var - 1.0 / 12.0) < 5.0 * std::sqrt(1.0 / 180.0 / n));
  }
}

TEST_CASE("neighbouring slots are uncorrelated") {
  const int n = 100000;
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    s += (counter_uniform(1, static_cast<std::uint64_t>(i), 0, 0) - 0.5) *
         (counter_uniform(1, static_cast<std::uint64_t>(i), 0, 1) - 0.5);
  CHECK(std::abs(s / n) < 5.0 / 12.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("sample and lattice points lie in the box") {
  const auto& box = domain_box();
  for (std::uint64_t i = 0; i < 100; ++i) {
    const ParameterPoint p = sample_point(5, i);
    for (int k = 0; k < kDim; ++k) {
      CHECK(p[static_cast<std::size_t>(k)] >= box.lower[k]);
      CHECK(p[static_cast<std::size_t>(k)] <= box.upper[k]);
    }
    CHECK(p.alpha() == kFixedAlpha);
    CHECK(p.a() == kFixedA);
  }
  const ParameterPoint first = lattice_point(2, 0);
  CHECK(first.zeta2() == doctest::Approx(box.lower[kZeta2] + 0.25 * (box.upper[kZeta2] - box.lower[kZeta2])));
  const ParameterPoint second = lattice_point(2, 1);
  CHECK(second.zeta2() == doctest::Approx(box.lower[kZeta2] + 0.75 * (box.upper[kZeta2] - box.lower[kZeta2])));
  CHECK(second.zeta1() == first.zeta1());
}

TEST_CASE("pairwise sum agrees with an extended precision sum") {
  std::vector<double> v(10007);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  for (double& x : v) x = u(rng) * 1e6;
  long double ref = 0.0L;
  for (double x : v) ref += x;
  CHECK(pairwise_sum(v) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-14));
  CHECK(pairwise_sum(std::span<const double>{}) == 0.0);
}

TEST_CASE("integrating a constant returns the box volume") {
  QuadratureSpec spec;
  spec.samples = 64;
  const auto mc = integrate(spec, 1, [](const ParameterPoint&, std::span<double> out) { out[0] = 1.0; });
  CHECK(mc[0].value == doctest::Approx(box_volume()).epsilon(1e-14));
  CHECK(mc[0].std_error == 0.0);

  spec.method = Method::lattice;
  spec.nodes_per_dim = 3;
  const auto lat = integrate(spec, 1, [](const ParameterPoint&, std::span<double> out) { out[0] = 1.0; });
  CHECK(lat[0].value == doctest::Approx(box_volume()).epsilon(1e-14));
  CHECK(lat[0].n_evaluated == 729);
}

TEST_CASE("midpoint lattice is exact for linear integrands") {
  const auto& box = domain_box();
  QuadratureSpec spec;
  spec.method = Method::lattice;
  spec.nodes_per_dim = 2;
  const auto r = integrate(spec, 1, [](const ParameterPoint& p, std::span<double> out) {
    out[0] = p.theta() + 2.0 * p.zeta1();
  });
  const double want = box_volume() * (0.5 * (box.lower[kTheta] + box.upper[kTheta]) +
                                      (box.lower[kZeta1] + box.upper[kZeta1]));
  CHECK(r[0].value == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("monte carlo mean of a coordinate is within five standard errors") {
  const auto& box = domain_box();
  QuadratureSpec spec;
  spec.samples = 20000;
  spec.seed = 17;
  const auto r = integrate(spec, 1, [](const ParameterPoint& p, std::span<double> out) { out[0] = p.beta(); });
  const double want = box_volume() * 0.5 * (box.lower[kBeta] + box.upper[kBeta]);
  CHECK(std::abs(r[0].value - want) < 5.0 * r[0].std_error);
}

TEST_CASE("results are identical across thread counts") {
  QuadratureSpec spec;
  spec.samples = 300;
  spec.seed = 4;
  const Integrand f = [](const ParameterPoint& p, std::span<double> out) {
    out[0] = std::sin(p.tau()) * std::exp(p.zeta1());
    out[1] = p.b() * p.b();
  };
  spec.threads = 1;
  const auto one = integrate(spec, 2, f);
  spec.threads = 3;
  const auto three = integrate(spec, 2, f);
  for (int k = 0; k < 2; ++k) {
    CHECK(one[k].value == three[k].value);
    CHECK(one[k].std_error == three[k].std_error);
  }
}

TEST_CASE("rejections retry and eventually exhaust") {
  QuadratureSpec spec;
  spec.samples = 200;
  spec.threads = 1;
  int calls = 0;
  const auto once = integrate(spec, 1, [&](const ParameterPoint&, std::span<double> out) {
    if (calls++ == 0) throw Error(ErrorCode::degenerate_spectrum, "test");
    out[0] = 1.0;
  });
  CHECK(once[0].n_rejected == 0);
  CHECK(once[0].n_evaluated == 200);

  try {
    integrate(spec, 1, [](const ParameterPoint&, std::span<double>) {
      throw Error(ErrorCode::singular_metric, "always");
    });
    FAIL("expected retry_exhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::retry_exhausted);
  }
}

TEST_CASE("invalid quadrature specs are rejected") {
  QuadratureSpec spec;
  spec.samples = 0;
  CHECK_THROWS_AS(validate(spec), Error);
  spec = {};
  spec.method = Method::lattice;
  spec.nodes_per_dim = 0;
  CHECK_THROWS_AS(validate(spec), Error);
}

TEST_CASE("small invariant table is finite and dagger preserves the norm") {
  QuadratureSpec spec;
  spec.samples = 40;
  spec.seed = 2;
  const InvariantTable t = invariant_table(spec);
  for (const auto& row : t.rows)
    for (const Estimate& e : row) CHECK(std::isfinite(e.value));
  const YangMillsActions a = ym_actions(t);
  CHECK(a.full.value == doctest::Approx(a.plus.value + a.minus.value).epsilon(1e-12));
  CHECK(t.rows[kFieldDiff][kFF2].value == doctest::Approx(t.rows[kFieldBures][kFF2].value).epsilon(1e-12));
}
