#include <doctest.h>

#include <cmath>
#include <limits>

#include "bures/error.hpp"
#include "bures/state_space.hpp"
#include "test_support.hpp"

using namespace bures;
using testing::cplx;

namespace {

Mat3c lambda2() {
  Mat3c m = Mat3c::Zero();
  m(0, 1) = cplx(0, -1);
  m(1, 0) = cplx(0, 1);
  return m;
}

Mat3c lambda3() {
  Mat3c m = Mat3c::Zero();
  m(0, 0) = 1;
  m(1, 1) = -1;
  return m;
}

Mat3c lambda5() {
  Mat3c m = Mat3c::Zero();
  m(0, 2) = cplx(0, -1);
  m(2, 0) = cplx(0, 1);
  return m;
}

Mat3c unitary_oracle(const ParameterPoint& p) {
  return testing::expi(lambda3(), p.alpha()) * testing::expi(lambda2(), p.beta()) *
         testing::expi(lambda3(), p.gamma()) * testing::expi(lambda5(), p.theta()) *
         testing::expi(lambda3(), p.a()) * testing::expi(lambda2(), p.b());
}

}  // namespace

TEST_CASE("euler unitary matches products of matrix exponentials") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 20; ++n) {
    const ParameterPoint p = testing::random_interior(rng);
    const Mat3c u = euler_unitary(p);
    CHECK((u - unitary_oracle(p)).norm() < 1e-13);
    CHECK((u * u.adjoint() - Mat3c::Identity()).norm() < 1e-13);
  }
}

TEST_CASE("density has unit trace and the requested spectrum") {
  const ParameterPoint p = testing::generic_point();
  const HermitianState st = density(p);
  CHECK(std::abs(st.rho.trace() - cplx(1.0)) < 1e-14);
  CHECK((st.rho - st.rho.adjoint()).norm() < 1e-15);

  const Spectrum s = spectrum_from_spherical(p.zeta1(), p.zeta2());
  CHECK(s.lambda1 == doctest::Approx(std::cos(p.zeta1()) * std::cos(p.zeta1())));
  CHECK(s.lambda1 + s.lambda2 + s.lambda3 == doctest::Approx(1.0));

  Eigen::SelfAdjointEigenSolver<Mat3c> es(st.rho);
  std::array<double, 3> want = s.values();
  std::sort(want.begin(), want.end());
  for (int k = 0; k < 3; ++k) CHECK(es.eigenvalues()(k) == doctest::Approx(want[k]).epsilon(1e-12));
}

TEST_CASE("density partials agree with central differences") {
  const ParameterPoint p = testing::generic_point();
  const auto d = density_partials(p);
  const double h = 1e-5;
  for (int i = 0; i < kDim; ++i) {
    const Mat3c fd = (density(p.shifted(i, h)).rho - density(p.shifted(i, -h)).rho) / (2 * h);
    CHECK((d[static_cast<std::size_t>(i)] - fd).norm() < 1e-9);
  }
}

TEST_CASE("domain and finiteness guards") {
  ParameterPoint p = testing::generic_point();
  CHECK_NOTHROW(check_domain(p));

  ParameterPoint out = p;
  out[kZeta2] = 1.0;
  try {
    check_domain(out);
    FAIL("expected out_of_domain");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::out_of_domain);
  }

  ParameterPoint nan = p;
  nan[kTheta] = std::numeric_limits<double>::quiet_NaN();
  try {
    check_finite(nan);
    FAIL("expected non_finite_input");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::non_finite_input);
  }

  try {
    check_nondegenerate(make_spectrum(0.5, 0.5), 1e-8);
    FAIL("expected degenerate_spectrum");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate_spectrum);
  }
}

TEST_CASE("spectral jacobian matches finite differences") {
  const double z1 = 0.5, z2 = 0.3, h = 1e-6;
  const Eigen::Matrix2d j = spectral_jacobian(z1, z2);
  const Spectrum sp1 = spectrum_from_spherical(z1 + h, z2), sm1 = spectrum_from_spherical(z1 - h, z2);
  const Spectrum sp2 = spectrum_from_spherical(z1, z2 + h), sm2 = spectrum_from_spherical(z1, z2 - h);
  Eigen::Matrix2d fd;
  fd << (sp1.lambda1 - sm1.lambda1) / (2 * h), (sp2.lambda1 - sm2.lambda1) / (2 * h),
      (sp1.lambda2 - sm1.lambda2) / (2 * h), (sp2.lambda2 - sm2.lambda2) / (2 * h);
  CHECK((j - fd).norm() < 1e-8);
}
