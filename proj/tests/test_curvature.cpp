#include <doctest.h>

#include <cmath>

#include "bures/bures_metric.hpp"
#include "bures/curvature.hpp"
#include "bures/invariants.hpp"
#include "test_support.hpp"

using namespace bures;

TEST_CASE("exact metric jet agrees with finite differences") {
  const ParameterPoint p = testing::generic_point();
  GeometryOptions fd;
  fd.jet_method = JetMethod::finite_difference;
  const MetricJet exact = metric_jet_exact(p);
  const MetricJet approx = metric_jet(p, fd);
  CHECK((exact.g - approx.g).norm() < 1e-14);
  for (int i = 0; i < kDim; ++i) {
    CHECK((exact.dg[i] - approx.dg[i]).norm() < 1e-7 * (1 + exact.dg[i].norm()));
    for (int j = 0; j < kDim; ++j)
      CHECK((exact.ddg[i][j] - approx.ddg[i][j]).norm() < 1e-5 * (1 + exact.ddg[i][j].norm()));
  }
}

TEST_CASE("submersion and christoffel curvature agree at a well-conditioned point") {
  const ParameterPoint p = testing::generic_point();
  GeometryOptions chr;
  chr.curvature_method = CurvatureMethod::christoffel;
  const RiemannAtPoint a = riemann(p);
  const RiemannAtPoint b = riemann(p, chr);
  double diff = 0.0;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) diff = std::max(diff, std::abs(a.riemann(i, j, k, l) - b.riemann(i, j, k, l)));
  CHECK(diff < 1e-8 * a.riemann.norm());
  CHECK(a.scalar == doctest::Approx(b.scalar).epsilon(1e-9));
}

TEST_CASE("riemann tensor symmetries and scalar closed form") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 4; ++trial) {
    const ParameterPoint p = testing::random_interior(rng);
    const RiemannAtPoint r = riemann(p);
    const double scale = r.riemann.norm();
    double worst = 0.0;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k)
          for (int l = 0; l < kDim; ++l) {
            worst = std::max(worst, std::abs(r.riemann(i, j, k, l) + r.riemann(j, i, k, l)));
            worst = std::max(worst, std::abs(r.riemann(i, j, k, l) - r.riemann(k, l, i, j)));
            worst = std::max(worst, std::abs(r.riemann(i, j, k, l) + r.riemann(i, k, l, j) +
                                             r.riemann(i, l, j, k)));
          }
    CHECK(worst < 1e-12 * scale);
    CHECK((r.ricci - r.ricci.transpose()).norm() < 1e-10 * r.ricci.norm());
    CHECK(r.scalar == doctest::Approx((r.g_inv * r.ricci).trace()).epsilon(1e-12));
    CHECK(r.scalar == doctest::Approx(scalar_curvature_closed_form(density(p).spectrum)).epsilon(1e-9));
  }
}

TEST_CASE("qubit Bures space has scalar curvature 24") {
  const RiemannT<3> r = bloch_riemann(0.5, 0.9, 0.2);
  CHECK(r.scalar == doctest::Approx(24.0).epsilon(1e-10));
  CHECK(bloch_codazzi_residual(0.5, 0.9, 0.2) < 1e-6);
}

TEST_CASE("vielbein reproduces the metric") {
  const Mat8 g = metric_tensor(testing::generic_point());
  for (FrameChoice c : {FrameChoice::cholesky, FrameChoice::symmetric}) {
    const Mat8 e = vielbein(g, c);
    CHECK((e.transpose() * g * e - Mat8::Identity()).norm() < 1e-10);
  }
}

TEST_CASE("curvature two-form invariants do not depend on the frame") {
  const ParameterPoint p = testing::generic_point();
  const CurvatureTwoForm a = frame_curvature(p, {}, FrameChoice::cholesky);
  const CurvatureTwoForm b = frame_curvature(p, {}, FrameChoice::symmetric);
  for (int q = 0; q < kPairs; ++q) {
    CHECK((a.f[q] + a.f[q].transpose()).norm() < 1e-12 * a.norm());
  }
  const InvariantRow ra = invariant_row(a), rb = invariant_row(b);
  CHECK(ra.ff == doctest::Approx(rb.ff).epsilon(1e-10));
  CHECK(ra.f2f2 == doctest::Approx(rb.f2f2).epsilon(1e-10));
  CHECK(ra.trf2 == doctest::Approx(rb.trf2).epsilon(1e-10));
  CHECK(ra.f3f3_23 == doctest::Approx(rb.f3f3_23).epsilon(1e-9));
  CHECK(ra.f4f4_12 == doctest::Approx(rb.f4f4_12).epsilon(1e-9));
}

TEST_CASE("two-form norm matches the riemann tensor norm") {
  const ParameterPoint p = testing::generic_point();
  const RiemannAtPoint r = riemann(p);
  const CurvatureTwoForm f = frame_curvature(r);
  // |R|^2 with indices raised, halved over the antisymmetric form pair
  Eigen::Matrix<double, 64, 64> rm;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) rm(i * 8 + j, k * 8 + l) = r.riemann(i, j, k, l);
  Eigen::Matrix<double, 64, 64> ginv2;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) ginv2(i * 8 + j, k * 8 + l) = r.g_inv(i, k) * r.g_inv(j, l);
  const double full = (rm.cwiseProduct(ginv2 * rm * ginv2)).sum();
  CHECK(invariant_row(f).ff == doctest::Approx(0.5 * full).epsilon(1e-9));
}
