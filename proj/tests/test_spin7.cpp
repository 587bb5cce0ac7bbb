#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "bures/spin7.hpp"
#include "test_support.hpp"

using namespace bures;

namespace {

CurvatureTwoForm random_form(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01;
  CurvatureTwoForm f = CurvatureTwoForm::zero();
  for (auto& m : f.f) {
    for (int i = 0; i < kDim; ++i)
      for (int j = i + 1; j < kDim; ++j) {
        m(i, j) = n01(rng);
        m(j, i) = -m(i, j);
      }
  }
  return f;
}

}  // namespace

TEST_CASE("duality projectors are complementary orthogonal projectors of rank 21 and 7") {
  const DualityOperator& op = projectors();
  CHECK((op.p_plus * op.p_plus - op.p_plus).norm() < 1e-14);
  CHECK((op.p_minus * op.p_minus - op.p_minus).norm() < 1e-14);
  CHECK((op.p_plus * op.p_minus).norm() < 1e-14);
  CHECK((op.p_plus - op.p_plus.transpose()).norm() == 0.0);
  CHECK(op.p_plus.trace() == doctest::Approx(21.0));
  CHECK(op.p_minus.trace() == doctest::Approx(7.0));

  Eigen::SelfAdjointEigenSolver<Mat28> es(op.phi);
  int minus3 = 0, plus1 = 0;
  for (int k = 0; k < kPairs; ++k) {
    if (std::abs(es.eigenvalues()(k) + 3.0) < 1e-12) ++minus3;
    if (std::abs(es.eigenvalues()(k) - 1.0) < 1e-12) ++plus1;
  }
  CHECK(minus3 == 7);
  CHECK(plus1 == 21);
}

TEST_CASE("set A vectors are orthogonal with four unit entries") {
  const auto& a = set_a_basis();
  for (int i = 0; i < 7; ++i) {
    CHECK(a[i].squaredNorm() == 4.0);
    for (int j = i + 1; j < 7; ++j) CHECK(a[i].dot(a[j]) == 0.0);
  }
}

TEST_CASE("decomposition splits a random form into the two constraint sets") {
  const CurvatureTwoForm f = random_form(5);
  const DualParts parts = decompose(f);
  CHECK(((parts.plus + parts.minus) - f).norm() < 1e-12);
  for (double r : set_a_residuals(parts.plus)) CHECK(r < 1e-12);
  for (double r : set_b_residuals(parts.minus)) CHECK(r < 1e-12);
  double a_minus = 0.0;
  for (double r : set_a_residuals(parts.minus)) a_minus += r;
  CHECK(a_minus > 1.0);

  const CurvatureTwoForm d = dagger(f);
  CHECK((d - (parts.plus - parts.minus)).norm() < 1e-12);
}

TEST_CASE("skew_from_pairs builds an antisymmetric matrix") {
  Vec28 c = Vec28::Zero();
  c(pair_index(0, 1)) = 2.0;
  c(pair_index(3, 7)) = -1.5;
  const Mat8 m = skew_from_pairs(c);
  CHECK(m(0, 1) == 2.0);
  CHECK(m(1, 0) == -2.0);
  CHECK(m(3, 7) == -1.5);
  CHECK((m + m.transpose()).norm() == 0.0);
}
