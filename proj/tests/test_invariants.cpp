#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>

#include "bures/error.hpp"
#include "bures/invariants.hpp"
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

// Full antisymmetric array F[a][b].
std::array<std::array<Mat8, kDim>, kDim> full_array(const CurvatureTwoForm& f) {
  std::array<std::array<Mat8, kDim>, kDim> out;
  for (auto& row : out) row.fill(Mat8::Zero());
  for (int p = 0; p < kPairs; ++p) {
    const IndexPair pr = pair_of(p);
    out[pr.a][pr.b] = f.f[p];
    out[pr.b][pr.a] = -f.f[p];
  }
  return out;
}

int perm_sign(const std::array<int, 4>& v) {
  int inv = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (v[i] > v[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("shuffle sign of disjoint index sets") {
  CHECK(shuffle_sign(0b01, 0b10) == 1);
  CHECK(shuffle_sign(0b10, 0b01) == -1);
  CHECK(shuffle_sign(0b101, 0b010) == -1);
  CHECK(form_indices(2).size() == 28);
  CHECK(form_indices(4).size() == 70);
  CHECK_THROWS_AS(form_indices(9), Error);
}

TEST_CASE("wedge square matches antisymmetrised products") {
  const CurvatureTwoForm f = random_form(1);
  const auto full = full_array(f);
  const MatrixForm f2 = wedge(MatrixForm::from_two_form(f), MatrixForm::from_two_form(f));
  for (FormIndex mask : form_indices(4)) {
    std::array<int, 4> idx{};
    int n = 0;
    for (int a = 0; a < kDim; ++a)
      if (mask >> a & 1) idx[n++] = a;
    std::array<int, 4> perm = {0, 1, 2, 3};
    Mat8 want = Mat8::Zero();
    do {
      want += perm_sign(perm) * full[idx[perm[0]]][idx[perm[1]]] * full[idx[perm[2]]][idx[perm[3]]];
    } while (std::next_permutation(perm.begin(), perm.end()));
    want /= 4.0;
    CHECK((f2[mask] - want).norm() < 1e-12 * (1 + want.norm()));
  }
}

TEST_CASE("wedge is associative and degree checked") {
  const MatrixForm a = MatrixForm::from_two_form(random_form(2));
  const MatrixForm b = MatrixForm::from_two_form(random_form(3));
  const MatrixForm c = MatrixForm::from_two_form(random_form(4));
  const MatrixForm l = wedge(wedge(a, b), c), r = wedge(a, wedge(b, c));
  for (FormIndex m : form_indices(6)) CHECK((l[m] - r[m]).norm() < 1e-10 * (1 + l[m].norm()));
  const MatrixForm a4 = wedge(a, a);
  CHECK_THROWS_AS(wedge(wedge(a4, a4), a), Error);
  CHECK_THROWS_AS(inner(a, a4), Error);
}

TEST_CASE("(F,F) and (trF^2, trF^2) by brute force") {
  const CurvatureTwoForm f = random_form(6);
  const auto full = full_array(f);
  double ff = 0.0;
  Mat8 tr = Mat8::Zero();
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b) {
      ff += 0.5 * full[a][b].squaredNorm();
      tr += full[a][b] * full[b][a];
    }
  const InvariantRow row = invariant_row(f);
  CHECK(row.ff == doctest::Approx(ff).epsilon(1e-12));
  CHECK(row.ff2 == doctest::Approx(ff * ff).epsilon(1e-12));
  CHECK(row.trf2 == doctest::Approx(tr.squaredNorm()).epsilon(1e-12));
}

TEST_CASE("sigma invariants satisfy Newton identities") {
  const CurvatureTwoForm f = random_form(9);
  const MatrixForm m1 = MatrixForm::from_two_form(f);
  const MatrixForm m2 = wedge(m1, m1);
  const MatrixForm m4 = wedge(m2, m2);
  const auto sigma = sigma_invariants(curvature_form_matrix(f));

  ScalarForm p2, p4;
  for (FormIndex m : form_indices(4)) p2[m] = m2[m].trace();
  for (FormIndex m : form_indices(8)) p4[m] = m4[m].trace();

  CHECK(sigma[0][0] == 1.0);
  // trace of a skew matrix of forms vanishes, so odd power sums drop out
  CHECK(sigma[1].max_abs() < 1e-12);
  CHECK((sigma[2] - (-0.5) * p2).max_abs() < 1e-10 * (1 + p2.max_abs()));
  const ScalarForm want4 = 0.125 * (p2 * p2) - 0.25 * p4;
  CHECK((sigma[4] - want4).max_abs() < 1e-9 * (1 + want4.max_abs()));
}
