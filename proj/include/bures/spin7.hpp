#pragma once

#include <array>

#include "bures/curvature.hpp"
#include "bures/types.hpp"

namespace bures {

using Vec28 = Eigen::Matrix<double, kPairs, 1>;
using Mat28 = Eigen::Matrix<double, kPairs, kPairs>;

// One linear relation F_first + sign * F_second = 0 between two pair components.
struct PairRelation {
  int first = 0;
  int second = 0;
  double sign = 1.0;
};

// Normal vectors of the seven "set a" constraints, e.g. v1 = e12 + e34 + e56 + e78.
const std::array<Vec28, 7>& set_a_basis();

// The twenty-one "set b" constraints, e.g. F12 - F34 = 0.
const std::array<PairRelation, 21>& set_b_relations();

// Spin(7) duality on 2-form indices: Phi = P+ - 3 P-, with
// P- = (1/4) sum_k v_k v_k^T (rank 7) and P+ = I - P- (rank 21).
struct DualityOperator {
  Mat28 phi;
  Mat28 p_plus;
  Mat28 p_minus;
};

const DualityOperator& projectors();

struct DualParts {
  // eigenvalue +1 part, satisfies set a
  CurvatureTwoForm plus;
  // eigenvalue -3 part, satisfies set b
  CurvatureTwoForm minus;
};

// Applies P+ and P- along the pair index, entry position by entry position.
DualParts decompose(const CurvatureTwoForm& f);

// F+ - F-
CurvatureTwoForm dagger(const CurvatureTwoForm& f);

// Frobenius norms of the signed combinations named by each constraint.
std::array<double, 7> set_a_residuals(const CurvatureTwoForm& f);
std::array<double, 21> set_b_residuals(const CurvatureTwoForm& f);

// Skew 8x8 matrix with entries w(a,b) = coeffs[pair(a,b)] for a < b.
Mat8 skew_from_pairs(const Vec28& coeffs);

}  // namespace bures
