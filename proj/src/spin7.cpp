#include "bures/spin7.hpp"

namespace bures {
namespace {

struct SignedPair {
  int a;  // 1-based
  int b;
  double sign;
};

Vec28 from_terms(const std::array<SignedPair, 4>& terms) {
  Vec28 v = Vec28::Zero();
  for (const auto& t : terms) v(pair_index(t.a - 1, t.b - 1)) = t.sign;
  return v;
}

// Linear map on the pair index applied to every matrix entry.
CurvatureTwoForm apply_pair_map(const Mat28& m, const CurvatureTwoForm& f) {
  CurvatureTwoForm out;
  out.frame = f.frame;
  for (int p = 0; p < kPairs; ++p) {
    out.f[p].setZero();
    for (int q = 0; q < kPairs; ++q) {
      if (m(p, q) != 0.0) out.f[p] += m(p, q) * f.f[q];
    }
  }
  return out;
}

}  // namespace

const std::array<Vec28, 7>& set_a_basis() {
  static const std::array<Vec28, 7> basis = {
      from_terms({{{1, 2, 1}, {3, 4, 1}, {5, 6, 1}, {7, 8, 1}}}),
      from_terms({{{1, 3, 1}, {2, 4, -1}, {5, 7, 1}, {6, 8, -1}}}),
      from_terms({{{1, 4, 1}, {2, 3, 1}, {6, 7, -1}, {5, 8, -1}}}),
      from_terms({{{1, 5, 1}, {2, 6, -1}, {3, 7, -1}, {4, 8, 1}}}),
      from_terms({{{1, 6, 1}, {2, 5, 1}, {3, 8, 1}, {4, 7, 1}}}),
      from_terms({{{1, 7, 1}, {2, 8, -1}, {3, 5, 1}, {4, 6, -1}}}),
      from_terms({{{1, 8, 1}, {2, 7, 1}, {3, 6, -1}, {4, 5, -1}}}),
  };
  return basis;
}

const std::array<PairRelation, 21>& set_b_relations() {
  static const std::array<PairRelation, 21> rel = [] {
    // (a1 b1, a2 b2, sign) in 1-based labels: F_{a1b1} + sign F_{a2b2} = 0
    constexpr int table[21][5] = {
        {1, 2, 3, 4, -1}, {1, 2, 5, 6, -1}, {1, 2, 7, 8, -1}, {1, 3, 2, 4, 1},
        {1, 3, 5, 7, -1}, {1, 3, 6, 8, 1},  {1, 4, 2, 3, -1}, {1, 4, 6, 7, 1},
        {1, 4, 5, 8, 1},  {1, 5, 2, 6, 1},  {1, 5, 3, 7, 1},  {1, 5, 4, 8, -1},
        {1, 6, 2, 5, -1}, {1, 6, 3, 8, -1}, {1, 6, 4, 7, -1}, {1, 7, 2, 8, 1},
        {1, 7, 3, 5, -1}, {1, 7, 4, 6, 1},  {1, 8, 2, 7, -1}, {1, 8, 3, 6, 1},
        {1, 8, 4, 5, 1},
    };
    std::array<PairRelation, 21> out;
    for (int n = 0; n < 21; ++n) {
      out[n].first = pair_index(table[n][0] - 1, table[n][1] - 1);
      out[n].second = pair_index(table[n][2] - 1, table[n][3] - 1);
      out[n].sign = table[n][4];
    }
    return out;
  }();
  return rel;
}

const DualityOperator& projectors() {
  static const DualityOperator op = [] {
    DualityOperator d;
    d.p_minus.setZero();
    for (const auto& v : set_a_basis()) d.p_minus += 0.25 * v * v.transpose();
    d.p_plus = Mat28::Identity() - d.p_minus;
    d.phi = d.p_plus - 3.0 * d.p_minus;
    return d;
  }();
  return op;
}

DualParts decompose(const CurvatureTwoForm& f) {
  const auto& op = projectors();
  DualParts parts;
  parts.minus = apply_pair_map(op.p_minus, f);
  parts.plus = f - parts.minus;
  return parts;
}

CurvatureTwoForm dagger(const CurvatureTwoForm& f) {
  const DualParts parts = decompose(f);
  return parts.plus - parts.minus;
}

std::array<double, 7> set_a_residuals(const CurvatureTwoForm& f) {
  std::array<double, 7> out{};
  const auto& basis = set_a_basis();
  for (int k = 0; k < 7; ++k) {
    Mat8 acc = Mat8::Zero();
    for (int p = 0; p < kPairs; ++p)
      if (basis[k](p) != 0.0) acc += basis[k](p) * f.f[p];
    out[k] = acc.norm();
  }
  return out;
}

std::array<double, 21> set_b_residuals(const CurvatureTwoForm& f) {
  std::array<double, 21> out{};
  const auto& rel = set_b_relations();
  for (int n = 0; n < 21; ++n) out[n] = (f.f[rel[n].first] + rel[n].sign * f.f[rel[n].second]).norm();
  return out;
}

Mat8 skew_from_pairs(const Vec28& coeffs) {
  Mat8 w = Mat8::Zero();
  for (int p = 0; p < kPairs; ++p) {
    const IndexPair pr = pair_of(p);
    w(pr.a, pr.b) = coeffs(p);
    w(pr.b, pr.a) = -coeffs(p);
  }
  return w;
}

}  // namespace bures
