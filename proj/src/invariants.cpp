#include "bures/invariants.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "bures/error.hpp"

namespace bures {
namespace {

struct IndexTables {
  std::array<std::vector<FormIndex>, kDim + 1> by_degree;
  std::array<int, 256> ordinal{};
};

const IndexTables& tables() {
  static const IndexTables t = [] {
    IndexTables out;
    for (int m = 0; m < 256; ++m) {
      const int p = std::popcount(static_cast<unsigned>(m));
      out.ordinal[m] = static_cast<int>(out.by_degree[p].size());
      out.by_degree[p].push_back(static_cast<FormIndex>(m));
    }
    return out;
  }();
  return t;
}

void check_degree(int degree) {
  if (degree < 0 || degree > kDim) {
    throw Error(ErrorCode::degree_overflow, "form degree outside 0..8");
  }
}

}  // namespace

int shuffle_sign(FormIndex j, FormIndex k) {
  int inversions = 0;
  for (int a = 0; a < kDim; ++a) {
    if (!(j >> a & 1)) continue;
    // elements of K below a come after a in the concatenation
    inversions += std::popcount(static_cast<unsigned>(k & ((1u << a) - 1u)));
  }
  return (inversions & 1) ? -1 : 1;
}

std::span<const FormIndex> form_indices(int degree) {
  check_degree(degree);
  return tables().by_degree[static_cast<std::size_t>(degree)];
}

MatrixForm::MatrixForm(int degree) : degree_(degree) {
  check_degree(degree);
  components_.assign(form_indices(degree).size(), Mat8::Zero());
}

MatrixForm MatrixForm::from_two_form(const CurvatureTwoForm& f) {
  MatrixForm m(2);
  for (int p = 0; p < kPairs; ++p) {
    const IndexPair pr = pair_of(p);
    m[static_cast<FormIndex>((1u << pr.a) | (1u << pr.b))] = f.f[p];
  }
  return m;
}

Mat8& MatrixForm::operator[](FormIndex index) {
  return components_[static_cast<std::size_t>(tables().ordinal[index])];
}

const Mat8& MatrixForm::operator[](FormIndex index) const {
  return components_[static_cast<std::size_t>(tables().ordinal[index])];
}

MatrixForm wedge(const MatrixForm& f, const MatrixForm& g) {
  const int p = f.degree(), q = g.degree();
  if (p + q > kDim) throw Error(ErrorCode::degree_overflow, "wedge degree exceeds 8");
  MatrixForm out(p + q);
  for (FormIndex total : form_indices(p + q)) {
    Mat8 acc = Mat8::Zero();
    // enumerate submasks of total with popcount p
    for (unsigned j = total;; j = (j - 1) & total) {
      if (std::popcount(j) == p) {
        const auto jj = static_cast<FormIndex>(j);
        const auto kk = static_cast<FormIndex>(total & ~j);
        const Mat8& fj = f[jj];
        const Mat8& gk = g[kk];
        if (shuffle_sign(jj, kk) > 0) {
          acc.noalias() += fj * gk;
        } else {
          acc.noalias() -= fj * gk;
        }
      }
      if (j == 0) break;
    }
    out[total] = acc;
  }
  return out;
}

double inner(const MatrixForm& f, const MatrixForm& g) {
  if (f.degree() != g.degree()) throw Error(ErrorCode::degree_mismatch, "inner product of unequal degrees");
  double s = 0.0;
  for (FormIndex i : form_indices(f.degree())) s += f[i].cwiseProduct(g[i]).sum();
  return s;
}

Mat8 trace_form_square(const MatrixForm& f) {
  if (f.degree() != 2) throw Error(ErrorCode::degree_mismatch, "tr F^2 needs a 2-form");
  Mat8 m = Mat8::Zero();
  for (FormIndex i : form_indices(2)) m.noalias() += f[i] * f[i];
  return -2.0 * m;
}

InvariantRow invariant_row(const CurvatureTwoForm& f) {
  const MatrixForm f1 = MatrixForm::from_two_form(f);
  const MatrixForm f2 = wedge(f1, f1);
  const MatrixForm f3 = wedge(f2, f1);
  const MatrixForm f4 = wedge(f2, f2);
  const Mat8 tr = trace_form_square(f1);

  InvariantRow row;
  row.ff = inner(f1, f1);
  row.ff2 = row.ff * row.ff;
  row.f2f2 = inner(f2, f2);
  row.trf2 = tr.squaredNorm();
  row.f3f3_23 = std::pow(inner(f3, f3), 2.0 / 3.0);
  row.f4f4_12 = std::sqrt(inner(f4, f4));
  return row;
}

ScalarForm ScalarForm::constant(double value) {
  ScalarForm s;
  s.c_[0] = value;
  return s;
}

ScalarForm& ScalarForm::operator+=(const ScalarForm& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

ScalarForm& ScalarForm::operator-=(const ScalarForm& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

ScalarForm& ScalarForm::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

ScalarForm operator*(const ScalarForm& a, const ScalarForm& b) {
  std::array<int, 256> na{}, nb{};
  int ca = 0, cb = 0;
  for (int m = 0; m < 256; ++m) {
    if (a.c_[m] != 0.0) na[ca++] = m;
    if (b.c_[m] != 0.0) nb[cb++] = m;
  }
  ScalarForm out;
  for (int x = 0; x < ca; ++x) {
    const int ma = na[x];
    for (int y = 0; y < cb; ++y) {
      const int mb = nb[y];
      if (ma & mb) continue;
      const int sign = shuffle_sign(static_cast<FormIndex>(ma), static_cast<FormIndex>(mb));
      out.c_[ma | mb] += sign * a.c_[ma] * b.c_[mb];
    }
  }
  return out;
}

double ScalarForm::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

FormMatrix curvature_form_matrix(const CurvatureTwoForm& f) {
  FormMatrix out;
  for (int p = 0; p < kPairs; ++p) {
    const IndexPair pr = pair_of(p);
    const auto mask = static_cast<FormIndex>((1u << pr.a) | (1u << pr.b));
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) out[i][j][mask] = f.f[p](i, j);
  }
  return out;
}

std::array<ScalarForm, 9> sigma_invariants(const FormMatrix& f) {
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int m = 0; m < 256; ++m)
        if (f[i][j][static_cast<FormIndex>(m)] != 0.0 && std::popcount(static_cast<unsigned>(m)) != 2) {
          throw Error(ErrorCode::degree_mismatch, "sigma invariants need a matrix of 2-forms");
        }

  std::array<ScalarForm, 9> sigma;
  sigma[0] = ScalarForm::constant(1.0);
  // A product of more than four 2-forms vanishes in eight dimensions.
  for (int k = 1; k <= 4; ++k) {
    for (FormIndex subset : form_indices(k)) {
      std::array<int, 4> rows{};
      int n = 0;
      for (int a = 0; a < kDim; ++a)
        if (subset >> a & 1) rows[n++] = a;
      std::array<int, 4> perm = {0, 1, 2, 3};
      do {
        int inversions = 0;
        for (int x = 0; x < k; ++x)
          for (int y = x + 1; y < k; ++y)
            if (perm[x] > perm[y]) ++inversions;
        ScalarForm term = ScalarForm::constant(inversions % 2 ? -1.0 : 1.0);
        for (int x = 0; x < k; ++x) term = term * f[rows[x]][rows[perm[x]]];
        sigma[k] += term;
      } while (std::next_permutation(perm.begin(), perm.begin() + k));
    }
  }
  return sigma;
}

}  // namespace bures
