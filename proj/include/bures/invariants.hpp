#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "bures/curvature.hpp"
#include "bures/types.hpp"

namespace bures {

// Strictly increasing multi-index over 0..7, stored as a bit mask.
using FormIndex = std::uint8_t;

// Sign of the permutation that sorts the concatenation (J, K) of two
// disjoint increasing multi-indices.
int shuffle_sign(FormIndex j, FormIndex k);

// Increasing multi-indices of a given degree, in ascending mask order.
std::span<const FormIndex> form_indices(int degree);

// p-form in eight dimensions with 8x8 matrix coefficients.
class MatrixForm {
 public:
  explicit MatrixForm(int degree);

  static MatrixForm from_two_form(const CurvatureTwoForm& f);

  int degree() const { return degree_; }
  std::size_t size() const { return components_.size(); }

  Mat8& operator[](FormIndex index);
  const Mat8& operator[](FormIndex index) const;

 private:
  int degree_;
  std::vector<Mat8> components_;
};

// Component on I: sum over splits I = J u K (|J| = p) of
// shuffle_sign(J, K) * F_J * G_K.
MatrixForm wedge(const MatrixForm& f, const MatrixForm& g);

// sum_I trace(F_I^T G_I)
double inner(const MatrixForm& f, const MatrixForm& g);

// -2 sum_{a<b} F_ab F_ab
Mat8 trace_form_square(const MatrixForm& f);

struct InvariantRow {
  double ff = 0.0;       // (F,F)
  double ff2 = 0.0;      // (F,F)^2
  double f2f2 = 0.0;     // (F^2,F^2)
  double trf2 = 0.0;     // (tr F^2, tr F^2)
  double f3f3_23 = 0.0;  // (F^3,F^3)^{2/3}
  double f4f4_12 = 0.0;  // (F^4,F^4)^{1/2}
};

InvariantRow invariant_row(const CurvatureTwoForm& f);

// Scalar-coefficient form: one coefficient per multi-index mask.
class ScalarForm {
 public:
  ScalarForm() { c_.fill(0.0); }
  static ScalarForm constant(double value);

  double& operator[](FormIndex index) { return c_[index]; }
  double operator[](FormIndex index) const { return c_[index]; }

  ScalarForm& operator+=(const ScalarForm& o);
  ScalarForm& operator-=(const ScalarForm& o);
  ScalarForm& operator*=(double s);
  friend ScalarForm operator+(ScalarForm a, const ScalarForm& b) { return a += b; }
  friend ScalarForm operator-(ScalarForm a, const ScalarForm& b) { return a -= b; }
  friend ScalarForm operator*(double s, ScalarForm a) { return a *= s; }

  // wedge product
  friend ScalarForm operator*(const ScalarForm& a, const ScalarForm& b);

  double max_abs() const;

 private:
  std::array<double, 256> c_;
};

// 8x8 matrix whose entries are scalar 2-forms.
using FormMatrix = std::array<std::array<ScalarForm, kDim>, kDim>;

// F_ij = sum_{a<b} f_ab(i,j) e^a ^ e^b
FormMatrix curvature_form_matrix(const CurvatureTwoForm& f);

// Coefficients sigma_0..sigma_8 of det(I + tF), by principal-minor expansion.
std::array<ScalarForm, 9> sigma_invariants(const FormMatrix& f);

}  // namespace bures
