#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <string_view>

#include <Eigen/Dense>

namespace bures {

using cplx = std::complex<double>;
using Mat2c = Eigen::Matrix<cplx, 2, 2>;
using Mat3c = Eigen::Matrix<cplx, 3, 3>;
using Mat8 = Eigen::Matrix<double, 8, 8>;
using Vec8 = Eigen::Matrix<double, 8, 1>;

inline constexpr int kDim = 8;

// Coordinate slots, in the fixed order used by every 8x8 array in the library.
enum Coord : int { kAlpha = 0, kTau, kA, kBeta, kB, kTheta, kZeta1, kZeta2 };

inline constexpr std::array<std::string_view, kDim> kCoordNames = {
    "alpha", "tau", "a", "beta", "b", "theta", "zeta1", "zeta2"};

// A point on the manifold of 3x3 density matrices.  gamma = tau - a is the
// third SU(3) Euler angle.
struct ParameterPoint {
  std::array<double, kDim> x{};

  ParameterPoint() = default;
  explicit ParameterPoint(const std::array<double, kDim>& coords) : x(coords) {}
  ParameterPoint(double alpha, double tau, double a, double beta, double b, double theta,
                 double zeta1, double zeta2)
      : x{alpha, tau, a, beta, b, theta, zeta1, zeta2} {}

  double& operator[](std::size_t i) { return x[i]; }
  double operator[](std::size_t i) const { return x[i]; }

  double alpha() const { return x[kAlpha]; }
  double tau() const { return x[kTau]; }
  double a() const { return x[kA]; }
  double beta() const { return x[kBeta]; }
  double b() const { return x[kB]; }
  double theta() const { return x[kTheta]; }
  double zeta1() const { return x[kZeta1]; }
  double zeta2() const { return x[kZeta2]; }
  double gamma() const { return x[kTau] - x[kA]; }

  ParameterPoint shifted(int coord, double h) const {
    ParameterPoint p = *this;
    p.x[static_cast<std::size_t>(coord)] += h;
    return p;
  }
};

enum class JetMethod {
  // second-order forward-mode derivatives of the analytic metric
  exact,
  // central differences of the metric with optional Richardson refinement
  finite_difference,
};

// Numerical knobs shared by the geometry pipeline.
// submersion: algebraic curvature on a metric-orthonormal basis.
// christoffel: Christoffel symbols and their derivatives from the metric jet.
enum class CurvatureMethod {
  submersion,
  christoffel,
};

struct GeometryOptions {
  // Points with min(lambda) or min |lambda_i - lambda_j| below this are rejected.
  double degeneracy_threshold = 1e-8;
  // Global constant of the spectral Bures formula.
  double calibration = 0.5;
  // Base finite-difference step for metric jets.
  double fd_step = 1e-3;
  // One Richardson refinement (h, h/2) on top of the central differences.
  bool richardson = true;
  // How metric derivatives feeding the curvature are obtained.
  JetMethod jet_method = JetMethod::exact;
  CurvatureMethod curvature_method = CurvatureMethod::submersion;
  // Step for differentiating the Ricci tensor in the Codazzi residual.
  double codazzi_step = 1e-2;
};

// Ordered index pairs (a < b) over 0..7, numbered 0..27 lexicographically.
inline constexpr int kPairs = 28;

struct IndexPair {
  int a = 0;
  int b = 0;
};

constexpr int pair_index(int a, int b) {
  // rows before a contribute (7 - r) pairs each
  return a * (2 * kDim - a - 1) / 2 + (b - a - 1);
}

constexpr IndexPair pair_of(int index) {
  for (int a = 0; a < kDim; ++a) {
    const int row = kDim - a - 1;
    if (index < row) return {a, a + 1 + index};
    index -= row;
  }
  return {-1, -1};
}

}  // namespace bures
