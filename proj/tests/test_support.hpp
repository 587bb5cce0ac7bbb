#pragma once

#include <random>

#include <Eigen/Eigenvalues>

#include "bures/state_space.hpp"
#include "bures/types.hpp"

namespace testing {

using bures::cplx;
using bures::Mat3c;

inline bures::ParameterPoint generic_point() {
  return {0.7, 1.1, 0.4, 0.9, 0.6, 0.5, 0.62, 0.33};
}

// Random point away from the boundary of the box.
inline bures::ParameterPoint random_interior(std::mt19937_64& rng) {
  const auto& box = bures::domain_box();
  bures::ParameterPoint p;
  for (int i = 0; i < bures::kDim; ++i) {
    const double lo = box.lower[i], hi = box.upper[i];
    std::uniform_real_distribution<double> u(lo + 0.1 * (hi - lo), hi - 0.1 * (hi - lo));
    p[static_cast<std::size_t>(i)] = u(rng);
  }
  return p;
}

// exp(i t H) for Hermitian H through its eigendecomposition.
inline Mat3c expi(const Mat3c& h, double t) {
  Eigen::SelfAdjointEigenSolver<Mat3c> es(h);
  Eigen::Vector3cd d;
  for (int k = 0; k < 3; ++k) d(k) = std::exp(cplx(0.0, t * es.eigenvalues()(k)));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

inline Mat3c sqrtm(const Mat3c& h) {
  Eigen::SelfAdjointEigenSolver<Mat3c> es(h);
  Eigen::Vector3cd d;
  for (int k = 0; k < 3; ++k) d(k) = std::sqrt(std::max(es.eigenvalues()(k), 0.0));
  return es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
}

// Squared Bures distance 2(1 - sqrt F).
inline double bures_distance2(const Mat3c& a, const Mat3c& b) {
  const Mat3c s = sqrtm(a);
  const Mat3c m = s * b * s;
  const double fid = sqrtm(0.5 * (m + m.adjoint())).trace().real();
  return 2.0 * (1.0 - fid);
}

}  // namespace testing
