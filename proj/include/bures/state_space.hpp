#pragma once

#include <array>
#include <numbers>

#include "bures/types.hpp"

namespace bures {

// Upper edges of the coordinate box.  zeta1 runs up to arccos(3^{-1/2}), the
// fully mixed corner where lambda_1 = 1/3.
inline const double kZeta1Max = 0.95531661812450927816;  // arccos(1/sqrt(3))
inline constexpr double kZeta2Max = std::numbers::pi / 4.0;

struct DomainBox {
  std::array<double, kDim> lower;
  std::array<double, kDim> upper;
};

const DomainBox& domain_box();

// Density-matrix eigenvalues in the order they are placed on the diagonal.
// They are not sorted: inside the coordinate box lambda_2 may exceed lambda_1.
struct Spectrum {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda3 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;

  std::array<double, 3> values() const { return {lambda1, lambda2, lambda3}; }
  double min_value() const;
  double min_gap() const;
};

Spectrum make_spectrum(double lambda1, double lambda2);

struct HermitianState {
  Mat3c rho;
  Mat3c unitary;
  Spectrum spectrum;
};

// Gell-Mann matrices Lambda_1..Lambda_8 (index 0..7).
const std::array<Mat3c, 8>& gell_mann_basis();

// Throws OutOfDomain naming the first offending coordinate, NonFiniteInput
// for NaN/inf.
void check_domain(const ParameterPoint& p);
void check_finite(const ParameterPoint& p);

// Throws DegenerateSpectrum when an eigenvalue or a gap falls below threshold.
void check_nondegenerate(const Spectrum& s, double threshold);

Spectrum spectrum_from_spherical(double zeta1, double zeta2);

// d(lambda1, lambda2) / d(zeta1, zeta2), columns indexed by zeta.
Eigen::Matrix2d spectral_jacobian(double zeta1, double zeta2);

// exp(i L3 alpha) exp(i L2 beta) exp(i L3 gamma) exp(i L5 theta) exp(i L3 a) exp(i L2 b)
Mat3c euler_unitary(const ParameterPoint& p);

HermitianState density(const ParameterPoint& p);

// d rho / d x for the eight coordinates, in coordinate order.
std::array<Mat3c, kDim> density_partials(const ParameterPoint& p);

// Eigenbasis components of the partials, W_x = U^dagger (d rho / d x) U.
// Angle components are commutators [U^dagger dU/dx, diag(lambda)] and have an
// exactly zero diagonal; spectral components are exactly diagonal.  No domain
// check is applied, so finite-difference stencils may use it near the edges.
struct EigenbasisTangents {
  Mat3c unitary;
  Spectrum spectrum;
  std::array<Mat3c, kDim> w;
};
EigenbasisTangents eigenbasis_tangents(const ParameterPoint& p);

// Two-level state on the Bloch ball, rho = (I + r n.sigma) / 2, with partials
// with respect to (r, theta_s, phi_s).
struct BlochState {
  Mat2c rho;
  std::array<Mat2c, 3> partials;
};
BlochState bloch_density2(double r, double theta_s, double phi_s);

}  // namespace bures
