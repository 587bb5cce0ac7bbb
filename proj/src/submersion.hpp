#pragma once

#include <array>

#include "bures/curvature.hpp"
#include "bures/state_space.hpp"
#include "bures/types.hpp"

namespace bures::detail {

// Curvature of the Bures metric as the base of the Riemannian submersion
// W -> W W^dagger from the unit sphere of 3x3 amplitudes, evaluated on a
// metric-orthonormal tangent basis B_m (eigenbasis Hermitian traceless
// matrices).
struct OrthonormalCurvature {
  Rank4<kDim> rm;  // rm(m,n,p,q) = <R(B_m,B_n)B_p, B_q>
  Mat8 coords;     // coords(m,i) = <B_m, d/dx_i>, so g = coords^T coords
  std::array<Mat3c, kDim> basis;
};

// w[i] = U^dagger (d rho/dx_i) U.
OrthonormalCurvature orthonormal_curvature(const std::array<Mat3c, kDim>& w, const Spectrum& s,
                                           double calibration);

// out(i,j,k,l) = sum t(x,y,z,u) a(x,i) a(y,j) a(z,k) a(u,l)
Rank4<kDim> contract4(const Rank4<kDim>& t, const Mat8& a);

}  // namespace bures::detail
