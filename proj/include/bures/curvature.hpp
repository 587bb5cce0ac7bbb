#pragma once

#include <array>
#include <functional>
#include <vector>

#include "bures/state_space.hpp"
#include "bures/types.hpp"

namespace bures {

template <int N>
using MatN = Eigen::Matrix<double, N, N>;

template <int N>
using MetricFunction = std::function<MatN<N>(const std::array<double, N>&)>;

// Metric with its first and second coordinate derivatives:
// dg[k](i,j) = d_k g_ij, ddg[k][l](i,j) = d_k d_l g_ij.
template <int N>
struct MetricJetT {
  MatN<N> g;
  std::array<MatN<N>, N> dg;
  std::array<std::array<MatN<N>, N>, N> ddg;
};

// Dense rank-4 array, row-major in (i, j, k, l).
template <int N>
class Rank4 {
 public:
  Rank4() : v_(static_cast<std::size_t>(N * N * N * N), 0.0) {}

  double& operator()(int i, int j, int k, int l) { return v_[offset(i, j, k, l)]; }
  double operator()(int i, int j, int k, int l) const { return v_[offset(i, j, k, l)]; }

  double norm() const;

 private:
  static std::size_t offset(int i, int j, int k, int l) {
    return static_cast<std::size_t>(((i * N + j) * N + k) * N + l);
  }
  std::vector<double> v_;
};

template <int N>
struct RiemannT {
  MatN<N> g;
  MatN<N> g_inv;
  // christoffel[i](j,k) = Gamma^i_{jk}
  std::array<MatN<N>, N> christoffel;
  // Fully covariant R_{ijkl}.
  Rank4<N> riemann;
  MatN<N> ricci;
  double scalar = 0.0;
};

// Central differences of a metric function.  With Richardson enabled the
// step-h and step-h/2 stencils are combined to cancel the O(h^2) term.
template <int N>
MetricJetT<N> metric_jet_generic(const MetricFunction<N>& metric_fn, const std::array<double, N>& x,
                                 double step, bool richardson);

// Christoffel symbols, R^i_{jkl} = d_k Gamma^i_{lj} - d_l Gamma^i_{kj}
//   + Gamma^i_{km} Gamma^m_{lj} - Gamma^i_{lm} Gamma^m_{kj},
// lowered on the first slot; Ric_{jl} = R^k_{jkl}, scalar = g^{jl} Ric_{jl}.
template <int N>
RiemannT<N> riemann_from_jet(const MetricJetT<N>& jet);

template <int N>
using CurvatureFunction = std::function<RiemannT<N>(const std::array<double, N>&)>;

// Normalized Codazzi residual |T|_g / max(|nabla Ric|_g, |Ric|_g) with
// T_ijk = nabla_i Ric_jk - nabla_j Ric_ik.  d Ric comes from central
// differences of the curvature function (Richardson-refined when asked).
template <int N>
double codazzi_residual_generic(const CurvatureFunction<N>& curvature_fn,
                                const std::array<double, N>& x, double ricci_step,
                                bool richardson);


using MetricJet = MetricJetT<kDim>;
using RiemannAtPoint = RiemannT<kDim>;

// Jet of the three-level Bures metric by central differences of
// metric_tensor().  Retries once with a quarter step when a stencil point
// trips the degeneracy guard.
MetricJet metric_jet(const ParameterPoint& p, const GeometryOptions& opts = {});

// Same jet by second-order forward-mode differentiation of the analytic
// metric; exact up to rounding.
MetricJet metric_jet_exact(const ParameterPoint& p, const GeometryOptions& opts = {});

// The jet selected by opts.jet_method.
MetricJet curvature_jet(const ParameterPoint& p, const GeometryOptions& opts = {});

RiemannAtPoint riemann(const ParameterPoint& p, const GeometryOptions& opts = {});

// 2 (28 e3 - 49 e2 - 9) / (e3 - e2)
double scalar_curvature_closed_form(const Spectrum& s);

double codazzi_residual(const ParameterPoint& p, const GeometryOptions& opts = {});

// Curvature two-form in an orthonormal frame: f[pair(a,b)](i,j) = R_{ijab}
// with all four indices converted by the vielbein.
struct CurvatureTwoForm {
  std::array<Mat8, kPairs> f;
  Mat8 frame;

  static CurvatureTwoForm zero();
  double norm() const;
  CurvatureTwoForm operator+(const CurvatureTwoForm& o) const;
  CurvatureTwoForm operator-(const CurvatureTwoForm& o) const;
};

enum class FrameChoice {
  // E = (L^T)^{-1} with g = L L^T in the fixed coordinate order
  cholesky,
  // E = g^{-1/2}
  symmetric,
};

Mat8 vielbein(const Mat8& g, FrameChoice choice = FrameChoice::cholesky);

CurvatureTwoForm frame_curvature(const RiemannAtPoint& r,
                                 FrameChoice choice = FrameChoice::cholesky);
CurvatureTwoForm frame_curvature(const ParameterPoint& p, const GeometryOptions& opts = {},
                                 FrameChoice choice = FrameChoice::cholesky);

// Two-level analog in Bloch coordinates (r, theta_s, phi_s).  The jet follows
// opts.jet_method like the three-level pipeline.
MetricJetT<3> bloch_metric_jet_exact(double r, double theta_s, double phi_s,
                                     const GeometryOptions& opts = {});
RiemannT<3> bloch_riemann(double r, double theta_s, double phi_s,
                          const GeometryOptions& opts = {});
double bloch_codazzi_residual(double r, double theta_s, double phi_s,
                              const GeometryOptions& opts = {});

}  // namespace bures
