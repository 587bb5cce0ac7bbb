#include "bures/bures_metric.hpp"

#include <cmath>

#include <Eigen/SVD>

#include "bures/error.hpp"

namespace bures {
namespace {

constexpr int kAngles = 6;

template <int N, typename MatC>
Eigen::Matrix<double, N, N> spectral_metric(const std::array<MatC, N>& w,
                                            const std::array<double, MatC::RowsAtCompileTime>& lam,
                                            double c) {
  constexpr int M = MatC::RowsAtCompileTime;
  Eigen::Matrix<double, M, M> inv_sum;
  for (int k = 0; k < M; ++k)
    for (int l = 0; l < M; ++l) inv_sum(k, l) = 1.0 / (lam[k] + lam[l]);

  Eigen::Matrix<double, N, N> g;
  for (int x = 0; x < N; ++x) {
    for (int y = x; y < N; ++y) {
      double acc = 0.0;
      for (int k = 0; k < M; ++k)
        for (int l = 0; l < M; ++l) acc += (w[x](k, l) * w[y](l, k)).real() * inv_sum(k, l);
      g(x, y) = g(y, x) = c * acc;
    }
  }
  return g;
}

}  // namespace

Mat8 metric_tensor(const ParameterPoint& p, const GeometryOptions& opts) {
  const EigenbasisTangents t = eigenbasis_tangents(p);
  check_nondegenerate(t.spectrum, opts.degeneracy_threshold);
  return spectral_metric<kDim>(t.w, t.spectrum.values(), opts.calibration);
}

MetricAtPoint metric(const ParameterPoint& p, const GeometryOptions& opts) {
  check_domain(p);
  const EigenbasisTangents t = eigenbasis_tangents(p);
  check_nondegenerate(t.spectrum, opts.degeneracy_threshold);
  MetricAtPoint m;
  m.spectrum = t.spectrum;
  m.g = spectral_metric<kDim>(t.w, t.spectrum.values(), opts.calibration);

  // Angle block as J^T J with J the components on a metric-orthonormal basis
  // of off-diagonal Hermitian matrices; inverting through J halves the
  // condition number exponent.
  using Mat6 = Eigen::Matrix<double, kAngles, kAngles>;
  const auto lam = t.spectrum.values();
  constexpr int kOff[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  Mat6 jac;
  for (int q = 0; q < 3; ++q) {
    const int k = kOff[q][0], l = kOff[q][1];
    const double f = std::sqrt(2.0 * opts.calibration / (lam[k] + lam[l]));
    for (int x = 0; x < kAngles; ++x) {
      jac(2 * q, x) = f * t.w[x](k, l).real();
      jac(2 * q + 1, x) = f * t.w[x](k, l).imag();
    }
  }
  Eigen::JacobiSVD<Mat6> svd(jac, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Eigen::Matrix2d spectral_block = m.g.bottomRightCorner<2, 2>();
  const double det2 = spectral_block.determinant();
  const double lo = std::min(sv.minCoeff() * sv.minCoeff(), spectral_block.diagonal().minCoeff());
  const double hi = std::max(sv.maxCoeff() * sv.maxCoeff(), spectral_block.diagonal().maxCoeff());
  if (!(lo > 0.0) || !(det2 > 0.0) || hi / lo > kMaxConditionNumber) {
    throw Error(ErrorCode::singular_metric, "Bures metric is singular or ill-conditioned at point");
  }

  m.g_inv.setZero();
  const Mat6 v = svd.matrixV();
  Mat6 inv6 = v * sv.array().square().inverse().matrix().asDiagonal() * v.transpose();
  m.g_inv.topLeftCorner<kAngles, kAngles>() = 0.5 * (inv6 + inv6.transpose());
  m.g_inv.bottomRightCorner<2, 2>() = spectral_block.inverse();
  m.sqrt_det = sv.prod() * std::sqrt(det2);
  return m;
}

SubexpressionsAB closed_form_ab(double l1, double l2) {
  SubexpressionsAB r;
  r.a = 3.0 - 7.0 * l1 + 4.0 * l1 * l1 + 7.0 * (-1.0 + l1) * l2 + 4.0 * l2 * l2;
  r.b = 4.0 * l1 * l1 * l1 + l1 * l1 * (-9.0 + 5.0 * l2) + l1 * (-1.0 + l2) * (-7.0 + 5.0 * l2) +
        (-1.0 + l2) * (2.0 + l2 * (-5.0 + 4.0 * l2));
  return r;
}

SubexpressionsAB closed_form_ab(const Spectrum& s) { return closed_form_ab(s.lambda1, s.lambda2); }

ClosedFormEntries closed_form_entries(const ParameterPoint& p, const GeometryOptions& opts) {
  check_domain(p);
  const Spectrum s = spectrum_from_spherical(p.zeta1(), p.zeta2());
  check_nondegenerate(s, opts.degeneracy_threshold);
  const double l1 = s.lambda1, l2 = s.lambda2;
  const auto [a, b] = closed_form_ab(s);
  const double numer = b + a * (l1 - l2) * std::cos(2.0 * p.b());

  ClosedFormEntries e;
  e.g_theta_theta = -numer / (2.0 * (-1.0 + l1) * (-1.0 + l2));
  const double st = std::sin(p.theta());
  const double d1 = -1.0 + 2.0 * l1 + l2;
  const double d2 = -1.0 + l1 + 2.0 * l2;
  e.ginv_beta_beta = -numer / (st * st) / (8.0 * d1 * d1 * d2 * d2);
  const double sb = std::sin(p.beta()), cb = std::cos(p.beta());
  e.ginv_alpha_alpha = e.ginv_beta_beta / (sb * sb) / (cb * cb) / 4.0;
  return e;
}

double volume_element(const ParameterPoint& p, const GeometryOptions& opts) {
  return metric(p, opts).sqrt_det;
}

double closed_form_volume(const ParameterPoint& p, const GeometryOptions& opts) {
  check_domain(p);
  const Spectrum s = spectrum_from_spherical(p.zeta1(), p.zeta2());
  check_nondegenerate(s, opts.degeneracy_threshold);
  const double l1 = s.lambda1, l2 = s.lambda2, l3 = s.lambda3;
  const double st = std::sin(p.theta());
  const double angular = std::sin(2.0 * p.b()) * std::sin(2.0 * p.beta()) * st * st *
                         std::sin(2.0 * p.theta()) / (8.0 * std::sqrt(l1 * l2 * l3));
  const double gaps = (l1 - l2) * (l1 - l3) * (l2 - l3);
  const double spectral = gaps * gaps / ((l1 + l2) * (l1 + l3) * (l2 + l3));
  const double jac = std::abs(spectral_jacobian(p.zeta1(), p.zeta2()).determinant());
  return std::abs(angular) * spectral * jac;
}

Eigen::Matrix3d bloch_metric(double r, double theta_s, double phi_s, const GeometryOptions& opts) {
  const BlochState st = bloch_density2(r, theta_s, phi_s);
  Eigen::SelfAdjointEigenSolver<Mat2c> eig(st.rho);
  const Mat2c v = eig.eigenvectors();
  const std::array<double, 2> lam = {eig.eigenvalues()(0), eig.eigenvalues()(1)};
  if (std::min(lam[0], lam[1]) < opts.degeneracy_threshold ||
      std::abs(lam[0] - lam[1]) < opts.degeneracy_threshold) {
    throw Error(ErrorCode::degenerate_spectrum, "degenerate two-level spectrum");
  }
  std::array<Mat2c, 3> w;
  for (std::size_t x = 0; x < 3; ++x) w[x] = v.adjoint() * st.partials[x] * v;
  return spectral_metric<3>(w, lam, opts.calibration);
}

}  // namespace bures
