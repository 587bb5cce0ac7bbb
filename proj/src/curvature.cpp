#include "bures/curvature.hpp"

#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "bures/bures_metric.hpp"
#include "bures/error.hpp"
#include "submersion.hpp"

namespace bures {
namespace {

template <int N>
struct Stencil {
  std::array<MatN<N>, N> dg;
  std::array<std::array<MatN<N>, N>, N> ddg;
};

template <int N>
Stencil<N> central_differences(const MetricFunction<N>& fn, const std::array<double, N>& x,
                               const MatN<N>& g0, double h) {
  auto at = [&](int k, double sk, int l, double sl) {
    std::array<double, N> y = x;
    y[static_cast<std::size_t>(k)] += sk * h;
    if (l >= 0) y[static_cast<std::size_t>(l)] += sl * h;
    return fn(y);
  };

  Stencil<N> s;
  for (int k = 0; k < N; ++k) {
    const MatN<N> plus = at(k, 1.0, -1, 0.0);
    const MatN<N> minus = at(k, -1.0, -1, 0.0);
    s.dg[k] = (plus - minus) / (2.0 * h);
    s.ddg[k][k] = (plus - 2.0 * g0 + minus) / (h * h);
  }
  for (int k = 0; k < N; ++k) {
    for (int l = k + 1; l < N; ++l) {
      const MatN<N> pp = at(k, 1.0, l, 1.0);
      const MatN<N> pm = at(k, 1.0, l, -1.0);
      const MatN<N> mp = at(k, -1.0, l, 1.0);
      const MatN<N> mm = at(k, -1.0, l, -1.0);
      s.ddg[k][l] = (pp - pm - mp + mm) / (4.0 * h * h);
      s.ddg[l][k] = s.ddg[k][l];
    }
  }
  return s;
}

template <int N>
double g_norm2_rank3(const std::vector<double>& t, const MatN<N>& gi) {
  // |T|^2 = T_ijk T_abc g^ia g^jb g^kc
  auto at = [&t](int i, int j, int k) { return t[static_cast<std::size_t>((i * N + j) * N + k)]; };
  std::vector<double> raised(t.size(), 0.0);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int c = 0; c < N; ++c) {
        double acc = 0.0;
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k) acc += gi(a, i) * gi(b, j) * gi(c, k) * at(i, j, k);
        raised[static_cast<std::size_t>((a * N + b) * N + c)] = acc;
      }
  double s = 0.0;
  for (std::size_t n = 0; n < t.size(); ++n) s += t[n] * raised[n];
  return s;
}

}  // namespace

template <int N>
double Rank4<N>::norm() const {
  double s = 0.0;
  for (double v : v_) s += v * v;
  return std::sqrt(s);
}

template <int N>
MetricJetT<N> metric_jet_generic(const MetricFunction<N>& fn, const std::array<double, N>& x,
                                 double step, bool richardson) {
  if (!(step > 0.0)) throw Error(ErrorCode::invalid_argument, "finite-difference step must be > 0");
  MetricJetT<N> jet;
  jet.g = fn(x);
  const Stencil<N> coarse = central_differences<N>(fn, x, jet.g, step);
  if (!richardson) {
    jet.dg = coarse.dg;
    jet.ddg = coarse.ddg;
    return jet;
  }
  const Stencil<N> fine = central_differences<N>(fn, x, jet.g, 0.5 * step);
  for (int k = 0; k < N; ++k) {
    jet.dg[k] = (4.0 * fine.dg[k] - coarse.dg[k]) / 3.0;
    for (int l = 0; l < N; ++l) jet.ddg[k][l] = (4.0 * fine.ddg[k][l] - coarse.ddg[k][l]) / 3.0;
  }
  return jet;
}

template <int N>
RiemannT<N> riemann_from_jet(const MetricJetT<N>& jet) {
  RiemannT<N> out;
  out.g = 0.5 * (jet.g + jet.g.transpose());
  out.g_inv = out.g.inverse();
  out.g_inv = 0.5 * (out.g_inv + out.g_inv.transpose());
  const MatN<N>& gi = out.g_inv;

  // Gamma_{m jk} = (d_j g_mk + d_k g_mj - d_m g_jk) / 2
  std::array<MatN<N>, N> low;
  for (int m = 0; m < N; ++m)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        low[m](j, k) = 0.5 * (jet.dg[j](m, k) + jet.dg[k](m, j) - jet.dg[m](j, k));

  for (int i = 0; i < N; ++i) {
    out.christoffel[i].setZero();
    for (int m = 0; m < N; ++m) out.christoffel[i] += gi(i, m) * low[m];
  }

  // R_ijkl = d_k Gamma_{ilj} - d_l Gamma_{ikj} - Gamma_{mik} Gamma^m_{lj} + Gamma_{mil} Gamma^m_{kj}
  // dlow[l][m](j,k) = d_l Gamma_{mjk}
  std::array<std::array<MatN<N>, N>, N> dlow;
  for (int l = 0; l < N; ++l)
    for (int m = 0; m < N; ++m)
      for (int j = 0; j < N; ++j)
        for (int k = 0; k < N; ++k)
          dlow[l][m](j, k) =
              0.5 * (jet.ddg[j][l](m, k) + jet.ddg[k][l](m, j) - jet.ddg[m][l](j, k));

  const auto& gam = out.christoffel;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        for (int l = 0; l < N; ++l) {
          double v = dlow[k][i](l, j) - dlow[l][i](k, j);
          for (int m = 0; m < N; ++m) v += low[m](l, i) * gam[m](k, j) - low[m](k, i) * gam[m](l, j);
          out.riemann(i, j, k, l) = v;
        }

  out.ricci.setZero();
  for (int j = 0; j < N; ++j)
    for (int l = 0; l < N; ++l)
      for (int k = 0; k < N; ++k)
        for (int i = 0; i < N; ++i) out.ricci(j, l) += gi(k, i) * out.riemann(i, j, k, l);
  out.ricci = 0.5 * (out.ricci + out.ricci.transpose());
  out.scalar = (gi.cwiseProduct(out.ricci)).sum();
  return out;
}

template <int N>
double codazzi_residual_generic(const CurvatureFunction<N>& fn, const std::array<double, N>& x,
                                double ricci_step, bool richardson) {
  auto ricci_at = [&](int coord, double shift) {
    std::array<double, N> y = x;
    y[static_cast<std::size_t>(coord)] += shift;
    return fn(y).ricci;
  };
  const RiemannT<N> base = fn(x);

  // dric[i](j,k) = d_i Ric_jk
  std::array<MatN<N>, N> dric;
  for (int i = 0; i < N; ++i) {
    const double h = ricci_step;
    const MatN<N> coarse = (ricci_at(i, h) - ricci_at(i, -h)) / (2.0 * h);
    if (richardson) {
      const MatN<N> fine = (ricci_at(i, 0.5 * h) - ricci_at(i, -0.5 * h)) / h;
      dric[i] = (4.0 * fine - coarse) / 3.0;
    } else {
      dric[i] = coarse;
    }
  }

  const auto& gam = base.christoffel;
  const MatN<N>& ric = base.ricci;
  // nric[(i*N+j)*N+k] = nabla_i Ric_jk
  std::vector<double> nric(static_cast<std::size_t>(N * N * N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k) {
        double v = dric[i](j, k);
        for (int m = 0; m < N; ++m) v -= gam[m](i, j) * ric(m, k) + gam[m](i, k) * ric(j, m);
        nric[static_cast<std::size_t>((i * N + j) * N + k)] = v;
      }
  std::vector<double> t(nric.size());
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      for (int k = 0; k < N; ++k)
        t[static_cast<std::size_t>((i * N + j) * N + k)] =
            nric[static_cast<std::size_t>((i * N + j) * N + k)] -
            nric[static_cast<std::size_t>((j * N + i) * N + k)];

  const double t_norm = std::sqrt(std::max(0.0, g_norm2_rank3<N>(t, base.g_inv)));
  const double nabla_norm = std::sqrt(std::max(0.0, g_norm2_rank3<N>(nric, base.g_inv)));
  const MatN<N> ric_up = base.g_inv * ric * base.g_inv;
  const double ric_norm = std::sqrt(std::max(0.0, ric_up.cwiseProduct(ric).sum()));
  const double scale = std::max(nabla_norm, ric_norm);
  return scale > 0.0 ? t_norm / scale : 0.0;
}

template class Rank4<3>;
template class Rank4<8>;
template MetricJetT<3> metric_jet_generic<3>(const MetricFunction<3>&, const std::array<double, 3>&,
                                             double, bool);
template MetricJetT<8> metric_jet_generic<8>(const MetricFunction<8>&, const std::array<double, 8>&,
                                             double, bool);
template RiemannT<3> riemann_from_jet<3>(const MetricJetT<3>&);
template RiemannT<8> riemann_from_jet<8>(const MetricJetT<8>&);
template double codazzi_residual_generic<3>(const CurvatureFunction<3>&,
                                            const std::array<double, 3>&, double, bool);
template double codazzi_residual_generic<8>(const CurvatureFunction<8>&,
                                            const std::array<double, 8>&, double, bool);

MetricJet metric_jet_exact_unchecked(const ParameterPoint& p, const GeometryOptions& opts);

namespace {

MetricFunction<kDim> bures_metric_fn(const GeometryOptions& opts) {
  return [opts](const std::array<double, kDim>& y) { return metric_tensor(ParameterPoint(y), opts); };
}

MetricFunction<3> bloch_metric_fn(const GeometryOptions& opts) {
  return [opts](const std::array<double, 3>& y) { return bloch_metric(y[0], y[1], y[2], opts); };
}

}  // namespace

MetricJet metric_jet(const ParameterPoint& p, const GeometryOptions& opts) {
  check_domain(p);
  check_nondegenerate(spectrum_from_spherical(p.zeta1(), p.zeta2()), opts.degeneracy_threshold);
  const auto fn = bures_metric_fn(opts);
  try {
    return metric_jet_generic<kDim>(fn, p.x, opts.fd_step, opts.richardson);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::degenerate_spectrum) throw;
  }
  return metric_jet_generic<kDim>(fn, p.x, 0.25 * opts.fd_step, opts.richardson);
}

MetricJet curvature_jet(const ParameterPoint& p, const GeometryOptions& opts) {
  return opts.jet_method == JetMethod::exact ? metric_jet_exact(p, opts) : metric_jet(p, opts);
}

namespace {

// Replaces the tensor part of r with the submersion curvature at q.
void apply_submersion(const ParameterPoint& q, const GeometryOptions& opts, RiemannAtPoint& r) {
  const EigenbasisTangents t = eigenbasis_tangents(q);
  const detail::OrthonormalCurvature oc = detail::orthonormal_curvature(t.w, t.spectrum, opts.calibration);
  const Rank4<kDim> c = detail::contract4(oc.rm, oc.coords);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k)
        for (int l = 0; l < kDim; ++l) r.riemann(i, j, k, l) = c(k, l, j, i);
  Mat8 ric = Mat8::Zero();
  for (int j = 0; j < kDim; ++j)
    for (int l = 0; l < kDim; ++l)
      for (int k = 0; k < kDim; ++k) ric(j, l) += oc.rm(k, l, j, k);
  ric = 0.5 * (ric + ric.transpose());
  r.scalar = ric.trace();
  r.ricci = oc.coords.transpose() * ric * oc.coords;
}

}  // namespace

RiemannAtPoint riemann(const ParameterPoint& p, const GeometryOptions& opts) {
  if (opts.curvature_method == CurvatureMethod::christoffel) {
    return riemann_from_jet<kDim>(curvature_jet(p, opts));
  }
  const MetricAtPoint m = metric(p, opts);
  RiemannAtPoint r = riemann_from_jet<kDim>(curvature_jet(p, opts));
  r.g = m.g;
  r.g_inv = m.g_inv;
  apply_submersion(p, opts, r);
  return r;
}

double scalar_curvature_closed_form(const Spectrum& s) {
  const double denom = s.e3 - s.e2;
  if (denom == 0.0) throw Error(ErrorCode::degenerate_spectrum, "e3 equals e2");
  return 2.0 * (28.0 * s.e3 - 49.0 * s.e2 - 9.0) / denom;
}

double codazzi_residual(const ParameterPoint& p, const GeometryOptions& opts) {
  check_domain(p);
  check_nondegenerate(spectrum_from_spherical(p.zeta1(), p.zeta2()), opts.degeneracy_threshold);
  // Stencil points may leave the box by one step; only the guard applies there.
  CurvatureFunction<kDim> fn = [opts](const std::array<double, kDim>& y) {
    const ParameterPoint q(y);
    RiemannAtPoint r =
        opts.jet_method == JetMethod::exact
            ? riemann_from_jet<kDim>(metric_jet_exact_unchecked(q, opts))
            : riemann_from_jet<kDim>(metric_jet_generic<kDim>(bures_metric_fn(opts), y,
                                                              opts.fd_step, opts.richardson));
    if (opts.curvature_method == CurvatureMethod::submersion) apply_submersion(q, opts, r);
    return r;
  };
  return codazzi_residual_generic<kDim>(fn, p.x, opts.codazzi_step, opts.richardson);
}

CurvatureTwoForm CurvatureTwoForm::zero() {
  CurvatureTwoForm z;
  for (auto& m : z.f) m.setZero();
  z.frame.setIdentity();
  return z;
}

double CurvatureTwoForm::norm() const {
  double s = 0.0;
  for (const auto& m : f) s += m.squaredNorm();
  return std::sqrt(s);
}

CurvatureTwoForm CurvatureTwoForm::operator+(const CurvatureTwoForm& o) const {
  CurvatureTwoForm r = *this;
  for (int n = 0; n < kPairs; ++n) r.f[n] += o.f[n];
  return r;
}

CurvatureTwoForm CurvatureTwoForm::operator-(const CurvatureTwoForm& o) const {
  CurvatureTwoForm r = *this;
  for (int n = 0; n < kPairs; ++n) r.f[n] -= o.f[n];
  return r;
}

Mat8 vielbein(const Mat8& g, FrameChoice choice) {
  if (choice == FrameChoice::cholesky) {
    Eigen::LLT<Mat8> llt(g);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorCode::singular_metric, "metric is not positive definite");
    }
    const Mat8 l = llt.matrixL();
    return l.transpose().inverse();
  }
  Eigen::SelfAdjointEigenSolver<Mat8> eig(g);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw Error(ErrorCode::singular_metric, "metric is not positive definite");
  }
  return eig.eigenvectors() * eig.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
         eig.eigenvectors().transpose();
}

CurvatureTwoForm frame_curvature(const RiemannAtPoint& r, FrameChoice choice) {
  const Mat8 e = vielbein(r.g, choice);

  // Contract one slot at a time: t <- sum_x t(.., x, ..) E(x, a).
  Rank4<kDim> a = r.riemann;
  Rank4<kDim> b;
  for (int slot = 0; slot < 4; ++slot) {
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k)
          for (int l = 0; l < kDim; ++l) {
            double v = 0.0;
            for (int x = 0; x < kDim; ++x) {
              switch (slot) {
                case 0: v += a(x, j, k, l) * e(x, i); break;
                case 1: v += a(i, x, k, l) * e(x, j); break;
                case 2: v += a(i, j, x, l) * e(x, k); break;
                default: v += a(i, j, k, x) * e(x, l); break;
              }
            }
            b(i, j, k, l) = v;
          }
    std::swap(a, b);
  }

  CurvatureTwoForm out;
  out.frame = e;
  for (int n = 0; n < kPairs; ++n) {
    const IndexPair pr = pair_of(n);
    Mat8 m;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) m(i, j) = a(i, j, pr.a, pr.b);
    out.f[n] = 0.5 * (m - m.transpose());
  }
  return out;
}

namespace {

CurvatureTwoForm assemble_two_form(const Rank4<kDim>& c, const Mat8& frame) {
  // c(a,b,j,i) = R(e_a, e_b, e_j, e_i) in the R(X,Y)Z,W slot order.
  CurvatureTwoForm out;
  out.frame = frame;
  for (int n = 0; n < kPairs; ++n) {
    const IndexPair pr = pair_of(n);
    Mat8 m;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) m(i, j) = c(pr.a, pr.b, j, i);
    out.f[n] = 0.5 * (m - m.transpose());
  }
  return out;
}

}  // namespace

CurvatureTwoForm frame_curvature(const ParameterPoint& p, const GeometryOptions& opts,
                                 FrameChoice choice) {
  if (opts.curvature_method == CurvatureMethod::christoffel) {
    return frame_curvature(riemann(p, opts), choice);
  }
  metric(p, opts);
  const EigenbasisTangents t = eigenbasis_tangents(p);
  const detail::OrthonormalCurvature oc = detail::orthonormal_curvature(t.w, t.spectrum, opts.calibration);

  // Frame vectors expressed on the orthonormal basis: q = coords * E.
  Mat8 q, e;
  if (choice == FrameChoice::cholesky) {
    Eigen::HouseholderQR<Mat8> qr(oc.coords);
    q = qr.householderQ();
    Mat8 r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < kDim; ++k) {
      if (r(k, k) < 0.0) {
        q.col(k) *= -1.0;
        r.row(k) *= -1.0;
      }
    }
    e = r.triangularView<Eigen::Upper>().solve(Mat8::Identity());
  } else {
    Eigen::JacobiSVD<Mat8> svd(oc.coords, Eigen::ComputeFullU | Eigen::ComputeFullV);
    q = svd.matrixU() * svd.matrixV().transpose();
    e = svd.matrixV() * svd.singularValues().cwiseInverse().asDiagonal() * svd.matrixV().transpose();
  }
  return assemble_two_form(detail::contract4(oc.rm, q), e);
}

namespace {

RiemannT<3> bloch_curvature(const std::array<double, 3>& y, const GeometryOptions& opts) {
  if (opts.jet_method == JetMethod::exact) {
    return riemann_from_jet<3>(bloch_metric_jet_exact(y[0], y[1], y[2], opts));
  }
  return riemann_from_jet<3>(metric_jet_generic<3>(bloch_metric_fn(opts), y, opts.fd_step,
                                                   opts.richardson));
}

}  // namespace

RiemannT<3> bloch_riemann(double r, double theta_s, double phi_s, const GeometryOptions& opts) {
  bloch_density2(r, theta_s, phi_s);
  return bloch_curvature({r, theta_s, phi_s}, opts);
}

double bloch_codazzi_residual(double r, double theta_s, double phi_s, const GeometryOptions& opts) {
  bloch_density2(r, theta_s, phi_s);
  CurvatureFunction<3> fn = [opts](const std::array<double, 3>& y) {
    return bloch_curvature(y, opts);
  };
  return codazzi_residual_generic<3>(fn, {r, theta_s, phi_s}, opts.codazzi_step, opts.richardson);
}

}  // namespace bures
