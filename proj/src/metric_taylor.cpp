#include <cmath>

#include "bures/bures_metric.hpp"
#include "bures/curvature.hpp"
#include "bures/error.hpp"
#include "taylor_jet.hpp"

namespace bures {
namespace {

using detail::Taylor2;
using M3 = std::array<std::array<Taylor2, 3>, 3>;

M3 zero3() { return M3{}; }

M3 mul(const M3& a, const M3& b) {
  M3 r = zero3();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

M3 adjoint(const M3& a) {
  M3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[j][i].conj();
  return r;
}

// exp(i L_gen t), same closed forms as the double-precision chain.
M3 factor(int gen, const Taylor2& t) {
  M3 m = zero3();
  switch (gen) {
    case 3:
      m[0][0] = detail::expi(t);
      m[1][1] = detail::expi(-t);
      m[2][2] = 1.0;
      break;
    case 2: {
      const Taylor2 c = detail::cos(t), s = detail::sin(t);
      m[0][0] = c;
      m[0][1] = s;
      m[1][0] = -s;
      m[1][1] = c;
      m[2][2] = 1.0;
      break;
    }
    default: {
      const Taylor2 c = detail::cos(t), s = detail::sin(t);
      m[0][0] = c;
      m[0][2] = s;
      m[2][0] = -s;
      m[2][2] = c;
      m[1][1] = 1.0;
      break;
    }
  }
  return m;
}

// S^dagger (i L_gen) S for the three generators used by the chain.
M3 conjugated_generator(int gen, const M3& s) {
  const Taylor2::C i{0.0, 1.0};
  M3 g = zero3();
  switch (gen) {
    case 3:
      g[0][0] = i;
      g[1][1] = -i;
      break;
    case 2:
      g[0][1] = 1.0;
      g[1][0] = -1.0;
      break;
    default:
      g[0][2] = 1.0;
      g[2][0] = -1.0;
      break;
  }
  return mul(adjoint(s), mul(g, s));
}

template <int N, typename Jet>
void unpack(const Jet& acc, int i, int j, MetricJetT<N>& jet) {
  jet.g(i, j) = jet.g(j, i) = acc.v.real();
  for (int k = 0; k < N; ++k) {
    jet.dg[k](i, j) = jet.dg[k](j, i) = acc.d[k].real();
    for (int l = 0; l < N; ++l) {
      const double v = acc.h[detail::hess_index(k, l)].real();
      jet.ddg[k][l](i, j) = jet.ddg[k][l](j, i) = v;
    }
  }
}

}  // namespace

MetricJet metric_jet_exact_unchecked(const ParameterPoint& p, const GeometryOptions& opts);

MetricJet metric_jet_exact(const ParameterPoint& p, const GeometryOptions& opts) {
  check_domain(p);
  return metric_jet_exact_unchecked(p, opts);
}

// Guard only, no box check: Codazzi stencils step just outside the box.
MetricJet metric_jet_exact_unchecked(const ParameterPoint& p, const GeometryOptions& opts) {
  check_finite(p);
  {
    const double c1 = std::cos(p.zeta1()), s1 = std::sin(p.zeta1()), c2 = std::cos(p.zeta2());
    check_nondegenerate(make_spectrum(c1 * c1, s1 * s1 * c2 * c2), opts.degeneracy_threshold);
  }

  std::array<Taylor2, kDim> x;
  for (int k = 0; k < kDim; ++k) x[k] = Taylor2::variable(k, p[static_cast<std::size_t>(k)]);

  const std::array<int, 6> gens = {3, 2, 3, 5, 3, 2};
  const std::array<Taylor2, 6> angles = {x[kAlpha], x[kBeta], x[kTau] - x[kA],
                                         x[kTheta], x[kA],    x[kB]};
  std::array<M3, 7> suffix;
  suffix[6] = zero3();
  for (int k = 0; k < 3; ++k) suffix[6][k][k] = 1.0;
  for (int k = 5; k >= 0; --k) suffix[k] = mul(factor(gens[k], angles[k]), suffix[k + 1]);

  std::array<M3, 6> gen;
  for (int k = 0; k < 6; ++k) gen[k] = conjugated_generator(gens[k], suffix[k]);

  const Taylor2 c1 = detail::cos(x[kZeta1]), s1 = detail::sin(x[kZeta1]);
  const Taylor2 c2 = detail::cos(x[kZeta2]);
  const Taylor2 sin2z1 = detail::sin(2.0 * x[kZeta1]);
  const Taylor2 sin2z2 = detail::sin(2.0 * x[kZeta2]);
  std::array<Taylor2, 3> lam;
  lam[0] = c1 * c1;
  lam[1] = s1 * s1 * c2 * c2;
  lam[2] = Taylor2(1.0) - lam[0] - lam[1];

  std::array<M3, kDim> w;
  auto commutator = [&lam](const M3& a) {
    M3 r = zero3();
    for (int k = 0; k < 3; ++k)
      for (int l = 0; l < 3; ++l)
        if (k != l) r[k][l] = a[k][l] * (lam[l] - lam[k]);
    return r;
  };
  w[kAlpha] = commutator(gen[0]);
  w[kBeta] = commutator(gen[1]);
  w[kTau] = commutator(gen[2]);
  w[kTheta] = commutator(gen[3]);
  M3 a_gen = gen[4];
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) a_gen[k][l] -= gen[2][k][l];
  w[kA] = commutator(a_gen);
  w[kB] = commutator(gen[5]);

  // d lambda / d zeta
  const Taylor2 dl1_dz1 = -sin2z1;
  const Taylor2 dl2_dz1 = sin2z1 * c2 * c2;
  const Taylor2 dl2_dz2 = -(s1 * s1 * sin2z2);
  w[kZeta1] = zero3();
  w[kZeta1][0][0] = dl1_dz1;
  w[kZeta1][1][1] = dl2_dz1;
  w[kZeta1][2][2] = -(dl1_dz1 + dl2_dz1);
  w[kZeta2] = zero3();
  w[kZeta2][1][1] = dl2_dz2;
  w[kZeta2][2][2] = -dl2_dz2;

  std::array<std::array<Taylor2, 3>, 3> inv_sum;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) inv_sum[k][l] = detail::reciprocal(lam[k] + lam[l]);

  MetricJet jet;
  for (int i = 0; i < kDim; ++i) {
    for (int j = i; j < kDim; ++j) {
      Taylor2 acc;
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) acc += w[i][k][l] * w[j][l][k] * inv_sum[k][l];
      unpack<kDim>(acc.real() * opts.calibration, i, j, jet);
    }
  }
  return jet;
}

MetricJetT<3> bloch_metric_jet_exact(double r, double theta_s, double phi_s,
                                     const GeometryOptions& opts) {
  bloch_density2(r, theta_s, phi_s);
  const Taylor2::C i{0.0, 1.0};
  const Taylor2 rr = Taylor2::variable(0, r);
  const Taylor2 th = Taylor2::variable(1, theta_s);
  const Taylor2 ph = Taylor2::variable(2, phi_s);

  const std::array<Taylor2, 2> lam = {0.5 * (Taylor2(1.0) + rr), 0.5 * (Taylor2(1.0) - rr)};
  if (std::min(lam[0].v.real(), lam[1].v.real()) < opts.degeneracy_threshold ||
      std::abs(r) < opts.degeneracy_threshold) {
    throw Error(ErrorCode::degenerate_spectrum, "degenerate two-level spectrum");
  }

  // Eigenvectors of n.sigma: columns (cos t/2, e^{i phi} sin t/2) and
  // (-e^{-i phi} sin t/2, cos t/2).
  const Taylor2 ch = detail::cos(0.5 * th), sh = detail::sin(0.5 * th);
  const Taylor2 ep = detail::expi(ph), em = detail::expi(-ph);
  using M2 = std::array<std::array<Taylor2, 2>, 2>;
  M2 v;
  v[0][0] = ch;
  v[1][0] = ep * sh;
  v[0][1] = -(em * sh);
  v[1][1] = ch;

  // d rho / d(r, theta, phi) as (dn . sigma) / 2 with n the unit Bloch vector
  const Taylor2 st = detail::sin(th), ct = detail::cos(th);
  const Taylor2 sp = detail::sin(ph), cp = detail::cos(ph);
  auto pauli = [&](const Taylor2& nx, const Taylor2& ny, const Taylor2& nz) {
    M2 m;
    m[0][0] = 0.5 * nz;
    m[1][1] = -0.5 * nz;
    m[0][1] = 0.5 * (nx - i * ny);
    m[1][0] = 0.5 * (nx + i * ny);
    return m;
  };
  std::array<M2, 3> dr = {pauli(st * cp, st * sp, ct), pauli(rr * ct * cp, rr * ct * sp, -(rr * st)),
                          pauli(-(rr * st * sp), rr * st * cp, Taylor2(0.0))};

  auto mul2 = [](const M2& a, const M2& b) {
    M2 out{};
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int z = 0; z < 2; ++z) out[x][y] += a[x][z] * b[z][y];
    return out;
  };
  M2 vh;
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) vh[x][y] = v[y][x].conj();

  std::array<M2, 3> w;
  for (int x = 0; x < 3; ++x) w[x] = mul2(vh, mul2(dr[x], v));

  std::array<std::array<Taylor2, 2>, 2> inv_sum;
  for (int k = 0; k < 2; ++k)
    for (int l = 0; l < 2; ++l) inv_sum[k][l] = detail::reciprocal(lam[k] + lam[l]);

  MetricJetT<3> jet;
  for (int a = 0; a < 3; ++a)
    for (int b = a; b < 3; ++b) {
      Taylor2 acc;
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) acc += w[a][k][l] * w[b][l][k] * inv_sum[k][l];
      unpack<3>(acc.real() * opts.calibration, a, b, jet);
    }
  return jet;
}

}  // namespace bures
