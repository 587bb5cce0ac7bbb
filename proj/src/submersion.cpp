#include "submersion.hpp"

#include <cmath>

namespace bures::detail {
namespace {

constexpr std::array<std::array<int, 2>, 3> kOffDiagonal = {{{0, 1}, {0, 2}, {1, 2}}};

// Two orthonormal vectors spanning the complement of the unit vector n.
std::array<Eigen::Vector3d, 2> complement(const Eigen::Vector3d& n) {
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(n(i)) < std::abs(n(k))) k = i;
  Eigen::Vector3d t1 = -n(k) * n;
  t1(k) += 1.0;
  t1.normalize();
  return {t1, n.cross(t1)};
}

// Solves rho X + X rho = m with rho = diag(lam).
Mat3c lyapunov(const Mat3c& m, const std::array<double, 3>& lam) {
  Mat3c x;
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 3; ++l) x(k, l) = m(k, l) / (lam[k] + lam[l]);
  return x;
}

}  // namespace

OrthonormalCurvature orthonormal_curvature(const std::array<Mat3c, kDim>& w, const Spectrum& s,
                                           double calibration) {
  const std::array<double, 3> lam = s.values();
  const double c = calibration;
  Eigen::Vector3d root(std::sqrt(lam[0]), std::sqrt(lam[1]), std::sqrt(lam[2]));
  const auto t = complement(root / root.norm());

  OrthonormalCurvature out;
  for (int q = 0; q < 3; ++q) {
    const auto [k, l] = kOffDiagonal[static_cast<std::size_t>(q)];
    const double f = std::sqrt((lam[k] + lam[l]) / (2 * c));
    Mat3c re = Mat3c::Zero(), im = Mat3c::Zero();
    re(k, l) = re(l, k) = f;
    im(k, l) = cplx(0.0, f);
    im(l, k) = cplx(0.0, -f);
    out.basis[static_cast<std::size_t>(2 * q)] = re;
    out.basis[static_cast<std::size_t>(2 * q + 1)] = im;
    for (int i = 0; i < kDim; ++i) {
      const cplx z = w[static_cast<std::size_t>(i)](k, l) / f;
      out.coords(2 * q, i) = z.real();
      out.coords(2 * q + 1, i) = z.imag();
    }
  }
  for (int r = 0; r < 2; ++r) {
    Mat3c d = Mat3c::Zero();
    for (int k = 0; k < 3; ++k) d(k, k) = t[static_cast<std::size_t>(r)](k) * std::sqrt(2 * lam[k] / c);
    out.basis[static_cast<std::size_t>(6 + r)] = d;
    for (int i = 0; i < kDim; ++i) {
      double v = 0.0;
      for (int k = 0; k < 3; ++k) {
        v += t[static_cast<std::size_t>(r)](k) * std::sqrt(c / (2 * lam[k])) *
             w[static_cast<std::size_t>(i)](k, k).real();
      }
      out.coords(6 + r, i) = v;
    }
  }

  // Horizontal lifts G_m W at W = diag(sqrt(lam)), with rho G_m + G_m rho = B_m.
  const Eigen::DiagonalMatrix<cplx, 3> amp(root.cast<cplx>());
  const Eigen::DiagonalMatrix<cplx, 3> rho(Eigen::Vector3d(lam[0], lam[1], lam[2]).cast<cplx>());
  std::array<Mat3c, kDim> gen;
  for (int m = 0; m < kDim; ++m) gen[static_cast<std::size_t>(m)] = lyapunov(out.basis[static_cast<std::size_t>(m)], lam);
  Mat8 gbar;
  for (int m = 0; m < kDim; ++m)
    for (int n = 0; n < kDim; ++n) {
      const Mat3c hm = gen[static_cast<std::size_t>(m)] * amp;
      const Mat3c hn = gen[static_cast<std::size_t>(n)] * amp;
      gbar(m, n) = (hm.adjoint() * hn).trace().real();
    }

  // A_{B_m} B_n = W Xi_mn, rho Xi + Xi rho = W [G_n, G_m] W.
  std::array<Mat3c, kPairs> xi;
  for (int p = 0; p < kPairs; ++p) {
    const IndexPair pr = pair_of(p);
    const Mat3c& gm = gen[static_cast<std::size_t>(pr.a)];
    const Mat3c& gn = gen[static_cast<std::size_t>(pr.b)];
    xi[static_cast<std::size_t>(p)] = lyapunov(amp * (gn * gm - gm * gn) * amp, lam);
  }
  Eigen::Matrix<double, kPairs, kPairs> gram;
  for (int p = 0; p < kPairs; ++p)
    for (int q = p; q < kPairs; ++q) {
      gram(p, q) = (xi[static_cast<std::size_t>(p)].adjoint() * rho * xi[static_cast<std::size_t>(q)]).trace().real();
      gram(q, p) = gram(p, q);
    }
  auto aa = [&](int x, int y, int z, int h) {
    if (x == y || z == h) return 0.0;
    const double sign = (x < y ? 1.0 : -1.0) * (z < h ? 1.0 : -1.0);
    return sign * gram(pair_index(std::min(x, y), std::max(x, y)), pair_index(std::min(z, h), std::max(z, h)));
  };

  const double scale = 2 * c;
  for (int x = 0; x < kDim; ++x)
    for (int y = 0; y < kDim; ++y)
      for (int z = 0; z < kDim; ++z)
        for (int h = 0; h < kDim; ++h) {
          const double v = gbar(y, z) * gbar(x, h) - gbar(x, z) * gbar(y, h) - 2 * aa(x, y, z, h) +
                           aa(y, z, x, h) - aa(x, z, y, h);
          out.rm(x, y, z, h) = scale * v;
        }
  return out;
}

Rank4<kDim> contract4(const Rank4<kDim>& t, const Mat8& a) {
  Rank4<kDim> cur = t;
  Rank4<kDim> next;
  for (int slot = 0; slot < 4; ++slot) {
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k)
          for (int l = 0; l < kDim; ++l) {
            double v = 0.0;
            for (int x = 0; x < kDim; ++x) {
              switch (slot) {
                case 0: v += cur(x, j, k, l) * a(x, i); break;
                case 1: v += cur(i, x, k, l) * a(x, j); break;
                case 2: v += cur(i, j, x, l) * a(x, k); break;
                default: v += cur(i, j, k, x) * a(x, l); break;
              }
            }
            next(i, j, k, l) = v;
          }
    std::swap(cur, next);
  }
  return cur;
}

}  // namespace bures::detail
