#include "bures/state_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "bures/error.hpp"

namespace bures {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoundSlack = 1e-12;

const cplx kI{0.0, 1.0};

// Generators used by the Euler chain, in factor order
// (alpha, beta, gamma, theta, a, b) -> Gell-Mann index.
constexpr std::array<int, 6> kFactorGenerator = {3, 2, 3, 5, 3, 2};

Mat3c factor_exp(int generator, double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  Mat3c m = Mat3c::Zero();
  switch (generator) {
    case 3:
      m(0, 0) = std::polar(1.0, t);
      m(1, 1) = std::polar(1.0, -t);
      m(2, 2) = 1.0;
      break;
    case 2:  // i*Lambda_2 is the real rotation generator in the (1,2) plane
      m(0, 0) = c;
      m(0, 1) = s;
      m(1, 0) = -s;
      m(1, 1) = c;
      m(2, 2) = 1.0;
      break;
    case 5:  // i*Lambda_5, (1,3) plane
      m(0, 0) = c;
      m(0, 2) = s;
      m(2, 0) = -s;
      m(2, 2) = c;
      m(1, 1) = 1.0;
      break;
    default:
      throw Error(ErrorCode::invalid_argument, "unsupported Euler generator");
  }
  return m;
}

std::array<double, 6> factor_angles(const ParameterPoint& p) {
  return {p.alpha(), p.beta(), p.gamma(), p.theta(), p.a(), p.b()};
}

std::array<Mat3c, 6> factors(const ParameterPoint& p) {
  const auto angles = factor_angles(p);
  std::array<Mat3c, 6> f;
  for (std::size_t k = 0; k < 6; ++k) f[k] = factor_exp(kFactorGenerator[k], angles[k]);
  return f;
}

Mat3c diag3(const Spectrum& s) {
  Mat3c d = Mat3c::Zero();
  d(0, 0) = s.lambda1;
  d(1, 1) = s.lambda2;
  d(2, 2) = s.lambda3;
  return d;
}

}  // namespace

const DomainBox& domain_box() {
  static const DomainBox box{
      {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},
      {kPi, kPi, kPi, kPi / 2, kPi / 2, kPi / 2, kZeta1Max, kZeta2Max}};
  return box;
}

double Spectrum::min_value() const { return std::min({lambda1, lambda2, lambda3}); }

double Spectrum::min_gap() const {
  return std::min({std::abs(lambda1 - lambda2), std::abs(lambda1 - lambda3),
                   std::abs(lambda2 - lambda3)});
}

Spectrum make_spectrum(double lambda1, double lambda2) {
  Spectrum s;
  s.lambda1 = lambda1;
  s.lambda2 = lambda2;
  s.lambda3 = 1.0 - lambda1 - lambda2;
  s.e2 = lambda1 * lambda2 + lambda1 * s.lambda3 + lambda2 * s.lambda3;
  s.e3 = lambda1 * lambda2 * s.lambda3;
  return s;
}

const std::array<Mat3c, 8>& gell_mann_basis() {
  static const std::array<Mat3c, 8> basis = [] {
    std::array<Mat3c, 8> l;
    for (auto& m : l) m.setZero();
    l[0](0, 1) = l[0](1, 0) = 1.0;
    l[1](0, 1) = -kI;
    l[1](1, 0) = kI;
    l[2](0, 0) = 1.0;
    l[2](1, 1) = -1.0;
    l[3](0, 2) = l[3](2, 0) = 1.0;
    l[4](0, 2) = -kI;
    l[4](2, 0) = kI;
    l[5](1, 2) = l[5](2, 1) = 1.0;
    l[6](1, 2) = -kI;
    l[6](2, 1) = kI;
    const double r3 = 1.0 / std::sqrt(3.0);
    l[7](0, 0) = r3;
    l[7](1, 1) = r3;
    l[7](2, 2) = -2.0 * r3;
    return l;
  }();
  return basis;
}

void check_finite(const ParameterPoint& p) {
  for (std::size_t i = 0; i < kDim; ++i) {
    if (!std::isfinite(p[i])) {
      throw Error(ErrorCode::non_finite_input,
                  "coordinate " + std::string(kCoordNames[i]) + " is not finite");
    }
  }
}

void check_domain(const ParameterPoint& p) {
  check_finite(p);
  const auto& box = domain_box();
  for (std::size_t i = 0; i < kDim; ++i) {
    if (p[i] < box.lower[i] - kBoundSlack || p[i] > box.upper[i] + kBoundSlack) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "coordinate " << kCoordNames[i] << " = " << p[i] << " outside [" << box.lower[i]
          << ", " << box.upper[i] << "]";
      throw Error(ErrorCode::out_of_domain, msg.str());
    }
  }
}

void check_nondegenerate(const Spectrum& s, double threshold) {
  if (s.min_value() < threshold || s.min_gap() < threshold) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "degenerate spectrum (" << s.lambda1 << ", " << s.lambda2 << ", " << s.lambda3
        << ") at threshold " << threshold;
    throw Error(ErrorCode::degenerate_spectrum, msg.str());
  }
}

Spectrum spectrum_from_spherical(double zeta1, double zeta2) {
  if (!std::isfinite(zeta1) || !std::isfinite(zeta2)) {
    throw Error(ErrorCode::non_finite_input, "spectral angle is not finite");
  }
  if (zeta1 < -kBoundSlack || zeta1 > kZeta1Max + kBoundSlack) {
    throw Error(ErrorCode::out_of_domain, "coordinate zeta1 outside [0, arccos(3^-1/2)]");
  }
  if (zeta2 < -kBoundSlack || zeta2 > kZeta2Max + kBoundSlack) {
    throw Error(ErrorCode::out_of_domain, "coordinate zeta2 outside [0, pi/4]");
  }
  const double c1 = std::cos(zeta1);
  const double s1 = std::sin(zeta1);
  const double c2 = std::cos(zeta2);
  return make_spectrum(c1 * c1, s1 * s1 * c2 * c2);
}

Eigen::Matrix2d spectral_jacobian(double zeta1, double zeta2) {
  Eigen::Matrix2d j;
  const double s1 = std::sin(zeta1);
  j(0, 0) = -std::sin(2.0 * zeta1);
  j(0, 1) = 0.0;
  j(1, 0) = std::sin(2.0 * zeta1) * std::cos(zeta2) * std::cos(zeta2);
  j(1, 1) = -s1 * s1 * std::sin(2.0 * zeta2);
  return j;
}

Mat3c euler_unitary(const ParameterPoint& p) {
  check_finite(p);
  const auto f = factors(p);
  Mat3c u = f[0];
  for (std::size_t k = 1; k < 6; ++k) u = u * f[k];
  return u;
}

HermitianState density(const ParameterPoint& p) {
  check_domain(p);
  HermitianState st;
  st.unitary = euler_unitary(p);
  st.spectrum = spectrum_from_spherical(p.zeta1(), p.zeta2());
  st.rho = st.unitary * diag3(st.spectrum) * st.unitary.adjoint();
  return st;
}

EigenbasisTangents eigenbasis_tangents(const ParameterPoint& p) {
  check_finite(p);
  const auto f = factors(p);
  const auto& gm = gell_mann_basis();

  // suffix[k] = f[k] f[k+1] ... f[5]
  std::array<Mat3c, 7> suffix;
  suffix[6] = Mat3c::Identity();
  for (int k = 5; k >= 0; --k) suffix[k] = f[k] * suffix[k + 1];

  // U^dagger dU/d(angle_k) = S_k^dagger (i L_k) S_k
  std::array<Mat3c, 6> gen;
  for (std::size_t k = 0; k < 6; ++k) {
    const Mat3c& g = gm[static_cast<std::size_t>(kFactorGenerator[k] - 1)];
    gen[k] = suffix[k].adjoint() * (kI * g) * suffix[k];
  }

  EigenbasisTangents t;
  t.unitary = suffix[0];
  const double c1 = std::cos(p.zeta1());
  const double s1 = std::sin(p.zeta1());
  const double c2 = std::cos(p.zeta2());
  t.spectrum = make_spectrum(c1 * c1, s1 * s1 * c2 * c2);
  const Mat3c d = diag3(t.spectrum);

  auto commutator = [&d](const Mat3c& a) -> Mat3c {
    Mat3c w = a * d - d * a;
    for (int k = 0; k < 3; ++k) w(k, k) = 0.0;
    return w;
  };
  t.w[kAlpha] = commutator(gen[0]);
  t.w[kBeta] = commutator(gen[1]);
  t.w[kTau] = commutator(gen[2]);
  t.w[kTheta] = commutator(gen[3]);
  t.w[kA] = commutator(gen[4] - gen[2]);
  t.w[kB] = commutator(gen[5]);

  const Eigen::Matrix2d jac = spectral_jacobian(p.zeta1(), p.zeta2());
  for (int z = 0; z < 2; ++z) {
    Mat3c w = Mat3c::Zero();
    w(0, 0) = jac(0, z);
    w(1, 1) = jac(1, z);
    w(2, 2) = -jac(0, z) - jac(1, z);
    t.w[static_cast<std::size_t>(kZeta1 + z)] = w;
  }
  return t;
}

std::array<Mat3c, kDim> density_partials(const ParameterPoint& p) {
  check_domain(p);
  const EigenbasisTangents t = eigenbasis_tangents(p);
  std::array<Mat3c, kDim> out;
  for (std::size_t x = 0; x < kDim; ++x) out[x] = t.unitary * t.w[x] * t.unitary.adjoint();
  return out;
}

BlochState bloch_density2(double r, double theta_s, double phi_s) {
  if (!std::isfinite(r) || !std::isfinite(theta_s) || !std::isfinite(phi_s)) {
    throw Error(ErrorCode::non_finite_input, "Bloch coordinate is not finite");
  }
  if (!(r > 0.0 && r < 1.0)) {
    throw Error(ErrorCode::out_of_domain, "Bloch radius r must lie in (0, 1)");
  }
  Mat2c sx, sy, sz;
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, -kI, kI, 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  auto dot_sigma = [&](double nx, double ny, double nz) -> Mat2c {
    return nx * sx + ny * sy + nz * sz;
  };
  const double st = std::sin(theta_s), ct = std::cos(theta_s);
  const double sp = std::sin(phi_s), cp = std::cos(phi_s);

  BlochState b;
  b.rho = 0.5 * (Mat2c::Identity() + r * dot_sigma(st * cp, st * sp, ct));
  b.partials[0] = 0.5 * dot_sigma(st * cp, st * sp, ct);
  b.partials[1] = 0.5 * r * dot_sigma(ct * cp, ct * sp, -st);
  b.partials[2] = 0.5 * r * dot_sigma(-st * sp, st * cp, 0.0);
  return b;
}

}  // namespace bures
