#pragma once

// Second-order truncated Taylor arithmetic in the eight manifold coordinates.
// Coefficients are complex so unitary factors can be carried directly; the
// input coordinates themselves are real.

#include <array>
#include <complex>

namespace bures::detail {

inline constexpr int kVars = 8;
inline constexpr int kHess = kVars * (kVars + 1) / 2;

constexpr int hess_index(int k, int l) {
  if (k > l) {
    const int t = k;
    k = l;
    l = t;
  }
  return k * kVars - k * (k - 1) / 2 + (l - k);
}

struct Taylor2 {
  using C = std::complex<double>;
  C v{};
  std::array<C, kVars> d{};
  std::array<C, kHess> h{};

  Taylor2() = default;
  Taylor2(C value) : v(value) {}  // NOLINT(google-explicit-constructor)
  Taylor2(double value) : v(value) {}  // NOLINT(google-explicit-constructor)

  static Taylor2 variable(int k, double value) {
    Taylor2 t(value);
    t.d[static_cast<std::size_t>(k)] = 1.0;
    return t;
  }

  Taylor2& operator+=(const Taylor2& o) {
    v += o.v;
    for (int k = 0; k < kVars; ++k) d[k] += o.d[k];
    for (int n = 0; n < kHess; ++n) h[n] += o.h[n];
    return *this;
  }
  Taylor2& operator-=(const Taylor2& o) {
    v -= o.v;
    for (int k = 0; k < kVars; ++k) d[k] -= o.d[k];
    for (int n = 0; n < kHess; ++n) h[n] -= o.h[n];
    return *this;
  }
  Taylor2& operator*=(C s) {
    v *= s;
    for (auto& x : d) x *= s;
    for (auto& x : h) x *= s;
    return *this;
  }

  friend Taylor2 operator+(Taylor2 a, const Taylor2& b) { return a += b; }
  friend Taylor2 operator-(Taylor2 a, const Taylor2& b) { return a -= b; }
  friend Taylor2 operator-(Taylor2 a) { return a *= -1.0; }
  friend Taylor2 operator*(Taylor2 a, C s) { return a *= s; }
  friend Taylor2 operator*(C s, Taylor2 a) { return a *= s; }
  friend Taylor2 operator*(Taylor2 a, double s) { return a *= C(s); }
  friend Taylor2 operator*(double s, Taylor2 a) { return a *= C(s); }

  friend Taylor2 operator*(const Taylor2& a, const Taylor2& b) {
    Taylor2 r;
    r.v = a.v * b.v;
    for (int k = 0; k < kVars; ++k) r.d[k] = a.v * b.d[k] + b.v * a.d[k];
    int n = 0;
    for (int k = 0; k < kVars; ++k)
      for (int l = k; l < kVars; ++l, ++n)
        r.h[n] = a.v * b.h[n] + b.v * a.h[n] + a.d[k] * b.d[l] + a.d[l] * b.d[k];
    return r;
  }

  // f(u) given f(u.v), f'(u.v), f''(u.v)
  Taylor2 apply(C f0, C f1, C f2) const {
    Taylor2 r;
    r.v = f0;
    for (int k = 0; k < kVars; ++k) r.d[k] = f1 * d[k];
    int n = 0;
    for (int k = 0; k < kVars; ++k)
      for (int l = k; l < kVars; ++l, ++n) r.h[n] = f1 * h[n] + f2 * d[k] * d[l];
    return r;
  }

  Taylor2 conj() const {
    Taylor2 r;
    r.v = std::conj(v);
    for (int k = 0; k < kVars; ++k) r.d[k] = std::conj(d[k]);
    for (int n = 0; n < kHess; ++n) r.h[n] = std::conj(h[n]);
    return r;
  }

  Taylor2 real() const {
    Taylor2 r;
    r.v = v.real();
    for (int k = 0; k < kVars; ++k) r.d[k] = d[k].real();
    for (int n = 0; n < kHess; ++n) r.h[n] = h[n].real();
    return r;
  }
};

inline Taylor2 cos(const Taylor2& u) {
  const auto c = std::cos(u.v), s = std::sin(u.v);
  return u.apply(c, -s, -c);
}

inline Taylor2 sin(const Taylor2& u) {
  const auto c = std::cos(u.v), s = std::sin(u.v);
  return u.apply(s, c, -s);
}

// exp(i u)
inline Taylor2 expi(const Taylor2& u) {
  const std::complex<double> i{0.0, 1.0};
  const auto e = std::exp(i * u.v);
  return u.apply(e, i * e, -e);
}

inline Taylor2 reciprocal(const Taylor2& u) {
  const auto r = 1.0 / u.v;
  return u.apply(r, -r * r, 2.0 * r * r * r);
}

}  // namespace bures::detail
