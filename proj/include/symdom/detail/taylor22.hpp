#pragma once

#include <array>

#include "symdom/common.hpp"

namespace symdom::detail {

/// Bivariate Taylor polynomial in (s, t), truncated at degree 2 in each
/// variable. Arithmetic on these propagates exact mixed partials up to
/// d^2_s d^2_t through rational and logarithmic expressions.
struct Taylor22 {
  // c[a][b] multiplies s^a t^b
  std::array<std::array<Complex, 3>, 3> c{};

  static Taylor22 constant(Complex v) {
    Taylor22 x;
    x.c[0][0] = v;
    return x;
  }

  Complex operator()(int a, int b) const { return c[a][b]; }

  Taylor22 operator+(const Taylor22& o) const {
    Taylor22 r;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) r.c[a][b] = c[a][b] + o.c[a][b];
    return r;
  }

  Taylor22 operator-(const Taylor22& o) const {
    Taylor22 r;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) r.c[a][b] = c[a][b] - o.c[a][b];
    return r;
  }

  Taylor22 operator-() const {
    Taylor22 r;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) r.c[a][b] = -c[a][b];
    return r;
  }

  Taylor22 operator*(const Taylor22& o) const {
    Taylor22 r;
    for (int a1 = 0; a1 < 3; ++a1)
      for (int b1 = 0; b1 < 3; ++b1) {
        if (c[a1][b1] == Complex(0.0, 0.0)) continue;
        for (int a2 = 0; a1 + a2 < 3; ++a2)
          for (int b2 = 0; b1 + b2 < 3; ++b2)
            r.c[a1 + a2][b1 + b2] += c[a1][b1] * o.c[a2][b2];
      }
    return r;
  }

  Taylor22 operator*(Complex v) const {
    Taylor22 r;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) r.c[a][b] = c[a][b] * v;
    return r;
  }

  Taylor22& operator+=(const Taylor22& o) { return *this = *this + o; }
  Taylor22& operator-=(const Taylor22& o) { return *this = *this - o; }

  /// Multiplicative inverse; requires a nonzero constant term.
  Taylor22 inv() const {
    const Complex c0 = c[0][0];
    if (std::abs(c0) < 1e-300)
      throw std::domain_error("Taylor22::inv: zero constant term");
    Taylor22 e = *this * (1.0 / c0);
    e.c[0][0] = 0.0;  // e = x/c0 - 1
    // 1/x = (1 - e + e^2 - e^3 + e^4) / c0   (e^5 truncates to zero)
    Taylor22 acc = constant(1.0);
    Taylor22 p = e;
    double sign = -1.0;
    for (int k = 1; k <= 4; ++k) {
      acc += p * sign;
      p = p * e;
      sign = -sign;
    }
    return acc * (1.0 / c0);
  }

  /// log; the constant branch is immaterial for mixed partials.
  Taylor22 log() const {
    const Complex c0 = c[0][0];
    if (std::abs(c0) < 1e-300)
      throw std::domain_error("Taylor22::log: zero constant term");
    Taylor22 e = *this * (1.0 / c0);
    e.c[0][0] = 0.0;
    Taylor22 acc = constant(std::log(c0));
    Taylor22 p = e;
    double sign = 1.0;
    for (int k = 1; k <= 4; ++k) {
      acc += p * (sign / double(k));
      p = p * e;
      sign = -sign;
    }
    return acc;
  }
};

inline Taylor22 operator*(Complex v, const Taylor22& x) { return x * v; }

/// log det of a matrix of series by LU with partial pivoting on the
/// constant terms; entries row-major, n x n.
inline Taylor22 logdet(std::vector<Taylor22> m, int n) {
  Taylor22 acc = Taylor22::constant(0.0);
  double sign = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(m[i * n + k].c[0][0]) > std::abs(m[piv * n + k].c[0][0]))
        piv = i;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
      sign = -sign;
    }
    const Taylor22 pinv = m[k * n + k].inv();
    acc += m[k * n + k].log();
    for (int i = k + 1; i < n; ++i) {
      const Taylor22 f = m[i * n + k] * pinv;
      for (int j = k; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
    }
  }
  if (sign < 0) acc.c[0][0] += Complex(0.0, kPi);  // log(-1), constant only
  return acc;
}

}  // namespace symdom::detail
