#pragma once

// Second-order forward-mode jets over complex numbers.
//
// A Jet carries the value of a complex-valued function of up to four real
// coordinates together with its exact gradient and Hessian. Arithmetic
// propagates all three by the chain rule, so any field assembled from jet
// operations comes with trustworthy first and second partials.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

namespace gcx {

using Complex = std::complex<double>;

inline constexpr int kMaxDim = 4;

class Jet {
 public:
  using Gradient = std::array<Complex, kMaxDim>;
  using Hessian = std::array<std::array<Complex, kMaxDim>, kMaxDim>;

  Jet() = default;
  Jet(double value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Jet(Complex value) : value_(value) {}  // NOLINT(google-explicit-constructor)

  // The coordinate function x_index evaluated at `at`.
  static Jet variable(double at, int index) {
    Jet j(at);
    j.d1_[index] = 1.0;
    return j;
  }

  static Jet from_parts(Complex value, const Gradient& d1, const Hessian& d2) {
    Jet j(value);
    j.d1_ = d1;
    j.d2_ = d2;
    return j;
  }

  const Complex& value() const { return value_; }
  const Complex& d1(int i) const { return d1_[i]; }
  const Complex& d2(int i, int j) const { return d2_[i][j]; }
  const Gradient& gradient() const { return d1_; }
  const Hessian& hessian() const { return d2_; }

  // g(this) given g, g' and g'' evaluated at value().
  Jet compose(Complex g, Complex dg, Complex d2g) const {
    Jet r(g);
    for (int i = 0; i < kMaxDim; ++i) {
      r.d1_[i] = dg * d1_[i];
      for (int j = 0; j < kMaxDim; ++j) {
        r.d2_[i][j] = d2g * d1_[i] * d1_[j] + dg * d2_[i][j];
      }
    }
    return r;
  }

  Jet operator-() const {
    Jet r;
    r.value_ = -value_;
    for (int i = 0; i < kMaxDim; ++i) {
      r.d1_[i] = -d1_[i];
      for (int j = 0; j < kMaxDim; ++j) r.d2_[i][j] = -d2_[i][j];
    }
    return r;
  }

  Jet& operator+=(const Jet& o) {
    value_ += o.value_;
    for (int i = 0; i < kMaxDim; ++i) {
      d1_[i] += o.d1_[i];
      for (int j = 0; j < kMaxDim; ++j) d2_[i][j] += o.d2_[i][j];
    }
    return *this;
  }

  Jet& operator-=(const Jet& o) { return *this += -o; }

  Jet& operator*=(Complex s) {
    value_ *= s;
    for (int i = 0; i < kMaxDim; ++i) {
      d1_[i] *= s;
      for (int j = 0; j < kMaxDim; ++j) d2_[i][j] *= s;
    }
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, Complex s) { return a *= s; }
  friend Jet operator*(Complex s, Jet a) { return a *= s; }
  friend Jet operator*(Jet a, double s) { return a *= Complex(s); }
  friend Jet operator*(double s, Jet a) { return a *= Complex(s); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r(a.value_ * b.value_);
    for (int i = 0; i < kMaxDim; ++i) {
      r.d1_[i] = a.d1_[i] * b.value_ + a.value_ * b.d1_[i];
      for (int j = 0; j < kMaxDim; ++j) {
        r.d2_[i][j] = a.d2_[i][j] * b.value_ + a.d1_[i] * b.d1_[j] +
                      a.d1_[j] * b.d1_[i] + a.value_ * b.d2_[i][j];
      }
    }
    return r;
  }

  friend Jet reciprocal(const Jet& a) {
    const Complex inv = 1.0 / a.value_;
    return a.compose(inv, -inv * inv, 2.0 * inv * inv * inv);
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator/(Jet a, Complex s) { return a *= (1.0 / s); }
  friend Jet operator/(Jet a, double s) { return a *= Complex(1.0 / s); }

  friend Jet exp(const Jet& a) {
    const Complex e = std::exp(a.value_);
    return a.compose(e, e, e);
  }

  friend Jet log(const Jet& a) {
    const Complex inv = 1.0 / a.value_;
    return a.compose(std::log(a.value_), inv, -inv * inv);
  }

  friend Jet sqrt(const Jet& a) {
    const Complex s = std::sqrt(a.value_);
    return a.compose(s, 0.5 / s, -0.25 / (s * a.value_));
  }

  // Plain sin/cos in radians.
  friend Jet sin(const Jet& a) {
    const Complex s = std::sin(a.value_);
    const Complex c = std::cos(a.value_);
    return a.compose(s, c, -s);
  }

  friend Jet cos(const Jet& a) {
    const Complex s = std::sin(a.value_);
    const Complex c = std::cos(a.value_);
    return a.compose(c, -s, -c);
  }

  friend Jet pow(const Jet& a, double p) {
    if (p == 0.0) return Jet(1.0);
    if (p == 1.0) return a;
    if (p == 2.0) return a * a;
    const double rounded = std::round(p);
    if (rounded == p && std::abs(p) <= 64.0) {
      // Integer powers stay well-defined at zero and for negative bases.
      const int n = static_cast<int>(rounded);
      const Complex v = a.value_;
      auto ipow = [](Complex base, int e) {
        Complex r = 1.0;
        const bool neg = e < 0;
        for (int i = 0; i < std::abs(e); ++i) r *= base;
        return neg ? 1.0 / r : r;
      };
      const Complex g = ipow(v, n);
      const Complex dg = static_cast<double>(n) * ipow(v, n - 1);
      const Complex d2g =
          static_cast<double>(n) * static_cast<double>(n - 1) * ipow(v, n - 2);
      return a.compose(g, dg, n == 1 ? Complex(0.0) : d2g);
    }
    const Complex g = std::pow(a.value_, p);
    return a.compose(g, p * g / a.value_, p * (p - 1.0) * g / (a.value_ * a.value_));
  }

 private:
  Complex value_{0.0};
  Gradient d1_{};
  Hessian d2_{};
};

using JetCoords = std::array<Jet, kMaxDim>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace gcx
