#pragma once

// Graded exterior algebra over an n-dimensional cotangent space (2 <= n <= 4)
// and the Clifford module structure of T + T* acting on it.
//
// Basis monomials are indexed by bitmasks: bit i set means dx^(i+1) is a
// factor, and factors are always written in ascending index order. Every
// sign below is a transposition count against that ordering.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "gcx/errors.hpp"
#include "gcx/jet.hpp"

namespace gcx {

using Mask = std::uint32_t;

inline constexpr Mask kMaxMaskCount = 1u << kMaxDim;

inline int degree_of(Mask m) { return std::popcount(m); }

// Sign of dx^a ^ dx^b relative to dx^(a|b); caller guarantees a & b == 0.
inline int wedge_sign(Mask a, Mask b) {
  int swaps = 0;
  for (Mask rest = b; rest != 0; rest &= rest - 1) {
    const int j = std::countr_zero(rest);
    swaps += std::popcount(a >> (j + 1));
  }
  return (swaps & 1) ? -1 : 1;
}

// Sign picked up when the contraction with d/dx^(i+1) moves past the
// lower-index factors of the monomial s.
inline int interior_sign(int i, Mask s) {
  return (std::popcount(s & ((Mask{1} << i) - 1)) & 1) ? -1 : 1;
}

// Masks built from 0-based coordinate indices.
inline Mask mask_of(std::initializer_list<int> indices) {
  Mask m = 0;
  for (int i : indices) m |= Mask{1} << i;
  return m;
}

// Ascending 0-based indices of a mask.
inline std::vector<int> indices_of(Mask m) {
  std::vector<int> out;
  for (Mask rest = m; rest != 0; rest &= rest - 1) out.push_back(std::countr_zero(rest));
  return out;
}

inline void require_dim(int dim) {
  require(dim >= 1 && dim <= kMaxDim, "multiform dimension must be in [1, 4], got " +
                                          std::to_string(dim));
}

template <class T>
class BasicMultiform {
 public:
  BasicMultiform() : BasicMultiform(kMaxDim) {}
  explicit BasicMultiform(int dim) : dim_(dim) {
    require_dim(dim);
    coeffs_.fill(T{});
  }

  static BasicMultiform scalar(int dim, const T& c) {
    BasicMultiform f(dim);
    f.coeffs_[0] = c;
    return f;
  }

  static BasicMultiform monomial(int dim, Mask m, const T& c) {
    BasicMultiform f(dim);
    f.at(m) = c;
    return f;
  }

  // The 1-form dx^(i+1) with coefficient c.
  static BasicMultiform one_form(int dim, int i, const T& c) {
    return monomial(dim, Mask{1} << i, c);
  }

  int dim() const { return dim_; }
  Mask size() const { return Mask{1} << dim_; }

  const T& operator[](Mask m) const { return coeffs_[m]; }
  T& at(Mask m) {
    require(m < size(), "basis mask outside the exterior algebra");
    return coeffs_[m];
  }

  BasicMultiform degree_part(int k) const {
    BasicMultiform out(dim_);
    for (Mask m = 0; m < size(); ++m) {
      if (degree_of(m) == k) out.coeffs_[m] = coeffs_[m];
    }
    return out;
  }

  BasicMultiform operator-() const {
    BasicMultiform out(dim_);
    for (Mask m = 0; m < size(); ++m) out.coeffs_[m] = -coeffs_[m];
    return out;
  }

  BasicMultiform& operator+=(const BasicMultiform& o) {
    check_same_dim(o);
    for (Mask m = 0; m < size(); ++m) coeffs_[m] = coeffs_[m] + o.coeffs_[m];
    return *this;
  }

  BasicMultiform& operator-=(const BasicMultiform& o) {
    check_same_dim(o);
    for (Mask m = 0; m < size(); ++m) coeffs_[m] = coeffs_[m] - o.coeffs_[m];
    return *this;
  }

  template <class S>
  BasicMultiform scaled(const S& s) const {
    BasicMultiform out(dim_);
    for (Mask m = 0; m < size(); ++m) out.coeffs_[m] = coeffs_[m] * s;
    return out;
  }

  friend BasicMultiform operator+(BasicMultiform a, const BasicMultiform& b) { return a += b; }
  friend BasicMultiform operator-(BasicMultiform a, const BasicMultiform& b) { return a -= b; }

  void check_same_dim(const BasicMultiform& o) const {
    require(dim_ == o.dim_, "multiform dimension mismatch: " + std::to_string(dim_) +
                                " vs " + std::to_string(o.dim_));
  }

 private:
  int dim_;
  std::array<T, kMaxMaskCount> coeffs_;
};

template <class T>
BasicMultiform<T> wedge(const BasicMultiform<T>& a, const BasicMultiform<T>& b) {
  a.check_same_dim(b);
  BasicMultiform<T> out(a.dim());
  for (Mask ma = 0; ma < a.size(); ++ma) {
    for (Mask mb = 0; mb < b.size(); ++mb) {
      if (ma & mb) continue;
      const T prod = a[ma] * b[mb];
      out.at(ma | mb) = wedge_sign(ma, mb) > 0 ? out[ma | mb] + prod : out[ma | mb] - prod;
    }
  }
  return out;
}

// Contraction with the coordinate vector field d/dx^(i+1).
template <class T>
BasicMultiform<T> interior(int i, const BasicMultiform<T>& a) {
  require(i >= 0 && i < a.dim(), "interior product index out of range");
  BasicMultiform<T> out(a.dim());
  const Mask bit = Mask{1} << i;
  for (Mask m = 0; m < a.size(); ++m) {
    if (!(m & bit)) continue;
    out.at(m ^ bit) = interior_sign(i, m) > 0 ? a[m] : -a[m];
  }
  return out;
}

// Sum of b^j / j!. Terminates at j = dim / 2 since b has even degree >= 2.
template <class T>
BasicMultiform<T> exp_wedge_unchecked(const BasicMultiform<T>& b) {
  BasicMultiform<T> out = BasicMultiform<T>::scalar(b.dim(), T(1.0));
  BasicMultiform<T> power = out;
  for (int j = 1; 2 * j <= b.dim(); ++j) {
    power = wedge(power, b).scaled(1.0 / j);
    out += power;
  }
  return out;
}

// An element X + xi of (T + T*) (x) C; vec holds X in the basis d/dx^i,
// cov holds xi in the basis dx^i.
template <class T>
struct BasicGcVector {
  int dim = kMaxDim;
  std::array<T, kMaxDim> vec{};
  std::array<T, kMaxDim> cov{};

  BasicGcVector() = default;
  explicit BasicGcVector(int n) : dim(n) { require_dim(n); }

  // 0 <= k < 2n: k < n selects d/dx^(k+1), otherwise dx^(k-n+1).
  T& component(int k) { return k < dim ? vec[k] : cov[k - dim]; }
  const T& component(int k) const { return k < dim ? vec[k] : cov[k - dim]; }

  BasicMultiform<T> covector() const {
    BasicMultiform<T> f(dim);
    for (int i = 0; i < dim; ++i) f.at(Mask{1} << i) = cov[i];
    return f;
  }

  friend BasicGcVector operator+(BasicGcVector a, const BasicGcVector& b) {
    require(a.dim == b.dim, "GcVector dimension mismatch");
    for (int i = 0; i < a.dim; ++i) {
      a.vec[i] = a.vec[i] + b.vec[i];
      a.cov[i] = a.cov[i] + b.cov[i];
    }
    return a;
  }

  friend BasicGcVector operator-(BasicGcVector a, const BasicGcVector& b) {
    require(a.dim == b.dim, "GcVector dimension mismatch");
    for (int i = 0; i < a.dim; ++i) {
      a.vec[i] = a.vec[i] - b.vec[i];
      a.cov[i] = a.cov[i] - b.cov[i];
    }
    return a;
  }
};

// i_X rho for a vector with components x.
template <class T>
BasicMultiform<T> interior(const std::array<T, kMaxDim>& x, const BasicMultiform<T>& rho) {
  BasicMultiform<T> out(rho.dim());
  for (int i = 0; i < rho.dim(); ++i) out += interior(i, rho).scaled(x[i]);
  return out;
}

// (X + xi) . rho = i_X rho + xi ^ rho.
template <class T>
BasicMultiform<T> clifford(const BasicGcVector<T>& v, const BasicMultiform<T>& rho) {
  require(v.dim == rho.dim(), "clifford: GcVector and multiform dimensions differ");
  return interior(v.vec, rho) + wedge(v.covector(), rho);
}

// <X + xi, Y + eta> = (eta(X) + xi(Y)) / 2.
template <class T>
T pairing(const BasicGcVector<T>& u, const BasicGcVector<T>& v) {
  require(u.dim == v.dim, "pairing: dimension mismatch");
  T acc{};
  for (int i = 0; i < u.dim; ++i) acc = acc + v.cov[i] * u.vec[i] + u.cov[i] * v.vec[i];
  return acc * 0.5;
}

using Multiform = BasicMultiform<Complex>;
using GcVector = BasicGcVector<Complex>;
using JetMultiform = BasicMultiform<Jet>;
using JetGcVector = BasicGcVector<Jet>;

// exp_wedge with its precondition enforced: no scalar and no odd-degree part.
Multiform exp_wedge(const Multiform& b);

Multiform conj(const Multiform& a);
GcVector conj(const GcVector& v);

// Largest coefficient modulus.
double max_abs(const Multiform& a);
double norm2(const Multiform& a);

// True when every coefficient has zero imaginary part.
bool is_real(const Multiform& a);
bool is_homogeneous(const Multiform& a, int degree);

// Coefficient of the top-degree monomial dx^1 ^ ... ^ dx^n.
Complex top_coefficient(const Multiform& a);

// a ^ a ^ ... (j factors), with a^0 = 1.
Multiform wedge_power(const Multiform& a, int j);

Multiform real_part(const Multiform& a);
Multiform imag_part(const Multiform& a);

std::string to_string(const Multiform& a);

}  // namespace gcx
