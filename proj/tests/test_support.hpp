#pragma once

#include <gtest/gtest.h>

#include "gcx/multiform.hpp"
#include "gcx/verify.hpp"

namespace gcx::testing {

inline Multiform form(int dim, std::initializer_list<std::pair<std::initializer_list<int>, Complex>> terms) {
  Multiform out(dim);
  for (const auto& [idx, c] : terms) {
    Mask m = 0;
    for (int i : idx) m |= Mask{1} << (i - 1);  // 1-based like the JSON form
    out.at(m) += c;
  }
  return out;
}

inline GcVector gc(int dim, std::initializer_list<Complex> vec, std::initializer_list<Complex> cov) {
  GcVector v(dim);
  int i = 0;
  for (Complex c : vec) v.vec[i++] = c;
  i = 0;
  for (Complex c : cov) v.cov[i++] = c;
  return v;
}

inline Complex rand_c(verify::SplitMix64& rng) { return {rng.uniform(-1, 1), rng.uniform(-1, 1)}; }

inline Multiform rand_form(verify::SplitMix64& rng, int dim, int degree = -1, bool real = false) {
  Multiform out(dim);
  for (Mask m = 0; m < out.size(); ++m) {
    if (degree < 0 || degree_of(m) == degree) out.at(m) = real ? Complex(rng.uniform(-1, 1)) : rand_c(rng);
  }
  return out;
}

inline GcVector rand_gc(verify::SplitMix64& rng, int dim, bool real = false) {
  GcVector v(dim);
  for (int k = 0; k < 2 * dim; ++k) v.component(k) = real ? Complex(rng.uniform(-1, 1)) : rand_c(rng);
  return v;
}

inline double max_abs(const GcVector& v) {
  double m = 0.0;
  for (int k = 0; k < 2 * v.dim; ++k) m = std::max(m, std::abs(v.component(k)));
  return m;
}

inline const Complex kI(0.0, 1.0);

// omega0 = dx1 ^ dx2 + dx3 ^ dx4 and dz1 ^ dz2 in (x1, y1, x2, y2).
inline Multiform omega0() { return form(4, {{{1, 2}, 1.0}, {{3, 4}, 1.0}}); }
inline Multiform dz1_dz2() {
  return form(4, {{{1, 3}, 1.0}, {{1, 4}, kI}, {{2, 3}, kI}, {{2, 4}, -1.0}});
}

}  // namespace gcx::testing
