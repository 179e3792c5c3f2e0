#include "gcx/multiform.hpp"

#include <sstream>

namespace gcx {

Multiform exp_wedge(const Multiform& b) {
  for (Mask m = 0; m < b.size(); ++m) {
    const int deg = degree_of(m);
    if (deg == 0 || deg % 2 == 1) {
      require(b[m] == Complex(0.0),
              "exp_wedge: argument must have no degree-0 or odd-degree part");
    }
  }
  return exp_wedge_unchecked(b);
}

Multiform conj(const Multiform& a) {
  Multiform out(a.dim());
  for (Mask m = 0; m < a.size(); ++m) out.at(m) = std::conj(a[m]);
  return out;
}

GcVector conj(const GcVector& v) {
  GcVector out(v.dim);
  for (int i = 0; i < v.dim; ++i) {
    out.vec[i] = std::conj(v.vec[i]);
    out.cov[i] = std::conj(v.cov[i]);
  }
  return out;
}

double max_abs(const Multiform& a) {
  double m = 0.0;
  for (Mask s = 0; s < a.size(); ++s) m = std::max(m, std::abs(a[s]));
  return m;
}

double norm2(const Multiform& a) {
  double acc = 0.0;
  for (Mask s = 0; s < a.size(); ++s) acc += std::norm(a[s]);
  return std::sqrt(acc);
}

bool is_real(const Multiform& a) {
  for (Mask s = 0; s < a.size(); ++s) {
    if (a[s].imag() != 0.0) return false;
  }
  return true;
}

bool is_homogeneous(const Multiform& a, int degree) {
  for (Mask s = 0; s < a.size(); ++s) {
    if (degree_of(s) != degree && a[s] != Complex(0.0)) return false;
  }
  return true;
}

Complex top_coefficient(const Multiform& a) { return a[a.size() - 1]; }

Multiform wedge_power(const Multiform& a, int j) {
  Multiform out = Multiform::scalar(a.dim(), 1.0);
  for (int i = 0; i < j; ++i) out = wedge(out, a);
  return out;
}

Multiform real_part(const Multiform& a) {
  Multiform out(a.dim());
  for (Mask s = 0; s < a.size(); ++s) out.at(s) = a[s].real();
  return out;
}

Multiform imag_part(const Multiform& a) {
  Multiform out(a.dim());
  for (Mask s = 0; s < a.size(); ++s) out.at(s) = a[s].imag();
  return out;
}

std::string to_string(const Multiform& a) {
  std::ostringstream os;
  bool first = true;
  for (Mask s = 0; s < a.size(); ++s) {
    if (a[s] == Complex(0.0)) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << a[s].real() << (a[s].imag() < 0 ? "-" : "+") << std::abs(a[s].imag())
       << "i)";
    for (int i : indices_of(s)) os << " dx" << (i + 1);
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace gcx
