#include "gcx/models.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace gcx::models {

namespace {

constexpr Mask m01 = 0b0011;
constexpr Mask m02 = 0b0101;
constexpr Mask m03 = 0b1001;
constexpr Mask m12 = 0b0110;
constexpr Mask m13 = 0b1010;
constexpr Mask m23 = 0b1100;
constexpr Mask m013 = 0b1011;

const Complex kI(0.0, 1.0);

// Truncated univariate Taylor series c_0 + c_1 h + c_2 h^2 + c_3 h^3.
struct Series {
  std::array<double, 4> c{};

  static Series line(double value, double slope) { return Series{{value, slope, 0.0, 0.0}}; }

  friend Series operator+(const Series& a, const Series& b) {
    Series r;
    for (int k = 0; k < 4; ++k) r.c[k] = a.c[k] + b.c[k];
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    Series r;
    for (int k = 0; k < 4; ++k) {
      for (int i = 0; i <= k; ++i) r.c[k] += a.c[i] * b.c[k - i];
    }
    return r;
  }
  Series reciprocal() const {
    Series r;
    r.c[0] = 1.0 / c[0];
    for (int k = 1; k < 4; ++k) {
      double acc = 0.0;
      for (int i = 1; i <= k; ++i) acc += c[i] * r.c[k - i];
      r.c[k] = -acc * r.c[0];
    }
    return r;
  }
  Series exp() const {
    Series r;
    r.c[0] = std::exp(c[0]);
    for (int k = 1; k < 4; ++k) {
      double acc = 0.0;
      for (int i = 1; i <= k; ++i) acc += i * c[i] * r.c[k - i];
      r.c[k] = acc / k;
    }
    return r;
  }
  Series negated() const {
    Series r;
    for (int k = 0; k < 4; ++k) r.c[k] = -c[k];
    return r;
  }
};

// exp(-1/t) for t > 0, zero otherwise; flat to all orders at t = 0.
Series flat_exp(const Series& t) {
  if (t.c[0] <= 0.0) return Series{};
  const Series u = t.reciprocal().negated();
  if (u.c[0] < -700.0) return Series{};
  return u.exp();
}

BumpValues exp_flat_bump(double r, double r_out) {
  const Series a = flat_exp(Series::line(r_out - r, -1.0));
  const Series b = flat_exp(Series::line(r - 1.0, 1.0));
  const Series f = a * (a + b).reciprocal();
  return BumpValues{f.c[0], f.c[1], 2.0 * f.c[2], 6.0 * f.c[3]};
}

BumpValues septic_bump(double r, double r_out) {
  const double w = r_out - 1.0;
  const double x = (r - 1.0) / w;
  const double x2 = x * x;
  const double x3 = x2 * x;
  const double x4 = x3 * x;
  const double s = x4 * (35.0 - 84.0 * x + 70.0 * x2 - 20.0 * x3);
  const double s1 = x3 * (140.0 - 420.0 * x + 420.0 * x2 - 140.0 * x3);
  const double s2 = x2 * (420.0 - 1680.0 * x + 2100.0 * x2 - 840.0 * x3);
  const double s3 = x * (840.0 - 5040.0 * x + 8400.0 * x2 - 4200.0 * x3);
  return BumpValues{1.0 - s, -s1 / w, -s2 / (w * w), -s3 / (w * w * w)};
}

double real_value(const Jet& j) { return j.value().real(); }

void guard_radius(const Jet& r, double r_min, const char* what) {
  if (real_value(r) < r_min * (1.0 - 1e-12)) {
    throw ContractError(std::string(what) + ": radius " + std::to_string(real_value(r)) +
                        " below r_min " + std::to_string(r_min));
  }
}

ChartPoint point(ChartId chart, double a, double b, double c, double d, std::uint8_t periodic) {
  return ChartPoint::make(chart, 4, {a, b, c, d}, periodic);
}

}  // namespace

void LogModelParams::validate() const {
  require(m >= 1, "log model: multiplicity m must be positive, got " + std::to_string(m));
  require(std::gcd(k, m) == 1, "log model: k = " + std::to_string(k) +
                                   " must be co-prime with m = " + std::to_string(m));
}

void SurgeryGeometry::validate() const {
  require(r_min > 0.0, "surgery geometry: r_min must be positive");
  require(r_out > 1.0, "surgery geometry: R_out must exceed the unit tube radius");
}

FormField cplane_spinor(HolomorphicFn s) {
  return FormField(4, [s = std::move(s)](const JetCoords& x) {
    const Jet z1 = x[0] + x[1] * kI;
    const Jet z2 = x[2] + x[3] * kI;
    JetMultiform dz1(4);
    dz1.at(0b0001) = 1.0;
    dz1.at(0b0010) = kI;
    JetMultiform dz2(4);
    dz2.at(0b0100) = 1.0;
    dz2.at(0b1000) = kI;
    JetMultiform rho = wedge(dz1, dz2);
    rho.at(0) = s(z1, z2);
    return rho;
  });
}

FormField local_model_spinor() {
  return cplane_spinor([](const Jet& z1, const Jet&) { return z1; });
}

FormJet local_model_spinor(const ChartPoint& p) { return local_model_spinor().jet(p); }

GcVector local_model_witness() {
  // d/dz2 = (d/dx2 - i d/dy2) / 2.
  GcVector v(4);
  v.vec[2] = -0.5;
  v.vec[3] = Complex(0.0, 0.5);
  return v;
}

FormField polar_b_field(const SurgeryGeometry& g) {
  return FormField(4, [g](const JetCoords& x) {
    guard_radius(x[0], g.r_min, "polar model");
    JetMultiform b(4);
    b.at(m02) = reciprocal(x[0]);
    b.at(m13) = -1.0;
    return b;
  });
}

FormField polar_omega_field(const SurgeryGeometry& g) {
  return FormField(4, [g](const JetCoords& x) {
    guard_radius(x[0], g.r_min, "polar model");
    JetMultiform w(4);
    w.at(m03) = reciprocal(x[0]);
    w.at(m12) = 1.0;
    return w;
  });
}

FormField polar_spinor(const SurgeryGeometry& g) {
  return exp_wedge(polar_b_field(g) + scaled(polar_omega_field(g), kI));
}

FormPair local_model_polar(const SurgeryGeometry& g, const ChartPoint& p) {
  return FormPair{polar_b_field(g).jet(p), polar_omega_field(g).jet(p)};
}

ChartMap polar_to_cplane() {
  return ChartMap({ChartId::kAnnulus, ChartId::kCPlane, kAnglesMask, 0}, 4,
                  [](const JetCoords& x) {
                    const Jet phase = x[1] * kTwoPi;
                    return JetCoords{x[0] * cos(phase), x[0] * sin(phase), x[2], x[3]};
                  });
}

ChartMap unit_angle_to_radians() {
  return ChartMap({ChartId::kAnnulus, ChartId::kGeneric, kAnglesMask, 0b1100}, 4,
                  [](const JetCoords& x) {
                    return JetCoords{x[0], x[1] * kTwoPi, x[2], x[3]};
                  });
}

FormField log_model_b_field(const LogModelParams& params, const SurgeryGeometry& g) {
  params.validate();
  const double r_min = std::pow(g.r_min, params.m);
  const double m = params.m;
  const double k = params.k;
  return FormField(4, [r_min, m, k](const JetCoords& x) {
    guard_radius(x[0], r_min, "log model");
    const Jet inv = reciprocal(x[0]);
    JetMultiform b(4);
    b.at(m01) = inv * (k / m);
    b.at(m02) = inv;
    b.at(m13) = -1.0 / m;
    return b;
  });
}

FormField log_model_omega_field(const LogModelParams& params, const SurgeryGeometry& g) {
  params.validate();
  const double r_min = std::pow(g.r_min, params.m);
  const double m = params.m;
  return FormField(4, [r_min, m](const JetCoords& x) {
    guard_radius(x[0], r_min, "log model");
    JetMultiform w(4);
    w.at(m03) = reciprocal(x[0]) * (1.0 / m);
    w.at(m12) = 1.0 / m;
    return w;
  });
}

FormField log_model_spinor(const LogModelParams& params, const SurgeryGeometry& g) {
  return exp_wedge(log_model_b_field(params, g) + scaled(log_model_omega_field(params, g), kI));
}

FormPair log_model(const LogModelParams& params, const SurgeryGeometry& g, const ChartPoint& p) {
  return FormPair{log_model_b_field(params, g).jet(p), log_model_omega_field(params, g).jet(p)};
}

ChartMap quotient_cover_map(const LogModelParams& params) {
  params.validate();
  const double m = params.m;
  const double k = params.k;
  return ChartMap(
      {ChartId::kAnnulus, ChartId::kQuotient, kAnglesMask, kAnglesMask}, 4,
      [m, k](const JetCoords& x) {
        return JetCoords{pow(x[0], m), x[1] * m, x[2] - x[1] * k, x[3]};
      },
      std::nullopt,
      [](const ChartPoint& p) {
        require(p.coords[0] > 0.0, "quotient cover map: needs r > 0");
      });
}

FormField expected_b_discrepancy(const LogModelParams& params, const SurgeryGeometry& g) {
  params.validate();
  const double factor = params.m - 1.0;
  return FormField(4, [factor, g](const JetCoords& x) {
    guard_radius(x[0], g.r_min, "b discrepancy");
    JetMultiform d(4);
    d.at(m02) = reciprocal(x[0]) * factor;
    return d;
  });
}

ChartPoint deck_action(const LogModelParams& params, const ChartPoint& p) {
  return deck_map(params).apply(p);
}

ChartMap deck_map(const LogModelParams& params) {
  params.validate();
  const double m = params.m;
  const double k = params.k;
  return ChartMap({ChartId::kAnnulus, ChartId::kAnnulus, kAnglesMask, kAnglesMask}, 4,
                  [m, k](const JetCoords& x) {
                    return JetCoords{x[0], x[1] + 1.0 / m, x[2] + k / m, x[3]};
                  });
}

FormField tube_symplectic_field() {
  return FormField(4, [](const JetCoords& x) {
    JetMultiform s(4);
    s.at(m01) = x[0];
    s.at(m23) = 1.0;
    return s;
  });
}

FormJet tube_symplectic(const ChartPoint& p) { return tube_symplectic_field().jet(p); }

ChartMap gluing_map() {
  const double r_inner = std::exp(-0.5);
  return ChartMap(
      {ChartId::kAnnulus, ChartId::kTube, kAnglesMask, kAnglesMask}, 4,
      [](const JetCoords& x) {
        return JetCoords{sqrt(log(x[0]) * 2.0 + 1.0), x[3], x[2], -x[1]};
      },
      [](const JetCoords& y) {
        const double rt = real_value(y[0]);
        require(rt > 0.0 && rt <= 1.0 + 1e-12,
                "gluing map inverse: tube radius must lie in (0, 1], got " + std::to_string(rt));
        return JetCoords{exp((y[0] * y[0] - 1.0) * 0.5), -y[3], y[2], y[1]};
      },
      [r_inner](const ChartPoint& p) {
        const double r = p.coords[0];
        require(r > r_inner && r <= 1.0 + 1e-12,
                "gluing map: annulus radius must lie in (1/sqrt(e), 1], got " + std::to_string(r));
      });
}

ChartPoint gluing_map(const ChartPoint& p, Direction direction) {
  const ChartMap psi = gluing_map();
  return direction == Direction::kForward ? psi.apply(p) : psi.apply_inverse(p);
}

BumpValues bump(const SurgeryGeometry& g, double rtilde) {
  require(rtilde >= 0.0, "bump: radius must be non-negative");
  if (rtilde <= 1.0) return BumpValues{1.0, 0.0, 0.0, 0.0};
  if (rtilde >= g.r_out) return BumpValues{};
  switch (g.profile) {
    case BumpProfile::kExpFlat:
      return exp_flat_bump(rtilde, g.r_out);
    case BumpProfile::kSepticSmoothstep:
      return septic_bump(rtilde, g.r_out);
  }
  throw InternalError("bump: unknown profile");
}

FormField b_extension_field(const SurgeryGeometry& g) {
  return FormField(4, [g](const JetCoords& x) {
    guard_radius(x[0], g.r_min, "tube extension");
    const BumpValues b = bump(g, real_value(x[0]));
    const Jet f = x[0].compose(b.f, b.df, b.d2f);
    JetMultiform out(4);
    out.at(m02) = f * x[0];
    out.at(m13) = -f;
    return out;
  });
}

FormField twist_field(const SurgeryGeometry& g) {
  return FormField(4, [g](const JetCoords& x) {
    guard_radius(x[0], g.r_min, "tube twist");
    const BumpValues b = bump(g, real_value(x[0]));
    JetMultiform out(4);
    out.at(m013) = x[0].compose(b.df, b.d2f, b.d3f) * static_cast<double>(-kTwistSign);
    return out;
  });
}

FormField glued_tube_spinor(const SurgeryGeometry& g) {
  return exp_wedge(b_extension_field(g) + scaled(tube_symplectic_field(), kI));
}

ExtensionAndTwist b_extension_and_h(const SurgeryGeometry& g, const ChartPoint& p) {
  ExtensionAndTwist out{b_extension_field(g).jet(p), twist_field(g).jet(p)};
  const Multiform assembled = exterior_derivative(out.b_extension).scaled(double(kTwistSign));
  ensure(max_abs(assembled - out.h.value) <= 1e-10,
         "b_extension_and_h: assembled d(B~) disagrees with the closed form of H");
  return out;
}

std::array<std::array<double, kMaxDim>, 2> quotient_fiber_lattice(const LogModelParams& params) {
  params.validate();
  return {{{0.0, 0.0, 1.0 / params.m, 0.0}, {0.0, 0.0, 0.0, 1.0}}};
}

ChartPoint cplane_point(double x1, double y1, double x2, double y2) {
  return point(ChartId::kCPlane, x1, y1, x2, y2, 0);
}
ChartPoint annulus_point(double r, double t1, double t2, double t3) {
  return point(ChartId::kAnnulus, r, t1, t2, t3, kAnglesMask);
}
ChartPoint tube_point(double rt, double s1, double s2, double s3) {
  return point(ChartId::kTube, rt, s1, s2, s3, kAnglesMask);
}
ChartPoint quotient_point(double r, double t1, double t2, double t3) {
  return point(ChartId::kQuotient, r, t1, t2, t3, kAnglesMask);
}

}  // namespace gcx::models
