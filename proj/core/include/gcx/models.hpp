#pragma once

// Closed-form geometric models: the type-changing spinor on C^2, its polar
// form on D^2 x T^2, the Z_m logarithmic quotient, the standard tube
// D^2 x T^2, the gluing map between annulus and punctured tube, the bump
// profile and the extended B-field with its twisting 3-form.
//
// Chart conventions:
//   cplane   (x1, y1, x2, y2) with z1 = x1 + i y1, z2 = x2 + i y2
//   annulus  (r, t1, t2, t3), angles of unit period
//   tube     (rt, s1, s2, s3), angles of unit period
//   quotient (r', t1', t2', t3'), angles of unit period

#include <functional>
#include <vector>

#include "gcx/chart.hpp"
#include "gcx/field.hpp"

namespace gcx::models {

inline constexpr std::uint8_t kAnglesMask = 0b1110;

struct LogModelParams {
  int m = 1;
  int k = 0;

  // Throws ContractError unless m >= 1 and gcd(k, m) = 1.
  void validate() const;
};

enum class BumpProfile { kExpFlat, kSepticSmoothstep };

struct SurgeryGeometry {
  double r_min = 0.05;
  double r_out = 2.0;
  BumpProfile profile = BumpProfile::kExpFlat;

  void validate() const;
};

struct BumpValues {
  double f = 0.0;
  double df = 0.0;
  double d2f = 0.0;
  double d3f = 0.0;
};

// The holomorphic degree-0 part of a spinor s(z1, z2) + dz1 ^ dz2 on C^2.
using HolomorphicFn = std::function<Jet(const Jet& z1, const Jet& z2)>;

// s + dz1 ^ dz2; integrable for every holomorphic s.
FormField cplane_spinor(HolomorphicFn s);

// The local model z1 + dz1 ^ dz2.
FormField local_model_spinor();
FormJet local_model_spinor(const ChartPoint& p);

// The C^2 witness -d/dz2 for the local model: d rho = (-d/dz2) . rho.
GcVector local_model_witness();

// B = dlog r ^ dt2 - dt1 ^ dt3 and omega = dlog r ^ dt3 + dt1 ^ dt2.
FormField polar_b_field(const SurgeryGeometry& g);
FormField polar_omega_field(const SurgeryGeometry& g);
FormField polar_spinor(const SurgeryGeometry& g);  // exp(B + i omega)

struct FormPair {
  FormJet B;
  FormJet omega;
};

FormPair local_model_polar(const SurgeryGeometry& g, const ChartPoint& p);

// (r, t1, t2, t3) -> (z1, z2) = (r e^{2 pi i t1}, t2 + i t3).
ChartMap polar_to_cplane();

// (r, t1, t2, t3) -> (r, 2 pi t1, t2, t3): the angle in radians.
ChartMap unit_angle_to_radians();

// B' = dlog r' ^ (dt2' + (k/m) dt1') - (1/m) dt1' ^ dt3',
// omega' = (1/m)(dlog r' ^ dt3' + dt1' ^ dt2').
FormField log_model_b_field(const LogModelParams& params, const SurgeryGeometry& g);
FormField log_model_omega_field(const LogModelParams& params, const SurgeryGeometry& g);
FormField log_model_spinor(const LogModelParams& params, const SurgeryGeometry& g);
FormPair log_model(const LogModelParams& params, const SurgeryGeometry& g, const ChartPoint& p);

// (r, t1, t2, t3) -> (r^m, m t1, t2 - k t1, t3), annulus -> quotient chart.
ChartMap quotient_cover_map(const LogModelParams& params);

// (m - 1) dlog r ^ dt2, the difference between the pulled-back B' and B.
FormField expected_b_discrepancy(const LogModelParams& params, const SurgeryGeometry& g);

// (r, t1, t2, t3) -> (r, t1 + 1/m, t2 + k/m, t3).
ChartPoint deck_action(const LogModelParams& params, const ChartPoint& p);
ChartMap deck_map(const LogModelParams& params);

// sigma = rt drt ^ ds1 + ds2 ^ ds3.
FormField tube_symplectic_field();
FormJet tube_symplectic(const ChartPoint& p);

enum class Direction { kForward, kInverse };

// psi(r, t1, t2, t3) = (sqrt(log(e r^2)), t3, t2, -t1) from the annulus
// 1/sqrt(e) < r <= 1 onto the punctured tube 0 < rt <= 1.
ChartMap gluing_map();
ChartPoint gluing_map(const ChartPoint& p, Direction direction);

BumpValues bump(const SurgeryGeometry& g, double rtilde);

// Frozen sign relating the twisting 3-form to the extended B-field:
// H = kTwistSign * d(B~), which evaluates to H = f'(rt) drt ^ ds1 ^ ds3.
inline constexpr int kTwistSign = -1;

// B~ = f(rt) (rt drt ^ ds2 - ds1 ^ ds3), the extension of (psi^-1)^* B.
FormField b_extension_field(const SurgeryGeometry& g);
// Closed form of H.
FormField twist_field(const SurgeryGeometry& g);
// exp(B~ + i sigma) on the tube.
FormField glued_tube_spinor(const SurgeryGeometry& g);

struct ExtensionAndTwist {
  FormJet b_extension;
  FormJet h;
};

// Asserts that kTwistSign * d(B~) matches the closed form of H to 1e-10.
ExtensionAndTwist b_extension_and_h(const SurgeryGeometry& g, const ChartPoint& p);

// Fibre lattice of the central torus of the Z_m quotient as vectors in the
// cplane chart: (1/m) d/dx2 and d/dy2.
std::array<std::array<double, kMaxDim>, 2> quotient_fiber_lattice(const LogModelParams& params);

ChartPoint cplane_point(double x1, double y1, double x2, double y2);
ChartPoint annulus_point(double r, double t1, double t2, double t3);
ChartPoint tube_point(double rt, double s1, double s2, double s3);
ChartPoint quotient_point(double r, double t1, double t2, double t3);

}  // namespace gcx::models
