#include <cmath>

#include "gcx/chart.hpp"
#include "gcx/models.hpp"
#include "test_support.hpp"

using namespace gcx;
using namespace gcx::testing;
using namespace gcx::models;

TEST(LocalModel, ValueAndType) {
  const Multiform v = local_model_spinor().value(cplane_point(0.3, 0.4, -1.0, 2.0));
  EXPECT_EQ(v[0], Complex(0.3, 0.4));
  EXPECT_LE(max_abs(v.degree_part(2) - dz1_dz2()), 1e-15);
  EXPECT_EQ(type_of(local_model_spinor().value(cplane_point(0, 0, 0.5, 0.5))), 2);
}

TEST(GluingMap, Examples) {
  const ChartPoint q = gluing_map(annulus_point(1.0, 0.1, 0.2, 0.3), Direction::kForward);
  EXPECT_TRUE(q.same_point(tube_point(1.0, 0.3, 0.2, -0.1), 1e-15));
  const ChartPoint h = gluing_map(annulus_point(std::exp(-0.25), 0.0, 0.0, 0.0), Direction::kForward);
  EXPECT_NEAR(h.coords[0], std::sqrt(0.5), 1e-15);
  const ChartPoint back = gluing_map(q, Direction::kInverse);
  EXPECT_TRUE(back.same_point(annulus_point(1.0, 0.1, 0.2, 0.3), 1e-14));
}

TEST(GluingMap, RejectsOutsideAnnulus) {
  EXPECT_THROW(gluing_map(annulus_point(0.5, 0, 0, 0), Direction::kForward), ContractError);
  EXPECT_THROW(gluing_map(annulus_point(1.5, 0, 0, 0), Direction::kForward), ContractError);
}

TEST(DeckAction, Example) {
  const ChartPoint q = deck_action({2, 1}, annulus_point(0.5, 0.1, 0.2, 0.3));
  EXPECT_TRUE(q.same_point(annulus_point(0.5, 0.6, 0.7, 0.3), 1e-15));
}

TEST(LogModelParams, Validation) {
  EXPECT_NO_THROW((LogModelParams{1, 0}.validate()));
  EXPECT_NO_THROW((LogModelParams{5, 2}.validate()));
  EXPECT_THROW((LogModelParams{4, 2}.validate()), ContractError);
  EXPECT_THROW((LogModelParams{0, 1}.validate()), ContractError);
}

TEST(SurgeryGeometry, Validation) {
  EXPECT_THROW((SurgeryGeometry{0.0, 2.0}.validate()), ContractError);
  EXPECT_THROW((SurgeryGeometry{0.05, 1.0}.validate()), ContractError);
}

TEST(Bump, EndpointsAndIntegral) {
  const SurgeryGeometry g;
  EXPECT_EQ(bump(g, 0.5).f, 1.0);
  EXPECT_EQ(bump(g, g.r_out + 1.0).f, 0.0);
  EXPECT_EQ(bump(g, 1.0).df, 0.0);
  // Simple midpoint rule is plenty for the monotone profile.
  const int n = 20000;
  double integral = 0.0;
  const double h = (g.r_out - 1.0) / n;
  for (int i = 0; i < n; ++i) integral += bump(g, 1.0 + (i + 0.5) * h).df * h;
  EXPECT_NEAR(integral, -1.0, 1e-8);
}

TEST(Bump, SmoothAtJunctions) {
  for (BumpProfile profile : {BumpProfile::kExpFlat, BumpProfile::kSepticSmoothstep}) {
    const SurgeryGeometry g{0.05, 2.0, profile};
    for (double r : {1.0, g.r_out}) {
      const BumpValues lo = bump(g, r - 1e-7);
      const BumpValues hi = bump(g, r + 1e-7);
      EXPECT_NEAR(lo.f, hi.f, 1e-6);
      EXPECT_NEAR(lo.df, hi.df, 1e-6);
      EXPECT_NEAR(lo.d2f, hi.d2f, 1e-5);
    }
    EXPECT_NEAR(bump(g, 1.0).df, 0.0, 1e-10);
    EXPECT_NEAR(bump(g, g.r_out).d2f, 0.0, 1e-10);
  }
}

TEST(Bump, DerivativesMatchFiniteDifferences) {
  const SurgeryGeometry g;
  const double eps = 1e-5;
  for (double r : {1.2, 1.5, 1.8}) {
    const BumpValues b = bump(g, r);
    EXPECT_NEAR(b.df, (bump(g, r + eps).f - bump(g, r - eps).f) / (2 * eps), 1e-7);
    EXPECT_NEAR(b.d2f, (bump(g, r + eps).df - bump(g, r - eps).df) / (2 * eps), 1e-6);
  }
}

TEST(Tube, SigmaIsSymplectic) {
  const Multiform s = tube_symplectic(tube_point(0.7, 0.1, 0.2, 0.3)).value;
  EXPECT_NEAR(top_coefficient(wedge(s, s)).real(), 2.0 * 0.7, 1e-15);
}

TEST(Twist, ClosedFormMatchesDerivative) {
  const SurgeryGeometry g;
  for (double rt : {0.5, 1.3, 1.7, 2.5}) {
    const ChartPoint p = tube_point(rt, 0.1, 0.2, 0.3);
    const ExtensionAndTwist et = b_extension_and_h(g, p);
    const Multiform expected = form(4, {{{1, 2, 4}, bump(g, rt).df}});
    EXPECT_LE(max_abs(et.h.value - expected), 1e-12);
    const Multiform dbt = exterior_derivative(b_extension_field(g), p).scaled(double(kTwistSign));
    EXPECT_LE(max_abs(dbt - et.h.value), 1e-10);
  }
}

TEST(Twist, ExtensionMatchesPolarBInside) {
  // On the glued collar the extension is the pushforward of B.
  const SurgeryGeometry g;
  const ChartMap psi = gluing_map();
  const ChartPoint p = annulus_point(0.9, 0.15, 0.35, 0.55);
  const Multiform pulled = pullback(psi, b_extension_field(g), p);
  EXPECT_LE(max_abs(pulled - polar_b_field(g).value(p)), 1e-12);
}

TEST(Quotient, PullbackOfLogModel) {
  const SurgeryGeometry g;
  for (const LogModelParams params : {LogModelParams{1, 0}, LogModelParams{3, 2}}) {
    const ChartMap cover = quotient_cover_map(params);
    const ChartPoint p = annulus_point(0.6, 0.1, 0.2, 0.3);
    const Multiform b = pullback(cover, log_model_b_field(params, g), p);
    const double m = params.m;
    // m dlog r ^ dt2 - dt1 ^ dt3
    const Multiform expected = form(4, {{{1, 3}, m / 0.6}, {{2, 4}, -1.0}});
    EXPECT_LE(max_abs(b - expected), 1e-12);
    const Multiform w = pullback(cover, log_model_omega_field(params, g), p);
    EXPECT_LE(max_abs(w - polar_omega_field(g).value(p)), 1e-12);
    EXPECT_LE(max_abs(b - polar_b_field(g).value(p) - expected_b_discrepancy(params, g).value(p)),
              1e-12);
  }
}

TEST(Quotient, FiberLattice) {
  const auto l = quotient_fiber_lattice({3, 1});
  EXPECT_DOUBLE_EQ(l[0][2], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(l[1][3], 1.0);
}

TEST(Polar, SpinorIsExpOfBPlusIOmega) {
  const SurgeryGeometry g;
  const ChartPoint p = annulus_point(0.5, 0.2, 0.4, 0.6);
  const Multiform expected =
      exp_wedge(polar_b_field(g).value(p) + polar_omega_field(g).value(p).scaled(kI));
  EXPECT_LE(max_abs(polar_spinor(g).value(p) - expected), 1e-14);
}
