#include <cmath>
#include <numbers>

#include "gcx/chart.hpp"
#include "gcx/models.hpp"
#include "test_support.hpp"

using namespace gcx;
using namespace gcx::verify;
using gcx::models::LogModelParams;
using gcx::models::SurgeryGeometry;

namespace {

RunOptions small(std::size_t samples = 40, int jobs = 1) { return RunOptions{42, samples, jobs}; }

ChartMap shifted_gluing_map() {
  return ChartMap({ChartId::kAnnulus, ChartId::kTube, models::kAnglesMask, models::kAnglesMask}, 4,
                  [](const JetCoords& x) {
                    return JetCoords{sqrt(log(x[0]) * 2.0 + 1.0) + 0.01, x[3], x[2], -x[1]};
                  });
}

}  // namespace

TEST(RunSamples, ReducesToLowestIndexMaximum) {
  const Aggregate agg = run_samples(6, 3, [](std::size_t i) {
    SampleOutcome o{models::cplane_point(double(i), 0, 0, 0)};
    o.residual = (i == 2 || i == 4) ? 5.0 : 1.0;
    o.ok = i != 3 && i != 5;
    o.failure = "bad " + std::to_string(i);
    return o;
  });
  EXPECT_EQ(agg.max_residual, 5.0);
  EXPECT_EQ(agg.worst_point->coords[0], 2.0);
  EXPECT_FALSE(agg.all_ok);
  EXPECT_EQ(agg.first_failure, "bad 3");
}

TEST(RunSamples, NanCountsAsInfinity) {
  const Aggregate agg = run_samples(3, 1, [](std::size_t i) {
    SampleOutcome o;
    o.residual = i == 1 ? std::nan("") : 1.0;
    return o;
  });
  EXPECT_TRUE(std::isinf(agg.max_residual));
}

TEST(RunSamples, RethrowsLowestIndexError) {
  EXPECT_THROW(run_samples(8, 4,
                           [](std::size_t i) -> SampleOutcome {
                             if (i >= 5) throw ContractError("sample " + std::to_string(i));
                             return {};
                           }),
               ContractError);
}

TEST(Seeds, StreamsDifferByName) {
  EXPECT_NE(stream_seed(42, "a"), stream_seed(42, "b"));
  EXPECT_NE(stream_seed(42, "a"), stream_seed(43, "a"));
  EXPECT_EQ(sample_generator(7, 3).next(), sample_generator(7, 3).next());
}

TEST(Report, JsonShape) {
  CheckReport r;
  r.check = "x";
  r.max_residual = std::numeric_limits<double>::infinity();
  r.worst_point = models::annulus_point(0.5, 0.1, 0.2, 0.3);
  const nlohmann::json j = r.to_json();
  EXPECT_EQ(j.at("max_residual"), "inf");
  EXPECT_EQ(j.at("worst_point").size(), 4u);
  EXPECT_EQ(j.at("worst_chart"), "annulus");
  for (const char* key : {"check", "params", "samples", "tolerance", "pass", "notes"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
}

TEST(Symplectomorphism, GluingMapPasses) {
  const CheckReport r = check_symplectomorphism(SurgeryGeometry{}, small(200), 1e-9);
  EXPECT_TRUE(r.pass) << r.to_json().dump();
  EXPECT_LE(r.max_residual, 1e-12);
}

TEST(Symplectomorphism, ShiftedMapFails) {
  const CheckReport r = check_symplectomorphism(shifted_gluing_map(), SurgeryGeometry{}, small(), 1e-9);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.max_residual, 1e-3);
}

TEST(Symplectomorphism, AtExplicitPoints) {
  const std::array<ChartPoint, 2> pts = {models::annulus_point(1.0, 0.1, 0.2, 0.3),
                                         models::annulus_point(0.8, 0.5, 0.5, 0.5)};
  EXPECT_TRUE(check_symplectomorphism_at(models::gluing_map(), pts, SurgeryGeometry{}, 1e-12).pass);
}

class IntegrabilityRegions : public ::testing::TestWithParam<Region> {};

TEST_P(IntegrabilityRegions, Passes) {
  IntegrabilitySetup s;
  s.region = GetParam();
  s.quotient = {3, 2};
  const CheckReport r = check_integrability(s, small(), 1e-8);
  EXPECT_TRUE(r.pass) << r.to_json().dump();
}

INSTANTIATE_TEST_SUITE_P(All, IntegrabilityRegions,
                         ::testing::Values(Region::kCPlane, Region::kPolar, Region::kBump,
                                           Region::kOuter, Region::kQuotient));

TEST(Integrability, FlippedTwistFails) {
  IntegrabilitySetup s;
  s.region = Region::kBump;
  s.flip_twist_sign = true;
  const CheckReport r = check_integrability(s, small(), 1e-8);
  EXPECT_FALSE(r.pass);
  EXPECT_GT(r.max_residual, 1e-3);
}

TEST(Integrability, RegionNames) {
  for (Region r : {Region::kCPlane, Region::kPolar, Region::kBump, Region::kOuter, Region::kQuotient}) {
    EXPECT_EQ(region_from_string(to_string(r)), r);
  }
  EXPECT_THROW(region_from_string("torus"), ContractError);
}

TEST(Twist, SliceIntegral) {
  const SurgeryGeometry g;
  EXPECT_NEAR(slice_integral(g, 1.0, g.r_out, 64), -1.0, 1e-10);
  EXPECT_EQ(slice_integral(g, g.r_out, g.r_out + 1.0, 8), 0.0);
  EXPECT_EQ(slice_integral(g, 0.1, 1.0, 8), 0.0);
}

TEST(Twist, HPropertiesPass) {
  const CheckReport r = check_h_properties(SurgeryGeometry{}, small(100));
  EXPECT_TRUE(r.pass) << r.to_json().dump();
  EXPECT_EQ(r.details.at("slice_sign"), -1);
}

TEST(Twist, SignResolvesToFrozenConvention) {
  const TwistSignResolution res = resolve_twist_sign(SurgeryGeometry{}, small());
  EXPECT_EQ(res.sign, models::kTwistSign);
  EXPECT_TRUE(check_twist_sign(SurgeryGeometry{}, small()).pass);
}

TEST(Twist, SimultaneousSurgery) {
  const std::array<SurgeryGeometry, 2> tubes = {SurgeryGeometry{0.05, 2.0}, SurgeryGeometry{0.05, 1.5}};
  EXPECT_TRUE(check_simultaneous_surgery(tubes, small(), 1e-8).pass);
}

TEST(Quotient, PassesForDefaultPairs) {
  for (const LogModelParams p : {LogModelParams{1, 0}, LogModelParams{2, 1}, LogModelParams{5, 2}}) {
    const CheckReport r = check_quotient(p, SurgeryGeometry{}, small());
    EXPECT_TRUE(r.pass) << r.to_json().dump();
    EXPECT_NEAR(r.details.at("tau").at("im").get<double>(), p.m, 1e-9);
  }
}

TEST(Quotient, OrbitSize) {
  EXPECT_EQ(orbit_size({3, 1}, models::annulus_point(0.4, 0.1, 0.2, 0.3)), 3u);
  EXPECT_EQ(orbit_size({1, 0}, models::annulus_point(0.4, 0.1, 0.2, 0.3)), 1u);
}

TEST(Quotient, RejectsNonCoprime) {
  EXPECT_THROW(check_quotient({4, 2}, SurgeryGeometry{}, small()), ContractError);
}

TEST(LocalModel, TypesAndPolarCompatibility) {
  EXPECT_TRUE(check_local_model_types(small()).pass);
  const CheckReport r = check_polar_compatibility(SurgeryGeometry{}, small(), 1e-10);
  EXPECT_TRUE(r.pass) << r.to_json().dump();
}

TEST(Locus, NewtonConvergesQuadratically) {
  const FormField rho = models::local_model_spinor();
  const ChartPoint seed = models::cplane_point(0.3, -0.2, 0.1, 0.4);
  const LocusPoint lp = locate_type_change(rho, std::span(&seed, 1)).front();
  EXPECT_TRUE(lp.converged);
  EXPECT_TRUE(lp.nondegenerate);
  EXPECT_LE(std::hypot(lp.location.coords[0], lp.location.coords[1]), 1e-12);
  EXPECT_TRUE(has_quadratic_decay(lp.residual_history));
}

TEST(Locus, CurvedFixture) {
  const FormField rho = models::cplane_spinor([](const Jet& z1, const Jet& z2) { return z1 - z2 * z2 * 0.3; });
  const ChartPoint seed = models::cplane_point(0.2, 0.1, 0.5, -0.3);
  const LocusPoint lp = locate_type_change(rho, std::span(&seed, 1)).front();
  ASSERT_TRUE(lp.converged);
  EXPECT_LE(std::abs(rho.value(lp.location)[0]), 1e-12);
  EXPECT_TRUE(has_quadratic_decay(lp.residual_history));
}

TEST(Locus, DegenerateFixtureIsFlagged) {
  const FormField rho = models::cplane_spinor([](const Jet& z1, const Jet&) { return z1 * z1; });
  const ChartPoint seed = models::cplane_point(0.2, 0.1, 0.0, 0.0);
  EXPECT_FALSE(locate_type_change(rho, std::span(&seed, 1)).front().nondegenerate);
}

TEST(Locus, QuadraticDecay) {
  EXPECT_TRUE(has_quadratic_decay({1e-1, 1e-2, 1e-4, 1e-8, 1e-16}));
  EXPECT_FALSE(has_quadratic_decay({1e-2, 5e-3, 2.5e-3}));
}

TEST(Locus, ModulusIsI) {
  const FormField rho = models::local_model_spinor();
  const ChartPoint seed = models::cplane_point(0.1, 0.1, 0.0, 0.0);
  LocusPoint lp = locate_type_change(rho, std::span(&seed, 1)).front();
  const LocusComplexStructure cs =
      locus_complex_structure(rho, lp, {{{0, 0, 1, 0}, {0, 0, 0, 1}}});
  EXPECT_LE(std::abs(cs.tau - Complex(0, 1)), 1e-12);
  EXPECT_LE(cs.antiholomorphic_residual, 1e-12);
  EXPECT_LE(cs.tangent_invariance_residual, 1e-12);
  ASSERT_TRUE(lp.tau.has_value());
  // A unimodular change of basis gives the same reduced modulus.
  const LocusComplexStructure cs2 =
      locus_complex_structure(rho, lp, {{{0, 0, 1, 0}, {0, 0, 1, 1}}});
  EXPECT_LE(std::abs(cs2.tau - cs.tau), 1e-12);
}

TEST(Locus, FundamentalDomain) {
  EXPECT_LE(std::abs(reduce_to_fundamental_domain({3.0, 1.0}) - Complex(0, 1)), 1e-12);
  EXPECT_LE(std::abs(reduce_to_fundamental_domain({0.0, 0.5}) - Complex(0, 2)), 1e-12);
  const Complex rho6(-0.5, std::sqrt(3.0) / 2);
  EXPECT_LE(std::abs(reduce_to_fundamental_domain({0.5, std::sqrt(3.0) / 2}) - rho6), 1e-12);
  EXPECT_THROW(reduce_to_fundamental_domain({0.0, -1.0}), ContractError);
}

TEST(Locus, CheckPasses) { EXPECT_TRUE(check_locus(small(20), 1e-9).pass); }

TEST(Algebra, Checks) {
  EXPECT_TRUE(check_clifford_relation(small(200), 1e-12).pass);
  EXPECT_TRUE(check_pairing_signature().pass);
  const CheckReport a = check_annihilators(small(50), 1e-10);
  EXPECT_TRUE(a.pass) << a.to_json().dump();
  EXPECT_EQ(a.details.at("fixed_dimensions"), nlohmann::json({4, 4, 4}));
  EXPECT_TRUE(check_bracket_b_transform(true, small(20), 1e-8).pass);
  EXPECT_TRUE(check_bracket_b_transform(false, small(20), 1e-8).pass);
  EXPECT_TRUE(check_bracket_shift_sign(small(20)).pass);
}

TEST(Determinism, JobsDoNotChangeReports) {
  IntegrabilitySetup s;
  s.region = Region::kBump;
  const nlohmann::json a = check_integrability(s, small(64, 1), 1e-8).to_json();
  const nlohmann::json b = check_integrability(s, small(64, 4), 1e-8).to_json();
  EXPECT_EQ(a.dump(), b.dump());
}
