#include <cmath>

#include "gcx/chart.hpp"
#include "gcx/models.hpp"
#include "test_support.hpp"

using namespace gcx;
using namespace gcx::testing;

namespace {

Expr polynomial(verify::SplitMix64& rng) {
  Expr p = rng.uniform(-1, 1);
  for (int i = 0; i < 4; ++i) {
    p = p + Expr::var(i) * rng.uniform(-1, 1);
    for (int j = i; j < 4; ++j) p = p + Expr::var(i) * Expr::var(j) * rng.uniform(-1, 1);
  }
  return p;
}

// A nonpolynomial coefficient so second partials are exercised.
Expr smooth(verify::SplitMix64& rng) {
  return polynomial(rng) * exp(Expr::var(static_cast<int>(rng.next() % 4)) * 0.5) +
         sin_turns(Expr::var(static_cast<int>(rng.next() % 4)) * rng.uniform(-1, 1));
}

BasicMultiform<Expr> random_exprs(verify::SplitMix64& rng, int degree) {
  BasicMultiform<Expr> out(4);
  for (Mask m = 0; m < out.size(); ++m) {
    if (degree < 0 || degree_of(m) == degree) out.at(m) = smooth(rng);
  }
  return out;
}

ChartPoint random_point(verify::SplitMix64& rng) {
  return ChartPoint::make(ChartId::kGeneric, 4,
                          {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
}

ChartPoint shifted(const ChartPoint& p, int i, double h) {
  auto c = p.coords;
  c[i] += h;
  return ChartPoint::make(p.chart, p.dim, c, p.periodic);
}

// A nonlinear diffeomorphism near the origin.
ChartMap twisted_map() {
  return ChartMap({}, 4, [](const JetCoords& x) {
    return JetCoords{x[0] + x[1] * x[1] * 0.2, x[1] + sin(x[2]) * 0.3, x[2] * exp(x[3] * 0.1), x[3] + x[0] * x[2] * 0.1};
  });
}

class CalculusProperty : public ::testing::TestWithParam<int> {
 protected:
  verify::SplitMix64 rng{static_cast<std::uint64_t>(GetParam())};
};

}  // namespace

TEST_P(CalculusProperty, DSquaredVanishes) {
  for (int t = 0; t < 30; ++t) {
    const FormField a = FormField::from_exprs(random_exprs(rng, -1));
    const ChartPoint p = random_point(rng);
    EXPECT_LE(max_abs(exterior_derivative(exterior_derivative_jet(a.jet(p)))), 1e-12);
  }
}

TEST_P(CalculusProperty, LeibnizRule) {
  for (int t = 0; t < 30; ++t) {
    const int k = static_cast<int>(rng.next() % 4);
    const FormField a = FormField::from_exprs(random_exprs(rng, k));
    const FormField b = FormField::from_exprs(random_exprs(rng, -1));
    const ChartPoint p = random_point(rng);
    const Multiform lhs = exterior_derivative(wedge(a, b), p);
    const Multiform rhs = wedge(exterior_derivative(a, p), b.value(p)) +
                          wedge(a.value(p), exterior_derivative(b, p)).scaled(k % 2 ? -1.0 : 1.0);
    EXPECT_LE(max_abs(lhs - rhs), 1e-12);
  }
}

TEST_P(CalculusProperty, JetsMatchFiniteDifferences) {
  const double h = 1e-5;
  for (int t = 0; t < 20; ++t) {
    const FormField a = FormField::from_exprs(random_exprs(rng, -1));
    const ChartPoint p = random_point(rng);
    const FormJet jet = a.jet(p);
    for (int i = 0; i < 4; ++i) {
      const Multiform fd = (a.value(shifted(p, i, h)) - a.value(shifted(p, i, -h))).scaled(0.5 / h);
      EXPECT_LE(max_abs(fd - jet.d1[i]), 1e-7);
      const Multiform fd2 =
          (a.jet(shifted(p, i, h)).d1[(i + 1) % 4] - a.jet(shifted(p, i, -h)).d1[(i + 1) % 4]).scaled(0.5 / h);
      EXPECT_LE(max_abs(fd2 - jet.d2[i][(i + 1) % 4]), 1e-6);
    }
  }
}

TEST_P(CalculusProperty, PullbackIsNatural) {
  const ChartMap phi = twisted_map();
  for (int t = 0; t < 20; ++t) {
    const FormField a = FormField::from_exprs(random_exprs(rng, 1));
    const BasicMultiform<Expr> b_exprs = random_exprs(rng, 2);
    const FormField b = FormField::from_exprs(b_exprs);
    const ChartPoint p = ChartPoint::make(ChartId::kGeneric, 4,
                                          {rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5),
                                           rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)});
    EXPECT_LE(max_abs(pullback(phi, wedge(a, b), p) - wedge(pullback(phi, a, p), pullback(phi, b, p))),
              1e-12);
    // d commutes with pullback.
    const Multiform lhs = exterior_derivative(pullback_jet(phi, b, p));
    const Multiform rhs = pullback(phi, FormField::from_exprs(exterior_derivative(b_exprs)), p);
    EXPECT_LE(max_abs(lhs - rhs), 1e-11);
  }
}

TEST_P(CalculusProperty, CourantIsSkewAndClosedBIsASymmetry) {
  for (int t = 0; t < 20; ++t) {
    auto field = [&] {
      std::array<Expr, kMaxDim> vec;
      std::array<Expr, kMaxDim> cov;
      for (auto& e : vec) e = polynomial(rng);
      for (auto& e : cov) e = polynomial(rng);
      return GcVectorField::from_exprs(4, vec, cov);
    };
    const GcVectorField u = field();
    const GcVectorField v = field();
    const FormField h = FormField::from_exprs(random_exprs(rng, 3));
    const FormField b = FormField::from_exprs(exterior_derivative(random_exprs(rng, 1)));
    const ChartPoint p = random_point(rng);
    EXPECT_LE(max_abs(courant_bracket(u, v, h, p) + courant_bracket(v, u, h, p)), 1e-11);
    const GcVectorField w = b_transform_inverse(
        b, GcVectorField::constant(courant_bracket(b_transform(b, u), b_transform(b, v), h, p)));
    const GcVector lhs = w.jet(p).value;
    EXPECT_LE(max_abs(lhs - courant_bracket(u, v, h, p)), 1e-10);
  }
}

TEST_P(CalculusProperty, IntegrabilityIsBInvariantForClosedB) {
  const FormField rho = models::local_model_spinor();
  for (int t = 0; t < 20; ++t) {
    const FormField b = FormField::from_exprs(exterior_derivative(random_exprs(rng, 1)));
    const FormField moved = wedge(exp_wedge(b), rho);
    EXPECT_LE(integrability_residual(moved, FormField(), random_point(rng)).residual, 1e-10);
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, CalculusProperty, ::testing::Values(1, 42, 2024));
