#include <nlohmann/json.hpp>

#include "gcx/expr.hpp"
#include "test_support.hpp"

using namespace gcx;

namespace {

JetCoords seed(double a, double b, double c, double d) {
  return {Jet::variable(a, 0), Jet::variable(b, 1), Jet::variable(c, 2), Jet::variable(d, 3)};
}

}  // namespace

TEST(Jet, ProductRule) {
  const JetCoords x = seed(2.0, 3.0, 0.0, 0.0);
  const Jet f = x[0] * x[0] * x[1];  // x^2 y
  EXPECT_EQ(f.value(), Complex(12.0));
  EXPECT_EQ(f.d1(0), Complex(12.0));
  EXPECT_EQ(f.d1(1), Complex(4.0));
  EXPECT_EQ(f.d2(0, 0), Complex(6.0));
  EXPECT_EQ(f.d2(0, 1), Complex(4.0));
  EXPECT_EQ(f.d2(1, 0), Complex(4.0));
  EXPECT_EQ(f.d2(1, 1), Complex(0.0));
}

TEST(Jet, ElementaryFunctions) {
  const JetCoords x = seed(0.7, 0.0, 0.0, 0.0);
  const double v = 0.7;
  const Jet e = exp(x[0]);
  EXPECT_NEAR(e.d2(0, 0).real(), std::exp(v), 1e-15);
  const Jet l = log(x[0]);
  EXPECT_NEAR(l.d1(0).real(), 1.0 / v, 1e-15);
  EXPECT_NEAR(l.d2(0, 0).real(), -1.0 / (v * v), 1e-14);
  const Jet s = sqrt(x[0]);
  EXPECT_NEAR(s.d2(0, 0).real(), -0.25 * std::pow(v, -1.5), 1e-14);
  const Jet c = cos(x[0]);
  EXPECT_NEAR(c.d1(0).real(), -std::sin(v), 1e-15);
  const Jet p = pow(x[0], 2.5);
  EXPECT_NEAR(p.d2(0, 0).real(), 2.5 * 1.5 * std::pow(v, 0.5), 1e-14);
  const Jet r = reciprocal(x[0]);
  EXPECT_NEAR(r.d2(0, 0).real(), 2.0 / (v * v * v), 1e-13);
}

TEST(Jet, IntegerPowerAtZero) {
  const JetCoords x = seed(0.0, 0.0, 0.0, 0.0);
  const Jet p = pow(x[0], 2.0);
  EXPECT_EQ(p.value(), Complex(0.0));
  EXPECT_EQ(p.d2(0, 0), Complex(2.0));
}

TEST(Expr, DerivativeMatchesJet) {
  const Expr x = Expr::var(0);
  const Expr y = Expr::var(1);
  const Expr f = sin_turns(x) * exp(y) + pow(x, 3.0) / (y + 2.0) - log(x + 3.0);
  const JetCoords at = seed(0.3, -0.4, 0.0, 0.0);
  const Jet j = f.eval(at);
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(std::abs(f.derivative(i).eval(at).value() - j.d1(i)), 0.0, 1e-13);
    for (int k = 0; k < 2; ++k) {
      EXPECT_NEAR(std::abs(f.derivative(i).derivative(k).eval(at).value() - j.d2(i, k)), 0.0,
                  1e-12);
    }
  }
}

TEST(Expr, SineUsesTurns) {
  const Expr s = sin_turns(Expr::var(0));
  EXPECT_NEAR(s.eval_value({0.25, 0, 0, 0}).real(), 1.0, 1e-15);
  EXPECT_NEAR(s.derivative(0).eval_value({0.0, 0, 0, 0}).real(), kTwoPi, 1e-14);
}

TEST(Expr, ConstantFolding) {
  const Expr e = Expr(2.0) * Expr(3.0) + Expr(0.0);
  EXPECT_TRUE(e.is_const());
  EXPECT_EQ(e.constant(), Complex(6.0));
  EXPECT_TRUE(Expr::var(1).derivative(0).is_zero());
  EXPECT_THROW(Expr::var(0) / Expr(0.0), ContractError);
}

TEST(Expr, JsonRoundTrip) {
  const nlohmann::json j = nlohmann::json::parse(R"({"op":"add","args":[
      {"op":"mul","args":[{"var":1},{"var":2},{"re":0,"im":1}]},
      {"op":"pow","exponent":2,"args":[{"var":3}]},
      {"op":"sub","args":[{"op":"cos","args":[{"var":4}]},1.5]},
      {"op":"div","args":[1,{"op":"exp","args":[{"var":1}]}]},
      {"op":"neg","args":[{"op":"log","args":[{"op":"add","args":[2,{"var":2}]}]}]}]})");
  const Expr e = Expr::from_json(j);
  const Expr back = Expr::from_json(e.to_json());
  const std::array<double, 4> p{0.2, 0.3, 0.4, 0.1};
  EXPECT_NEAR(std::abs(e.eval_value(p) - back.eval_value(p)), 0.0, 1e-15);
  const Complex expected = Complex(0, 0.06) + 0.16 + (std::cos(kTwoPi * 0.1) - 1.5) +
                           std::exp(-0.2) - std::log(2.3);
  EXPECT_NEAR(std::abs(e.eval_value(p) - expected), 0.0, 1e-14);
}

TEST(Expr, JsonRejectsBadInput) {
  EXPECT_THROW(Expr::from_json(nlohmann::json::parse(R"({"var":5})")), ContractError);
  EXPECT_THROW(Expr::from_json(nlohmann::json::parse(R"({"op":"tan","args":[1]})")),
               ContractError);
  EXPECT_THROW(Expr::from_json(nlohmann::json::parse(R"({"op":"pow","args":[1]})")),
               ContractError);
  EXPECT_THROW(Expr::from_json(nlohmann::json::parse(R"("x")")), ContractError);
}
