#include "gcx/json_io.hpp"
#include "test_support.hpp"

using namespace gcx;
using namespace gcx::testing;
using nlohmann::json;

TEST(MultiformJson, SortsIndicesWithSign) {
  const json j = json::parse(R"({"dim": 4, "terms": [{"indices": [2, 1], "re": 1.0},
                                                       {"indices": [3], "im": 2.0}]})");
  const Multiform a = multiform_from_json(j);
  EXPECT_EQ(a[mask_of({0, 1})], Complex(-1.0));
  EXPECT_EQ(a[mask_of({2})], Complex(0.0, 2.0));
}

TEST(MultiformJson, RoundTripAndOrdering) {
  verify::SplitMix64 rng(3);
  const Multiform a = rand_form(rng, 4);
  const json j = to_json(a);
  EXPECT_EQ(max_abs(multiform_from_json(j) - a), 0.0);
  EXPECT_EQ(j["terms"][0]["indices"], json::array());
  EXPECT_EQ(j["terms"][1]["indices"], json({1}));
  EXPECT_EQ(j["terms"][5]["indices"], json({1, 2}));
  EXPECT_EQ(j["terms"].back()["indices"], json({1, 2, 3, 4}));
}

TEST(MultiformJson, Rejections) {
  EXPECT_THROW(multiform_from_json(json::parse(R"({"dim": 4, "terms": [{"indices": [1, 1]}]})")),
               ContractError);
  EXPECT_THROW(multiform_from_json(json::parse(R"({"dim": 4, "terms": [{"indices": [5]}]})")),
               ContractError);
  EXPECT_THROW(multiform_from_json(json::parse(R"({"terms": []})")), ContractError);
  EXPECT_THROW(multiform_from_json(json::parse(R"({"dim": 4, "terms": [{"indices": [1], "re": "x"}]})")),
               ContractError);
}

TEST(GcVectorJson, RoundTrip) {
  const GcVector v = gc(4, {1.0, Complex(0, 2)}, {0, 0, -3.0, 0});
  EXPECT_EQ(max_abs(gc_vector_from_json(to_json(v)) - v), 0.0);
  const json plain = json::parse(R"({"dim": 2, "vec": [1, 2], "cov": [3, 4]})");
  EXPECT_EQ(gc_vector_from_json(plain).cov[1], Complex(4.0));
  EXPECT_THROW(gc_vector_from_json(json::parse(R"({"dim": 2, "vec": [1], "cov": [3, 4]})")),
               ContractError);
}

TEST(NormalFormJson, Fields) {
  const json j = to_json(normal_form(dz1_dz2()));
  EXPECT_EQ(j["type"], 2);
  EXPECT_EQ(j["gauge_unique"], false);
  EXPECT_EQ(j["omega0"]["terms"].size(), 4u);
}

TEST(ExprFormJson, RoundTrip) {
  const json j = json::parse(R"({"dim": 4, "terms": [
      {"indices": [2, 1], "coeff": {"op": "mul", "args": [{"var": 3}, 2.0]}}]})");
  const BasicMultiform<Expr> f = form_exprs_from_json(j);
  const std::array<double, kMaxDim> x{0, 0, 1.5, 0};
  EXPECT_EQ(f[mask_of({0, 1})].eval_value(x), Complex(-3.0));
  const BasicMultiform<Expr> g = form_exprs_from_json(to_json(f));
  EXPECT_EQ(g[mask_of({0, 1})].eval_value(x), Complex(-3.0));
}

TEST(GcVectorExprJson, Parses) {
  const GcVectorExprs e = gc_vector_exprs_from_json(
      json::parse(R"({"dim": 4, "vec": [1, 0, 0, {"var": 2}], "cov": [0, 0, 0, 0]})"));
  EXPECT_EQ(e.vec[3].eval_value({0, 7.0, 0, 0}), Complex(7.0));
  EXPECT_THROW(gc_vector_exprs_from_json(json::parse(R"({"dim": 4, "vec": [1], "cov": []})")),
               ContractError);
}
