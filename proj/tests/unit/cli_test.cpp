#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gcx_cli/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "gcx");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = gcx::cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return std::string(GCX_TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, CheckAlgebraPasses) {
  const Outcome o = invoke({"check", "algebra", "--samples", "20"});
  EXPECT_EQ(o.code, 0) << o.err;
  const auto doc = nlohmann::json::parse(o.out);
  ASSERT_TRUE(doc.is_array());
  EXPECT_GE(doc.size(), 5u);
  for (const auto& r : doc) EXPECT_TRUE(r.at("pass").get<bool>()) << r.dump();
  EXPECT_NE(o.err.find("PASS"), std::string::npos);
}

TEST(Cli, LocalModelWithOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "gcx_cli_local.json";
  const Outcome o = invoke({"check", "local-model", "--samples", "10", "--output", path.string()});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("local_model_types"), std::string::npos);
  std::ifstream in(path);
  const auto doc = nlohmann::json::parse(in);
  EXPECT_EQ(doc.size(), 3u);
  std::filesystem::remove(path);
}

TEST(Cli, QuotientSinglePair) {
  const Outcome o = invoke({"check", "quotient", "--samples", "10", "--m", "3", "--k", "1"});
  EXPECT_EQ(o.code, 0) << o.err;
  const auto doc = nlohmann::json::parse(o.out);
  EXPECT_EQ(doc[0]["params"]["m"], 3);
}

TEST(Cli, TightToleranceFails) {
  const Outcome o = invoke({"check", "surgery", "--samples", "10", "--tol", "1e-30"});
  EXPECT_EQ(o.code, 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"check", "nonsense"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"check", "quotient", "--m", "3"}).code, 2);
  EXPECT_EQ(invoke({"check", "quotient", "--m", "4", "--k", "2"}).code, 2);
  EXPECT_EQ(invoke({"check", "surgery", "--r-out", "0.5"}).code, 2);
  EXPECT_EQ(invoke({"normal-form", "--input", "/nonexistent.json"}).code, 2);
  const Outcome o = invoke({"check", "locus", "--samples", "0"});
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("usage error"), std::string::npos);
}

TEST(Cli, NormalFormSymplectic) {
  const Outcome o = invoke({"normal-form", "--input", data("symplectic_spinor.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto doc = nlohmann::json::parse(o.out);
  EXPECT_EQ(doc["type"], 0);
  EXPECT_EQ(doc["nondegenerate"], true);
  EXPECT_EQ(doc["B"]["terms"].size(), 0u);
}

TEST(Cli, NormalFormComplex) {
  const Outcome o = invoke({"normal-form", "--input", data("complex_spinor.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto doc = nlohmann::json::parse(o.out);
  EXPECT_EQ(doc["type"], 2);
  EXPECT_EQ(doc["gauge_unique"], false);
}

TEST(Cli, Bracket) {
  const Outcome o = invoke({"bracket", "--input", data("bracket.json")});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto b = nlohmann::json::parse(o.out)["bracket"];
  EXPECT_EQ(b["cov"][1]["re"], 1.0);
  EXPECT_EQ(b["vec"][0]["re"], 0.0);
  const Outcome t = invoke({"bracket", "--input", data("bracket_twisted.json")});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_EQ(nlohmann::json::parse(t.out)["bracket"]["cov"][2]["re"], 1.0);
}

TEST(Cli, SeedFromEnvironment) {
  setenv("GCX_SEED", "7", 1);
  const Outcome o = invoke({"check", "locus", "--samples", "3"});
  unsetenv("GCX_SEED");
  EXPECT_EQ(nlohmann::json::parse(o.out)[0]["params"]["seed"], 7);
}

TEST(Cli, RunConfigValidation) {
  gcx::cli::RunConfig c;
  c.checks = {"all"};
  c.quotient_params = gcx::cli::default_quotient_params();
  EXPECT_NO_THROW(c.validate());
  c.jobs = 0;
  EXPECT_THROW(c.validate(), gcx::ContractError);
}
