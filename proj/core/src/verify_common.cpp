#include <cmath>

#include "gcx/verify.hpp"

namespace gcx::verify {

std::uint64_t stream_seed(std::uint64_t seed, std::string_view stream) {
  std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a
  for (unsigned char c : stream) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return SplitMix64(seed ^ h).next();
}

SplitMix64 sample_generator(std::uint64_t stream, std::uint64_t index) {
  SplitMix64 mix(stream + 0xD1B54A32D192ED03ull * (index + 1));
  return SplitMix64(mix.next());
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j;
  j["check"] = check;
  j["params"] = params;
  j["samples"] = samples;
  j["max_residual"] = std::isfinite(max_residual) ? nlohmann::json(max_residual) : nlohmann::json("inf");
  j["tolerance"] = tolerance;
  if (worst_point) {
    j["worst_point"] = std::vector<double>(worst_point->coords.begin(),
                                           worst_point->coords.begin() + worst_point->dim);
    j["worst_chart"] = to_string(worst_point->chart);
  } else {
    j["worst_point"] = nullptr;
  }
  j["pass"] = pass;
  j["notes"] = notes;
  j["details"] = details;
  return j;
}

void apply_aggregate(CheckReport& report, const Aggregate& agg, double tol) {
  report.samples = agg.count;
  report.max_residual = agg.max_residual;
  report.worst_point = agg.worst_point;
  report.tolerance = tol;
  report.pass = agg.all_ok && agg.max_residual <= tol;
  if (!agg.all_ok) report.notes.push_back(agg.first_failure);
}

std::string to_string(Region region) {
  switch (region) {
    case Region::kCPlane:
      return "cplane";
    case Region::kPolar:
      return "polar";
    case Region::kBump:
      return "bump";
    case Region::kOuter:
      return "outer";
    case Region::kQuotient:
      return "quotient";
  }
  throw InternalError("unknown region");
}

Region region_from_string(const std::string& name) {
  for (Region r : {Region::kCPlane, Region::kPolar, Region::kBump, Region::kOuter,
                   Region::kQuotient}) {
    if (to_string(r) == name) return r;
  }
  throw ContractError("unknown region '" + name + "'");
}

}  // namespace gcx::verify
