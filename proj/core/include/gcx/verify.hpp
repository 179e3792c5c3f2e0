#pragma once

// Check runners. Each check samples chart points from a seeded stream,
// evaluates an identity there and reports the sup-norm of its residual.
// Samples are generated from (seed, check name, sample index) alone, so the
// report does not depend on how many threads evaluate them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <exception>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "gcx/chart.hpp"
#include "gcx/models.hpp"

namespace gcx::verify {

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

std::uint64_t stream_seed(std::uint64_t seed, std::string_view stream);
SplitMix64 sample_generator(std::uint64_t stream, std::uint64_t index);

struct RunOptions {
  std::uint64_t seed = 42;
  std::size_t samples = 1000;
  int jobs = 1;
};

struct CheckReport {
  std::string check;
  nlohmann::json params = nlohmann::json::object();
  std::size_t samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::optional<ChartPoint> worst_point;
  bool pass = false;
  std::vector<std::string> notes;
  nlohmann::json details = nlohmann::json::object();

  nlohmann::json to_json() const;
};

struct SampleOutcome {
  SampleOutcome() = default;
  explicit SampleOutcome(const ChartPoint& p) : point(p) {}

  ChartPoint point;
  double residual = 0.0;
  bool ok = true;  // sub-assertions other than the residual bound
  std::string failure;
  std::array<double, 4> extra{};  // secondary residuals, max-reduced
};

struct Aggregate {
  double max_residual = 0.0;
  std::optional<ChartPoint> worst_point;
  bool all_ok = true;
  std::string first_failure;
  std::size_t count = 0;
  std::array<double, 4> extra{};
};

// Evaluates eval(i) for i in [0, n) on `jobs` threads and reduces with
// max/AND. Ties and failures resolve to the lowest index. NaN residuals count
// as +inf. An exception thrown by any sample is rethrown (lowest index first).
template <class Eval>
Aggregate run_samples(std::size_t n, int jobs, Eval&& eval) {
  std::vector<SampleOutcome> outcomes(n);
  std::vector<std::exception_ptr> errors(n);
  auto work = [&](std::size_t start, std::size_t stride) {
    for (std::size_t i = start; i < n; i += stride) {
      try {
        outcomes[i] = eval(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = static_cast<std::size_t>(std::max(1, jobs));
  if (threads == 1 || n < 2) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  Aggregate agg;
  agg.count = n;
  for (std::size_t i = 0; i < n; ++i) {
    const SampleOutcome& o = outcomes[i];
    const double r = std::isnan(o.residual) ? std::numeric_limits<double>::infinity() : o.residual;
    if (!agg.worst_point || r > agg.max_residual) {
      agg.max_residual = r;
      agg.worst_point = o.point;
    }
    for (std::size_t k = 0; k < o.extra.size(); ++k) {
      const double e = std::isnan(o.extra[k]) ? std::numeric_limits<double>::infinity() : o.extra[k];
      agg.extra[k] = std::max(agg.extra[k], e);
    }
    if (!o.ok && agg.all_ok) {
      agg.all_ok = false;
      agg.first_failure = o.failure;
    }
  }
  return agg;
}

// Fills residual, worst point and pass (max <= tol and all sub-assertions).
void apply_aggregate(CheckReport& report, const Aggregate& agg, double tol);

// ---------------------------------------------------------------- surgery

// psi^* sigma = omega on the annulus max(1/sqrt(e), r_min) < r <= 1.
CheckReport check_symplectomorphism(const models::SurgeryGeometry& geometry,
                                    const RunOptions& run, double tol);
// Same identity for an arbitrary candidate map at explicit points.
CheckReport check_symplectomorphism_at(const ChartMap& map, std::span<const ChartPoint> points,
                                       const models::SurgeryGeometry& geometry, double tol);
// Same identity for an arbitrary candidate map at seeded annulus samples.
CheckReport check_symplectomorphism(const ChartMap& map, const models::SurgeryGeometry& geometry,
                                    const RunOptions& run, double tol);

enum class Region { kCPlane, kPolar, kBump, kOuter, kQuotient };

std::string to_string(Region region);
Region region_from_string(const std::string& name);

struct IntegrabilitySetup {
  Region region = Region::kCPlane;
  models::SurgeryGeometry geometry;
  models::LogModelParams quotient;
  bool flip_twist_sign = false;  // negative control for the bump region
};

// Sup over samples of the integrability residual. The cplane region also
// checks the witness against -d/dz2 modulo the annihilator; the outer region
// checks that v = 0 is recovered.
CheckReport check_integrability(const IntegrabilitySetup& setup, const RunOptions& run,
                                double tol);

struct HCheckOptions {
  int quadrature_subintervals = 64;
  double closedness_tol = 1e-8;
  double slice_tol = 1e-6;
};

// Integral of H over {s2 = const} restricted to rt in [r_lo, r_hi].
double slice_integral(const models::SurgeryGeometry& geometry, double r_lo, double r_hi,
                      int subintervals);

CheckReport check_h_properties(const models::SurgeryGeometry& geometry, const RunOptions& run,
                               const HCheckOptions& options = {});

// The surgery along several disjoint tori, one tube geometry per torus.
CheckReport check_simultaneous_surgery(std::span<const models::SurgeryGeometry> tubes,
                                       const RunOptions& run, double tol);

struct TwistSignResolution {
  int sign = 0;  // H = sign * d(B~) makes exp(B~ + i sigma) integrable
  double residual_plus = 0.0;
  double residual_minus = 0.0;
};

TwistSignResolution resolve_twist_sign(const models::SurgeryGeometry& geometry,
                                       const RunOptions& run);

// Passes when the resolved sign equals kTwistSign and the opposite sign
// leaves a bump-region residual above `control_floor`.
CheckReport check_twist_sign(const models::SurgeryGeometry& geometry, const RunOptions& run,
                             double control_floor = 1e-3);

// ---------------------------------------------------------------- quotient

struct QuotientTolerances {
  double identity = 1e-12;     // omega' pullback and deck invariance
  double discrepancy = 1e-10;  // B' pullback minus B against (m-1) dlog r ^ dt2
  double integrability = 1e-8;
};

CheckReport check_quotient(const models::LogModelParams& params,
                           const models::SurgeryGeometry& geometry, const RunOptions& run,
                           const QuotientTolerances& tol = {});

// Distinct points in the deck orbit of p.
std::size_t orbit_size(const models::LogModelParams& params, const ChartPoint& p);

// ---------------------------------------------------------------- local model

// Type 2 exactly on x1 = y1 = 0 and type 0 elsewhere.
CheckReport check_local_model_types(const RunOptions& run);

// normal_form of the C^2 model pulled back to the annulus matches the polar
// B + i omega (angle t1 measured in radians) up to the global scalar z1.
CheckReport check_polar_compatibility(const models::SurgeryGeometry& geometry,
                                      const RunOptions& run, double tol);

// ---------------------------------------------------------------- locus

struct LocateOptions {
  double tol = 1e-9;  // smallest singular value required for nondegeneracy
  double value_tol = 1e-12;
  double step_tol = 1e-12;
  int max_iter = 50;
};

struct LocusPoint {
  ChartPoint location;
  bool converged = false;
  bool nondegenerate = false;
  int iterations = 0;
  std::vector<double> residual_history;  // |rho_0| before each step
  double smallest_singular_value = 0.0;
  std::array<std::array<double, kMaxDim>, 2> tangent{};
  std::optional<Complex> tau;
};

std::vector<LocusPoint> locate_type_change(const FormField& rho, std::span<const ChartPoint> seeds,
                                           const LocateOptions& options = {});

// r_{i+1} <= c r_i^2 for every step above the round-off floor.
bool has_quadratic_decay(const std::vector<double>& history, double c = 10.0,
                         double floor = 1e-13);

struct LocusComplexStructure {
  double antiholomorphic_residual = 0.0;  // max |d rho_0 (X)| over X in T^{0,1}
  double tangent_invariance_residual = 0.0;
  double lattice_in_tangent_residual = 0.0;
  Complex tau_raw;
  Complex tau;  // reduced to the standard fundamental domain
};

LocusComplexStructure locus_complex_structure(
    const FormField& rho, LocusPoint& lp,
    const std::array<std::array<double, kMaxDim>, 2>& lattice);

// SL(2, Z) reduction to |Re tau| <= 1/2, |tau| >= 1.
Complex reduce_to_fundamental_domain(Complex tau);

CheckReport check_locus(const RunOptions& run, double tol);

// ---------------------------------------------------------------- algebra

CheckReport check_clifford_relation(const RunOptions& run, double tol);
CheckReport check_pairing_signature();
CheckReport check_annihilators(const RunOptions& run, double tol);

// Closed B: E_B is a symmetry of the H-bracket. Non-closed B:
// E_B^{-1}[E_B u, E_B v]_H = [u, v]_{H + s dB} with s = kBracketShiftSign.
CheckReport check_bracket_b_transform(bool closed_b, const RunOptions& run, double tol);

inline constexpr int kBracketShiftSign = 1;

struct BracketShiftResolution {
  int sign = 0;
  double residual_plus = 0.0;
  double residual_minus = 0.0;
};

BracketShiftResolution resolve_bracket_shift_sign(const RunOptions& run);

// Passes when the resolved shift sign equals kBracketShiftSign.
CheckReport check_bracket_shift_sign(const RunOptions& run);

}  // namespace gcx::verify
