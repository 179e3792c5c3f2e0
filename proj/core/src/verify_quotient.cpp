#include <cmath>

#include "gcx/verify.hpp"

namespace gcx::verify {

namespace {

using models::LogModelParams;
using models::SurgeryGeometry;

ChartPoint random_annulus(SplitMix64& rng, double r_lo, double r_hi) {
  return models::annulus_point(rng.uniform(r_lo, r_hi), rng.uniform(), rng.uniform(),
                               rng.uniform());
}

}  // namespace

std::size_t orbit_size(const LogModelParams& params, const ChartPoint& p) {
  const ChartMap deck = models::deck_map(params);
  std::vector<ChartPoint> orbit{p};
  ChartPoint q = deck.apply(p);
  while (!q.same_point(p, 1e-9)) {
    ensure(orbit.size() <= static_cast<std::size_t>(params.m), "deck orbit longer than m");
    orbit.push_back(q);
    q = deck.apply(q);
  }
  return orbit.size();
}

CheckReport check_quotient(const LogModelParams& params, const SurgeryGeometry& g,
                           const RunOptions& run, const QuotientTolerances& tol) {
  params.validate();
  g.validate();
  CheckReport report;
  report.check = "quotient";
  report.params = {{"m", params.m}, {"k", params.k}, {"r_min", g.r_min}};
  const ChartMap cover = models::quotient_cover_map(params);
  const ChartMap deck = models::deck_map(params);
  const FormField omega_q = models::log_model_omega_field(params, g);
  const FormField b_q = models::log_model_b_field(params, g);
  const FormField rho_q = models::log_model_spinor(params, g);
  const FormField omega = models::polar_omega_field(g);
  const FormField b = models::polar_b_field(g);
  const FormField discrepancy = models::expected_b_discrepancy(params, g);
  report.params["seed"] = run.seed;
  const std::uint64_t stream = stream_seed(run.seed, report.check);

  const Aggregate agg = run_samples(run.samples, run.jobs, [&](std::size_t i) {
    SplitMix64 rng = sample_generator(stream, i);
    SampleOutcome out{random_annulus(rng, g.r_min, 1.0)};
    const ChartPoint& p = out.point;
    const ChartPoint q = cover.apply(p);
    const ChartPoint dp = deck.apply(p);

    const double omega_err = max_abs(pullback(cover, omega_q, p) - omega.value(p));
    // The deck transformation preserves omega and covers the identity.
    const double deck_err = std::max({max_abs(pullback(deck, omega, p) - omega.value(p)),
                                      max_abs(pullback(deck, b, p) - b.value(p)),
                                      cover.apply(dp).same_point(q, 1e-12) ? 0.0 : 1.0});
    out.residual = std::max(omega_err, deck_err);

    out.extra[0] = max_abs(pullback(cover, b_q, p) - b.value(p) - discrepancy.value(p));
    out.extra[1] = integrability_residual(rho_q, FormField(), q).residual;
    out.extra[2] = max_abs(exterior_derivative(discrepancy, p));
    if (out.extra[0] > tol.discrepancy) {
      out.ok = false;
      out.failure = "pulled-back B' minus B is not (m-1) dlog r ^ dt2";
    } else if (out.extra[2] > tol.discrepancy) {
      out.ok = false;
      out.failure = "B discrepancy is not closed";
    } else if (out.extra[1] > tol.integrability) {
      out.ok = false;
      out.failure = "quotient spinor is not integrable";
    } else if (orbit_size(params, p) != static_cast<std::size_t>(params.m)) {
      out.ok = false;
      out.failure = "deck orbit does not have m points";
    }
    return out;
  });
  apply_aggregate(report, agg, tol.identity);
  report.details["b_discrepancy_residual"] = agg.extra[0];
  report.details["integrability_residual"] = agg.extra[1];
  report.details["b_discrepancy_closedness"] = agg.extra[2];
  const std::size_t central_orbit = orbit_size(params, models::annulus_point(0.0, 0.1, 0.2, 0.3));
  report.details["central_orbit_size"] = central_orbit;
  if (central_orbit != static_cast<std::size_t>(params.m)) {
    report.pass = false;
    report.notes.push_back("deck action has a fixed point on the central torus");
  }
  report.details["b_discrepancy"] = "(m-1) dlog r ^ dt2, closed";
  report.notes.push_back("pulled-back B' differs from B by the closed form (m-1) dlog r ^ dt2");

  // Central fibre modulus from the C^2 model with the quotient fibre lattice.
  LocusPoint lp;
  lp.location = models::cplane_point(0.0, 0.0, 0.3, 0.7);
  const FormField model = models::local_model_spinor();
  std::vector<LocusPoint> located = locate_type_change(model, std::span(&lp.location, 1));
  const LocusComplexStructure cs =
      locus_complex_structure(model, located.front(), models::quotient_fiber_lattice(params));
  const double tau_err = std::abs(cs.tau_raw - Complex(0.0, params.m));
  report.details["tau"] = {{"re", cs.tau_raw.real()}, {"im", cs.tau_raw.imag()}};
  report.details["tau_reduced"] = {{"re", cs.tau.real()}, {"im", cs.tau.imag()}};
  if (tau_err > 1e-9) {
    report.pass = false;
    report.notes.push_back("central fibre modulus differs from m i");
  }
  return report;
}

CheckReport check_local_model_types(const RunOptions& run) {
  CheckReport report;
  report.check = "local_model_types";
  const FormField rho = models::local_model_spinor();
  report.params["seed"] = run.seed;
  const std::uint64_t stream = stream_seed(run.seed, report.check);
  const Aggregate agg = run_samples(run.samples, run.jobs, [&](std::size_t i) {
    SplitMix64 rng = sample_generator(stream, i);
    const bool on_locus = i % 2 == 0;
    double x1 = 0.0;
    double y1 = 0.0;
    if (!on_locus) {
      // Stay at least 1e-3 away from the locus.
      const double radius = rng.uniform(1e-3, 1.0);
      const double angle = rng.uniform(0.0, kTwoPi);
      x1 = radius * std::cos(angle);
      y1 = radius * std::sin(angle);
    }
    SampleOutcome out{models::cplane_point(x1, y1, rng.uniform(-1, 1), rng.uniform(-1, 1))};
    const Multiform value = rho.value(out.point);
    const int type = type_of(value);
    const int expected = on_locus ? 2 : 0;
    out.residual = type == expected ? 0.0 : 1.0;
    if (!check_nondegenerate(normal_form(value))) {
      out.ok = false;
      out.failure = "local model is degenerate at a sample";
    }
    return out;
  });
  apply_aggregate(report, agg, 0.0);
  report.details["type_mismatches_reported_as"] = "0 or 1 per sample";
  return report;
}

CheckReport check_polar_compatibility(const SurgeryGeometry& g, const RunOptions& run,
                                      double tol) {
  g.validate();
  CheckReport report;
  report.check = "polar_compatibility";
  report.params = {{"r_min", g.r_min}};
  const ChartMap to_cplane = models::polar_to_cplane();
  const ChartMap to_radians = models::unit_angle_to_radians();
  const FormField rho = models::local_model_spinor();
  const FormField b = models::polar_b_field(g);
  const FormField omega = models::polar_omega_field(g);
  report.params["seed"] = run.seed;
  const std::uint64_t stream = stream_seed(run.seed, report.check);
  const Aggregate agg = run_samples(run.samples, run.jobs, [&](std::size_t i) {
    SplitMix64 rng = sample_generator(stream, i);
    SampleOutcome out{random_annulus(rng, g.r_min, 1.0)};
    const ChartPoint& p = out.point;
    const NormalForm nf = normal_form(pullback(to_cplane, rho, p));
    const double r = p.coords[0];
    const double phase = kTwoPi * p.coords[1];
    const Complex z1 = std::polar(r, phase);
    const double scale_err = std::abs(nf.omega0[0] - z1);
    const double b_err = max_abs(nf.B - pullback(to_radians, b, p));
    const double w_err = max_abs(nf.omega - pullback(to_radians, omega, p));
    out.residual = std::max({scale_err, b_err, w_err});
    if (nf.type != 0) {
      out.ok = false;
      out.failure = "pulled-back local model is not of type 0 on the annulus";
    }
    return out;
  });
  apply_aggregate(report, agg, tol);
  return report;
}

}  // namespace gcx::verify
