#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>

#include "gcx/verify.hpp"

namespace gcx::verify {

namespace {

using models::SurgeryGeometry;

nlohmann::json geometry_json(const SurgeryGeometry& g) {
  return {{"r_min", g.r_min},
          {"r_out", g.r_out},
          {"profile", g.profile == models::BumpProfile::kExpFlat ? "exp_flat" : "septic"}};
}

// Keep rt >= 0.01 so the Jacobian of psi stays bounded by ~1e2.
double annulus_lower_radius(const SurgeryGeometry& g) {
  return std::max(std::exp((1e-4 - 1.0) / 2.0), g.r_min);
}

ChartPoint random_annulus(SplitMix64& rng, double r_lo, double r_hi) {
  const double r = r_hi - (r_hi - r_lo) * rng.uniform();
  return models::annulus_point(r, rng.uniform(), rng.uniform(), rng.uniform());
}

ChartPoint random_tube(SplitMix64& rng, double lo, double hi) {
  return models::tube_point(rng.uniform(lo, hi), rng.uniform(), rng.uniform(), rng.uniform());
}

SampleOutcome symplecto_sample(const ChartMap& psi, const SurgeryGeometry& g, const ChartPoint& p) {
  SampleOutcome out{p};
  psi.check_domain(p);
  const Multiform pulled = pullback(psi, models::tube_symplectic_field(), p);
  const Multiform omega = models::polar_omega_field(g).value(p);
  out.residual = max_abs(pulled - omega);
  const auto jac = psi.jacobian(p);
  Eigen::Matrix4d m;
  for (int j = 0; j < 4; ++j) {
    for (int i = 0; i < 4; ++i) m(j, i) = jac[j][i];
  }
  const double det = m.determinant();
  out.extra[0] = std::abs(det);
  if (!(std::abs(det) > 1e-12)) {
    out.ok = false;
    out.failure = "Jacobian of the candidate map is singular";
  }
  if (psi.has_inverse()) {
    const ChartPoint back = psi.apply_inverse(psi.apply(p));
    if (!back.same_point(p, 1e-10)) {
      out.ok = false;
      out.failure = "candidate map does not invert";
    }
  }
  return out;
}

}  // namespace

CheckReport check_symplectomorphism(const ChartMap& map, const SurgeryGeometry& geometry,
                                    const RunOptions& run, double tol) {
  geometry.validate();
  CheckReport report;
  report.check = "symplectomorphism";
  report.params = geometry_json(geometry);
  report.params["seed"] = run.seed;
  const std::uint64_t stream = stream_seed(run.seed, report.check);
  const double lo = annulus_lower_radius(geometry);
  const Aggregate agg = run_samples(run.samples, run.jobs, [&](std::size_t i) {
    SplitMix64 rng = sample_generator(stream, i);
    return symplecto_sample(map, geometry, random_annulus(rng, lo, 1.0));
  });
  apply_aggregate(report, agg, tol);
  return report;
}

CheckReport check_symplectomorphism(const SurgeryGeometry& geometry, const RunOptions& run,
                                    double tol) {
  return check_symplectomorphism(models::gluing_map(), geometry, run, tol);
}

CheckReport check_symplectomorphism_at(const ChartMap& map, std::span<const ChartPoint> points,
                                       const SurgeryGeometry& geometry, double tol) {
  CheckReport report;
  report.check = "symplectomorphism";
  report.params = geometry_json(geometry);
  const Aggregate agg = run_samples(points.size(), 1, [&](std::size_t i) {
    return symplecto_sample(map, geometry, points[i]);
  });
  apply_aggregate(report, agg, tol);
  return report;
}

CheckReport check_integrability(const IntegrabilitySetup& setup, const RunOptions& run,
                                double tol) {
  const SurgeryGeometry& g = setup.geometry;
  g.validate();
  CheckReport report;
  report.check = "integrability/" + to_string(setup.region);
  report.params = geometry_json(g);
  report.params["region"] = to_string(setup.region);

  FormField rho;
  FormField h;
  std::function<ChartPoint(SplitMix64&)> draw;
  switch (setup.region) {
    case Region::kCPlane:
      rho = models::local_model_spinor();
      draw = [](SplitMix64& rng) {
        return models::cplane_point(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                                    rng.uniform(-1, 1));
      };
      break;
    case Region::kPolar:
      rho = models::polar_spinor(g);
      draw = [g](SplitMix64& rng) { return random_annulus(rng, g.r_min, 1.0); };
      break;
    case Region::kBump:
    case Region::kOuter: {
      rho = models::glued_tube_spinor(g);
      h = models::twist_field(g);
      if (setup.flip_twist_sign) {
        h = scaled(h, -1.0);
        report.params["flipped_twist_sign"] = true;
      }
      const bool bump = setup.region == Region::kBump;
      const double lo = bump ? 1.0 : g.r_out;
      const double hi = bump ? g.r_out : g.r_out + 1.0;
      draw = [lo, hi](SplitMix64& rng) { return random_tube(rng, lo, hi); };
      break;
    }
    case Region::kQuotient: {
      setup.quotient.validate();
      rho = models::log_model_spinor(setup.quotient, g);
      report.params["m"] = setup.quotient.m;
      report.params["k"] = setup.quotient.k;
      const double lo = std::pow(g.r_min, setup.quotient.m);
      draw = [lo](SplitMix64& rng) {
        return models::quotient_point(rng.uniform(lo, 1.0), rng.uniform(), rng.uniform(),
                                      rng.uniform());
      };
      break;
    }
  }

  const GcVector expected = models::local_model_witness();
  report.params["seed"] = run.seed;
  const std::uint64_t stream = stream_seed(run.seed, report.check);
  const Aggregate agg = run_samples(run.samples, run.jobs, [&](std::size_t i) {
    SplitMix64 rng = sample_generator(stream, i);
    SampleOutcome out{draw(rng)};
    const FormJet jet = rho.jet(out.point);
    const Multiform hv = h.empty() ? Multiform(4) : h.value(out.point);
    const IntegrabilityWitness w = integrability_residual(jet, hv);
    out.residual = w.residual;
    if (setup.region == Region::kCPlane) {
      // The witness is unique only modulo the annihilator of rho.
      out.extra[0] = max_abs(clifford(w.v - expected, jet.value));
      out.residual = std::max(out.residual, out.extra[0]);
    } else if (setup.region == Region::kOuter) {
      double v_norm = 0.0;
      for (int k = 0; k < 8; ++k) v_norm = std::max(v_norm, std::abs(w.v.component(k)));
      out.extra[0] = v_norm;
      out.residual = std::max(out.residual, v_norm);
    }
    return out;
  });
  apply_aggregate(report, agg, tol);
  if (setup.region == Region::kCPlane) report.details["witness_mismatch"] = agg.extra[0];
  if (setup.region == Region::kOuter) report.details["max_witness_norm"] = agg.extra[0];
  return report;
}

double slice_integral(const SurgeryGeometry& g, double r_lo, double r_hi, int subintervals) {
  require(subintervals >= 1, "slice_integral: need at least one subinterval");
  require(r_lo >= g.r_min && r_hi >= r_lo, "slice_integral: bad radius range");
  // H = c(rt) drt ^ ds1 ^ ds3; the angles integrate to 1.
  const FormField h = models::twist_field(g);
  auto coefficient = [&](double rt) {
    return h.value(models::tube_point(rt, 0.0, 0.0, 0.0))[0b1011].real();
  };
  double total = 0.0;
  const double width = (r_hi - r_lo) / subintervals;
  for (int s = 0; s < subintervals; ++s) {
    const double a = r_lo + s * width;
    total += boost::math::quadrature::gauss<double, 20>::integrate(coefficient, a, a + width);
  }
  return total;
}

CheckReport check_h_properties(const SurgeryGeometry& g, const RunOptions& run,
                               const HCheckOptions& options) {
  g.validate();
  CheckReport report;
  report.check = "twist";
  report.params = geometry_json(g);
  const FormField h = models::twist_field(g);
  const FormField b = models::b_extension_field(g);
  report.params["seed"] = run.seed;
  const std::uint64_t stream = stream_seed(run.seed, report.check);

  auto evaluate = [&](const ChartPoint& p) {
    SampleOutcome out{p};
    const FormJet hj = h.jet(p);
    const FormJet bj = b.jet(p);
    const double d_h = max_abs(exterior_derivative(hj));
    const double dd_b = max_abs(exterior_derivative(exterior_derivative_jet(bj)));
    out.residual = std::max(d_h, dd_b);
    // H against kTwistSign * d(B~).
    out.extra[0] = max_abs(exterior_derivative(bj).scaled(double(models::kTwistSign)) - hj.value);
    const double rt = p.coords[0];
    if ((rt <= 1.0 || rt >= g.r_out) && max_abs(hj.value) != 0.0) {
      out.ok = false;
      out.failure = "H does not vanish outside the bump at rt = " + std::to_string(rt);
      out.extra[1] = 1.0;
    }
    return out;
  };

  const std::vector<ChartPoint> fixed = {
      models::tube_point(g.r_min, 0.1, 0.2, 0.3), models::tube_point(0.5, 0.4, 0.5, 0.6),
      models::tube_point(1.0, 0.7, 0.8, 0.9), models::tube_point(g.r_out, 0.2, 0.4, 0.6),
      models::tube_point(g.r_out + 0.5, 0.3, 0.1, 0.2)};
  const std::size_t n = run.samples + fixed.size();
  const Aggregate agg = run_samples(n, run.jobs, [&](std::size_t i) {
    if (i < fixed.size()) return evaluate(fixed[i]);
    SplitMix64 rng = sample_generator(stream, i - fixed.size());
    return evaluate(random_tube(rng, g.r_min, g.r_out + 1.0));
  });
  apply_aggregate(report, agg, options.closedness_tol);

  const double integral = slice_integral(g, 1.0, g.r_out, options.quadrature_subintervals);
  const double expected = -1.0;
  const bool slice_ok = std::abs(integral - expected) <= options.slice_tol;
  const bool consistent = agg.extra[0] <= 1e-10;
  report.details["closedness"] = agg.max_residual;
  report.details["twist_consistency"] = agg.extra[0];
  report.details["slice_integral"] = integral;
  report.details["slice_sign"] = integral < 0.0 ? -1 : 1;
  report.details["slice_tolerance"] = options.slice_tol;
  report.details["twist_sign"] = models::kTwistSign;
  if (!slice_ok) report.notes.push_back("slice integral differs from -1");
  if (!consistent) report.notes.push_back("closed form of H disagrees with kTwistSign * d(B~)");
  report.pass = report.pass && slice_ok && consistent;
  return report;
}

CheckReport check_simultaneous_surgery(std::span<const SurgeryGeometry> tubes,
                                       const RunOptions& run, double tol) {
  require(!tubes.empty(), "simultaneous surgery: need at least one torus");
  CheckReport report;
  report.check = "simultaneous";
  report.params["tori"] = nlohmann::json::array();
  report.tolerance = tol;
  report.pass = true;
  bool first = true;
  for (std::size_t t = 0; t < tubes.size(); ++t) {
    report.params["tori"].push_back(geometry_json(tubes[t]));
    RunOptions sub = run;
    sub.seed = stream_seed(run.seed, "torus-" + std::to_string(t));
    nlohmann::json entry;
    for (Region region : {Region::kPolar, Region::kBump, Region::kOuter}) {
      const CheckReport r = check_integrability({region, tubes[t], {}, false}, sub, tol);
      entry[to_string(region)] = r.max_residual;
      report.samples += r.samples;
      report.pass = report.pass && r.pass;
      if (first || r.max_residual > report.max_residual) {
        report.max_residual = r.max_residual;
        report.worst_point = r.worst_point;
        first = false;
      }
    }
    const CheckReport hr = check_h_properties(tubes[t], sub);
    entry["twist_pass"] = hr.pass;
    entry["slice_integral"] = hr.details["slice_integral"];
    report.pass = report.pass && hr.pass;
    report.details["torus_" + std::to_string(t)] = entry;
  }
  return report;
}

TwistSignResolution resolve_twist_sign(const SurgeryGeometry& g, const RunOptions& run) {
  g.validate();
  const FormField rho = models::glued_tube_spinor(g);
  const FormField b = models::b_extension_field(g);
  const std::uint64_t stream = stream_seed(run.seed, "twist-sign");
  TwistSignResolution out;
  const std::size_t n = std::min<std::size_t>(run.samples, 64);
  for (int sign : {1, -1}) {
    const Aggregate agg = run_samples(n, run.jobs, [&](std::size_t i) {
      SplitMix64 rng = sample_generator(stream, i);
      SampleOutcome s{random_tube(rng, 1.0, g.r_out)};
      const Multiform hv = exterior_derivative(b.jet(s.point)).scaled(double(sign));
      s.residual = integrability_residual(rho.jet(s.point), hv).residual;
      return s;
    });
    (sign > 0 ? out.residual_plus : out.residual_minus) = agg.max_residual;
  }
  const double lo = std::min(out.residual_plus, out.residual_minus);
  const double hi = std::max(out.residual_plus, out.residual_minus);
  if (lo <= 1e-9 && hi > 1e-6) out.sign = out.residual_plus < out.residual_minus ? 1 : -1;
  return out;
}

CheckReport check_twist_sign(const SurgeryGeometry& g, const RunOptions& run,
                             double control_floor) {
  CheckReport report;
  report.check = "twist_sign";
  report.params = geometry_json(g);
  report.params["seed"] = run.seed;
  const TwistSignResolution res = resolve_twist_sign(g, run);
  const CheckReport flipped = check_integrability({Region::kBump, g, {}, true}, run, control_floor);
  report.samples = flipped.samples;
  report.max_residual = std::min(res.residual_plus, res.residual_minus);
  report.tolerance = 1e-9;
  report.worst_point = flipped.worst_point;
  report.details["resolved_sign"] = res.sign;
  report.details["frozen_sign"] = models::kTwistSign;
  report.details["residual_plus"] = res.residual_plus;
  report.details["residual_minus"] = res.residual_minus;
  report.details["opposite_sign_residual"] = flipped.max_residual;
  report.pass = res.sign == models::kTwistSign && flipped.max_residual > control_floor;
  report.notes.push_back("H = -d(B~) = f'(rt) drt ^ ds1 ^ ds3; the opposite sign fails");
  return report;
}

}  // namespace gcx::verify
