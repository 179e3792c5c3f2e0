#include <Eigen/Dense>
#include <cmath>

#include "gcx/verify.hpp"

namespace gcx::verify {

namespace {

Complex random_complex(SplitMix64& rng) { return {rng.uniform(-1, 1), rng.uniform(-1, 1)}; }

Multiform random_form(SplitMix64& rng, int degree, bool real) {
  Multiform out(4);
  for (Mask m = 0; m < out.size(); ++m) {
    if (degree < 0 || degree_of(m) == degree) {
      out.at(m) = real ? Complex(rng.uniform(-1, 1)) : random_complex(rng);
    }
  }
  return out;
}

// exp(B + i omega) ^ Omega with Omega a product of k generic 1-forms.
Multiform random_pure_spinor(SplitMix64& rng, int k) {
  Multiform omega_k = Multiform::scalar(4, random_complex(rng));
  for (int j = 0; j < k; ++j) omega_k = wedge(omega_k, random_form(rng, 1, false));
  const Multiform b = random_form(rng, 2, true);
  const Multiform w = random_form(rng, 2, true);
  return wedge(exp_wedge(b + w.scaled(Complex(0.0, 1.0))), omega_k);
}

// A polynomial of degree <= 2 in the four coordinates.
Expr random_polynomial(SplitMix64& rng) {
  Expr p = rng.uniform(-1, 1);
  for (int i = 0; i < 4; ++i) {
    p = p + Expr::var(i) * rng.uniform(-1, 1);
    for (int j = i; j < 4; ++j) p = p + Expr::var(i) * Expr::var(j) * rng.uniform(-1, 1);
  }
  return p;
}

BasicMultiform<Expr> random_form_exprs(SplitMix64& rng, int degree) {
  BasicMultiform<Expr> out(4);
  for (Mask m = 0; m < out.size(); ++m) {
    if (degree_of(m) == degree) out.at(m) = random_polynomial(rng);
  }
  return out;
}

GcVectorField random_gc_field(SplitMix64& rng) {
  std::array<Expr, kMaxDim> vec;
  std::array<Expr, kMaxDim> cov;
  for (auto& e : vec) e = random_polynomial(rng);
  for (auto& e : cov) e = random_polynomial(rng);
  return GcVectorField::from_exprs(4, vec, cov);
}

double max_abs(const GcVector& v) {
  double m = 0.0;
  for (int k = 0; k < 2 * v.dim; ++k) m = std::max(m, std::abs(v.component(k)));
  return m;
}

struct BracketSample {
  double residual_plus = 0.0;   // against [u, v]_{H + dB}
  double residual_minus = 0.0;  // against [u, v]_{H - dB}
  ChartPoint point;
};

BracketSample bracket_sample(SplitMix64& rng, bool closed_b) {
  BasicMultiform<Expr> b_exprs(4);
  if (closed_b) {
    b_exprs = exterior_derivative(random_form_exprs(rng, 1));
    for (Mask m = 0; m < b_exprs.size(); ++m) {
      if (degree_of(m) == 2) b_exprs.at(m) = b_exprs[m] + Expr(rng.uniform(-1, 1));
    }
  } else {
    b_exprs = random_form_exprs(rng, 2);
  }
  const FormField b = FormField::from_exprs(b_exprs);
  const FormField db = FormField::from_exprs(exterior_derivative(b_exprs));
  const FormField h = FormField::from_exprs(random_form_exprs(rng, 3));
  const GcVectorField u = random_gc_field(rng);
  const GcVectorField v = random_gc_field(rng);
  BracketSample s;
  s.point = ChartPoint::make(ChartId::kGeneric, 4,
                             {rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1),
                              rng.uniform(-1, 1)});

  GcVector lhs = courant_bracket(b_transform(b, u), b_transform(b, v), h, s.point);
  const Multiform correction = interior(lhs.vec, b.value(s.point));
  for (int i = 0; i < 4; ++i) lhs.cov[i] -= correction[Mask{1} << i];
  s.residual_plus = max_abs(lhs - courant_bracket(u, v, h + db, s.point));
  s.residual_minus = max_abs(lhs - courant_bracket(u, v, h + scaled(db, -1.0), s.point));
  return s;
}

}  // namespace

CheckReport check_clifford_relation(const RunOptions& run, double tol) {
  CheckReport report;
  report.check = "clifford_relation";
  report.params["seed"] = run.seed;
  const std::uint64_t stream = stream_seed(run.seed, report.check);
  const Aggregate agg = run_samples(run.samples, run.jobs, [&](std::size_t i) {
    SplitMix64 rng = sample_generator(stream, i);
    GcVector v(4);
    for (int k = 0; k < 8; ++k) v.component(k) = random_complex(rng);
    const Multiform rho = random_form(rng, -1, false);
    const Complex q = pairing(v, v);
    const Multiform lhs = clifford(v, clifford(v, rho));
    SampleOutcome out{ChartPoint::make(ChartId::kGeneric, 4, {})};
    out.residual = max_abs(lhs - rho.scaled(q)) / (max_abs(rho) * std::max(1.0, std::abs(q)));
    return out;
  });
  apply_aggregate(report, agg, tol);
  report.worst_point.reset();
  return report;
}

CheckReport check_pairing_signature() {
  CheckReport report;
  report.check = "pairing_signature";
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(pairing_gram(4));
  int positive = 0;
  int negative = 0;
  for (int k = 0; k < eig.eigenvalues().size(); ++k) {
    if (eig.eigenvalues()(k) > 1e-12) ++positive;
    if (eig.eigenvalues()(k) < -1e-12) ++negative;
  }
  report.samples = 1;
  report.details["signature"] = {positive, negative};
  report.pass = positive == 4 && negative == 4;
  return report;
}

CheckReport check_annihilators(const RunOptions& run, double tol) {
  CheckReport report;
  report.check = "annihilators";
  report.params["seed"] = run.seed;
  const std::uint64_t stream = stream_seed(run.seed, report.check);
  const Aggregate agg = run_samples(run.samples, run.jobs, [&](std::size_t i) {
    SplitMix64 rng = sample_generator(stream, i);
    const int k = static_cast<int>(i % 5);
    const Multiform rho = random_pure_spinor(rng, k);
    SampleOutcome out{ChartPoint::make(ChartId::kGeneric, 4, {})};
    const AnnihilatorBasis l = annihilator(rho);
    double isotropy = 0.0;
    for (const GcVector& a : l.vectors) {
      for (const GcVector& b : l.vectors) isotropy = std::max(isotropy, std::abs(pairing(a, b)));
    }
    const NormalForm nf = normal_form(rho);
    const double round_trip = max_abs(reconstruct(nf) - rho) / max_abs(rho);
    out.residual = std::max(isotropy, round_trip);
    out.extra[0] = round_trip;
    out.extra[1] = isotropy;
    if (l.size() != 4) {
      out.ok = false;
      out.failure = "annihilator of a pure spinor is not maximal";
    } else if (nf.type != k) {
      out.ok = false;
      out.failure = "normal form reports type " + std::to_string(nf.type) + ", expected " +
                    std::to_string(k);
    }
    return out;
  });
  apply_aggregate(report, agg, tol);
  report.worst_point.reset();
  report.details["max_round_trip_error"] = agg.extra[0];
  double fixed_isotropy = 0.0;

  // Fixed spinors: exp(i omega0), dz1 ^ dz2 and dx1.
  Multiform omega0(4);
  omega0.at(0b0011) = 1.0;
  omega0.at(0b1100) = 1.0;
  Multiform dz(4);
  dz.at(0b0101) = 1.0;
  dz.at(0b1001) = Complex(0.0, 1.0);
  dz.at(0b0110) = Complex(0.0, 1.0);
  dz.at(0b1010) = -1.0;
  const std::array<Multiform, 3> fixed = {from_symplectic(omega0), dz,
                                          Multiform::one_form(4, 0, 1.0)};
  nlohmann::json dims = nlohmann::json::array();
  for (const Multiform& rho : fixed) {
    const AnnihilatorBasis l = annihilator(rho);
    dims.push_back(l.size());
    double isotropy = 0.0;
    for (const GcVector& a : l.vectors) {
      for (const GcVector& b : l.vectors) isotropy = std::max(isotropy, std::abs(pairing(a, b)));
    }
    report.max_residual = std::max(report.max_residual, isotropy);
    fixed_isotropy = std::max(fixed_isotropy, isotropy);
    if (l.size() != 4) {
      report.pass = false;
      report.notes.push_back("fixed spinor with a non-maximal annihilator");
    }
  }
  report.pass = report.pass && report.max_residual <= tol;
  report.details["fixed_dimensions"] = dims;
  report.details["max_isotropy"] = std::max(agg.extra[1], fixed_isotropy);
  return report;
}

CheckReport check_bracket_b_transform(bool closed_b, const RunOptions& run, double tol) {
  CheckReport report;
  report.check = closed_b ? "bracket_closed_b" : "bracket_shift";
  report.params["shift_sign"] = kBracketShiftSign;
  report.params["seed"] = run.seed;
  const std::uint64_t stream = stream_seed(run.seed, report.check);
  const Aggregate agg = run_samples(run.samples, run.jobs, [&](std::size_t i) {
    SplitMix64 rng = sample_generator(stream, i);
    const BracketSample s = bracket_sample(rng, closed_b);
    SampleOutcome out{s.point};
    // For closed B both residuals coincide.
    out.residual = kBracketShiftSign > 0 ? s.residual_plus : s.residual_minus;
    return out;
  });
  apply_aggregate(report, agg, tol);
  return report;
}

BracketShiftResolution resolve_bracket_shift_sign(const RunOptions& run) {
  const std::uint64_t stream = stream_seed(run.seed, "bracket-shift-sign");
  BracketShiftResolution out;
  const std::size_t n = std::min<std::size_t>(run.samples, 32);
  for (std::size_t i = 0; i < n; ++i) {
    SplitMix64 rng = sample_generator(stream, i);
    const BracketSample s = bracket_sample(rng, false);
    out.residual_plus = std::max(out.residual_plus, s.residual_plus);
    out.residual_minus = std::max(out.residual_minus, s.residual_minus);
  }
  const double lo = std::min(out.residual_plus, out.residual_minus);
  const double hi = std::max(out.residual_plus, out.residual_minus);
  if (lo <= 1e-9 && hi > 1e-6) out.sign = out.residual_plus < out.residual_minus ? 1 : -1;
  return out;
}

CheckReport check_bracket_shift_sign(const RunOptions& run) {
  CheckReport report;
  report.check = "bracket_shift_sign";
  report.params["seed"] = run.seed;
  const BracketShiftResolution res = resolve_bracket_shift_sign(run);
  report.samples = std::min<std::size_t>(run.samples, 32);
  report.max_residual = std::min(res.residual_plus, res.residual_minus);
  report.tolerance = 1e-9;
  report.details["resolved_sign"] = res.sign;
  report.details["frozen_sign"] = kBracketShiftSign;
  report.details["residual_plus"] = res.residual_plus;
  report.details["residual_minus"] = res.residual_minus;
  report.pass = res.sign == kBracketShiftSign;
  report.notes.push_back("E_B^{-1} [E_B u, E_B v]_H = [u, v]_{H + dB}");
  return report;
}

}  // namespace gcx::verify
