#include <Eigen/Dense>
#include <cmath>

#include "gcx/linalg.hpp"
#include "gcx/verify.hpp"

namespace gcx::verify {

namespace {

struct Linearization {
  Eigen::Vector2d value;
  Eigen::Matrix<double, 2, Eigen::Dynamic> jacobian;
};

Linearization linearize(const FormField& rho, const ChartPoint& p) {
  const FormJet jet = rho.jet(p);
  Linearization lin;
  lin.value << jet.value[0].real(), jet.value[0].imag();
  lin.jacobian.resize(2, p.dim);
  for (int i = 0; i < p.dim; ++i) {
    lin.jacobian(0, i) = jet.d1[i][0].real();
    lin.jacobian(1, i) = jet.d1[i][0].imag();
  }
  return lin;
}

Eigen::Vector4d as_vector(const std::array<double, kMaxDim>& a) {
  return Eigen::Vector4d(a[0], a[1], a[2], a[3]);
}

}  // namespace

std::vector<LocusPoint> locate_type_change(const FormField& rho, std::span<const ChartPoint> seeds,
                                           const LocateOptions& options) {
  require(rho.dim() == kMaxDim, "locate_type_change: needs a four-dimensional field");
  std::vector<LocusPoint> out;
  out.reserve(seeds.size());
  for (const ChartPoint& seed : seeds) {
    LocusPoint lp;
    ChartPoint x = seed;
    for (int it = 0; it <= options.max_iter; ++it) {
      const Linearization lin = linearize(rho, x);
      const double f_norm = lin.value.norm();
      lp.residual_history.push_back(f_norm);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(lin.jacobian, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const double scale = lin.jacobian.cwiseAbs().maxCoeff();
      svd.setThreshold(scale > 0.0 ? 1e-14 : 1.0);
      const Eigen::VectorXd step = scale > 0.0 ? Eigen::VectorXd(svd.solve(lin.value))
                                               : Eigen::VectorXd::Zero(x.dim);
      lp.iterations = it;
      lp.location = x;
      lp.smallest_singular_value = svd.singularValues()(1);
      for (int t = 0; t < 2; ++t) {
        for (int i = 0; i < x.dim; ++i) lp.tangent[t][i] = svd.matrixV()(i, 2 + t);
      }
      if (f_norm <= options.value_tol && step.norm() <= options.step_tol) {
        lp.converged = true;
        break;
      }
      if (it == options.max_iter) break;
      std::array<double, kMaxDim> next = x.coords;
      for (int i = 0; i < x.dim; ++i) next[i] -= step(i);
      x = ChartPoint::make(x.chart, x.dim, next, x.periodic);
    }
    lp.nondegenerate = lp.converged && lp.smallest_singular_value >= options.tol;
    out.push_back(std::move(lp));
  }
  return out;
}

bool has_quadratic_decay(const std::vector<double>& history, double c, double floor) {
  for (std::size_t i = 0; i + 1 < history.size(); ++i) {
    if (history[i] <= floor) continue;
    if (history[i + 1] > floor && history[i + 1] > c * history[i] * history[i]) return false;
  }
  return true;
}

Complex reduce_to_fundamental_domain(Complex tau) {
  require(tau.imag() > 0.0, "reduce_to_fundamental_domain: tau must lie in the upper half plane");
  constexpr double eps = 1e-12;
  for (int guard = 0; guard < 1000; ++guard) {
    tau -= std::round(tau.real());
    if (std::norm(tau) < 1.0 - eps) {
      tau = -1.0 / tau;
    } else {
      break;
    }
  }
  // Boundary identifications: Re tau = 1/2 ~ -1/2 and |tau| = 1 with Re tau > 0.
  if (std::abs(tau.real() - 0.5) <= eps) tau -= 1.0;
  if (std::abs(std::norm(tau) - 1.0) <= eps && tau.real() > eps) tau = -1.0 / tau;
  return tau;
}

LocusComplexStructure locus_complex_structure(
    const FormField& rho, LocusPoint& lp,
    const std::array<std::array<double, kMaxDim>, 2>& lattice) {
  require(lp.converged && lp.nondegenerate,
          "locus_complex_structure: needs a converged nondegenerate locus point");
  const int n = lp.location.dim;
  const FormJet jet = rho.jet(lp.location);
  const Multiform rho2 = jet.value.degree_part(2);
  LocusComplexStructure out;

  // T^{0,1}: vectors X with i_X rho_2 = 0.
  Eigen::MatrixXcd contract(Eigen::Index(1) << n, n);
  for (int i = 0; i < n; ++i) contract.col(i) = to_eigen(interior(i, rho2));
  for (const Eigen::VectorXcd& x : null_space(contract, kDefaultRankTol)) {
    Complex d = 0.0;
    for (int i = 0; i < n; ++i) d += x(i) * jet.d1[i][0];
    out.antiholomorphic_residual = std::max(out.antiholomorphic_residual, std::abs(d));
  }

  // The complex structure on T is minus the upper-left block of J(rho_2).
  const Eigen::Matrix4d complex_structure = -j_endomorphism(rho2).matrix.topLeftCorner(4, 4);
  Eigen::Matrix<double, 4, 2> tangent;
  tangent.col(0) = as_vector(lp.tangent[0]);
  tangent.col(1) = as_vector(lp.tangent[1]);
  const Eigen::Matrix4d projector = tangent * tangent.transpose();
  for (int t = 0; t < 2; ++t) {
    const Eigen::Vector4d it = complex_structure * tangent.col(t);
    out.tangent_invariance_residual =
        std::max(out.tangent_invariance_residual, (it - projector * it).norm());
  }

  const Eigen::Vector4d g1 = as_vector(lattice[0]);
  const Eigen::Vector4d g2 = as_vector(lattice[1]);
  out.lattice_in_tangent_residual =
      std::max((g1 - projector * g1).norm(), (g2 - projector * g2).norm());
  Eigen::Matrix<double, 4, 2> frame;
  frame.col(0) = g1;
  frame.col(1) = complex_structure * g1;
  const Eigen::Vector2d ab = frame.colPivHouseholderQr().solve(g2);
  out.tau_raw = Complex(ab(0), ab(1));
  ensure(std::abs(out.tau_raw.imag()) > 1e-12, "locus_complex_structure: lattice is degenerate");
  const Complex oriented = out.tau_raw.imag() < 0.0 ? -out.tau_raw : out.tau_raw;
  out.tau = reduce_to_fundamental_domain(oriented);
  lp.tau = out.tau;
  return out;
}

CheckReport check_locus(const RunOptions& run, double tol) {
  CheckReport report;
  report.check = "locus";
  const FormField local = models::local_model_spinor();
  const FormField curved = models::cplane_spinor(
      [](const Jet& z1, const Jet& z2) { return z1 - z2 * z2 * 0.3; });
  const FormField degenerate = models::cplane_spinor([](const Jet& z1, const Jet&) { return z1 * z1; });
  const std::array<std::array<double, kMaxDim>, 2> unit_lattice{
      {{0.0, 0.0, 1.0, 0.0}, {0.0, 0.0, 0.0, 1.0}}};
  report.params["seed"] = run.seed;
  const std::uint64_t stream = stream_seed(run.seed, report.check);

  const Aggregate agg = run_samples(run.samples, run.jobs, [&](std::size_t i) {
    SplitMix64 rng = sample_generator(stream, i);
    // |z1| <= 0.5, uniform in the disc.
    const double radius = 0.5 * std::sqrt(rng.uniform());
    const double angle = kTwoPi * rng.uniform();
    const ChartPoint seed =
        models::cplane_point(radius * std::cos(angle), radius * std::sin(angle),
                             rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
    SampleOutcome out{seed};
    auto fail = [&out](const std::string& why) {
      if (out.ok) {
        out.ok = false;
        out.failure = why;
      }
    };
    for (const FormField* field : {&local, &curved}) {
      LocusPoint lp = locate_type_change(*field, std::span(&seed, 1)).front();
      if (!lp.converged || !lp.nondegenerate) {
        fail("Newton did not converge to a nondegenerate locus point");
        continue;
      }
      if (!has_quadratic_decay(lp.residual_history)) fail("Newton residuals are not quadratic");
      const auto& lattice = unit_lattice;
      const LocusComplexStructure cs = locus_complex_structure(*field, lp, lattice);
      double r = std::max(cs.antiholomorphic_residual, cs.tangent_invariance_residual);
      if (field == &local) {
        out.point = lp.location;
        r = std::max(r, std::abs(cs.tau - Complex(0.0, 1.0)));
      }
      out.residual = std::max(out.residual, r);
      out.extra[0] = std::max(out.extra[0], static_cast<double>(lp.iterations));
    }
    const LocusPoint dp = locate_type_change(degenerate, std::span(&seed, 1)).front();
    if (dp.nondegenerate) fail("degenerate fixture was not flagged");
    return out;
  });
  apply_aggregate(report, agg, tol);
  report.details["max_newton_iterations"] = agg.extra[0];
  report.details["fixtures"] = {"z1", "z1 - 0.3 z2^2", "z1^2 (degenerate)"};
  return report;
}

}  // namespace gcx::verify
