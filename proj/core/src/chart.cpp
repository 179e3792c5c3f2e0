#include "gcx/chart.hpp"

#include <limits>

#include "gcx/linalg.hpp"

namespace gcx {

namespace {

Multiform dx(int dim, int i) { return Multiform::one_form(dim, i, 1.0); }

}  // namespace

Multiform exterior_derivative(const FormJet& alpha) {
  const int n = alpha.value.dim();
  Multiform out(n);
  for (int i = 0; i < n; ++i) out += wedge(dx(n, i), alpha.d1[i]);
  return out;
}

Multiform exterior_derivative(const FormField& alpha, const ChartPoint& p) {
  return exterior_derivative(alpha.jet(p));
}

FormJet exterior_derivative_jet(const FormJet& alpha) {
  require(alpha.order >= 2, "exterior_derivative_jet: second partials unavailable");
  const int n = alpha.value.dim();
  FormJet out{exterior_derivative(alpha), {}, {}, alpha.order - 1};
  for (int k = 0; k < kMaxDim; ++k) {
    out.d1[k] = Multiform(n);
    for (int l = 0; l < kMaxDim; ++l) out.d2[k][l] = Multiform(n);
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) out.d1[k] += wedge(dx(n, i), alpha.d2[k][i]);
  }
  return out;
}

BasicMultiform<Expr> exterior_derivative(const BasicMultiform<Expr>& alpha) {
  const int n = alpha.dim();
  BasicMultiform<Expr> out(n);
  for (int i = 0; i < n; ++i) {
    BasicMultiform<Expr> partial(n);
    for (Mask m = 0; m < alpha.size(); ++m) partial.at(m) = alpha[m].derivative(i);
    out += wedge(BasicMultiform<Expr>::one_form(n, i, Expr(1.0)), partial);
  }
  return out;
}

std::array<Complex, kMaxDim> lie_bracket(const GcVectorJet& u, const GcVectorJet& v) {
  const int n = u.value.dim;
  std::array<Complex, kMaxDim> out{};
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      out[j] += u.value.vec[i] * v.d1[i].vec[j] - v.value.vec[i] * u.d1[i].vec[j];
    }
  }
  return out;
}

namespace {

// The covector part of a GcVector jet as a 1-form jet.
FormJet covector_jet(const GcVectorJet& u) {
  FormJet f{u.value.covector(), {}, {}, 1};
  for (int k = 0; k < kMaxDim; ++k) f.d1[k] = u.d1[k].covector();
  return f;
}

// d(xi(Y)) where xi comes from a and Y from b.
Multiform d_of_pairing(const GcVectorJet& a, const GcVectorJet& b) {
  const int n = a.value.dim;
  Multiform out(n);
  for (int k = 0; k < n; ++k) {
    Complex acc = 0.0;
    for (int i = 0; i < n; ++i) {
      acc += a.d1[k].cov[i] * b.value.vec[i] + a.value.cov[i] * b.d1[k].vec[i];
    }
    out.at(Mask{1} << k) = acc;
  }
  return out;
}

// L_X eta for X from a, eta from b, via Cartan's formula.
Multiform lie_derivative(const GcVectorJet& a, const GcVectorJet& b) {
  const Multiform d_eta = exterior_derivative(covector_jet(b));
  return interior(a.value.vec, d_eta) + d_of_pairing(b, a);
}

}  // namespace

GcVector courant_bracket(const GcVectorJet& u, const GcVectorJet& v, const Multiform& h) {
  const int n = u.value.dim;
  require(v.value.dim == n && h.dim() == n, "courant_bracket: dimension mismatch");
  GcVector out(n);
  out.vec = lie_bracket(u, v);
  Multiform cov = lie_derivative(u, v) - lie_derivative(v, u) -
                  (d_of_pairing(v, u) - d_of_pairing(u, v)).scaled(0.5) +
                  interior(v.value.vec, interior(u.value.vec, h.degree_part(3)));
  for (int i = 0; i < n; ++i) out.cov[i] = cov[Mask{1} << i];
  return out;
}

GcVector courant_bracket(const GcVectorField& u, const GcVectorField& v, const FormField& h,
                         const ChartPoint& p) {
  const Multiform hv = h.empty() ? Multiform(u.dim()) : h.value(p);
  return courant_bracket(u.jet(p), v.jet(p), hv);
}

Multiform pullback(const ChartMap& phi, const FormField& alpha, const ChartPoint& p) {
  const ChartPoint q = phi.apply(p);
  const auto jac = phi.jacobian(p);
  std::array<std::array<Complex, kMaxDim>, kMaxDim> cjac{};
  for (int j = 0; j < kMaxDim; ++j) {
    for (int i = 0; i < kMaxDim; ++i) cjac[j][i] = jac[j][i];
  }
  return pullback_forms(alpha.value(q), cjac, p.dim);
}

FormJet pullback_jet(const ChartMap& phi, const FormField& alpha, const ChartPoint& p) {
  const JetCoords y = phi.forward_jets(p);
  const JetMultiform composed = alpha(y);  // chain rule through the jets
  Jet::Hessian unknown{};
  for (auto& row : unknown) row.fill(Complex(std::numeric_limits<double>::quiet_NaN()));
  std::array<std::array<Jet, kMaxDim>, kMaxDim> jac{};
  for (int j = 0; j < kMaxDim; ++j) {
    for (int i = 0; i < kMaxDim; ++i) {
      Jet::Gradient g{};
      for (int k = 0; k < kMaxDim; ++k) g[k] = y[j].d2(i, k);
      jac[j][i] = Jet::from_parts(y[j].d1(i), g, unknown);
    }
  }
  return to_form_jet(pullback_forms(composed, jac, p.dim), 1);
}

IntegrabilityWitness integrability_residual(const FormJet& rho, const Multiform& h,
                                            double tol) {
  require(max_abs(rho.value) > 0.0,
          "integrability_residual: rho vanishes here; evaluate off the zero locus");
  const int n = rho.value.dim();
  const Multiform target = exterior_derivative(rho) + wedge(h, rho.value);
  const auto sol = min_norm_least_squares(clifford_action_matrix(rho.value), to_eigen(target), tol);
  return IntegrabilityWitness{gc_vector_from_eigen(n, sol.x), sol.residual};
}

IntegrabilityWitness integrability_residual(const FormField& rho, const FormField& h,
                                            const ChartPoint& p, double tol) {
  const FormJet r = rho.jet(p);
  const Multiform hv = h.empty() ? Multiform(rho.dim()) : h.value(p);
  return integrability_residual(r, hv, tol);
}

}  // namespace gcx
