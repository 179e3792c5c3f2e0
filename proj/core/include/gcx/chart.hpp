#pragma once

// Calculus on a coordinate chart: exterior derivative, pullback, the
// H-twisted Courant bracket and the pointwise integrability residual
//   min_v || d rho + H ^ rho - v . rho ||.

#include "gcx/field.hpp"
#include "gcx/spinor.hpp"

namespace gcx {

// d alpha from first partials.
Multiform exterior_derivative(const FormJet& alpha);
Multiform exterior_derivative(const FormField& alpha, const ChartPoint& p);

// d alpha together with its first partials (needs second partials of alpha).
FormJet exterior_derivative_jet(const FormJet& alpha);

// Symbolic d on expression-valued forms.
BasicMultiform<Expr> exterior_derivative(const BasicMultiform<Expr>& alpha);

// Lie bracket of the vector parts.
std::array<Complex, kMaxDim> lie_bracket(const GcVectorJet& u, const GcVectorJet& v);

// [X + xi, Y + eta]_H = [X,Y] + L_X eta - L_Y xi - d(eta(X) - xi(Y))/2 + i_Y i_X H.
GcVector courant_bracket(const GcVectorJet& u, const GcVectorJet& v, const Multiform& h);
GcVector courant_bracket(const GcVectorField& u, const GcVectorField& v, const FormField& h,
                         const ChartPoint& p);

// Pulls back the coefficients alpha (given at phi(p)) along the Jacobian.
template <class T>
BasicMultiform<T> pullback_forms(const BasicMultiform<T>& alpha,
                                 const std::array<std::array<T, kMaxDim>, kMaxDim>& jac,
                                 int source_dim) {
  BasicMultiform<T> out(source_dim);
  for (Mask s = 0; s < alpha.size(); ++s) {
    BasicMultiform<T> term = BasicMultiform<T>::scalar(source_dim, alpha[s]);
    for (int j : indices_of(s)) {
      BasicMultiform<T> dy(source_dim);
      for (int i = 0; i < source_dim; ++i) dy.at(Mask{1} << i) = jac[j][i];
      term = wedge(term, dy);
    }
    out += term;
  }
  return out;
}

Multiform pullback(const ChartMap& phi, const FormField& alpha, const ChartPoint& p);

// phi^* alpha with exact first partials (order-1 jet).
FormJet pullback_jet(const ChartMap& phi, const FormField& alpha, const ChartPoint& p);

struct IntegrabilityWitness {
  GcVector v;
  double residual = 0.0;
};

IntegrabilityWitness integrability_residual(const FormJet& rho, const Multiform& h,
                                            double tol = kDefaultRankTol);
// h may be an empty field, meaning H = 0.
IntegrabilityWitness integrability_residual(const FormField& rho, const FormField& h,
                                            const ChartPoint& p, double tol = kDefaultRankTol);

}  // namespace gcx
