#pragma once

// Pointwise pure-spinor theory: annihilators, the normal form
// rho = exp(B + i omega) ^ Omega, type, nondegeneracy, B-field transforms and
// the generalized complex endomorphism J of T + T*.

#include <Eigen/Dense>
#include <vector>

#include "gcx/multiform.hpp"

namespace gcx {

inline constexpr double kDefaultRankTol = 1e-9;

struct AnnihilatorBasis {
  int dim = 0;
  std::vector<GcVector> vectors;
  double tol = kDefaultRankTol;

  int size() const { return static_cast<int>(vectors.size()); }
};

struct NormalForm {
  int type = 0;
  Multiform omega0{kMaxDim};  // decomposable degree-`type` factor, carries the scale
  Multiform B{kMaxDim};
  Multiform omega{kMaxDim};
  bool gauge_unique = true;  // false when B + i omega was fixed by minimal norm
};

// Real 2n x 2n matrix on (vec, cov) coordinates.
struct GcEndomorphism {
  int dim = 0;
  Eigen::MatrixXd matrix;
};

AnnihilatorBasis annihilator(const Multiform& rho, double tol = kDefaultRankTol);

bool is_pure(const Multiform& rho, double tol = kDefaultRankTol);

// Lowest degree carrying a coefficient above tol * max_abs(rho).
int type_of(const Multiform& rho, double tol = kDefaultRankTol);

NormalForm normal_form(const Multiform& rho, double tol = kDefaultRankTol);

// Reassembles exp(B + i omega) ^ Omega.
Multiform reconstruct(const NormalForm& nf);

// Omega ^ conj(Omega) ^ omega^(n/2 - k) has a nonzero top coefficient.
bool check_nondegenerate(const NormalForm& nf, double tol = kDefaultRankTol);

Multiform b_transform(const Multiform& B, const Multiform& rho);

Multiform from_symplectic(const Multiform& omega, double tol = kDefaultRankTol);

// Canonical line of an almost complex structure I on T (I acts on vector
// components, I^2 = -1). Scaled so that the first coefficient of maximal
// modulus equals 1.
Multiform from_complex(const Eigen::MatrixXd& complex_structure);

GcEndomorphism j_endomorphism(const Multiform& rho, double tol = kDefaultRankTol);

// Gram matrix of the pairing on the real basis (d/dx^1..d/dx^n, dx^1..dx^n).
Eigen::MatrixXd pairing_gram(int dim);

// The orthogonal map X + xi -> X + xi + i_X B.
Eigen::MatrixXd b_field_matrix(const Multiform& B);

// Matrix of X -> i_X beta for a 2-form beta, on vector/covector components.
Eigen::MatrixXcd contraction_matrix(const Multiform& beta);

// Exponential acting on spinors vs. the action on T + T*: the annihilator of
// exp(B) ^ rho is E_{s B}(annihilator(rho)) with s fixed below, so
// J(exp(B) ^ rho) = E_{sB} J(rho) E_{sB}^{-1}.
inline constexpr int kSpinorBTransformSign = -1;

}  // namespace gcx
