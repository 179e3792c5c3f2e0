#pragma once

// Small dense complex linear algebra shared by the spinor and chart modules.
// Matrices here are at most 16 x 8, so everything goes through a full SVD.

#include <Eigen/Dense>
#include <vector>

#include "gcx/multiform.hpp"

namespace gcx {

// Column k is clifford(e_k, rho), with e_0..e_{n-1} = d/dx^i and
// e_n..e_{2n-1} = dx^i. Rows are indexed by basis masks.
Eigen::MatrixXcd clifford_action_matrix(const Multiform& rho);

Eigen::VectorXcd to_eigen(const Multiform& a);
Multiform multiform_from_eigen(int dim, const Eigen::VectorXcd& v);
Eigen::VectorXcd to_eigen(const GcVector& v);
GcVector gc_vector_from_eigen(int dim, const Eigen::VectorXcd& v);

// Orthonormal basis of the null space. A singular value counts as zero when
// it is at most rel_tol times the largest entry modulus of a.
std::vector<Eigen::VectorXcd> null_space(const Eigen::MatrixXcd& a, double rel_tol);

struct LeastSquaresSolution {
  Eigen::VectorXcd x;
  double residual = 0.0;  // ||a x - b||_2
  int rank = 0;
};

// Minimal-norm least-squares solution with the same rank rule as null_space.
LeastSquaresSolution min_norm_least_squares(const Eigen::MatrixXcd& a,
                                            const Eigen::VectorXcd& b, double rel_tol);

}  // namespace gcx
