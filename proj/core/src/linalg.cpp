#include "gcx/linalg.hpp"

namespace gcx {

Eigen::MatrixXcd clifford_action_matrix(const Multiform& rho) {
  const int n = rho.dim();
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(rho.size()), 2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    GcVector e(n);
    e.component(k) = 1.0;
    a.col(k) = to_eigen(clifford(e, rho));
  }
  return a;
}

Eigen::VectorXcd to_eigen(const Multiform& a) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(a.size()));
  for (Mask m = 0; m < a.size(); ++m) v(m) = a[m];
  return v;
}

Multiform multiform_from_eigen(int dim, const Eigen::VectorXcd& v) {
  Multiform out(dim);
  require(v.size() == static_cast<Eigen::Index>(out.size()), "multiform_from_eigen: size mismatch");
  for (Mask m = 0; m < out.size(); ++m) out.at(m) = v(m);
  return out;
}

Eigen::VectorXcd to_eigen(const GcVector& v) {
  Eigen::VectorXcd out(2 * v.dim);
  for (int k = 0; k < 2 * v.dim; ++k) out(k) = v.component(k);
  return out;
}

GcVector gc_vector_from_eigen(int dim, const Eigen::VectorXcd& v) {
  require(v.size() == 2 * dim, "gc_vector_from_eigen: size mismatch");
  GcVector out(dim);
  for (int k = 0; k < 2 * dim; ++k) out.component(k) = v(k);
  return out;
}

namespace {

double threshold_for(const Eigen::MatrixXcd& a, double rel_tol) {
  return rel_tol * (a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff());
}

}  // namespace

std::vector<Eigen::VectorXcd> null_space(const Eigen::MatrixXcd& a, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
  const double thr = threshold_for(a, rel_tol);
  const auto& s = svd.singularValues();
  std::vector<Eigen::VectorXcd> out;
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    const double sk = k < s.size() ? s(k) : 0.0;
    if (sk <= thr) out.push_back(svd.matrixV().col(k));
  }
  return out;
}

LeastSquaresSolution min_norm_least_squares(const Eigen::MatrixXcd& a,
                                            const Eigen::VectorXcd& b, double rel_tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double thr = threshold_for(a, rel_tol);
  const auto& s = svd.singularValues();
  Eigen::VectorXcd utb = svd.matrixU().adjoint() * b;
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(s.size());
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > thr) {
      y(k) = utb(k) / s(k);
      ++rank;
    }
  }
  LeastSquaresSolution out;
  out.x = svd.matrixV() * y;
  out.residual = (a * out.x - b).norm();
  out.rank = rank;
  return out;
}

}  // namespace gcx
