#include "gcx/spinor.hpp"

#include <cmath>
#include <string>

#include "gcx/linalg.hpp"

namespace gcx {

namespace {

constexpr double kReconstructionTol = 1e-8;

Multiform to_complex_two_form(const Multiform& B, const Multiform& omega) {
  return B + omega.scaled(Complex(0.0, 1.0));
}

}  // namespace

AnnihilatorBasis annihilator(const Multiform& rho, double tol) {
  require(max_abs(rho) > 0.0, "annihilator: rho = 0 is annihilated by everything");
  AnnihilatorBasis out;
  out.dim = rho.dim();
  out.tol = tol;
  for (const auto& v : null_space(clifford_action_matrix(rho), tol)) {
    out.vectors.push_back(gc_vector_from_eigen(rho.dim(), v));
  }
  return out;
}

bool is_pure(const Multiform& rho, double tol) {
  const AnnihilatorBasis l = annihilator(rho, tol);
  if (l.size() != rho.dim()) return false;
  // Null-space vectors are orthonormal, so the pairing is already O(1).
  for (const auto& u : l.vectors) {
    for (const auto& v : l.vectors) {
      ensure(std::abs(pairing(u, v)) <= 1e3 * tol,
             "is_pure: annihilator of a pure spinor failed to be isotropic");
    }
  }
  return true;
}

int type_of(const Multiform& rho, double tol) {
  const double thr = tol * max_abs(rho);
  for (int k = 0; k <= rho.dim(); ++k) {
    for (Mask m = 0; m < rho.size(); ++m) {
      if (degree_of(m) == k && std::abs(rho[m]) > thr) return k;
    }
  }
  throw ContractError("type_of: rho = 0 has no type");
}

NormalForm normal_form(const Multiform& rho, double tol) {
  require(is_pure(rho, tol), "normal_form: input is not a pure spinor");
  const int n = rho.dim();
  NormalForm nf;
  nf.type = type_of(rho, tol);
  const int k = nf.type;
  const Multiform omega0 = rho.degree_part(k);

  if (k >= 2) {
    const double scale = norm2(omega0);
    ensure(norm2(wedge(omega0, omega0)) <= kReconstructionTol * scale * scale,
           "normal_form: leading component is not decomposable");
  }

  Multiform beta(n);
  if (k == 0) {
    beta = rho.degree_part(2).scaled(1.0 / rho[0]);
    nf.gauge_unique = true;
  } else {
    // Solve beta ^ Omega = rho_{k+2} over all complex 2-forms beta.
    std::vector<Mask> two_forms;
    for (Mask m = 0; m < rho.size(); ++m) {
      if (degree_of(m) == 2) two_forms.push_back(m);
    }
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(rho.size()),
                       static_cast<Eigen::Index>(two_forms.size()));
    for (std::size_t q = 0; q < two_forms.size(); ++q) {
      a.col(static_cast<Eigen::Index>(q)) =
          to_eigen(wedge(Multiform::monomial(n, two_forms[q], 1.0), omega0));
    }
    const auto sol = min_norm_least_squares(a, to_eigen(rho.degree_part(k + 2)), tol);
    for (std::size_t q = 0; q < two_forms.size(); ++q) {
      beta.at(two_forms[q]) = sol.x(static_cast<Eigen::Index>(q));
    }
    nf.gauge_unique = sol.rank == static_cast<int>(two_forms.size());
  }

  nf.omega0 = omega0;
  nf.B = real_part(beta);
  nf.omega = imag_part(beta);

  const Multiform back = reconstruct(nf);
  ensure(norm2(back - rho) <= kReconstructionTol * norm2(rho),
         "normal_form: higher components inconsistent with exp(B + i omega) ^ Omega");
  return nf;
}

Multiform reconstruct(const NormalForm& nf) {
  return wedge(exp_wedge(to_complex_two_form(nf.B, nf.omega)), nf.omega0);
}

bool check_nondegenerate(const NormalForm& nf, double tol) {
  const int n = nf.omega0.dim();
  require(n % 2 == 0, "check_nondegenerate: needs an even-dimensional space");
  const int half = n / 2;
  if (nf.type > half) return false;
  const Multiform top =
      wedge(wedge(nf.omega0, conj(nf.omega0)), wedge_power(nf.omega, half - nf.type));
  return std::abs(top_coefficient(top)) > tol;
}

Multiform b_transform(const Multiform& B, const Multiform& rho) {
  require(B.dim() == rho.dim(), "b_transform: dimension mismatch");
  require(is_real(B), "b_transform: B must be real");
  require(is_homogeneous(B, 2), "b_transform: B must be a 2-form");
  return wedge(exp_wedge(B), rho);
}

Multiform from_symplectic(const Multiform& omega, double tol) {
  const int n = omega.dim();
  require(n % 2 == 0, "from_symplectic: needs an even-dimensional space");
  require(is_real(omega) && is_homogeneous(omega, 2),
          "from_symplectic: omega must be a real 2-form");
  const double top = std::abs(top_coefficient(wedge_power(omega, n / 2)));
  require(top > tol, "from_symplectic: degenerate 2-form, top power " + std::to_string(top) +
                         " is below tolerance " + std::to_string(tol));
  return exp_wedge(omega.scaled(Complex(0.0, 1.0)));
}

Multiform from_complex(const Eigen::MatrixXd& complex_structure) {
  const auto& I = complex_structure;
  const Eigen::Index n = I.rows();
  require(I.cols() == n && n % 2 == 0 && n >= 2 && n <= kMaxDim,
          "from_complex: expected an even square matrix of size <= 4");
  const double scale = std::max(1.0, I.cwiseAbs().maxCoeff());
  const Eigen::MatrixXd sq = I * I + Eigen::MatrixXd::Identity(n, n);
  require(sq.cwiseAbs().maxCoeff() <= 1e-10 * scale * scale,
          "from_complex: matrix does not square to -1");

  // (1,0)-covectors: xi with xi(I X) = i xi(X), i.e. I^T xi = i xi.
  const Eigen::MatrixXcd shifted =
      I.transpose().cast<Complex>() - Complex(0.0, 1.0) * Eigen::MatrixXcd::Identity(n, n);
  const auto basis = null_space(shifted, kDefaultRankTol);
  ensure(static_cast<Eigen::Index>(basis.size()) == n / 2,
         "from_complex: eigenspace of I^T has the wrong dimension");

  const int dim = static_cast<int>(n);
  Multiform out = Multiform::scalar(dim, 1.0);
  for (const auto& xi : basis) {
    Multiform one(dim);
    for (int i = 0; i < dim; ++i) one.at(Mask{1} << i) = xi(i);
    out = wedge(out, one);
  }
  const double peak = max_abs(out);
  for (Mask m = 0; m < out.size(); ++m) {
    if (std::abs(out[m]) >= (1.0 - 1e-12) * peak) {
      const Complex pivot = out[m];
      out = out.scaled(1.0 / pivot);
      out.at(m) = 1.0;
      break;
    }
  }
  return out;
}

GcEndomorphism j_endomorphism(const Multiform& rho, double tol) {
  const int n = rho.dim();
  const AnnihilatorBasis l = annihilator(rho, tol);
  require(l.size() == n, "j_endomorphism: rho is not pure");
  Eigen::MatrixXcd p(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    p.col(k) = to_eigen(l.vectors[k]);
    p.col(n + k) = to_eigen(conj(l.vectors[k]));
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(p);
  const auto& s = svd.singularValues();
  require(s(s.size() - 1) > tol * s(0), "degenerate spinor, no J exists");

  Eigen::VectorXcd eig(2 * n);
  eig.head(n).setConstant(Complex(0.0, 1.0));
  eig.tail(n).setConstant(Complex(0.0, -1.0));
  const Eigen::MatrixXcd j = p * eig.asDiagonal() * p.inverse();
  ensure(j.imag().cwiseAbs().maxCoeff() <= 1e-8 * std::max(1.0, j.cwiseAbs().maxCoeff()),
         "j_endomorphism: J failed to be real");
  return GcEndomorphism{n, j.real()};
}

Eigen::MatrixXd pairing_gram(int dim) {
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(2 * dim, 2 * dim);
  for (int i = 0; i < dim; ++i) {
    g(i, dim + i) = 0.5;
    g(dim + i, i) = 0.5;
  }
  return g;
}

Eigen::MatrixXcd contraction_matrix(const Multiform& beta) {
  const int n = beta.dim();
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const Multiform c = interior(i, beta.degree_part(2));
    for (int j = 0; j < n; ++j) w(j, i) = c[Mask{1} << j];
  }
  return w;
}

Eigen::MatrixXd b_field_matrix(const Multiform& B) {
  require(is_real(B) && is_homogeneous(B, 2), "b_field_matrix: B must be a real 2-form");
  const int n = B.dim();
  Eigen::MatrixXd e = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  e.bottomLeftCorner(n, n) = contraction_matrix(B).real();
  return e;
}

}  // namespace gcx
