#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace miclab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Numerical thresholds shared by every module.
//
// eig_tol and rank_tol are relative to the largest eigenvalue or singular
// value of the matrix at hand; hermitian_tol and zero_tol are absolute.
struct ToleranceConfig {
  double eig_tol = 1e-9;
  double rank_tol = 1e-9;
  double hermitian_tol = 1e-12;
  double zero_tol = 1e-10;

  // Defaults, with eig_tol and rank_tol replaced by MIC_LAB_TOL when that
  // variable holds a positive decimal number.
  static ToleranceConfig from_environment();

  // Throws InvalidArgument unless every field is strictly positive.
  void validate() const;
};

struct EigenSystem {
  RealVector values;       // ascending
  ComplexMatrix vectors;   // columns are eigenvectors
};

enum class Definiteness { PositiveSemidefinite, NegativeSemidefinite, Indefinite };

const char* to_string(Definiteness d);

// Largest |A_ij - conj(A_ji)|; throws ShapeMismatch for non-square input.
double hermitian_residual(const ComplexMatrix& a);

// Throws NotHermitian when hermitian_residual exceeds tol.hermitian_tol.
void require_hermitian(const ComplexMatrix& a, const ToleranceConfig& tol = {});

// (A + A^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

EigenSystem eigh(const ComplexMatrix& h, const ToleranceConfig& tol = {});
RealVector eigvalsh(const ComplexMatrix& h, const ToleranceConfig& tol = {});
RealVector eigvalsh(const RealMatrix& s, const ToleranceConfig& tol = {});

// R with R H R = I for positive definite H. Throws SingularOperator when
// lambda_min <= rank_tol * lambda_max.
ComplexMatrix inv_sqrt_psd(const ComplexMatrix& h, const ToleranceConfig& tol = {});

ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
RealMatrix kron(const RealMatrix& a, const RealMatrix& b);

// Singular values above rank_tol times the largest one. Zero matrix has rank 0.
int numerical_rank(const ComplexMatrix& a, const ToleranceConfig& tol = {});
int numerical_rank(const RealMatrix& a, const ToleranceConfig& tol = {});

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_distance(const RealMatrix& a, const RealMatrix& b);

// Eigenvalues with |lambda| <= zero_tol * ||H|| count as zero.
Definiteness definiteness(const ComplexMatrix& h, const ToleranceConfig& tol = {});

// lambda_max / lambda_min of a symmetric positive semidefinite matrix;
// infinity when lambda_min <= 0.
double condition_number(const RealMatrix& s);

// Inverse of a symmetric positive definite matrix, symmetrized.
RealMatrix symmetric_inverse(const RealMatrix& s);

// Outer product |v><v|.
ComplexMatrix projector(const ComplexVector& v);

}  // namespace miclab
