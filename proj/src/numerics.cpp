#include "miclab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "miclab/error.hpp"

namespace miclab {

ToleranceConfig ToleranceConfig::from_environment() {
  ToleranceConfig tol;
  if (const char* raw = std::getenv("MIC_LAB_TOL")) {
    char* end = nullptr;
    const double value = std::strtod(raw, &end);
    if (end != raw && *end == '\0' && value > 0.0 && std::isfinite(value)) {
      tol.eig_tol = value;
      tol.rank_tol = value;
    } else {
      throw MicError(ErrorCode::InvalidArgument,
                     std::string("MIC_LAB_TOL must be a positive decimal, got '") + raw + "'");
    }
  }
  return tol;
}

void ToleranceConfig::validate() const {
  if (!(eig_tol > 0 && rank_tol > 0 && hermitian_tol > 0 && zero_tol > 0)) {
    throw MicError(ErrorCode::InvalidArgument, "tolerances must be strictly positive");
  }
}

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::PositiveSemidefinite: return "PositiveSemidefinite";
    case Definiteness::NegativeSemidefinite: return "NegativeSemidefinite";
    case Definiteness::Indefinite: return "Indefinite";
  }
  return "Unknown";
}

double hermitian_residual(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    throw MicError(ErrorCode::ShapeMismatch, "expected a square matrix, got " +
                                                 std::to_string(a.rows()) + "x" +
                                                 std::to_string(a.cols()));
  }
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

void require_hermitian(const ComplexMatrix& a, const ToleranceConfig& tol) {
  if (a.size() == 0) throw MicError(ErrorCode::ShapeMismatch, "empty matrix");
  const double residual = hermitian_residual(a);
  if (!(residual <= tol.hermitian_tol)) {
    throw MicError(ErrorCode::NotHermitian, "max |A - A^dagger| = " + std::to_string(residual));
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return (a + a.adjoint()) * 0.5; }

EigenSystem eigh(const ComplexMatrix& h, const ToleranceConfig& tol) {
  require_hermitian(h, tol);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw MicError(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigvalsh(const ComplexMatrix& h, const ToleranceConfig& tol) {
  require_hermitian(h, tol);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw MicError(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

RealVector eigvalsh(const RealMatrix& s, const ToleranceConfig& tol) {
  if (s.rows() != s.cols() || s.size() == 0) {
    throw MicError(ErrorCode::ShapeMismatch, "expected a nonempty square matrix");
  }
  const double residual = (s - s.transpose()).cwiseAbs().maxCoeff();
  if (!(residual <= tol.hermitian_tol)) {
    throw MicError(ErrorCode::NotHermitian, "max |S - S^T| = " + std::to_string(residual));
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw MicError(ErrorCode::ConvergenceFailure, "symmetric eigensolver did not converge");
  }
  return solver.eigenvalues();
}

ComplexMatrix inv_sqrt_psd(const ComplexMatrix& h, const ToleranceConfig& tol) {
  const EigenSystem es = eigh(h, tol);
  const double lmin = es.values.minCoeff();
  const double lmax = es.values.maxCoeff();
  if (!(lmax > 0) || lmin <= tol.rank_tol * lmax) {
    throw MicError(ErrorCode::SingularOperator,
                   "lambda_min = " + std::to_string(lmin) + ", lambda_max = " + std::to_string(lmax));
  }
  const RealVector scale = es.values.cwiseSqrt().cwiseInverse();
  const ComplexMatrix r = es.vectors * scale.asDiagonal() * es.vectors.adjoint();
  return hermitian_part(r);
}

ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw MicError(ErrorCode::ShapeMismatch, "Hadamard product needs equal shapes");
  }
  return a.cwiseProduct(b);
}

namespace {

template <typename Matrix>
Matrix kron_impl(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Matrix>
int rank_impl(const Matrix& a, const ToleranceConfig& tol) {
  if (a.size() == 0) return 0;
  Eigen::BDCSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || !(sv(0) > 0)) return 0;
  const double cutoff = tol.rank_tol * sv(0);
  return static_cast<int>((sv.array() > cutoff).count());
}

}  // namespace

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) { return kron_impl(a, b); }
RealMatrix kron(const RealMatrix& a, const RealMatrix& b) { return kron_impl(a, b); }

int numerical_rank(const ComplexMatrix& a, const ToleranceConfig& tol) { return rank_impl(a, tol); }
int numerical_rank(const RealMatrix& a, const ToleranceConfig& tol) { return rank_impl(a, tol); }

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw MicError(ErrorCode::ShapeMismatch, "Frobenius distance needs equal shapes");
  }
  return (a - b).norm();
}

double frobenius_distance(const RealMatrix& a, const RealMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw MicError(ErrorCode::ShapeMismatch, "Frobenius distance needs equal shapes");
  }
  return (a - b).norm();
}

Definiteness definiteness(const ComplexMatrix& h, const ToleranceConfig& tol) {
  const RealVector values = eigvalsh(h, tol);
  const double scale = values.cwiseAbs().maxCoeff();
  const double cutoff = tol.zero_tol * scale;
  const bool has_positive = (values.array() > cutoff).any();
  const bool has_negative = (values.array() < -cutoff).any();
  if (has_positive && has_negative) return Definiteness::Indefinite;
  if (has_negative) return Definiteness::NegativeSemidefinite;
  return Definiteness::PositiveSemidefinite;
}

double condition_number(const RealMatrix& s) {
  const RealVector values = eigvalsh(s, ToleranceConfig{.hermitian_tol = 1e-9});
  const double lmin = values.minCoeff();
  const double lmax = values.maxCoeff();
  if (!(lmin > 0)) return std::numeric_limits<double>::infinity();
  return lmax / lmin;
}

RealMatrix symmetric_inverse(const RealMatrix& s) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(s);
  if (solver.info() != Eigen::Success) {
    throw MicError(ErrorCode::ConvergenceFailure, "symmetric eigensolver did not converge");
  }
  const RealMatrix& v = solver.eigenvectors();
  const RealMatrix inv = v * solver.eigenvalues().cwiseInverse().asDiagonal() * v.transpose();
  return (inv + inv.transpose()) * 0.5;
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace miclab
