#include "miclab/povm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "miclab/error.hpp"

namespace miclab {

namespace {

constexpr double kMaxGramCondition = 1e12;
constexpr double kDualityTol = 1e-8;

// Row i holds the entries of effects[i]; tr(E_i E_j) = (V V^dagger)_ij for
// Hermitian effects.
ComplexMatrix stack_rows(const std::vector<ComplexMatrix>& effects) {
  const Eigen::Index n = effects.front().size();
  ComplexMatrix v(static_cast<Eigen::Index>(effects.size()), n);
  for (std::size_t i = 0; i < effects.size(); ++i) {
    v.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::RowVectorXcd>(effects[i].data(), n);
  }
  return v;
}

ComplexMatrix unstack_row(const ComplexMatrix& v, Eigen::Index row, int dim) {
  ComplexMatrix out(dim, dim);
  Eigen::Map<Eigen::RowVectorXcd>(out.data(), v.cols()) = v.row(row);
  return out;
}

}  // namespace

std::vector<ComplexMatrix> Povm::matrices() const {
  std::vector<ComplexMatrix> out;
  out.reserve(effects_.size());
  for (const auto& e : effects_) out.push_back(e.matrix);
  return out;
}

RealVector Povm::weights() const {
  RealVector w(static_cast<Eigen::Index>(effects_.size()));
  for (std::size_t i = 0; i < effects_.size(); ++i) w(static_cast<Eigen::Index>(i)) = effects_[i].weight;
  return w;
}

Povm validate_povm(const std::vector<ComplexMatrix>& effects, const ToleranceConfig& tol) {
  if (effects.empty()) throw MicError(ErrorCode::InvalidArgument, "a POVM needs at least one effect");
  const auto dim = effects.front().rows();
  if (dim < 1) throw MicError(ErrorCode::ShapeMismatch, "effects must be nonempty");
  std::vector<Effect> validated;
  validated.reserve(effects.size());
  ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < effects.size(); ++i) {
    const ComplexMatrix& raw = effects[i];
    if (raw.rows() != dim || raw.cols() != dim) {
      throw MicError(ErrorCode::ShapeMismatch, "effect " + std::to_string(i) + " is not " +
                                                   std::to_string(dim) + "x" + std::to_string(dim));
    }
    require_hermitian(raw, tol);
    Effect e;
    e.matrix = hermitian_part(raw);
    const double lmin = eigvalsh(e.matrix, tol).minCoeff();
    if (lmin < -tol.zero_tol) {
      throw MicError(ErrorCode::NotPsd, "effect " + std::to_string(i) + " has eigenvalue " +
                                            std::to_string(lmin));
    }
    e.weight = e.matrix.trace().real();
    e.unit_part = e.weight > tol.zero_tol ? ComplexMatrix(e.matrix / e.weight)
                                          : ComplexMatrix(ComplexMatrix::Zero(dim, dim));
    total += e.matrix;
    validated.push_back(std::move(e));
  }
  const ComplexMatrix deficit = total - ComplexMatrix::Identity(dim, dim);
  if (deficit.cwiseAbs().maxCoeff() > tol.zero_tol * static_cast<double>(dim)) {
    throw MicError(ErrorCode::SumNotIdentity,
                   "||sum E_i - I||_F = " + std::to_string(deficit.norm()));
  }
  return Povm(static_cast<int>(dim), std::move(validated));
}

Mic validate_mic(const Povm& povm, const ToleranceConfig& tol) {
  const std::size_t expected = static_cast<std::size_t>(povm.dim()) * povm.dim();
  if (povm.size() != expected) {
    throw MicError(ErrorCode::WrongCount, "have " + std::to_string(povm.size()) +
                                              " effects, need " + std::to_string(expected));
  }
  GramMatrix g = gram(povm, tol);
  const int rank = numerical_rank(g, tol);
  bool has_null_effect = false;
  for (const auto& e : povm.effects()) has_null_effect |= e.weight <= tol.zero_tol;
  if (has_null_effect || rank != static_cast<int>(expected)) {
    throw MicError(ErrorCode::LinearlyDependent,
                   "Gram rank " + std::to_string(rank) + " of " + std::to_string(expected));
  }
  return Mic(povm, std::move(g));
}

Mic make_mic(const std::vector<ComplexMatrix>& effects, const ToleranceConfig& tol) {
  return validate_mic(validate_povm(effects, tol), tol);
}

GramMatrix gram(const std::vector<ComplexMatrix>& effects, const ToleranceConfig& tol) {
  if (effects.empty()) return GramMatrix(0, 0);
  const ComplexMatrix v = stack_rows(effects);
  const ComplexMatrix products = v * v.adjoint();
  const double residue = products.imag().cwiseAbs().maxCoeff();
  if (residue > tol.zero_tol) {
    throw MicError(ErrorCode::NotHermitian, "imaginary Gram residue " + std::to_string(residue));
  }
  const RealMatrix g = products.real();
  return (g + g.transpose()) * 0.5;
}

GramMatrix gram(const Povm& povm, const ToleranceConfig& tol) { return gram(povm.matrices(), tol); }

bool is_unbiased(const Mic& mic, double tol) {
  const double target = 1.0 / mic.dim();
  return (mic.weights().array() - target).abs().maxCoeff() <= tol;
}

DualBasis dual_basis(const Mic& mic) {
  const GramMatrix& g = mic.gram();
  const double cond = condition_number(g);
  if (!(cond <= kMaxGramCondition)) {
    throw MicError(ErrorCode::IllConditionedGram, "cond(G) = " + std::to_string(cond));
  }
  DualBasis dual;
  dual.gram_inverse = symmetric_inverse(g);
  const ComplexMatrix v = stack_rows(mic.matrices());
  const ComplexMatrix w = dual.gram_inverse.cast<Complex>() * v;
  const ComplexMatrix pairing = v * w.adjoint();
  const double defect =
      (pairing - ComplexMatrix::Identity(pairing.rows(), pairing.cols())).cwiseAbs().maxCoeff();
  // Rounding alone leaves a defect of order cond * epsilon.
  const double allowed =
      std::max(kDualityTol, 100.0 * cond * std::numeric_limits<double>::epsilon());
  if (defect > allowed) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "duality defect %.3e exceeds %.3e", defect, allowed);
    throw MicError(ErrorCode::IllConditionedGram, msg);
  }
  dual.elements.reserve(mic.size());
  for (Eigen::Index i = 0; i < w.rows(); ++i) {
    dual.elements.push_back(hermitian_part(unstack_row(w, i, mic.dim())));
  }
  return dual;
}

void require_state(const ComplexMatrix& rho, const ToleranceConfig& tol) {
  if (rho.rows() != rho.cols() || rho.size() == 0) {
    throw MicError(ErrorCode::InvalidState, "state must be a nonempty square matrix");
  }
  if (hermitian_residual(rho) > tol.hermitian_tol) {
    throw MicError(ErrorCode::InvalidState, "state is not Hermitian");
  }
  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > 1e-10) {
    throw MicError(ErrorCode::InvalidState, "state trace " + std::to_string(trace));
  }
  const double lmin = eigvalsh(hermitian_part(rho), tol).minCoeff();
  if (lmin < -tol.zero_tol) {
    throw MicError(ErrorCode::InvalidState, "state has eigenvalue " + std::to_string(lmin));
  }
}

ProbabilityVector born_probabilities(const ComplexMatrix& rho, const Povm& povm,
                                     const ToleranceConfig& tol) {
  require_state(rho, tol);
  if (rho.rows() != povm.dim()) {
    throw MicError(ErrorCode::ShapeMismatch, "state and POVM dimensions differ");
  }
  ProbabilityVector p(static_cast<Eigen::Index>(povm.size()));
  // tr(rho E) = sum_ab rho_ab E_ba
  const ComplexMatrix rho_t = rho.transpose();
  for (std::size_t i = 0; i < povm.size(); ++i) {
    p(static_cast<Eigen::Index>(i)) = rho_t.cwiseProduct(povm[i].matrix).sum().real();
  }
  return p;
}

ProbabilityVector born_probabilities(const ComplexMatrix& rho, const Mic& mic,
                                     const ToleranceConfig& tol) {
  return born_probabilities(rho, mic.povm(), tol);
}

ComplexMatrix reconstruct_state(const ProbabilityVector& p, const DualBasis& dual) {
  if (static_cast<std::size_t>(p.size()) != dual.elements.size()) {
    throw MicError(ErrorCode::ShapeMismatch, "probability vector length " +
                                                 std::to_string(p.size()) + " vs " +
                                                 std::to_string(dual.elements.size()));
  }
  const auto dim = dual.elements.front().rows();
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < dual.elements.size(); ++i) {
    rho += p(static_cast<Eigen::Index>(i)) * dual.elements[i];
  }
  return rho;
}

ComplexMatrix reconstruct_state(const ProbabilityVector& p, const Mic& mic) {
  return reconstruct_state(p, dual_basis(mic));
}

double purity_form(const ProbabilityVector& p, const GramMatrix& g) {
  if (g.rows() != p.size() || g.cols() != p.size()) {
    throw MicError(ErrorCode::ShapeMismatch, "Gram and probability dimensions differ");
  }
  const double cond = condition_number(g);
  if (!(cond <= kMaxGramCondition)) {
    throw MicError(ErrorCode::IllConditionedGram, "cond(G) = " + std::to_string(cond));
  }
  const RealVector x = g.ldlt().solve(p);
  return p.dot(x);
}

ComplexMatrix rescaled_vector_gram(const std::vector<ComplexVector>& vectors,
                                   const std::vector<double>& weights) {
  if (vectors.empty() || vectors.size() != weights.size()) {
    throw MicError(ErrorCode::ShapeMismatch, "need one weight per vector");
  }
  const auto dim = vectors.front().size();
  ComplexMatrix scaled(dim, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != dim) throw MicError(ErrorCode::ShapeMismatch, "vector lengths differ");
    if (std::abs(vectors[i].norm() - 1.0) > 1e-10) {
      throw MicError(ErrorCode::NotNormalized, "vector " + std::to_string(i));
    }
    if (!(weights[i] >= 0.0 && weights[i] <= 1.0)) {
      throw MicError(ErrorCode::InvalidArgument, "weight " + std::to_string(i) + " outside [0,1]");
    }
    scaled.col(static_cast<Eigen::Index>(i)) = std::sqrt(weights[i]) * vectors[i];
  }
  return scaled.adjoint() * scaled;
}

Rank1Check rank1_mic_check(const std::vector<ComplexVector>& vectors,
                           const std::vector<double>& weights, const ToleranceConfig& tol) {
  const ComplexMatrix g = rescaled_vector_gram(vectors, weights);
  const auto dim = vectors.front().size();
  Rank1Check result;
  const double idempotency = (g * g - g).cwiseAbs().maxCoeff();
  result.is_rank1_povm = idempotency <= tol.eig_tol && numerical_rank(g, tol) == dim;
  const auto n = static_cast<Eigen::Index>(vectors.size());
  result.is_mic = result.is_rank1_povm && n == dim * dim &&
                  numerical_rank(hadamard(g, g.conjugate()), tol) == dim * dim;
  return result;
}

}  // namespace miclab
