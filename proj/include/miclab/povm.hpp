#pragma once

#include <cstddef>
#include <vector>

#include "miclab/numerics.hpp"

namespace miclab {

// Real symmetric matrix of Hilbert-Schmidt inner products tr(E_i E_j).
using GramMatrix = RealMatrix;
using ProbabilityVector = RealVector;

// One POVM element E = e * rho, with e = tr E.
struct Effect {
  ComplexMatrix matrix;
  double weight = 0.0;
  // tr = 1 when weight > zero_tol, otherwise the zero matrix.
  ComplexMatrix unit_part;
};

// A validated set of positive semidefinite operators summing to the identity.
// Only validate_povm creates one.
class Povm {
 public:
  int dim() const { return dim_; }
  std::size_t size() const { return effects_.size(); }
  const std::vector<Effect>& effects() const { return effects_; }
  const Effect& operator[](std::size_t i) const { return effects_[i]; }
  std::vector<ComplexMatrix> matrices() const;
  RealVector weights() const;

 private:
  friend Povm validate_povm(const std::vector<ComplexMatrix>&, const ToleranceConfig&);
  Povm(int dim, std::vector<Effect> effects) : dim_(dim), effects_(std::move(effects)) {}

  int dim_;
  std::vector<Effect> effects_;
};

// A POVM with exactly d^2 linearly independent effects. The Gram matrix is
// computed once at construction.
class Mic {
 public:
  const Povm& povm() const { return povm_; }
  int dim() const { return povm_.dim(); }
  std::size_t size() const { return povm_.size(); }
  const Effect& operator[](std::size_t i) const { return povm_[i]; }
  const std::vector<Effect>& effects() const { return povm_.effects(); }
  std::vector<ComplexMatrix> matrices() const { return povm_.matrices(); }
  RealVector weights() const { return povm_.weights(); }
  const GramMatrix& gram() const { return gram_; }

 private:
  friend Mic validate_mic(const Povm&, const ToleranceConfig&);
  Mic(Povm povm, GramMatrix gram) : povm_(std::move(povm)), gram_(std::move(gram)) {}

  Povm povm_;
  GramMatrix gram_;
};

// Operators dual to a MIC: tr(E_i dual_j) = delta_ij.
struct DualBasis {
  std::vector<ComplexMatrix> elements;
  GramMatrix gram_inverse;
};

struct Rank1Check {
  bool is_rank1_povm = false;
  bool is_mic = false;
};

Povm validate_povm(const std::vector<ComplexMatrix>& effects, const ToleranceConfig& tol = {});
Mic validate_mic(const Povm& povm, const ToleranceConfig& tol = {});
// validate_povm followed by validate_mic.
Mic make_mic(const std::vector<ComplexMatrix>& effects, const ToleranceConfig& tol = {});

// [G]_ij = Re tr(E_i E_j) for Hermitian effects.
GramMatrix gram(const std::vector<ComplexMatrix>& effects, const ToleranceConfig& tol = {});
GramMatrix gram(const Povm& povm, const ToleranceConfig& tol = {});

bool is_unbiased(const Mic& mic, double tol = 1e-9);

// Throws IllConditionedGram when cond(G) exceeds 1e12.
DualBasis dual_basis(const Mic& mic);

// Throws InvalidState unless rho is Hermitian, unit trace and PSD.
void require_state(const ComplexMatrix& rho, const ToleranceConfig& tol = {});

ProbabilityVector born_probabilities(const ComplexMatrix& rho, const Povm& povm,
                                     const ToleranceConfig& tol = {});
ProbabilityVector born_probabilities(const ComplexMatrix& rho, const Mic& mic,
                                     const ToleranceConfig& tol = {});

// sum_i p_i dual_i. Hermitian and unit trace, not necessarily PSD.
ComplexMatrix reconstruct_state(const ProbabilityVector& p, const Mic& mic);
ComplexMatrix reconstruct_state(const ProbabilityVector& p, const DualBasis& dual);

// sum_ij p_i p_j [G^-1]_ij, which equals tr(rho^2) of the reconstructed state.
double purity_form(const ProbabilityVector& p, const GramMatrix& g);

// g_ij = sqrt(e_i e_j) <phi_i|phi_j>.
ComplexMatrix rescaled_vector_gram(const std::vector<ComplexVector>& vectors,
                                   const std::vector<double>& weights);

Rank1Check rank1_mic_check(const std::vector<ComplexVector>& vectors,
                           const std::vector<double>& weights, const ToleranceConfig& tol = {});

}  // namespace miclab
