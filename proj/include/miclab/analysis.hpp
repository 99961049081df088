#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "miclab/povm.hpp"
#include "miclab/report.hpp"

namespace miclab {

// The three equivalent characterizations of an unbiased MIC, each evaluated
// independently, with the deviation that decided it.
struct UnbiasedEquivalence {
  bool uniform_weights = false;
  double weight_deviation = 0.0;     // max_i |e_i - 1/d|
  bool doubly_stochastic = false;
  double stochastic_deviation = 0.0; // max row/column-sum deviation of dG from 1
  bool lambda_max_pinned = false;
  double lambda_max = 0.0;

  bool agree() const {
    return uniform_weights == doubly_stochastic && doubly_stochastic == lambda_max_pinned;
  }
};

UnbiasedEquivalence unbiased_equivalence_report(const Mic& mic, const ToleranceConfig& tol = {});

struct DualIndefiniteness {
  bool all_indefinite = false;
  std::vector<std::pair<double, double>> eigenvalue_ranges;  // (lambda_min, lambda_max) per element
};

// Throws IllConditionedGram through dual_basis.
DualIndefiniteness dual_indefiniteness(const Mic& mic, const ToleranceConfig& tol = {});

struct OrthogonalityReport {
  std::vector<std::pair<int, int>> pairs;  // 0-based, i < j
  int count = 0;
  double min_offdiag = 0.0;
};

OrthogonalityReport orthogonal_pairs(const GramMatrix& g, double tol = 1e-10);

struct ClassicalityScores {
  double frobenius_gap = 0.0;
  double inv_gram_distance = 0.0;
  double bound = 0.0;  // (d-1)/(d+1)
};

enum class NormKind { Frobenius, Spectral, Trace };

const char* to_string(NormKind n);

// sum_ij ((1/d) delta_ij - G_ij)^2. Throws BiasedMic for biased input.
double frobenius_orthogonality_gap(const Mic& mic, double unbiased_tol = 1e-9);

double orthogonality_bound(int d);

// ||I - (1/d) G^{-1}|| in the requested norm. Throws BiasedMic or
// IllConditionedGram.
double inv_gram_distance(const Mic& mic, NormKind norm, double unbiased_tol = 1e-9);

// The same quantity for any SIC in dimension d, from its closed-form spectrum.
double sic_inv_gram_distance(int d, NormKind norm);

ClassicalityScores classicality_scores(const Mic& mic);

struct PhiMatrix {
  RealMatrix phi;
  double condition_number = 0.0;

  double max_column_sum_deviation() const;
  double min_entry() const { return phi.minCoeff(); }
};

// Phi = M^{-1} with M_ij = tr(H_i sigma_j). Throws SingularConditionalMatrix
// when cond(M) >= 1e12.
PhiMatrix phi_matrix(const Mic& reference, const std::vector<ComplexMatrix>& post_states,
                     const ToleranceConfig& tol = {});

// Q(D_j) = sum_ik tr(sigma_i D_j) Phi_ik tr(rho H_k).
ProbabilityVector cascaded_probability(const ComplexMatrix& rho, const Mic& reference,
                                       const std::vector<ComplexMatrix>& post_states,
                                       const Povm& second, const ToleranceConfig& tol = {});

// W_{k,l} = (d+1) tr(E_{k,l} rho) - 1/d.
RealVector wigner_quasiprobs(const ComplexMatrix& rho, const Mic& appleby,
                             const ToleranceConfig& tol = {});

// Necessary condition for group covariance: every row of G is a permutation
// of row 0 within tol.
bool group_covariance_check(const GramMatrix& g, double tol = 1e-9);

double collision_probability(const ProbabilityVector& p);

enum class ProbeKind { OrthocrossMinGram, OrthocrossInvGramHalfInt, Rank1OrthoPairSearch };

const char* to_string(ProbeKind k);

struct ProbeParams {
  int d_min = 2;
  int d_max = 6;
  int restarts = 10000;
  std::uint64_t seed = 1;
};

// Conjecture probes only report; nothing here asserts an open statement.
Report conjecture_probe(ProbeKind kind, const ProbeParams& params = {});

}  // namespace miclab
