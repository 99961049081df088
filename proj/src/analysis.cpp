#include "miclab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include <Eigen/SVD>

#include "miclab/constructions.hpp"
#include "miclab/error.hpp"

namespace miclab {

namespace {

constexpr double kGramConditionLimit = 1e12;
constexpr double kPhiConditionLimit = 1e12;

void require_unbiased(const Mic& mic, double unbiased_tol) {
  if (!is_unbiased(mic, unbiased_tol)) {
    throw MicError(ErrorCode::BiasedMic, "MIC weights are not all 1/d");
  }
}

RealMatrix trace_products(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b) {
  RealMatrix m(static_cast<Eigen::Index>(a.size()), static_cast<Eigen::Index>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (a[i] * b[j]).trace().real();
    }
  }
  return m;
}

double general_condition_number(const RealMatrix& m) {
  Eigen::JacobiSVD<RealMatrix> svd(m);
  const RealVector s = svd.singularValues();
  if (s.size() == 0) return std::numeric_limits<double>::infinity();
  const double smin = s(s.size() - 1);
  if (smin <= 0.0) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

double norm_of_spectrum(const RealVector& values, NormKind norm) {
  switch (norm) {
    case NormKind::Frobenius: return values.norm();
    case NormKind::Spectral: return values.cwiseAbs().maxCoeff();
    case NormKind::Trace: return values.cwiseAbs().sum();
  }
  return 0.0;
}

std::string dim_key(int d, const char* name) { return "d" + std::to_string(d) + "." + name; }

Report probe_min_gram(const ProbeParams& params) {
  Report report("conjecture-probe");
  report.set("probe", to_string(ProbeKind::OrthocrossMinGram));
  double previous = std::numeric_limits<double>::infinity();
  bool positive = true;
  bool decreasing = true;
  for (int d = params.d_min; d <= params.d_max; ++d) {
    const GramMatrix g = orthocross_mic(d).gram();
    double min_off = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < g.cols(); ++j) min_off = std::min(min_off, g(i, j));
    }
    report.set(dim_key(d, "min_offdiag"), min_off);
    positive = positive && min_off > 0.0;
    decreasing = decreasing && min_off < previous;
    previous = min_off;
  }
  report.set("all_positive", positive);
  report.set("decreasing", decreasing);
  return report;
}

Report probe_half_integer(const ProbeParams& params) {
  Report report("conjecture-probe");
  report.set("probe", to_string(ProbeKind::OrthocrossInvGramHalfInt));
  double worst = 0.0;
  for (int d = params.d_min; d <= params.d_max; ++d) {
    const RealMatrix twice = 2.0 * symmetric_inverse(orthocross_mic(d).gram());
    double residue = 0.0;
    for (Eigen::Index i = 0; i < twice.size(); ++i) {
      const double x = twice.data()[i];
      residue = std::max(residue, std::abs(x - std::round(x)));
    }
    report.set(dim_key(d, "residue"), residue);
    worst = std::max(worst, residue);
  }
  report.set("max_residue", worst);
  return report;
}

std::vector<ComplexVector> gaussian_integer_pool() {
  const Complex values[] = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  std::vector<ComplexVector> pool;
  for (int a = 0; a < 5; ++a) {
    for (int b = 0; b < 5; ++b) {
      for (int c = 0; c < 5; ++c) {
        ComplexVector v(3);
        v << values[a], values[b], values[c];
        if (v.norm() == 0.0) continue;
        pool.push_back(v / v.norm());
      }
    }
  }
  return pool;
}

Report probe_pair_search(const ProbeParams& params) {
  Report report("conjecture-probe");
  report.set("probe", to_string(ProbeKind::Rank1OrthoPairSearch));
  const int seed_count = orthogonal_pairs(example_seven_orthogonal().gram()).count;
  report.set("seed_count", seed_count);

  const std::vector<ComplexVector> pool = gaussian_integer_pool();
  std::mt19937_64 rng(params.seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  int best = seed_count;
  std::int64_t best_restart = -1;
  std::int64_t valid = 0;
  for (int r = 0; r < params.restarts; ++r) {
    std::vector<ComplexMatrix> basis;
    for (int i = 0; i < 9; ++i) basis.push_back(projector(pool[pick(rng)]));
    try {
      const Mic mic = mic_from_psd_basis(basis);
      ++valid;
      const int count = orthogonal_pairs(mic.gram()).count;
      if (count > best) {
        best = count;
        best_restart = r;
      }
    } catch (const MicError&) {
      continue;
    }
  }
  report.set("restarts", params.restarts);
  report.set("valid_draws", valid);
  report.set("best_count", best);
  report.set("best_restart", best_restart);
  return report;
}

}  // namespace

UnbiasedEquivalence unbiased_equivalence_report(const Mic& mic, const ToleranceConfig& tol) {
  UnbiasedEquivalence out;
  const double d = mic.dim();
  const RealVector w = mic.weights();
  out.weight_deviation = (w.array() - 1.0 / d).abs().maxCoeff();
  out.uniform_weights = out.weight_deviation <= tol.eig_tol;

  const RealMatrix scaled = d * mic.gram();
  const double rows = (scaled.rowwise().sum().array() - 1.0).abs().maxCoeff();
  const double cols = (scaled.colwise().sum().array() - 1.0).abs().maxCoeff();
  out.stochastic_deviation = std::max(rows, cols);
  out.doubly_stochastic = out.stochastic_deviation <= d * tol.zero_tol;

  out.lambda_max = eigvalsh(mic.gram(), tol).maxCoeff();
  out.lambda_max_pinned = std::abs(out.lambda_max - 1.0 / d) <= tol.eig_tol;
  return out;
}

DualIndefiniteness dual_indefiniteness(const Mic& mic, const ToleranceConfig& tol) {
  const DualBasis dual = dual_basis(mic);
  DualIndefiniteness out;
  out.all_indefinite = true;
  for (const auto& element : dual.elements) {
    const RealVector values = eigvalsh(hermitian_part(element), tol);
    const double lo = values.minCoeff();
    const double hi = values.maxCoeff();
    out.eigenvalue_ranges.emplace_back(lo, hi);
    if (!(lo < -tol.zero_tol && hi > tol.zero_tol)) out.all_indefinite = false;
  }
  return out;
}

OrthogonalityReport orthogonal_pairs(const GramMatrix& g, double tol) {
  OrthogonalityReport out;
  out.min_offdiag = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < g.cols(); ++j) {
      out.min_offdiag = std::min(out.min_offdiag, g(i, j));
      if (g(i, j) <= tol) out.pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  out.count = static_cast<int>(out.pairs.size());
  if (g.rows() < 2) out.min_offdiag = 0.0;
  return out;
}

const char* to_string(NormKind n) {
  switch (n) {
    case NormKind::Frobenius: return "frobenius";
    case NormKind::Spectral: return "spectral";
    case NormKind::Trace: return "trace";
  }
  return "unknown";
}

double frobenius_orthogonality_gap(const Mic& mic, double unbiased_tol) {
  require_unbiased(mic, unbiased_tol);
  const auto n = static_cast<Eigen::Index>(mic.size());
  const RealMatrix diff = RealMatrix::Identity(n, n) / mic.dim() - mic.gram();
  return diff.squaredNorm();
}

double orthogonality_bound(int d) { return (d - 1.0) / (d + 1.0); }

double inv_gram_distance(const Mic& mic, NormKind norm, double unbiased_tol) {
  require_unbiased(mic, unbiased_tol);
  const GramMatrix& g = mic.gram();
  const double cond = condition_number(g);
  if (!(cond <= kGramConditionLimit)) {
    throw MicError(ErrorCode::IllConditionedGram, "Gram condition number exceeds 1e12");
  }
  const auto n = static_cast<Eigen::Index>(mic.size());
  RealMatrix a = RealMatrix::Identity(n, n) - symmetric_inverse(g) / mic.dim();
  a = 0.5 * (a + a.transpose()).eval();
  return norm_of_spectrum(eigvalsh(a), norm);
}

double sic_inv_gram_distance(int d, NormKind norm) {
  if (d < 2) throw MicError(ErrorCode::InvalidArgument, "dimension must be at least 2");
  RealVector values = RealVector::Constant(d * d, -static_cast<double>(d));
  values(0) = 0.0;
  return norm_of_spectrum(values, norm);
}

ClassicalityScores classicality_scores(const Mic& mic) {
  ClassicalityScores out;
  out.frobenius_gap = frobenius_orthogonality_gap(mic);
  out.inv_gram_distance = inv_gram_distance(mic, NormKind::Frobenius);
  out.bound = orthogonality_bound(mic.dim());
  return out;
}

double PhiMatrix::max_column_sum_deviation() const {
  return (phi.colwise().sum().array() - 1.0).abs().maxCoeff();
}

PhiMatrix phi_matrix(const Mic& reference, const std::vector<ComplexMatrix>& post_states,
                     const ToleranceConfig& tol) {
  if (post_states.size() != reference.size()) {
    throw MicError(ErrorCode::WrongCount, "need one post-measurement state per effect");
  }
  for (const auto& sigma : post_states) require_state(sigma, tol);
  const RealMatrix m = trace_products(reference.matrices(), post_states);
  PhiMatrix out;
  out.condition_number = general_condition_number(m);
  if (!(out.condition_number < kPhiConditionLimit)) {
    throw MicError(ErrorCode::SingularConditionalMatrix,
                   "conditional matrix condition number exceeds 1e12");
  }
  out.phi = m.fullPivLu().inverse();
  return out;
}

ProbabilityVector cascaded_probability(const ComplexMatrix& rho, const Mic& reference,
                                       const std::vector<ComplexMatrix>& post_states,
                                       const Povm& second, const ToleranceConfig& tol) {
  if (second.dim() != reference.dim()) {
    throw MicError(ErrorCode::ShapeMismatch, "second measurement has a different dimension");
  }
  const PhiMatrix phi = phi_matrix(reference, post_states, tol);
  const ProbabilityVector p = born_probabilities(rho, reference, tol);
  // conditional(j, i) = tr(sigma_i D_j)
  const RealMatrix conditional = trace_products(second.matrices(), post_states);
  return conditional * (phi.phi * p);
}

RealVector wigner_quasiprobs(const ComplexMatrix& rho, const Mic& appleby, const ToleranceConfig& tol) {
  const ProbabilityVector p = born_probabilities(rho, appleby, tol);
  const double d = appleby.dim();
  return ((d + 1.0) * p.array() - 1.0 / d).matrix();
}

bool group_covariance_check(const GramMatrix& g, double tol) {
  if (g.rows() == 0) return true;
  auto sorted_row = [&](Eigen::Index r) {
    std::vector<double> row;
    row.reserve(static_cast<std::size_t>(g.cols()));
    for (Eigen::Index c = 0; c < g.cols(); ++c) row.push_back(g(r, c));
    std::sort(row.begin(), row.end());
    return row;
  };
  const std::vector<double> first = sorted_row(0);
  for (Eigen::Index r = 1; r < g.rows(); ++r) {
    const std::vector<double> row = sorted_row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (std::abs(row[c] - first[c]) > tol) return false;
    }
  }
  return true;
}

double collision_probability(const ProbabilityVector& p) { return p.squaredNorm(); }

const char* to_string(ProbeKind k) {
  switch (k) {
    case ProbeKind::OrthocrossMinGram: return "orthocross-min-gram";
    case ProbeKind::OrthocrossInvGramHalfInt: return "orthocross-inv-gram-half-integer";
    case ProbeKind::Rank1OrthoPairSearch: return "rank1-orthogonal-pair-search";
  }
  return "unknown";
}

Report conjecture_probe(ProbeKind kind, const ProbeParams& params) {
  if (params.d_min < 2 || params.d_max < params.d_min || params.d_max > kMaxDimension) {
    throw MicError(ErrorCode::InvalidArgument, "probe dimension range is invalid");
  }
  if (params.restarts < 0) throw MicError(ErrorCode::InvalidArgument, "restarts must be >= 0");
  switch (kind) {
    case ProbeKind::OrthocrossMinGram: return probe_min_gram(params);
    case ProbeKind::OrthocrossInvGramHalfInt: return probe_half_integer(params);
    case ProbeKind::Rank1OrthoPairSearch: return probe_pair_search(params);
  }
  throw MicError(ErrorCode::InvalidArgument, "unknown probe");
}

}  // namespace miclab
