#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>

#include "miclab/analysis.hpp"
#include "miclab/constructions.hpp"
#include "miclab/ensembles.hpp"
#include "miclab/error.hpp"
#include "miclab/suites.hpp"

namespace miclab {

namespace {

std::string fmt(const char* pattern, ...) {
  char buf[512];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

// Reference Gram matrix of the seven-pair example, numerators over 432.
constexpr int kExampleGram432[9][9] = {
    {48, 0, 24, 0, 24, 0, 16, 30, 2},
    {0, 48, 0, 24, 0, 24, 16, 6, 26},
    {24, 0, 48, 12, 24, 12, 16, 3, 5},
    {0, 24, 12, 48, 12, 24, 0, 15, 9},
    {24, 0, 24, 12, 48, 12, 0, 15, 9},
    {0, 24, 12, 24, 12, 48, 16, 3, 5},
    {16, 16, 16, 0, 0, 16, 48, 8, 24},
    {30, 6, 3, 15, 15, 3, 8, 48, 16},
    {2, 26, 5, 9, 9, 5, 24, 16, 48},
};

constexpr std::pair<int, int> kExamplePairs[] = {{1, 2}, {1, 4}, {1, 6}, {2, 3},
                                                 {2, 5}, {4, 7}, {5, 7}};

std::vector<ComplexMatrix> unit_parts(const Mic& mic) {
  std::vector<ComplexMatrix> out;
  for (const auto& e : mic.effects()) out.push_back(e.unit_part);
  return out;
}

double max_abs(const RealMatrix& m) { return m.cwiseAbs().maxCoeff(); }

ComplexMatrix random_state(int d, Rng& rng, bool pure) {
  return pure ? projector(haar_pure_state(d, rng)) : random_mixed_state(d, rng);
}

RealMatrix phi_sic(int d) {
  const int n = d * d;
  return (d + 1.0) * RealMatrix::Identity(n, n) - RealMatrix::Constant(n, n, 1.0 / d);
}

CheckResult c1_qubit_sic(std::uint64_t) {
  const Mic sic = sic_qubit();
  RealMatrix expected = RealMatrix::Constant(4, 4, 1.0 / 12.0);
  expected.diagonal().setConstant(0.25);
  const double gram_dev = max_abs(sic.gram() - expected);
  RealVector spectrum(4);
  spectrum << 1.0 / 6, 1.0 / 6, 1.0 / 6, 0.5;
  const double spec_dev = (eigvalsh(sic.gram()) - spectrum).cwiseAbs().maxCoeff();
  CheckResult r;
  r.passed = gram_dev <= 1e-12 && spec_dev <= 1e-12;
  r.detail = fmt("Gram deviation %.2e, spectrum deviation %.2e", gram_dev, spec_dev);
  return r;
}

CheckResult c2_seven_pair(std::uint64_t) {
  const Mic mic = example_seven_orthogonal();
  RealMatrix expected(9, 9);
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) expected(i, j) = kExampleGram432[i][j] / 432.0;
  }
  const double dev = max_abs(mic.gram() - expected);
  const OrthogonalityReport pairs = orthogonal_pairs(mic.gram(), 1e-10);
  bool pairs_match = pairs.count == 7;
  for (const auto& [i, j] : kExamplePairs) {
    pairs_match = pairs_match && std::find(pairs.pairs.begin(), pairs.pairs.end(),
                                           std::make_pair(i - 1, j - 1)) != pairs.pairs.end();
  }
  const Rank1Check rank1 = rank1_mic_check(seven_orthogonal_vectors(), std::vector<double>(9, 1.0 / 3));
  const bool unbiased = is_unbiased(mic);
  const bool covariant = group_covariance_check(mic.gram());
  CheckResult r;
  r.passed = dev <= 1e-12 && pairs_match && unbiased && rank1.is_rank1_povm && rank1.is_mic && !covariant;
  r.detail = fmt("Gram deviation %.2e, %d orthogonal pairs%s, unbiased=%d, rank-1 MIC=%d, covariance check=%d",
                 dev, pairs.count, pairs_match ? " (reference)" : " (mismatch)", unbiased,
                 rank1.is_rank1_povm && rank1.is_mic, covariant);
  return r;
}

CheckResult c3_theorem_one(std::uint64_t seed) {
  int disagreements = 0;
  int wrong_verdicts = 0;
  double min_generic_gap = INFINITY;
  std::uint64_t stream = 0;
  for (int d = 2; d <= 5; ++d) {
    for (MicKind kind : kAllMicKinds) {
      for (int s = 0; s < 500; ++s) {
        Rng rng = make_stream(seed ^ 0x3000, stream++);
        const Mic mic = random_mic(kind, d, rng);
        const UnbiasedEquivalence eq = unbiased_equivalence_report(mic);
        if (!eq.agree()) ++disagreements;
        if (is_group_covariant(kind)) {
          if (!eq.uniform_weights) ++wrong_verdicts;
        } else {
          min_generic_gap = std::min(min_generic_gap, eq.lambda_max - 1.0 / d);
          if (eq.uniform_weights || eq.lambda_max <= 1.0 / d + 1e-9) ++wrong_verdicts;
        }
      }
    }
  }
  CheckResult r;
  r.passed = disagreements == 0 && wrong_verdicts == 0;
  r.detail = fmt("8000 MICs: %d disagreements, %d wrong verdicts, min generic lambda_max - 1/d = %.3e",
                 disagreements, wrong_verdicts, min_generic_gap);
  return r;
}

CheckResult c4_orthocross(std::uint64_t seed) {
  double spec_dev = 0.0;
  double trace_dev = 0.0;
  for (int d = 2; d <= 8; ++d) {
    const RealVector closed = orthocross_omega_spectrum(d);
    const RealVector numeric = eigvalsh(orthocross_omega(d));
    spec_dev = std::max(spec_dev, (closed - numeric).cwiseAbs().maxCoeff());
    trace_dev = std::max(trace_dev, std::abs(closed.sum() - d * d));
  }
  int violations = 0;
  bool bounds_below_one = true;
  double min_slack = INFINITY;
  for (int d = 2; d <= 5; ++d) {
    const Mic mic = orthocross_mic(d);
    const double bound = orthocross_probability_bound(d);
    bounds_below_one = bounds_below_one && bound < 1.0;
    Rng rng = make_stream(seed ^ 0x4000, static_cast<std::uint64_t>(d));
    for (int s = 0; s < 10000; ++s) {
      const ProbabilityVector p = born_probabilities(projector(haar_pure_state(d, rng)), mic);
      const double slack = bound - p.maxCoeff();
      min_slack = std::min(min_slack, slack);
      if (slack < -1e-12) ++violations;
    }
  }
  CheckResult r;
  r.passed = spec_dev <= 1e-9 && trace_dev <= 1e-9 && violations == 0 && bounds_below_one;
  r.detail = fmt("spectrum deviation %.2e, trace deviation %.2e, %d bound violations in 40000 states "
                 "(min slack %.3e), bounds < 1: %d",
                 spec_dev, trace_dev, violations, min_slack, bounds_below_one);
  return r;
}

CheckResult c5_frobenius_gap(std::uint64_t seed) {
  double sic_dev = 0.0;
  for (int d = 2; d <= 3; ++d) {
    sic_dev = std::max(sic_dev, std::abs(frobenius_orthogonality_gap(builtin_sic(d)) - orthogonality_bound(d)));
  }
  int failures = 0;
  double min_excess = INFINITY;
  std::uint64_t stream = 0;
  for (int d = 2; d <= 3; ++d) {
    for (int s = 0; s < 1000; ++s) {
      Rng rng = make_stream(seed ^ 0x5000, stream++);
      const MicKind kind = s % 2 == 0 ? MicKind::WhRank1 : MicKind::WhGeneric;
      const double excess = frobenius_orthogonality_gap(random_mic(kind, d, rng)) - orthogonality_bound(d);
      min_excess = std::min(min_excess, excess);
      if (!(excess > 1e-6)) ++failures;
    }
  }
  CheckResult r;
  r.passed = sic_dev <= 1e-9 && failures == 0;
  r.detail = fmt("SIC deviation from (d-1)/(d+1) %.2e; 2000 random WH MICs: %d within 1e-6 of the bound "
                 "(min excess %.3e)",
                 sic_dev, failures, min_excess);
  return r;
}

CheckResult c6_inverse_gram(std::uint64_t seed) {
  const double sic_value = inv_gram_distance(sic_qubit(), NormKind::Frobenius);
  const double dev = std::abs(sic_value - 2.0 * std::sqrt(3.0));
  int failures = 0;
  double min_excess = INFINITY;
  for (int s = 0; s < 1000; ++s) {
    Rng rng = make_stream(seed ^ 0x6000, static_cast<std::uint64_t>(s));
    const MicKind kind = s % 2 == 0 ? MicKind::WhRank1 : MicKind::WhGeneric;
    const double excess = inv_gram_distance(random_mic(kind, 2, rng), NormKind::Frobenius) - sic_value;
    min_excess = std::min(min_excess, excess);
    if (!(excess > 0.0)) ++failures;
  }
  CheckResult r;
  r.passed = dev <= 1e-9 && failures == 0;
  r.detail = fmt("SIC value %.12f (|delta from 2 sqrt 3| %.2e); 1000 random unbiased d=2 MICs: %d not larger "
                 "(min excess %.3e)",
                 sic_value, dev, failures, min_excess);
  return r;
}

CheckResult c7_phi_identity(std::uint64_t seed) {
  double max_dev = 0.0;
  double max_column = 0.0;
  int without_negative = 0;
  std::uint64_t stream = 0;
  for (int d = 2; d <= 3; ++d) {
    for (int s = 0; s < 100; ++s) {
      Rng rng = make_stream(seed ^ 0x7000, stream++);
      const ComplexMatrix rho = random_state(d, rng, s % 2 == 0);
      const Mic mic = random_mic(kAllMicKinds[s % 4], d, rng);
      std::vector<ComplexMatrix> post;
      for (int j = 0; j < d * d; ++j) post.push_back(random_state(d, rng, s % 3 != 0));
      const Povm second = random_povm(d, 3, rng);
      const ProbabilityVector q = cascaded_probability(rho, mic, post, second);
      const ProbabilityVector direct = born_probabilities(rho, second);
      max_dev = std::max(max_dev, (q - direct).cwiseAbs().maxCoeff());
      const PhiMatrix phi = phi_matrix(mic, post);
      max_column = std::max(max_column, phi.max_column_sum_deviation());
      if (!(phi.min_entry() < 0.0)) ++without_negative;
    }
  }
  double sic_dev = 0.0;
  for (int d = 2; d <= 3; ++d) {
    const Mic sic = builtin_sic(d);
    sic_dev = std::max(sic_dev, max_abs(phi_matrix(sic, unit_parts(sic)).phi - phi_sic(d)));
  }
  CheckResult r;
  r.passed = max_dev <= 1e-8 && sic_dev <= 1e-9;
  r.detail = fmt("200 tuples: max |Q - Born| %.2e, max column-sum deviation %.2e, %d without a negative entry; "
                 "Phi_SIC deviation %.2e",
                 max_dev, max_column, without_negative, sic_dev);
  return r;
}

int count_zeros(const RealMatrix& g, double tol) {
  return static_cast<int>((g.array().abs() <= tol).count());
}

CheckResult c8_tensorhedron(std::uint64_t) {
  const Mic sic = sic_qubit();
  const Mic square = tensorhedron_mic(sic, 2);
  const double gram_dev = max_abs(square.gram() - kron(sic.gram(), sic.gram()));
  RealVector expected(16);
  expected.head(9).setConstant(1.0 / 36);
  expected.segment(9, 6).setConstant(1.0 / 12);
  expected(15) = 0.25;
  const double spec_dev = (eigvalsh(square.gram()) - expected).cwiseAbs().maxCoeff();

  const Mic example = example_seven_orthogonal();
  const Mic example_square = tensorhedron_mic(example, 2);
  const int n = count_zeros(example.gram(), 1e-10);
  const int zeros = count_zeros(example_square.gram(), 1e-10);
  const int d = example.dim();
  const int formula = 2 * d * d * d * d * n - n * n;
  constexpr int kExpectedZeros = 1085;
  CheckResult r;
  r.passed = gram_dev <= 1e-12 && spec_dev <= 1e-12 && zeros == formula && zeros == kExpectedZeros;
  r.detail = fmt("Gram deviation %.2e, spectrum deviation %.2e; seven-pair example Gram has N=%d zero entries, "
                 "tensor square has %d zeros, 2d^4N - N^2 = %d, expected %d",
                 gram_dev, spec_dev, n, zeros, formula, kExpectedZeros);
  return r;
}

CheckResult c9_appleby(std::uint64_t seed) {
  bool ranks_ok = true;
  double sum_dev = 0.0;
  bool unbiased = true;
  double wigner_dev = 0.0;
  double min_w = INFINITY;
  ToleranceConfig tol;
  for (int d : {3, 5}) {
    const Mic mic = appleby_mic(d);
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    for (const auto& e : mic.effects()) {
      ranks_ok = ranks_ok && numerical_rank(e.matrix, tol) == (d + 1) / 2;
      total += e.matrix;
    }
    sum_dev = std::max(sum_dev, (total - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff());
    unbiased = unbiased && is_unbiased(mic);
    Rng rng = make_stream(seed ^ 0x9000, static_cast<std::uint64_t>(d));
    for (int s = 0; s < 100; ++s) {
      const RealVector w = wigner_quasiprobs(random_state(d, rng, s % 2 == 0), mic);
      wigner_dev = std::max(wigner_dev, std::abs(w.sum() - 1.0));
      min_w = std::min(min_w, w.minCoeff());
    }
  }
  CheckResult r;
  r.passed = ranks_ok && sum_dev <= 1e-10 && unbiased && wigner_dev <= 1e-10;
  r.detail = fmt("ranks (d+1)/2: %d, sum deviation %.2e, unbiased: %d, max |sum W - 1| %.2e, min W %.4f",
                 ranks_ok, sum_dev, unbiased, wigner_dev, min_w);
  return r;
}

CheckResult c10_purity(std::uint64_t seed) {
  double pure_dev = 0.0;
  double max_mixed = 0.0;
  for (int d = 2; d <= 4; ++d) {
    Rng rng = make_stream(seed ^ 0xa000, static_cast<std::uint64_t>(d));
    const Mic mic = random_mic(MicKind::GenericPsd, d, rng);
    for (int s = 0; s < 100; ++s) {
      const ComplexVector a = haar_pure_state(d, rng);
      const ComplexVector b = haar_pure_state(d, rng);
      pure_dev = std::max(pure_dev, std::abs(purity_form(born_probabilities(projector(a), mic), mic.gram()) - 1.0));
      const ComplexMatrix mixed = 0.6 * projector(a) + 0.4 * projector(b);
      max_mixed = std::max(max_mixed, purity_form(born_probabilities(mixed, mic), mic.gram()));
    }
  }
  CheckResult r;
  r.passed = pure_dev <= 1e-9 && max_mixed < 1.0 - 1e-6;
  r.detail = fmt("pure states: max |purity - 1| %.2e; rank-2 mixtures: max purity %.6f", pure_dev, max_mixed);
  return r;
}

CheckResult c11_corollaries(std::uint64_t seed) {
  int not_indefinite = 0;
  int projector_like = 0;
  int d2_pairs = 0;
  double max_effect_eig = 0.0;
  std::uint64_t stream = 0;
  for (int d = 2; d <= 4; ++d) {
    for (MicKind kind : kAllMicKinds) {
      for (int s = 0; s < 500; ++s) {
        Rng rng = make_stream(seed ^ 0xb000, stream++);
        const Mic mic = random_mic(kind, d, rng);
        if (!dual_indefiniteness(mic).all_indefinite) ++not_indefinite;
        for (const auto& e : mic.effects()) {
          const double top = eigvalsh(e.matrix).maxCoeff();
          max_effect_eig = std::max(max_effect_eig, top);
          if (!(top < 1.0 - 1e-9)) ++projector_like;
        }
        if (d == 2) d2_pairs += orthogonal_pairs(mic.gram()).count;
      }
    }
  }
  CheckResult r;
  r.passed = not_indefinite == 0 && projector_like == 0 && d2_pairs == 0;
  r.detail = fmt("6000 MICs: %d with a definite dual element, %d effects with lambda_max >= 1 - 1e-9 "
                 "(max %.6f), %d orthogonal pairs at d=2",
                 not_indefinite, projector_like, max_effect_eig, d2_pairs);
  return r;
}

CheckResult c12_spectra(std::uint64_t seed) {
  const std::int64_t n = 10000;
  const SpectraHistogram rank1 = spectra_study(MicKind::WhRank1, 3, n, 1.0 / 198, seed);
  const double plateau = plateau_metric(rank1);
  const SpectraHistogram generic = spectra_study(MicKind::WhGeneric, 3, n, 1.0 / 198, seed);
  const std::int64_t top_rank1 = rank1.counts[rank1.top_primary_bin()];
  const std::int64_t top_generic = generic.counts[generic.top_primary_bin()];
  // Spread of the bins wholly below 1/12, and the mean drop per bin after it.
  double lo = INFINITY;
  double hi = 0.0;
  for (std::size_t i = 0; i <= 15; ++i) {
    lo = std::min(lo, static_cast<double>(rank1.counts[i]));
    hi = std::max(hi, static_cast<double>(rank1.counts[i]));
  }
  const double slope = (static_cast<double>(rank1.counts[17]) - static_cast<double>(rank1.counts[27])) / 10.0;
  CheckResult r;
  r.passed = plateau >= 3.0 && top_rank1 >= n && top_generic >= n;
  r.detail = fmt("wh-rank1 d=3 plateau metric %.3f (need >= 3); bins below 1/12 span %.0f..%.0f, "
                 "decline %.0f per bin above; top-bin counts wh-rank1 %lld, wh %lld (n=%lld)",
                 plateau, lo, hi, slope, static_cast<long long>(top_rank1), static_cast<long long>(top_generic),
                 static_cast<long long>(n));
  return r;
}

CheckResult c13_determinism(std::uint64_t seed) {
  bool identical = true;
  for (MicKind kind : {MicKind::WhRank1, MicKind::GenericPsd}) {
    const auto serial = write_histogram_table(spectra_study(kind, 3, 2000, 1.0 / 198, seed, 1));
    const auto parallel = write_histogram_table(spectra_study(kind, 3, 2000, 1.0 / 198, seed, 4));
    identical = identical && serial == parallel;
  }
  CheckResult r;
  r.passed = identical;
  r.detail = identical ? "wh-rank1 and generic tables byte-identical for 1 and 4 workers"
                       : "tables differ between 1 and 4 workers";
  return r;
}

CheckResult c14_conjectures(std::uint64_t seed) {
  ProbeParams params;
  params.seed = seed;
  const Report min_gram = conjecture_probe(ProbeKind::OrthocrossMinGram, params);
  const Report half = conjecture_probe(ProbeKind::OrthocrossInvGramHalfInt, params);
  params.restarts = 10000;
  const Report search = conjecture_probe(ProbeKind::Rank1OrthoPairSearch, params);
  auto flag = [](const Report& rep, const char* key) {
    const ReportValue* v = rep.find(key);
    return v != nullptr && std::get<bool>(*v);
  };
  CheckResult r;
  r.passed = true;
  r.detail = fmt("reported: orthocross min off-diagonal positive=%d decreasing=%d (d=6: %.3e); "
                 "max 2G^-1 rounding residue %.2e; pair search best %g of %g valid draws",
                 flag(min_gram, "all_positive"), flag(min_gram, "decreasing"), min_gram.number("d6.min_offdiag"),
                 half.number("max_residue"), search.number("best_count"), search.number("valid_draws"));
  return r;
}

struct Criterion {
  const char* name;
  double time_limit;
  CheckResult (*run)(std::uint64_t);
};

constexpr Criterion kCriteria[] = {
    {"qubit-sic-gram", 1, c1_qubit_sic},
    {"seven-pair-golden", 1, c2_seven_pair},
    {"unbiased-equivalence", 300, c3_theorem_one},
    {"orthocross", 120, c4_orthocross},
    {"frobenius-gap", 120, c5_frobenius_gap},
    {"inverse-gram-distance", 60, c6_inverse_gram},
    {"phi-identity", 60, c7_phi_identity},
    {"tensorhedron", 10, c8_tensorhedron},
    {"appleby", 30, c9_appleby},
    {"purity-lemma", 60, c10_purity},
    {"structural-corollaries", 300, c11_corollaries},
    {"spectra-plateau", 600, c12_spectra},
    {"determinism", 60, c13_determinism},
    {"conjecture-probes", 0, c14_conjectures},
};

}  // namespace

std::string format_check(const CheckResult& r) {
  std::string timing = r.time_limit > 0 ? fmt("%.2fs / %.0fs", r.seconds, r.time_limit) : fmt("%.2fs", r.seconds);
  return fmt("%s %2d %s (%s): ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), timing.c_str()) + r.detail;
}

int acceptance_criterion_count() { return static_cast<int>(std::size(kCriteria)); }

CheckResult run_acceptance_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > acceptance_criterion_count()) {
    throw MicError(ErrorCode::InvalidArgument, "no acceptance criterion " + std::to_string(id));
  }
  const Criterion& c = kCriteria[id - 1];
  const auto start = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = c.run(seed);
  } catch (const std::exception& e) {
    r.passed = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.id = id;
  r.name = c.name;
  r.time_limit = c.time_limit;
  if (r.time_limit > 0 && r.seconds > r.time_limit) {
    r.passed = false;
    r.detail += "; runtime limit exceeded";
  }
  return r;
}

std::vector<CheckResult> run_acceptance(std::uint64_t seed,
                                        const std::function<void(const CheckResult&)>& on_result) {
  std::vector<CheckResult> out;
  for (int id = 1; id <= acceptance_criterion_count(); ++id) {
    out.push_back(run_acceptance_criterion(id, seed));
    if (on_result) on_result(out.back());
  }
  return out;
}

}  // namespace miclab
