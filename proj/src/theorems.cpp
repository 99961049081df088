#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "miclab/analysis.hpp"
#include "miclab/constructions.hpp"
#include "miclab/ensembles.hpp"
#include "miclab/error.hpp"
#include "miclab/suites.hpp"

namespace miclab {

namespace {

struct Sample {
  MicKind kind;
  int d;
  Mic mic;
};

std::vector<Mic> named_constructions() {
  std::vector<Mic> out;
  for (int d = 2; d <= 5; ++d) out.push_back(builtin_sic(d));
  for (int d = 2; d <= 6; ++d) out.push_back(orthocross_mic(d));
  for (int d : {3, 5, 7}) out.push_back(appleby_mic(d));
  out.push_back(tensorhedron_mic(sic_qubit(), 2));
  for (double beta : {-1.0, -0.5, 0.5}) out.push_back(equiangular_mic(sic_qubit(), beta));
  out.push_back(equiangular_mic(builtin_sic(3), 0.25));
  out.push_back(example_seven_orthogonal());
  return out;
}

std::vector<Mic> covariant_constructions() {
  std::vector<Mic> out;
  for (int d = 2; d <= 5; ++d) out.push_back(builtin_sic(d));
  for (int d : {3, 5, 7}) out.push_back(appleby_mic(d));
  return out;
}

// Counts failing items; the first failure message becomes the detail.
class Tally {
 public:
  void check(bool ok, const std::string& what) {
    ++total_;
    if (!ok) {
      if (failures_ == 0) first_ = what;
      ++failures_;
    }
  }
  CheckResult result() const {
    CheckResult r;
    r.passed = failures_ == 0;
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d/%d items hold", total_ - failures_, total_);
    r.detail = buf;
    if (failures_ > 0) r.detail += "; first failure: " + first_;
    return r;
  }

 private:
  int total_ = 0;
  int failures_ = 0;
  std::string first_;
};

std::string label(const Sample& s) { return std::string(to_string(s.kind)) + " d=" + std::to_string(s.d); }

}  // namespace

std::vector<CheckResult> run_theorem_suite(std::uint64_t seed, int samples,
                                           const std::function<void(const CheckResult&)>& on_result) {
  if (samples < 1) throw MicError(ErrorCode::InvalidArgument, "samples must be >= 1");
  std::vector<Sample> random;
  std::uint64_t stream = 0;
  for (int d = 2; d <= 4; ++d) {
    for (MicKind kind : kAllMicKinds) {
      for (int s = 0; s < samples; ++s) {
        Rng rng = make_stream(seed, stream++);
        random.push_back({kind, d, random_mic(kind, d, rng)});
      }
    }
  }
  Rng aux = make_stream(seed, ~std::uint64_t{0});

  using Body = std::function<void(Tally&)>;
  const std::vector<std::pair<const char*, Body>> checks = {
      {"constructions-are-mics",
       [&](Tally& t) {
         for (const Mic& m : named_constructions()) {
           t.check(m.size() == static_cast<std::size_t>(m.dim() * m.dim()), "effect count");
           t.check(numerical_rank(m.gram()) == m.dim() * m.dim(), "Gram rank");
         }
       }},
      {"gram-sum-is-d",
       [&](Tally& t) {
         for (const Mic& m : named_constructions()) t.check(std::abs(m.gram().sum() - m.dim()) <= 1e-9, "constructions");
         for (const auto& s : random) t.check(std::abs(s.mic.gram().sum() - s.d) <= 1e-9, label(s));
       }},
      {"covariant-rows-permute",
       [&](Tally& t) {
         for (const Mic& m : covariant_constructions()) {
           t.check(group_covariance_check(m.gram()), "construction d=" + std::to_string(m.dim()));
           t.check(is_unbiased(m), "unbiased d=" + std::to_string(m.dim()));
         }
         for (const auto& s : random) {
           if (is_group_covariant(s.kind)) t.check(group_covariance_check(s.mic.gram()), label(s));
         }
       }},
      {"unbiased-equivalence",
       [&](Tally& t) {
         for (const Mic& m : named_constructions()) t.check(unbiased_equivalence_report(m).agree(), "constructions");
         for (const auto& s : random) t.check(unbiased_equivalence_report(s.mic).agree(), label(s));
       }},
      {"lambda-max-at-least-1/d",
       [&](Tally& t) {
         for (const auto& s : random) t.check(eigvalsh(s.mic.gram()).maxCoeff() >= 1.0 / s.d - 1e-9, label(s));
       }},
      {"dual-elements-indefinite",
       [&](Tally& t) {
         for (const Mic& m : named_constructions()) t.check(dual_indefiniteness(m).all_indefinite, "constructions");
         for (const auto& s : random) t.check(dual_indefiniteness(s.mic).all_indefinite, label(s));
       }},
      {"no-unscaled-projector",
       [&](Tally& t) {
         for (const auto& s : random) {
           for (const auto& e : s.mic.effects()) t.check(eigvalsh(e.matrix).maxCoeff() < 1.0 - 1e-9, label(s));
         }
       }},
      {"qubit-mics-have-no-orthogonal-pairs",
       [&](Tally& t) {
         for (const auto& s : random) {
           if (s.d == 2) t.check(orthogonal_pairs(s.mic.gram()).count == 0, label(s));
         }
       }},
      {"state-round-trip",
       [&](Tally& t) {
         for (const auto& s : random) {
           const ComplexMatrix rho = projector(haar_pure_state(s.d, aux));
           const ComplexMatrix back = reconstruct_state(born_probabilities(rho, s.mic), s.mic);
           t.check((back - rho).cwiseAbs().maxCoeff() <= 1e-8, label(s));
         }
       }},
      {"purity-lemma",
       [&](Tally& t) {
         for (const auto& s : random) {
           const ComplexVector a = haar_pure_state(s.d, aux);
           const ComplexVector b = haar_pure_state(s.d, aux);
           t.check(std::abs(purity_form(born_probabilities(projector(a), s.mic), s.mic.gram()) - 1.0) <= 1e-9,
                   label(s) + " pure");
           const ComplexMatrix mixed = 0.5 * projector(a) + 0.5 * projector(b);
           t.check(purity_form(born_probabilities(mixed, s.mic), s.mic.gram()) < 1.0 - 1e-6, label(s) + " mixed");
         }
       }},
      {"frobenius-gap-bound",
       [&](Tally& t) {
         for (int d = 2; d <= 5; ++d) {
           t.check(std::abs(frobenius_orthogonality_gap(builtin_sic(d)) - orthogonality_bound(d)) <= 1e-9,
                   "SIC d=" + std::to_string(d));
         }
         for (const auto& s : random) {
           if (is_group_covariant(s.kind)) {
             t.check(frobenius_orthogonality_gap(s.mic) > orthogonality_bound(s.d) + 1e-9, label(s));
           }
         }
       }},
      {"sic-minimizes-inverse-gram-distance",
       [&](Tally& t) {
         for (const auto& s : random) {
           if (!is_group_covariant(s.kind)) continue;
           for (NormKind norm : {NormKind::Frobenius, NormKind::Spectral, NormKind::Trace}) {
             t.check(inv_gram_distance(s.mic, norm) > sic_inv_gram_distance(s.d, norm), label(s) + " " + to_string(norm));
           }
         }
       }},
      {"phi-quasistochastic-and-cascade",
       [&](Tally& t) {
         for (const auto& s : random) {
           std::vector<ComplexMatrix> post;
           for (int j = 0; j < s.d * s.d; ++j) post.push_back(projector(haar_pure_state(s.d, aux)));
           const PhiMatrix phi = phi_matrix(s.mic, post);
           t.check(phi.max_column_sum_deviation() <= 1e-8, label(s) + " column sums");
           t.check(phi.min_entry() < 0.0, label(s) + " negative entry");
           const ComplexMatrix rho = random_mixed_state(s.d, aux);
           const Povm second = random_povm(s.d, 3, aux);
           const ProbabilityVector q = cascaded_probability(rho, s.mic, post, second);
           t.check((q - born_probabilities(rho, second)).cwiseAbs().maxCoeff() <= 1e-8, label(s) + " cascade");
         }
       }},
      {"wigner-sums-to-one",
       [&](Tally& t) {
         for (int d : {3, 5, 7}) {
           const Mic a = appleby_mic(d);
           for (int s = 0; s < samples; ++s) {
             const RealVector w = wigner_quasiprobs(random_mixed_state(d, aux), a);
             t.check(std::abs(w.sum() - 1.0) <= 1e-10, "d=" + std::to_string(d));
           }
         }
       }},
      {"orthocross-probability-bound",
       [&](Tally& t) {
         for (int d = 2; d <= 5; ++d) {
           const Mic m = orthocross_mic(d);
           const double bound = orthocross_probability_bound(d);
           t.check(bound < 1.0, "bound below one");
           for (int s = 0; s < 20 * samples; ++s) {
             const ProbabilityVector p = born_probabilities(projector(haar_pure_state(d, aux)), m);
             t.check(p.maxCoeff() <= bound + 1e-12, "d=" + std::to_string(d));
           }
         }
       }},
      {"rescaled-gram-hadamard",
       [&](Tally& t) {
         const auto check_vectors = [&](const std::vector<ComplexVector>& v, double e, const GramMatrix& g) {
           const ComplexMatrix small = rescaled_vector_gram(v, std::vector<double>(v.size(), e));
           const ComplexMatrix h = hadamard(small, small.conjugate());
           t.check((h.real() - g).cwiseAbs().maxCoeff() <= 1e-12, "g o g* = G");
           const Rank1Check rc = rank1_mic_check(v, std::vector<double>(v.size(), e));
           t.check(rc.is_rank1_povm && rc.is_mic, "rank-1 MIC");
         };
         check_vectors(seven_orthogonal_vectors(), 1.0 / 3, example_seven_orthogonal().gram());
         for (const auto& s : random) {
           if (s.kind != MicKind::WhRank1) continue;
           std::vector<ComplexVector> v;
           for (const auto& e : s.mic.effects()) v.push_back(eigh(e.unit_part).vectors.col(s.d - 1));
           check_vectors(v, 1.0 / s.d, s.mic.gram());
         }
       }},
  };

  std::vector<CheckResult> out;
  int id = 0;
  for (const auto& [name, body] : checks) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      Tally t;
      body(t);
      r = t.result();
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.id = ++id;
    r.name = name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.push_back(r);
    if (on_result) on_result(out.back());
  }
  return out;
}

std::vector<Report> run_conjecture_suite(std::uint64_t seed) {
  ProbeParams params;
  params.seed = seed;
  std::vector<Report> out;
  for (ProbeKind kind : {ProbeKind::OrthocrossMinGram, ProbeKind::OrthocrossInvGramHalfInt,
                         ProbeKind::Rank1OrthoPairSearch}) {
    out.push_back(conjecture_probe(kind, params));
  }
  Report plateau("conjecture-probe");
  plateau.set("probe", "d3-plateau");
  for (MicKind kind : kAllMicKinds) {
    const SpectraHistogram h = spectra_study(kind, 3, 10000, 1.0 / 198, seed);
    plateau.set(std::string(to_string(kind)) + ".plateau_metric", plateau_metric(h));
  }
  out.push_back(plateau);
  return out;
}

}  // namespace miclab
