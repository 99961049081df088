#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "miclab/analysis.hpp"
#include "miclab/constructions.hpp"
#include "miclab/ensembles.hpp"
#include "miclab/error.hpp"
#include "support.hpp"

using namespace miclab;
using namespace miclab::testing;

namespace {

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const MicError& e) {
    return e.code();
  }
  FAIL("no MicError thrown");
  return ErrorCode::InvalidArgument;
}

std::vector<ComplexMatrix> unit_parts(const Mic& m) {
  std::vector<ComplexMatrix> out;
  for (const auto& e : m.effects()) out.push_back(e.unit_part);
  return out;
}

// Eigenvalues of I - G^{-1}/d computed directly.
RealVector inv_gram_residual_spectrum(const Mic& m) {
  const int n = static_cast<int>(m.size());
  const RealMatrix r = RealMatrix::Identity(n, n) - m.gram().inverse() / static_cast<double>(m.dim());
  return Eigen::SelfAdjointEigenSolver<RealMatrix>((r + r.transpose()) / 2).eigenvalues();
}

Mic random_wh(int d, std::uint64_t seed) {
  Rng rng = make_stream(seed, 0);
  return random_mic(MicKind::WhGeneric, d, rng);
}

}  // namespace

TEST_CASE("unbiased equivalence") {
  const UnbiasedEquivalence sic = unbiased_equivalence_report(sic_qubit());
  CHECK(sic.uniform_weights);
  CHECK(sic.doubly_stochastic);
  CHECK(sic.lambda_max_pinned);
  CHECK(sic.lambda_max == doctest::Approx(0.5));
  CHECK(sic.agree());

  const UnbiasedEquivalence ortho = unbiased_equivalence_report(orthocross_mic(3));
  CHECK_FALSE(ortho.uniform_weights);
  CHECK_FALSE(ortho.doubly_stochastic);
  CHECK_FALSE(ortho.lambda_max_pinned);
  CHECK(ortho.lambda_max > 1.0 / 3);
  CHECK(ortho.weight_deviation > 1e-3);

  const UnbiasedEquivalence wh = unbiased_equivalence_report(random_wh(4, 3));
  CHECK(wh.uniform_weights);
  CHECK(wh.doubly_stochastic);
  CHECK(wh.lambda_max_pinned);

  Rng rng = make_stream(99, 0);
  for (int i = 0; i < 20; ++i) {
    const UnbiasedEquivalence r = unbiased_equivalence_report(random_mic(MicKind::GenericPsd, 3, rng));
    CHECK(r.agree());
    CHECK_FALSE(r.uniform_weights);
  }
}

TEST_CASE("dual indefiniteness") {
  const DualIndefiniteness q = dual_indefiniteness(sic_qubit());
  CHECK(q.all_indefinite);
  REQUIRE(q.eigenvalue_ranges.size() == 4);
  for (const auto& [lo, hi] : q.eigenvalue_ranges) {
    CHECK(lo == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(hi == doctest::Approx(2.0).epsilon(1e-9));
  }
  CHECK(dual_indefiniteness(example_seven_orthogonal()).all_indefinite);
  for (MicKind kind : kAllMicKinds) {
    for (int d = 2; d <= 5; ++d) {
      Rng rng = make_stream(5, static_cast<std::uint64_t>(d));
      CHECK(dual_indefiniteness(random_mic(kind, d, rng)).all_indefinite);
    }
  }
}

TEST_CASE("orthogonal pairs") {
  const OrthogonalityReport ex = orthogonal_pairs(example_seven_orthogonal().gram());
  CHECK(ex.count == 7);
  CHECK(ex.min_offdiag == doctest::Approx(0.0));
  // Reference one-based pairs, shifted to zero-based.
  const std::set<std::pair<int, int>> expected = {{0, 1}, {0, 3}, {0, 5}, {1, 2}, {1, 4}, {3, 6}, {4, 6}};
  CHECK(std::set<std::pair<int, int>>(ex.pairs.begin(), ex.pairs.end()) == expected);

  const OrthogonalityReport sic = orthogonal_pairs(sic_qubit().gram());
  CHECK(sic.count == 0);
  CHECK(sic.pairs.empty());
  CHECK(sic.min_offdiag == doctest::Approx(1.0 / 12));

  for (MicKind kind : kAllMicKinds) {
    Rng rng = make_stream(12, static_cast<std::uint64_t>(kind));
    for (int i = 0; i < 25; ++i) CHECK(orthogonal_pairs(random_mic(kind, 2, rng).gram()).count == 0);
  }
}

TEST_CASE("frobenius orthogonality gap") {
  CHECK(frobenius_orthogonality_gap(sic_qubit()) == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(frobenius_orthogonality_gap(builtin_sic(3)) == doctest::Approx(0.5).epsilon(1e-10));
  for (int d = 2; d <= 5; ++d) {
    CHECK(orthogonality_bound(d) == doctest::Approx((d - 1.0) / (d + 1.0)));
    CHECK(frobenius_orthogonality_gap(builtin_sic(d)) == doctest::Approx(orthogonality_bound(d)).epsilon(1e-9));
  }
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Mic m = random_wh(3, s);
    const double gap = frobenius_orthogonality_gap(m);
    CHECK(gap > 0.5);
    const RealMatrix diff = RealMatrix::Identity(9, 9) / 3.0 - m.gram();
    CHECK(gap == doctest::Approx(diff.squaredNorm()).epsilon(1e-12));
  }
  CHECK(code_of([] { frobenius_orthogonality_gap(orthocross_mic(3)); }) == ErrorCode::BiasedMic);
}

TEST_CASE("inverse gram distance") {
  CHECK(inv_gram_distance(sic_qubit(), NormKind::Frobenius) == doctest::Approx(2 * std::sqrt(3.0)).epsilon(1e-10));
  CHECK(inv_gram_distance(builtin_sic(3), NormKind::Frobenius) == doctest::Approx(3 * std::sqrt(8.0)).epsilon(1e-9));
  for (int d = 2; d <= 5; ++d) {
    const RealVector ev = inv_gram_residual_spectrum(builtin_sic(d));
    const Mic sic = builtin_sic(d);
    CHECK(inv_gram_distance(sic, NormKind::Frobenius) == doctest::Approx(ev.norm()).epsilon(1e-9));
    CHECK(inv_gram_distance(sic, NormKind::Spectral) == doctest::Approx(ev.cwiseAbs().maxCoeff()).epsilon(1e-9));
    CHECK(inv_gram_distance(sic, NormKind::Trace) == doctest::Approx(ev.cwiseAbs().sum()).epsilon(1e-9));
    CHECK(sic_inv_gram_distance(d, NormKind::Frobenius) == doctest::Approx(d * std::sqrt(d * d - 1.0)));
    CHECK(sic_inv_gram_distance(d, NormKind::Spectral) == doctest::Approx(d));
    CHECK(sic_inv_gram_distance(d, NormKind::Trace) == doctest::Approx(d * (d * d - 1.0)));
  }
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Mic m = random_wh(2, 100 + s);
    for (NormKind n : {NormKind::Frobenius, NormKind::Spectral, NormKind::Trace}) {
      CHECK(inv_gram_distance(m, n) > sic_inv_gram_distance(2, n));
    }
  }
  CHECK(code_of([] { inv_gram_distance(orthocross_mic(2), NormKind::Frobenius); }) == ErrorCode::BiasedMic);
  CHECK(std::string(to_string(NormKind::Spectral)) == "spectral");
}

TEST_CASE("classicality scores") {
  const ClassicalityScores s = classicality_scores(builtin_sic(3));
  CHECK(s.frobenius_gap == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(s.bound == doctest::Approx(0.5));
  CHECK(s.inv_gram_distance == doctest::Approx(3 * std::sqrt(8.0)).epsilon(1e-9));
}

TEST_CASE("phi matrix of SICs") {
  for (int d : {2, 3}) {
    const Mic sic = builtin_sic(d);
    const PhiMatrix phi = phi_matrix(sic, unit_parts(sic));
    for (int i = 0; i < d * d; ++i) {
      for (int j = 0; j < d * d; ++j) {
        const double expected = (i == j ? d + 1.0 : 0.0) - 1.0 / d;
        CHECK(phi.phi(i, j) == doctest::Approx(expected).epsilon(1e-9));
      }
    }
    CHECK(phi.max_column_sum_deviation() < 1e-10);
    CHECK(phi.min_entry() < 0);
    CHECK(phi.condition_number > 1.0);
  }
  const Mic sic = sic_qubit();
  CHECK(phi_matrix(sic, unit_parts(sic)).phi(0, 0) == doctest::Approx(2.5));
}

TEST_CASE("phi matrix errors") {
  const Mic sic = sic_qubit();
  auto post = unit_parts(sic);
  post[1] = post[0];
  CHECK(code_of([&] { phi_matrix(sic, post); }) == ErrorCode::SingularConditionalMatrix);
  post.pop_back();
  CHECK(code_of([&] { phi_matrix(sic, post); }) == ErrorCode::WrongCount);
  std::vector<ComplexMatrix> bad(4, ComplexMatrix::Identity(2, 2));
  CHECK(code_of([&] { phi_matrix(sic, bad); }) == ErrorCode::InvalidState);
}

TEST_CASE("cascaded probability matches the Born rule") {
  Rng rng = make_stream(31, 0);
  const Mic sic = builtin_sic(3);
  const ComplexMatrix rho = random_mixed_state(3, rng);

  const Povm trivial = validate_povm({ComplexMatrix::Identity(3, 3)});
  const ProbabilityVector one = cascaded_probability(rho, sic, unit_parts(sic), trivial);
  REQUIRE(one.size() == 1);
  CHECK(one(0) == doctest::Approx(1.0).epsilon(1e-10));

  const Povm second = random_povm(3, 3, rng);
  const ProbabilityVector q = cascaded_probability(rho, sic, unit_parts(sic), second);
  const ProbabilityVector direct = born_probabilities(rho, second);
  CHECK((q - direct).cwiseAbs().maxCoeff() < 1e-9);

  // Expanded SIC form: sum_i [(d+1) P(H_i) - 1/d] P(D_j | H_i).
  const ProbabilityVector p = born_probabilities(rho, sic);
  for (int j = 0; j < 3; ++j) {
    double expanded = 0;
    for (int i = 0; i < 9; ++i) {
      expanded += (4 * p(i) - 1.0 / 3) * trace_product(sic[i].unit_part, second[j].matrix).real();
    }
    CHECK(q(j) == doctest::Approx(expanded).epsilon(1e-9));
  }

  for (MicKind kind : kAllMicKinds) {
    for (int d = 2; d <= 4; ++d) {
      const Mic h = random_mic(kind, d, rng);
      std::vector<ComplexMatrix> post;
      for (int j = 0; j < d * d; ++j) post.push_back(projector(haar_pure_state(d, rng)));
      const PhiMatrix phi = phi_matrix(h, post);
      CHECK(phi.max_column_sum_deviation() < 1e-8);
      CHECK(phi.min_entry() < 0);
      const ComplexMatrix state = random_mixed_state(d, rng);
      const Povm dpovm = random_povm(d, 4, rng);
      const ProbabilityVector qq = cascaded_probability(state, h, post, dpovm);
      CHECK((qq - born_probabilities(state, dpovm)).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("wigner quasiprobabilities") {
  for (int d : {3, 5}) {
    const Mic a = appleby_mic(d);
    const RealVector flat = wigner_quasiprobs(ComplexMatrix::Identity(d, d) / static_cast<double>(d), a);
    for (int i = 0; i < d * d; ++i) CHECK(flat(i) == doctest::Approx(1.0 / (d * d)).epsilon(1e-10));
  }
  const Mic a3 = appleby_mic(3);
  Rng rng = make_stream(77, 0);
  bool saw_negative = false;
  for (int i = 0; i < 200; ++i) {
    const RealVector w = wigner_quasiprobs(projector(haar_pure_state(3, rng)), a3);
    CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-10));
    saw_negative |= w.minCoeff() < 0;
  }
  CHECK(saw_negative);
}

TEST_CASE("group covariance check") {
  CHECK(group_covariance_check(random_wh(3, 1).gram()));
  CHECK(group_covariance_check(appleby_mic(5).gram()));
  CHECK(group_covariance_check(builtin_sic(4).gram()));
  CHECK_FALSE(group_covariance_check(example_seven_orthogonal().gram()));
  CHECK_FALSE(group_covariance_check(orthocross_mic(3).gram()));
}

TEST_CASE("collision probability") {
  RealVector point = RealVector::Zero(4);
  point(2) = 1;
  CHECK(collision_probability(point) == 1.0);
  CHECK(collision_probability(RealVector::Constant(9, 1.0 / 9)) == doctest::Approx(1.0 / 9));

  const Mic sic = sic_qubit();
  Rng rng = make_stream(4, 4);
  for (int i = 0; i < 10; ++i) {
    const ProbabilityVector p = born_probabilities(projector(haar_pure_state(2, rng)), sic);
    CHECK(collision_probability(p) == doctest::Approx(1.0 / 3).epsilon(1e-10));
    CHECK(purity_form(p, sic.gram()) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("conjecture probes report without asserting") {
  const Report min_gram = conjecture_probe(ProbeKind::OrthocrossMinGram);
  CHECK(min_gram.kind() == "conjecture-probe");
  double previous = 1;
  for (int d = 2; d <= 6; ++d) {
    const double v = min_gram.number("d" + std::to_string(d) + ".min_offdiag");
    CHECK(v > 0);
    CHECK(v < previous);
    previous = v;
  }
  CHECK(min_gram.number("d2.min_offdiag") == doctest::Approx(0.0408163).epsilon(1e-5));

  const Report half = conjecture_probe(ProbeKind::OrthocrossInvGramHalfInt);
  CHECK(half.number("d2.residue") <= 1e-6);
  CHECK(half.find("max_residue") != nullptr);

  ProbeParams params;
  params.restarts = 200;
  params.seed = 5;
  const Report search = conjecture_probe(ProbeKind::Rank1OrthoPairSearch, params);
  CHECK(search.number("seed_count") == 7);
  CHECK(search.number("restarts") == 200);
  CHECK(search.number("best_count") >= 7);
  CHECK(std::string(to_string(ProbeKind::OrthocrossMinGram)) == "orthocross-min-gram");
}
