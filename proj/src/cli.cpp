#include "miclab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "miclab/analysis.hpp"
#include "miclab/constructions.hpp"
#include "miclab/document.hpp"
#include "miclab/ensembles.hpp"
#include "miclab/error.hpp"
#include "miclab/suites.hpp"

namespace miclab {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const std::vector<std::string> kAllChecks = {"unbiased-equivalence", "dual-indefiniteness", "ortho-pairs",
                                             "frobenius-gap", "inv-gram-distance", "covariance", "phi"};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ParseError:
    case ErrorCode::EvenDimension:
    case ErrorCode::BetaOutOfRange:
    case ErrorCode::BetaZero:
    case ErrorCode::EnvelopeExceeded:
    case ErrorCode::WrongDimension:
      return kExitUsage;
    default:
      return kExitRuntime;
  }
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

std::string fixed(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::uint64_t seed_of(long long seed) { return static_cast<std::uint64_t>(seed); }

double default_bin_width(int d) {
  if (d == 3) return 1.0 / 198;
  if (200 % d == 0) return 1.0 / 200;
  return 1.0 / (d * std::round(200.0 / d));
}

// Computational-basis projectors padded with zeros, mixed toward the built-in SIC.
Mic near_orthogonal(int d, double t, const ToleranceConfig& tol) {
  RealVector diag = RealVector::LinSpaced(d, 0.0, d - 1.0);
  const ComplexMatrix h = diag.cast<Complex>().asDiagonal();
  return near_orthogonal_family(eigenprojector_padding(h), builtin_sic(d), t, tol);
}

Mic build_construction(const std::string& name, int d, int copies, const std::string& beta_text,
                       const std::string& t_text, long long seed, const ToleranceConfig& tol) {
  if (name == "sic") return builtin_sic(d);
  if (name == "wh") {
    Rng rng = make_stream(seed_of(seed), 0);
    return wh_mic(projector(haar_pure_state(d, rng)), 1e-8, tol);
  }
  if (name == "orthocross") return orthocross_mic(d, tol);
  if (name == "equiangular") {
    if (beta_text.empty()) throw UsageError("equiangular needs --beta");
    return equiangular_mic(builtin_sic(d), parse_fraction(beta_text), tol);
  }
  if (name == "appleby") return appleby_mic(d, tol);
  if (name == "tensorhedron") return tensorhedron_mic(builtin_sic(d), copies, tol);
  if (name == "example7") return example_seven_orthogonal();
  if (name == "near-orthogonal") {
    if (t_text.empty()) throw UsageError("near-orthogonal needs --t");
    return near_orthogonal(d, parse_fraction(t_text), tol);
  }
  if (name.rfind("random:", 0) == 0) {
    const auto kind = parse_mic_kind(name.substr(7));
    if (!kind) throw UsageError("unknown MIC kind '" + name.substr(7) + "'");
    Rng rng = make_stream(seed_of(seed), 0);
    return random_mic(*kind, d, rng, tol);
  }
  throw UsageError("unknown construction '" + name + "'");
}

std::string pair_list(const OrthogonalityReport& r) {
  std::string s;
  for (const auto& [i, j] : r.pairs) {
    if (!s.empty()) s += ' ';
    s += std::to_string(i + 1) + "-" + std::to_string(j + 1);
  }
  return s;
}

// Runs the checks, recording each asserted invariant under "<check>.holds".
Report analyze(const Mic& mic, const std::vector<std::string>& checks, const ToleranceConfig& tol, bool& all_hold) {
  Report report("analysis");
  report.set("dimension", mic.dim());
  all_hold = true;
  auto assert_holds = [&](const std::string& key, bool ok) {
    report.set(key + ".holds", ok);
    all_hold = all_hold && ok;
  };
  const bool unbiased = is_unbiased(mic);
  for (const auto& check : checks) {
    if (check == "unbiased-equivalence") {
      const auto eq = unbiased_equivalence_report(mic, tol);
      report.set("unbiased-equivalence.uniform_weights", eq.uniform_weights);
      report.set("unbiased-equivalence.weight_deviation", eq.weight_deviation);
      report.set("unbiased-equivalence.doubly_stochastic", eq.doubly_stochastic);
      report.set("unbiased-equivalence.stochastic_deviation", eq.stochastic_deviation);
      report.set("unbiased-equivalence.lambda_max_pinned", eq.lambda_max_pinned);
      report.set("unbiased-equivalence.lambda_max", eq.lambda_max);
      assert_holds("unbiased-equivalence", eq.agree());
    } else if (check == "dual-indefiniteness") {
      const auto dual = dual_indefiniteness(mic, tol);
      double lo = 0.0;
      double hi = 0.0;
      for (const auto& [a, b] : dual.eigenvalue_ranges) {
        lo = std::min(lo, a);
        hi = std::max(hi, b);
      }
      report.set("dual-indefiniteness.all_indefinite", dual.all_indefinite);
      report.set("dual-indefiniteness.min_eigenvalue", lo);
      report.set("dual-indefiniteness.max_eigenvalue", hi);
      assert_holds("dual-indefiniteness", dual.all_indefinite);
    } else if (check == "ortho-pairs") {
      const auto pairs = orthogonal_pairs(mic.gram(), tol.zero_tol);
      report.set("ortho-pairs.count", pairs.count);
      report.set("ortho-pairs.min_offdiag", pairs.min_offdiag);
      report.set("ortho-pairs.pairs", pair_list(pairs));
      if (mic.dim() == 2) assert_holds("ortho-pairs", pairs.count == 0);
    } else if (check == "frobenius-gap") {
      report.set("frobenius-gap.applicable", unbiased);
      if (unbiased) {
        const double gap = frobenius_orthogonality_gap(mic);
        report.set("frobenius-gap.value", gap);
        report.set("frobenius-gap.bound", orthogonality_bound(mic.dim()));
        assert_holds("frobenius-gap", gap >= orthogonality_bound(mic.dim()) - 1e-9);
      }
    } else if (check == "inv-gram-distance") {
      report.set("inv-gram-distance.applicable", unbiased);
      if (unbiased) {
        bool ok = true;
        for (NormKind norm : {NormKind::Frobenius, NormKind::Spectral, NormKind::Trace}) {
          const double value = inv_gram_distance(mic, norm);
          const double sic = sic_inv_gram_distance(mic.dim(), norm);
          report.set(std::string("inv-gram-distance.") + to_string(norm), value);
          report.set(std::string("inv-gram-distance.sic_") + to_string(norm), sic);
          ok = ok && value >= sic - 1e-9;
        }
        assert_holds("inv-gram-distance", ok);
      }
    } else if (check == "covariance") {
      report.set("covariance.rows_permute", group_covariance_check(mic.gram()));
    } else if (check == "phi") {
      std::vector<ComplexMatrix> post;
      for (const auto& e : mic.effects()) post.push_back(e.unit_part);
      const PhiMatrix phi = phi_matrix(mic, post, tol);
      report.set("phi.condition_number", phi.condition_number);
      report.set("phi.max_column_sum_deviation", phi.max_column_sum_deviation());
      report.set("phi.min_entry", phi.min_entry());
      assert_holds("phi", phi.max_column_sum_deviation() <= 1e-8 && phi.min_entry() < 0.0);
    }
  }
  report.set("all_hold", all_hold);
  return report;
}

std::vector<std::string> split_checks(const std::string& text) {
  if (text.empty() || text == "all") return kAllChecks;
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (std::find(kAllChecks.begin(), kAllChecks.end(), item) == kAllChecks.end()) {
      throw UsageError("unknown check '" + item + "'");
    }
    out.push_back(item);
  }
  return out;
}

void tour(std::ostream& out) {
  const Mic sic = sic_qubit();
  out << "Qubit SIC Gram matrix:\n";
  for (Eigen::Index i = 0; i < 4; ++i) {
    for (Eigen::Index j = 0; j < 4; ++j) out << "  " << fixed(sic.gram()(i, j));
    out << '\n';
  }
  const RealVector spectrum = eigvalsh(sic.gram());
  out << "spectrum:";
  for (double v : spectrum) out << ' ' << fixed(v);
  out << "\n\n";

  const Mic seven = example_seven_orthogonal();
  const auto pairs = orthogonal_pairs(seven.gram());
  out << "Rank-1 MIC in d=3 with " << pairs.count << " orthogonal pairs: " << pair_list(pairs) << '\n';
  out << "dual elements all indefinite: " << (dual_indefiniteness(seven).all_indefinite ? "yes" : "no") << "\n\n";

  out << "Frobenius gap of the d=3 SIC: " << fixed(frobenius_orthogonality_gap(builtin_sic(3)))
      << " (bound " << fixed(orthogonality_bound(3)) << ")\n";
  std::vector<ComplexMatrix> post;
  for (const auto& e : sic.effects()) post.push_back(e.unit_part);
  const PhiMatrix phi = phi_matrix(sic, post);
  out << "Phi for the qubit SIC: diagonal " << fixed(phi.phi(0, 0)) << ", off-diagonal " << fixed(phi.phi(0, 1))
      << "\n";
  out << "orthocross d=3 probability bound: " << fixed(orthocross_probability_bound(3)) << '\n';
}

}  // namespace

double parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
      return v;
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const long long n = std::stoll(num, &used);
    if (used != num.size()) throw std::invalid_argument(text);
    const long long m = std::stoll(den, &used);
    if (used != den.size() || m == 0) throw std::invalid_argument(text);
    return static_cast<double>(n) / static_cast<double>(m);
  } catch (const std::logic_error&) {
    throw MicError(ErrorCode::InvalidArgument, "not a number or fraction: '" + text + "'");
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimal informationally complete measurement toolkit", "mic-lab"};
  app.require_subcommand(1);

  int d = 2;
  int copies = 2;
  long long n = 100000;
  long long seed = 1;
  unsigned workers = 1;
  int samples = 50;
  std::string out_path;
  std::string bin_text;
  std::string beta_text;
  std::string t_text;
  std::string checks_text;
  std::string construction;
  std::string mic_path;
  std::string kind_text;
  std::string suite;

  auto* gen = app.add_subcommand("gen", "Construct a MIC and write it as a document");
  gen->add_option("construction", construction,
                  "sic, wh, orthocross, equiangular, appleby, tensorhedron, example7, near-orthogonal, "
                  "random:<kind>")
      ->required();
  gen->add_option("--d", d, "Dimension");
  gen->add_option("--n", copies, "Tensor factors (tensorhedron)");
  gen->add_option("--beta", beta_text, "Mixing parameter (equiangular)");
  gen->add_option("--t", t_text, "Interpolation parameter in (0,1) (near-orthogonal)");
  gen->add_option("--seed", seed, "Seed for random constructions");
  gen->add_option("--out", out_path, "Output path (default stdout)");

  auto* an = app.add_subcommand("analyze", "Run analysis checks on a MIC document");
  an->add_option("mic", mic_path, "MIC document")->required();
  an->add_option("--checks", checks_text, "Comma-separated checks or 'all'");
  an->add_option("--out", out_path, "Report path (default stdout)");

  auto* sp = app.add_subcommand("spectra", "Gram spectra histogram of a random MIC ensemble");
  sp->add_option("ensemble", kind_text, "generic, generic-rank1, wh, wh-rank1");
  sp->add_option("--kind", kind_text, "Same as the positional kind");
  sp->add_option("--d", d, "Dimension in [2, 8]");
  sp->add_option("--n", n, "Number of sampled MICs");
  sp->add_option("--bin", bin_text, "Bin width, e.g. 1/198");
  sp->add_option("--seed", seed, "Seed");
  sp->add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");
  sp->add_option("--out", out_path, "Table path (default stdout)");

  auto* ve = app.add_subcommand("verify", "Run a check suite");
  ve->add_option("suite", suite, "theorems, conjectures or acceptance")
      ->required()
      ->check(CLI::IsMember({"theorems", "conjectures", "acceptance"}));
  auto* verify_seed = ve->add_option("--seed", seed, "Seed");
  ve->add_option("--n", samples, "Random MICs per kind and dimension (theorems)");

  auto* ex = app.add_subcommand("example", "Print a short tour of worked values");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    const ToleranceConfig tol = ToleranceConfig::from_environment();
    if (*gen) {
      const Mic mic = build_construction(construction, d, copies, beta_text, t_text, seed, tol);
      emit(write_mic_document(mic), out_path, out);
      return kExitOk;
    }
    if (*an) {
      const std::vector<std::string> checks = split_checks(checks_text);
      Mic mic = [&] {
        try {
          return read_mic_document(read_text_file(mic_path), tol);
        } catch (const MicError& e) {
          throw MicError(ErrorCode::ParseError, std::string(mic_path) + ": " + e.what());
        }
      }();
      bool all_hold = true;
      const Report report = analyze(mic, checks, tol, all_hold);
      emit(write_report_document(report), out_path, out);
      return all_hold ? kExitOk : kExitInvariantFailure;
    }
    if (*sp) {
      const auto kind = parse_mic_kind(kind_text);
      if (!kind) throw UsageError("unknown MIC kind '" + kind_text + "'");
      if (d < 2 || d > 8) throw UsageError("--d must be in [2, 8]");
      const double bin = bin_text.empty() ? default_bin_width(d) : parse_fraction(bin_text);
      const SpectraHistogram h = spectra_study(*kind, d, n, bin, seed_of(seed), workers, tol);
      emit(write_histogram_table(h), out_path, out);
      if (d == 3) (out_path.empty() ? err : out) << "plateau_metric " << fixed(plateau_metric(h)) << '\n';
      return kExitOk;
    }
    if (*ve) {
      bool passed = true;
      auto print = [&](const CheckResult& r) {
        out << format_check(r) << '\n' << std::flush;
        passed = passed && r.passed;
      };
      if (suite == "conjectures") {
        for (const Report& r : run_conjecture_suite(seed_of(seed))) out << write_report_document(r);
        return kExitOk;
      }
      if (suite == "theorems") {
        run_theorem_suite(seed_of(seed), samples, print);
      } else {
        run_acceptance(verify_seed->count() > 0 ? seed_of(seed) : kDefaultAcceptanceSeed, print);
      }
      return passed ? kExitOk : kExitInvariantFailure;
    }
    if (*ex) {
      tour(out);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const MicError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitUsage;
}

}  // namespace miclab
