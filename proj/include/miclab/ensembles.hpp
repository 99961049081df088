#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "miclab/povm.hpp"

namespace miclab {

using Rng = std::mt19937_64;

// Independent generator for (seed, index). Sample i of a study always draws
// from make_stream(seed, i), so results do not depend on how samples are
// distributed across workers.
Rng make_stream(std::uint64_t seed, std::uint64_t index);

enum class MicKind { GenericPsd, GenericRank1, WhGeneric, WhRank1 };

inline constexpr MicKind kAllMicKinds[] = {MicKind::GenericPsd, MicKind::GenericRank1,
                                           MicKind::WhGeneric, MicKind::WhRank1};

// CLI spellings: generic, generic-rank1, wh, wh-rank1.
const char* to_string(MicKind kind);
std::optional<MicKind> parse_mic_kind(const std::string& name);
bool is_group_covariant(MicKind kind);

// d iid standard complex Gaussians, normalized.
ComplexVector haar_pure_state(int d, Rng& rng);

// M = (A + A^dagger)/2 with A_ij = x + iy, x,y ~ N(0,1). The diagonal of M is
// N(0,1) and each off-diagonal entry has E|M_ij|^2 = 1.
ComplexMatrix gue_sample(int d, Rng& rng);
// M^dagger M for M = gue_sample(d, rng).
ComplexMatrix gue_psd_sample(int d, Rng& rng);

// gue_psd_sample normalized to unit trace: a full-rank mixed state.
ComplexMatrix random_mixed_state(int d, Rng& rng);

// S^{-1/2} A_i S^{-1/2} with A_i = gue_psd_sample and S = sum A_i.
Povm random_povm(int d, int outcomes, Rng& rng, const ToleranceConfig& tol = {});

inline constexpr int kMaxSamplingRetries = 100;

// Retries with fresh draws from the same stream on LinearlyDependent or
// DegenerateFiducial; throws SamplingExhausted after kMaxSamplingRetries.
Mic random_mic(MicKind kind, int d, Rng& rng, const ToleranceConfig& tol = {});

struct SpectraHistogram {
  MicKind kind = MicKind::WhRank1;
  int d = 2;
  double bin_width = 0.0;
  // Bins [k w, (k+1) w). The bin ending at 1/d also takes values up to
  // 1/d (1 + 1e-9). Eigenvalues beyond that fall in further bins of the same
  // width, appended as needed.
  std::vector<std::int64_t> counts;
  int primary_bins = 0;  // bins covering [0, 1/d]
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;

  std::int64_t total() const;
  double bin_left(std::size_t i) const { return static_cast<double>(i) * bin_width; }
  double bin_right(std::size_t i) const { return static_cast<double>(i + 1) * bin_width; }
  // Index of the bin that contains 1/d.
  std::size_t top_primary_bin() const { return static_cast<std::size_t>(primary_bins - 1); }

  void add(double eigenvalue);
  // Integer addition, zero-padding the shorter histogram.
  void merge(const SpectraHistogram& other);
};

SpectraHistogram empty_histogram(MicKind kind, int d, double bin_width, std::uint64_t seed);

// Gram eigenvalues of n_samples random MICs, sample i drawn from
// make_stream(seed, i). workers = 0 uses the hardware concurrency.
SpectraHistogram spectra_study(MicKind kind, int d, std::int64_t n_samples, double bin_width,
                               std::uint64_t seed, unsigned workers = 1,
                               const ToleranceConfig& tol = {});

// Count in the last bin lying wholly below 1/12 divided by the count in the
// first bin lying wholly above it. Requires d = 3.
double plateau_metric(const SpectraHistogram& h);

// Columns kind,d,bin_left,bin_right,count with a header row.
std::string write_histogram_table(const SpectraHistogram& h);

}  // namespace miclab
