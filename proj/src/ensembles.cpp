#include "miclab/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "miclab/constructions.hpp"
#include "miclab/document.hpp"
#include "miclab/error.hpp"

namespace miclab {

Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x6d69636cU};
  return Rng(seq);
}

const char* to_string(MicKind kind) {
  switch (kind) {
    case MicKind::GenericPsd: return "generic";
    case MicKind::GenericRank1: return "generic-rank1";
    case MicKind::WhGeneric: return "wh";
    case MicKind::WhRank1: return "wh-rank1";
  }
  return "unknown";
}

std::optional<MicKind> parse_mic_kind(const std::string& name) {
  for (MicKind kind : kAllMicKinds) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

bool is_group_covariant(MicKind kind) {
  return kind == MicKind::WhGeneric || kind == MicKind::WhRank1;
}

ComplexVector haar_pure_state(int d, Rng& rng) {
  if (d < 1) throw MicError(ErrorCode::InvalidArgument, "dimension must be positive");
  std::normal_distribution<double> normal;
  ComplexVector v(d);
  for (int i = 0; i < d; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

ComplexMatrix gue_sample(int d, Rng& rng) {
  if (d < 1) throw MicError(ErrorCode::InvalidArgument, "dimension must be positive");
  std::normal_distribution<double> normal;
  ComplexMatrix a(d, d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      a(r, c) = Complex(re, im);
    }
  }
  return hermitian_part(a);
}

ComplexMatrix gue_psd_sample(int d, Rng& rng) {
  const ComplexMatrix m = gue_sample(d, rng);
  return hermitian_part(m.adjoint() * m);
}

ComplexMatrix random_mixed_state(int d, Rng& rng) {
  const ComplexMatrix m = gue_psd_sample(d, rng);
  return hermitian_part(m / m.trace().real());
}

Povm random_povm(int d, int outcomes, Rng& rng, const ToleranceConfig& tol) {
  if (outcomes < 1) throw MicError(ErrorCode::InvalidArgument, "outcome count must be positive");
  std::vector<ComplexMatrix> parts;
  ComplexMatrix total = ComplexMatrix::Zero(d, d);
  for (int i = 0; i < outcomes; ++i) {
    parts.push_back(gue_psd_sample(d, rng));
    total += parts.back();
  }
  const ComplexMatrix r = inv_sqrt_psd(hermitian_part(total), tol);
  for (auto& a : parts) a = hermitian_part(r * a * r);
  return validate_povm(parts, tol);
}

namespace {

Mic draw_mic(MicKind kind, int d, Rng& rng, const ToleranceConfig& tol) {
  switch (kind) {
    case MicKind::GenericPsd: {
      std::vector<ComplexMatrix> basis;
      for (int i = 0; i < d * d; ++i) basis.push_back(gue_psd_sample(d, rng));
      return mic_from_psd_basis(basis, tol);
    }
    case MicKind::GenericRank1: {
      std::vector<ComplexMatrix> basis;
      for (int i = 0; i < d * d; ++i) basis.push_back(projector(haar_pure_state(d, rng)));
      return mic_from_psd_basis(basis, tol);
    }
    case MicKind::WhGeneric: {
      const ComplexMatrix m = gue_psd_sample(d, rng);
      return wh_mic(hermitian_part(m / m.trace().real()), 1e-8, tol);
    }
    case MicKind::WhRank1:
      return wh_mic(projector(haar_pure_state(d, rng)), 1e-8, tol);
  }
  throw MicError(ErrorCode::InvalidArgument, "unknown MIC kind");
}

}  // namespace

Mic random_mic(MicKind kind, int d, Rng& rng, const ToleranceConfig& tol) {
  if (d < 2 || d > kMaxDimension) {
    throw MicError(ErrorCode::InvalidArgument, "dimension " + std::to_string(d) + " out of range");
  }
  std::string last_failure;
  for (int attempt = 0; attempt < kMaxSamplingRetries; ++attempt) {
    try {
      return draw_mic(kind, d, rng, tol);
    } catch (const MicError& e) {
      switch (e.code()) {
        case ErrorCode::LinearlyDependent:
        case ErrorCode::DegenerateFiducial:
        case ErrorCode::SingularOperator:
          last_failure = e.what();
          continue;
        default:
          throw;
      }
    }
  }
  throw MicError(ErrorCode::SamplingExhausted, std::string(to_string(kind)) + " d=" +
                                                   std::to_string(d) + " failed " +
                                                   std::to_string(kMaxSamplingRetries) +
                                                   " draws; last: " + last_failure);
}

std::int64_t SpectraHistogram::total() const {
  std::int64_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

void SpectraHistogram::add(double eigenvalue) {
  const double top = 1.0 / d;
  std::size_t idx;
  if (eigenvalue <= top * (1.0 + 1e-9)) {
    const double pos = eigenvalue <= 0.0 ? 0.0 : std::floor(eigenvalue / bin_width);
    idx = std::min(static_cast<std::size_t>(pos), top_primary_bin());
  } else {
    idx = std::max(static_cast<std::size_t>(std::floor(eigenvalue / bin_width)),
                   static_cast<std::size_t>(primary_bins));
  }
  if (idx >= counts.size()) counts.resize(idx + 1, 0);
  ++counts[idx];
}

void SpectraHistogram::merge(const SpectraHistogram& other) {
  if (other.d != d || other.bin_width != bin_width || other.kind != kind) {
    throw MicError(ErrorCode::ShapeMismatch, "histograms differ in kind, dimension or bin width");
  }
  if (other.counts.size() > counts.size()) counts.resize(other.counts.size(), 0);
  for (std::size_t i = 0; i < other.counts.size(); ++i) counts[i] += other.counts[i];
  n_samples += other.n_samples;
}

SpectraHistogram empty_histogram(MicKind kind, int d, double bin_width, std::uint64_t seed) {
  if (d < 2 || d > kMaxDimension) {
    throw MicError(ErrorCode::InvalidArgument, "dimension " + std::to_string(d) + " out of range");
  }
  if (!(bin_width > 0.0) || !std::isfinite(bin_width)) {
    throw MicError(ErrorCode::InvalidArgument, "bin width must be positive");
  }
  const double bins = (1.0 / d) / bin_width;
  const double rounded = std::round(bins);
  if (rounded < 1.0 || std::abs(bins - rounded) > 1e-9 * std::max(1.0, bins)) {
    throw MicError(ErrorCode::InvalidArgument, "bin width must divide 1/d into whole bins");
  }
  SpectraHistogram h;
  h.kind = kind;
  h.d = d;
  h.bin_width = bin_width;
  h.primary_bins = static_cast<int>(rounded);
  h.counts.assign(static_cast<std::size_t>(h.primary_bins), 0);
  h.seed = seed;
  return h;
}

SpectraHistogram spectra_study(MicKind kind, int d, std::int64_t n_samples, double bin_width,
                               std::uint64_t seed, unsigned workers, const ToleranceConfig& tol) {
  if (n_samples < 1) throw MicError(ErrorCode::InvalidArgument, "n_samples must be >= 1");
  const SpectraHistogram blank = empty_histogram(kind, d, bin_width, seed);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, n_samples));

  auto run_range = [&](std::int64_t begin, std::int64_t end, SpectraHistogram& out) {
    for (std::int64_t i = begin; i < end; ++i) {
      Rng rng = make_stream(seed, static_cast<std::uint64_t>(i));
      try {
        const Mic mic = random_mic(kind, d, rng, tol);
        const RealVector values = eigvalsh(mic.gram(), tol);
        for (double v : values) out.add(v);
        ++out.n_samples;
      } catch (const MicError& e) {
        throw MicError(e.code(), "sample " + std::to_string(i) + ": " + e.what());
      }
    }
  };

  std::vector<SpectraHistogram> partial(workers, blank);
  std::vector<std::exception_ptr> errors(workers);
  const std::int64_t chunk = (n_samples + workers - 1) / workers;
  if (workers == 1) {
    run_range(0, n_samples, partial[0]);
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      const std::int64_t begin = std::min<std::int64_t>(n_samples, w * chunk);
      const std::int64_t end = std::min<std::int64_t>(n_samples, begin + chunk);
      threads.emplace_back([&, w, begin, end] {
        try {
          run_range(begin, end, partial[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  SpectraHistogram result = blank;
  for (const auto& p : partial) result.merge(p);
  return result;
}

double plateau_metric(const SpectraHistogram& h) {
  if (h.d != 3) {
    throw MicError(ErrorCode::WrongDimension, "plateau metric is defined for d = 3, got " +
                                                  std::to_string(h.d));
  }
  const double edge = (1.0 / 12.0) / h.bin_width;
  const long below = static_cast<long>(std::floor(edge + 1e-9)) - 1;
  const long above = static_cast<long>(std::ceil(edge - 1e-9));
  if (below < 0 || above >= static_cast<long>(h.counts.size())) {
    throw MicError(ErrorCode::InvalidArgument, "bin width too coarse for the 1/12 edge");
  }
  const auto lo = static_cast<double>(h.counts[static_cast<std::size_t>(below)]);
  const auto hi = static_cast<double>(h.counts[static_cast<std::size_t>(above)]);
  if (hi == 0.0) return lo == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                  : std::numeric_limits<double>::infinity();
  return lo / hi;
}

std::string write_histogram_table(const SpectraHistogram& h) {
  std::ostringstream out;
  out << "kind,d,bin_left,bin_right,count\n";
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out << to_string(h.kind) << ',' << h.d << ',' << format_decimal(h.bin_left(i)) << ','
        << format_decimal(h.bin_right(i)) << ',' << h.counts[i] << '\n';
  }
  return out.str();
}

}  // namespace miclab
