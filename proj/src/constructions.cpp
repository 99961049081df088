#include "miclab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "miclab/error.hpp"

namespace miclab {

namespace {

using namespace std::complex_literals;

constexpr double kSicTol = 1e-8;

void require_dimension(int d, int minimum = 2) {
  if (d < minimum || d > kMaxDimension) {
    throw MicError(ErrorCode::InvalidArgument, "dimension " + std::to_string(d) + " outside [" +
                                                   std::to_string(minimum) + ", " +
                                                   std::to_string(kMaxDimension) + "]");
  }
}

long positive_mod(long a, long m) { return ((a % m) + m) % m; }

// e^{i pi r / d}, with r reduced mod 2d first.
Complex root_of_unity_half(long r, int d) {
  const long reduced = positive_mod(r, 2L * d);
  return std::polar(1.0, std::numbers::pi * static_cast<double>(reduced) / d);
}

}  // namespace

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, -1i, 1i, 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix shift_operator(int d) { return wh_displacement(d, 1, 0); }

ComplexMatrix clock_operator(int d) { return wh_displacement(d, 0, 1); }

ComplexMatrix wh_displacement(int d, long k, long l) {
  require_dimension(d);
  // (-e^{i pi/d}) = e^{i pi (d+1)/d}
  const Complex phase = root_of_unity_half(positive_mod(k * l, 2L * d) * (d + 1), d);
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (long j = 0; j < d; ++j) {
    // X^k Z^l |j> = omega^{l j} |j + k>
    const Complex clock = root_of_unity_half(2 * positive_mod(l * j, d), d);
    out(positive_mod(j + k, d), j) = phase * clock;
  }
  return out;
}

Mic sic_qubit() {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const double r = 1.0 / std::sqrt(3.0);
  std::vector<ComplexMatrix> effects;
  for (int s : {1, -1}) {
    for (int sp : {1, -1}) {
      const ComplexMatrix pi =
          0.5 * (id + r * (double(s) * pauli_x() + double(sp) * pauli_y() + double(s * sp) * pauli_z()));
      effects.push_back(0.5 * pi);
    }
  }
  return make_mic(effects);
}

Mic wh_mic(const ComplexMatrix& rho, double degeneracy_tol, const ToleranceConfig& tol) {
  require_state(rho, tol);
  const int d = static_cast<int>(rho.rows());
  require_dimension(d);
  std::vector<ComplexMatrix> effects;
  effects.reserve(static_cast<std::size_t>(d) * d);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      const ComplexMatrix disp = wh_displacement(d, k, l);
      const double overlap = std::abs((disp.adjoint() * rho).trace());
      if (overlap <= degeneracy_tol) {
        throw MicError(ErrorCode::DegenerateFiducial, "|tr(D_{" + std::to_string(k) + "," +
                                                          std::to_string(l) + "}^dagger rho)| = " +
                                                          std::to_string(overlap));
      }
      effects.push_back(hermitian_part(disp * rho * disp.adjoint() / static_cast<double>(d)));
    }
  }
  return make_mic(effects, tol);
}

std::vector<ComplexMatrix> orthocross_projectors(int d) {
  require_dimension(d);
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(d) * d);
  for (int a = 0; a < d; ++a) {
    ComplexMatrix p = ComplexMatrix::Zero(d, d);
    p(a, a) = 1.0;
    out.push_back(p);
  }
  const double r = 1.0 / std::sqrt(2.0);
  for (Complex coeff : {Complex(1.0), Complex(1i)}) {
    for (int j = 0; j < d; ++j) {
      for (int k = j + 1; k < d; ++k) {
        ComplexVector v = ComplexVector::Zero(d);
        v(j) = r;
        v(k) = r * coeff;
        out.push_back(projector(v));
      }
    }
  }
  return out;
}

ComplexMatrix orthocross_omega(int d) {
  ComplexMatrix omega = ComplexMatrix::Zero(d, d);
  for (const auto& p : orthocross_projectors(d)) omega += p;
  return omega;
}

Mic orthocross_mic(int d, const ToleranceConfig& tol) {
  return mic_from_psd_basis(orthocross_projectors(d), tol);
}

RealVector orthocross_omega_spectrum(int d) {
  require_dimension(d);
  std::vector<double> values;
  for (int m = 0; m < d; ++m) {
    const double angle = std::numbers::pi * (4.0 * m + 1.0) / (4.0 * d);
    values.push_back(d + 0.5 * (1.0 / std::tan(angle) - 1.0));
  }
  std::sort(values.begin(), values.end());
  return Eigen::Map<RealVector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

double orthocross_probability_bound(int d) {
  require_dimension(d);
  return 1.0 / (d - 0.5 * (1.0 + 1.0 / std::tan(3.0 * std::numbers::pi / (4.0 * d))));
}

Mic mic_from_psd_basis(const std::vector<ComplexMatrix>& basis, const ToleranceConfig& tol) {
  if (basis.empty()) throw MicError(ErrorCode::InvalidArgument, "empty basis");
  const auto d = basis.front().rows();
  if (basis.size() != static_cast<std::size_t>(d * d)) {
    throw MicError(ErrorCode::WrongCount, "basis has " + std::to_string(basis.size()) +
                                              " elements, need " + std::to_string(d * d));
  }
  ComplexMatrix omega = ComplexMatrix::Zero(d, d);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].rows() != d || basis[i].cols() != d) {
      throw MicError(ErrorCode::ShapeMismatch, "basis element " + std::to_string(i));
    }
    require_hermitian(basis[i], tol);
    if (eigvalsh(basis[i], tol).minCoeff() < -tol.zero_tol) {
      throw MicError(ErrorCode::NotPsd, "basis element " + std::to_string(i));
    }
    omega += basis[i];
  }
  const int rank = numerical_rank(gram(basis, tol), tol);
  if (rank != d * d) {
    throw MicError(ErrorCode::LinearlyDependent,
                   "basis Gram rank " + std::to_string(rank) + " of " + std::to_string(d * d));
  }
  const ComplexMatrix root = inv_sqrt_psd(hermitian_part(omega), tol);
  std::vector<ComplexMatrix> effects;
  effects.reserve(basis.size());
  for (const auto& a : basis) effects.push_back(hermitian_part(root * a * root));
  return make_mic(effects, tol);
}

double sic_gram_deviation(const GramMatrix& g, int d) {
  if (g.rows() != static_cast<Eigen::Index>(d) * d || g.cols() != g.rows()) {
    throw MicError(ErrorCode::ShapeMismatch, "Gram size does not match d^2");
  }
  const double dd = d;
  const double off = 1.0 / (dd * dd * (dd + 1.0));
  const double diag = 1.0 / (dd * dd);
  RealMatrix target = RealMatrix::Constant(g.rows(), g.cols(), off);
  target.diagonal().setConstant(diag);
  return (g - target).cwiseAbs().maxCoeff();
}

Mic equiangular_mic(const Mic& sic, double beta, const ToleranceConfig& tol) {
  const int d = sic.dim();
  const double deviation = sic_gram_deviation(sic.gram(), d);
  if (deviation > kSicTol) {
    throw MicError(ErrorCode::NotSic, "Gram deviation " + std::to_string(deviation));
  }
  if (beta == 0.0) throw MicError(ErrorCode::BetaZero, "beta must be nonzero");
  if (!(beta >= -1.0 / (d - 1) && beta <= 1.0)) {
    throw MicError(ErrorCode::BetaOutOfRange, "beta = " + std::to_string(beta) + " outside [" +
                                                  std::to_string(-1.0 / (d - 1)) + ", 1]");
  }
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  std::vector<ComplexMatrix> effects;
  for (const auto& e : sic.effects()) {
    const ComplexMatrix pi = e.matrix * static_cast<double>(d);
    effects.push_back(hermitian_part((beta / d) * pi + ((1.0 - beta) / (double(d) * d)) * id));
  }
  return make_mic(effects, tol);
}

Mic appleby_mic(int d, const ToleranceConfig& tol) {
  if (d % 2 == 0) {
    throw MicError(ErrorCode::EvenDimension, "odd dimension required, got " + std::to_string(d));
  }
  require_dimension(d, 3);
  const double norm = std::sqrt(static_cast<double>(d + 1));
  ComplexMatrix b = ComplexMatrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      if (k == 0 && l == 0) continue;
      b += wh_displacement(d, k, l);
    }
  }
  b = hermitian_part(b / norm);
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  std::vector<ComplexMatrix> effects;
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      const ComplexMatrix disp = wh_displacement(d, k, l);
      const ComplexMatrix bkl = disp * b * disp.adjoint();
      effects.push_back(hermitian_part((id + bkl / norm) / (double(d) * d)));
    }
  }
  return make_mic(effects, tol);
}

Mic tensorhedron_mic(const Mic& component, int n, const ToleranceConfig& tol) {
  if (n < 1) throw MicError(ErrorCode::InvalidArgument, "tensor power must be >= 1");
  long total_dim = 1;
  for (int i = 0; i < n; ++i) {
    total_dim *= component.dim();
    if (total_dim > kMaxDimension) {
      throw MicError(ErrorCode::EnvelopeExceeded, std::to_string(component.dim()) + "^" +
                                                      std::to_string(n) + " exceeds dimension " +
                                                      std::to_string(kMaxDimension));
    }
  }
  if (n == 1) return component;
  const std::vector<ComplexMatrix> factors = component.matrices();
  std::vector<ComplexMatrix> current = factors;
  for (int step = 1; step < n; ++step) {
    std::vector<ComplexMatrix> next;
    next.reserve(current.size() * factors.size());
    for (const auto& a : current) {
      for (const auto& f : factors) next.push_back(kron(a, f));
    }
    current = std::move(next);
  }
  return make_mic(current, tol);
}

std::vector<ComplexVector> seven_orthogonal_vectors() {
  auto vec = [](std::initializer_list<Complex> entries, double norm) {
    ComplexVector v(static_cast<Eigen::Index>(entries.size()));
    Eigen::Index i = 0;
    for (Complex c : entries) v(i++) = c / norm;
    return v;
  };
  const double r2 = std::sqrt(2.0);
  return {
      vec({1.0, 0.0, 0.0}, 1.0),
      vec({0.0, 1.0, 0.0}, 1.0),
      vec({1.0, 0.0, 1.0}, r2),
      vec({0.0, 1.0, 1.0}, r2),
      vec({1.0, 0.0, -1i}, r2),
      vec({0.0, 1.0, -1i}, r2),
      vec({1.0, -1i, 1i}, std::sqrt(3.0)),
      vec({5.0, -1.0 + 2i, -3.0 + 1i}, std::sqrt(40.0)),
      vec({1.0, 3.0 + 2i, -3.0 + 1i}, std::sqrt(24.0)),
  };
}

Mic example_seven_orthogonal() {
  std::vector<ComplexMatrix> effects;
  for (const auto& v : seven_orthogonal_vectors()) effects.push_back(projector(v) / 3.0);
  return make_mic(effects);
}

std::vector<ComplexMatrix> eigenprojector_padding(const ComplexMatrix& h) {
  const EigenSystem es = eigh(h);
  const auto d = h.rows();
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(d * d));
  for (Eigen::Index i = 0; i < d; ++i) out.push_back(projector(es.vectors.col(i)));
  while (out.size() < static_cast<std::size_t>(d * d)) out.push_back(ComplexMatrix::Zero(d, d));
  return out;
}

Mic near_orthogonal_family(const std::vector<ComplexMatrix>& a_basis, const Mic& b, double t,
                           const ToleranceConfig& tol) {
  if (!(t > 0.0 && t < 1.0)) {
    throw MicError(ErrorCode::InvalidArgument, "t must lie in (0, 1), got " + std::to_string(t));
  }
  if (a_basis.size() != b.size()) {
    throw MicError(ErrorCode::ShapeMismatch, "A and B must have the same number of elements");
  }
  std::vector<ComplexMatrix> effects;
  effects.reserve(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (a_basis[i].rows() != b.dim() || a_basis[i].cols() != b.dim()) {
      throw MicError(ErrorCode::ShapeMismatch, "A element " + std::to_string(i));
    }
    effects.push_back(t * a_basis[i] + (1.0 - t) * b[i].matrix);
  }
  return make_mic(effects, tol);
}

Mic sic_from_fiducial(const SicFiducial& f, const ToleranceConfig& tol) {
  if (f.vector.size() != f.dim) {
    throw MicError(ErrorCode::ShapeMismatch, "fiducial length differs from its dimension");
  }
  if (std::abs(f.vector.norm() - 1.0) > 1e-10) {
    throw MicError(ErrorCode::NotNormalized, "fiducial norm " + std::to_string(f.vector.norm()));
  }
  Mic mic = wh_mic(projector(f.vector), 1e-8, tol);
  const double deviation = sic_gram_deviation(mic.gram(), f.dim);
  if (deviation > kSicTol) {
    throw MicError(ErrorCode::NotSic, "max Gram deviation " + std::to_string(deviation));
  }
  return mic;
}

Mic builtin_sic(int d) {
  if (d == 2) return sic_qubit();
  return sic_from_fiducial(builtin_fiducial(d));
}

}  // namespace miclab
