#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "miclab/constructions.hpp"
#include "miclab/error.hpp"
#include "support.hpp"

using namespace miclab;
using namespace miclab::testing;

namespace {

const double kPi = std::acos(-1.0);

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

ComplexMatrix oracle_shift(int d) {
  ComplexMatrix x = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) x((j + 1) % d, j) = 1;
  return x;
}

ComplexMatrix oracle_clock(int d) {
  ComplexMatrix z = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) z(j, j) = std::polar(1.0, 2 * kPi * j / d);
  return z;
}

ComplexMatrix power(const ComplexMatrix& m, int n) {
  ComplexMatrix out = ComplexMatrix::Identity(m.rows(), m.cols());
  for (int i = 0; i < n; ++i) out = out * m;
  return out;
}

Complex tau(int d, long n) { return std::polar(1.0, kPi * (d + 1.0) * static_cast<double>(n) / d); }

int count_zeros(const RealMatrix& g) {
  int n = 0;
  for (Eigen::Index i = 0; i < g.size(); ++i) n += std::abs(g.data()[i]) < 1e-12;
  return n;
}

double sic_overlap(int d) { return 1.0 / (d * d * (d + 1.0)); }

}  // namespace

TEST_CASE("pauli matrices") {
  CHECK(max_abs(ComplexMatrix(pauli_x() * pauli_y() - Complex(0, 1) * pauli_z())) < 1e-15);
  CHECK(max_abs(ComplexMatrix(pauli_z() * pauli_z() - ComplexMatrix::Identity(2, 2))) == 0.0);
}

TEST_CASE("shift and clock") {
  for (int d = 2; d <= 7; ++d) {
    CHECK(max_abs(ComplexMatrix(shift_operator(d) - oracle_shift(d))) < 1e-14);
    CHECK(max_abs(ComplexMatrix(clock_operator(d) - oracle_clock(d))) < 1e-14);
  }
}

TEST_CASE("weyl-heisenberg displacements") {
  for (int d = 2; d <= 6; ++d) {
    const ComplexMatrix id = ComplexMatrix::Identity(d, d);
    CHECK(max_abs(ComplexMatrix(wh_displacement(d, 0, 0) - id)) < 1e-15);
    for (int k = 0; k < d; ++k) {
      for (int l = 0; l < d; ++l) {
        const ComplexMatrix dkl = wh_displacement(d, k, l);
        const ComplexMatrix expected = tau(d, k * l) * power(oracle_shift(d), k) * power(oracle_clock(d), l);
        CHECK(max_abs(ComplexMatrix(dkl - expected)) < 1e-12);
        CHECK(max_abs(ComplexMatrix(dkl * dkl.adjoint() - id)) < 1e-12);
        CHECK(max_abs(ComplexMatrix(dkl.adjoint() - wh_displacement(d, -k, -l))) < 1e-12);
        if (k != 0 || l != 0) CHECK(std::abs(dkl.trace()) < 1e-12);
      }
    }
  }
}

TEST_CASE("displacement composition law") {
  for (int d : {3, 5}) {
    for (int k = 0; k < d; ++k) {
      for (int l = 0; l < d; ++l) {
        for (int m = 0; m < d; ++m) {
          for (int n = 0; n < d; ++n) {
            const ComplexMatrix lhs = wh_displacement(d, k, l) * wh_displacement(d, m, n);
            const ComplexMatrix rhs = tau(d, l * m - k * n) * wh_displacement(d, k + m, l + n);
            CHECK(max_abs(ComplexMatrix(lhs - rhs)) < 1e-11);
          }
        }
      }
    }
  }
}

TEST_CASE("qubit SIC") {
  const Mic sic = sic_qubit();
  CHECK(sic.dim() == 2);
  CHECK(sic.size() == 4);
  CHECK(sic_gram_deviation(sic.gram(), 2) < 1e-12);
  for (const auto& e : sic.effects()) {
    CHECK(e.weight == doctest::Approx(0.5));
    CHECK(numerical_rank(e.matrix) == 1);
  }
  // Bloch vectors of a regular tetrahedron: pairwise dot products -1/3.
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      const Complex overlap = trace_product(sic[i].unit_part, sic[j].unit_part);
      CHECK(overlap.real() == doctest::Approx(1.0 / 3).epsilon(1e-12));
    }
  }
}

TEST_CASE("wh_mic") {
  const Mic from_fiducial = wh_mic(projector(builtin_fiducial(3).vector));
  CHECK(sic_gram_deviation(from_fiducial.gram(), 3) < 1e-9);
  CHECK(code_of([] { wh_mic(ComplexMatrix::Identity(3, 3) / 3.0); }) == ErrorCode::DegenerateFiducial);

  Gen gen(17);
  const ComplexMatrix rho = projector(random_unit(3, gen));
  const Mic mic = wh_mic(rho);
  CHECK(mic.size() == 9);
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      const ComplexMatrix dkl = wh_displacement(3, k, l);
      const ComplexMatrix expected = dkl * rho * dkl.adjoint() / 3.0;
      CHECK(max_abs(ComplexMatrix(mic[3 * k + l].matrix - expected)) < 1e-12);
    }
  }
}

TEST_CASE("orthocross construction") {
  for (int d = 2; d <= 8; ++d) {
    const Mic mic = orthocross_mic(d);
    CHECK(mic.size() == static_cast<std::size_t>(d * d));
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    for (const auto& e : mic.effects()) total += e.matrix;
    CHECK(max_abs(ComplexMatrix(total - ComplexMatrix::Identity(d, d))) < 1e-10);

    const ComplexMatrix omega = orthocross_omega(d);
    for (int j = 0; j < d; ++j) {
      CHECK(std::abs(omega(j, j) - Complex(d, 0)) < 1e-14);
      for (int k = j + 1; k < d; ++k) {
        CHECK(std::abs(omega(j, k) - Complex(0.5, -0.5)) < 1e-14);
        CHECK(std::abs(omega(k, j) - Complex(0.5, 0.5)) < 1e-14);
      }
    }

    std::vector<double> closed;
    for (int m = 0; m < d; ++m) closed.push_back(d + (1.0 / std::tan(kPi * (4 * m + 1) / (4.0 * d)) - 1) / 2);
    std::sort(closed.begin(), closed.end());
    const RealVector lib = orthocross_omega_spectrum(d);
    const RealVector eig = eigvalsh(omega);
    for (int m = 0; m < d; ++m) {
      CHECK(lib(m) == doctest::Approx(closed[m]).epsilon(1e-12));
      CHECK(eig(m) == doctest::Approx(closed[m]).epsilon(1e-9));
    }
  }
  for (int d = 2; d <= 10; ++d) CHECK(orthocross_omega_spectrum(d).sum() == doctest::Approx(d * d).epsilon(1e-12));

  const RealVector q = orthocross_omega_spectrum(2);
  CHECK(q(0) == doctest::Approx(1.292893).epsilon(1e-6));
  CHECK(q(1) == doctest::Approx(2.707107).epsilon(1e-6));
}

TEST_CASE("orthocross projector order") {
  const auto p = orthocross_projectors(3);
  REQUIRE(p.size() == 9);
  CHECK(std::abs(p[1](1, 1) - Complex(1, 0)) < 1e-15);
  // (|0> + |2>)/sqrt2 is the second real cross.
  CHECK(std::abs(p[4](0, 2) - Complex(0.5, 0)) < 1e-15);
  // (|1> + i|2>)/sqrt2 is the last imaginary cross.
  CHECK(std::abs(p[8](1, 2) - Complex(0, -0.5)) < 1e-15);
}

TEST_CASE("orthocross probability bound") {
  for (int d = 2; d <= 6; ++d) {
    const double expected = 1.0 / (d - (1 + 1.0 / std::tan(3 * kPi / (4.0 * d))) / 2);
    CHECK(orthocross_probability_bound(d) == doctest::Approx(expected).epsilon(1e-12));
  }
  CHECK(orthocross_probability_bound(3) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("mic_from_psd_basis") {
  const Mic sic = sic_qubit();
  const Mic fixed = mic_from_psd_basis(sic.matrices());
  for (int i = 0; i < 4; ++i) CHECK(max_abs(ComplexMatrix(fixed[i].matrix - sic[i].matrix)) < 1e-9);

  const Mic rank1 = mic_from_psd_basis(orthocross_projectors(3));
  for (const auto& e : rank1.effects()) CHECK(numerical_rank(e.matrix) == 1);

  auto repeated = orthocross_projectors(2);
  repeated[3] = repeated[2];
  CHECK(code_of([&] { mic_from_psd_basis(repeated); }) == ErrorCode::LinearlyDependent);

  Gen gen(8);
  std::vector<ComplexMatrix> basis;
  for (int i = 0; i < 9; ++i) basis.push_back(random_positive_definite(3, gen));
  const Mic a = mic_from_psd_basis(basis);
  for (auto& m : basis) m *= 7.5;
  const Mic b = mic_from_psd_basis(basis);
  for (int i = 0; i < 9; ++i) CHECK(max_abs(ComplexMatrix(a[i].matrix - b[i].matrix)) < 1e-10);
}

TEST_CASE("equiangular MICs") {
  const Mic sic = sic_qubit();
  const Mic same = equiangular_mic(sic, 1.0);
  CHECK(frobenius_distance(same.gram(), sic.gram()) < 1e-12);

  for (int d : {2, 3}) {
    const Mic base = builtin_sic(d);
    for (double beta : {-1.0 / (d - 1), -0.3, 0.25, 0.5, 0.9}) {
      const Mic m = equiangular_mic(base, beta);
      // tr(E_i E_j) from the defining mixture, with tr(Pi_i Pi_j) = 1/(d+1) off the diagonal.
      const double a = beta / d;
      const double c = (1 - beta) / (d * d);
      const double zeta = a * a / (d + 1.0) + 2 * a * c + c * c * d;
      const double diag = a * a + 2 * a * c + c * c * d;
      CHECK(m.gram()(0, 1) == doctest::Approx(zeta).epsilon(1e-12));
      CHECK(m.gram()(2, 2) == doctest::Approx(diag).epsilon(1e-12));
      CHECK(diag - zeta == doctest::Approx(1.0 / d - d * d * zeta).epsilon(1e-12));
      CHECK(zeta >= 1.0 / (d * d * (d + 1.0)) - 1e-15);
      CHECK(zeta < 1.0 / (d * d * d));
    }
  }
  const Mic half = equiangular_mic(sic, 0.5);
  CHECK(half.gram()(0, 1) == doctest::Approx(11.0 / 96).epsilon(1e-12));
  CHECK(half.gram()(0, 0) - half.gram()(0, 1) == doctest::Approx(1.0 / 24).epsilon(1e-12));

  CHECK(code_of([&] { equiangular_mic(sic, 0.0); }) == ErrorCode::BetaZero);
  CHECK(code_of([&] { equiangular_mic(sic, 1.5); }) == ErrorCode::BetaOutOfRange);
  CHECK(code_of([&] { equiangular_mic(sic, -1.01); }) == ErrorCode::BetaOutOfRange);
  CHECK(code_of([&] { equiangular_mic(builtin_sic(3), -0.6); }) == ErrorCode::BetaOutOfRange);
}

TEST_CASE("appleby MICs") {
  for (int d : {3, 5, 7}) {
    const Mic m = appleby_mic(d);
    REQUIRE(m.size() == static_cast<std::size_t>(d * d));
    ComplexMatrix total = ComplexMatrix::Zero(d, d);
    for (const auto& e : m.effects()) {
      CHECK(numerical_rank(e.matrix) == (d + 1) / 2);
      CHECK(e.weight == doctest::Approx(1.0 / d).epsilon(1e-12));
      total += e.matrix;
    }
    CHECK(max_abs(ComplexMatrix(total - ComplexMatrix::Identity(d, d))) < 1e-10);

    ComplexMatrix b = ComplexMatrix::Zero(d, d);
    for (int k = 0; k < d; ++k) {
      for (int l = 0; l < d; ++l) {
        if (k || l) b += wh_displacement(d, k, l);
      }
    }
    b /= std::sqrt(d + 1.0);
    const ComplexMatrix d11 = wh_displacement(d, 1, 1);
    const ComplexMatrix expected =
        (ComplexMatrix::Identity(d, d) + d11 * b * d11.adjoint() / std::sqrt(d + 1.0)) / static_cast<double>(d * d);
    CHECK(max_abs(ComplexMatrix(m[d + 1].matrix - expected)) < 1e-12);
  }
  CHECK(code_of([] { appleby_mic(4); }) == ErrorCode::EvenDimension);
}

TEST_CASE("tensorhedron MICs") {
  const Mic sic = sic_qubit();
  const Mic one = tensorhedron_mic(sic, 1);
  CHECK(frobenius_distance(one.gram(), sic.gram()) == 0.0);

  const Mic two = tensorhedron_mic(sic, 2);
  CHECK(two.dim() == 4);
  CHECK(two.size() == 16);
  CHECK(max_abs(ComplexMatrix(two[6].matrix - kron(sic[1].matrix, sic[2].matrix))) < 1e-14);
  CHECK(max_abs(RealMatrix(two.gram() - kron(sic.gram(), sic.gram()))) < 1e-12);

  const RealVector spectrum = eigvalsh(two.gram());
  for (int i = 0; i < 16; ++i) {
    const double expected = i < 9 ? 1.0 / 36 : i < 15 ? 1.0 / 12 : 0.25;
    CHECK(spectrum(i) == doctest::Approx(expected).epsilon(1e-12));
  }

  const RealVector three = eigvalsh(tensorhedron_mic(sic, 3).gram());
  for (int i = 0; i < three.size(); ++i) {
    bool allowed = false;
    for (int m = 0; m <= 3; ++m) allowed |= std::abs(three(i) - std::pow(3.0, -m) / 8) < 1e-12;
    CHECK(allowed);
  }

  CHECK(code_of([&] { tensorhedron_mic(sic, 6); }) == ErrorCode::EnvelopeExceeded);
  CHECK(code_of([&] { tensorhedron_mic(sic, 0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("seven orthogonal pairs example") {
  const Mic m = example_seven_orthogonal();
  for (const auto& e : m.effects()) {
    CHECK(e.weight == doctest::Approx(1.0 / 3));
    CHECK(numerical_rank(e.matrix) == 1);
  }
  const int n = count_zeros(m.gram());
  CHECK(n == 14);
  const Mic square = tensorhedron_mic(m, 2);
  CHECK(count_zeros(square.gram()) == 2 * 81 * n - n * n);
  CHECK(count_zeros(square.gram()) == 2072);
}

TEST_CASE("near-orthogonal family") {
  const Mic b = sic_qubit();
  const auto a = eigenprojector_padding(pauli_z());
  REQUIRE(a.size() == 4);
  CHECK(std::abs(a[0](1, 1) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(a[1](0, 0) - Complex(1, 0)) < 1e-12);
  CHECK(max_abs(a[2]) == 0.0);

  const auto oracle_distance = [&](double t) {
    std::vector<ComplexMatrix> e;
    for (int i = 0; i < 4; ++i) e.push_back(t * a[i] + (1 - t) * b[i].matrix);
    RealMatrix g(4, 4), ideal = RealMatrix::Zero(4, 4);
    for (int i = 0; i < 4; ++i) {
      ideal(i, i) = trace_product(a[i], a[i]).real();
      for (int j = 0; j < 4; ++j) g(i, j) = trace_product(e[i], e[j]).real();
    }
    return (g - ideal).norm();
  };

  double previous = 1e9;
  for (double t : {0.5, 0.9, 0.99, 0.999}) {
    const Mic m = near_orthogonal_family(a, b, t);
    RealMatrix ideal = RealMatrix::Zero(4, 4);
    ideal(0, 0) = ideal(1, 1) = 1;
    const double dist = frobenius_distance(m.gram(), ideal);
    CHECK(dist == doctest::Approx(oracle_distance(t)).epsilon(1e-12));
    CHECK(dist < previous);
    previous = dist;
    for (int i = 0; i < 4; ++i) {
      CHECK(m[i].weight == doctest::Approx(t * a[i].trace().real() + (1 - t) * b[i].weight).epsilon(1e-12));
    }
  }
  RealMatrix diag_ideal = RealMatrix::Zero(4, 4);
  diag_ideal(0, 0) = diag_ideal(1, 1) = 1;
  CHECK(frobenius_distance(near_orthogonal_family(a, b, 0.99).gram(), diag_ideal) ==
        doctest::Approx(0.028641).epsilon(1e-4));

  const Mic nearly_b = near_orthogonal_family(a, b, 1e-9);
  CHECK(frobenius_distance(nearly_b.gram(), b.gram()) < 1e-8);
  CHECK(code_of([&] { near_orthogonal_family(a, b, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { near_orthogonal_family(a, b, 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("SIC from fiducial") {
  for (int d = 2; d <= 5; ++d) {
    const Mic sic = builtin_sic(d);
    CHECK(builtin_fiducial(d).provenance == FiducialProvenance::BuiltIn);
    for (int i = 0; i < d * d; ++i) {
      for (int j = 0; j < d * d; ++j) {
        const double expected = i == j ? 1.0 / (d * d) : sic_overlap(d);
        CHECK(sic.gram()(i, j) == doctest::Approx(expected).epsilon(1e-9));
      }
    }
  }
  CHECK(sic_overlap(3) == doctest::Approx(1.0 / 36));

  SicFiducial basis;
  basis.dim = 3;
  basis.vector = ComplexVector::Unit(3, 0);
  CHECK(code_of([&] { sic_from_fiducial(basis); }) == ErrorCode::DegenerateFiducial);
  Gen gen(6);
  SicFiducial generic;
  generic.dim = 3;
  generic.vector = random_unit(3, gen);
  CHECK(code_of([&] { sic_from_fiducial(generic); }) == ErrorCode::NotSic);

  SicFiducial scaled = builtin_fiducial(3);
  scaled.vector *= 1.1;
  CHECK(code_of([&] { sic_from_fiducial(scaled); }) == ErrorCode::NotNormalized);

  CHECK(code_of([] { builtin_fiducial(9); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("fiducial data file") {
  const auto loaded = load_fiducials(std::string(MICLAB_DATA_DIR) + "/sic_fiducials.json");
  REQUIRE(loaded.size() == builtin_fiducials().size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    const SicFiducial& builtin = builtin_fiducials()[i];
    CHECK(loaded[i].dim == builtin.dim);
    CHECK((loaded[i].vector - builtin.vector).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(sic_gram_deviation(sic_from_fiducial(loaded[i]).gram(), loaded[i].dim) < 1e-12);
  }

  CHECK(code_of([] { parse_fiducials("{\"records\": 3}"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { parse_fiducials("not json"); }) == ErrorCode::ParseError);
  const auto user = parse_fiducials(
      "{\"records\": [{\"d\": 2, \"vector\": [[\"1\", \"0\"], [\"0\", \"0\"]]}]}");
  REQUIRE(user.size() == 1);
  CHECK(user[0].provenance == FiducialProvenance::UserSupplied);
  CHECK(user[0].vector(0) == Complex(1, 0));
}
