#pragma once

#include <string>
#include <vector>

#include "miclab/povm.hpp"

namespace miclab {

// Dimension ceiling for composite constructions.
inline constexpr int kMaxDimension = 32;

struct WhIndex {
  int k = 0;
  int l = 0;
};

enum class FiducialProvenance { BuiltIn, UserSupplied, NumericallyFound };

struct SicFiducial {
  int dim = 0;
  ComplexVector vector;
  FiducialProvenance provenance = FiducialProvenance::UserSupplied;
};

// Pauli matrices and the shift/clock pair.
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix shift_operator(int d);
ComplexMatrix clock_operator(int d);

// D_{k,l} = (-e^{i pi/d})^{kl} X^k Z^l. Indices are taken as given (not reduced
// mod d) in the phase, so D_{k,l}^dagger = D_{-k,-l} holds in every dimension.
ComplexMatrix wh_displacement(int d, long k, long l);
inline ComplexMatrix wh_displacement(int d, WhIndex idx) { return wh_displacement(d, idx.k, idx.l); }

// Effects (1/2) Pi_{s,s'} in the order (s,s') = (+,+), (+,-), (-,+), (-,-).
Mic sic_qubit();

// E_{k,l} = (1/d) D_{k,l} rho D_{k,l}^dagger, row-major in (k,l).
// Throws DegenerateFiducial when some |tr(D_{k,l}^dagger rho)| <= degeneracy_tol.
Mic wh_mic(const ComplexMatrix& rho, double degeneracy_tol = 1e-8, const ToleranceConfig& tol = {});

// The d^2 rank-1 projectors of the orthocross construction: diagonal
// projectors, then (|j>+|k>)/sqrt2 for j<k, then (|j>+i|k>)/sqrt2 for j<k.
std::vector<ComplexMatrix> orthocross_projectors(int d);
ComplexMatrix orthocross_omega(int d);
Mic orthocross_mic(int d, const ToleranceConfig& tol = {});

// lambda_m = d + (cot(pi(4m+1)/(4d)) - 1)/2 for m = 0..d-1, sorted ascending.
RealVector orthocross_omega_spectrum(int d);

// [d - (1 + cot(3 pi/(4d)))/2]^{-1}: ceiling on any orthocross outcome probability.
double orthocross_probability_bound(int d);

// E_i = Omega^{-1/2} A_i Omega^{-1/2} with Omega = sum_i A_i.
Mic mic_from_psd_basis(const std::vector<ComplexMatrix>& basis, const ToleranceConfig& tol = {});

// Max |G_ij - [G_SIC]_ij| over all entries.
double sic_gram_deviation(const GramMatrix& g, int d);

// E_i = (beta/d) Pi_i + (1-beta)/d^2 I for -1/(d-1) <= beta <= 1, beta != 0.
Mic equiangular_mic(const Mic& sic, double beta, const ToleranceConfig& tol = {});

// Odd d >= 3; effects of rank (d+1)/2, row-major in (k,l).
Mic appleby_mic(int d, const ToleranceConfig& tol = {});

// All n-fold tensor products of the component effects, first factor slowest.
Mic tensorhedron_mic(const Mic& component, int n, const ToleranceConfig& tol = {});

// Nine vectors in C^3 whose projectors, scaled by 1/3, form an unbiased rank-1
// MIC with seven orthogonal pairs.
std::vector<ComplexVector> seven_orthogonal_vectors();
Mic example_seven_orthogonal();

// The d eigenprojectors of h (ascending eigenvalue) followed by d^2 - d zeros.
std::vector<ComplexMatrix> eigenprojector_padding(const ComplexMatrix& h);

// E_i = t A_i + (1-t) B_i for 0 < t < 1.
Mic near_orthogonal_family(const std::vector<ComplexMatrix>& a_basis, const Mic& b, double t,
                           const ToleranceConfig& tol = {});

// WH orbit of |f><f|, verified against the SIC Gram matrix to 1e-8.
Mic sic_from_fiducial(const SicFiducial& f, const ToleranceConfig& tol = {});

// Fiducials shipped with the library for d = 2..5.
const std::vector<SicFiducial>& builtin_fiducials();
// Throws InvalidArgument when no built-in fiducial exists for d.
const SicFiducial& builtin_fiducial(int d);
// Built-in SIC for d = 2..5 (d = 2 gives sic_qubit()).
Mic builtin_sic(int d);

// Parses a fiducial data document: {"records": [{"d": 3, "vector": [["re","im"], ...]}, ...]}.
std::vector<SicFiducial> parse_fiducials(const std::string& text,
                                         FiducialProvenance provenance = FiducialProvenance::UserSupplied);
std::vector<SicFiducial> load_fiducials(const std::string& path);

}  // namespace miclab
