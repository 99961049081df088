#pragma once

#include <cmath>
#include <random>

#include <doctest.h>

#include "miclab/numerics.hpp"

namespace miclab::testing {

using Gen = std::mt19937_64;

inline ComplexMatrix random_complex(int rows, int cols, Gen& gen) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(normal(gen), normal(gen));
  return m;
}

inline ComplexMatrix random_hermitian(int d, Gen& gen) {
  const ComplexMatrix a = random_complex(d, d, gen);
  return (a + a.adjoint()) / 2.0;
}

inline ComplexMatrix random_positive_definite(int d, Gen& gen) {
  const ComplexMatrix a = random_complex(d, d, gen);
  return a * a.adjoint() + 0.1 * ComplexMatrix::Identity(d, d);
}

inline ComplexVector random_unit(int d, Gen& gen) {
  const ComplexMatrix v = random_complex(d, 1, gen);
  return v.col(0) / v.norm();
}

inline double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }
inline double max_abs(const RealMatrix& m) { return m.cwiseAbs().maxCoeff(); }

// tr(A B) computed entrywise.
inline Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  Complex s = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) s += a(i, j) * b(j, i);
  }
  return s;
}

}  // namespace miclab::testing
