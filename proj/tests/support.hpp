// Random inputs shared by the unit tests. Every generator takes the caller's
// engine so each test case is reproducible on its own.

#pragma once

#include <random>

#include "spincorr/states.hpp"

namespace testing {

using spincorr::CMatrix;
using spincorr::cplx;

inline CMatrix random_ginibre(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) m(i, j) = cplx(g(rng), g(rng));
  }
  return m;
}

inline CMatrix random_hermitian(int dim, std::mt19937_64& rng) {
  const CMatrix g = random_ginibre(dim, rng);
  return 0.5 * (g + g.adjoint());
}

inline CMatrix random_unitary(int dim, std::mt19937_64& rng) {
  Eigen::HouseholderQR<CMatrix> qr(random_ginibre(dim, rng));
  return qr.householderQ() * CMatrix::Identity(dim, dim);
}

inline spincorr::DensityMatrix random_state(int n_qubits, std::mt19937_64& rng) {
  const int dim = 1 << n_qubits;
  const CMatrix g = random_ginibre(dim, rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return spincorr::DensityMatrix(0.5 * (rho + rho.adjoint()));
}

inline CMatrix random_qubit_matrix(std::mt19937_64& rng) { return random_state(1, rng).matrix(); }

inline spincorr::CorrelationTriple random_physical_triple(std::mt19937_64& rng, int n_qubits = 2) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const spincorr::CorrelationTriple c{u(rng), u(rng), u(rng)};
    if (spincorr::states::is_physical(c, n_qubits)) return c;
  }
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace testing
