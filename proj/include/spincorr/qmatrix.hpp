// Dense complex-matrix foundation shared by every spincorr module.
//
// Qubit ordering: qubit 0 is the most significant tensor factor, so for a
// two-qubit operator A⊗B subsystem A is qubit 0.

#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spincorr {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Input violates a documented precondition (bad index, wrong dimension, out-of-range parameter).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical object failed a physical or numerical requirement (unphysical state, singular system).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tolerances used across the library.
inline constexpr double kPsdTolerance = 1e-9;      // eigenvalues >= -kPsdTolerance count as PSD
inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-10;

enum class Axis { x = 1, y = 2, z = 3 };

CMatrix identity(int dim);
CMatrix pauli(Axis axis);
inline CMatrix sigma_x() { return pauli(Axis::x); }
inline CMatrix sigma_y() { return pauli(Axis::y); }
inline CMatrix sigma_z() { return pauli(Axis::z); }

/// Kronecker product a⊗b.
CMatrix tensor(const CMatrix& a, const CMatrix& b);
/// op^{⊗n}
CMatrix tensor_power(const CMatrix& op, int n);
/// Single-qubit `op` acting on `qubit` of an n-qubit register (identity elsewhere).
CMatrix embed(const CMatrix& op, int qubit, int n_qubits);

/// Number of qubits for a 2^n-dimensional square matrix; throws ValidationError otherwise.
int qubit_count(const CMatrix& m);

CMatrix partial_transpose(const CMatrix& rho, int qubit);
/// Reduced operator on the qubits listed in `keep` (kept in ascending order).
CMatrix partial_trace(const CMatrix& rho, std::span<const int> keep);
CMatrix partial_trace(const CMatrix& rho, std::initializer_list<int> keep);

bool is_hermitian(const CMatrix& m, double tol = kHermitianTolerance);

/// Eigen-decomposition of a Hermitian matrix.
///
/// Eigenvalues are ascending. Each eigenvector is phase-fixed so that its
/// largest-magnitude component (first such index on ties) is real and
/// positive, which makes repeated calls on identical input bit-identical.
struct SpectralDecomposition {
  RVector eigenvalues;
  CMatrix eigenvectors;  // columns

  CMatrix reconstruct() const;
};

SpectralDecomposition eigh(const CMatrix& hermitian);
RVector eigvalsh(const CMatrix& hermitian);

/// f applied to the spectrum of a Hermitian matrix.
template <typename F>
CMatrix spectral_apply(const CMatrix& hermitian, F&& f) {
  const SpectralDecomposition sd = eigh(hermitian);
  RVector mapped(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < mapped.size(); ++i) mapped[i] = f(sd.eigenvalues[i]);
  return sd.eigenvectors * mapped.asDiagonal() * sd.eigenvectors.adjoint();
}

/// Square root of a PSD matrix; eigenvalues above -kPsdTolerance are clamped to zero.
CMatrix sqrtm_psd(const CMatrix& psd);

/// Shannon-style entropy in bits of a nonnegative weight vector, 0·log 0 = 0.
double entropy_bits(std::span<const double> weights);

/// S(ρ) = -Tr ρ log₂ ρ. Throws NumericalError on eigenvalues below -1e-9.
double von_neumann_entropy(const CMatrix& rho);

enum class Metric { trace, hilbert_schmidt, bures, fidelity_based };

Metric parse_metric(const std::string& name);
std::string to_string(Metric metric);

/// Uhlmann fidelity F = (Tr √(√ρ σ √ρ))².
double fidelity(const CMatrix& rho, const CMatrix& sigma);

/// trace: ½‖ρ−σ‖₁; hilbert_schmidt: ‖ρ−σ‖₂²; bures: √(2(1−√F)); fidelity_based: 1−F.
double distance(const CMatrix& rho, const CMatrix& sigma, Metric metric);

/// Schatten-1 norm of a Hermitian matrix.
double trace_norm(const CMatrix& hermitian);

/// General matrix exponential (Padé scaling and squaring).
CMatrix matrix_exponential(const CMatrix& a);
Eigen::Matrix3d matrix_exponential(const Eigen::Matrix3d& a);

/// U = exp(-i·phi·h) for Hermitian h, built from the spectral decomposition so U is unitary to rounding.
CMatrix unitary_of(const CMatrix& h, double phi);

}  // namespace spincorr
