#include "spincorr/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spincorr {

namespace {

CMatrix pauli_sum(const CorrelationTriple& c, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  CMatrix m = CMatrix::Identity(dim, dim);
  for (int i = 0; i < 3; ++i) {
    if (c[i] != 0.0) m += c[i] * tensor_power(pauli(static_cast<Axis>(i + 1)), n);
  }
  return m / static_cast<double>(dim);
}

void require_two_qubits(const DensityMatrix& rho, const char* what) {
  if (rho.n_qubits() != 2) throw ValidationError(std::string(what) + ": requires a two-qubit state");
}

}  // namespace

DensityMatrix::DensityMatrix(CMatrix matrix) : matrix_(std::move(matrix)), n_qubits_(qubit_count(matrix_)) {
  if (!is_hermitian(matrix_)) throw ValidationError("density matrix is not Hermitian");
  const cplx tr = matrix_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance) {
    throw ValidationError("density matrix trace " + std::to_string(tr.real()) + " differs from 1");
  }
  const double min_ev = eigvalsh(matrix_).minCoeff();
  if (min_ev < -kPsdTolerance) {
    throw UnphysicalState("density matrix has negative eigenvalue " + std::to_string(min_ev), min_ev);
  }
}

double DensityMatrix::purity() const { return (matrix_ * matrix_).trace().real(); }

std::array<double, 3> CorrelationTriple::abs() const {
  return {std::abs(c1), std::abs(c2), std::abs(c3)};
}

double CorrelationTriple::max_abs() const {
  const auto a = abs();
  return *std::max_element(a.begin(), a.end());
}

double CorrelationTriple::intermediate_abs() const {
  auto a = abs();
  std::sort(a.begin(), a.end());
  return a[1];
}

namespace states {

DensityMatrix maximally_mixed(int n_qubits) {
  if (n_qubits < 1) throw ValidationError("maximally_mixed: need at least one qubit");
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix thermal_state(const CMatrix& hamiltonian, double kT) {
  if (!(kT > 0.0)) throw ValidationError("thermal_state: kT must be positive");
  if (!is_hermitian(hamiltonian)) throw ValidationError("thermal_state: Hamiltonian must be Hermitian");
  // shift by the ground energy so the exponentials cannot overflow
  const double ground = eigvalsh(hamiltonian).minCoeff();
  CMatrix boltzmann = spectral_apply(hamiltonian, [&](double e) { return std::exp(-(e - ground) / kT); });
  boltzmann /= boltzmann.trace().real();
  return DensityMatrix(std::move(boltzmann));
}

DensityMatrix high_temperature_state(const CMatrix& hamiltonian, double kT) {
  if (!(kT > 0.0)) throw ValidationError("high_temperature_state: kT must be positive");
  qubit_count(hamiltonian);
  const auto dim = static_cast<int>(hamiltonian.rows());
  // only the traceless part of H shifts populations at first order
  const CMatrix shifted = hamiltonian - hamiltonian.trace() / static_cast<double>(dim) * identity(dim);
  return DensityMatrix(identity(dim) / static_cast<double>(dim) - shifted / (dim * kT));
}

double signal(const DensityMatrix& rho, const CMatrix& observable) {
  if (observable.rows() != rho.dim()) throw ValidationError("signal: dimension mismatch");
  return (observable * rho.matrix()).trace().real();
}

DensityMatrix pseudopure(const CVector& psi, double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ValidationError("pseudopure: epsilon must lie in [0, 1]");
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw ValidationError("pseudopure: state vector must be normalized");
  const Eigen::Index dim = psi.size();
  CMatrix rho = (1.0 - epsilon) / static_cast<double>(dim) * CMatrix::Identity(dim, dim) +
                epsilon * psi * psi.adjoint();
  return DensityMatrix(std::move(rho));
}

CVector singlet() {
  CVector psi = CVector::Zero(4);
  psi[1] = 1.0 / std::numbers::sqrt2;
  psi[2] = -1.0 / std::numbers::sqrt2;
  return psi;
}

DensityMatrix pseudo_singlet(double epsilon) { return pseudopure(singlet(), epsilon); }

bool is_physical(const CorrelationTriple& c, int n_qubits) {
  return eigvalsh(pauli_sum(c, n_qubits)).minCoeff() >= -kPsdTolerance;
}

DensityMatrix bell_diagonal(const CorrelationTriple& c) { return m3n_state(c, 2); }

DensityMatrix m3n_state(const CorrelationTriple& c, int n_qubits) {
  if (n_qubits < 2) throw ValidationError("m3n_state: need at least two qubits");
  if (n_qubits > 5) throw ValidationError("m3n_state: at most five qubits are supported");
  CMatrix rho = pauli_sum(c, n_qubits);
  const double min_ev = eigvalsh(rho).minCoeff();
  if (min_ev < -kPsdTolerance) {
    throw UnphysicalState("correlation triple (" + std::to_string(c.c1) + ", " + std::to_string(c.c2) +
                              ", " + std::to_string(c.c3) + ") is unphysical: eigenvalue " +
                              std::to_string(min_ev),
                          min_ev);
  }
  return DensityMatrix(std::move(rho));
}

PeresResult peres_entangled(const DensityMatrix& rho) {
  require_two_qubits(rho, "peres_entangled");
  const double min_ev = eigvalsh(partial_transpose(rho.matrix(), 1)).minCoeff();
  return {min_ev, min_ev < -1e-10};
}

double pseudopure_entanglement_threshold(double tolerance) {
  double lo = 0.0;  // separable
  double hi = 1.0;  // entangled
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    // decide on the exact sign of the PT spectrum, not the reporting tolerance
    const double min_ev = eigvalsh(partial_transpose(pseudo_singlet(mid).matrix(), 1)).minCoeff();
    (min_ev < 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

ProbeKind parse_probe_kind(const std::string& name) {
  if (name == "quantum") return ProbeKind::quantum;
  if (name == "classical") return ProbeKind::classical;
  throw ValidationError("unknown probe kind '" + name + "'");
}

std::string to_string(ProbeKind kind) { return kind == ProbeKind::quantum ? "quantum" : "classical"; }

DensityMatrix probe_state(double p, ProbeKind kind) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("probe_state: p must lie in [0, 1]");
  const double p2 = p * p;
  CMatrix rho(4, 4);
  if (kind == ProbeKind::quantum) {
    rho << 1 + p2, 0, 0, 2 * p,
           0, 1 - p2, 0, 0,
           0, 0, 1 - p2, 0,
           2 * p, 0, 0, 1 + p2;
  } else {
    rho << 1, p2, p, p,
           p2, 1, p, p,
           p, p, 1, p2,
           p, p, p2, 1;
  }
  return DensityMatrix(rho / 4.0);
}

CorrelationTriple correlation_triple(const DensityMatrix& rho) {
  const int n = rho.n_qubits();
  if (n < 2) throw ValidationError("correlation_triple: need at least two qubits");
  std::array<double, 3> c{};
  for (int i = 0; i < 3; ++i) {
    c[i] = (tensor_power(pauli(static_cast<Axis>(i + 1)), n) * rho.matrix()).trace().real();
  }
  return {c[0], c[1], c[2]};
}

CMatrix direct_measure_unitary(Axis axis) {
  // CNOT with control B and target A maps σ_z⊗σ_z to σ_z⊗𝕀; a local change of
  // basis V (V σ_i V† = σ_z) carries the same identity over to the other axes.
  CMatrix cnot_b_to_a = CMatrix::Zero(4, 4);
  cnot_b_to_a(0, 0) = cnot_b_to_a(2, 2) = 1.0;
  cnot_b_to_a(1, 3) = cnot_b_to_a(3, 1) = 1.0;
  CMatrix hadamard(2, 2);
  hadamard << 1, 1, 1, -1;
  hadamard /= std::numbers::sqrt2;
  CMatrix s_dag(2, 2);
  s_dag << 1, 0, 0, cplx(0, -1);
  CMatrix v = identity(2);
  if (axis == Axis::x) v = hadamard;
  if (axis == Axis::y) v = hadamard * s_dag;
  const CMatrix local = tensor(v, v);
  return local.adjoint() * cnot_b_to_a * local;
}

double direct_measure_ci(const DensityMatrix& rho, Axis axis) {
  require_two_qubits(rho, "direct_measure_ci");
  const CMatrix u = direct_measure_unitary(axis);
  const CMatrix xi = u * rho.matrix() * u.adjoint();
  return (tensor(pauli(axis), identity(2)) * xi).trace().real();
}

double to_deviation_units(double value, double epsilon) {
  if (epsilon == 0.0) throw ValidationError("to_deviation_units: epsilon must be non-zero");
  return value * std::numbers::ln2 / (epsilon * epsilon);
}

}  // namespace states
}  // namespace spincorr
