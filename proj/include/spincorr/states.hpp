// State families: thermal and pseudopure states, Bell-diagonal and M³_N
// states, metrology probe pairs, entanglement tests and correlation readout.

#pragma once

#include <array>
#include <string>

#include "spincorr/qmatrix.hpp"

namespace spincorr {

/// Trace-one, Hermitian, positive semidefinite 2^n × 2^n matrix.
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-10), unit trace (1e-10) and PSD (eigenvalues >= -1e-9).
  explicit DensityMatrix(CMatrix matrix);

  int n_qubits() const { return n_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const CMatrix& matrix() const { return matrix_; }
  double purity() const;

 private:
  CMatrix matrix_;
  int n_qubits_;
};

/// Raised when a requested state would have a negative eigenvalue.
class UnphysicalState : public NumericalError {
 public:
  UnphysicalState(const std::string& what, double eigenvalue)
      : NumericalError(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// (c1, c2, c3) with c_i = Tr(ρ σ_i^{⊗N}).
struct CorrelationTriple {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  double operator[](int i) const { return i == 0 ? c1 : (i == 1 ? c2 : c3); }
  std::array<double, 3> abs() const;
  double max_abs() const;
  /// Middle value of {|c1|, |c2|, |c3|}.
  double intermediate_abs() const;
};

namespace states {

DensityMatrix maximally_mixed(int n_qubits);

/// e^{-H/kT}/Z for a Hermitian H (energy units consistent with kT).
DensityMatrix thermal_state(const CMatrix& hamiltonian, double kT);

/// First-order high-temperature expansion 𝕀/2^N − H/(2^N kT); valid while ‖H‖ ≪ kT.
DensityMatrix high_temperature_state(const CMatrix& hamiltonian, double kT);

/// Tr(σ_u ρ) for an observable σ_u on the full register.
double signal(const DensityMatrix& rho, const CMatrix& observable);

/// (1−ε)/2^N·𝕀 + ε|ψ⟩⟨ψ|. ψ must be normalized, ε ∈ [0, 1].
DensityMatrix pseudopure(const CVector& psi, double epsilon);

/// Singlet (|01⟩ − |10⟩)/√2.
CVector singlet();

/// pseudopure(singlet(), ε): diagonal {(1−ε)/4, (1+ε)/4, (1+ε)/4, (1−ε)/4},
/// coherence −ε/2 between |01⟩ and |10⟩.
DensityMatrix pseudo_singlet(double epsilon);

/// Whether ¼[𝕀 + Σ c_i σ_i⊗σ_i] is PSD (spectral check, tolerance 1e-9).
bool is_physical(const CorrelationTriple& c, int n_qubits = 2);

/// ¼[𝕀 + Σ c_i σ_i⊗σ_i]. Throws UnphysicalState with the offending eigenvalue.
DensityMatrix bell_diagonal(const CorrelationTriple& c);

/// 2^{−N}[𝕀 + Σ c_i σ_i^{⊗N}], N >= 2.
DensityMatrix m3n_state(const CorrelationTriple& c, int n_qubits);

struct PeresResult {
  double negative_eigenvalue;  // smallest eigenvalue of the partial transpose
  bool entangled;
};

/// Partial-transpose test on a two-qubit state; entangled iff min eigenvalue < −1e-10.
PeresResult peres_entangled(const DensityMatrix& rho);

/// Largest ε for which pseudo_singlet(ε) is still separable, by bisection on [0, 1].
double pseudopure_entanglement_threshold(double tolerance = 1e-12);

enum class ProbeKind { quantum, classical };

ProbeKind parse_probe_kind(const std::string& name);
std::string to_string(ProbeKind kind);

/// Discordant (quantum) or classically correlated probe of purity parameter p ∈ [0, 1].
/// Both satisfy Tr ρ² = ¼(1 + p²)².
DensityMatrix probe_state(double p, ProbeKind kind);

/// c_i = Tr(ρ σ_i^{⊗N}).
CorrelationTriple correlation_triple(const DensityMatrix& rho);

/// Two-qubit unitary U_i with U_i†(σ_i⊗𝕀)U_i = σ_i⊗σ_i.
CMatrix direct_measure_unitary(Axis axis);

/// c_i read as the single-qubit signal Tr[(σ_i⊗𝕀) U_i ρ U_i†].
double direct_measure_ci(const DensityMatrix& rho, Axis axis);

/// value / (ε²/ln 2): expresses a deviation-matrix quantity in units of (ε²/ln2) bit.
double to_deviation_units(double value, double epsilon);

}  // namespace states
}  // namespace spincorr
