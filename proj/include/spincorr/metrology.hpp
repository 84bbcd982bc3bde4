// Black-box phase estimation with a local unitary e^{−iφH_A}⊗𝕀: quantum
// Fisher information, symmetric logarithmic derivative, interferometric power
// and the optimal SLD-based estimator.
//
// H_A is a 2×2 Hermitian operator on qubit 0; the remaining qubits form B.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spincorr/states.hpp"

namespace spincorr {

/// The setting gives no phase information (F ≤ 1e-12), e.g. a probe commuting with H_A.
class PathologicalSetting : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct SldResult {
  RVector l_values;  // eigenvalues l_j
  CMatrix l_basis;   // columns |λ_j⟩

  CMatrix matrix() const;
};

struct EstimationOutcome {
  std::vector<double> d_values;
  std::vector<double> l_values;
  double f = 0.0;
  double mean_phi = 0.0;
  double var_phi = 0.0;
};

struct EstimateOptions {
  /// Replace exact d_j by multinomial frequencies of ν draws.
  bool shot_noise = false;
  std::uint64_t seed = 0;
};

struct BlackBoxSetting {
  std::string name;
  CMatrix h_a;
};

struct SuiteRow {
  states::ProbeKind probe = states::ProbeKind::quantum;
  double p = 0.0;
  std::string setting;
  double f = 0.0;
  double ip = 0.0;
  bool pathological = false;
  double mean_phi = 0.0;  // meaningful only when !pathological
  double var_phi = 0.0;
};

struct IpOracleResult {
  double value = 0.0;
  Eigen::Vector3d axis = Eigen::Vector3d::UnitZ();
  std::size_t samples = 0;
};

namespace metrology {

inline constexpr double kFisherFloor = 1e-12;

/// H^(1) = σ_z, H^(2) = (σ_x + σ_y)/√2, H^(3) = σ_x.
std::vector<BlackBoxSetting> standard_settings();

/// (e^{−iφH_A}⊗𝕀) ρ (e^{−iφH_A}⊗𝕀)†
DensityMatrix apply_phase(const DensityMatrix& rho, const CMatrix& h_a, double phi);

/// F = 2 Σ_{i,l} (q_i − q_l)²/(q_i + q_l) |⟨ψ_i|H_A⊗𝕀|ψ_l⟩|², terms with q_i + q_l ≤ 1e-12 skipped.
/// Pure states give 4·Var(H).
double qfi(const DensityMatrix& rho, const CMatrix& h_a);

/// SLD of ρ_φ = apply_phase(ρ, H_A, φ): L_il = 2(∂_φρ_φ)_il/(q_i + q_l) in the ρ_φ eigenbasis.
SldResult sld(const DensityMatrix& rho, const CMatrix& h_a, double phi);

/// M_mn = ½ Σ_{i,l} (q_i − q_l)²/(q_i + q_l) Re[⟨ψ_i|σ_m⊗𝕀|ψ_l⟩⟨ψ_l|σ_n⊗𝕀|ψ_i⟩], so that
/// ¼F(n̂·σ) = n̂ᵀMn̂.
Eigen::Matrix3d ip_matrix(const DensityMatrix& rho);

/// Minimal eigenvalue of ip_matrix(), clamped at zero (spectrum {±1} of H_A).
double interferometric_power(const DensityMatrix& rho);

/// ¼ min F over H_A = n̂·σ: `samples` Halton points in three Euler angles, then
/// Nelder-Mead from the best `starts`.
IpOracleResult interferometric_power_bruteforce(const DensityMatrix& rho, std::size_t samples = 1000,
                                                std::size_t starts = 5);

/// SLD-eigenbasis estimator at φ₀ with ν repetitions. Throws PathologicalSetting if F ≤ 1e-12.
EstimationOutcome estimate(const DensityMatrix& rho, const CMatrix& h_a, double phi0, int nu,
                           const EstimateOptions& options = {});

/// Every (probe kind, p, setting) combination; pathological entries are flagged, not thrown.
std::vector<SuiteRow> blackbox_suite(const std::vector<double>& p_grid, double phi0, int nu);

}  // namespace metrology
}  // namespace spincorr
