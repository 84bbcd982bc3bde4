// Operator-sum (Kraus) decoherence channels: phase damping, generalized
// amplitude damping and the two-qubit global phase damping.

#pragma once

#include <span>
#include <vector>

#include "spincorr/states.hpp"

namespace spincorr {

/// CPTP map ρ ↦ Σ_k E_k ρ E_k†. Construction enforces Σ E_k†E_k = 𝕀 to 1e-10.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<CMatrix> kraus_ops);

  static KrausChannel identity(int dim);

  Eigen::Index dim() const { return dim_; }
  const std::vector<CMatrix>& kraus_ops() const { return ops_; }

  /// ‖Σ E_k†E_k − 𝕀‖_F
  double completeness_residual() const;

  CMatrix apply(const CMatrix& rho) const;

 private:
  std::vector<CMatrix> ops_;
  Eigen::Index dim_;
};

namespace channels {

struct PdParams {
  double q = 0.0;

  /// q = 1 − e^{−t/T₂}
  static PdParams from_time(double t, double t2);
};

struct GadParams {
  double gamma = 0.0;
  double p_bias = 0.5;

  /// p = (1 − α)/2 with α = ħω_L/k_BT.
  static double bias_from_alpha(double alpha);
  /// γ = 1 − e^{−t/T₁}, p = (1 − α)/2.
  static GadParams from_time(double t, double t1, double alpha = 0.0);
};

/// E₁ = √(1−q/2)𝕀, E₂ = √(q/2)σ_z. Coherences scale by (1 − q).
KrausChannel pd_channel(const PdParams& params);

/// Four-operator finite-temperature amplitude damping; fixed point diag(p, 1−p).
KrausChannel gad_channel(const GadParams& params);

/// Two-qubit dephasing {√(1−q/2)𝕀₄, √(q/2)σ_z⊗σ_z}: keeps the populations and the
/// cross-diagonal elements (1,4), (2,3) intact and damps every other coherence by (1 − q).
KrausChannel gpd_channel(double q);

/// Kraus set of the product channel ⊗_j per_qubit[j].
KrausChannel tensor_channel(std::span<const KrausChannel> per_qubit);

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

/// Single-qubit channel acting on one qubit of a register.
DensityMatrix apply_on_qubit(const KrausChannel& channel, int qubit, const DensityMatrix& rho);

/// Independent channels on every qubit; per_qubit.size() must equal the qubit count.
DensityMatrix local_apply(std::span<const KrausChannel> per_qubit, const DensityMatrix& rho);

/// The same single-qubit channel on each of n qubits.
std::vector<KrausChannel> replicate(const KrausChannel& channel, int n_qubits);

}  // namespace channels
}  // namespace spincorr
