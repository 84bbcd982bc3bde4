// Correlation quantifiers: classical information measures, quantum mutual
// information, entropic discord (numeric and Bell-diagonal closed form),
// distance-based discord, geometric classical correlation and the
// multipartite global quantum discord.
//
// All entropic quantities are in bits. Discord is asymmetric; unless a side
// is given, the measurement acts on subsystem A (qubit 0).

#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "spincorr/states.hpp"

namespace spincorr {

/// Projective qubit measurement along n̂(θ, φ): Π± = (𝕀 ± n̂·σ)/2.
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;

  Eigen::Vector3d direction() const;
  std::array<CMatrix, 2> projectors() const;
  /// Unitary whose columns are |+n̂⟩, |−n̂⟩.
  CMatrix eigenbasis() const;
  /// Same measurement, angles folded into θ ∈ [0, π], φ ∈ [0, 2π).
  MeasurementBasis canonical() const;
};

enum class Side { A, B, both };

Side parse_side(const std::string& name);
std::string to_string(Side side);

struct CorrelationReport {
  double mutual_info = 0.0;
  double classical = 0.0;
  double discord = 0.0;
  MeasurementBasis optimizer_basis;
  double optimizer_residual = 0.0;
};

struct GeometricResult {
  double value = 0.0;
  MeasurementBasis basis_a;
  MeasurementBasis basis_b;  // meaningful only for Side::both
  double optimizer_residual = 0.0;
};

namespace correlations {

// --- classical information measures -------------------------------------
// Joint distributions are matrices p(x, y) with rows indexed by x.

double shannon(std::span<const double> probs);
double joint_shannon(const Eigen::MatrixXd& pxy);
/// S_{X|Y} = S_{X,Y} − S_Y
double conditional_shannon(const Eigen::MatrixXd& pxy);
/// S_X + S_Y − S_{X,Y}
double mutual_shannon(const Eigen::MatrixXd& pxy);
/// S_X − S_{X|Y}; equals mutual_shannon().
double mutual_shannon_conditional_form(const Eigen::MatrixXd& pxy);

// --- quantum quantities --------------------------------------------------

/// S(ρ_A) + S(ρ_B) − S(ρ_AB) for the cut (part_a | rest).
double quantum_mutual_information(const DensityMatrix& rho, std::span<const int> part_a);
double quantum_mutual_information(const DensityMatrix& rho);  // cut {0} | rest

/// Σ_k P_k ρ P_k for a product measurement with one basis per qubit.
CMatrix measured_state(const CMatrix& rho, std::span<const MeasurementBasis> per_qubit);

/// Two-qubit measured state: one-sided (A or B) or two-sided with bases (a, b).
DensityMatrix measured_state(const DensityMatrix& rho, const MeasurementBasis& basis, Side side);
DensityMatrix measured_state(const DensityMatrix& rho, const MeasurementBasis& basis_a,
                             const MeasurementBasis& basis_b);

/// S(ρ_other) − Σ_i p_i S(ρ_other|i) for a projective measurement on `side` (A or B).
double classical_correlation(const DensityMatrix& rho, const MeasurementBasis& basis, Side side = Side::A);

/// Mutual information minus the measurement-maximized classical correlation.
/// Search: 64×32 (θ, φ) grid, then Nelder-Mead refinement (200 iterations, 1e-8).
CorrelationReport entropic_discord(const DensityMatrix& rho, Side side = Side::A);

/// Bell-diagonal closed forms. Throw UnphysicalState for unphysical triples.
double luo_mutual_information(const CorrelationTriple& c);
double luo_classical(const CorrelationTriple& c);
double luo_discord(const CorrelationTriple& c);

/// Minimal distance from ρ to its measured (classical-quantum or classical-classical) states.
///
/// Metric::trace reports the Schatten one-norm ‖ρ − χ‖₁ (twice the trace distance),
/// the normalization under which a Bell-diagonal state's value is the intermediate
/// of {|c1|, |c2|, |c3|}. Other metrics use distance() unchanged.
GeometricResult geometric_discord(const DensityMatrix& rho, Metric metric, Side side = Side::A);

/// Bell-diagonal trace-metric shortcut: intermediate of {|c1|, |c2|, |c3|}.
double trace_discord_bd(const CorrelationTriple& c);

/// Whether ρ equals bell_diagonal(correlation_triple(ρ)) to 1e-12.
bool is_bell_diagonal(const DensityMatrix& rho);

/// Geometric classical correlation ‖χ − χ_A⊗χ_B‖₁ of the closest classical-classical
/// state χ. Bell-diagonal input takes the max{|c_i|} shortcut.
double geometric_classical(const DensityMatrix& rho);

/// The numeric route of geometric_classical(), used for non-Bell-diagonal input.
double geometric_classical_numeric(const DensityMatrix& rho);

struct GqdResult {
  double value = 0.0;
  std::vector<MeasurementBasis> bases;
  int sweeps = 0;
};

/// min over product measurements Φ of S(ρ‖Φ(ρ)) − Σ_j S(ρ_j‖Φ_j(ρ_j)), in bits, for 2–4 qubits.
/// Search: shared-axis 16×8 grid, then per-qubit grid scans with Nelder-Mead
/// refinement (coordinate descent) until a sweep improves by less than 1e-7.
GqdResult global_quantum_discord_report(const DensityMatrix& rho);
double global_quantum_discord(const DensityMatrix& rho);

/// GQD objective for fixed per-qubit bases.
double gqd_objective(const DensityMatrix& rho, std::span<const MeasurementBasis> bases);

}  // namespace correlations
}  // namespace spincorr
