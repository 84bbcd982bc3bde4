// Correlation dynamics under decoherence: Bell-diagonal phase-damping
// trajectories, general channel families, sudden-change detection, freezing
// and the even/odd plateau behaviour of global quantum discord.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "spincorr/channels.hpp"
#include "spincorr/correlations.hpp"

namespace spincorr {

/// Sampled evolution. `times` is the abscissa (seconds unless `abscissa` says otherwise,
/// e.g. the damping parameter p); every series has one value per sample.
struct Trajectory {
  std::string abscissa = "t";
  std::vector<double> times;
  std::vector<CorrelationTriple> triples;  // empty when the trajectory has no two-qubit triple
  std::vector<CMatrix> states;
  std::vector<std::pair<std::string, std::vector<double>>> quantifiers;

  std::size_t size() const { return times.size(); }
  bool has_series(const std::string& name) const;
  /// Named quantifier, or "c1"/"c2"/"c3" for the triple components.
  std::vector<double> series(const std::string& name) const;
  void set_series(const std::string& name, std::vector<double> values);
  /// Throws ValidationError unless times strictly increase and all lengths agree.
  void validate() const;
};

enum class ChangeKind { ordering_switch, slope_discontinuity };

std::string to_string(ChangeKind kind);

struct ChangePoint {
  double time = 0.0;
  ChangeKind kind = ChangeKind::slope_discontinuity;
  std::string series;
};

struct FreezeReport {
  bool frozen = false;
  double t_star = 0.0;
  double plateau_relative_variation = 0.0;
  bool decreasing_after = false;
  std::optional<double> observed_t_star;  // first detected change point of the series, if any
};

enum class Quantifier {
  mutual_info,
  classical,
  discord,
  luo_classical,
  luo_discord,
  trace_discord,
  hs_discord,
  bures_discord,
  fidelity_discord,
  geometric_classical,
  gqd,
};

Quantifier parse_quantifier(const std::string& name);
std::string to_string(Quantifier q);

enum class DynamicsCase { case_i, case_ii, case_iii };

std::string to_string(DynamicsCase c);

namespace dynamics {

using ChannelFamily = std::function<KrausChannel(double t)>;

enum class Evolution { snapshot, chained };

struct DetectorOptions {
  double slope_tolerance = 0.05;
};

inline constexpr double kPlateauThreshold = 1e-4;

std::vector<double> uniform_grid(double t0, double t1, int points);

/// 200 uniform points over [0, 5/(2γ)].
std::vector<double> default_time_grid(double gamma, int points = 200);

/// Closed form under local PD with q(t) = 1 − e^{−γt}: c1, c2 ∝ e^{−2γt}, c3 fixed.
Trajectory evolve_bd_pd(const CorrelationTriple& c0, double gamma, const std::vector<double>& times);

/// Same closed form parameterized by the per-qubit damping p = 1 − e^{−γt} (abscissa "p").
Trajectory evolve_bd_pd_damping(const CorrelationTriple& c0, const std::vector<double>& p_values);

/// Local PD channels on every qubit, q_j(t) = 1 − e^{−γ_j t}.
ChannelFamily local_pd_family(std::vector<double> gammas);
ChannelFamily local_pd_family(int n_qubits, double gamma);

/// Local GAD channels on every qubit, γ(t) = 1 − e^{−t/T₁}, bias p = (1 − α)/2.
ChannelFamily local_gad_family(int n_qubits, double t1, double alpha = 0.0);

/// Two-qubit global phase damping with q(t) = 1 − e^{−γt}.
ChannelFamily gpd_family(double gamma);

/// Identity channel on n qubits at every time.
ChannelFamily identity_family(int n_qubits);

/// ρ(t) = Φ_t(ρ₀) (snapshot), or Φ_{t_k−t_{k−1}} applied step by step (chained;
/// only meaningful for semigroup families). Triples are extracted per sample.
Trajectory evolve_general(const DensityMatrix& rho0, const ChannelFamily& family, const std::vector<double>& times,
                          Evolution mode = Evolution::snapshot);

/// Effective rate for the t* formula with unequal per-qubit rates: c1 decays as
/// e^{−(γ_A+γ_B)t}, so γ_eff is their mean.
double effective_gamma(const std::vector<double>& gammas);

/// Evaluates the quantifiers at every sample (in parallel over samples).
void add_quantifiers(Trajectory& traj, const std::vector<Quantifier>& quantifiers);

/// Ordering switches of {|c_i|} relevant to the series plus isolated slope kinks;
/// candidates closer than one grid step are merged.
std::vector<ChangePoint> detect_sudden_changes(const Trajectory& traj, const std::string& series,
                                               const DetectorOptions& options = {});

/// t* = −ln(|c3|/|c1|)/(2γ); frozen iff |c1| = 1 and c2 = −sign(c1)·c3 (both to 1e-9).
FreezeReport freezing_time(const CorrelationTriple& c0, double gamma);

/// Evaluates the quantifier along the BD-PD trajectory and checks the plateau before t*
/// and strict decrease after it.
FreezeReport verify_freezing(const CorrelationTriple& c0, double gamma, Quantifier quantifier,
                             const std::vector<double>& times);

/// Plateau check on an already evaluated series.
FreezeReport assess_plateau(const std::vector<double>& times, const std::vector<double>& values, double t_star);

/// case_ii if c3 = 0; case_i if |c3| >= |c1|, |c2|; otherwise case_iii.
DynamicsCase classify_dynamics(const CorrelationTriple& c0);

struct ParityScan {
  bool plateau_detected = false;
  double t_star = 0.0;
  double plateau_relative_variation = 0.0;
  Trajectory trajectory;  // carries the "gqd" series
};

/// GQD of the M³_N state under local PD on all N qubits. c1, c2 decay as e^{−Nγt},
/// so the plateau window ends at t* = ln(|c1|/|c3|)/(Nγ).
ParityScan gqd_parity_scan(int n_qubits, const CorrelationTriple& c0, double gamma, const std::vector<double>& times);

}  // namespace dynamics
}  // namespace spincorr
