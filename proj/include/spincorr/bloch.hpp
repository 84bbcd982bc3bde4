// Classical Bloch equations in the rotating frame and the single-spin pulse picture.
//
// Angular frequencies are in rad/s, times in seconds. Work is reported in the
// energy units implied by the B0·M0 (or ħω0) product supplied by the caller.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "spincorr/qmatrix.hpp"

namespace spincorr::bloch {

inline constexpr double kHbar = 1.054571817e-34;             // J·s
inline constexpr double kNuclearMagneton = 5.0507837461e-27;  // J/T

struct BlochParams {
  double m0 = 1.0;
  double t1 = 1.0;
  double t2 = 1.0;
  double delta_omega = 0.0;
  double omega1 = 0.0;
  double b0 = 1.0;

  /// Throws ValidationError unless t1 > 0, t2 > 0, t2 <= 2·t1 and m0 >= 0.
  void validate() const;
};

struct Magnetization {
  double mx = 0.0;
  double my = 0.0;
  double mz = 0.0;

  Eigen::Vector3d vec() const { return {mx, my, mz}; }
  static Magnetization from(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }
  double norm() const { return vec().norm(); }
};

struct SpinPulse {
  double omega0 = 0.0;
  double omega1 = 0.0;
  double delta_omega = 0.0;
  double tau = 0.0;

  /// Ω = √(Δω² + ω₁²)
  double omega_big() const;
};

/// The linear system dM/dt + A·M = f.
struct RelaxationSystem {
  Eigen::Matrix3d a;
  Eigen::Vector3d f;
};

RelaxationSystem relaxation_operator(const BlochParams& p);

/// M∞ = A⁻¹f. Throws NumericalError if A is singular.
Magnetization stationary(const BlochParams& p);

/// M(t) = M∞ + exp(-A·t)(M(0) - M∞).
Magnetization evolve(const BlochParams& p, const Magnetization& m_init, double t);

struct TrajectoryPoint {
  double t;
  Magnetization m;
};

std::vector<TrajectoryPoint> trajectory(const BlochParams& p, const Magnetization& m_init,
                                        const std::vector<double>& times);

/// Relaxation-free rotation of the equilibrium magnetization (0, 0, m0) for a time t.
///
/// This is the exact solution of the relaxation-free system above:
///   Mx = 2·m0·(ω₁Δω/Ω²)·sin²(Ωt/2),  My = m0·(ω₁/Ω)·sin(Ωt),
///   Mz = m0·[1 − 2(ω₁²/Ω²)·sin²(Ωt/2)].
/// Ω = 0 returns (0, 0, m0).
Magnetization no_relaxation(double m0, const SpinPulse& sp, double t);

/// The commonly quoted closed form with My = −m0·(ω₁/Ω)·sin(Ωt/2) and
/// Mx = −2·m0·(ω₁Δω/Ω²)·sin²(Ωt/2). Mz agrees with no_relaxation(); Mx has the
/// opposite sign and My uses the half angle, so this form does not conserve |M|.
/// Kept for comparison only; see README "Relaxation-free closed form".
Magnetization no_relaxation_half_angle(double m0, const SpinPulse& sp, double t);

/// W = 2·B0·M0·(ω₁²/Ω²)·sin²(Ωτ/2).
double classical_work(double m0, double b0, const SpinPulse& sp);

/// exp(-i(Ωτ/2)σ_u)|↑⟩ with σ_u = (Δω/Ω)σ_z − (ω₁/Ω)σ_x.
CVector pulse_state(const SpinPulse& sp);

/// ⟨σ_z⟩(τ) = 1 − 2(ω₁²/Ω²)·sin²(Ωτ/2), closed form.
double sigma_z_expect(const SpinPulse& sp);

/// W = ħω₀·(ω₁²/Ω²)·sin²(Ωτ/2).
double quantum_work(const SpinPulse& sp, double hbar = kHbar);

/// ⟨W⟩ = 2·⟨σ_z⟩₀·B0·(ω₁²/Ω²)·sin²(Ωτ/2).
double average_work(double sigma_z_0, double b0, const SpinPulse& sp);

}  // namespace spincorr::bloch
