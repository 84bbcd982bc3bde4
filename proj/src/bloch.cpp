#include "spincorr/bloch.hpp"

#include <cmath>
#include <string>

namespace spincorr::bloch {

namespace {

// (ω₁²/Ω²)·sin²(Ωτ/2), the transition weight shared by every work formula.
double flip_weight(const SpinPulse& sp, double t) {
  const double big = sp.omega_big();
  if (big == 0.0) return 0.0;
  const double s = std::sin(0.5 * big * t);
  return (sp.omega1 * sp.omega1) / (big * big) * s * s;
}

}  // namespace

void BlochParams::validate() const {
  if (!(t1 > 0.0) || !(t2 > 0.0)) throw ValidationError("bloch: T1 and T2 must be positive");
  if (t2 > 2.0 * t1) throw ValidationError("bloch: T2 must not exceed 2*T1");
  if (!(m0 >= 0.0)) throw ValidationError("bloch: M0 must be non-negative");
}

double SpinPulse::omega_big() const { return std::hypot(delta_omega, omega1); }

RelaxationSystem relaxation_operator(const BlochParams& p) {
  p.validate();
  RelaxationSystem sys;
  sys.a << 1.0 / p.t2, -p.delta_omega, 0.0,
           p.delta_omega, 1.0 / p.t2, -p.omega1,
           0.0, p.omega1, 1.0 / p.t1;
  sys.f << 0.0, 0.0, p.m0 / p.t1;
  return sys;
}

Magnetization stationary(const BlochParams& p) {
  const RelaxationSystem sys = relaxation_operator(p);
  Eigen::FullPivLU<Eigen::Matrix3d> lu(sys.a);
  if (!lu.isInvertible()) throw NumericalError("bloch: relaxation matrix is singular");
  return Magnetization::from(lu.solve(sys.f));
}

Magnetization evolve(const BlochParams& p, const Magnetization& m_init, double t) {
  if (t < 0.0) throw ValidationError("bloch: evolution time must be non-negative");
  if (t == 0.0) return m_init;
  const RelaxationSystem sys = relaxation_operator(p);
  const Eigen::Vector3d m_inf = stationary(p).vec();
  const Eigen::Matrix3d decay = matrix_exponential(Eigen::Matrix3d(-sys.a * t));
  return Magnetization::from(m_inf + decay * (m_init.vec() - m_inf));
}

std::vector<TrajectoryPoint> trajectory(const BlochParams& p, const Magnetization& m_init,
                                        const std::vector<double>& times) {
  std::vector<TrajectoryPoint> out;
  out.reserve(times.size());
  for (double t : times) out.push_back({t, evolve(p, m_init, t)});
  return out;
}

Magnetization no_relaxation(double m0, const SpinPulse& sp, double t) {
  const double big = sp.omega_big();
  if (big == 0.0) return {0.0, 0.0, m0};
  const double half = std::sin(0.5 * big * t);
  return {2.0 * m0 * sp.omega1 * sp.delta_omega / (big * big) * half * half,
          m0 * sp.omega1 / big * std::sin(big * t),
          m0 * (1.0 - 2.0 * flip_weight(sp, t))};
}

Magnetization no_relaxation_half_angle(double m0, const SpinPulse& sp, double t) {
  const double big = sp.omega_big();
  if (big == 0.0) return {0.0, 0.0, m0};
  const double half = std::sin(0.5 * big * t);
  return {-2.0 * m0 * sp.omega1 * sp.delta_omega / (big * big) * half * half,
          -m0 * sp.omega1 / big * half,
          m0 * (1.0 - 2.0 * flip_weight(sp, t))};
}

double classical_work(double m0, double b0, const SpinPulse& sp) {
  return 2.0 * b0 * m0 * flip_weight(sp, sp.tau);
}

CVector pulse_state(const SpinPulse& sp) {
  CVector up(2);
  up << 1.0, 0.0;
  const double big = sp.omega_big();
  if (big == 0.0) return up;
  const CMatrix sigma_u = (sp.delta_omega / big) * sigma_z() - (sp.omega1 / big) * sigma_x();
  return unitary_of(sigma_u, 0.5 * big * sp.tau) * up;
}

double sigma_z_expect(const SpinPulse& sp) { return 1.0 - 2.0 * flip_weight(sp, sp.tau); }

double quantum_work(const SpinPulse& sp, double hbar) {
  return hbar * sp.omega0 * flip_weight(sp, sp.tau);
}

double average_work(double sigma_z_0, double b0, const SpinPulse& sp) {
  return 2.0 * sigma_z_0 * b0 * flip_weight(sp, sp.tau);
}

}  // namespace spincorr::bloch
