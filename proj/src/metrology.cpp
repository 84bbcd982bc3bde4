#include "spincorr/metrology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "spincorr/optimize.hpp"

namespace spincorr {

CMatrix SldResult::matrix() const { return l_basis * l_values.asDiagonal() * l_basis.adjoint(); }

namespace metrology {

namespace {

constexpr double kPi = std::numbers::pi;

void require_local_hamiltonian(const CMatrix& h_a) {
  if (h_a.rows() != 2 || h_a.cols() != 2) throw ValidationError("H_A must be a 2x2 operator on qubit A");
  if (!is_hermitian(h_a)) throw ValidationError("H_A must be Hermitian");
}

CMatrix lift(const CMatrix& op_a, Eigen::Index dim) { return tensor(op_a, identity(static_cast<int>(dim / 2))); }

// 2 Σ_{i,l} w_il |⟨ψ_i|H|ψ_l⟩|² with w_il = (q_i − q_l)²/(q_i + q_l).
double fisher_in_eigenbasis(const SpectralDecomposition& sd, const CMatrix& h_full) {
  const CMatrix h = sd.eigenvectors.adjoint() * h_full * sd.eigenvectors;
  const auto& q = sd.eigenvalues;
  double f = 0.0;
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    for (Eigen::Index l = 0; l < q.size(); ++l) {
      const double s = q[i] + q[l];
      if (s <= kFisherFloor) continue;
      const double d = q[i] - q[l];
      f += d * d / s * std::norm(h(i, l));
    }
  }
  return 2.0 * f;
}

CMatrix euler_hamiltonian(double a, double b, double c) {
  const CMatrix u = unitary_of(sigma_z(), 0.5 * a) * unitary_of(sigma_y(), 0.5 * b) * unitary_of(sigma_z(), 0.5 * c);
  return u * sigma_z() * u.adjoint();
}

Eigen::Vector3d bloch_axis(const CMatrix& h) {
  return {0.5 * (h * sigma_x()).trace().real(), 0.5 * (h * sigma_y()).trace().real(),
          0.5 * (h * sigma_z()).trace().real()};
}

}  // namespace

std::vector<BlackBoxSetting> standard_settings() {
  return {{"H1", sigma_z()}, {"H2", (sigma_x() + sigma_y()) / std::numbers::sqrt2}, {"H3", sigma_x()}};
}

DensityMatrix apply_phase(const DensityMatrix& rho, const CMatrix& h_a, double phi) {
  require_local_hamiltonian(h_a);
  if (rho.n_qubits() < 2) throw ValidationError("apply_phase: need subsystem B");
  const CMatrix u = lift(unitary_of(h_a, phi), rho.dim());
  CMatrix out = u * rho.matrix() * u.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

double qfi(const DensityMatrix& rho, const CMatrix& h_a) {
  require_local_hamiltonian(h_a);
  if (rho.n_qubits() < 2) throw ValidationError("qfi: need subsystem B");
  return fisher_in_eigenbasis(eigh(rho.matrix()), lift(h_a, rho.dim()));
}

SldResult sld(const DensityMatrix& rho, const CMatrix& h_a, double phi) {
  const DensityMatrix rho_phi = apply_phase(rho, h_a, phi);
  const CMatrix h = lift(h_a, rho.dim());
  const CMatrix drho = cplx(0, -1) * (h * rho_phi.matrix() - rho_phi.matrix() * h);
  const SpectralDecomposition sd = eigh(rho_phi.matrix());
  const CMatrix d = sd.eigenvectors.adjoint() * drho * sd.eigenvectors;
  const auto& q = sd.eigenvalues;
  CMatrix l = CMatrix::Zero(d.rows(), d.cols());
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    for (Eigen::Index j = 0; j < q.size(); ++j) {
      const double s = q[i] + q[j];
      if (s > kFisherFloor) l(i, j) = 2.0 * d(i, j) / s;
    }
  }
  const SpectralDecomposition ld = eigh(sd.eigenvectors * l * sd.eigenvectors.adjoint());
  return {ld.eigenvalues, ld.eigenvectors};
}

Eigen::Matrix3d ip_matrix(const DensityMatrix& rho) {
  if (rho.n_qubits() < 2) throw ValidationError("interferometric power: subsystem A must be a qubit with a partner");
  const SpectralDecomposition sd = eigh(rho.matrix());
  const auto& q = sd.eigenvalues;
  std::array<CMatrix, 3> s;
  for (int m = 0; m < 3; ++m) {
    s[m] = sd.eigenvectors.adjoint() * lift(pauli(static_cast<Axis>(m + 1)), rho.dim()) * sd.eigenvectors;
  }
  Eigen::Matrix3d mm = Eigen::Matrix3d::Zero();
  for (Eigen::Index i = 0; i < q.size(); ++i) {
    for (Eigen::Index l = 0; l < q.size(); ++l) {
      const double sum = q[i] + q[l];
      if (sum <= kFisherFloor) continue;
      const double w = (q[i] - q[l]) * (q[i] - q[l]) / sum;
      if (w == 0.0) continue;
      for (int m = 0; m < 3; ++m) {
        for (int n = 0; n < 3; ++n) mm(m, n) += 0.5 * w * (s[m](i, l) * s[n](l, i)).real();
      }
    }
  }
  return 0.5 * (mm + mm.transpose());
}

double interferometric_power(const DensityMatrix& rho) {
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(ip_matrix(rho), Eigen::EigenvaluesOnly);
  return std::max(0.0, es.eigenvalues()[0]);
}

IpOracleResult interferometric_power_bruteforce(const DensityMatrix& rho, std::size_t samples, std::size_t starts) {
  if (samples == 0 || starts == 0) throw ValidationError("IP oracle: need samples and starts");
  const SpectralDecomposition sd = eigh(rho.matrix());
  auto quarter_f = [&](const std::vector<double>& x) {
    return 0.25 * fisher_in_eigenbasis(sd, lift(euler_hamiltonian(x[0], x[1], x[2]), rho.dim()));
  };
  auto point = [](std::size_t i) {
    return std::vector<double>{2.0 * kPi * opt::radical_inverse(i + 1, 2), kPi * opt::radical_inverse(i + 1, 3),
                               2.0 * kPi * opt::radical_inverse(i + 1, 5)};
  };
  const std::vector<double> values = opt::parallel_map(samples, [&](std::size_t i) { return quarter_f(point(i)); });
  std::vector<std::size_t> order(samples);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  IpOracleResult best;
  best.samples = samples;
  best.value = values[order[0]];
  std::vector<double> best_x = point(order[0]);
  for (std::size_t k = 0; k < std::min(starts, samples); ++k) {
    const auto r = opt::nelder_mead(quarter_f, point(order[k]), 0.1);
    if (r.value < best.value) {
      best.value = r.value;
      best_x = r.x;
    }
  }
  best.axis = bloch_axis(euler_hamiltonian(best_x[0], best_x[1], best_x[2]));
  return best;
}

EstimationOutcome estimate(const DensityMatrix& rho, const CMatrix& h_a, double phi0, int nu,
                           const EstimateOptions& options) {
  if (nu < 1) throw ValidationError("estimate: nu must be a positive repetition count");
  EstimationOutcome out;
  out.f = qfi(rho, h_a);
  if (out.f <= kFisherFloor) {
    throw PathologicalSetting("estimate: quantum Fisher information " + std::to_string(out.f) +
                              " vanishes; the probe carries no phase information for this H_A");
  }
  const SldResult l = sld(rho, h_a, phi0);
  const CMatrix rho0 = apply_phase(rho, h_a, phi0).matrix();
  const Eigen::Index dim = rho0.rows();

  auto populations = [&](const CMatrix& m) {
    std::vector<double> d(static_cast<std::size_t>(dim));
    for (Eigen::Index j = 0; j < dim; ++j) {
      d[static_cast<std::size_t>(j)] = l.l_basis.col(j).dot(m * l.l_basis.col(j)).real();
    }
    return d;
  };

  out.d_values = populations(rho0);
  if (options.shot_noise) {
    std::mt19937_64 rng(options.seed);
    std::vector<double> weights(out.d_values.size());
    std::transform(out.d_values.begin(), out.d_values.end(), weights.begin(),
                   [](double d) { return std::max(0.0, d); });
    std::discrete_distribution<std::size_t> draw(weights.begin(), weights.end());
    std::vector<double> counts(out.d_values.size(), 0.0);
    for (int k = 0; k < nu; ++k) counts[draw(rng)] += 1.0;
    for (auto& c : counts) c /= nu;
    out.d_values = counts;
  }
  out.l_values.assign(l.l_values.data(), l.l_values.data() + l.l_values.size());

  auto theta = [&](double phi) {
    const auto d_th = populations(apply_phase(rho, h_a, phi).matrix());
    double s = 0.0;
    for (std::size_t j = 0; j < d_th.size(); ++j) s += (out.d_values[j] - d_th[j]) * (out.d_values[j] - d_th[j]);
    return s;
  };
  constexpr int kScan = 180;
  constexpr double hi = 0.5 * kPi;
  int best = 0;
  double best_value = theta(0.0);
  for (int i = 1; i <= kScan; ++i) {
    const double v = theta(hi * i / kScan);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  const double h = hi / kScan;
  out.mean_phi = opt::golden_section(theta, std::max(0.0, hi * best / kScan - h), std::min(hi, hi * best / kScan + h),
                                     1e-9);

  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t j = 0; j < out.d_values.size(); ++j) {
    m1 += out.d_values[j] * out.l_values[j];
    m2 += out.d_values[j] * out.l_values[j] * out.l_values[j];
  }
  out.var_phi = (m2 - m1 * m1) / (nu * out.f * out.f);
  return out;
}

std::vector<SuiteRow> blackbox_suite(const std::vector<double>& p_grid, double phi0, int nu) {
  const auto settings = standard_settings();
  std::vector<SuiteRow> rows;
  for (states::ProbeKind kind : {states::ProbeKind::quantum, states::ProbeKind::classical}) {
    for (double p : p_grid) {
      for (const auto& s : settings) rows.push_back({kind, p, s.name, 0.0, 0.0, false, 0.0, 0.0});
    }
  }
  opt::parallel_for(rows.size(), [&](std::size_t i) {
    SuiteRow& row = rows[i];
    const DensityMatrix rho = states::probe_state(row.p, row.probe);
    const auto& h = settings[i % settings.size()].h_a;
    row.f = qfi(rho, h);
    row.ip = interferometric_power(rho);
    try {
      const auto e = estimate(rho, h, phi0, nu);
      row.mean_phi = e.mean_phi;
      row.var_phi = e.var_phi;
    } catch (const PathologicalSetting&) {
      row.pathological = true;
    }
  });
  return rows;
}

}  // namespace metrology
}  // namespace spincorr
