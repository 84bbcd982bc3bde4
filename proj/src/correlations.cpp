#include "spincorr/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "spincorr/optimize.hpp"

namespace spincorr {

namespace {

constexpr double kPi = std::numbers::pi;

// Angular search grids. Both include the coordinate axes exactly.
constexpr int kDiscordTheta = 64;
constexpr int kDiscordPhi = 32;
constexpr int kGqdTheta = 16;
constexpr int kGqdPhi = 8;
constexpr double kGqdImprovement = 1e-7;
constexpr int kGqdMaxSweeps = 50;

double xlogx_sum(std::initializer_list<double> xs) {
  double s = 0.0;
  for (double x : xs) {
    if (x > 0.0) s += x * std::log2(x);
  }
  return s;
}

void check_distribution(std::span<const double> probs) {
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ValidationError("probability distribution has a negative or NaN entry");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw ValidationError("probability distribution sums to " + std::to_string(total));
  }
}

void check_distribution(const Eigen::MatrixXd& pxy) {
  check_distribution(std::span<const double>(pxy.data(), static_cast<std::size_t>(pxy.size())));
}

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

void require_two_qubits(const DensityMatrix& rho, const char* what) {
  if (rho.n_qubits() != 2) throw ValidationError(std::string(what) + ": requires a two-qubit state");
}

// Eigenvalues of a 2×2 Hermitian matrix.
std::array<double, 2> eig2(const Eigen::Matrix2cd& m) {
  const double mean = 0.5 * (m(0, 0).real() + m(1, 1).real());
  const double half_diff = 0.5 * (m(0, 0).real() - m(1, 1).real());
  const double r = std::hypot(half_diff, std::abs(m(0, 1)));
  return {mean - r, mean + r};
}

// Unnormalized states of the unmeasured qubit after outcome k of a
// projective measurement on `side` (A or B) of a two-qubit ρ.
std::array<Eigen::Matrix2cd, 2> conditional_states(const CMatrix& rho, const MeasurementBasis& basis, Side side) {
  const auto proj = basis.projectors();
  std::array<Eigen::Matrix2cd, 2> out;
  for (int k = 0; k < 2; ++k) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    for (int x = 0; x < 2; ++x) {
      for (int y = 0; y < 2; ++y) {
        for (int u = 0; u < 2; ++u) {
          for (int v = 0; v < 2; ++v) {
            if (side == Side::A) {
              // Tr_A[(Π⊗𝕀)ρ](u, v) = Σ_{x,y} Π(x, y) ρ(y u, x v)
              m(u, v) += proj[k](x, y) * rho(2 * y + u, 2 * x + v);
            } else {
              // Tr_B[(𝕀⊗Π)ρ](u, v) = Σ_{x,y} Π(x, y) ρ(u y, v x)
              m(u, v) += proj[k](x, y) * rho(2 * u + y, 2 * v + x);
            }
          }
        }
      }
    }
    out[k] = m;
  }
  return out;
}

// Σ_k p_k S(ρ|k) for a one-sided measurement.
double conditional_entropy(const CMatrix& rho, const MeasurementBasis& basis, Side side) {
  double s = 0.0;
  for (const auto& m : conditional_states(rho, basis, side)) {
    const auto ev = eig2(m);
    const double p = m.trace().real();
    s += -xlogx_sum({ev[0], ev[1]}) + xlogx_sum({p});
  }
  return s;
}

struct SphereSearch {
  MeasurementBasis basis;
  double value = std::numeric_limits<double>::infinity();
  double residual = 0.0;
};

// Grid over (θ, φ) followed by Nelder-Mead from the best grid point.
template <typename F>
SphereSearch minimize_on_sphere(F&& objective, int n_theta, int n_phi) {
  SphereSearch best;
  for (int i = 0; i < n_theta; ++i) {
    for (int j = 0; j < n_phi; ++j) {
      const MeasurementBasis b{kPi * i / n_theta, 2.0 * kPi * j / n_phi};
      const double v = objective(b);
      if (v < best.value) {
        best.value = v;
        best.basis = b;
      }
    }
  }
  const auto refined = opt::nelder_mead(
      [&](const std::vector<double>& x) { return objective(MeasurementBasis{x[0], x[1]}); },
      {best.basis.theta, best.basis.phi}, 0.5 * kPi / n_theta);
  best.residual = refined.residual;
  if (refined.value < best.value) {
    best.value = refined.value;
    best.basis = MeasurementBasis{refined.x[0], refined.x[1]}.canonical();
  }
  return best;
}

double geometric_objective(const CMatrix& rho, const CMatrix& chi, Metric metric) {
  return metric == Metric::trace ? trace_norm(rho - chi) : distance(rho, chi, metric);
}

CMatrix project_two_qubit(const CMatrix& rho, const MeasurementBasis* a, const MeasurementBasis* b) {
  CMatrix out = rho;
  if (a != nullptr) {
    const auto pa = a->projectors();
    const CMatrix p0 = tensor(pa[0], identity(2));
    const CMatrix p1 = tensor(pa[1], identity(2));
    out = p0 * out * p0 + p1 * out * p1;
  }
  if (b != nullptr) {
    const auto pb = b->projectors();
    const CMatrix p0 = tensor(identity(2), pb[0]);
    const CMatrix p1 = tensor(identity(2), pb[1]);
    out = p0 * out * p0 + p1 * out * p1;
  }
  return out;
}

// Diagonal of U†ρU for U = ⊗_j eigenbasis(bases[j]).
std::vector<double> product_basis_populations(const CMatrix& rho, std::span<const MeasurementBasis> bases) {
  CMatrix u = bases[0].eigenbasis();
  for (std::size_t j = 1; j < bases.size(); ++j) u = tensor(u, bases[j].eigenbasis());
  const CMatrix ru = rho * u;
  std::vector<double> d(static_cast<std::size_t>(u.cols()));
  for (Eigen::Index k = 0; k < u.cols(); ++k) {
    d[static_cast<std::size_t>(k)] = std::max(0.0, u.col(k).dot(ru.col(k)).real());
  }
  return d;
}

struct GqdContext {
  const CMatrix& rho;
  double entropy_total;
  std::vector<CMatrix> marginals;
  std::vector<double> marginal_entropy;

  explicit GqdContext(const DensityMatrix& state) : rho(state.matrix()) {
    const int n = state.n_qubits();
    entropy_total = von_neumann_entropy(rho);
    for (int j = 0; j < n; ++j) {
      const int keep[] = {j};
      marginals.push_back(partial_trace(rho, keep));
      marginal_entropy.push_back(von_neumann_entropy(marginals.back()));
    }
  }

  double operator()(std::span<const MeasurementBasis> bases) const {
    const auto d = product_basis_populations(rho, bases);
    double value = entropy_bits(d) - entropy_total;
    for (std::size_t j = 0; j < bases.size(); ++j) {
      const CMatrix u = bases[j].eigenbasis();
      const double p0 = std::max(0.0, u.col(0).dot(marginals[j] * u.col(0)).real());
      const double p1 = std::max(0.0, u.col(1).dot(marginals[j] * u.col(1)).real());
      value -= entropy_bits(std::array<double, 2>{p0, p1}) - marginal_entropy[j];
    }
    return value;
  }
};

}  // namespace

Eigen::Vector3d MeasurementBasis::direction() const {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

std::array<CMatrix, 2> MeasurementBasis::projectors() const {
  const Eigen::Vector3d n = direction();
  const CMatrix ns = n.x() * sigma_x() + n.y() * sigma_y() + n.z() * sigma_z();
  return {0.5 * (identity(2) + ns), 0.5 * (identity(2) - ns)};
}

CMatrix MeasurementBasis::eigenbasis() const {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const cplx e = std::polar(1.0, phi);
  CMatrix u(2, 2);
  u << c, -std::conj(e) * s,
       e * s, c;
  return u;
}

MeasurementBasis MeasurementBasis::canonical() const {
  const Eigen::Vector3d n = direction();
  const double th = std::acos(std::clamp(n.z(), -1.0, 1.0));
  double ph = std::atan2(n.y(), n.x());
  if (ph < 0.0) ph += 2.0 * kPi;
  return {th, ph};
}

Side parse_side(const std::string& name) {
  if (name == "A" || name == "a") return Side::A;
  if (name == "B" || name == "b") return Side::B;
  if (name == "both") return Side::both;
  throw ValidationError("unknown measurement side '" + name + "'");
}

std::string to_string(Side side) {
  switch (side) {
    case Side::A: return "A";
    case Side::B: return "B";
    case Side::both: return "both";
  }
  return "A";
}

namespace correlations {

double shannon(std::span<const double> probs) {
  check_distribution(probs);
  return entropy_bits(probs);
}

double joint_shannon(const Eigen::MatrixXd& pxy) {
  check_distribution(pxy);
  return entropy_bits(std::span<const double>(pxy.data(), static_cast<std::size_t>(pxy.size())));
}

double conditional_shannon(const Eigen::MatrixXd& pxy) {
  const double sxy = joint_shannon(pxy);
  const Eigen::VectorXd py = pxy.colwise().sum().transpose();
  return sxy - entropy_bits(to_vector(py));
}

double mutual_shannon(const Eigen::MatrixXd& pxy) {
  const double sxy = joint_shannon(pxy);
  const Eigen::VectorXd px = pxy.rowwise().sum();
  const Eigen::VectorXd py = pxy.colwise().sum().transpose();
  return entropy_bits(to_vector(px)) + entropy_bits(to_vector(py)) - sxy;
}

double mutual_shannon_conditional_form(const Eigen::MatrixXd& pxy) {
  const Eigen::VectorXd px = pxy.rowwise().sum();
  return entropy_bits(to_vector(px)) - conditional_shannon(pxy);
}

double quantum_mutual_information(const DensityMatrix& rho, std::span<const int> part_a) {
  const int n = rho.n_qubits();
  std::vector<bool> in_a(static_cast<std::size_t>(n), false);
  for (int q : part_a) {
    if (q < 0 || q >= n) throw ValidationError("quantum_mutual_information: qubit index out of range");
    if (in_a[static_cast<std::size_t>(q)]) throw ValidationError("quantum_mutual_information: repeated qubit index");
    in_a[static_cast<std::size_t>(q)] = true;
  }
  std::vector<int> a, b;
  for (int q = 0; q < n; ++q) (in_a[static_cast<std::size_t>(q)] ? a : b).push_back(q);
  if (a.empty() || b.empty()) throw ValidationError("quantum_mutual_information: both parts must be non-empty");
  return von_neumann_entropy(partial_trace(rho.matrix(), a)) + von_neumann_entropy(partial_trace(rho.matrix(), b)) -
         von_neumann_entropy(rho.matrix());
}

double quantum_mutual_information(const DensityMatrix& rho) {
  const int a[] = {0};
  return quantum_mutual_information(rho, a);
}

CMatrix measured_state(const CMatrix& rho, std::span<const MeasurementBasis> per_qubit) {
  const int n = qubit_count(rho);
  if (static_cast<int>(per_qubit.size()) != n) {
    throw ValidationError("measured_state: expected one basis per qubit");
  }
  CMatrix u = per_qubit[0].eigenbasis();
  for (std::size_t j = 1; j < per_qubit.size(); ++j) u = tensor(u, per_qubit[j].eigenbasis());
  const CMatrix diag = (u.adjoint() * rho * u).diagonal().asDiagonal();
  return u * diag * u.adjoint();
}

DensityMatrix measured_state(const DensityMatrix& rho, const MeasurementBasis& basis, Side side) {
  require_two_qubits(rho, "measured_state");
  switch (side) {
    case Side::A: return DensityMatrix(project_two_qubit(rho.matrix(), &basis, nullptr));
    case Side::B: return DensityMatrix(project_two_qubit(rho.matrix(), nullptr, &basis));
    case Side::both: return DensityMatrix(project_two_qubit(rho.matrix(), &basis, &basis));
  }
  return rho;
}

DensityMatrix measured_state(const DensityMatrix& rho, const MeasurementBasis& basis_a,
                             const MeasurementBasis& basis_b) {
  require_two_qubits(rho, "measured_state");
  return DensityMatrix(project_two_qubit(rho.matrix(), &basis_a, &basis_b));
}

double classical_correlation(const DensityMatrix& rho, const MeasurementBasis& basis, Side side) {
  require_two_qubits(rho, "classical_correlation");
  if (side == Side::both) throw ValidationError("classical_correlation: side must be A or B");
  const int other[] = {side == Side::A ? 1 : 0};
  return von_neumann_entropy(partial_trace(rho.matrix(), other)) - conditional_entropy(rho.matrix(), basis, side);
}

CorrelationReport entropic_discord(const DensityMatrix& rho, Side side) {
  require_two_qubits(rho, "entropic_discord");
  if (side == Side::both) throw ValidationError("entropic_discord: side must be A or B");
  const CMatrix& m = rho.matrix();
  const auto search = minimize_on_sphere(
      [&](const MeasurementBasis& b) { return conditional_entropy(m, b, side); }, kDiscordTheta, kDiscordPhi);
  CorrelationReport report;
  report.mutual_info = quantum_mutual_information(rho);
  const int other[] = {side == Side::A ? 1 : 0};
  report.classical = von_neumann_entropy(partial_trace(m, other)) - search.value;
  report.discord = report.mutual_info - report.classical;
  report.optimizer_basis = search.basis;
  report.optimizer_residual = search.residual;
  return report;
}

namespace {

std::array<double, 4> bd_eigenvalues(const CorrelationTriple& c) {
  const std::array<double, 4> lambda{0.25 * (1 - c.c1 - c.c2 - c.c3), 0.25 * (1 - c.c1 + c.c2 + c.c3),
                                     0.25 * (1 + c.c1 - c.c2 + c.c3), 0.25 * (1 + c.c1 + c.c2 - c.c3)};
  const double min_ev = *std::min_element(lambda.begin(), lambda.end());
  if (min_ev < -kPsdTolerance) {
    throw UnphysicalState("Bell-diagonal triple is unphysical: eigenvalue " + std::to_string(min_ev), min_ev);
  }
  return lambda;
}

}  // namespace

double luo_mutual_information(const CorrelationTriple& c) {
  const auto l = bd_eigenvalues(c);
  return 2.0 + xlogx_sum({l[0], l[1], l[2], l[3]});
}

double luo_classical(const CorrelationTriple& c) {
  bd_eigenvalues(c);
  const double m = c.max_abs();
  return 0.5 * xlogx_sum({1.0 - m, 1.0 + m});
}

double luo_discord(const CorrelationTriple& c) { return luo_mutual_information(c) - luo_classical(c); }

GeometricResult geometric_discord(const DensityMatrix& rho, Metric metric, Side side) {
  require_two_qubits(rho, "geometric_discord");
  const CMatrix& m = rho.matrix();
  GeometricResult result;
  if (side != Side::both) {
    const bool on_a = side == Side::A;
    const auto search = minimize_on_sphere(
        [&](const MeasurementBasis& b) {
          return geometric_objective(m, project_two_qubit(m, on_a ? &b : nullptr, on_a ? nullptr : &b), metric);
        },
        kDiscordTheta, kDiscordPhi);
    result.value = search.value;
    result.basis_a = result.basis_b = search.basis;
    result.optimizer_residual = search.residual;
    return result;
  }
  // Shared-axis grid seeds an independent refinement of both bases.
  const auto seed = minimize_on_sphere(
      [&](const MeasurementBasis& b) { return geometric_objective(m, project_two_qubit(m, &b, &b), metric); },
      kDiscordTheta, kDiscordPhi);
  const auto refined = opt::nelder_mead(
      [&](const std::vector<double>& x) {
        const MeasurementBasis a{x[0], x[1]};
        const MeasurementBasis b{x[2], x[3]};
        return geometric_objective(m, project_two_qubit(m, &a, &b), metric);
      },
      {seed.basis.theta, seed.basis.phi, seed.basis.theta, seed.basis.phi}, 0.5 * kPi / kDiscordTheta);
  result.value = seed.value;
  result.basis_a = result.basis_b = seed.basis;
  result.optimizer_residual = refined.residual;
  if (refined.value < seed.value) {
    result.value = refined.value;
    result.basis_a = MeasurementBasis{refined.x[0], refined.x[1]}.canonical();
    result.basis_b = MeasurementBasis{refined.x[2], refined.x[3]}.canonical();
  }
  return result;
}

double trace_discord_bd(const CorrelationTriple& c) {
  bd_eigenvalues(c);
  return c.intermediate_abs();
}

bool is_bell_diagonal(const DensityMatrix& rho) {
  if (rho.n_qubits() != 2) return false;
  const CorrelationTriple c = states::correlation_triple(rho);
  CMatrix bd = identity(4);
  for (int i = 0; i < 3; ++i) bd += c[i] * tensor_power(pauli(static_cast<Axis>(i + 1)), 2);
  return (rho.matrix() - 0.25 * bd).cwiseAbs().maxCoeff() <= 1e-12;
}

double geometric_classical_numeric(const DensityMatrix& rho) {
  const CMatrix& m = rho.matrix();
  const auto classical_part = [&](const MeasurementBasis& a, const MeasurementBasis& b) {
    const CMatrix chi = project_two_qubit(m, &a, &b);
    const int qa[] = {0};
    const int qb[] = {1};
    return trace_norm(chi - tensor(partial_trace(chi, qa), partial_trace(chi, qb)));
  };
  const auto closest = geometric_discord(rho, Metric::trace, Side::both);
  double best = classical_part(closest.basis_a, closest.basis_b);
  // The trace-distance minimizer can be degenerate; ties go to the largest classical part.
  const MeasurementBasis axes[] = {{0.5 * kPi, 0.0}, {0.5 * kPi, 0.5 * kPi}, {0.0, 0.0}};
  const double tol = 1e-9 * std::max(1.0, closest.value);
  for (const auto& a : axes) {
    for (const auto& b : axes) {
      if (geometric_objective(m, project_two_qubit(m, &a, &b), Metric::trace) <= closest.value + tol) {
        best = std::max(best, classical_part(a, b));
      }
    }
  }
  return best;
}

double geometric_classical(const DensityMatrix& rho) {
  require_two_qubits(rho, "geometric_classical");
  if (is_bell_diagonal(rho)) return states::correlation_triple(rho).max_abs();
  return geometric_classical_numeric(rho);
}

double gqd_objective(const DensityMatrix& rho, std::span<const MeasurementBasis> bases) {
  if (static_cast<int>(bases.size()) != rho.n_qubits()) {
    throw ValidationError("gqd_objective: expected one basis per qubit");
  }
  return GqdContext(rho)(bases);
}

GqdResult global_quantum_discord_report(const DensityMatrix& rho) {
  const int n = rho.n_qubits();
  if (n < 2 || n > 4) throw ValidationError("global_quantum_discord: supported for 2 to 4 qubits");
  const GqdContext objective(rho);

  GqdResult result;
  result.value = std::numeric_limits<double>::infinity();
  std::vector<MeasurementBasis> bases(static_cast<std::size_t>(n));
  for (int i = 0; i < kGqdTheta; ++i) {
    for (int j = 0; j < kGqdPhi; ++j) {
      std::fill(bases.begin(), bases.end(), MeasurementBasis{kPi * i / kGqdTheta, 2.0 * kPi * j / kGqdPhi});
      const double v = objective(bases);
      if (v < result.value) {
        result.value = v;
        result.bases = bases;
      }
    }
  }

  bases = result.bases;
  for (int sweep = 1; sweep <= kGqdMaxSweeps; ++sweep) {
    result.sweeps = sweep;
    const double before = result.value;
    for (std::size_t q = 0; q < bases.size(); ++q) {
      auto single = [&](const MeasurementBasis& b) {
        const MeasurementBasis saved = bases[q];
        bases[q] = b;
        const double v = objective(bases);
        bases[q] = saved;
        return v;
      };
      const auto search = minimize_on_sphere(single, kGqdTheta, kGqdPhi);
      if (search.value < result.value) {
        result.value = search.value;
        bases[q] = search.basis;
      }
    }
    result.bases = bases;
    if (before - result.value < kGqdImprovement) break;
  }
  result.value = std::max(result.value, 0.0);
  return result;
}

double global_quantum_discord(const DensityMatrix& rho) { return global_quantum_discord_report(rho).value; }

}  // namespace correlations
}  // namespace spincorr
