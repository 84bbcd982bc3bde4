#include "spincorr/qmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <unsupported/Eigen/MatrixFunctions>

namespace spincorr {

namespace {

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError(std::string(what) + ": matrix must be square and non-empty");
  }
}

}  // namespace

CMatrix identity(int dim) { return CMatrix::Identity(dim, dim); }

CMatrix pauli(Axis axis) {
  CMatrix s(2, 2);
  switch (axis) {
    case Axis::x:
      s << 0, 1, 1, 0;
      break;
    case Axis::y:
      s << 0, cplx(0, -1), cplx(0, 1), 0;
      break;
    case Axis::z:
      s << 1, 0, 0, -1;
      break;
  }
  return s;
}

CMatrix tensor(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix tensor_power(const CMatrix& op, int n) {
  if (n < 1) throw ValidationError("tensor_power: n must be >= 1");
  CMatrix out = op;
  for (int k = 1; k < n; ++k) out = tensor(out, op);
  return out;
}

CMatrix embed(const CMatrix& op, int qubit, int n_qubits) {
  if (op.rows() != 2 || op.cols() != 2) throw ValidationError("embed: operator must be 2x2");
  if (qubit < 0 || qubit >= n_qubits) throw ValidationError("embed: qubit index out of range");
  CMatrix out = qubit == 0 ? op : identity(2);
  for (int k = 1; k < n_qubits; ++k) out = tensor(out, k == qubit ? op : identity(2));
  return out;
}

int qubit_count(const CMatrix& m) {
  require_square(m, "qubit_count");
  const auto dim = static_cast<unsigned long>(m.rows());
  if ((dim & (dim - 1)) != 0 || dim < 2) {
    throw ValidationError("dimension " + std::to_string(dim) + " is not a power of two");
  }
  int n = 0;
  while ((1UL << n) < dim) ++n;
  return n;
}

CMatrix partial_transpose(const CMatrix& rho, int qubit) {
  const int n = qubit_count(rho);
  if (qubit < 0 || qubit >= n) throw ValidationError("partial_transpose: invalid qubit index");
  const Eigen::Index mask = Eigen::Index{1} << (n - 1 - qubit);
  CMatrix out(rho.rows(), rho.cols());
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      // swap the chosen qubit's bit between row and column indices
      const Eigen::Index bi = i & mask;
      const Eigen::Index bj = j & mask;
      out((i & ~mask) | bj, (j & ~mask) | bi) = rho(i, j);
    }
  }
  return out;
}

CMatrix partial_trace(const CMatrix& rho, std::span<const int> keep) {
  const int n = qubit_count(rho);
  if (keep.empty()) throw ValidationError("partial_trace: keep-set must not be empty");
  std::vector<int> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (std::adjacent_find(kept.begin(), kept.end()) != kept.end()) {
    throw ValidationError("partial_trace: duplicate qubit in keep-set");
  }
  for (int q : kept) {
    if (q < 0 || q >= n) throw ValidationError("partial_trace: invalid qubit index");
  }
  std::vector<int> traced;
  for (int q = 0; q < n; ++q) {
    if (!std::binary_search(kept.begin(), kept.end(), q)) traced.push_back(q);
  }
  const int k = static_cast<int>(kept.size());
  const Eigen::Index out_dim = Eigen::Index{1} << k;
  const Eigen::Index env_dim = Eigen::Index{1} << traced.size();

  auto compose = [&](Eigen::Index sys, Eigen::Index env) {
    Eigen::Index full = 0;
    for (int a = 0; a < k; ++a) {
      if ((sys >> (k - 1 - a)) & 1) full |= Eigen::Index{1} << (n - 1 - kept[a]);
    }
    const int t = static_cast<int>(traced.size());
    for (int a = 0; a < t; ++a) {
      if ((env >> (t - 1 - a)) & 1) full |= Eigen::Index{1} << (n - 1 - traced[a]);
    }
    return full;
  };

  CMatrix out = CMatrix::Zero(out_dim, out_dim);
  for (Eigen::Index i = 0; i < out_dim; ++i) {
    for (Eigen::Index j = 0; j < out_dim; ++j) {
      cplx acc = 0.0;
      for (Eigen::Index e = 0; e < env_dim; ++e) acc += rho(compose(i, e), compose(j, e));
      out(i, j) = acc;
    }
  }
  return out;
}

CMatrix partial_trace(const CMatrix& rho, std::initializer_list<int> keep) {
  return partial_trace(rho, std::span<const int>(keep.begin(), keep.size()));
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

CMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<cplx>().asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition eigh(const CMatrix& hermitian) {
  require_square(hermitian, "eigh");
  // symmetrize so that rounding noise in the input cannot bias the solver
  const CMatrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("eigh: eigen-solver did not converge");
  SpectralDecomposition sd{solver.eigenvalues(), solver.eigenvectors()};
  for (Eigen::Index c = 0; c < sd.eigenvectors.cols(); ++c) {
    auto col = sd.eigenvectors.col(c);
    const double peak = col.cwiseAbs().maxCoeff();
    Eigen::Index pivot = 0;
    while (std::abs(col[pivot]) < peak - 1e-12) ++pivot;
    const cplx phase = col[pivot] / std::abs(col[pivot]);
    col /= phase;
    col[pivot] = std::abs(col[pivot]);
  }
  return sd;
}

RVector eigvalsh(const CMatrix& hermitian) {
  require_square(hermitian, "eigvalsh");
  const CMatrix h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("eigvalsh: eigen-solver did not converge");
  return solver.eigenvalues();
}

CMatrix sqrtm_psd(const CMatrix& psd) {
  return spectral_apply(psd, [](double v) {
    if (v < -kPsdTolerance) throw NumericalError("sqrtm_psd: matrix is not positive semidefinite");
    return std::sqrt(std::max(v, 0.0));
  });
}

double entropy_bits(std::span<const double> weights) {
  double s = 0.0;
  for (double w : weights) {
    if (w > 0.0) s -= w * std::log2(w);
  }
  return s;
}

double von_neumann_entropy(const CMatrix& rho) {
  const RVector ev = eigvalsh(rho);
  std::vector<double> w(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev[i] < -kPsdTolerance) {
      throw NumericalError("von_neumann_entropy: negative eigenvalue " + std::to_string(ev[i]));
    }
    w[static_cast<std::size_t>(i)] = std::max(ev[i], 0.0);
  }
  return entropy_bits(w);
}

Metric parse_metric(const std::string& name) {
  if (name == "trace") return Metric::trace;
  if (name == "hilbert_schmidt") return Metric::hilbert_schmidt;
  if (name == "bures") return Metric::bures;
  if (name == "fidelity_based" || name == "fidelity") return Metric::fidelity_based;
  throw ValidationError("unknown metric '" + name + "'");
}

std::string to_string(Metric metric) {
  switch (metric) {
    case Metric::trace:
      return "trace";
    case Metric::hilbert_schmidt:
      return "hilbert_schmidt";
    case Metric::bures:
      return "bures";
    case Metric::fidelity_based:
      return "fidelity_based";
  }
  return "unknown";
}

double trace_norm(const CMatrix& hermitian) { return eigvalsh(hermitian).cwiseAbs().sum(); }

double fidelity(const CMatrix& rho, const CMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw ValidationError("fidelity: dimension mismatch");
  }
  const CMatrix root = sqrtm_psd(rho);
  const CMatrix inner = root * sigma * root;
  double tr = 0.0;
  for (double v : eigvalsh(inner)) tr += std::sqrt(std::max(v, 0.0));
  return std::min(tr * tr, 1.0);
}

double distance(const CMatrix& rho, const CMatrix& sigma, Metric metric) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw ValidationError("distance: dimension mismatch");
  }
  switch (metric) {
    case Metric::trace:
      return 0.5 * trace_norm(rho - sigma);
    case Metric::hilbert_schmidt:
      return (rho - sigma).squaredNorm();
    case Metric::bures:
      return std::sqrt(std::max(0.0, 2.0 * (1.0 - std::sqrt(fidelity(rho, sigma)))));
    case Metric::fidelity_based:
      return std::max(0.0, 1.0 - fidelity(rho, sigma));
  }
  return 0.0;
}

CMatrix matrix_exponential(const CMatrix& a) {
  require_square(a, "matrix_exponential");
  return a.exp();
}

Eigen::Matrix3d matrix_exponential(const Eigen::Matrix3d& a) { return a.exp(); }

CMatrix unitary_of(const CMatrix& h, double phi) {
  if (!is_hermitian(h)) throw ValidationError("unitary_of: generator must be Hermitian");
  const SpectralDecomposition sd = eigh(h);
  CVector phases(sd.eigenvalues.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases[i] = std::exp(cplx(0.0, -phi * sd.eigenvalues[i]));
  }
  return sd.eigenvectors * phases.asDiagonal() * sd.eigenvectors.adjoint();
}

}  // namespace spincorr
