#include "spincorr/channels.hpp"

#include <cmath>
#include <string>

namespace spincorr {

namespace {

void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ValidationError(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<CMatrix> kraus_ops) : ops_(std::move(kraus_ops)) {
  if (ops_.empty()) throw ValidationError("KrausChannel: need at least one operator");
  dim_ = ops_.front().rows();
  for (const auto& e : ops_) {
    if (e.rows() != dim_ || e.cols() != dim_) {
      throw ValidationError("KrausChannel: operators must be square and share one dimension");
    }
  }
  const double residual = completeness_residual();
  if (residual > 1e-10) {
    throw ValidationError("KrausChannel: completeness violated, residual " + std::to_string(residual));
  }
}

KrausChannel KrausChannel::identity(int dim) { return KrausChannel({spincorr::identity(dim)}); }

double KrausChannel::completeness_residual() const {
  CMatrix sum = CMatrix::Zero(dim_, dim_);
  for (const auto& e : ops_) sum += e.adjoint() * e;
  return (sum - CMatrix::Identity(dim_, dim_)).norm();
}

CMatrix KrausChannel::apply(const CMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) throw ValidationError("KrausChannel: dimension mismatch");
  CMatrix out = CMatrix::Zero(dim_, dim_);
  for (const auto& e : ops_) out.noalias() += e * rho * e.adjoint();
  return out;
}

namespace channels {

PdParams PdParams::from_time(double t, double t2) {
  if (!(t >= 0.0) || !(t2 > 0.0)) throw ValidationError("PD: need t >= 0 and T2 > 0");
  return {-std::expm1(-t / t2)};
}

double GadParams::bias_from_alpha(double alpha) {
  const double p = 0.5 * (1.0 - alpha);
  require_unit_interval(p, "GAD bias (1-alpha)/2");
  return p;
}

GadParams GadParams::from_time(double t, double t1, double alpha) {
  if (!(t >= 0.0) || !(t1 > 0.0)) throw ValidationError("GAD: need t >= 0 and T1 > 0");
  return {-std::expm1(-t / t1), bias_from_alpha(alpha)};
}

KrausChannel pd_channel(const PdParams& params) {
  require_unit_interval(params.q, "PD q");
  return KrausChannel({std::sqrt(1.0 - 0.5 * params.q) * spincorr::identity(2),
                       std::sqrt(0.5 * params.q) * sigma_z()});
}

KrausChannel gad_channel(const GadParams& params) {
  require_unit_interval(params.gamma, "GAD gamma");
  require_unit_interval(params.p_bias, "GAD p");
  const double g = params.gamma;
  const double sp = std::sqrt(params.p_bias);
  const double sq = std::sqrt(1.0 - params.p_bias);
  CMatrix e1(2, 2), e2(2, 2), e3(2, 2), e4(2, 2);
  e1 << sp, 0, 0, sp * std::sqrt(1.0 - g);
  e2 << 0, sp * std::sqrt(g), 0, 0;
  e3 << sq * std::sqrt(1.0 - g), 0, 0, sq;
  e4 << 0, 0, sq * std::sqrt(g), 0;
  return KrausChannel({e1, e2, e3, e4});
}

KrausChannel gpd_channel(double q) {
  require_unit_interval(q, "GPD q");
  return KrausChannel({std::sqrt(1.0 - 0.5 * q) * spincorr::identity(4),
                       std::sqrt(0.5 * q) * tensor(sigma_z(), sigma_z())});
}

KrausChannel tensor_channel(std::span<const KrausChannel> per_qubit) {
  if (per_qubit.empty()) throw ValidationError("tensor_channel: no channels given");
  std::vector<CMatrix> ops = per_qubit.front().kraus_ops();
  for (std::size_t j = 1; j < per_qubit.size(); ++j) {
    std::vector<CMatrix> next;
    next.reserve(ops.size() * per_qubit[j].kraus_ops().size());
    for (const auto& a : ops) {
      for (const auto& b : per_qubit[j].kraus_ops()) next.push_back(tensor(a, b));
    }
    ops = std::move(next);
  }
  return KrausChannel(std::move(ops));
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
  if (channel.dim() != rho.dim()) throw ValidationError("apply: channel and state dimensions differ");
  return DensityMatrix(channel.apply(rho.matrix()));
}

DensityMatrix apply_on_qubit(const KrausChannel& channel, int qubit, const DensityMatrix& rho) {
  if (channel.dim() != 2) throw ValidationError("apply_on_qubit: channel must act on a single qubit");
  const int n = rho.n_qubits();
  CMatrix out = CMatrix::Zero(rho.dim(), rho.dim());
  for (const auto& e : channel.kraus_ops()) {
    const CMatrix full = embed(e, qubit, n);
    out.noalias() += full * rho.matrix() * full.adjoint();
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix local_apply(std::span<const KrausChannel> per_qubit, const DensityMatrix& rho) {
  if (static_cast<int>(per_qubit.size()) != rho.n_qubits()) {
    throw ValidationError("local_apply: expected one channel per qubit (" + std::to_string(rho.n_qubits()) +
                          "), got " + std::to_string(per_qubit.size()));
  }
  for (const auto& ch : per_qubit) {
    if (ch.dim() != 2) throw ValidationError("local_apply: every channel must act on a single qubit");
  }
  return apply(tensor_channel(per_qubit), rho);
}

std::vector<KrausChannel> replicate(const KrausChannel& channel, int n_qubits) {
  return std::vector<KrausChannel>(static_cast<std::size_t>(n_qubits), channel);
}

}  // namespace channels
}  // namespace spincorr
