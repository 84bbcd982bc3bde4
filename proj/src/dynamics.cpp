#include "spincorr/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "spincorr/optimize.hpp"

namespace spincorr {

namespace {

constexpr double kTie = 1e-12;

enum class Ordering { none, argmax, intermediate };

Ordering ordering_for(const std::string& series) {
  if (series == "classical" || series == "luo_classical" || series == "geometric_classical" || series == "discord" ||
      series == "luo_discord") {
    return Ordering::argmax;
  }
  if (series == "trace_discord") return Ordering::intermediate;
  return Ordering::none;
}

// Index of the largest (or middle) |c_i|, or -1 when ties make it ambiguous.
int ordering_label(const CorrelationTriple& c, Ordering ordering) {
  const auto a = c.abs();
  std::array<int, 3> idx{0, 1, 2};
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return a[i] > a[j]; });
  if (a[idx[0]] - a[idx[1]] <= kTie) return -1;
  if (ordering == Ordering::argmax) return idx[0];
  if (a[idx[1]] - a[idx[2]] <= kTie) return -1;
  return idx[1];
}

double local_step(const std::vector<double>& t, double at) {
  const auto it = std::lower_bound(t.begin(), t.end(), at);
  const auto j = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - t.begin(), 1, t.size() - 1));
  double step = t[j] - t[j - 1];
  if (j + 1 < t.size()) step = std::max(step, t[j + 1] - t[j]);
  return step;
}

std::vector<ChangePoint> ordering_switches(const Trajectory& traj, Ordering ordering, const std::string& series) {
  std::vector<ChangePoint> out;
  if (traj.triples.empty()) return out;
  int prev_label = -1;
  std::size_t prev = 0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const int label = ordering_label(traj.triples[k], ordering);
    if (label < 0) continue;
    if (prev_label >= 0 && label != prev_label) {
      // root of |c_old| − |c_new| by linear interpolation between the two samples
      const double g0 = std::abs(traj.triples[prev][prev_label]) - std::abs(traj.triples[prev][label]);
      const double g1 = std::abs(traj.triples[k][prev_label]) - std::abs(traj.triples[k][label]);
      const double w = (g0 - g1) != 0.0 ? g0 / (g0 - g1) : 0.5;
      const double t = traj.times[prev] + std::clamp(w, 0.0, 1.0) * (traj.times[k] - traj.times[prev]);
      out.push_back({t, ChangeKind::ordering_switch, series});
    }
    prev_label = label;
    prev = k;
  }
  return out;
}

std::vector<ChangePoint> slope_kinks(const std::vector<double>& t, const std::vector<double>& f, double tol,
                                     const std::string& series) {
  const std::size_t n = t.size();
  std::vector<double> slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) slope[i] = (f[i + 1] - f[i]) / (t[i + 1] - t[i]);
  double max_slope = 0.0;
  for (double s : slope) max_slope = std::max(max_slope, std::abs(s));
  std::vector<ChangePoint> out;
  if (max_slope < 1e-12) return out;

  // d[i]: right minus left one-sided slope at node i
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = slope[i] - slope[i - 1];

  for (std::size_t i = 3; i + 4 <= n; ++i) {
    const double jump = std::abs(d[i]);
    if (jump <= tol * max_slope) continue;
    // a kink is an isolated jump; smooth curvature changes gradually across neighbours
    const double background = std::max(std::abs(d[i - 2]), std::abs(d[i + 2]));
    if (jump <= 3.0 * background) continue;
    const double sl = slope[i - 2];
    const double sr = slope[i + 1];
    double tk = t[i];
    if (std::abs(sl - sr) > 1e-300) {
      // intersection of the secant lines just left and just right of the node
      const double x = (f[i + 1] - sr * t[i + 1] - (f[i - 1] - sl * t[i - 1])) / (sl - sr);
      if (x >= t[i - 1] && x <= t[i + 1]) tk = x;
    }
    out.push_back({tk, ChangeKind::slope_discontinuity, series});
  }
  return out;
}

std::vector<ChangePoint> merge(std::vector<ChangePoint> candidates, const std::vector<double>& times) {
  std::sort(candidates.begin(), candidates.end(),
            [](const ChangePoint& a, const ChangePoint& b) { return a.time < b.time; });
  std::vector<ChangePoint> merged;
  std::size_t i = 0;
  while (i < candidates.size()) {
    std::size_t j = i + 1;
    while (j < candidates.size() &&
           candidates[j].time - candidates[j - 1].time <= local_step(times, candidates[j].time) * (1.0 + 1e-9)) {
      ++j;
    }
    ChangePoint rep = candidates[i];
    double sum = 0.0;
    int count = 0;
    bool has_switch = false;
    for (std::size_t k = i; k < j; ++k) {
      if (candidates[k].kind == ChangeKind::ordering_switch && !has_switch) {
        rep = candidates[k];
        has_switch = true;
      }
      sum += candidates[k].time;
      ++count;
    }
    if (!has_switch) rep.time = sum / count;
    merged.push_back(rep);
    i = j;
  }
  return merged;
}

void require_positive_rate(double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw ValidationError("decay rate gamma must be positive");
}

double t_star_for(const CorrelationTriple& c0, double rate) {
  require_positive_rate(rate);
  if (c0.c3 == 0.0) throw ValidationError("freezing time undefined for c3 = 0");
  if (std::abs(c0.c3) > std::abs(c0.c1)) throw ValidationError("freezing time requires |c3| <= |c1|");
  return -std::log(std::abs(c0.c3) / std::abs(c0.c1)) / rate;
}

}  // namespace

bool Trajectory::has_series(const std::string& name) const {
  if (name == "c1" || name == "c2" || name == "c3") return !triples.empty();
  return std::any_of(quantifiers.begin(), quantifiers.end(), [&](const auto& q) { return q.first == name; });
}

std::vector<double> Trajectory::series(const std::string& name) const {
  if (name == "c1" || name == "c2" || name == "c3") {
    const int i = name[1] - '1';
    std::vector<double> out;
    out.reserve(triples.size());
    for (const auto& c : triples) out.push_back(c[i]);
    return out;
  }
  for (const auto& q : quantifiers) {
    if (q.first == name) return q.second;
  }
  throw ValidationError("trajectory has no series '" + name + "'");
}

void Trajectory::set_series(const std::string& name, std::vector<double> values) {
  if (values.size() != times.size()) throw ValidationError("series '" + name + "' length differs from the time grid");
  for (auto& q : quantifiers) {
    if (q.first == name) {
      q.second = std::move(values);
      return;
    }
  }
  quantifiers.emplace_back(name, std::move(values));
}

void Trajectory::validate() const {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ValidationError("trajectory times must be strictly increasing");
  }
  if (!triples.empty() && triples.size() != times.size()) {
    throw ValidationError("trajectory triple count differs from the time grid");
  }
  if (!states.empty() && states.size() != times.size()) {
    throw ValidationError("trajectory state count differs from the time grid");
  }
  for (const auto& q : quantifiers) {
    if (q.second.size() != times.size()) throw ValidationError("series '" + q.first + "' length differs");
  }
}

std::string to_string(ChangeKind kind) {
  return kind == ChangeKind::ordering_switch ? "ordering-switch" : "slope-discontinuity";
}

namespace {

constexpr std::array<std::pair<Quantifier, const char*>, 11> kQuantifierNames{{
    {Quantifier::mutual_info, "mutual_info"},
    {Quantifier::classical, "classical"},
    {Quantifier::discord, "discord"},
    {Quantifier::luo_classical, "luo_classical"},
    {Quantifier::luo_discord, "luo_discord"},
    {Quantifier::trace_discord, "trace_discord"},
    {Quantifier::hs_discord, "hs_discord"},
    {Quantifier::bures_discord, "bures_discord"},
    {Quantifier::fidelity_discord, "fidelity_discord"},
    {Quantifier::geometric_classical, "geometric_classical"},
    {Quantifier::gqd, "gqd"},
}};

}  // namespace

Quantifier parse_quantifier(const std::string& name) {
  for (const auto& [q, n] : kQuantifierNames) {
    if (name == n) return q;
  }
  throw ValidationError("unknown quantifier '" + name + "'");
}

std::string to_string(Quantifier q) {
  for (const auto& [k, n] : kQuantifierNames) {
    if (k == q) return n;
  }
  return "unknown";
}

std::string to_string(DynamicsCase c) {
  switch (c) {
    case DynamicsCase::case_i: return "case_i";
    case DynamicsCase::case_ii: return "case_ii";
    case DynamicsCase::case_iii: return "case_iii";
  }
  return "case_i";
}

namespace dynamics {

std::vector<double> uniform_grid(double t0, double t1, int points) {
  if (points < 2) throw ValidationError("time grid needs at least two points");
  if (!(t1 > t0)) throw ValidationError("time grid end must exceed its start");
  std::vector<double> t(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) t[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * i / (points - 1);
  return t;
}

std::vector<double> default_time_grid(double gamma, int points) {
  require_positive_rate(gamma);
  return uniform_grid(0.0, 5.0 / (2.0 * gamma), points);
}

Trajectory evolve_bd_pd(const CorrelationTriple& c0, double gamma, const std::vector<double>& times) {
  require_positive_rate(gamma);
  states::bell_diagonal(c0);
  Trajectory traj;
  traj.times = times;
  for (double t : times) {
    if (!(t >= 0.0)) throw ValidationError("evolve_bd_pd: times must be nonnegative");
    const double f = std::exp(-2.0 * gamma * t);
    const CorrelationTriple c{c0.c1 * f, c0.c2 * f, c0.c3};
    traj.triples.push_back(c);
    traj.states.push_back(states::bell_diagonal(c).matrix());
  }
  traj.validate();
  return traj;
}

Trajectory evolve_bd_pd_damping(const CorrelationTriple& c0, const std::vector<double>& p_values) {
  states::bell_diagonal(c0);
  Trajectory traj;
  traj.abscissa = "p";
  traj.times = p_values;
  for (double p : p_values) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("evolve_bd_pd_damping: p must lie in [0, 1]");
    const double f = (1.0 - p) * (1.0 - p);
    const CorrelationTriple c{c0.c1 * f, c0.c2 * f, c0.c3};
    traj.triples.push_back(c);
    traj.states.push_back(states::bell_diagonal(c).matrix());
  }
  traj.validate();
  return traj;
}

ChannelFamily local_pd_family(std::vector<double> gammas) {
  if (gammas.empty()) throw ValidationError("local_pd_family: need at least one rate");
  for (double g : gammas) require_positive_rate(g);
  return [gammas = std::move(gammas)](double t) {
    std::vector<KrausChannel> per_qubit;
    for (double g : gammas) per_qubit.push_back(channels::pd_channel({-std::expm1(-g * t)}));
    return channels::tensor_channel(per_qubit);
  };
}

ChannelFamily local_pd_family(int n_qubits, double gamma) {
  if (n_qubits < 1) throw ValidationError("local_pd_family: need at least one qubit");
  return local_pd_family(std::vector<double>(static_cast<std::size_t>(n_qubits), gamma));
}

ChannelFamily local_gad_family(int n_qubits, double t1, double alpha) {
  if (n_qubits < 1) throw ValidationError("local_gad_family: need at least one qubit");
  if (!(t1 > 0.0)) throw ValidationError("local_gad_family: T1 must be positive");
  channels::GadParams::bias_from_alpha(alpha);
  return [=](double t) {
    const auto ch = channels::gad_channel(channels::GadParams::from_time(t, t1, alpha));
    return channels::tensor_channel(channels::replicate(ch, n_qubits));
  };
}

ChannelFamily gpd_family(double gamma) {
  require_positive_rate(gamma);
  return [gamma](double t) { return channels::gpd_channel(-std::expm1(-gamma * t)); };
}

ChannelFamily identity_family(int n_qubits) {
  if (n_qubits < 1) throw ValidationError("identity_family: need at least one qubit");
  const int dim = 1 << n_qubits;
  return [dim](double) { return KrausChannel::identity(dim); };
}

Trajectory evolve_general(const DensityMatrix& rho0, const ChannelFamily& family, const std::vector<double>& times,
                          Evolution mode) {
  Trajectory traj;
  traj.times = times;
  traj.triples.resize(times.size());
  traj.states.resize(times.size());
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ValidationError("evolve_general: times must be strictly increasing");
  }
  if (mode == Evolution::snapshot) {
    opt::parallel_for(times.size(), [&](std::size_t i) {
      const KrausChannel ch = family(times[i]);
      if (ch.dim() != rho0.dim()) throw ValidationError("evolve_general: channel and state dimensions differ");
      traj.states[i] = ch.apply(rho0.matrix());
    });
  } else {
    CMatrix rho = rho0.matrix();
    double t_prev = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const KrausChannel ch = family(times[i] - t_prev);
      if (ch.dim() != rho0.dim()) throw ValidationError("evolve_general: channel and state dimensions differ");
      rho = ch.apply(rho);
      traj.states[i] = rho;
      t_prev = times[i];
    }
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    traj.triples[i] = states::correlation_triple(DensityMatrix(traj.states[i]));
  }
  return traj;
}

double effective_gamma(const std::vector<double>& gammas) {
  if (gammas.empty()) throw ValidationError("effective_gamma: no rates given");
  for (double g : gammas) require_positive_rate(g);
  return std::accumulate(gammas.begin(), gammas.end(), 0.0) / static_cast<double>(gammas.size());
}

void add_quantifiers(Trajectory& traj, const std::vector<Quantifier>& quantifiers) {
  if (traj.states.size() != traj.times.size()) throw ValidationError("add_quantifiers: trajectory carries no states");
  const std::size_t n = traj.size();
  const std::size_t m = quantifiers.size();
  std::vector<std::vector<double>> values(m, std::vector<double>(n));
  opt::parallel_for(n, [&](std::size_t i) {
    const DensityMatrix rho(traj.states[i]);
    std::optional<CorrelationReport> entropic;
    for (std::size_t k = 0; k < m; ++k) {
      const Quantifier q = quantifiers[k];
      double v = 0.0;
      switch (q) {
        case Quantifier::mutual_info: v = correlations::quantum_mutual_information(rho); break;
        case Quantifier::classical:
        case Quantifier::discord:
          if (!entropic) entropic = correlations::entropic_discord(rho);
          v = q == Quantifier::classical ? entropic->classical : entropic->discord;
          break;
        case Quantifier::luo_classical:
        case Quantifier::luo_discord: {
          if (!correlations::is_bell_diagonal(rho)) {
            throw ValidationError("closed-form quantifiers need Bell-diagonal states");
          }
          const auto c = states::correlation_triple(rho);
          v = q == Quantifier::luo_classical ? correlations::luo_classical(c) : correlations::luo_discord(c);
          break;
        }
        case Quantifier::trace_discord:
          v = correlations::geometric_discord(rho, Metric::trace).value;
          break;
        case Quantifier::hs_discord:
          v = correlations::geometric_discord(rho, Metric::hilbert_schmidt).value;
          break;
        case Quantifier::bures_discord: v = correlations::geometric_discord(rho, Metric::bures).value; break;
        case Quantifier::fidelity_discord:
          v = correlations::geometric_discord(rho, Metric::fidelity_based).value;
          break;
        case Quantifier::geometric_classical: v = correlations::geometric_classical(rho); break;
        case Quantifier::gqd: v = correlations::global_quantum_discord(rho); break;
      }
      values[k][i] = v;
    }
  });
  for (std::size_t k = 0; k < m; ++k) traj.set_series(to_string(quantifiers[k]), std::move(values[k]));
}

std::vector<ChangePoint> detect_sudden_changes(const Trajectory& traj, const std::string& series,
                                               const DetectorOptions& options) {
  traj.validate();
  if (traj.size() < 5) throw ValidationError("detect_sudden_changes: need at least 5 samples");
  if (!(options.slope_tolerance > 0.0)) throw ValidationError("detect_sudden_changes: tolerance must be positive");
  const std::vector<double> values = traj.series(series);
  std::vector<ChangePoint> candidates = slope_kinks(traj.times, values, options.slope_tolerance, series);
  const Ordering ordering = ordering_for(series);
  if (ordering != Ordering::none) {
    auto switches = ordering_switches(traj, ordering, series);
    candidates.insert(candidates.end(), switches.begin(), switches.end());
  }
  return merge(std::move(candidates), traj.times);
}

FreezeReport freezing_time(const CorrelationTriple& c0, double gamma) {
  FreezeReport report;
  report.t_star = t_star_for(c0, 2.0 * gamma);
  const double sign_c1 = c0.c1 > 0.0 ? 1.0 : -1.0;
  report.frozen = std::abs(std::abs(c0.c1) - 1.0) <= 1e-9 && std::abs(c0.c2 + sign_c1 * c0.c3) <= 1e-9;
  return report;
}

FreezeReport assess_plateau(const std::vector<double>& times, const std::vector<double>& values, double t_star) {
  if (times.size() != values.size() || times.empty()) throw ValidationError("assess_plateau: length mismatch");
  FreezeReport report;
  report.t_star = t_star;
  const double base = values.front();
  const double scale = std::abs(base) > 1e-300 ? std::abs(base) : 1.0;
  double variation = 0.0;
  for (std::size_t i = 0; i < times.size() && times[i] < t_star; ++i) {
    variation = std::max(variation, std::abs(values[i] - base) / scale);
  }
  report.plateau_relative_variation = variation;
  report.frozen = variation < kPlateauThreshold;
  int after = 0;
  bool decreasing = true;
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    if (times[i] < t_star) continue;
    ++after;
    if (!(values[i + 1] < values[i])) decreasing = false;
  }
  report.decreasing_after = after > 0 && decreasing;
  return report;
}

FreezeReport verify_freezing(const CorrelationTriple& c0, double gamma, Quantifier quantifier,
                             const std::vector<double>& times) {
  const double t_star = freezing_time(c0, gamma).t_star;
  Trajectory traj = evolve_bd_pd(c0, gamma, times);
  add_quantifiers(traj, {quantifier});
  const std::string name = to_string(quantifier);
  FreezeReport report = assess_plateau(traj.times, traj.series(name), t_star);
  if (traj.size() >= 5) {
    const auto changes = detect_sudden_changes(traj, name);
    if (!changes.empty()) report.observed_t_star = changes.front().time;
  }
  return report;
}

DynamicsCase classify_dynamics(const CorrelationTriple& c0) {
  const auto a = c0.abs();
  if (a[2] == 0.0) return DynamicsCase::case_ii;
  if (a[2] >= a[0] && a[2] >= a[1]) return DynamicsCase::case_i;
  return DynamicsCase::case_iii;
}

ParityScan gqd_parity_scan(int n_qubits, const CorrelationTriple& c0, double gamma, const std::vector<double>& times) {
  if (n_qubits < 2 || n_qubits > 4) throw ValidationError("gqd_parity_scan: n must be 2, 3 or 4");
  const DensityMatrix rho0 = states::m3n_state(c0, n_qubits);
  ParityScan scan;
  scan.t_star = t_star_for(c0, n_qubits * gamma);
  scan.trajectory = evolve_general(rho0, local_pd_family(n_qubits, gamma), times);
  add_quantifiers(scan.trajectory, {Quantifier::gqd});
  const FreezeReport plateau = assess_plateau(times, scan.trajectory.series("gqd"), scan.t_star);
  scan.plateau_relative_variation = plateau.plateau_relative_variation;
  scan.plateau_detected = plateau.frozen;
  return scan;
}

}  // namespace dynamics
}  // namespace spincorr
