// spincorr-cli: experiment runner over the spincorr library.
//
// Exit codes: 0 success, 2 validation error, 3 numerical failure, 64 unknown command.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

#include "config.hpp"
#include "spincorr/bloch.hpp"
#include "spincorr/channels.hpp"
#include "spincorr/correlations.hpp"
#include "spincorr/dynamics.hpp"
#include "spincorr/metrology.hpp"

namespace spincorr::cli {
namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUnknownCommand = 64;
constexpr double kPi = std::numbers::pi;

const Key kConfigOut{"out", Kind::text, "output file"};
const Key kTriple{"c", Kind::triple, "correlation triple c1,c2,c3"};
const Key kStateFile{"state", Kind::text, "state JSON file ({n_qubits, matrix})"};

std::vector<CommandSpec> command_specs() {
  return {
      {"bloch",
       "Bloch-equation trajectory (CSV t,mx,my,mz)",
       {{"m0", Kind::number, "equilibrium magnetization"},
        {"t1", Kind::number, "longitudinal relaxation time"},
        {"t2", Kind::number, "transverse relaxation time"},
        {"delta_omega", Kind::number, "off-resonance (rad/s)"},
        {"omega1", Kind::number, "RF amplitude (rad/s)"},
        {"m_init", Kind::triple, "initial magnetization (default 0,0,m0)"},
        {"t_end", Kind::number, "end time"},
        {"points", Kind::integer, "number of samples"},
        kConfigOut}},
      {"work",
       "work done by an RF pulse, classical and single-spin",
       {{"m0", Kind::number, "magnetization for the classical work"},
        {"b0", Kind::number, "static field (T)"},
        {"omega0", Kind::number, "Larmor frequency (rad/s)"},
        {"omega1", Kind::number, "RF amplitude (rad/s)"},
        {"delta_omega", Kind::number, "off-resonance (rad/s)"},
        {"tau", Kind::number, "pulse duration (s)"},
        {"sigma_z0", Kind::number, "initial <sigma_z> for the ensemble average"}}},
      {"state",
       "build a state and report its triple, purity and Peres test",
       {{"family", Kind::text, "bell_diagonal | m3n | pseudo_singlet | probe | mixed"},
        kTriple,
        {"n", Kind::integer, "qubit count (m3n, mixed)"},
        {"epsilon", Kind::number, "pseudopure polarization"},
        {"p", Kind::number, "probe purity parameter"},
        {"probe", Kind::text, "quantum | classical"},
        {"threshold", Kind::flag, "also report the pseudopure entanglement threshold"},
        kConfigOut}},
      {"channel",
       "apply a decoherence channel to a state",
       {{"channel", Kind::text, "pd | gad | gpd"},
        kTriple,
        kStateFile,
        {"q", Kind::number, "dephasing strength (pd, gpd)"},
        {"gamma", Kind::number, "damping strength (gad)"},
        {"p_bias", Kind::number, "thermal bias p (gad)"},
        {"alpha", Kind::number, "hbar*omega_L/kT, sets p = (1-alpha)/2 (gad)"},
        kConfigOut}},
      {"discord",
       "correlation quantifiers of a state",
       {kTriple,
        kStateFile,
        {"metric", Kind::text,
         "entropic | luo | trace | hilbert_schmidt | bures | fidelity | geometric_classical | gqd"},
        {"side", Kind::text, "A | B | both"}}},
      {"dynamics",
       "correlation dynamics of a Bell-diagonal state under decoherence",
       {kTriple,
        {"channel", Kind::text, "pd | gad | gpd"},
        {"gamma", Kind::number, "decay rate (pd, gpd)"},
        {"gammas", Kind::numbers, "per-qubit pd rates"},
        {"t1", Kind::number, "T1 (gad)"},
        {"alpha", Kind::number, "thermal parameter (gad)"},
        {"t_end", Kind::number, "end time"},
        {"points", Kind::integer, "number of samples"},
        {"quantifiers", Kind::text, "comma-separated quantifier names"},
        {"mode", Kind::text, "snapshot | chained"},
        {"slope_tol", Kind::number, "relative slope-jump tolerance"},
        kConfigOut}},
      {"freeze",
       "freezing time and optional plateau verification",
       {kTriple,
        {"gamma", Kind::number, "decay rate"},
        {"quantifier", Kind::text, "verify along a trajectory with this quantifier"},
        {"points", Kind::integer, "number of samples"},
        {"t_end", Kind::number, "end time"}}},
      {"gqd",
       "global quantum discord of M3_N states under local phase damping",
       {{"n", Kind::integer, "qubit count (2-4)"},
        kTriple,
        {"gamma", Kind::number, "decay rate"},
        {"t_end", Kind::number, "end time"},
        {"points", Kind::integer, "number of samples"},
        kConfigOut}},
      {"ip",
       "interferometric power",
       {{"probe", Kind::text, "quantum | classical"},
        {"p", Kind::number, "probe purity parameter"},
        kTriple,
        kStateFile,
        {"oracle", Kind::flag, "also run the brute-force minimization over Hamiltonians"},
        {"samples", Kind::integer, "oracle sample count"}}},
      {"estimate",
       "black-box phase estimation for one probe and setting",
       {{"probe", Kind::text, "quantum | classical"},
        {"p", Kind::number, "probe purity parameter"},
        {"setting", Kind::text, "H1 | H2 | H3"},
        {"phi0", Kind::number, "encoded phase"},
        {"nu", Kind::integer, "repetitions"},
        {"shot_noise", Kind::flag, "sample outcome frequencies"},
        {"seed", Kind::integer, "shot-noise seed"}}},
      {"suite",
       "black-box estimation table over probes, p values and settings",
       {{"p_grid", Kind::numbers, "probe purity values"},
        {"phi0", Kind::number, "encoded phase"},
        {"nu", Kind::integer, "repetitions"},
        kConfigOut}},
      {"figures", "write the figure data sets", {{"out_dir", Kind::text, "output directory"}}},
  };
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open output file '" + path + "'");
  return out;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

json triple_json(const CorrelationTriple& c) { return json::array({c.c1, c.c2, c.c3}); }

CorrelationTriple require_triple(const Config& cfg) {
  const auto c = cfg.triple("c");
  if (!c) throw ValidationError("--c c1,c2,c3 is required");
  return *c;
}

DensityMatrix input_state(const Config& cfg) {
  if (cfg.has("state") && cfg.has("c")) throw ValidationError("give either --state or --c, not both");
  if (cfg.has("state")) return io::state_from_json(load_json_file(cfg.text("state", "")));
  return states::bell_diagonal(require_triple(cfg));
}

CMatrix setting_hamiltonian(const std::string& name) {
  for (const auto& s : metrology::standard_settings()) {
    if (s.name == name) return s.h_a;
  }
  throw ValidationError("unknown setting '" + name + "' (expected H1, H2 or H3)");
}

std::vector<Quantifier> parse_quantifier_list(const std::string& text) {
  std::vector<Quantifier> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_quantifier(item));
  if (out.empty()) throw ValidationError("empty quantifier list");
  return out;
}

std::vector<std::string> names_of(const std::vector<Quantifier>& qs) {
  std::vector<std::string> out;
  for (auto q : qs) out.push_back(to_string(q));
  return out;
}

// --- commands ---------------------------------------------------------------

int run_bloch(const Config& cfg) {
  bloch::BlochParams p;
  p.m0 = cfg.number("m0", 1.0);
  p.t1 = cfg.number("t1", 1.0);
  p.t2 = cfg.number("t2", 1.0);
  p.delta_omega = cfg.number("delta_omega", 0.0);
  p.omega1 = cfg.number("omega1", 0.0);
  const auto init = cfg.triple("m_init").value_or(CorrelationTriple{0.0, 0.0, p.m0});
  const auto times = dynamics::uniform_grid(0.0, cfg.number("t_end", 5.0 * p.t1), cfg.integer("points", 200));
  const auto traj = bloch::trajectory(p, {init.c1, init.c2, init.c3}, times);

  const auto write = [&](std::ostream& out) {
    io::CsvWriter w(out, cfg.hash(), {"t", "mx", "my", "mz"});
    for (const auto& pt : traj) w.row({pt.t, pt.m.mx, pt.m.my, pt.m.mz});
  };
  if (cfg.has("out")) {
    auto out = open_output(cfg.text("out", ""));
    write(out);
    const auto inf = bloch::stationary(p);
    emit({{"out", cfg.text("out", "")}, {"stationary", {inf.mx, inf.my, inf.mz}}});
  } else {
    write(std::cout);
  }
  return 0;
}

int run_work(const Config& cfg) {
  const bloch::SpinPulse sp{cfg.number("omega0", 0.0), cfg.number("omega1", 0.0), cfg.number("delta_omega", 0.0),
                            cfg.number("tau", 0.0)};
  const double b0 = cfg.number("b0", 1.0);
  json out = {{"classical", bloch::classical_work(cfg.number("m0", 1.0), b0, sp)},
              {"quantum", bloch::quantum_work(sp)},
              {"sigma_z", bloch::sigma_z_expect(sp)}};
  if (cfg.has("sigma_z0")) out["average"] = bloch::average_work(cfg.number("sigma_z0", 0.0), b0, sp);
  emit(out);
  return 0;
}

int run_state(const Config& cfg) {
  const std::string family = cfg.text("family", "bell_diagonal");
  const auto rho = [&]() -> DensityMatrix {
    if (family == "bell_diagonal") return states::bell_diagonal(require_triple(cfg));
    if (family == "m3n") return states::m3n_state(require_triple(cfg), cfg.integer("n", 3));
    if (family == "pseudo_singlet") return states::pseudo_singlet(cfg.number("epsilon", 0.0));
    if (family == "probe") {
      return states::probe_state(cfg.number("p", 0.0), states::parse_probe_kind(cfg.text("probe", "quantum")));
    }
    if (family == "mixed") return states::maximally_mixed(cfg.integer("n", 2));
    throw ValidationError("unknown state family '" + family + "'");
  }();
  json out = {{"family", family},
              {"n_qubits", rho.n_qubits()},
              {"purity", rho.purity()},
              {"triple", triple_json(states::correlation_triple(rho))}};
  if (rho.n_qubits() == 2) {
    const auto peres = states::peres_entangled(rho);
    out["peres"] = {{"negative_eigenvalue", peres.negative_eigenvalue}, {"entangled", peres.entangled}};
  }
  if (cfg.flag("threshold")) out["pseudopure_threshold"] = states::pseudopure_entanglement_threshold();
  if (cfg.has("out")) {
    auto f = open_output(cfg.text("out", ""));
    f << io::to_json(rho).dump() << '\n';
    out["out"] = cfg.text("out", "");
  }
  emit(out);
  return 0;
}

int run_channel(const Config& cfg) {
  const auto rho = input_state(cfg);
  const std::string name = cfg.text("channel", "pd");
  const auto channel = [&]() -> KrausChannel {
    if (name == "pd") return channels::pd_channel({cfg.number("q", 0.0)});
    if (name == "gad") {
      const double bias = cfg.has("alpha") ? channels::GadParams::bias_from_alpha(cfg.number("alpha", 0.0))
                                           : cfg.number("p_bias", 0.5);
      return channels::gad_channel({cfg.number("gamma", 0.0), bias});
    }
    if (name == "gpd") return channels::gpd_channel(cfg.number("q", 0.0));
    throw ValidationError("unknown channel '" + name + "'");
  }();
  const DensityMatrix out_state = name == "gpd"
                                      ? channels::apply(channel, rho)
                                      : channels::local_apply(channels::replicate(channel, rho.n_qubits()), rho);
  json out = {{"channel", name},
              {"completeness_residual", channel.completeness_residual()},
              {"triple_in", triple_json(states::correlation_triple(rho))},
              {"triple_out", triple_json(states::correlation_triple(out_state))},
              {"purity_out", out_state.purity()}};
  if (cfg.has("out")) {
    auto f = open_output(cfg.text("out", ""));
    f << io::to_json(out_state).dump() << '\n';
    out["out"] = cfg.text("out", "");
  }
  emit(out);
  return 0;
}

int run_discord(const Config& cfg) {
  const auto rho = input_state(cfg);
  const std::string metric = cfg.text("metric", "entropic");
  const Side side = parse_side(cfg.text("side", "A"));
  if (metric == "entropic") {
    if (side == Side::both) throw ValidationError("entropic discord measures one side (A or B)");
    auto j = io::to_json(correlations::entropic_discord(rho, side));
    j["side"] = to_string(side);
    emit(j);
  } else if (metric == "luo") {
    const auto c = states::correlation_triple(rho);
    if (!correlations::is_bell_diagonal(rho)) throw ValidationError("the luo closed form needs a Bell-diagonal state");
    emit({{"mutual", correlations::luo_mutual_information(c)},
          {"classical", correlations::luo_classical(c)},
          {"discord", correlations::luo_discord(c)},
          {"metric", "luo"}});
  } else if (metric == "geometric_classical") {
    emit({{"value", correlations::geometric_classical(rho)}, {"metric", metric}});
  } else if (metric == "gqd") {
    const auto r = correlations::global_quantum_discord_report(rho);
    json bases = json::array();
    for (const auto& b : r.bases) bases.push_back({{"theta", b.theta}, {"phi", b.phi}});
    emit({{"value", r.value}, {"metric", metric}, {"bases", bases}, {"sweeps", r.sweeps}});
  } else {
    const Metric m = parse_metric(metric);
    auto j = io::to_json(correlations::geometric_discord(rho, m, side), m);
    j["side"] = to_string(side);
    emit(j);
  }
  return 0;
}

int run_dynamics(const Config& cfg) {
  const auto c0 = require_triple(cfg);
  const std::string channel = cfg.text("channel", "pd");
  const auto quantifiers = parse_quantifier_list(cfg.text("quantifiers", "mutual_info,classical,discord"));
  const int points = cfg.integer("points", 200);
  const auto mode = [&] {
    const std::string m = cfg.text("mode", "snapshot");
    if (m == "snapshot") return dynamics::Evolution::snapshot;
    if (m == "chained") return dynamics::Evolution::chained;
    throw ValidationError("unknown evolution mode '" + m + "'");
  }();

  Trajectory traj;
  std::function<double(double)> damping;  // per-qubit p(t) for PD runs
  if (channel == "pd") {
    if (cfg.has("gammas")) {
      const auto gammas = cfg.numbers("gammas", {});
      if (gammas.size() != 2) throw ValidationError("--gammas needs two rates");
      const double g = dynamics::effective_gamma(gammas);
      const auto times = dynamics::uniform_grid(0.0, cfg.number("t_end", 2.5 / g), points);
      traj = dynamics::evolve_general(states::bell_diagonal(c0), dynamics::local_pd_family(gammas), times, mode);
      damping = [g](double t) { return 1.0 - std::exp(-g * t); };
    } else {
      const double g = cfg.number("gamma", 1.0);
      const auto times = dynamics::default_time_grid(g, points);
      traj = dynamics::evolve_bd_pd(c0, g, cfg.has("t_end") ? dynamics::uniform_grid(0.0, cfg.number("t_end", 0.0), points)
                                                            : times);
      damping = [g](double t) { return 1.0 - std::exp(-g * t); };
    }
  } else if (channel == "gad") {
    const double t1 = cfg.number("t1", 1.0);
    const auto times = dynamics::uniform_grid(0.0, cfg.number("t_end", 2.5 * t1), points);
    traj = dynamics::evolve_general(states::bell_diagonal(c0), dynamics::local_gad_family(2, t1, cfg.number("alpha", 0.0)),
                                    times, mode);
  } else if (channel == "gpd") {
    const double g = cfg.number("gamma", 1.0);
    const auto times = dynamics::uniform_grid(0.0, cfg.number("t_end", 2.5 / g), points);
    traj = dynamics::evolve_general(states::bell_diagonal(c0), dynamics::gpd_family(g), times, mode);
  } else {
    throw ValidationError("unknown channel '" + channel + "'");
  }
  dynamics::add_quantifiers(traj, quantifiers);

  json changes = json::array();
  for (const auto& name : names_of(quantifiers)) {
    for (const auto& cp : dynamics::detect_sudden_changes(traj, name, {cfg.number("slope_tol", 0.05)})) {
      json j = {{"series", cp.series}, {"time", cp.time}, {"kind", to_string(cp.kind)}};
      if (damping) j["p"] = damping(cp.time);
      changes.push_back(j);
    }
  }
  if (damping) {
    std::vector<double> p;
    for (double t : traj.times) p.push_back(damping(t));
    traj.set_series("p", p);
  }
  json out = {{"channel", channel}, {"case", to_string(dynamics::classify_dynamics(c0))}, {"change_points", changes}};
  if (cfg.has("out")) {
    auto f = open_output(cfg.text("out", ""));
    io::write_trajectory_csv(f, cfg.hash(), traj);
    out["out"] = cfg.text("out", "");
  }
  emit(out);
  return 0;
}

int run_freeze(const Config& cfg) {
  const auto c0 = require_triple(cfg);
  const double gamma = cfg.number("gamma", 1.0);
  FreezeReport r = dynamics::freezing_time(c0, gamma);
  if (cfg.has("quantifier")) {
    const auto times = cfg.has("t_end") ? dynamics::uniform_grid(0.0, cfg.number("t_end", 0.0), cfg.integer("points", 200))
                                        : dynamics::default_time_grid(gamma, cfg.integer("points", 200));
    r = dynamics::verify_freezing(c0, gamma, parse_quantifier(cfg.text("quantifier", "")), times);
  }
  auto j = io::to_json(r);
  j["quantifier"] = cfg.has("quantifier") ? json(cfg.text("quantifier", "")) : json(nullptr);
  emit(j);
  return 0;
}

int run_gqd(const Config& cfg) {
  const int n = cfg.integer("n", 3);
  const auto c0 = cfg.triple("c").value_or(n == 3 ? CorrelationTriple{0.7, 0.3, 0.3} : CorrelationTriple{1.0, 0.7, 0.7});
  const double gamma = cfg.number("gamma", 1.0);
  const auto times = dynamics::uniform_grid(0.0, cfg.number("t_end", 1.0 / gamma), cfg.integer("points", 21));
  const auto scan = dynamics::gqd_parity_scan(n, c0, gamma, times);
  json out = {{"n", n},
              {"plateau_detected", scan.plateau_detected},
              {"t_star", scan.t_star},
              {"plateau_relative_variation", scan.plateau_relative_variation}};
  if (cfg.has("out")) {
    auto f = open_output(cfg.text("out", ""));
    io::write_trajectory_csv(f, cfg.hash(), scan.trajectory);
    out["out"] = cfg.text("out", "");
  }
  emit(out);
  return 0;
}

DensityMatrix probe_or_state(const Config& cfg) {
  if (cfg.has("state") || cfg.has("c")) return input_state(cfg);
  return states::probe_state(cfg.number("p", 0.0), states::parse_probe_kind(cfg.text("probe", "quantum")));
}

int run_ip(const Config& cfg) {
  const auto rho = probe_or_state(cfg);
  json out = {{"ip", metrology::interferometric_power(rho)}};
  if (cfg.flag("oracle")) {
    const int samples = cfg.integer("samples", 1000);
    if (samples < 1) throw ValidationError("--samples must be positive");
    const auto o = metrology::interferometric_power_bruteforce(rho, static_cast<std::size_t>(samples));
    out["oracle"] = {{"value", o.value}, {"axis", {o.axis.x(), o.axis.y(), o.axis.z()}}};
  }
  emit(out);
  return 0;
}

int run_estimate(const Config& cfg) {
  const auto rho = probe_or_state(cfg);
  const std::string setting = cfg.text("setting", "H1");
  const int seed = cfg.integer("seed", 0);
  if (seed < 0) throw ValidationError("--seed must be nonnegative");
  const EstimateOptions opts{cfg.flag("shot_noise"), static_cast<std::uint64_t>(seed)};
  auto j = io::to_json(
      metrology::estimate(rho, setting_hamiltonian(setting), cfg.number("phi0", kPi / 4), cfg.integer("nu", 100), opts));
  j["setting"] = setting;
  emit(j);
  return 0;
}

int run_suite(const Config& cfg) {
  const auto rows = metrology::blackbox_suite(cfg.numbers("p_grid", {0.0, 0.25, 0.5, 0.75, 1.0}),
                                              cfg.number("phi0", kPi / 4), cfg.integer("nu", 100));
  if (cfg.has("out")) {
    auto f = open_output(cfg.text("out", ""));
    io::write_suite_csv(f, cfg.hash(), rows);
    int pathological = 0;
    for (const auto& r : rows) pathological += r.pathological ? 1 : 0;
    emit({{"out", cfg.text("out", "")}, {"rows", rows.size()}, {"pathological", pathological}});
  } else {
    io::write_suite_csv(std::cout, cfg.hash(), rows);
  }
  return 0;
}

int run_figures(const Config& cfg) {
  namespace fs = std::filesystem;
  const fs::path dir = cfg.text("out_dir", "figures");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ValidationError("cannot create '" + dir.string() + "': " + ec.message());
  const std::string hash = cfg.hash();
  json written = json::array();

  const auto save = [&](const std::string& name, const Trajectory& traj) {
    auto f = open_output((dir / name).string());
    io::write_trajectory_csv(f, hash, traj);
    written.push_back(name);
  };

  const auto p_grid = dynamics::uniform_grid(0.0, 1.0, 1001);
  const std::vector<std::pair<std::string, CorrelationTriple>> pd_panels{
      {"PDdecoh_a.csv", {0.06, 0.30, 0.33}}, {"PDdecoh_b.csv", {0.25, 0.25, 0.0}}, {"PDdecoh_c.csv", {1.0, -0.6, 0.6}}};
  for (const auto& [name, c] : pd_panels) {
    auto traj = dynamics::evolve_bd_pd_damping(c, p_grid);
    dynamics::add_quantifiers(traj, {Quantifier::mutual_info, Quantifier::luo_classical, Quantifier::luo_discord});
    save(name, traj);
  }

  const auto t_grid = dynamics::uniform_grid(0.0, 2.5, 201);
  {
    auto traj = dynamics::evolve_bd_pd({0.49, 0.20, 0.067}, 1.0, t_grid);
    dynamics::add_quantifiers(traj, {Quantifier::trace_discord, Quantifier::geometric_classical});
    save("DSC12.csv", traj);
  }
  {
    auto traj = dynamics::evolve_general(states::bell_diagonal({0.08, 0.14, 0.16}), dynamics::local_gad_family(2, 1.0),
                                         t_grid);
    dynamics::add_quantifiers(traj, {Quantifier::trace_discord, Quantifier::classical, Quantifier::discord});
    save("DSC32.csv", traj);
  }
  {
    auto traj = dynamics::evolve_bd_pd({1.0, 0.7, -0.7}, 1.0, dynamics::default_time_grid(1.0));
    dynamics::add_quantifiers(traj, {Quantifier::discord, Quantifier::trace_discord, Quantifier::bures_discord,
                                     Quantifier::fidelity_discord});
    save("universal_discord.csv", traj);
  }
  const auto gqd_grid = dynamics::uniform_grid(0.0, 0.5, 26);
  save("GQD34qb_n3.csv", dynamics::gqd_parity_scan(3, {0.7, 0.3, 0.3}, 1.0, gqd_grid).trajectory);
  save("GQD34qb_n4.csv", dynamics::gqd_parity_scan(4, {1.0, 0.7, 0.7}, 1.0, gqd_grid).trajectory);
  {
    auto f = open_output((dir / "IPresults.csv").string());
    io::write_suite_csv(f, hash, metrology::blackbox_suite(dynamics::uniform_grid(0.0, 1.0, 21), kPi / 4, 100));
    written.push_back("IPresults.csv");
  }
  emit({{"out_dir", dir.string()}, {"files", written}});
  return 0;
}

using Runner = int (*)(const Config&);

Runner runner_for(const std::string& name) {
  static const std::map<std::string, Runner> table{
      {"bloch", run_bloch}, {"work", run_work}, {"state", run_state},       {"channel", run_channel},
      {"discord", run_discord}, {"dynamics", run_dynamics}, {"freeze", run_freeze}, {"gqd", run_gqd},
      {"ip", run_ip},       {"estimate", run_estimate}, {"suite", run_suite}, {"figures", run_figures}};
  return table.at(name);
}

}  // namespace

int run(int argc, char** argv) {
  const auto specs = command_specs();
  if (argc > 1 && argv[1][0] != '-') {
    const std::string cmd = argv[1];
    const bool known = std::any_of(specs.begin(), specs.end(), [&](const CommandSpec& s) { return s.name == cmd; });
    if (!known) {
      std::cerr << "spincorr-cli: unknown command '" << cmd << "'\n";
      return kExitUnknownCommand;
    }
  }

  CLI::App app{"spincorr-cli: spin correlations, decoherence and black-box metrology"};
  app.require_subcommand(1);

  struct Bound {
    const CommandSpec* spec;
    CLI::App* sub;
    std::string config_path;
    std::map<std::string, std::string> raw;
    std::map<std::string, bool> flags;
    std::map<std::string, CLI::Option*> options;
  };
  std::vector<Bound> bound(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    Bound& b = bound[i];
    b.spec = &specs[i];
    b.sub = app.add_subcommand(specs[i].name, specs[i].help);
    b.sub->add_option("--config", b.config_path, "JSON config file; flags override its keys");
    for (const auto& key : specs[i].keys) {
      if (key.kind == Kind::flag) {
        b.options[key.name] = b.sub->add_flag("--" + key.name, b.flags[key.name], key.help);
      } else {
        b.options[key.name] = b.sub->add_option("--" + key.name, b.raw[key.name], key.help);
      }
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    for (auto& b : bound) {
      if (!b.sub->parsed()) continue;
      std::map<std::string, std::string> given;
      for (const auto& key : b.spec->keys) {
        if (b.options[key.name]->count() == 0) continue;
        given[key.name] = key.kind == Kind::flag ? (b.flags[key.name] ? "true" : "false") : b.raw[key.name];
      }
      const json file_doc = b.config_path.empty() ? json(nullptr) : load_json_file(b.config_path);
      return runner_for(b.spec->name)(merge_config(*b.spec, file_doc, given));
    }
  } catch (const ValidationError& e) {
    std::cerr << "spincorr-cli: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericalError& e) {
    std::cerr << "spincorr-cli: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const io::json::exception& e) {
    std::cerr << "spincorr-cli: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

}  // namespace spincorr::cli

int main(int argc, char** argv) { return spincorr::cli::run(argc, argv); }
