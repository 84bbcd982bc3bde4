#include "spincorr/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace spincorr::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return {buf, res.ptr};
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(const json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(config.dump())));
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, const std::string& hash, const std::vector<std::string>& columns)
    : out_(out), columns_(columns.size()) {
  out_ << "# config_hash=" << hash << '\n';
  row_cells(columns);
}

void CsvWriter::row(const std::vector<double>& values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_double(v));
  row_cells(cells);
}

void CsvWriter::row_cells(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) throw ValidationError("CSV row width differs from the header");
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

json to_json(const DensityMatrix& rho) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < rho.dim(); ++j) row.push_back({rho.matrix()(i, j).real(), rho.matrix()(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return {{"n_qubits", rho.n_qubits()}, {"matrix", std::move(rows)}};
}

DensityMatrix state_from_json(const json& doc) {
  try {
    const int n = doc.at("n_qubits").get<int>();
    if (n < 1 || n > 10) throw ValidationError("state JSON: n_qubits out of range");
    const auto& rows = doc.at("matrix");
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != dim) {
      throw ValidationError("state JSON: matrix must have 2^n_qubits rows");
    }
    CMatrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
        throw ValidationError("state JSON: every row must have 2^n_qubits entries");
      }
      for (Eigen::Index j = 0; j < dim; ++j) {
        const auto& e = row[static_cast<std::size_t>(j)];
        if (!e.is_array() || e.size() != 2) throw ValidationError("state JSON: entries are [re, im] pairs");
        m(i, j) = cplx(e[0].get<double>(), e[1].get<double>());
      }
    }
    return DensityMatrix(std::move(m));
  } catch (const json::exception& e) {
    throw ValidationError(std::string("state JSON: ") + e.what());
  }
}

json to_json(const CorrelationReport& report, const std::string& metric) {
  return {{"mutual", report.mutual_info},
          {"classical", report.classical},
          {"discord", report.discord},
          {"metric", metric},
          {"basis", {{"theta", report.optimizer_basis.theta}, {"phi", report.optimizer_basis.phi}}},
          {"residual", report.optimizer_residual}};
}

json to_json(const GeometricResult& result, Metric metric) {
  return {{"value", result.value},
          {"metric", to_string(metric)},
          {"basis", {{"theta", result.basis_a.theta}, {"phi", result.basis_a.phi}}},
          {"basis_b", {{"theta", result.basis_b.theta}, {"phi", result.basis_b.phi}}},
          {"residual", result.optimizer_residual}};
}

json to_json(const std::vector<ChangePoint>& changes) {
  json out = json::array();
  for (const auto& c : changes) out.push_back({{"time", c.time}, {"kind", to_string(c.kind)}, {"series", c.series}});
  return out;
}

json to_json(const FreezeReport& report) {
  json out = {{"frozen", report.frozen},
              {"t_star", report.t_star},
              {"plateau_relative_variation", report.plateau_relative_variation},
              {"decreasing_after", report.decreasing_after}};
  out["observed_t_star"] = report.observed_t_star ? json(*report.observed_t_star) : json(nullptr);
  return out;
}

json to_json(const EstimationOutcome& outcome) {
  return {{"F", outcome.f},
          {"mean_phi", outcome.mean_phi},
          {"var_phi", outcome.var_phi},
          {"d", outcome.d_values},
          {"l", outcome.l_values}};
}

void write_triples_csv(std::ostream& out, const std::string& hash,
                       const std::vector<std::pair<std::string, CorrelationTriple>>& rows) {
  CsvWriter w(out, hash, {"label", "c1", "c2", "c3"});
  for (const auto& [label, c] : rows) {
    w.row_cells({label, format_double(c.c1), format_double(c.c2), format_double(c.c3)});
  }
}

void write_trajectory_csv(std::ostream& out, const std::string& hash, const Trajectory& traj) {
  traj.validate();
  const bool with_triples = !traj.triples.empty();
  std::vector<std::string> columns{traj.abscissa};
  if (with_triples) columns.insert(columns.end(), {"c1", "c2", "c3"});
  for (const auto& q : traj.quantifiers) columns.push_back(q.first);
  CsvWriter w(out, hash, columns);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    std::vector<double> row{traj.times[i]};
    if (with_triples) row.insert(row.end(), {traj.triples[i].c1, traj.triples[i].c2, traj.triples[i].c3});
    for (const auto& q : traj.quantifiers) row.push_back(q.second[i]);
    w.row(row);
  }
}

void write_suite_csv(std::ostream& out, const std::string& hash, const std::vector<SuiteRow>& rows) {
  CsvWriter w(out, hash, {"probe", "p", "setting", "F", "IP", "mean_phi", "var_phi"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& r : rows) {
    w.row_cells({states::to_string(r.probe), format_double(r.p), r.setting, format_double(r.f), format_double(r.ip),
                 format_double(r.pathological ? nan : r.mean_phi), format_double(r.pathological ? nan : r.var_phi)});
  }
}

}  // namespace spincorr::io
