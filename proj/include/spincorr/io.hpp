// Serialization: locale-independent CSV emitters and JSON documents for
// states, reports, change points and freeze reports.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spincorr/correlations.hpp"
#include "spincorr/dynamics.hpp"
#include "spincorr/metrology.hpp"

namespace spincorr::io {

using json = nlohmann::json;

/// Shortest round-trip text for v with at most 17 significant digits, '.' decimal; "nan"/"inf"/"-inf".
std::string format_double(double v);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view text);

/// Hex FNV-1a of the canonical (sorted-key, compact) dump of a config document.
std::string config_hash(const json& config);

/// CSV with a leading "# config_hash=<hex>" comment line, then the header row.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::string& hash, const std::vector<std::string>& columns);

  void row(const std::vector<double>& values);
  /// Pre-formatted cells, e.g. labels mixed with numbers.
  void row_cells(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
  std::size_t columns_;
};

json to_json(const DensityMatrix& rho);
/// {n_qubits, matrix: rows of [re, im] pairs}; validates the state.
DensityMatrix state_from_json(const json& doc);

json to_json(const CorrelationReport& report, const std::string& metric = "entropic");
json to_json(const GeometricResult& result, Metric metric);
json to_json(const std::vector<ChangePoint>& changes);
json to_json(const FreezeReport& report);
json to_json(const EstimationOutcome& outcome);

/// label,c1,c2,c3
void write_triples_csv(std::ostream& out, const std::string& hash,
                       const std::vector<std::pair<std::string, CorrelationTriple>>& rows);

/// <abscissa>,c1,c2,c3,<quantifier columns in insertion order>
void write_trajectory_csv(std::ostream& out, const std::string& hash, const Trajectory& traj);

/// probe,p,setting,F,IP,mean_phi,var_phi; pathological rows carry "nan" estimates.
void write_suite_csv(std::ostream& out, const std::string& hash, const std::vector<SuiteRow>& rows);

}  // namespace spincorr::io
