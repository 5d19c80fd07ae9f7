#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "holo/liealg.hpp"
#include "holo/pathspace.hpp"

namespace holo {

// Kinds: wilson, surface, stokes-check, curvature, variation, observe, flatness.
struct ExperimentConfig {
  std::string kind;
  nlohmann::json raw;          // the validated config, as given
  GroupSpec group;
  ChartDomain chart;
  std::vector<Grids> grids;
  unsigned long long seed = 1;
  bool richardson = false;
  std::optional<double> residual_tolerance;  // checked at the finest level
  std::optional<std::pair<double, double>> ratio_band;

  static ExperimentConfig parse(const nlohmann::json& j);
};

// CLI-level overrides applied on top of a parsed config.
struct Overrides {
  std::optional<std::string> kind;
  std::optional<std::string> variation_kind;
  std::optional<int> steps_s;
  std::optional<int> steps_t;
  std::optional<unsigned long long> seed;
  std::optional<unsigned long long> tangent_seed;
  std::optional<bool> richardson;
};
nlohmann::json apply_overrides(nlohmann::json config, const Overrides& o);

// FNV-1a over the compact dump of the config.
std::string config_hash(const nlohmann::json& config);

struct Report {
  nlohmann::json payload;        // deterministic
  std::vector<double> seconds;   // per grid level
  bool pass = true;
};

// Dispatches over the grid schedule; ratios appear only with three or more levels.
Report run_experiment(const ExperimentConfig& cfg);

nlohmann::json matrix_json(const Matrix& m);
nlohmann::json complex_json(const Complex& z);

// Writes report.json (or report.csv) and timing.json into dir.
void emit(const Report& r, const std::string& dir, const std::string& format);
std::string csv_table(const nlohmann::json& payload);

}  // namespace holo
