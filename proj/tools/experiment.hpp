#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "repgames/grid.hpp"

namespace repgames::cli {

struct ExperimentConfig {
  std::string game;  // eikonal, pide or icf
  int dim = 1;
  double lo = -1.0, hi = 1.0;
  int n = 0;               // fixed node count per axis, or
  double h_over_eps = 0.0;  // spacing tied to eps
  std::string terminal;
  std::string speed = "const(1)";
  std::string nonlinearity = "linear_nonlocal";
  std::string measure = "uniform(1)";
  double alpha = 0.3;
  std::string kernel = "power(0.5, 1)";
  nlohmann::json family = nlohmann::json::object();
  std::vector<double> schedule;
  double T = 1.0;
  double duration = 0.5;
  double dt_over_eps2 = 0.25;
  bool oracle = true;
  double probe_lo = -1.0, probe_hi = 1.0;
  std::uint64_t seed = 1;
  std::string output = "out";
  std::vector<std::string> suites;
  bool suites_given = false;
  nlohmann::json raw;

  // Throws ConfigError on unknown keys, bad values or registry misses.
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load(const std::string& path);
  Grid grid_for(double eps) const;
};

struct Row {
  double eps = 0.0, h = 0.0, dt = 0.0;
  double error_sup = 0.0, error_levelset = 0.0, runtime_s = 0.0;
  std::string flag;
};

struct RunOptions {
  std::string out_dir;
  bool timing = true;
  unsigned threads = 0;
};

// Solves each eps of the schedule, compares against the oracle and writes
// <out>/results.csv and <out>/manifest.json.
std::vector<Row> run(const ExperimentConfig& cfg, const RunOptions& opts);
void write_rows_csv(const std::vector<Row>& rows, const std::string& path);

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
  nlohmann::json witness;
};

// Runs the selected property suites (all when none are selected in the
// config); writes <out>/verdict.json.
std::vector<Verdict> verify(const ExperimentConfig& cfg, const RunOptions& opts);
std::vector<std::string> known_suites();

// Dumps the oracle solution for each eps to <out>/oracle_<k>.csv.
std::vector<std::string> dump_oracles(const ExperimentConfig& cfg, const RunOptions& opts);

// Concatenates CSV files with identical headers, prefixing a source column.
void merge_tables(const std::vector<std::string>& inputs, const std::string& output);

}  // namespace repgames::cli
