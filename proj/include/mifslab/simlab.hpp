#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mifslab/estimation.hpp"
#include "mifslab/oracle.hpp"
#include "mifslab/selection.hpp"

namespace mifslab {

using Rng = std::mt19937_64;

/// n rows of the ten scenario features and the class 1{X + kY >= 0}.
Sample generate_sample(const ScenarioSpec& spec, std::size_t n, Rng& rng);

/// Whether the first two selections are one of the five relevance-optimal
/// pairs {X,Y}, {X,X-Y}, {Y,X-Y}, {3X+1,Y}, {3X+1,X-Y}. Shorter traces miss.
bool optimal_pair_hit(const SelectionTrace& t);

/// Seed of the stream for one replicate of one (k, n) cell.
std::uint64_t replicate_seed(std::uint64_t master, double k, std::size_t n, std::size_t replicate);

struct ExperimentConfig {
  ScenarioSpec scenario;  ///< k is taken from `ks`
  std::vector<double> ks;
  std::vector<std::size_t> ns;
  std::vector<MethodSpec> methods;
  std::size_t replicates = 100;
  std::uint64_t seed = 1;
  std::size_t threads = 0;  ///< 0: hardware concurrency
  bool keep_traces = false;

  /// Throws std::invalid_argument on empty grids, R < 1, n < 50, bad k or methods.
  void validate() const;
};

struct ReplicateTrace {
  std::size_t replicate;
  std::vector<std::size_t> selected;
  HaltReason halt;
};

struct CellResult {
  Scenario scenario;
  double k;
  std::size_t n;
  MethodSpec method;
  std::size_t hits = 0;
  std::size_t valid = 0;       ///< replicates without a degenerate sample
  std::size_t degenerate = 0;  ///< excluded replicates
  std::vector<ReplicateTrace> traces;

  double frequency() const { return valid ? static_cast<double>(hits) / valid : 0.0; }
};

struct ExperimentResult {
  std::vector<CellResult> cells;  ///< k-major, then n, then method
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
  double runtime_seconds = 0.0;
};

/// Deterministic given the config, whatever the thread count.
ExperimentResult run_experiment(const ExperimentConfig& c);

inline constexpr const char* kCsvHeader = "scenario,k,n,method,beta,frequency,replicates,seed";
void emit_csv(const ExperimentResult& r, std::ostream& out);
void emit_csv(const ExperimentResult& r, const std::string& path);

/// Per-replicate selections of every cell (cells with kept traces only).
nlohmann::json traces_to_json(const ExperimentResult& r);

}  // namespace mifslab
