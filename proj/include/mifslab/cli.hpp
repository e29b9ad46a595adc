#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mifslab/simlab.hpp"

namespace mifslab::cli {

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  ///< I/O, schema or verification failure
inline constexpr int kUsage = 2;    ///< invalid flags or values

/// Malformed simulate config; the message starts with "line N:".
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Entry point of the mifslab tool.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct OracleOptions {
  Scenario scenario = Scenario::Uniform;
  double k = 0.2;
};
/// TSV: feature, entropy, mi_class with four decimals.
void cmd_oracle(const OracleOptions& o, std::ostream& out);

struct OrderOptions {
  Scenario scenario = Scenario::Uniform;
  double k = 0.2;
  std::string method = "mifs";
  std::optional<double> beta;
  std::optional<std::string> data;   ///< sample CSV; replaces the oracle
  std::optional<std::string> trace;  ///< TSV path, "-" for stdout
};
void cmd_order(const OrderOptions& o, std::ostream& out);

/// Methods as "name" or "name:beta", e.g. "mifs:0.4".
MethodSpec parse_method_token(const std::string& token);
std::string method_token(const MethodSpec& m);

/// Simulate config: `key = value` lines, `#` comments. Keys: scenario, delta,
/// a, b, d, k, n, methods, replicates, seed, threads, output, traces. Lists
/// are comma separated.
struct SimulateOptions {
  ExperimentConfig experiment;
  std::optional<std::string> output;  ///< CSV path; stdout when empty
  std::optional<std::string> traces;  ///< JSON trace dump path
};
SimulateOptions default_simulate_options();
/// Applies a config file's entries on top of `base`.
SimulateOptions parse_simulate_config(std::istream& in, SimulateOptions base);
SimulateOptions parse_simulate_config_file(const std::string& path, SimulateOptions base);
void cmd_simulate(const SimulateOptions& o, std::ostream& out);

/// Partition (relative to the first relevance-optimal set), the optimal sets,
/// and the Markov blanket filter result of a labeled joint in JSON.
void cmd_relevance(const std::string& path, std::ostream& out);

/// Identity, X^2 independence and spot checks; returns true if all pass.
bool cmd_verify(std::ostream& out);

}  // namespace mifslab::cli
