#include "mifslab/simlab.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <exception>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace mifslab {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct ReplicateOutcome {
  bool degenerate = false;
  std::vector<SelectionTrace> traces;  // one per method
  std::exception_ptr error;
};

ReplicateOutcome run_replicate(const ExperimentConfig& c, const ScenarioSpec& spec, std::size_t n,
                               std::size_t replicate) {
  Rng rng(replicate_seed(c.seed, spec.k, n, replicate));
  ReplicateOutcome out;
  try {
    EstimatedProvider provider(generate_sample(spec, n, rng));
    for (const auto& m : c.methods) out.traces.push_back(select_all(m, provider));
  } catch (const DegenerateSampleError&) {
    out.degenerate = true;
    out.traces.clear();
  } catch (...) {
    out.error = std::current_exception();
  }
  return out;
}

}  // namespace

Sample generate_sample(const ScenarioSpec& spec, std::size_t n, Rng& rng) {
  spec.validate();
  if (n < 4) throw std::invalid_argument("sample size must be at least 4");
  Sample s;
  s.features.assign(kScenarioFeatures, std::vector<double>(n));
  s.labels.resize(n);
  std::uniform_real_distribution<double> uniform(-spec.delta, spec.delta);
  std::normal_distribution<double> normal(0.0, 1.0);
  auto draw = [&] { return spec.scenario == Scenario::Uniform ? uniform(rng) : normal(rng); };
  for (std::size_t r = 0; r < n; ++r) {
    const double x = draw(), y = draw(), z = draw(), w = draw();
    const double row[kScenarioFeatures] = {x,     spec.a * x + spec.b, y * y, x - y, z,
                                           z * z, y,                   x * x, w + spec.d, z + w};
    for (std::size_t j = 0; j < kScenarioFeatures; ++j) s.features[j][r] = row[j];
    s.labels[r] = x + spec.k * y >= 0.0 ? 1 : 0;
  }
  return s;
}

bool optimal_pair_hit(const SelectionTrace& t) {
  if (t.selected.size() < 2) return false;
  auto a = t.selected[0], b = t.selected[1];
  if (a > b) std::swap(a, b);
  constexpr std::size_t X = 0, AX = 1, XY = 3, Y = 6;
  constexpr std::pair<std::size_t, std::size_t> hits[] = {
      {X, Y}, {X, XY}, {XY, Y}, {AX, Y}, {AX, XY}};
  return std::any_of(std::begin(hits), std::end(hits),
                     [&](const auto& h) { return h.first == a && h.second == b; });
}

std::uint64_t replicate_seed(std::uint64_t master, double k, std::size_t n, std::size_t replicate) {
  std::uint64_t h = splitmix64(master);
  h = splitmix64(h ^ std::bit_cast<std::uint64_t>(k));
  h = splitmix64(h ^ static_cast<std::uint64_t>(n));
  return splitmix64(h ^ static_cast<std::uint64_t>(replicate));
}

void ExperimentConfig::validate() const {
  if (ks.empty() || ns.empty() || methods.empty())
    throw std::invalid_argument("experiment needs at least one k, one n and one method");
  if (replicates < 1) throw std::invalid_argument("replicates must be at least 1");
  for (auto n : ns)
    if (n < 50) throw std::invalid_argument(fmt::format("sample sizes must be at least 50 (got {})", n));
  for (double k : ks) {
    ScenarioSpec s = scenario;
    s.k = k;
    s.validate();
  }
  for (const auto& m : methods) m.validate();
}

ExperimentResult run_experiment(const ExperimentConfig& c) {
  c.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::size_t workers =
      std::max<std::size_t>(1, c.threads ? c.threads : std::thread::hardware_concurrency());

  ExperimentResult result;
  result.replicates = c.replicates;
  result.seed = c.seed;
  for (double k : c.ks) {
    ScenarioSpec spec = c.scenario;
    spec.k = k;
    for (std::size_t n : c.ns) {
      std::vector<ReplicateOutcome> outcomes(c.replicates);
      std::atomic<std::size_t> next{0};
      {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < std::min(workers, c.replicates); ++w)
          pool.emplace_back([&] {
            for (std::size_t r = next++; r < c.replicates; r = next++)
              outcomes[r] = run_replicate(c, spec, n, r);
          });
      }
      for (const auto& o : outcomes)
        if (o.error) std::rethrow_exception(o.error);
      // Reduce in replicate order.
      for (std::size_t mi = 0; mi < c.methods.size(); ++mi) {
        CellResult cell{spec.scenario, k, n, c.methods[mi], 0, 0, 0, {}};
        for (std::size_t r = 0; r < c.replicates; ++r) {
          const auto& o = outcomes[r];
          if (o.degenerate) {
            ++cell.degenerate;
            continue;
          }
          ++cell.valid;
          if (optimal_pair_hit(o.traces[mi])) ++cell.hits;
          if (c.keep_traces) cell.traces.push_back({r, o.traces[mi].selected, o.traces[mi].halt});
        }
        result.cells.push_back(std::move(cell));
      }
    }
  }
  result.runtime_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void emit_csv(const ExperimentResult& r, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const auto& cell : r.cells) {
    const std::string beta = cell.method.beta ? fmt::format("{}", *cell.method.beta) : "";
    out << fmt::format("{},{},{},{},{},{},{},{}\n", to_string(cell.scenario), cell.k, cell.n,
                       method_name(cell.method.kind), beta, cell.frequency(), r.replicates, r.seed);
  }
}

void emit_csv(const ExperimentResult& r, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  emit_csv(r, out);
  if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path));
}

nlohmann::json traces_to_json(const ExperimentResult& r) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& cell : r.cells) {
    nlohmann::json traces = nlohmann::json::array();
    for (const auto& t : cell.traces) {
      std::vector<std::string> names;
      for (auto f : t.selected) names.push_back(fmt::format("V{}", f + 1));
      traces.push_back({{"replicate", t.replicate}, {"selected", names}, {"halt", to_string(t.halt)}});
    }
    nlohmann::json beta = nullptr;
    if (cell.method.beta) beta = *cell.method.beta;
    cells.push_back({{"scenario", to_string(cell.scenario)},
                     {"k", cell.k},
                     {"n", cell.n},
                     {"method", method_name(cell.method.kind)},
                     {"beta", beta},
                     {"hits", cell.hits},
                     {"valid", cell.valid},
                     {"degenerate", cell.degenerate},
                     {"traces", traces}});
  }
  return {{"seed", r.seed}, {"replicates", r.replicates}, {"cells", cells}};
}

}  // namespace mifslab
