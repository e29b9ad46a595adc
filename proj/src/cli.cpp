#include "mifslab/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "mifslab/infotheory.hpp"
#include "mifslab/relevance.hpp"

namespace mifslab::cli {

namespace {

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (auto t = trim(item); !t.empty()) out.push_back(t);
  return out;
}

template <typename T>
T parse_number(const std::string& text, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw std::invalid_argument(fmt::format("{}: '{}' is not a valid number", what, text));
  return value;
}

std::vector<std::string> scenario_names(const ScenarioSpec& spec) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < kScenarioFeatures; ++i)
    names.push_back(feature_label(spec, static_cast<FeatureId>(i)));
  return names;
}

std::string feature_list(const LabeledJoint& j, const std::vector<std::size_t>& features) {
  if (features.empty()) return "none";
  std::vector<std::string> names;
  for (auto f : features) names.push_back(j.feature_name(f));
  return fmt::format("{}", fmt::join(names, ", "));
}

std::string feature_set(const LabeledJoint& j, const FeatureSet& s) {
  std::vector<std::string> names;
  for (auto f : s) names.push_back(j.feature_name(f));
  return fmt::format("{{{}}}", fmt::join(names, ","));
}

}  // namespace

void cmd_oracle(const OracleOptions& o, std::ostream& out) {
  ScenarioSpec spec{o.scenario};
  spec.k = o.k;
  spec.validate();
  const OracleProvider p(spec);
  out << "feature\tentropy\tmi_class\n";
  for (std::size_t i = 0; i < p.feature_count(); ++i)
    out << fmt::format("V{}\t{:.4f}\t{:.4f}\n", i + 1, p.entropy(i).value(), p.class_mi(i).value());
}

void cmd_order(const OrderOptions& o, std::ostream& out) {
  const MethodSpec method = parse_method(o.method, o.beta);
  ScenarioSpec spec{o.scenario};
  spec.k = o.k;

  std::unique_ptr<MIProvider> provider;
  if (o.data) {
    Sample sample = read_sample_csv(*o.data);
    std::vector<std::string> names;
    if (sample.feature_count() == kScenarioFeatures) names = scenario_names(spec);
    provider = std::make_unique<EstimatedProvider>(std::move(sample), std::move(names));
  } else {
    spec.validate();
    provider = std::make_unique<OracleProvider>(spec);
  }

  const SelectionTrace t = select_all(method, *provider);
  for (std::size_t s = 0; s < t.selected.size(); ++s) {
    const auto& step = t.steps[s];
    const auto it = std::find_if(step.candidates.begin(), step.candidates.end(),
                                 [&](const CandidateScore& c) { return c.feature == t.selected[s]; });
    out << fmt::format("step {}: {} (objective {})\n", s + 1, provider->feature_name(t.selected[s]),
                       to_string(it->objective));
  }
  out << summary_line(t, *provider) << '\n';

  if (o.trace) {
    if (*o.trace == "-") {
      write_trace_tsv(out, t, *provider);
    } else {
      std::ofstream f(*o.trace);
      if (!f) throw std::runtime_error(fmt::format("cannot write '{}'", *o.trace));
      write_trace_tsv(f, t, *provider);
    }
  }
}

MethodSpec parse_method_token(const std::string& token) {
  const auto colon = token.find(':');
  if (colon == std::string::npos) return parse_method(trim(token));
  return parse_method(trim(token.substr(0, colon)),
                      parse_number<double>(trim(token.substr(colon + 1)), "beta"));
}

std::string method_token(const MethodSpec& m) {
  return m.beta ? fmt::format("{}:{}", method_name(m.kind), *m.beta) : method_name(m.kind);
}

SimulateOptions default_simulate_options() {
  SimulateOptions o;
  o.experiment.scenario = ScenarioSpec{Scenario::Uniform};
  o.experiment.ks = {0.8};
  o.experiment.ns = {5000};
  o.experiment.methods = {MethodSpec::mifs(1.0), MethodSpec::of(MethodKind::MRMR),
                          MethodSpec::of(MethodKind::MAXMIFS)};
  o.experiment.replicates = 100;
  o.experiment.seed = 1;
  return o;
}

SimulateOptions parse_simulate_config(std::istream& in, SimulateOptions o) {
  std::string line;
  std::size_t line_no = 0;
  std::map<std::string, std::size_t> seen;
  auto& e = o.experiment;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (auto [it, fresh] = seen.emplace(key, line_no); !fresh)
      throw ConfigError(
          fmt::format("line {}: duplicate key '{}' (first set on line {})", line_no, key, it->second));
    if (value.empty()) throw ConfigError(fmt::format("line {}: empty value for '{}'", line_no, key));
    try {
      if (key == "scenario") {
        e.scenario.scenario = parse_scenario(value);
      } else if (key == "delta") {
        e.scenario.delta = parse_number<double>(value, "delta");
      } else if (key == "a") {
        e.scenario.a = parse_number<double>(value, "a");
      } else if (key == "b") {
        e.scenario.b = parse_number<double>(value, "b");
      } else if (key == "d") {
        e.scenario.d = parse_number<double>(value, "d");
      } else if (key == "k") {
        e.ks.clear();
        for (const auto& t : split(value, ',')) e.ks.push_back(parse_number<double>(t, "k"));
      } else if (key == "n") {
        e.ns.clear();
        for (const auto& t : split(value, ',')) {
          e.ns.push_back(parse_number<std::size_t>(t, "n"));
          if (e.ns.back() < 50)
            throw std::invalid_argument(fmt::format("sample sizes must be at least 50 (got {})", e.ns.back()));
        }
      } else if (key == "methods") {
        e.methods.clear();
        for (const auto& t : split(value, ',')) e.methods.push_back(parse_method_token(t));
      } else if (key == "replicates") {
        e.replicates = parse_number<std::size_t>(value, "replicates");
      } else if (key == "seed") {
        e.seed = parse_number<std::uint64_t>(value, "seed");
      } else if (key == "threads") {
        e.threads = parse_number<std::size_t>(value, "threads");
      } else if (key == "output") {
        o.output = value;
      } else if (key == "traces") {
        o.traces = value;
      } else {
        throw std::invalid_argument(fmt::format("unknown key '{}'", key));
      }
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(fmt::format("line {}: {}", line_no, ex.what()));
    }
  }
  return o;
}

SimulateOptions parse_simulate_config_file(const std::string& path, SimulateOptions base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  try {
    return parse_simulate_config(in, std::move(base));
  } catch (const ConfigError& ex) {
    throw ConfigError(fmt::format("{}: {}", path, ex.what()));
  }
}

void cmd_simulate(const SimulateOptions& o, std::ostream& out) {
  ExperimentConfig c = o.experiment;
  c.keep_traces = o.traces.has_value();
  const ExperimentResult r = run_experiment(c);
  if (o.output) {
    emit_csv(r, *o.output);
  } else {
    emit_csv(r, out);
  }
  if (o.traces) {
    std::ofstream f(*o.traces);
    if (!f) throw std::runtime_error(fmt::format("cannot write '{}'", *o.traces));
    f << traces_to_json(r).dump(2) << '\n';
  }
  for (const auto& cell : r.cells)
    if (cell.degenerate)
      std::cerr << fmt::format("warning: {} degenerate replicate(s) excluded at k={}, n={}\n",
                               cell.degenerate, cell.k, cell.n);
}

void cmd_relevance(const std::string& path, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw std::runtime_error(fmt::format("{}: {}", path, ex.what()));
  }
  const LabeledJoint j = [&] {
    try {
      return labeled_joint_from_json(doc);
    } catch (const std::exception& ex) {
      throw std::runtime_error(fmt::format("{}: {}", path, ex.what()));
    }
  }();
  const auto optimal = relevance_optimal_sets(j);
  const auto classes = partition(j, optimal.front());

  std::map<RelevanceClass, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < classes.size(); ++i) groups[classes[i]].push_back(i);
  for (auto rc : {RelevanceClass::SR, RelevanceClass::WR_NR, RelevanceClass::WR_R,
                  RelevanceClass::Irrelevant})
    out << to_string(rc) << ": " << feature_list(j, groups[rc]) << '\n';

  std::vector<std::string> sets;
  for (const auto& s : optimal) sets.push_back(feature_set(j, s));
  out << "optimal sets: " << fmt::format("{}", fmt::join(sets, ",")) << '\n';
  out << "markov blanket filter: " << feature_set(j, markov_blanket_filter(j)) << '\n';
}

bool cmd_verify(std::ostream& out) {
  bool all = true;
  auto check = [&](const std::string& name, bool ok, const std::string& detail) {
    out << (ok ? "PASS " : "FAIL ") << name << " (" << detail << ")\n";
    all = all && ok;
  };

  {
    const auto zero = XReal::finite(0.0), inf = XReal::pos_inf();
    const bool ok = xmul(zero, inf).is_indet() && xadd(inf, XReal::neg_inf()).is_indet() &&
                    xdiv(zero, zero).is_indet() && xdiv(XReal::finite(0.5), zero).is_pos_inf();
    check("xreal indeterminate forms", ok, "0*inf, inf-inf, 0/0, 0.5/0");
  }

  {
    std::mt19937_64 rng(20240521);
    std::uniform_int_distribution<std::size_t> arity(2, 4);
    std::uniform_real_distribution<double> mass(0.0, 1.0);
    double worst_identity = 0.0, worst_chain = 0.0;
    for (int rep = 0; rep < 200; ++rep) {
      std::vector<std::size_t> ar = {arity(rng), arity(rng), arity(rng)};
      std::vector<double> m(ar[0] * ar[1] * ar[2]);
      double total = 0.0;
      for (auto& v : m) total += v = mass(rng);
      for (auto& v : m) v /= total;
      const JointTable t(ar, m);
      worst_identity = std::max(worst_identity, std::abs(mi(t, {0}, {1}) - mi_direct(t, {0}, {1})));
      const double a = mi(t, {0}, {1}) - cond_mi(t, {0}, {1}, {2});
      const double b = mi(t, {0}, {2}) - cond_mi(t, {0}, {2}, {1});
      const double c = mi(t, {1}, {2}) - cond_mi(t, {1}, {2}, {0});
      worst_chain = std::max({worst_chain, std::abs(a - b), std::abs(a - c)});
    }
    check("MI identity on random tables", worst_identity < 1e-10,
          fmt::format("max deviation {:.2e}", worst_identity));
    check("TMI chain rule on random tables", worst_chain < 1e-10,
          fmt::format("max deviation {:.2e}", worst_chain));
  }

  const std::pair<const char*, BaseDistribution> bases[] = {
      {"Unif(-0.5,0.5)", BaseDistribution::uniform(0.5)},
      {"Unif(-1,1)", BaseDistribution::uniform(1.0)},
      {"N(0,1)", BaseDistribution::normal()}};
  for (double k : {0.2, 0.8})
    for (const auto& [label, base] : bases) {
      const double v = class_square_mi(k, base);
      check(fmt::format("MI(C_k, X^2) = 0, k={}, {}", k, label), std::abs(v) < 1e-3,
            fmt::format("{:.2e}", v));
    }

  auto spot = [&](const std::string& name, double got, double want, double tol) {
    check(name, std::abs(got - want) <= tol, fmt::format("{:.5f} vs {:.4f}", got, want));
  };
  const auto i02 = ScenarioSpec::uniform(0.2);
  const auto ii02 = ScenarioSpec::gaussian(0.2);
  spot("Scenario I MI(C,X), k=0.2", class_mi(i02, FeatureId::V1), 0.5932, 1e-4);
  spot("Scenario I MI(C,X-Y), k=0.2", class_mi(i02, FeatureId::V4), 0.1785, 1e-4);
  spot("Scenario I h(Y^2)", entropy_of(i02, FeatureId::V3).value(), -1.6932, 1e-4);
  spot("Scenario II MI(C,X), k=0.2", class_mi(ii02, FeatureId::V1), 0.5520, 1e-3);
  spot("Scenario II h(X-Y)", entropy_of(ii02, FeatureId::V4).value(), 1.7655, 1e-4);
  spot("Scenario II MI(Y^2,X-Y)", mi_y2_xy_gaussian(), 0.1078, 2e-3);
  check("affine invariance MI(C,X) = MI(C,3X+1)",
        class_mi(ii02, FeatureId::V1) == class_mi(ii02, FeatureId::V2), "exact");

  const OracleProvider p(i02);
  const auto mifs = summary_line(select_all(MethodSpec::mifs(1.0), p), p);
  check("MIFS(beta=1) ordering, Scenario I k=0.2",
        mifs == "X Y Z W+2 X-Y Z+W 3X+1 Y2 Z2 X2 | halt: all selected", mifs);
  const auto nmifs = summary_line(select_all(MethodSpec::of(MethodKind::NMIFS), p), p);
  check("NMIFS ordering, Scenario I k=0.2",
        nmifs == "X X2 Y2 Z2 X-Y | halt: no admissible candidate", nmifs);

  out << (all ? "all checks passed\n" : "some checks failed\n");
  return all;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mutual-information feature selection laboratory", "mifslab"};
  app.require_subcommand(1);

  const std::map<std::string, Scenario> scenario_map = {
      {"I", Scenario::Uniform}, {"II", Scenario::Gaussian}};

  OracleOptions oracle_opts;
  auto* oracle = app.add_subcommand("oracle", "Print analytic entropies and class MIs");
  oracle->add_option("--scenario", oracle_opts.scenario, "I (uniform) or II (Gaussian)")
      ->transform(CLI::CheckedTransformer(scenario_map));
  oracle->add_option("--k", oracle_opts.k, "Class slope in (0, 1)");

  OrderOptions order_opts;
  std::optional<double> order_beta;
  auto* order = app.add_subcommand("order", "Run a selection method to exhaustion");
  order->add_option("--scenario", order_opts.scenario, "I (uniform) or II (Gaussian)")
      ->transform(CLI::CheckedTransformer(scenario_map));
  order->add_option("--k", order_opts.k, "Class slope in (0, 1)");
  order->add_option("--method", order_opts.method,
                    fmt::format("One of: {}", fmt::join(method_names(), ", ")));
  order->add_option("--beta", order_beta, "Redundancy weight for mifs / mifsu (default 1)");
  order->add_option("--data", order_opts.data, "Sample CSV (v1..v10,class) instead of the oracle")
      ->check(CLI::ExistingFile);
  order->add_option("--trace", order_opts.trace, "Write all candidate objectives as TSV ('-' = stdout)");

  std::optional<std::string> sim_config, sim_output, sim_traces, sim_scenario, sim_k, sim_n,
      sim_methods;
  std::optional<std::size_t> sim_replicates, sim_threads;
  std::optional<std::uint64_t> sim_seed;
  auto* simulate = app.add_subcommand("simulate", "Replicated selection experiments on samples");
  simulate->add_option("config", sim_config, "key = value config file")->check(CLI::ExistingFile);
  simulate->add_option("--scenario", sim_scenario, "I or II");
  simulate->add_option("--k", sim_k, "Comma-separated class slopes");
  simulate->add_option("--n", sim_n, "Comma-separated sample sizes");
  simulate->add_option("--methods", sim_methods, "Comma-separated name[:beta] list");
  simulate->add_option("--replicates", sim_replicates, "Replicates per cell");
  simulate->add_option("--seed", sim_seed, "Master seed");
  simulate->add_option("--threads", sim_threads, "Worker threads (0 = all cores)");
  simulate->add_option("--output", sim_output, "CSV path (default stdout)");
  simulate->add_option("--traces", sim_traces, "Write per-replicate selections as JSON");

  std::string joint_path;
  auto* relevance = app.add_subcommand("relevance", "Relevance analysis of a discrete labeled joint");
  relevance->add_option("joint", joint_path, "Labeled joint JSON")->required()->check(CLI::ExistingFile);

  app.add_subcommand("verify", "Run the built-in consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (oracle->parsed()) {
      cmd_oracle(oracle_opts, out);
    } else if (order->parsed()) {
      order_opts.beta = order_beta;
      cmd_order(order_opts, out);
    } else if (simulate->parsed()) {
      SimulateOptions o = default_simulate_options();
      if (sim_config) o = parse_simulate_config_file(*sim_config, o);
      // Flags override the file, using the file's grammar for values.
      std::ostringstream overrides;
      if (sim_scenario) overrides << "scenario = " << *sim_scenario << '\n';
      if (sim_k) overrides << "k = " << *sim_k << '\n';
      if (sim_n) overrides << "n = " << *sim_n << '\n';
      if (sim_methods) overrides << "methods = " << *sim_methods << '\n';
      if (sim_replicates) overrides << "replicates = " << *sim_replicates << '\n';
      if (sim_seed) overrides << "seed = " << *sim_seed << '\n';
      if (sim_threads) overrides << "threads = " << *sim_threads << '\n';
      if (sim_output) o.output = *sim_output;
      if (sim_traces) o.traces = *sim_traces;
      std::istringstream in(overrides.str());
      try {
        o = parse_simulate_config(in, o);
      } catch (const ConfigError& ex) {
        throw std::invalid_argument(std::string("command line: ") + ex.what());
      }
      o.experiment.validate();
      cmd_simulate(o, out);
    } else if (relevance->parsed()) {
      cmd_relevance(joint_path, out);
    } else {
      return cmd_verify(out) ? kOk : kFailure;
    }
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}

}  // namespace mifslab::cli
