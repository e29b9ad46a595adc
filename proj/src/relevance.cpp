#include "mifslab/relevance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace mifslab {

namespace {

constexpr std::size_t kMaxExhaustiveFeatures = 12;

// Mixed-radix key of a cell restricted to `vars`.
std::uint64_t key_of(const JointTable& t, std::size_t cell, const VarSet& vars) {
  std::uint64_t key = 0;
  for (std::size_t v : vars) key = key * t.arities()[v] + t.state(cell, v);
  return key;
}

VarSet join(const VarSet& a, const VarSet& b) {
  VarSet out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// [target | given, extra] has the same law as [target | given] on the support
// of (given, extra).
bool conditional_invariant(const JointTable& t, const VarSet& target, const VarSet& given,
                           const VarSet& extra) {
  const VarSet tge = join(join(target, given), extra);
  const VarSet ge = join(given, extra);
  const VarSet tg = join(target, given);
  std::unordered_map<std::uint64_t, double> p_tge, p_ge, p_tg, p_g;
  for (std::size_t c : t.support()) {
    const double p = t.masses()[c];
    p_tge[key_of(t, c, tge)] += p;
    p_ge[key_of(t, c, ge)] += p;
    p_tg[key_of(t, c, tg)] += p;
    p_g[key_of(t, c, given)] += p;
  }
  // If the two conditionals differ somewhere, some target value is more likely
  // under the richer conditioning, and that cell has positive mass.
  for (std::size_t c : t.support()) {
    const double lhs = p_tge[key_of(t, c, tge)] / p_ge[key_of(t, c, ge)];
    const double rhs = p_tg[key_of(t, c, tg)] / p_g[key_of(t, c, given)];
    if (std::abs(lhs - rhs) > kConditionalTolerance) return false;
  }
  return true;
}

VarSet vars_of(const LabeledJoint& j, const FeatureSet& features) {
  VarSet out;
  out.reserve(features.size());
  for (std::size_t f : features) out.push_back(j.feature_var(f));
  return out;
}

FeatureSet all_features(const LabeledJoint& j) {
  FeatureSet out(j.feature_count());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

FeatureSet without(const FeatureSet& s, std::size_t drop) {
  FeatureSet out;
  for (std::size_t f : s)
    if (f != drop) out.push_back(f);
  return out;
}

// Every subset of `pool`, in increasing bitmask order.
template <typename Fn>
bool any_subset(const FeatureSet& pool, Fn&& fn) {
  const std::size_t count = std::size_t{1} << pool.size();
  for (std::size_t mask = 0; mask < count; ++mask) {
    FeatureSet subset;
    for (std::size_t b = 0; b < pool.size(); ++b)
      if (mask & (std::size_t{1} << b)) subset.push_back(pool[b]);
    if (fn(subset)) return true;
  }
  return false;
}

void check_feature(const LabeledJoint& j, std::size_t i) {
  if (i >= j.feature_count()) throw std::out_of_range("feature index out of range");
}

}  // namespace

LabeledJoint::LabeledJoint(JointTable table, std::size_t class_var, std::vector<std::string> names)
    : table_(std::move(table)), class_var_(class_var), names_(std::move(names)) {
  if (class_var_ >= table_.variable_count())
    throw std::invalid_argument("class index out of range");
  for (std::size_t v = 0; v < table_.variable_count(); ++v)
    if (v != class_var_) features_.push_back(v);
  if (names_.empty())
    for (std::size_t i = 0; i < features_.size(); ++i) names_.push_back("V" + std::to_string(i + 1));
  if (names_.size() != features_.size())
    throw std::invalid_argument("feature name count does not match feature count");

  const JointTable cls = table_.marginal({class_var_});
  const auto populated = std::count_if(cls.masses().begin(), cls.masses().end(),
                                       [](double p) { return p > 0.0; });
  if (populated < 2) throw std::invalid_argument("class needs at least two states with mass");
}

bool is_maximally_informative(const LabeledJoint& j, const FeatureSet& subset) {
  FeatureSet rest;
  for (std::size_t i = 0; i < j.feature_count(); ++i)
    if (std::find(subset.begin(), subset.end(), i) == subset.end()) rest.push_back(i);
  return conditional_invariant(j.table(), {j.class_var()}, vars_of(j, subset), vars_of(j, rest));
}

Relevance classify_feature(const LabeledJoint& j, std::size_t feature) {
  check_feature(j, feature);
  const FeatureSet others = without(all_features(j), feature);
  if (!is_maximally_informative(j, others)) return Relevance::SR;
  const VarSet candidate = {j.feature_var(feature)};
  const bool informative_somewhere = any_subset(others, [&](const FeatureSet& l) {
    return !conditional_invariant(j.table(), {j.class_var()}, vars_of(j, l), candidate);
  });
  return informative_somewhere ? Relevance::WR : Relevance::Irrelevant;
}

std::vector<FeatureSet> relevance_optimal_sets(const LabeledJoint& j) {
  const std::size_t n = j.feature_count();
  if (n > kMaxExhaustiveFeatures)
    throw std::invalid_argument("exhaustive search is limited to 12 features");
  for (std::size_t size = 0; size <= n; ++size) {
    std::vector<FeatureSet> found;
    // Lexicographic combinations of `size` out of n.
    FeatureSet combo(size);
    for (std::size_t i = 0; i < size; ++i) combo[i] = i;
    while (true) {
      if (is_maximally_informative(j, combo)) found.push_back(combo);
      std::size_t pos = size;
      while (pos > 0 && combo[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++combo[pos - 1];
      for (std::size_t k = pos; k < size; ++k) combo[k] = combo[k - 1] + 1;
    }
    if (!found.empty()) return found;
  }
  return {};  // unreachable: the full set is always maximally informative
}

bool has_markov_blanket(const LabeledJoint& j, std::size_t feature, const FeatureSet& blanket,
                        const FeatureSet& current) {
  check_feature(j, feature);
  FeatureSet shielded;
  for (std::size_t f : current)
    if (f != feature && std::find(blanket.begin(), blanket.end(), f) == blanket.end())
      shielded.push_back(f);
  VarSet target = {j.class_var()};
  for (std::size_t v : vars_of(j, shielded)) target.push_back(v);
  return conditional_invariant(j.table(), target, vars_of(j, blanket), {j.feature_var(feature)});
}

FeatureSet markov_blanket_filter(const LabeledJoint& j) {
  FeatureSet current;
  for (std::size_t i = 0; i < j.feature_count(); ++i)
    if (classify_feature(j, i) != Relevance::Irrelevant) current.push_back(i);

  // Features later in the list are eliminated first, so earlier ones survive.
  bool removed = true;
  while (removed) {
    removed = false;
    for (auto it = current.rbegin(); it != current.rend(); ++it) {
      const std::size_t candidate = *it;
      const bool blanketed = any_subset(without(current, candidate), [&](const FeatureSet& m) {
        return has_markov_blanket(j, candidate, m, current);
      });
      if (blanketed) {
        current = without(current, candidate);
        removed = true;
        break;
      }
    }
  }
  return current;
}

std::vector<RelevanceClass> partition(const LabeledJoint& j, const FeatureSet& optimal_set) {
  std::vector<RelevanceClass> out;
  for (std::size_t i = 0; i < j.feature_count(); ++i) {
    switch (classify_feature(j, i)) {
      case Relevance::SR:
        out.push_back(RelevanceClass::SR);
        break;
      case Relevance::Irrelevant:
        out.push_back(RelevanceClass::Irrelevant);
        break;
      case Relevance::WR:
        const bool in_set =
            std::find(optimal_set.begin(), optimal_set.end(), i) != optimal_set.end();
        out.push_back(in_set ? RelevanceClass::WR_NR : RelevanceClass::WR_R);
        break;
    }
  }
  return out;
}

std::string to_string(Relevance r) {
  switch (r) {
    case Relevance::SR:
      return "SR";
    case Relevance::WR:
      return "WR";
    case Relevance::Irrelevant:
      return "irrelevant";
  }
  return "?";
}

std::string to_string(RelevanceClass r) {
  switch (r) {
    case RelevanceClass::SR:
      return "SR";
    case RelevanceClass::WR_NR:
      return "WR-NR";
    case RelevanceClass::WR_R:
      return "WR-R";
    case RelevanceClass::Irrelevant:
      return "irrelevant";
  }
  return "?";
}

LabeledJoint labeled_joint_from_json(const nlohmann::json& j) {
  JointTable table = joint_table_from_json(j);
  const std::size_t class_index = j.contains("class_index")
                                      ? j.at("class_index").get<std::size_t>()
                                      : table.variable_count() - 1;
  std::vector<std::string> names;
  if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
  return LabeledJoint(std::move(table), class_index, std::move(names));
}

nlohmann::json to_json(const LabeledJoint& j) {
  nlohmann::json out = to_json(j.table());
  out["class_index"] = j.class_var();
  std::vector<std::string> names;
  for (std::size_t i = 0; i < j.feature_count(); ++i) names.push_back(j.feature_name(i));
  out["names"] = names;
  return out;
}

}  // namespace mifslab
