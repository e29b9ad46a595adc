#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mifslab/infotheory.hpp"

namespace mifslab {

/// A finite joint distribution of features and a binary-or-wider class.
///
/// Features are the table's variables other than `class_var`, numbered
/// 0..feature_count()-1 in table order.
class LabeledJoint {
 public:
  LabeledJoint(JointTable table, std::size_t class_var, std::vector<std::string> names = {});

  const JointTable& table() const { return table_; }
  std::size_t class_var() const { return class_var_; }
  std::size_t feature_count() const { return features_.size(); }
  /// Table variable holding feature `i`.
  std::size_t feature_var(std::size_t i) const { return features_.at(i); }
  const std::string& feature_name(std::size_t i) const { return names_.at(i); }

 private:
  JointTable table_;
  std::size_t class_var_;
  std::vector<std::size_t> features_;
  std::vector<std::string> names_;
};

/// Feature subsets, as sorted feature indices.
using FeatureSet = std::vector<std::size_t>;

enum class RelevanceClass { SR, WR_NR, WR_R, Irrelevant };
/// Coarse classification before a relevance-optimal set splits WR.
enum class Relevance { SR, WR, Irrelevant };

/// Tolerance for comparing conditional probabilities.
inline constexpr double kConditionalTolerance = 1e-9;

bool is_maximally_informative(const LabeledJoint& j, const FeatureSet& subset);
Relevance classify_feature(const LabeledJoint& j, std::size_t feature);

/// All minimum-size maximally informative subsets, lexicographically ordered.
/// Throws std::invalid_argument beyond 12 features.
std::vector<FeatureSet> relevance_optimal_sets(const LabeledJoint& j);

/// Whether `blanket` shields `feature` from the class and from the rest of
/// `current` (the features still under consideration).
bool has_markov_blanket(const LabeledJoint& j, std::size_t feature, const FeatureSet& blanket,
                        const FeatureSet& current);
/// Backward elimination from the relevant (SR and WR) features.
FeatureSet markov_blanket_filter(const LabeledJoint& j);

/// Four-way partition relative to one relevance-optimal set.
std::vector<RelevanceClass> partition(const LabeledJoint& j, const FeatureSet& optimal_set);

std::string to_string(Relevance r);
std::string to_string(RelevanceClass r);

/// Joint-table JSON plus "class_index" (default: last) and optional "names".
LabeledJoint labeled_joint_from_json(const nlohmann::json& j);
nlohmann::json to_json(const LabeledJoint& j);

}  // namespace mifslab
