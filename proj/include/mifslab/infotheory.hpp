#pragma once

#include <cstddef>
#include <vector>

#include <nlohmann/json.hpp>

#include "mifslab/xreal.hpp"

namespace mifslab {

/// Variable indices into a JointTable.
using VarSet = std::vector<std::size_t>;

/// Probability mass over the product of finite variable supports.
///
/// Masses are stored densely in row-major order (last variable fastest).
/// Construction normalizes totals within 1e-9 of one and rejects anything else.
/// Cells with positive mass are indexed once so marginals cost O(|support|).
class JointTable {
 public:
  JointTable(std::vector<std::size_t> arities, std::vector<double> masses);

  std::size_t variable_count() const { return arities_.size(); }
  const std::vector<std::size_t>& arities() const { return arities_; }
  const std::vector<double>& masses() const { return masses_; }

  /// Flat indices of cells with positive mass.
  const std::vector<std::size_t>& support() const { return support_; }

  /// State of variable `var` in flat cell `cell`.
  std::size_t state(std::size_t cell, std::size_t var) const;

  /// Joint table over `vars`, in the order given.
  JointTable marginal(const VarSet& vars) const;

 private:
  std::vector<std::size_t> arities_;
  std::vector<std::size_t> strides_;
  std::vector<double> masses_;
  std::vector<std::size_t> support_;
};

/// Shannon entropy (nats) of the marginal over `vars`; 0 ln 0 = 0.
double entropy(const JointTable& t, const VarSet& vars);
/// H(X|Y) = H(X,Y) - H(Y). Y may be empty.
double cond_entropy(const JointTable& t, const VarSet& x, const VarSet& y);
/// MI(X,Y) = H(X) + H(Y) - H(X,Y).
double mi(const JointTable& t, const VarSet& x, const VarSet& y);
/// MI(X,Y) as the direct sum of p(x,y) ln[p(x,y) / (p(x) p(y))].
double mi_direct(const JointTable& t, const VarSet& x, const VarSet& y);
/// MI(X,Y|Z) = H(X,Z) + H(Y,Z) - H(X,Y,Z) - H(Z).
double cond_mi(const JointTable& t, const VarSet& x, const VarSet& y, const VarSet& z);
/// Triple mutual information MI(X,Y) - MI(X,Y|Z). May be negative.
double tmi(const JointTable& t, const VarSet& x, const VarSet& y, const VarSet& z);

/// MI(X,Y) / min{h(X), h(Y)} in extended-real arithmetic.
XReal normalized_mi(const XReal& mi_xy, const XReal& h_x, const XReal& h_y);

/// {"arities": [...], "probabilities": [...]}.
nlohmann::json to_json(const JointTable& t);
JointTable joint_table_from_json(const nlohmann::json& j);

}  // namespace mifslab
