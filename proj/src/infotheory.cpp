#include "mifslab/infotheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mifslab {

namespace {

constexpr double kNormalizationSlack = 1e-9;

void check_vars(const JointTable& t, const VarSet& vars) {
  for (std::size_t v : vars)
    if (v >= t.variable_count())
      throw std::out_of_range("variable index " + std::to_string(v) + " out of range");
  VarSet sorted = vars;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("repeated variable in subset");
}

void check_disjoint(std::initializer_list<const VarSet*> sets) {
  std::vector<std::size_t> all;
  for (const auto* s : sets) all.insert(all.end(), s->begin(), s->end());
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw std::invalid_argument("variable subsets overlap");
}

VarSet join(const VarSet& a, const VarSet& b) {
  VarSet out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

double plug_in_entropy(const std::vector<double>& masses) {
  double h = 0.0;
  for (double p : masses)
    if (p > 0.0) h -= p * std::log(p);
  return h;
}

}  // namespace

JointTable::JointTable(std::vector<std::size_t> arities, std::vector<double> masses)
    : arities_(std::move(arities)), masses_(std::move(masses)) {
  std::size_t cells = 1;
  for (std::size_t a : arities_) {
    if (a == 0) throw std::invalid_argument("JointTable: zero arity");
    cells *= a;
  }
  if (masses_.size() != cells)
    throw std::invalid_argument("JointTable: expected " + std::to_string(cells) +
                                " masses, got " + std::to_string(masses_.size()));
  double total = 0.0;
  for (double p : masses_) {
    if (!std::isfinite(p) || p < 0.0) throw std::invalid_argument("JointTable: invalid mass");
    total += p;
  }
  if (std::abs(total - 1.0) > kNormalizationSlack)
    throw std::invalid_argument("JointTable: masses sum to " + std::to_string(total));
  for (double& p : masses_) p /= total;

  strides_.assign(arities_.size(), 1);
  for (std::size_t v = arities_.size(); v-- > 1;) strides_[v - 1] = strides_[v] * arities_[v];
  for (std::size_t c = 0; c < masses_.size(); ++c)
    if (masses_[c] > 0.0) support_.push_back(c);
}

std::size_t JointTable::state(std::size_t cell, std::size_t var) const {
  return (cell / strides_[var]) % arities_[var];
}

JointTable JointTable::marginal(const VarSet& vars) const {
  check_vars(*this, vars);
  std::vector<std::size_t> arities;
  std::size_t cells = 1;
  for (std::size_t v : vars) {
    arities.push_back(arities_[v]);
    cells *= arities_[v];
  }
  std::vector<double> masses(cells, 0.0);
  for (std::size_t c : support_) {
    std::size_t idx = 0;
    for (std::size_t v : vars) idx = idx * arities_[v] + state(c, v);
    masses[idx] += masses_[c];
  }
  return JointTable(std::move(arities), std::move(masses));
}

double entropy(const JointTable& t, const VarSet& vars) {
  if (vars.empty()) throw std::invalid_argument("entropy of an empty variable subset");
  return plug_in_entropy(t.marginal(vars).masses());
}

double cond_entropy(const JointTable& t, const VarSet& x, const VarSet& y) {
  check_disjoint({&x, &y});
  if (y.empty()) return entropy(t, x);
  return entropy(t, join(x, y)) - entropy(t, y);
}

double mi(const JointTable& t, const VarSet& x, const VarSet& y) {
  check_disjoint({&x, &y});
  return entropy(t, x) + entropy(t, y) - entropy(t, join(x, y));
}

double mi_direct(const JointTable& t, const VarSet& x, const VarSet& y) {
  check_disjoint({&x, &y});
  const JointTable joint = t.marginal(join(x, y));
  const JointTable px = t.marginal(x);
  const JointTable py = t.marginal(y);
  const std::size_t ny = py.masses().size();
  double sum = 0.0;
  for (std::size_t c : joint.support()) {
    const double pxy = joint.masses()[c];
    sum += pxy * std::log(pxy / (px.masses()[c / ny] * py.masses()[c % ny]));
  }
  return sum;
}

double cond_mi(const JointTable& t, const VarSet& x, const VarSet& y, const VarSet& z) {
  check_disjoint({&x, &y, &z});
  if (z.empty()) return mi(t, x, y);
  return entropy(t, join(x, z)) + entropy(t, join(y, z)) - entropy(t, join(join(x, y), z)) -
         entropy(t, z);
}

double tmi(const JointTable& t, const VarSet& x, const VarSet& y, const VarSet& z) {
  check_disjoint({&x, &y, &z});
  return mi(t, x, y) - cond_mi(t, x, y, z);
}

XReal normalized_mi(const XReal& mi_xy, const XReal& h_x, const XReal& h_y) {
  return xdiv(mi_xy, xmin(h_x, h_y));
}

nlohmann::json to_json(const JointTable& t) {
  return {{"arities", t.arities()}, {"probabilities", t.masses()}};
}

JointTable joint_table_from_json(const nlohmann::json& j) {
  if (!j.contains("arities") || !j.contains("probabilities"))
    throw std::invalid_argument("joint table JSON needs 'arities' and 'probabilities'");
  return JointTable(j.at("arities").get<std::vector<std::size_t>>(),
                    j.at("probabilities").get<std::vector<double>>());
}

}  // namespace mifslab
