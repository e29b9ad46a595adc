#pragma once

// Shared discrete fixtures for the relevance and infotheory tests.

#include <algorithm>
#include <map>
#include <vector>

#include "mifslab/relevance.hpp"

namespace fixtures {

/// Joint table over equiprobable rows of integer-valued variables; each
/// variable's states are its sorted distinct values.
inline mifslab::JointTable table_from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t vars = rows.front().size();
  std::vector<std::map<long, std::size_t>> states(vars);
  for (const auto& r : rows)
    for (std::size_t v = 0; v < vars; ++v) states[v].emplace(r[v], 0);
  std::vector<std::size_t> arities;
  for (auto& s : states) {
    std::size_t idx = 0;
    for (auto& [value, i] : s) i = idx++;
    arities.push_back(s.size());
  }
  std::size_t cells = 1;
  for (auto a : arities) cells *= a;
  std::vector<double> masses(cells, 0.0);
  for (const auto& r : rows) {
    std::size_t flat = 0;
    for (std::size_t v = 0; v < vars; ++v) flat = flat * arities[v] + states[v].at(r[v]);
    masses[flat] += 1.0 / static_cast<double>(rows.size());
  }
  return mifslab::JointTable(arities, masses);
}

/// V1, V2, V4 independent uniform; V3 = 3 V2 + 1; V5 = V4^2; C = V1 xor [V2 > 0].
inline mifslab::LabeledJoint xor_joint() {
  std::vector<std::vector<long>> rows;
  for (long v1 : {0, 1})
    for (long v2 : {-1, 1})
      for (long v4 : {-1, 0, 1}) {
        const long c = v1 ^ (v2 > 0 ? 1 : 0);
        rows.push_back({v1, v2, 3 * v2 + 1, v4, v4 * v4, c});
      }
  return mifslab::LabeledJoint(table_from_rows(rows), 5);
}

/// Scenario I on the sign-preserving grid {-7,-1,1,7} (units of delta/7) with
/// k = 0.2, i.e. C = 1 iff 5X + Y >= 0. Features in the usual V1..V10 order.
inline mifslab::LabeledJoint scenario1_grid() {
  const long grid[] = {-7, -1, 1, 7};
  std::vector<std::vector<long>> rows;
  for (long x : grid)
    for (long y : grid)
      for (long z : grid)
        for (long w : grid)
          rows.push_back({x, 3 * x + 7, y * y, x - y, z, z * z, y, x * x, w + 14, z + w,
                          5 * x + y >= 0 ? 1 : 0});
  return mifslab::LabeledJoint(table_from_rows(rows), 10,
                               {"X", "3X+1", "Y2", "X-Y", "Z", "Z2", "Y", "X2", "W+2", "Z+W"});
}

}  // namespace fixtures
