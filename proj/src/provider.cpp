#include "mifslab/provider.hpp"

#include <stdexcept>

namespace mifslab {

TableProvider::TableProvider(std::vector<XReal> entropies, std::vector<XReal> class_mis,
                             std::vector<XReal> pairwise, std::vector<std::string> names)
    : entropies_(std::move(entropies)),
      class_mis_(std::move(class_mis)),
      pairwise_(std::move(pairwise)),
      names_(std::move(names)) {
  const std::size_t n = entropies_.size();
  if (class_mis_.size() != n || pairwise_.size() != n * n)
    throw std::invalid_argument("TableProvider: inconsistent table sizes");
  if (!names_.empty() && names_.size() != n)
    throw std::invalid_argument("TableProvider: name count does not match feature count");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (!(pairwise_[i * n + j] == pairwise_[j * n + i]))
        throw std::invalid_argument("TableProvider: pairwise table is not symmetric");
}

XReal TableProvider::pairwise_mi(std::size_t i, std::size_t j) const {
  const std::size_t n = feature_count();
  if (i >= n || j >= n) throw std::out_of_range("TableProvider: feature index out of range");
  return pairwise_[i * n + j];
}

std::string TableProvider::feature_name(std::size_t i) const {
  if (names_.empty()) return MIProvider::feature_name(i);
  return names_.at(i);
}

}  // namespace mifslab
