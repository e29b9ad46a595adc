#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mifslab/xreal.hpp"

namespace mifslab {

/// Source of the entropies and mutual informations that selection criteria
/// consume. Feature indices are 0-based positions in a fixed feature order,
/// which is also the tie-break order.
class MIProvider {
 public:
  virtual ~MIProvider() = default;

  virtual std::size_t feature_count() const = 0;
  virtual XReal entropy(std::size_t i) const = 0;
  virtual XReal class_mi(std::size_t i) const = 0;
  /// Symmetric in (i, j).
  virtual XReal pairwise_mi(std::size_t i, std::size_t j) const = 0;
  virtual std::string feature_name(std::size_t i) const { return "V" + std::to_string(i + 1); }
};

/// Provider backed by explicit value tables.
class TableProvider final : public MIProvider {
 public:
  /// `pairwise` is row-major n x n and must be symmetric.
  TableProvider(std::vector<XReal> entropies, std::vector<XReal> class_mis,
                std::vector<XReal> pairwise, std::vector<std::string> names = {});

  std::size_t feature_count() const override { return entropies_.size(); }
  XReal entropy(std::size_t i) const override { return entropies_.at(i); }
  XReal class_mi(std::size_t i) const override { return class_mis_.at(i); }
  XReal pairwise_mi(std::size_t i, std::size_t j) const override;
  std::string feature_name(std::size_t i) const override;

 private:
  std::vector<XReal> entropies_;
  std::vector<XReal> class_mis_;
  std::vector<XReal> pairwise_;
  std::vector<std::string> names_;
};

}  // namespace mifslab
