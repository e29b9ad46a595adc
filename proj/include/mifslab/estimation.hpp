#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "mifslab/provider.hpp"

namespace mifslab {

/// Raised when a variable has no spread (all values equal), so no bin width exists.
class DegenerateSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed sample files; the message starts with "line N:".
class SampleFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Column-major observations with a binary class label per row.
struct Sample {
  std::vector<std::vector<double>> features;  ///< features[j][r]
  std::vector<std::uint8_t> labels;           ///< 0 or 1

  std::size_t size() const { return labels.size(); }
  std::size_t feature_count() const { return features.size(); }

  /// Throws std::invalid_argument on ragged columns, n < 4 or labels outside {0, 1}.
  void validate() const;
};

/// Smallest m with m * m >= n.
std::size_t ceil_sqrt(std::size_t n);

/// Equal-width bins over [min, max]; the maximum lands in the top bin.
struct BinningScheme {
  std::size_t bins = 0;
  double lo = 0.0;
  double width = 0.0;

  /// Throws DegenerateSampleError when all values are equal.
  static BinningScheme fit(std::span<const double> values, std::size_t bins);
  std::size_t bin_of(double x) const;
  double edge(std::size_t i) const { return lo + width * static_cast<double>(i); }
};

/// Bins used for univariate estimates: ceil(sqrt(n)).
std::size_t univariate_bins(std::size_t n);
/// Bins per axis for bivariate estimates: ceil(sqrt(ceil(sqrt(n)))), so the
/// grid has about as many cells as the univariate histogram has bins.
std::size_t bivariate_bins_per_axis(std::size_t n);

/// Plug-in entropy of the binned values plus ln(width).
double estimate_entropy_1d(std::span<const double> x);
/// Plug-in entropy of the 2-D grid plus ln(width_x * width_y).
double estimate_entropy_2d(std::span<const double> x, std::span<const double> y);
/// h(x) + h(y) - h(x, y), all on the bivariate grid. Exactly symmetric; not clamped.
double estimate_mi_features(std::span<const double> x, std::span<const double> y);
/// h(V) - sum_c p(c) h(V | C = c), class slices binned with the pooled edges.
double estimate_mi_class(std::span<const double> x, std::span<const std::uint8_t> labels);

/// Provider over a sample; estimates are computed on first use and cached.
/// Not thread-safe: confine an instance to one thread while it fills.
class EstimatedProvider final : public MIProvider {
 public:
  explicit EstimatedProvider(Sample sample, std::vector<std::string> names = {});

  const Sample& sample() const { return sample_; }
  std::size_t feature_count() const override { return sample_.feature_count(); }
  XReal entropy(std::size_t i) const override;
  XReal class_mi(std::size_t i) const override;
  XReal pairwise_mi(std::size_t i, std::size_t j) const override;
  std::string feature_name(std::size_t i) const override;

 private:
  Sample sample_;
  std::vector<std::string> names_;
  mutable std::vector<std::optional<double>> entropy_;
  mutable std::vector<std::optional<double>> class_mi_;
  mutable std::vector<std::optional<double>> pairwise_;  // row-major, upper triangle used
};

/// CSV with header v1,...,vp,class.
Sample read_sample_csv(std::istream& in);
Sample read_sample_csv(const std::string& path);
void write_sample_csv(std::ostream& out, const Sample& sample);
void write_sample_csv(const std::string& path, const Sample& sample);

}  // namespace mifslab
