#include "mifslab/estimation.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace mifslab {

namespace {

void require_size(std::size_t n) {
  if (n < 4) throw std::invalid_argument(fmt::format("need at least 4 observations (got {})", n));
}

// ln n - (1/n) sum c ln c. Counts are summed in sorted order so that any
// permutation of the cells (e.g. a transposed grid) gives the same bits.
double plugin_entropy(std::vector<std::size_t> counts) {
  std::sort(counts.begin(), counts.end());
  double n = 0.0, acc = 0.0;
  for (std::size_t c : counts) {
    if (c == 0) continue;
    const double cd = static_cast<double>(c);
    n += cd;
    acc += cd * std::log(cd);
  }
  return std::log(n) - acc / n;
}

std::vector<std::size_t> histogram(std::span<const double> x, const BinningScheme& s) {
  std::vector<std::size_t> counts(s.bins, 0);
  for (double v : x) ++counts[s.bin_of(v)];
  return counts;
}

std::vector<std::size_t> grid(std::span<const double> x, const BinningScheme& sx,
                              std::span<const double> y, const BinningScheme& sy) {
  std::vector<std::size_t> counts(sx.bins * sy.bins, 0);
  for (std::size_t r = 0; r < x.size(); ++r) ++counts[sx.bin_of(x[r]) * sy.bins + sy.bin_of(y[r])];
  return counts;
}

void require_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("paired inputs differ in length");
  require_size(x.size());
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

}  // namespace

void Sample::validate() const {
  require_size(size());
  if (features.empty()) throw std::invalid_argument("sample has no features");
  for (const auto& col : features)
    if (col.size() != size()) throw std::invalid_argument("feature column length differs from label count");
  for (auto c : labels)
    if (c > 1) throw std::invalid_argument("class labels must be 0 or 1");
}

std::size_t ceil_sqrt(std::size_t n) {
  auto m = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (m * m < n) ++m;
  while (m > 0 && (m - 1) * (m - 1) >= n) --m;
  return m;
}

BinningScheme BinningScheme::fit(std::span<const double> values, std::size_t bins) {
  if (values.empty()) throw std::invalid_argument("cannot bin an empty sample");
  if (bins == 0) throw std::invalid_argument("bin count must be positive");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (!(*hi > *lo)) throw DegenerateSampleError("constant variable: bin width is zero");
  return {bins, *lo, (*hi - *lo) / static_cast<double>(bins)};
}

std::size_t BinningScheme::bin_of(double x) const {
  const double pos = (x - lo) / width;
  if (!(pos > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(pos), bins - 1);
}

std::size_t univariate_bins(std::size_t n) { return ceil_sqrt(n); }

std::size_t bivariate_bins_per_axis(std::size_t n) { return ceil_sqrt(ceil_sqrt(n)); }

double estimate_entropy_1d(std::span<const double> x) {
  require_size(x.size());
  const auto s = BinningScheme::fit(x, univariate_bins(x.size()));
  return plugin_entropy(histogram(x, s)) + std::log(s.width);
}

double estimate_entropy_2d(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y);
  const std::size_t b = bivariate_bins_per_axis(x.size());
  const auto sx = BinningScheme::fit(x, b);
  const auto sy = BinningScheme::fit(y, b);
  return plugin_entropy(grid(x, sx, y, sy)) + std::log(sx.width) + std::log(sy.width);
}

double estimate_mi_features(std::span<const double> x, std::span<const double> y) {
  require_pair(x, y);
  const std::size_t b = bivariate_bins_per_axis(x.size());
  const auto sx = BinningScheme::fit(x, b);
  const auto sy = BinningScheme::fit(y, b);
  // The ln(width) corrections cancel between the three terms.
  return plugin_entropy(histogram(x, sx)) + plugin_entropy(histogram(y, sy)) -
         plugin_entropy(grid(x, sx, y, sy));
}

double estimate_mi_class(std::span<const double> x, std::span<const std::uint8_t> labels) {
  if (x.size() != labels.size()) throw std::invalid_argument("values and labels differ in length");
  require_size(x.size());
  const auto s = BinningScheme::fit(x, univariate_bins(x.size()));
  std::vector<std::size_t> pooled(s.bins, 0);
  std::vector<std::vector<std::size_t>> by_class(2, std::vector<std::size_t>(s.bins, 0));
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (labels[r] > 1) throw std::invalid_argument("class labels must be 0 or 1");
    const std::size_t bin = s.bin_of(x[r]);
    ++pooled[bin];
    ++by_class[labels[r]][bin];
  }
  const double n = static_cast<double>(x.size());
  double conditional = 0.0;
  for (const auto& counts : by_class) {
    std::size_t nc = 0;
    for (auto c : counts) nc += c;
    if (nc == 0) throw std::invalid_argument("both class labels must be present");
    conditional += static_cast<double>(nc) / n * plugin_entropy(counts);
  }
  // Shared edges: the ln(width) corrections cancel.
  return plugin_entropy(pooled) - conditional;
}

EstimatedProvider::EstimatedProvider(Sample sample, std::vector<std::string> names)
    : sample_(std::move(sample)), names_(std::move(names)) {
  sample_.validate();
  const std::size_t p = sample_.feature_count();
  if (!names_.empty() && names_.size() != p)
    throw std::invalid_argument("name count does not match feature count");
  entropy_.resize(p);
  class_mi_.resize(p);
  pairwise_.resize(p * p);
}

XReal EstimatedProvider::entropy(std::size_t i) const {
  auto& slot = entropy_.at(i);
  if (!slot) slot = estimate_entropy_1d(sample_.features[i]);
  return XReal::finite(*slot);
}

XReal EstimatedProvider::class_mi(std::size_t i) const {
  auto& slot = class_mi_.at(i);
  if (!slot) slot = estimate_mi_class(sample_.features[i], sample_.labels);
  return XReal::finite(*slot);
}

XReal EstimatedProvider::pairwise_mi(std::size_t i, std::size_t j) const {
  const std::size_t p = feature_count();
  if (i >= p || j >= p) throw std::out_of_range("feature index out of range");
  if (i > j) std::swap(i, j);
  auto& slot = pairwise_[i * p + j];
  if (!slot) slot = estimate_mi_features(sample_.features[i], sample_.features[j]);
  return XReal::finite(*slot);
}

std::string EstimatedProvider::feature_name(std::size_t i) const {
  if (names_.empty()) return MIProvider::feature_name(i);
  return names_.at(i);
}

Sample read_sample_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& what) {
    return SampleFormatError(fmt::format("line {}: {}", line_no, what));
  };

  if (!std::getline(in, line)) throw SampleFormatError("line 1: missing header");
  ++line_no;
  const auto header = split_csv(line);
  if (header.size() < 2) throw fail("header needs feature columns and a class column");
  for (std::size_t j = 0; j + 1 < header.size(); ++j)
    if (trim(header[j]) != fmt::format("v{}", j + 1))
      throw fail(fmt::format("expected column 'v{}', found '{}'", j + 1, trim(header[j])));
  if (trim(header.back()) != "class") throw fail("last column must be 'class'");

  Sample s;
  s.features.resize(header.size() - 1);
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size())
      throw fail(fmt::format("expected {} fields, found {}", header.size(), cells.size()));
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const std::string cell = trim(cells[j]);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v))
        throw fail(fmt::format("column {}: '{}' is not a finite number", j + 1, cell));
      if (j + 1 < cells.size()) {
        s.features[j].push_back(v);
      } else {
        if (v != 0.0 && v != 1.0) throw fail(fmt::format("class must be 0 or 1, found '{}'", cell));
        s.labels.push_back(static_cast<std::uint8_t>(v));
      }
    }
  }
  try {
    s.validate();
  } catch (const std::invalid_argument& e) {
    throw SampleFormatError(fmt::format("line {}: {}", line_no, e.what()));
  }
  return s;
}

Sample read_sample_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(fmt::format("cannot open '{}'", path));
  return read_sample_csv(in);
}

void write_sample_csv(std::ostream& out, const Sample& sample) {
  for (std::size_t j = 0; j < sample.feature_count(); ++j) out << 'v' << j + 1 << ',';
  out << "class\n";
  for (std::size_t r = 0; r < sample.size(); ++r) {
    // fmt's default float format is the shortest round-trip representation.
    for (const auto& col : sample.features) out << fmt::format("{},", col[r]);
    out << static_cast<int>(sample.labels[r]) << '\n';
  }
}

void write_sample_csv(const std::string& path, const Sample& sample) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  write_sample_csv(out, sample);
  if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path));
}

}  // namespace mifslab
