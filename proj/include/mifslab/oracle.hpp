#pragma once

#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mifslab/provider.hpp"
#include "mifslab/xreal.hpp"

namespace mifslab {

/// Base law of the iid latent variables X, Y, Z, W.
enum class Scenario {
  Uniform,   ///< Scenario I: Unif(-delta, delta)
  Gaussian,  ///< Scenario II: N(0, 1)
};

/// Evaluation scenario: ten features built from X, Y, Z, W and a class
/// C = 1 iff X + kY >= 0.
struct ScenarioSpec {
  Scenario scenario = Scenario::Uniform;
  double delta = 0.5;  ///< half-width of the uniform base (Scenario I only)
  double a = 3.0;      ///< V2 = aX + b
  double b = 1.0;
  double d = 2.0;      ///< V9 = W + d
  double k = 0.2;      ///< class slope, open interval (0, 1)

  /// Throws std::invalid_argument when delta <= 0, a == 0, or k outside (0, 1).
  void validate() const;

  static ScenarioSpec uniform(double k) { return {Scenario::Uniform, 0.5, 3.0, 1.0, 2.0, k}; }
  static ScenarioSpec gaussian(double k) { return {Scenario::Gaussian, 0.5, 3.0, 1.0, 2.0, k}; }
};

/// "I" / "II".
std::string to_string(Scenario s);
Scenario parse_scenario(std::string_view text);

/// Fixed feature order V1..V10; this order breaks ties everywhere.
enum class FeatureId : std::size_t { V1 = 0, V2, V3, V4, V5, V6, V7, V8, V9, V10 };
inline constexpr std::size_t kScenarioFeatures = 10;

/// Role of a feature, e.g. "X", "3X+1", "Y2", "X-Y", "W+2".
std::string feature_label(const ScenarioSpec& spec, FeatureId f);

struct SkewNormalParams {
  double location = 0.0;
  double scale = 1.0;
  double shape = 0.0;
};

double normal_pdf(double x);
double normal_cdf(double x);

/// (2/s) phi((x-m)/s) Phi(alpha (x-m)/s).
double skewnormal_pdf(const SkewNormalParams& p, double x);

/// Draw via |U0| and U1 standard normals: m + s (delta |U0| + sqrt(1-delta^2) U1).
template <typename URBG>
double skewnormal_sample(const SkewNormalParams& p, URBG& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double delta = p.shape / std::sqrt(1.0 + p.shape * p.shape);
  const double u0 = std::abs(normal(rng));
  const double u1 = normal(rng);
  return p.location + p.scale * (delta * u0 + std::sqrt(1.0 - delta * delta) * u1);
}

/// Differential entropy of a feature, from closed forms.
XReal entropy_of(const ScenarioSpec& spec, FeatureId f);

/// MI between the class and a feature. Scenario I uses closed forms and only
/// supports delta = 0.5; Scenario II integrates the mixed discrete-continuous
/// MI with skew-normal class conditionals to absolute tolerance `tolerance`.
double class_mi(const ScenarioSpec& spec, FeatureId f, double tolerance = 1e-6);

/// MI between two features: exact zeros, +inf for functional pairs.
XReal pairwise_mi(const ScenarioSpec& spec, FeatureId i, FeatureId j);

/// MI(C, V) for a balanced binary class whose conditionals are
/// SN(0, scale, +shape) and SN(0, scale, -shape).
double skewnormal_class_mi(double shape, double scale, double tolerance = 1e-6);

/// -1 + ln2/2 + E, the Gaussian MI(Y^2, X-Y) given E = E[ln cosh((X-Y)|Y|)].
double y2_xy_mi_from_expectation(double expectation);
/// MI(Y^2, X-Y) for iid standard normals, by product quadrature.
double mi_y2_xy_gaussian();

struct BaseDistribution {
  enum class Kind { Uniform, Normal };
  Kind kind = Kind::Normal;
  double delta = 0.5;

  static BaseDistribution uniform(double delta) { return {Kind::Uniform, delta}; }
  static BaseDistribution normal() { return {Kind::Normal, 0.0}; }
};

/// Numerically integrates MI(C_k, X^2) from the class-conditional and marginal
/// densities of X^2. Should vanish for every symmetric base.
double class_square_mi(double k, const BaseDistribution& base);

/// Analytic provider; every value is computed at construction.
class OracleProvider final : public MIProvider {
 public:
  explicit OracleProvider(const ScenarioSpec& spec);

  const ScenarioSpec& spec() const { return spec_; }
  std::size_t feature_count() const override { return kScenarioFeatures; }
  XReal entropy(std::size_t i) const override { return entropies_.at(i); }
  XReal class_mi(std::size_t i) const override { return class_mis_.at(i); }
  XReal pairwise_mi(std::size_t i, std::size_t j) const override {
    return pairwise_.at(i).at(j);
  }
  std::string feature_name(std::size_t i) const override;

 private:
  ScenarioSpec spec_;
  std::vector<XReal> entropies_;
  std::vector<XReal> class_mis_;
  std::vector<std::vector<XReal>> pairwise_;
};

OracleProvider oracle_provider(const ScenarioSpec& spec);

}  // namespace mifslab
