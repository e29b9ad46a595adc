#include "mifslab/oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace mifslab {

namespace {

using std::numbers::ln2;
using std::numbers::pi;

constexpr unsigned kMaxDepth = 20;

template <typename F>
double integrate(F&& f, double lo, double hi, double tolerance) {
  if (hi <= lo) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, kMaxDepth,
                                                                       tolerance);
}

// ln cosh z without overflow.
double log_cosh(double z) {
  const double a = std::abs(z);
  return a + std::log1p(std::exp(-2.0 * a)) - ln2;
}

// q ln q with the 0 ln 0 = 0 convention.
double xlogx(double q) { return q > 0.0 ? q * std::log(q) : 0.0; }

std::size_t index_of(FeatureId f) { return static_cast<std::size_t>(f); }

bool same_pair(std::size_t i, std::size_t j, std::size_t a, std::size_t b) {
  return (i == a && j == b) || (i == b && j == a);
}

template <std::size_t N>
bool any_pair(std::size_t i, std::size_t j, const std::pair<FeatureId, FeatureId> (&pairs)[N]) {
  for (const auto& [a, b] : pairs)
    if (same_pair(i, j, index_of(a), index_of(b))) return true;
  return false;
}

using enum FeatureId;

// Pairs where one feature is a measurable function of the other.
constexpr std::pair<FeatureId, FeatureId> kFunctional[] = {
    {V1, V2}, {V1, V8}, {V2, V8}, {V3, V7}, {V5, V6}};
// Each member is a sum of two iid variables and the other is one summand
// (or an affine image of it).
constexpr std::pair<FeatureId, FeatureId> kSummand[] = {
    {V1, V4}, {V2, V4}, {V4, V7}, {V5, V10}, {V9, V10}};
// The square of one summand against the sum.
constexpr std::pair<FeatureId, FeatureId> kSquaredSummand[] = {{V3, V4}, {V4, V8}, {V6, V10}};

}  // namespace

void ScenarioSpec::validate() const {
  if (!std::isfinite(delta) || delta <= 0.0)
    throw std::invalid_argument(fmt::format("delta must be positive (got {})", delta));
  if (!std::isfinite(a) || a == 0.0)
    throw std::invalid_argument(fmt::format("a must be nonzero (got {})", a));
  if (!std::isfinite(b) || !std::isfinite(d))
    throw std::invalid_argument("b and d must be finite");
  if (!std::isfinite(k) || k <= 0.0 || k >= 1.0)
    throw std::invalid_argument(fmt::format("k must lie in the open interval (0, 1) (got {})", k));
}

std::string to_string(Scenario s) { return s == Scenario::Uniform ? "I" : "II"; }

Scenario parse_scenario(std::string_view text) {
  if (text == "I" || text == "1" || text == "uniform") return Scenario::Uniform;
  if (text == "II" || text == "2" || text == "gaussian") return Scenario::Gaussian;
  throw std::invalid_argument(fmt::format("unknown scenario '{}' (expected I or II)", text));
}

std::string feature_label(const ScenarioSpec& spec, FeatureId f) {
  switch (f) {
    case V1: return "X";
    case V2: return fmt::format("{}X{:+}", spec.a, spec.b);
    case V3: return "Y2";
    case V4: return "X-Y";
    case V5: return "Z";
    case V6: return "Z2";
    case V7: return "Y";
    case V8: return "X2";
    case V9: return fmt::format("W{:+}", spec.d);
    case V10: return "Z+W";
  }
  throw std::out_of_range("feature id out of range");
}

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * pi); }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double skewnormal_pdf(const SkewNormalParams& p, double x) {
  if (!(p.scale > 0.0)) throw std::invalid_argument("skew-normal scale must be positive");
  const double z = (x - p.location) / p.scale;
  return 2.0 / p.scale * normal_pdf(z) * normal_cdf(p.shape * z);
}

XReal entropy_of(const ScenarioSpec& spec, FeatureId f) {
  spec.validate();
  if (spec.scenario == Scenario::Uniform) {
    const double w = 2.0 * spec.delta;
    switch (f) {
      case V1: case V5: case V7: case V9:
        return XReal::finite(std::log(w));
      case V2:
        return XReal::finite(std::log(w * std::abs(spec.a)));
      case V3: case V6: case V8:
        return XReal::finite(std::log(2.0 * spec.delta * spec.delta) - 1.0);
      case V4: case V10:
        return XReal::finite(0.5 + std::log(w));
    }
  } else {
    const double e = std::numbers::e;
    switch (f) {
      case V1: case V5: case V7: case V9:
        return XReal::finite(0.5 * std::log(2.0 * pi * e));
      case V2:
        return XReal::finite(0.5 * std::log(2.0 * pi * e * spec.a * spec.a));
      case V3: case V6: case V8:
        return XReal::finite(0.5 * (1.0 + std::log(pi) - std::numbers::egamma));
      case V4: case V10:
        return XReal::finite(0.5 * std::log(4.0 * pi * e));
    }
  }
  throw std::out_of_range("feature id out of range");
}

double skewnormal_class_mi(double shape, double scale, double tolerance) {
  if (!(scale > 0.0)) throw std::invalid_argument("skew-normal scale must be positive");
  // With balanced classes the mixture is N(0, scale) and f_c = f q_c with
  // q_c = 2 Phi(+-shape x/scale), so MI = 1/2 sum_c E_f[q_c ln q_c]. The
  // integrand is even in x.
  auto integrand = [&](double x) {
    const double z = x / scale;
    const double q1 = 2.0 * normal_cdf(shape * z);
    const double q0 = 2.0 - q1;
    return normal_pdf(z) / scale * 0.5 * (xlogx(q1) + xlogx(q0));
  };
  return 2.0 * integrate(integrand, 0.0, 8.0 * scale, tolerance);
}

double class_mi(const ScenarioSpec& spec, FeatureId f, double tolerance) {
  spec.validate();
  const double k = spec.k;
  if (spec.scenario == Scenario::Uniform) {
    if (spec.delta != 0.5)
      throw std::invalid_argument("Scenario I class MI is only available for delta = 0.5");
    switch (f) {
      case V1: case V2:
        return -k / 2.0 + ln2;
      case V4:
        return -(k - 1.0) * (k - 1.0) * std::log1p(-k) / (4.0 * k);
      case V7:
        return ((k * k + 1.0) * std::log((1.0 + k) / (1.0 - k)) +
                2.0 * k * (std::log1p(-k * k) - 1.0)) /
               (4.0 * k);
      default:
        return 0.0;
    }
  }
  switch (f) {
    case V1: case V2:
      return skewnormal_class_mi(1.0 / k, 1.0, tolerance);
    case V7:
      return skewnormal_class_mi(k, 1.0, tolerance);
    case V4:
      return skewnormal_class_mi((1.0 - k) / (1.0 + k), std::numbers::sqrt2, tolerance);
    default:
      return 0.0;
  }
}

double y2_xy_mi_from_expectation(double expectation) { return -1.0 + ln2 / 2.0 + expectation; }

double mi_y2_xy_gaussian() {
  static const double value = [] {
    constexpr double lim = 8.0;
    auto inner = [](double y) {
      auto f = [y](double x) { return normal_pdf(x) * log_cosh((x - y) * std::abs(y)); };
      // Kink along x = y.
      return integrate(f, -lim, y, 1e-10) + integrate(f, y, lim, 1e-10);
    };
    auto outer = [&](double y) { return normal_pdf(y) * inner(y); };
    // Kink at y = 0 from |y|.
    const double e = integrate(outer, -lim, 0.0, 1e-9) + integrate(outer, 0.0, lim, 1e-9);
    return y2_xy_mi_from_expectation(e);
  }();
  return value;
}

XReal pairwise_mi(const ScenarioSpec& spec, FeatureId fi, FeatureId fj) {
  spec.validate();
  const std::size_t i = index_of(fi);
  const std::size_t j = index_of(fj);
  const bool uniform = spec.scenario == Scenario::Uniform;
  if (i == j || any_pair(i, j, kFunctional)) return XReal::pos_inf();
  if (any_pair(i, j, kSummand)) return XReal::finite(uniform ? 0.5 : ln2 / 2.0);
  if (any_pair(i, j, kSquaredSummand))
    return XReal::finite(uniform ? (1.0 - ln2) / 2.0 : mi_y2_xy_gaussian());
  return XReal::finite(0.0);
}

double class_square_mi(double k, const BaseDistribution& base) {
  if (!std::isfinite(k) || k <= 0.0 || k >= 1.0)
    throw std::invalid_argument("k must lie in the open interval (0, 1)");
  const bool uniform = base.kind == BaseDistribution::Kind::Uniform;
  if (uniform && !(base.delta > 0.0)) throw std::invalid_argument("delta must be positive");

  std::function<double(double)> pdf, cdf;
  double top = 8.0;
  std::vector<double> cuts;  // interior breakpoints on (0, top)
  if (uniform) {
    const double delta = base.delta;
    pdf = [delta](double x) { return std::abs(x) <= delta ? 0.5 / delta : 0.0; };
    cdf = [delta](double x) { return std::clamp((x + delta) / (2.0 * delta), 0.0, 1.0); };
    top = delta;
    cuts = {k * delta};
  } else {
    pdf = normal_pdf;
    cdf = normal_cdf;
  }

  // P(C = 1 | X = x) = P(Y >= -x/k), with Y an independent copy of X.
  auto q1 = [&](double x) { return 1.0 - cdf(-x / k); };

  auto over_half_line = [&](auto&& f) {
    double lo = 0.0, total = 0.0;
    for (double c : cuts) {
      total += integrate(f, lo, c, 1e-12);
      lo = c;
    }
    return total + integrate(f, lo, top, 1e-12);
  };

  const double p1 = over_half_line([&](double t) { return pdf(t) * q1(t) + pdf(-t) * q1(-t); });
  const double p0 = 1.0 - p1;

  // Densities of T = |X| = sqrt(X^2); MI is invariant under the bijection.
  auto g = [&](double t) { return pdf(t) + pdf(-t); };
  auto term = [&](double t, double mass, bool positive) {
    const double q_pos = positive ? q1(t) : 1.0 - q1(t);
    const double q_neg = positive ? q1(-t) : 1.0 - q1(-t);
    const double gc = (pdf(t) * q_pos + pdf(-t) * q_neg) / mass;
    const double gm = g(t);
    return gc > 0.0 && gm > 0.0 ? gc * std::log(gc / gm) : 0.0;
  };
  const double mi1 = over_half_line([&](double t) { return term(t, p1, true); });
  const double mi0 = over_half_line([&](double t) { return term(t, p0, false); });
  return p1 * mi1 + p0 * mi0;
}

OracleProvider::OracleProvider(const ScenarioSpec& spec) : spec_(spec) {
  spec_.validate();
  for (std::size_t i = 0; i < kScenarioFeatures; ++i) {
    const auto fi = static_cast<FeatureId>(i);
    entropies_.push_back(entropy_of(spec_, fi));
    class_mis_.push_back(XReal::finite(mifslab::class_mi(spec_, fi)));
    auto& row = pairwise_.emplace_back();
    for (std::size_t j = 0; j < kScenarioFeatures; ++j)
      row.push_back(mifslab::pairwise_mi(spec_, fi, static_cast<FeatureId>(j)));
  }
}

std::string OracleProvider::feature_name(std::size_t i) const {
  if (i >= kScenarioFeatures) throw std::out_of_range("feature index out of range");
  return feature_label(spec_, static_cast<FeatureId>(i));
}

OracleProvider oracle_provider(const ScenarioSpec& spec) { return OracleProvider(spec); }

}  // namespace mifslab
