#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "generators.hpp"
#include "mifslab/oracle.hpp"
#include "mifslab/selection.hpp"

using namespace mifslab;

namespace {

const OracleProvider& oracle(Scenario s, double k) {
  static const OracleProvider i02(ScenarioSpec::uniform(0.2)), i08(ScenarioSpec::uniform(0.8)),
      ii02(ScenarioSpec::gaussian(0.2)), ii08(ScenarioSpec::gaussian(0.8));
  if (s == Scenario::Uniform) return k < 0.5 ? i02 : i08;
  return k < 0.5 ? ii02 : ii08;
}

std::string order_of(const MethodSpec& m, const MIProvider& p) {
  return summary_line(select_all(m, p), p);
}

// Scenario II, k = 0.2, with four-decimal reference values (MI(C,X-Y) = 0.0947).
TableProvider rounded_scenario2_k02() {
  const double l2 = std::numbers::ln2 / 2;
  const double h[] = {1.4189, 2.5176, 0.7838, 1.7655, 1.4189, 0.7838, 1.4189, 0.7838, 1.4189, 1.7655};
  const double c[] = {0.5520, 0.5520, 0, 0.0947, 0, 0, 0.0124, 0, 0, 0};
  std::vector<XReal> hs, cs, pw(100, XReal::finite(0.0));
  for (int i = 0; i < 10; ++i) {
    hs.push_back(XReal::finite(h[i]));
    cs.push_back(XReal::finite(c[i]));
    pw[i * 10 + i] = XReal::pos_inf();
  }
  auto set = [&](int a, int b, XReal v) { pw[(a - 1) * 10 + b - 1] = pw[(b - 1) * 10 + a - 1] = v; };
  for (auto [a, b] : {std::pair{1, 2}, {1, 8}, {2, 8}, {3, 7}, {5, 6}}) set(a, b, XReal::pos_inf());
  for (auto [a, b] : {std::pair{1, 4}, {2, 4}, {4, 7}, {5, 10}, {9, 10}}) set(a, b, XReal::finite(l2));
  for (auto [a, b] : {std::pair{3, 4}, {4, 8}, {6, 10}}) set(a, b, XReal::finite(0.1078));
  return TableProvider(hs, cs, pw);
}

}  // namespace

TEST_CASE("method parsing") {
  CHECK(parse_method("mrmr").kind == MethodKind::MRMR);
  CHECK(parse_method("MIFS-U", 0.4).beta == 0.4);
  CHECK(parse_method("mifs").beta == 1.0);
  CHECK_THROWS_WITH_AS(parse_method("jmi"), doctest::Contains("mifs, mifsu, mrmr"), std::invalid_argument);
  CHECK_THROWS_AS(parse_method("mrmr", 0.5), std::invalid_argument);
  CHECK_THROWS_AS(parse_method("mifs", 1.5), std::invalid_argument);
  CHECK(display_name(MethodSpec::mifsu(0.4)) == "MIFS-U(beta=0.4)");
  CHECK(method_names().size() == 8);
}

TEST_CASE("objective values") {
  const auto& p = oracle(Scenario::Uniform, 0.2);
  CHECK(objective(MethodSpec::mifs(1), 3, {0}, p).value() == doctest::Approx(-0.3215).epsilon(1e-4));
  CHECK(objective(MethodSpec::mifs(0), 1, {0}, p) == XReal::indet(IndetKind::ZeroTimesInf));
  CHECK(objective(MethodSpec::of(MethodKind::NMIFS), 7, {0}, p) == XReal::pos_inf());
  // NI(X, X-Y) = 0.5 / min(0, 0.5) = +inf, so the relevance ratio vanishes.
  CHECK(objective(MethodSpec::of(MethodKind::MICC), 3, {0}, p).value() == doctest::Approx(-0.17851484));

  const auto rounded = rounded_scenario2_k02();
  CHECK(std::abs(objective(MethodSpec::mifsu(0.4), 3, {0}, rounded).value() - 0.0408) < 5e-5);
  CHECK_THROWS_AS(objective(MethodSpec::mifs(1), 3, {}, p), std::invalid_argument);
}

TEST_CASE("first feature") {
  CHECK(first_feature(oracle(Scenario::Uniform, 0.2)) == 0);
  CHECK(first_feature(oracle(Scenario::Gaussian, 0.8)) == 0);
  const std::vector<XReal> z(3, XReal::finite(0.0));
  CHECK(first_feature(TableProvider(z, z, std::vector<XReal>(9, XReal::finite(0.0)))) == 0);
}

TEST_CASE("orderings on the analytic providers") {
  const auto& i02 = oracle(Scenario::Uniform, 0.2);
  CHECK(order_of(MethodSpec::mifs(1), i02) == "X Y Z W+2 X-Y Z+W 3X+1 Y2 Z2 X2 | halt: all selected");
  CHECK(order_of(MethodSpec::mifsu(0), i02) == "X | halt: no admissible candidate");
  CHECK(order_of(MethodSpec::of(MethodKind::NMIFS), i02) ==
        "X X2 Y2 Z2 X-Y | halt: no admissible candidate");
  CHECK(order_of(MethodSpec::of(MethodKind::MICC), oracle(Scenario::Uniform, 0.8)) ==
        "X X2 X-Y Y2 | halt: no admissible candidate");
  CHECK(order_of(MethodSpec::of(MethodKind::QMIFS), oracle(Scenario::Gaussian, 0.2)) ==
        "X Y Z W+2 Z+W X-Y | halt: no admissible candidate");
}

TEST_CASE("MIFS(beta=1), mRMR and maxMIFS agree on the analytic providers") {
  for (auto s : {Scenario::Uniform, Scenario::Gaussian})
    for (double k : {0.2, 0.8}) {
      const auto& p = oracle(s, k);
      const auto ref = select_all(MethodSpec::mifs(1), p).selected;
      CHECK(select_all(MethodSpec::of(MethodKind::MRMR), p).selected == ref);
      CHECK(select_all(MethodSpec::of(MethodKind::MAXMIFS), p).selected == ref);
    }
}

TEST_CASE("trace rendering") {
  const auto& p = oracle(Scenario::Uniform, 0.2);
  const auto t = select_all(MethodSpec::mifsu(0), p);
  REQUIRE(t.steps.size() == 2);
  CHECK_FALSE(t.steps[1].winner);
  std::ostringstream out;
  write_trace_tsv(out, t, p);
  const std::string tsv = out.str();
  CHECK(tsv.rfind("step\tfeature\tobjective\tadmissible\tselected\n", 0) == 0);
  CHECK(tsv.find("1\tX\t0.5931471805599453\tyes\tyes\n") != std::string::npos);
  CHECK(tsv.find("2\tY\tindet(0*inf)\tno\tno\n") != std::string::npos);
}

TEST_CASE("property: mRMR equals MIFS with beta = 1/|S| on random providers") {
  gen::Rng rng(31);
  for (int i = 0; i < 200; ++i) {
    const auto p = gen::provider(rng);
    const auto t = select_all(MethodSpec::of(MethodKind::MRMR), p);
    for (std::size_t s = 1; s < t.steps.size(); ++s) {
      const std::vector<std::size_t> selected(t.selected.begin(), t.selected.begin() + s);
      const auto mifs = MethodSpec::mifs(1.0 / static_cast<double>(s));
      for (const auto& c : t.steps[s].candidates)
        REQUIRE(objective(mifs, c.feature, selected, p) == c.objective);
    }
  }
}

TEST_CASE("property: trace invariants") {
  gen::Rng rng(37);
  const MethodSpec methods[] = {MethodSpec::mifs(0.5), MethodSpec::mifsu(0.7), MethodSpec::of(MethodKind::MRMR),
                                MethodSpec::of(MethodKind::MMIFSU), MethodSpec::of(MethodKind::MICC),
                                MethodSpec::of(MethodKind::QMIFS), MethodSpec::of(MethodKind::NMIFS),
                                MethodSpec::of(MethodKind::MAXMIFS)};
  for (int i = 0; i < 100; ++i) {
    const auto p = gen::provider(rng);
    for (const auto& m : methods) {
      const auto t = select_all(m, p);
      REQUIRE(select_all(m, p).selected == t.selected);
      auto sorted = t.selected;
      std::sort(sorted.begin(), sorted.end());
      REQUIRE(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
      for (const auto& step : t.steps) {
        for (const auto& c : step.candidates) {
          REQUIRE(c.admissible == !c.objective.is_indet());
          if (!step.winner || !c.admissible) continue;
          const auto& w = *std::find_if(step.candidates.begin(), step.candidates.end(),
                                        [&](const CandidateScore& s) { return s.feature == *step.winner; });
          const auto ord = xcompare(c.objective, w.objective);
          REQUIRE(ord <= 0);
          if (ord == 0) REQUIRE(c.feature >= w.feature);
        }
      }
      if (t.halt == HaltReason::AllSelected) REQUIRE(t.selected.size() == p.feature_count());
      else REQUIRE(t.selected.size() < p.feature_count());
    }
  }
}

TEST_CASE("property: beta = 0 with finite redundancy ranks by relevance") {
  gen::Rng rng(41);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = 6;
    std::vector<XReal> h, c, pw(n * n, XReal::finite(0.0));
    std::vector<double> rel;
    for (std::size_t a = 0; a < n; ++a) {
      h.push_back(XReal::finite(unit(rng)));
      rel.push_back(unit(rng));
      c.push_back(XReal::finite(rel.back()));
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b <= a; ++b) pw[a * n + b] = pw[b * n + a] = XReal::finite(unit(rng));
    const TableProvider p(h, c, pw);
    std::vector<std::size_t> expect(n);
    for (std::size_t a = 0; a < n; ++a) expect[a] = a;
    std::stable_sort(expect.begin(), expect.end(), [&](auto a, auto b) { return rel[a] > rel[b]; });
    REQUIRE(select_all(MethodSpec::mifs(0), p).selected == expect);
  }
}
