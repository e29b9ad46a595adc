#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "generators.hpp"
#include "mifslab/infotheory.hpp"

using namespace mifslab;
using std::numbers::ln2;

namespace {
// Two fair bits with P(Y = X) = agree.
JointTable bit_pair(double agree) {
  return JointTable({2, 2}, {agree / 2, (1 - agree) / 2, (1 - agree) / 2, agree / 2});
}
}  // namespace

TEST_CASE("entropy") {
  CHECK(entropy(JointTable({2}, {0.5, 0.5}), {0}) == doctest::Approx(ln2));
  CHECK(entropy(JointTable({3}, {0.0, 1.0, 0.0}), {0}) == 0.0);
  CHECK(entropy(JointTable({4}, {0.25, 0.25, 0.25, 0.25}), {0}) == doctest::Approx(std::log(4.0)));
  CHECK_THROWS_AS(entropy(bit_pair(1.0), {}), std::invalid_argument);
  CHECK_THROWS_AS(entropy(bit_pair(1.0), {2}), std::out_of_range);
}

TEST_CASE("conditional entropy") {
  CHECK(cond_entropy(bit_pair(0.5), {0}, {1}) == doctest::Approx(ln2));
  CHECK(cond_entropy(bit_pair(1.0), {0}, {1}) == doctest::Approx(0.0));
  CHECK(cond_entropy(bit_pair(0.7), {0}, {}) == doctest::Approx(ln2));
  CHECK_THROWS_AS(cond_entropy(bit_pair(0.7), {0}, {0}), std::invalid_argument);
}

TEST_CASE("mutual information") {
  CHECK(mi(bit_pair(0.5), {0}, {1}) == doctest::Approx(0.0));
  CHECK(mi(bit_pair(1.0), {0}, {1}) == doctest::Approx(ln2));
  CHECK_THROWS_AS(mi(bit_pair(1.0), {0, 1}, {1}), std::invalid_argument);

  // Class against X on the Scenario I grid: both formulas agree.
  const auto grid = fixtures::scenario1_grid();
  const VarSet x = {grid.feature_var(0)}, c = {grid.class_var()};
  CHECK(std::abs(mi(grid.table(), x, c) - mi_direct(grid.table(), x, c)) < 1e-10);
  CHECK(mi(grid.table(), x, c) > 0.1);
}

TEST_CASE("triple mutual information") {
  // C = X xor Y over fair bits.
  const JointTable xor_table({2, 2, 2}, {0.25, 0, 0, 0.25, 0, 0.25, 0.25, 0});
  CHECK(tmi(xor_table, {0}, {1}, {2}) == doctest::Approx(-ln2));
  // Z independent of (X, Y).
  std::vector<double> m;
  for (double p : {0.4, 0.1, 0.1, 0.4})
    for (double q : {0.3, 0.7}) m.push_back(p * q);
  CHECK(tmi(JointTable({2, 2, 2}, m), {0}, {1}, {2}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(cond_mi(xor_table, {0}, {1}, {1}), std::invalid_argument);
}

TEST_CASE("normalized MI") {
  CHECK(normalized_mi(XReal::finite(0.5), XReal::finite(0.5), XReal::finite(0.0)) == XReal::pos_inf());
  CHECK(normalized_mi(XReal::pos_inf(), XReal::finite(1.0986), XReal::finite(-1.6932)) ==
        XReal::neg_inf());
  CHECK(normalized_mi(XReal::finite(0.0), XReal::finite(0.0), XReal::finite(0.5)) ==
        XReal::indet(IndetKind::ZeroOverZero));
  CHECK(normalized_mi(XReal::finite(0.0), XReal::finite(1.0), XReal::finite(0.5)) == XReal::finite(0.0));
}

TEST_CASE("table validation and marginals") {
  CHECK_THROWS_AS(JointTable({2}, {0.5, 0.6}), std::invalid_argument);
  CHECK_THROWS_AS(JointTable({2}, {1.5, -0.5}), std::invalid_argument);
  CHECK_THROWS_AS(JointTable({2, 2}, {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(JointTable({0}, {}), std::invalid_argument);
  const JointTable t({2}, {0.5, 0.5 + 5e-10});
  CHECK(t.masses()[0] + t.masses()[1] == doctest::Approx(1.0).epsilon(1e-15));

  const JointTable m = bit_pair(0.8).marginal({1});
  CHECK(m.masses()[0] == doctest::Approx(0.5));
}

TEST_CASE("json round trip") {
  const JointTable t({2, 3}, {0.1, 0.2, 0.0, 0.3, 0.25, 0.15});
  const JointTable back = joint_table_from_json(to_json(t));
  CHECK(back.arities() == t.arities());
  CHECK(back.masses() == t.masses());
  CHECK_THROWS(joint_table_from_json(nlohmann::json{{"arities", {2}}}));
}

TEST_CASE("property: identity and chain rule on random tables") {
  gen::Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const JointTable t = gen::table(rng, 3);
    REQUIRE(std::abs(mi(t, {0}, {1}) - mi_direct(t, {0}, {1})) < 1e-10);
    REQUIRE(std::abs(mi(t, {0}, {1}) - mi(t, {1}, {0})) < 1e-14);
    REQUIRE(mi(t, {0}, {1, 2}) >= -1e-12);
    const double a = mi(t, {0}, {1}) - cond_mi(t, {0}, {1}, {2});
    const double b = mi(t, {0}, {2}) - cond_mi(t, {0}, {2}, {1});
    const double c = mi(t, {1}, {2}) - cond_mi(t, {1}, {2}, {0});
    REQUIRE(std::abs(a - b) < 1e-10);
    REQUIRE(std::abs(a - c) < 1e-10);
    REQUIRE(std::abs(tmi(t, {0}, {1}, {2}) - a) < 1e-10);
  }
}
