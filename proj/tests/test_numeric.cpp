#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "esum/numeric.hpp"
#include "esum/regularize.hpp"

using namespace esum;

namespace {
Index zi(std::initializer_list<int> xs) { return Index(std::vector<int>(xs)); }
const double kPi = 3.14159265358979323846;
}  // namespace

TEST_CASE("truncated sums") {
  CHECK(truncated_sum(zi({1}), 0) == 0.0);  // M < depth
  CHECK(truncated_sum(zi({-1}), 2) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(truncated_sum(zi({2, 1}), 3) == doctest::Approx(5.0 / 12).epsilon(1e-14));
  // classical 1/M tail of the Basel series
  double z2 = kPi * kPi / 6;
  for (long m : {1000L, 2000L, 4000L}) {
    double tail = z2 - truncated_sum(zi({2}), m);
    CHECK(tail == doctest::Approx(1.0 / m).epsilon(1e-3));
  }
}

TEST_CASE("oracle table at 1e-9") {
  EvalConfig cfg;
  CHECK(std::abs(evaluate(zi({2}), cfg).value - kPi * kPi / 6) < 1e-9);
  CHECK(std::abs(evaluate(zi({4}), cfg).value - std::pow(kPi, 4) / 90) < 1e-9);
  CHECK(std::abs(evaluate(zi({-1}), cfg).value + std::log(2.0)) < 1e-9);
  CHECK(std::abs(evaluate(zi({-2}), cfg).value + kPi * kPi / 12) < 1e-9);
  CHECK(std::abs(evaluate(zi({3, 1}), cfg).value - std::pow(kPi, 4) / 360) < 1e-9);
  CHECK(std::abs(evaluate(Index(), cfg).value - 1.0) == 0.0);
  CHECK_THROWS_AS(evaluate(zi({1, 2}), cfg), std::invalid_argument);
}

TEST_CASE("lincomb evaluation") {
  EvalConfig cfg;
  IndexComb c;
  c.add(zi({3, 1}), Rational(1));
  c.add(zi({2, 2}), Rational(1));
  EvalResult r = evaluate_lincomb(c, cfg);
  CHECK(std::abs(r.value - std::pow(kPi, 4) / 90) < 2e-8);

  CHECK(evaluate_lincomb(IndexComb(), cfg).value == 0.0);

  IndexComb t2;  // value of the weight-2 upper parity sum: pi^2/4
  t2.add(zi({2}), Rational(1));
  t2.add(zi({-2}), Rational(-1));
  CHECK(std::abs(evaluate_lincomb(t2, cfg).value - kPi * kPi / 4) < 2e-9);
}

TEST_CASE("evaluation agrees with deep truncation") {
  EvalConfig cfg;
  // depth-2 and depth-3 symbols with alternating signs against raw sums
  for (const Index& u : {zi({2, 1}), zi({-2, 1}), zi({3, -1, 1}), zi({-1, 1})}) {
    double ref = truncated_sum(u, 2'000'000);
    double val = evaluate(u, cfg).value;
    CHECK(std::abs(val - ref) < 2e-5);  // raw truncation itself is only ~1/M accurate
  }
  CHECK(std::abs(evaluate(zi({2, 1}), cfg).value - 1.202056903159594) < 1e-9);
}

TEST_CASE("ladder backend agrees with the split backend at modest accuracy") {
  EvalConfig split;
  EvalConfig ladder;
  ladder.backend = EvalConfig::kLadder;
  for (const Index& u : {zi({2}), zi({-1}), zi({2, 1}), zi({-2, 1}), zi({3, 1})}) {
    double a = evaluate(u, split).value;
    EvalResult l = evaluate(u, ladder);
    CHECK(std::abs(a - l.value) < 1e-7);
  }
}

TEST_CASE("ladder error bound shrinks as the ladder grows") {
  EvalConfig small;
  small.backend = EvalConfig::kLadder;
  small.ladder_levels = 7;
  EvalConfig big = small;
  big.ladder_levels = 10;
  for (const Index& u : {zi({2}), zi({2, 1})}) {
    CHECK(evaluate(u, big).err_bound <= evaluate(u, small).err_bound * 1.5);
  }
}

TEST_CASE("verification harness") {
  EvalConfig cfg;
  // sum formula at (4,2) as a per-degree zero
  IndexComb c;
  c.add(zi({3, 1}), Rational(1));
  c.add(zi({2, 2}), Rational(1));
  c.add(zi({4}), Rational(-1));
  CHECK(numeric_verify(std::vector<IndexComb>{c}, cfg, 1e-8).status == VerifyReport::kPass);

  // deliberately perturbed identity must fail
  IndexComb bad = c;
  bad.add(zi({4}), Rational(1, 1000));
  CHECK(numeric_verify(std::vector<IndexComb>{bad}, cfg, 1e-8).status ==
        VerifyReport::kFail);
}
