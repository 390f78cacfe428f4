#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "esum/numeric.hpp"
#include "esum/regularize.hpp"

using namespace esum;

namespace {

Index zi(std::initializer_list<int> xs) { return Index(std::vector<int>(xs)); }

TPoly tmonomial(int deg, const IndexComb& c) { return TPoly::monomial_T(deg, c); }

}  // namespace

TEST_CASE("star regularization basics") {
  // zs(1) = T
  CHECK(star_regularize(zi({1})) == tmonomial(1, IndexComb(Index())));
  // zs(1,1) = T^2/2 - z(2)/2
  TPoly expect = tmonomial(2, IndexComb(Index(), Rational(1, 2)));
  expect -= TPoly(IndexComb(zi({2}), Rational(1, 2)));
  CHECK(star_regularize(zi({1, 1})) == expect);
  // admissible fixed point
  CHECK(star_regularize(zi({3, -2})) == TPoly(zi({3, -2})));
}

TEST_CASE("shuffle regularization basics") {
  // zh(1,1) = T^2/2
  CHECK(shuffle_regularize(zi({1, 1})) == tmonomial(2, IndexComb(Index(), Rational(1, 2))));
  // zh(1,2) = T z(2) - 2 z(2,1)
  TPoly expect = tmonomial(1, IndexComb(zi({2})));
  expect -= TPoly(IndexComb(zi({2, 1}), Rational(2)));
  CHECK(shuffle_regularize(zi({1, 2})) == expect);
  // admissible fixed point
  CHECK(shuffle_regularize(zi({2, 1})) == TPoly(zi({2, 1})));
}

TEST_CASE("star regularization of z(1,2)") {
  // T z(2) = zs(1,2) + z(2,1) + z(3)
  TPoly expect = tmonomial(1, IndexComb(zi({2})));
  expect -= TPoly(IndexComb(zi({2, 1})));
  expect -= TPoly(IndexComb(zi({3})));
  CHECK(star_regularize(zi({1, 2})) == expect);
}

TEST_CASE("regularizations act as identity on every admissible index") {
  std::vector<Index> pool = {zi({2}),      zi({-1}),        zi({2, 1}),
                             zi({-1, -1}), zi({3, -2, 1}),  zi({-2, 1, 1}),
                             Index(),      zi({-1, 1, 1, 1})};
  for (const Index& u : pool) {
    CHECK(star_regularize(u) == TPoly(u));
    CHECK(shuffle_regularize(u) == TPoly(u));
  }
}

TEST_CASE("grading of regularization coefficients") {
  std::vector<Index> pool = {zi({1, 2}), zi({1, 1, -1}), zi({1, 1, 1, 2}), zi({1, -3, 1})};
  for (const Index& u : pool) {
    for (const TPoly& p : {star_regularize(u), shuffle_regularize(u)}) {
      for (int k = 0; k <= p.degree(); ++k)
        for (const auto& [t, _] : p.coeff(k).terms()) {
          CHECK(t.weight() == u.weight() - k);
          CHECK(t.admissible());
        }
    }
  }
}

TEST_CASE("rho series coefficients") {
  // no linear term; u^2 coefficient z(2)/2; u^3 coefficient -z(3)/3
  CHECK(rho_series_coeff(0) == IndexComb(Index()));
  CHECK(rho_series_coeff(1).zero());
  CHECK(rho_series_coeff(2) == IndexComb(zi({2}), Rational(1, 2)));
  CHECK(rho_series_coeff(3) == IndexComb(zi({3}), Rational(-1, 3)));

  // higher coefficients match the closed forms numerically
  EvalConfig cfg;
  double z2 = evaluate(zi({2}), cfg).value;
  double z3 = evaluate(zi({3}), cfg).value;
  double z4 = evaluate(zi({4}), cfg).value;
  double z5 = evaluate(zi({5}), cfg).value;
  double z6 = evaluate(zi({6}), cfg).value;
  CHECK(std::abs(evaluate_lincomb(rho_series_coeff(4), cfg).value - 9.0 * z4 / 16) < 1e-10);
  CHECK(std::abs(evaluate_lincomb(rho_series_coeff(5), cfg).value -
                 (-(z5 / 5) - z2 * z3 / 6)) < 1e-10);
  CHECK(std::abs(evaluate_lincomb(rho_series_coeff(6), cfg).value -
                 (61.0 * z6 / 128 + z3 * z3 / 18)) < 1e-10);
}

TEST_CASE("rho fixes T and produces the z(2)/2 constant") {
  TPoly t1 = TPoly::monomial_T(1, IndexComb(Index()));
  CHECK(rho_apply(t1) == t1);

  TPoly half_t2 = TPoly::monomial_T(2, IndexComb(Index(), Rational(1, 2)));
  TPoly r = rho_apply(half_t2);
  CHECK(r.coeff(0) == IndexComb(zi({2}), Rational(1, 2)));
  CHECK(r.coeff(2) == IndexComb(Index(), Rational(1, 2)));
  CHECK(r.coeff(1).zero());
}

TEST_CASE("prefix-ones conversion identities hold exactly") {
  std::vector<Index> tails = {Index(), zi({2}), zi({3}), zi({2, 1}), zi({-1}), zi({3, -2})};
  for (int ell = 0; ell <= 5; ++ell)
    for (const Index& s : tails) {
      ShToStar r = sh_to_star(ell, s);
      CHECK(r.lhs == r.rhs);
    }
  CHECK_THROWS_AS(sh_to_star(2, zi({1, 2})), std::invalid_argument);
}

TEST_CASE("defect of admissible indexes vanishes") {
  for (const Index& u : {zi({2, 1}), zi({-1}), zi({3, -2, 1})}) {
    auto defect = regularization_defect(u);
    for (const auto& d : defect) CHECK(d.zero());
  }
}

TEST_CASE("defect of z(1,2) is Euler's relation") {
  auto defect = regularization_defect(zi({1, 2}));
  IndexComb expect;
  expect.add(zi({2, 1}), Rational(-1));
  expect.add(zi({3}), Rational(1));
  CHECK(defect[0] == expect);
  for (size_t k = 1; k < defect.size(); ++k) CHECK(defect[k].zero());
}

TEST_CASE("defects evaluate to zero numerically") {
  EvalConfig cfg;
  for (const Index& u : {zi({1, -1}), zi({1, 1, 2}), zi({1, -2, 1}), zi({1, 1, 1, -1})}) {
    auto defect = regularization_defect(u);
    for (const auto& d : defect) {
      EvalResult r = evaluate_lincomb(d, cfg);
      CHECK(std::abs(r.value) < 1e-9);
    }
  }
}

TEST_CASE("single-leading-one words: regularizations agree above degree zero") {
  // when the first two entries are not both (1,+1), the two regularizations
  // carry identical coefficients at every positive T-degree and their
  // degree-0 parts differ only by a numerically-zero relation
  EvalConfig cfg;
  std::function<void(std::vector<int>&, int)> walk = [&](std::vector<int>& cur, int rem) {
    if (!cur.empty()) {
      Index u(cur);
      bool double_ones = cur.size() >= 2 && cur[0] == 1 && cur[1] == 1;
      if (!double_ones) {
        TPoly star = star_regularize(u), sh = shuffle_regularize(u);
        CHECK(std::max(star.degree(), 0) == std::max(sh.degree(), 0));
        for (int k = 1; k <= std::max(star.degree(), sh.degree()); ++k)
          CHECK(star.coeff(k) == sh.coeff(k));
        EvalResult r = evaluate_lincomb(sh.coeff(0) - star.coeff(0), cfg);
        CHECK(std::abs(r.value) < 1e-8);
      }
    }
    if (rem == 0) return;
    for (int p = 1; p <= rem; ++p)
      for (int sgn : {1, -1}) {
        cur.push_back(sgn * p);
        walk(cur, rem - p);
        cur.pop_back();
      }
  };
  std::vector<int> cur;
  walk(cur, 5);
}
