#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esum/numeric.hpp"
#include "esum/parser.hpp"
#include "esum/regularize.hpp"

using namespace esum;

namespace {

Index zi(std::initializer_list<int> xs) { return Index(std::vector<int>(xs)); }

TPoly ev(const std::string& s, Env env = {}) {
  return eval_expression(parse_expression(s), env);
}

}  // namespace

TEST_CASE("the depth-2 sum-formula left side") {
  TPoly p = ev("sum{a+b=w, a>=2}[1] z(a,b)", Env{{"w", Rational(4)}});
  IndexComb expect;
  expect.add(zi({3, 1}), Rational(1));
  expect.add(zi({2, 2}), Rational(1));
  CHECK(p == TPoly(expect));
}

TEST_CASE("symbols, coefficients, weight expressions") {
  CHECK(ev("2^(a-1)+2^c", Env{{"a", Rational(3)}, {"c", Rational(2)}}).zero() == false);
  CHECK(eval_scalar(parse_expression("2^(a-1)+2^c"),
                    Env{{"a", Rational(3)}, {"c", Rational(2)}}) == 8);
  CHECK(eval_scalar(parse_expression("(-1)^a"), Env{{"a", Rational(3)}}) == -1);
  CHECK(eval_scalar(parse_expression("binom(6,2)"), Env{}) == 15);
  CHECK(eval_scalar(parse_expression("(a-1)*(b-1)"),
                    Env{{"a", Rational(4)}, {"b", Rational(3)}}) == 6);
  CHECK(ev("z(3,-2)") == TPoly(zi({3, -2})));
  CHECK(ev("zs(1)") == TPoly::monomial_T(1, IndexComb(Index())));
  CHECK(ev("zh(1,1)") == TPoly::monomial_T(2, IndexComb(Index(), Rational(1, 2))));
}

TEST_CASE("products expand through the series product") {
  TPoly p = ev("z(2)*z(-3)");
  IndexComb expect;
  expect.add(zi({2, -3}), Rational(1));
  expect.add(zi({-3, 2}), Rational(1));
  expect.add(zi({-5}), Rational(1));
  CHECK(p == TPoly(expect));
}

TEST_CASE("parity-variant calls expand to alternating sums") {
  TPoly p = ev("T(3,2,1)");
  CHECK(p.coeff(0).size() == 8);
  CHECK(p.coeff(0).coeff(zi({3, 2, 1})) == 1);
  CHECK(p.coeff(0).coeff(zi({-3, -2, 1})) == -1);
  TPoly m13 = ev("MI{1,3}(-4,3,2*~e2,v1)");
  CHECK(m13.coeff(0).size() == 4);
  CHECK(m13.coeff(0).coeff(zi({-4, 3, -2, 1})) == 1);
  CHECK(m13.coeff(0).coeff(zi({-4, -3, 2, -1})) == -1);
}

TEST_CASE("errors carry positions and reasons") {
  CHECK_THROWS_AS(parse_expression("sum{a+b=w a>=2}[1] z(a,b)"), ParseError);
  CHECK_THROWS_AS(parse_expression("z(2,"), ParseError);
  CHECK_THROWS_AS(ev("z(q)"), std::invalid_argument);             // unbound variable
  CHECK_THROWS_AS(ev("z(1,2)"), std::invalid_argument);           // non-admissible
  CHECK_THROWS_AS(ev("T(1,2)"), std::invalid_argument);           // divergent variant
  CHECK_THROWS_AS(ev("z(0)"), std::invalid_argument);
  CHECK_THROWS_AS(ev("MI{3}(2,1)"), std::invalid_argument);       // position out of range
  CHECK_THROWS_AS(ev("M(2,-1)"), std::invalid_argument);          // bar outside pin set
  try {
    parse_expression("sum{a+b=w a>=2}[1] z(a,b)");
  } catch (const ParseError& e) {
    CHECK(e.position() == 10);  // points at the stray name after the total
  }
}

TEST_CASE("non-homogeneous differences are detected") {
  TPoly p = ev("z(3) - z(2)");
  CHECK_THROWS_AS(homogeneous_weight(p), std::invalid_argument);
  CHECK(homogeneous_weight(ev("zs(1,2)")) == 3);
}

TEST_CASE("print and reparse is stable on catalog-style expressions") {
  for (const char* text : {
           "sum{a+b+c=w, a>=2}[2^(a-1)+2^c] z(a,b,c)",
           "sum{a+b=w, a>=2, odd(a), odd(b)}[1] z(a,b) - 1/4*z(w)",
           "MI{1,4}(-q,1,1,1*e{2,3}) + z(-u,1,1)",
           "4*binom(r,3)*T(w) - 2^(a+c)*(2^(a-1)*3^b - 3^b - 1)",
           "z(-1)*z(q,1,-1) - 2*zs(1,r) + zh(1,1,u)",
           "sum{t1+t2+t3=u+2, t1>u-2}[1] z(t1,t2,t3)",
           "M(vq,2,v1)*T(2)^2 - S(q,3)/4",
       }) {
    std::string once = print_expression(parse_expression(text));
    std::string twice = print_expression(parse_expression(once));
    CHECK(once == twice);
  }
}

TEST_CASE("sum constraints: bounds and parity") {
  // t1 > u-d style bound referencing outer parameters
  TPoly p = ev("sum{t1+t2=6, t1>3}[1] z(t1,t2)", Env{});
  IndexComb expect;
  expect.add(zi({4, 2}), Rational(1));
  expect.add(zi({5, 1}), Rational(1));
  CHECK(p == TPoly(expect));

  TPoly q = ev("sum{a+b=6, a>=2, even(a), odd(b)}[1] z(a,b)");
  // only (a,b) even/odd pairs summing to 6 with a>=2: none (6 even forces same parity)
  CHECK(q.zero());
}

TEST_CASE("zero-weight assignments skip divergent bodies") {
  // at a=1 the weight vanishes, so the divergent T(1,b) body is never built
  TPoly p = ev("sum{a+b=5}[a-1] T(a,b)");
  CHECK_FALSE(p.zero());
}

TEST_CASE("regularized symbols reach the star and word reductions") {
  CHECK(ev("zs(1,2)") == star_regularize(zi({1, 2})));
  CHECK(ev("zh(1,2)") == shuffle_regularize(zi({1, 2})));
}
