#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "esum/genfun.hpp"
#include "esum/numeric.hpp"
#include "esum/parser.hpp"

using namespace esum;

namespace {

FGroup group(std::vector<long> point, std::vector<int> signs) {
  FGroup g;
  g.point = std::move(point);
  for (int s : signs) g.signs.push_back(static_cast<int8_t>(s));
  return g;
}

Index zi(std::initializer_list<int> xs) { return Index(std::vector<int>(xs)); }

bool passes(const TPoly& relation) {
  EvalConfig cfg;
  return numeric_verify(relation, cfg, 1e-8).status == VerifyReport::kPass;
}

}  // namespace

TEST_CASE("depth (1,1) shuffle expansion has the two clone-summed terms") {
  GenSide side = csh_expand({group({0}, {1}), group({0}, {1})});
  REQUIRE(side.terms.size() == 2);
  for (const CompTerm& t : side.terms) {
    REQUIRE(t.slots.size() == 2);
    // first slot form is x+y, second a single variable
    CHECK(t.slots[0].factors[0].form.coeffs == std::vector<long>({1, 1}));
    long single = t.slots[1].factors[0].form.coeffs[0] +
                  t.slots[1].factors[0].form.coeffs[1];
    CHECK(single == 1);
  }
}

TEST_CASE("block-shuffle term counts") {
  CHECK(csh_expand({group({0, 0}, {1, 1}), group({0, 0}, {1, 1})}).terms.size() == 6);
  CHECK(csh_expand({group({0, 0, 0}, {1, 1, 1}), group({0}, {1})}).terms.size() == 4);
  CHECK(cst_expand({group({0}, {1}), group({0}, {1})}).terms.size() == 3);
  CHECK(cst_expand({group({0, 0}, {1, 1}), group({0, 0}, {1, 1})}).terms.size() == 13);
}

TEST_CASE("decoded slot signs match the depth-4 display pattern") {
  // first (x,y) x (alpha,beta) term: S(alpha+x, beta+x, x, y) with p-domain
  // signs (nu1, nu1 nu2, mu1, mu1 mu2); decoding gives (nu1, nu2, mu1 nu1 nu2, mu2)
  for (int m1 : {1, -1})
    for (int m2 : {1, -1})
      for (int n1 : {1, -1})
        for (int n2 : {1, -1}) {
          GenSide side = csh_expand({group({0, 0}, {m1, m2}), group({0, 0}, {n1, n2})});
          bool found = false;
          for (const CompTerm& t : side.terms) {
            // identify S(alpha+x, beta+x, x, y): slots 0,1 mix both groups,
            // slot 2 = x1 alone, slot 3 = x2 alone
            const auto& f = t.slots;
            if (f[2].factors[0].form.coeffs == std::vector<long>({1, 0, 0, 0}) &&
                f[3].factors[0].form.coeffs == std::vector<long>({0, 1, 0, 0}) &&
                f[0].factors[0].form.coeffs == std::vector<long>({1, 0, 1, 0})) {
              SignVector xi(4);
              for (int i = 0; i < 4; ++i) xi[i] = static_cast<int8_t>(f[i].sign);
              SignVector decoded = q_map(xi);
              CHECK(decoded[0] == n1);
              CHECK(decoded[1] == n2);
              CHECK(decoded[2] == m1 * n1 * n2);
              CHECK(decoded[3] == m2);
              found = true;
            }
          }
          CHECK(found);
        }
}

TEST_CASE("every shuffle-side sign vector respects the T-sign product rule") {
  for (int m1 : {1, -1})
    for (int m2 : {1, -1})
      for (int n1 : {1, -1}) {
        GenSide side = csh_expand({group({0, 0}, {m1, m2}), group({0}, {n1})});
        int expect = t_sign({static_cast<int8_t>(m1), static_cast<int8_t>(m2)}) *
                     t_sign({static_cast<int8_t>(n1)});
        for (const CompTerm& t : side.terms) {
          SignVector xi;
          for (const Slot& s : t.slots) xi.push_back(static_cast<int8_t>(s.sign));
          CHECK(t_sign(q_map(xi)) == expect);
        }
      }
}

TEST_CASE("stuffle-side fused slots multiply signs and count both factors") {
  GenSide side = cst_expand({group({0}, {-1}), group({0}, {-1})});
  bool fused_seen = false;
  for (const CompTerm& t : side.terms) {
    if (t.slots.size() == 1) {
      fused_seen = true;
      CHECK(t.slots[0].factors.size() == 2);
      CHECK(t.slots[0].sign == 1);  // (-1) * (-1)
    }
  }
  CHECK(fused_seen);
}

TEST_CASE("differentiation shifts exponents and collects falling factorials") {
  GenSide side = cst_expand({group({0}, {1}), group({0}, {1})});
  GenSide d2 = differentiate(differentiate(side, 2), 2);
  // the term (x, y): slot 2 factor poly must be (a-1)(a-2)
  bool checked = false;
  for (const CompTerm& t : d2.terms) {
    if (t.slots.size() == 2 && t.slots[1].factors[0].shift == 2 &&
        t.slots[1].factors[0].form.coeffs == std::vector<long>({0, 1})) {
      Poly1 p = t.slots[1].factors[0].poly;
      CHECK(p.eval(3) == 2);   // (3-1)(3-2)
      CHECK(p.eval(4) == 6);   // (4-1)(4-2)
      CHECK(p.eval(1) == 0);
      checked = true;
    }
  }
  CHECK(checked);
}

TEST_CASE("the differentiated zero-point instantiation reproduces the product split") {
  // d/dy of the depth (1,1) identity at (0,0), weight 3: the two sides of
  // the product of the weight-1 and weight-2 regularized values
  FInvocation inv;
  inv.groups = {group({0}, {1}), group({0}, {1})};
  inv.derivs = {2};
  GenSide sh = csh_expand(inv.groups), st = cst_expand(inv.groups);
  sh = differentiate(sh, 2);
  st = differentiate(st, 2);
  TPoly sh_side = instantiate(sh, {0, 0}, 3);
  TPoly st_side = instantiate(st, {0, 0}, 3);

  TPoly expect_sh = shuffle_regularize(zi({1, 2}));
  expect_sh += shuffle_regularize(zi({2, 1})) * Rational(2);
  CHECK(sh_side == expect_sh);

  TPoly expect_st = star_regularize(zi({1, 2}));
  expect_st += star_regularize(zi({2, 1}));
  expect_st += star_regularize(zi({3}));
  CHECK(st_side == expect_st);

  CHECK(f_identity(inv, 3).zero());
}

TEST_CASE("weight below the slot count instantiates to zero") {
  GenSide side = csh_expand({group({1, 0}, {1, 1}), group({1}, {1})});
  CHECK(instantiate(side, {1, 0, 1}, 2).zero());
}

TEST_CASE("weight threshold is enforced") {
  FInvocation inv;
  inv.groups = {group({1, 0}, {1, 1}), group({0}, {1})};
  CHECK_THROWS_AS(f_identity(inv, 3), std::invalid_argument);
}

TEST_CASE("harvested relations vanish numerically") {
  for (const char* method :
       {"F(1,0;0)", "F(0,0;1)", "F(1,1;1,1)", "F(0,1,1;1)", "F2(1,0;0)",
        "F{1,2}(1;0)", "F(1;1;1)/3-F(0,1;1)", "F(1;-1)", "F(1,0;2)-F(1,2;0)"}) {
    for (int w : {5, 6}) {
      TPoly relation;
      for (MethodTerm& t : parse_method(method))
        relation += f_identity(t.invocation, w) * t.coef;
      CAPTURE(method);
      CAPTURE(w);
      CHECK(passes(relation));
    }
  }
}

TEST_CASE("alternating-sign invocations also vanish") {
  auto terms = parse_method("F(1,0;0)");
  apply_signs(terms[0].invocation, "+-;-");
  CHECK(passes(f_identity(terms[0].invocation, 5)));

  auto t2 = parse_method("F2(1,1;0)");
  apply_signs(t2[0].invocation, "-+;+");
  CHECK(passes(f_identity(t2[0].invocation, 6)));
}

TEST_CASE("modifying terms are load-bearing for all-ones points") {
  auto terms = parse_method("F(1,1;1,1)");
  GenSide sh = csh_expand(terms[0].invocation.groups);
  GenSide st = cst_expand(terms[0].invocation.groups);
  TPoly naive = instantiate(sh, {1, 1, 1, 1}, 5) - instantiate(st, {1, 1, 1, 1}, 5);
  EvalConfig cfg;
  CHECK(numeric_verify(naive, cfg, 1e-8).status == VerifyReport::kFail);
  CHECK(passes(f_identity(terms[0].invocation, 5)));
}

TEST_CASE("method parser") {
  auto terms = parse_method("1/2*F(1;1;1;1)-2*F(0,1;1;1)+2*F(1,0,1;1)+F(0,1;0,1)");
  REQUIRE(terms.size() == 4);
  CHECK(terms[0].coef == Rational(1, 2));
  CHECK(terms[0].invocation.groups.size() == 4);
  CHECK(terms[1].coef == Rational(-2));
  CHECK(terms[1].invocation.groups[0].point == std::vector<long>({0, 1}));
  CHECK(terms[3].invocation.groups[1].point == std::vector<long>({0, 1}));

  auto sub = parse_method("F{1,2}(1;0)");
  CHECK(sub[0].invocation.derivs == std::vector<int>({1, 2}));
  auto sub2 = parse_method("F_2(1,0;0)/3");
  CHECK(sub2[0].invocation.derivs == std::vector<int>({2}));
  CHECK(sub2[0].coef == Rational(1, 3));
  CHECK(parse_method("F(1,-1;2)")[0].invocation.groups[0].point ==
        std::vector<long>({1, -1}));
  CHECK_THROWS_AS(parse_method("G(1;1)"), ParseError);
}

TEST_CASE("fixed-value slots pin the composition entry") {
  GenSide side;
  side.flavor = GenSide::kStar;
  side.nvars = 1;
  CompTerm t;
  Slot pinned;
  pinned.factors.push_back({LinearForm::unit(1, 0), 0, Poly1{}});
  pinned.sign = 1;
  pinned.fixed_value = 3;
  Slot free;
  free.factors.push_back({LinearForm::unit(1, 0), 0, Poly1{}});
  free.sign = 1;
  t.slots = {pinned, free};
  side.terms.push_back(t);
  TPoly p = instantiate(side, {1}, 5);
  CHECK(p == TPoly(Index(std::vector<int>{3, 2})));
}
