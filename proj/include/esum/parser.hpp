#ifndef ESUM_PARSER_HPP
#define ESUM_PARSER_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "esum/genfun.hpp"
#include "esum/mmv.hpp"
#include "esum/tpoly.hpp"

namespace esum {

// Identity expression language, shared by the CLI and the catalog records:
//
//   expr     := add ;  add := mul (('+'|'-') mul)* ;  mul := unary (('*'|'/') unary)*
//   unary    := '-' unary | power ;  power := atom ('^' unary)?
//   atom     := NUMBER | NAME | '(' expr ')' | call | sum
//   call     := ('z'|'zs'|'zh'|'T'|'t'|'S') '(' args ')'
//             | 'M' '(' slots ')' | 'MI' '{' ints '}' '(' slots ')'
//             | 'binom' '(' expr ',' expr ')'
//   sum      := 'sum' '{' NAME ('+' NAME)* '=' expr (',' cond)* '}' '[' expr ']' factor+
//   cond     := NAME ('>='|'>'|'<='|'<') expr | ('even'|'odd') '(' NAME ')'
//   slot     := ['v'] expr ['*' ['~'] eref ('*' eref)*] ;  eref := e<digits> | e '{' ints '}'
//
// Symbol arguments evaluate to nonzero integers; a negative value -k denotes
// the alternating entry (k, -1).  In M/MI slots, 'v' marks a checked free
// position, a negative value a pinned -1, and e-products pin a position to
// the (optionally negated, '~') product of the referenced free positions'
// signs.  z() of a non-admissible index is an error; use zs()/zh() for the
// stuffle/shuffle regularized values.

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), pos_(pos) {}
  size_t position() const { return pos_; }

 private:
  size_t pos_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

using Env = std::map<std::string, Rational>;

ExprPtr parse_expression(const std::string& text);
std::string print_expression(const ExprPtr& e);

// Evaluates to a T-polynomial over admissible indexes; scalars promote to
// multiples of the empty index.
TPoly eval_expression(const ExprPtr& e, const Env& env);
Rational eval_scalar(const ExprPtr& e, const Env& env);

// Method strings: rational combinations of F-invocations, e.g.
//   "F(1,0;0)", "F2(1,1;0)", "F{1,2}(1;0)", "1/2*F(1;1;1;1)-2*F(0,1;1;1)".
// Underscore subscript forms F_2 and F_{1,2} are accepted.  Signs are not
// part of the string; they are attached per group at run time.
struct MethodTerm {
  Rational coef;
  FInvocation invocation;  // group signs default to all-plus
};
std::vector<MethodTerm> parse_method(const std::string& text);

// "++;+-" style per-group sign assignment.
void apply_signs(FInvocation& inv, const std::string& signs);

// Weight of a homogeneous T-polynomial: every symbol in the T^k coefficient
// has weight w-k.  Throws if not homogeneous.
int homogeneous_weight(const TPoly& p);

}  // namespace esum

#endif
