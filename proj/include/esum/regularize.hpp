#ifndef ESUM_REGULARIZE_HPP
#define ESUM_REGULARIZE_HPP

#include <vector>

#include "esum/tpoly.hpp"

namespace esum {

// Stuffle regularization: admissible u maps to itself, zs(1) = T, and
// leading (1,+1) entries are peeled via the stuffle recursion.  Exact.
TPoly star_regularize(const Index& u);

// Same contract in the word algebra with the single-letter shuffle recursion.
TPoly shuffle_regularize(const Word& w);
TPoly shuffle_regularize(const Index& u);

// Linear extensions.
TPoly star_regularize(const IndexComb& c);
TPoly shuffle_regularize(const IndexComb& c);

// Coefficient of u^a in exp(sum_{n>=2} (-1)^n z(n)/n u^n), i.e.
// rho(T^a)|_{T=0} / a!, expanded in the admissible basis via stuffle.
const IndexComb& rho_series_coeff(int a);

// rho(p): R-linear with rho(T^j) = sum_{a+b=j} j!/b! c_a T^b.
TPoly rho_apply(const TPoly& p);

// Both sides of the 1_l-prefix conversion identity, fully reduced:
//   zsh(1_l, s)  and  sum_j c_j (x) zstar(1_{l-j}, s).
// The two agree exactly; callers assert equality or inspect the parts.
struct ShToStar {
  TPoly lhs;
  TPoly rhs;
};
ShToStar sh_to_star(int ell, const Index& s);

// shuffle_regularize(u) - rho_apply(star_regularize(u)) per T-degree.
// Each degree is a valid Q-relation among admissible sums (numerically
// zero), generally nonzero symbolically.
std::vector<IndexComb> regularization_defect(const Index& u);

}  // namespace esum

#endif
