#ifndef ESUM_GENFUN_HPP
#define ESUM_GENFUN_HPP

#include <vector>

#include "esum/regularize.hpp"

namespace esum {

// Integer linear form over the combined variable list x_1..x_{d_1+d_2+...}.
struct LinearForm {
  std::vector<long> coeffs;
  long constant = 0;

  explicit LinearForm(size_t nvars = 0) : coeffs(nvars, 0) {}
  static LinearForm unit(size_t nvars, size_t var) {
    LinearForm f(nvars);
    f.coeffs[var] = 1;
    return f;
  }
  LinearForm& operator+=(const LinearForm& o) {
    for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    constant += o.constant;
    return *this;
  }
  long eval(const std::vector<long>& point) const {
    long v = constant;
    for (size_t i = 0; i < coeffs.size(); ++i) v += coeffs[i] * point[i];
    return v;
  }
  bool operator==(const LinearForm& o) const {
    return coeffs == o.coeffs && constant == o.constant;
  }
};

// Univariate polynomial with rational coefficients in one factor's
// sub-exponent; accumulates falling-factorial pieces from differentiation.
struct Poly1 {
  std::vector<Rational> c{Rational(1)};

  Rational eval(long a) const {
    Rational v(0), p(1);
    for (const Rational& ci : c) {
      v += ci * p;
      p *= a;
    }
    return v;
  }
  // poly *= scale * (a - k)
  void mul_linear(long k, const Rational& scale) {
    std::vector<Rational> out(c.size() + 1, Rational(0));
    for (size_t i = 0; i < c.size(); ++i) {
      out[i + 1] += c[i] * scale;
      out[i] -= c[i] * scale * k;
    }
    c = std::move(out);
  }
};

// One exponent carrier inside a slot.  A free slot has one factor; a fused
// slot (from the stuffle's circled product) has one per constituent.
struct SlotFactor {
  LinearForm form;
  int shift = 0;
  Poly1 poly;
};

struct Slot {
  std::vector<SlotFactor> factors;
  int sign = +1;
  int fixed_value = 0;  // > 0 pins the slot total s_i to that value
};

struct CompTerm {
  Rational coef = Rational(1);
  std::vector<Slot> slots;
};

// A symbolic side of an F-identity before weight instantiation.  Sh-flavored
// slot signs live in the p-domain and decode via q_map at instantiation.
struct GenSide {
  enum Flavor { kSh, kStar } flavor = kSh;
  size_t nvars = 0;
  std::vector<CompTerm> terms;
};

struct FGroup {
  std::vector<long> point;  // integer evaluation point, one per slot
  SignVector signs;

  size_t depth() const { return signs.size(); }
};

struct FInvocation {
  std::vector<FGroup> groups;
  std::vector<int> derivs;  // 1-based positions into the combined variables
};

// Shuffle-side expansion with the cloning operator: enumerates all block
// interleavings of the groups' variables, each block gaining the first form
// of the following block; signs enter p-converted and interleave alongside.
GenSide csh_expand(const std::vector<FGroup>& groups);

// Stuffle-side expansion: interleave-or-fuse; fused slots hold both
// constituent factors and multiply their signs.
GenSide cst_expand(const std::vector<FGroup>& groups);

// Exact d/dx_var by the product rule across slot factors.
GenSide differentiate(const GenSide& side, int var /*1-based*/);

// Expand every term over the compositions of w, evaluate slot forms at the
// point, reduce each resulting symbol per flavor, and sum.
TPoly instantiate(const GenSide& side, const std::vector<long>& point, int w);

// The weight-w relation harvested from one F-invocation: shuffle side minus
// stuffle side with the leading-(1,1) modifying terms subtracted from each
// side.  Numerically zero at every T-degree.
TPoly f_identity(const FInvocation& inv, int w);

}  // namespace esum

#endif
