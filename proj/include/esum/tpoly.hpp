#ifndef ESUM_TPOLY_HPP
#define ESUM_TPOLY_HPP

#include <string>
#include <vector>

#include "esum/algebra.hpp"

namespace esum {

// Polynomial in the regularization variable T whose coefficients are
// Q-linear combinations of admissible indexes.  Normalized: the leading
// coefficient is nonzero; the zero polynomial has an empty list.
class TPoly {
 public:
  TPoly() = default;
  explicit TPoly(const IndexComb& c) {
    if (!c.zero()) coeffs_.push_back(c);
  }
  explicit TPoly(const Index& u) : TPoly(IndexComb(u)) {}

  static TPoly monomial_T(int degree, IndexComb c = IndexComb(Index())) {
    TPoly p;
    if (c.zero()) return p;
    p.coeffs_.assign(degree + 1, IndexComb());
    p.coeffs_[degree] = std::move(c);
    return p;
  }

  bool zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const IndexComb& coeff(int k) const {
    static const IndexComb kZero;
    return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : kZero;
  }

  TPoly& operator+=(const TPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    normalize();
    return *this;
  }
  TPoly& operator-=(const TPoly& o) {
    if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
    for (size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    normalize();
    return *this;
  }
  TPoly& operator*=(const Rational& c) {
    for (auto& lc : coeffs_) lc *= c;
    normalize();
    return *this;
  }
  friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
  friend TPoly operator-(TPoly a, const TPoly& b) { return a -= b; }
  friend TPoly operator*(TPoly a, const Rational& c) { return a *= c; }
  friend TPoly operator*(const Rational& c, TPoly a) { return a *= c; }

  // Multiply by T.
  TPoly shifted() const {
    if (zero()) return {};
    TPoly p;
    p.coeffs_.resize(coeffs_.size() + 1);
    for (size_t k = 0; k < coeffs_.size(); ++k) p.coeffs_[k + 1] = coeffs_[k];
    return p;
  }

  // Product of polynomials; coefficient products expand via stuffle.
  friend TPoly mul(const TPoly& a, const TPoly& b) {
    TPoly p;
    if (a.zero() || b.zero()) return p;
    p.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, IndexComb());
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
      for (size_t j = 0; j < b.coeffs_.size(); ++j)
        p.coeffs_[i + j] += stuffle(a.coeffs_[i], b.coeffs_[j]);
    p.normalize();
    return p;
  }

  bool operator==(const TPoly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const TPoly& o) const { return coeffs_ != o.coeffs_; }

  std::string str() const {
    if (zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      if (coeffs_[k].zero()) continue;
      if (!out.empty()) out += "  +  ";
      if (k > 0) out += "T^" + std::to_string(k) + " * ";
      out += "[" + coeffs_[k].str() + "]";
    }
    return out;
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back().zero()) coeffs_.pop_back();
  }
  std::vector<IndexComb> coeffs_;
};

}  // namespace esum

#endif
