#include "esum/regularize.hpp"

#include <map>
#include <stdexcept>

namespace esum {

namespace {

// per-thread caches: idempotent, duplicate computation across threads is
// acceptable and yields identical results
std::map<Index, TPoly>& star_memo() {
  static thread_local std::map<Index, TPoly> m;
  return m;
}
std::map<Word, TPoly>& sh_memo() {
  static thread_local std::map<Word, TPoly> m;
  return m;
}

}  // namespace

TPoly star_regularize(const Index& u) {
  if (u.admissible()) return TPoly(u);
  auto it = star_memo().find(u);
  if (it != star_memo().end()) return it->second;

  // u = (1,+1) v.  In stuffle(z(1), v) the index u occurs with multiplicity
  // k = 1 + number of leading (1,+1) entries of v; every other term has
  // strictly fewer leading (1,+1) entries.
  Index v = u.tail();
  IndexComb prod = stuffle(Index(std::vector<int>{1}), v);
  Rational k = prod.coeff(u);
  TPoly out = star_regularize(v).shifted();  // T * zstar(v)
  for (const auto& [t, c] : prod.terms()) {
    if (t == u) continue;
    out -= star_regularize(t) * c;
  }
  out *= Rational(1) / k;
  star_memo().emplace(u, out);
  return out;
}

TPoly shuffle_regularize(const Word& w) {
  if (!w.summable()) throw std::invalid_argument("non-summable word");
  if (w.admissible()) return TPoly(word_to_index(w));
  auto it = sh_memo().find(w);
  if (it != sh_memo().end()) return it->second;

  Word v = w.tail();
  Word y1(std::vector<int8_t>{1});
  WordComb prod = shuffle_words(y1, v);
  Rational k = prod.coeff(w);
  TPoly out = shuffle_regularize(v).shifted();
  for (const auto& [t, c] : prod.terms()) {
    if (t == w) continue;
    out -= shuffle_regularize(t) * c;
  }
  out *= Rational(1) / k;
  sh_memo().emplace(w, out);
  return out;
}

TPoly shuffle_regularize(const Index& u) { return shuffle_regularize(index_to_word(u)); }

TPoly star_regularize(const IndexComb& c) {
  TPoly out;
  for (const auto& [u, coef] : c.terms()) out += star_regularize(u) * coef;
  return out;
}

TPoly shuffle_regularize(const IndexComb& c) {
  TPoly out;
  for (const auto& [u, coef] : c.terms()) out += shuffle_regularize(u) * coef;
  return out;
}

const IndexComb& rho_series_coeff(int a) {
  static thread_local std::vector<IndexComb> coeffs;  // grows on demand
  if (coeffs.empty()) coeffs.push_back(IndexComb(Index()));  // c_0 = 1
  while (static_cast<int>(coeffs.size()) <= a) {
    int m = static_cast<int>(coeffs.size());
    // m c_m = sum_{n=2..m} (-1)^n z(n) * c_{m-n}  (from C' = G' C).
    IndexComb acc;
    for (int n = 2; n <= m; ++n) {
      IndexComb zn(Index(std::vector<int>{n}), Rational((n % 2 == 0) ? 1 : -1));
      acc += stuffle(zn, coeffs[m - n]);
    }
    acc *= Rational(1, m);
    coeffs.push_back(acc);
  }
  return coeffs[a];
}

TPoly rho_apply(const TPoly& p) {
  TPoly out;
  for (int j = 0; j <= p.degree(); ++j) {
    const IndexComb& lj = p.coeff(j);
    if (lj.zero()) continue;
    for (int a = 0; a <= j; ++a) {
      int b = j - a;
      Rational scale(factorial(j), factorial(b));
      out += TPoly::monomial_T(b, stuffle(rho_series_coeff(a), lj) * scale);
    }
  }
  return out;
}

ShToStar sh_to_star(int ell, const Index& s) {
  if (!s.admissible())
    throw std::invalid_argument("sh_to_star requires admissible (or empty) tail index");
  auto with_ones = [&](int count) {
    std::vector<int> e(count, 1);
    for (int x : s.entries()) e.push_back(x);
    return Index(e);
  };
  ShToStar r;
  // The conversion is exact in the star basis: the left side is the
  // shuffle-regularized value written through rho.  (Reducing it through
  // the word algebra instead shifts it by genuine relations; that shift is
  // exactly the regularization defect.)
  r.lhs = rho_apply(star_regularize(with_ones(ell)));
  for (int j = 0; j <= ell; ++j) {
    TPoly term = star_regularize(with_ones(ell - j));
    r.rhs += mul(TPoly(rho_series_coeff(j)), term);
  }
  return r;
}

std::vector<IndexComb> regularization_defect(const Index& u) {
  TPoly diff = shuffle_regularize(u) - rho_apply(star_regularize(u));
  std::vector<IndexComb> out(static_cast<size_t>(std::max(0, diff.degree())) + 1);
  for (size_t k = 0; k < out.size(); ++k) out[k] = diff.coeff(static_cast<int>(k));
  return out;
}

}  // namespace esum
