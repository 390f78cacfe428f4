#include "esum/algebra.hpp"

#include <map>
#include <utility>

namespace esum {

namespace {

IndexComb stuffle_rec(const Index& u, const Index& v,
                      std::map<std::pair<Index, Index>, IndexComb>& memo) {
  if (u.empty()) return IndexComb(v);
  if (v.empty()) return IndexComb(u);
  auto key = std::make_pair(u, v);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  Index ut = u.tail(), vt = v.tail();
  IndexComb out;
  auto prepend = [](int head, const IndexComb& c) {
    IndexComb r;
    for (const auto& [s, coef] : c.terms()) {
      std::vector<int> e;
      e.reserve(s.depth() + 1);
      e.push_back(head);
      for (int x : s.entries()) e.push_back(x);
      r.add(Index(std::move(e)), coef);
    }
    return r;
  };
  out += prepend(u.entry(0), stuffle_rec(ut, v, memo));
  out += prepend(v.entry(0), stuffle_rec(u, vt, memo));
  SignedNumber fused = oplus(SignedNumber(u.part(0), u.sign(0)),
                             SignedNumber(v.part(0), v.sign(0)));
  out += prepend(fused.sign * fused.magnitude, stuffle_rec(ut, vt, memo));

  memo.emplace(std::move(key), out);
  return out;
}

WordComb shuffle_rec(const Word& a, const Word& b,
                     std::map<std::pair<Word, Word>, WordComb>& memo) {
  if (a.empty()) return WordComb(b);
  if (b.empty()) return WordComb(a);
  auto key = std::make_pair(a, b);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  auto prepend = [](int8_t head, const WordComb& c) {
    WordComb r;
    for (const auto& [w, coef] : c.terms()) {
      std::vector<int8_t> l;
      l.reserve(w.size() + 1);
      l.push_back(head);
      for (int8_t x : w.letters()) l.push_back(x);
      r.add(Word(std::move(l)), coef);
    }
    return r;
  };
  WordComb out = prepend(static_cast<int8_t>(a.letter(0)), shuffle_rec(a.tail(), b, memo));
  out += prepend(static_cast<int8_t>(b.letter(0)), shuffle_rec(a, b.tail(), memo));

  memo.emplace(std::move(key), out);
  return out;
}

}  // namespace

IndexComb stuffle(const Index& u, const Index& v) {
  static thread_local std::map<std::pair<Index, Index>, IndexComb> memo;
  return stuffle_rec(u, v, memo);
}

WordComb shuffle_words(const Word& w1, const Word& w2) {
  static thread_local std::map<std::pair<Word, Word>, WordComb> memo;
  return shuffle_rec(w1, w2, memo);
}

IndexComb words_to_indices(const WordComb& wc) {
  IndexComb out;
  for (const auto& [w, c] : wc.terms()) out.add(word_to_index(w), c);
  return out;
}

IndexComb shuffle_indices(const Index& u, const Index& v) {
  return words_to_indices(shuffle_words(index_to_word(u), index_to_word(v)));
}

IndexComb stuffle(const IndexComb& a, const IndexComb& b) {
  IndexComb out;
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) out += stuffle(u, v) * (cu * cv);
  return out;
}

IndexComb shuffle_indices(const IndexComb& a, const IndexComb& b) {
  IndexComb out;
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) out += shuffle_indices(u, v) * (cu * cv);
  return out;
}

}  // namespace esum
