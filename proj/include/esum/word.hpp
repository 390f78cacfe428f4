#ifndef ESUM_WORD_HPP
#define ESUM_WORD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "esum/index.hpp"

namespace esum {

// A word over the iterated-integral alphabet.  Letter 0 stands for dt/t and
// letter eta in {+1,-1} for dt/(eta - t).  Non-empty words arising from
// indexes always end in a nonzero letter.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<int8_t> letters) : l_(std::move(letters)) {
    for (int8_t v : l_)
      if (v < -1 || v > 1) throw std::invalid_argument("Word letters must be 0 or +-1");
  }

  size_t size() const { return l_.size(); }
  bool empty() const { return l_.empty(); }
  int letter(size_t i) const { return l_[i]; }
  const std::vector<int8_t>& letters() const { return l_; }

  bool summable() const { return l_.empty() || l_.back() != 0; }
  // Words starting with the +1 letter encode non-admissible indexes.
  bool admissible() const { return l_.empty() || l_.front() != 1; }

  Word tail() const { return Word(std::vector<int8_t>(l_.begin() + 1, l_.end())); }
  void push(int8_t v) { l_.push_back(v); }

  bool operator<(const Word& o) const {
    if (l_.size() != o.l_.size()) return l_.size() < o.l_.size();
    return l_ < o.l_;
  }
  bool operator==(const Word& o) const { return l_ == o.l_; }

  std::string str() const {
    std::string s = "w[";
    for (size_t i = 0; i < l_.size(); ++i) {
      if (i) s += " ";
      s += (l_[i] == 0 ? "0" : (l_[i] == 1 ? "+" : "-"));
    }
    return s + "]";
  }

 private:
  std::vector<int8_t> l_;
};

// w = 0^{s_1-1} eta_1 0^{s_2-1} eta_2 ... with eta_i the running sign
// products of mu.
inline Word index_to_word(const Index& u) {
  std::vector<int8_t> l;
  int8_t eta = 1;
  for (size_t i = 0; i < u.depth(); ++i) {
    eta = static_cast<int8_t>(eta * u.sign(i));
    for (int k = 1; k < u.part(i); ++k) l.push_back(0);
    l.push_back(eta);
  }
  return Word(std::move(l));
}

inline Index word_to_index(const Word& w) {
  if (!w.summable()) throw std::invalid_argument("non-summable word (trailing 0 letter)");
  std::vector<int> entries;
  int run = 0;
  int8_t prev_eta = 1;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w.letter(i) == 0) {
      ++run;
    } else {
      int mu = w.letter(i) * prev_eta;  // invert the running product
      prev_eta = static_cast<int8_t>(w.letter(i));
      entries.push_back(mu < 0 ? -(run + 1) : (run + 1));
      run = 0;
    }
  }
  return Index(entries);
}

}  // namespace esum

#endif
