#ifndef ESUM_LINCOMB_HPP
#define ESUM_LINCOMB_HPP

#include <map>
#include <string>

#include "esum/rational.hpp"

namespace esum {

// A finite Q-linear combination of symbols, kept normalized: no stored
// coefficient is zero.  Symbols must supply operator< for deterministic
// iteration.
template <typename Sym>
class LinComb {
 public:
  using Map = std::map<Sym, Rational>;

  LinComb() = default;
  explicit LinComb(const Sym& s, Rational c = Rational(1)) {
    if (c != 0) terms_[s] = std::move(c);
  }

  bool zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }

  Rational coeff(const Sym& s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add(const Sym& s, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(s);
    if (it == terms_.end()) {
      terms_.emplace(s, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LinComb& operator+=(const LinComb& o) {
    for (const auto& [s, c] : o.terms_) add(s, c);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    for (const auto& [s, c] : o.terms_) add(s, -c);
    return *this;
  }
  LinComb& operator*=(const Rational& c) {
    if (c == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [s, v] : terms_) v *= c;
    return *this;
  }

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(LinComb a, const Rational& c) { return a *= c; }
  friend LinComb operator*(const Rational& c, LinComb a) { return a *= c; }
  LinComb operator-() const {
    LinComb r = *this;
    for (auto& [s, v] : r.terms_) v = -v;
    return r;
  }

  bool operator==(const LinComb& o) const { return terms_ == o.terms_; }
  bool operator!=(const LinComb& o) const { return terms_ != o.terms_; }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [s, c] : terms_) {
      std::string cs = to_string(c);
      if (first) {
        if (cs == "1") {
        } else if (cs == "-1") {
          out += "-";
        } else {
          out += cs + "*";
        }
      } else if (c > 0) {
        out += " + ";
        if (cs != "1") out += cs + "*";
      } else {
        out += " - ";
        if (cs != "-1") out += to_string(-c) + "*";
      }
      out += s.str();
      first = false;
    }
    return out;
  }

 private:
  Map terms_;
};

}  // namespace esum

#endif
