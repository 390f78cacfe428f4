#ifndef ESUM_INDEX_HPP
#define ESUM_INDEX_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace esum {

// A signed number: magnitude >= 1 with a sign in {+1,-1}.  The bar notation
// of alternating sums maps the barred k to (k, -1).
struct SignedNumber {
  int magnitude = 1;
  int sign = +1;

  SignedNumber() = default;
  SignedNumber(int mag, int sgn) : magnitude(mag), sign(sgn) {
    if (mag < 1) throw std::invalid_argument("SignedNumber magnitude must be >= 1");
    if (sgn != 1 && sgn != -1) throw std::invalid_argument("SignedNumber sign must be +-1");
  }
  bool operator==(const SignedNumber& o) const {
    return magnitude == o.magnitude && sign == o.sign;
  }
};

// Magnitudes add, signs multiply.
inline SignedNumber oplus(const SignedNumber& a, const SignedNumber& b) {
  return SignedNumber(a.magnitude + b.magnitude, a.sign * b.sign);
}

using SignVector = std::vector<int8_t>;  // entries +-1

// Running products (mu_1, mu_1 mu_2, ..., mu_1...mu_d).
inline SignVector p_map(const SignVector& mu) {
  SignVector out(mu.size());
  int8_t acc = 1;
  for (size_t j = 0; j < mu.size(); ++j) {
    acc = static_cast<int8_t>(acc * mu[j]);
    out[j] = acc;
  }
  return out;
}

// Adjacent products (mu_1, mu_2 mu_1, ..., mu_d mu_{d-1}).  Inverse of p_map.
inline SignVector q_map(const SignVector& mu) {
  SignVector out(mu.size());
  for (size_t j = 0; j < mu.size(); ++j)
    out[j] = (j == 0) ? mu[0] : static_cast<int8_t>(mu[j] * mu[j - 1]);
  return out;
}

// Product of entries at positions j with j == d (mod 2), i.e. mu_d, mu_{d-2}, ...
inline int t_sign(const SignVector& mu) {
  if (mu.empty()) throw std::invalid_argument("undefined T-sign");
  int s = 1;
  for (size_t j = mu.size(); j >= 1; j -= 2) {
    s *= mu[j - 1];
    if (j == 1 || j == 2) break;
  }
  return s;
}

// A composition with signs.  Entry i stores sign(i)*part(i), so z(3,-2,1)
// has entries {3,-2,1}.  The empty index is allowed (weight 0, admissible).
class Index {
 public:
  Index() = default;
  explicit Index(std::vector<int> entries) : e_(std::move(entries)) {
    for (int v : e_)
      if (v == 0) throw std::invalid_argument("Index entries must be nonzero");
  }
  Index(const std::vector<int>& parts, const SignVector& signs) {
    if (parts.size() != signs.size())
      throw std::invalid_argument("parts/signs length mismatch");
    e_.reserve(parts.size());
    for (size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] < 1) throw std::invalid_argument("Index parts must be >= 1");
      e_.push_back(signs[i] < 0 ? -parts[i] : parts[i]);
    }
  }

  size_t depth() const { return e_.size(); }
  bool empty() const { return e_.empty(); }
  int part(size_t i) const { return e_[i] < 0 ? -e_[i] : e_[i]; }
  int sign(size_t i) const { return e_[i] < 0 ? -1 : +1; }
  int entry(size_t i) const { return e_[i]; }
  const std::vector<int>& entries() const { return e_; }

  int weight() const {
    int w = 0;
    for (int v : e_) w += (v < 0 ? -v : v);
    return w;
  }
  SignVector signs() const {
    SignVector s(e_.size());
    for (size_t i = 0; i < e_.size(); ++i) s[i] = (e_[i] < 0) ? -1 : 1;
    return s;
  }
  std::vector<int> parts() const {
    std::vector<int> p(e_.size());
    for (size_t i = 0; i < e_.size(); ++i) p[i] = part(i);
    return p;
  }

  bool admissible() const { return e_.empty() || e_[0] != 1; }

  // Index with the first entry dropped.
  Index tail() const { return Index(std::vector<int>(e_.begin() + 1, e_.end())); }

  // Canonical order: (weight, depth, parts, signs).  Fixes all iteration
  // and report output.
  bool operator<(const Index& o) const {
    int w = weight(), ow = o.weight();
    if (w != ow) return w < ow;
    if (e_.size() != o.e_.size()) return e_.size() < o.e_.size();
    for (size_t i = 0; i < e_.size(); ++i)
      if (part(i) != o.part(i)) return part(i) < o.part(i);
    for (size_t i = 0; i < e_.size(); ++i)
      if (sign(i) != o.sign(i)) return sign(i) < o.sign(i);
    return false;
  }
  bool operator==(const Index& o) const { return e_ == o.e_; }
  bool operator!=(const Index& o) const { return e_ != o.e_; }

  std::string str() const {
    std::string s = "z(";
    for (size_t i = 0; i < e_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(e_[i]);
    }
    return s + ")";
  }

  // Serialization for relation-set files: "2,1|++", empty index is "|".
  std::string key() const {
    std::string s;
    for (size_t i = 0; i < e_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(part(i));
    }
    s += "|";
    for (size_t i = 0; i < e_.size(); ++i) s += (sign(i) < 0 ? '-' : '+');
    return s;
  }
  static Index from_key(const std::string& k);

 private:
  std::vector<int> e_;
};

inline Index Index::from_key(const std::string& k) {
  auto bar = k.find('|');
  if (bar == std::string::npos) throw std::invalid_argument("bad index key: " + k);
  std::vector<int> entries;
  std::string parts = k.substr(0, bar), signs = k.substr(bar + 1);
  size_t pos = 0, si = 0;
  while (pos < parts.size()) {
    auto comma = parts.find(',', pos);
    if (comma == std::string::npos) comma = parts.size();
    int mag = std::stoi(parts.substr(pos, comma - pos));
    if (si >= signs.size()) throw std::invalid_argument("bad index key: " + k);
    entries.push_back(signs[si] == '-' ? -mag : mag);
    ++si;
    pos = comma + 1;
  }
  if (si != signs.size()) throw std::invalid_argument("bad index key: " + k);
  return Index(entries);
}

struct IndexHash {
  size_t operator()(const Index& u) const {
    size_t h = 1469598103934665603ull;
    for (int v : u.entries()) {
      h ^= static_cast<size_t>(v + 128);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace esum

#endif
