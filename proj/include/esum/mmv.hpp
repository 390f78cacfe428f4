#ifndef ESUM_MMV_HPP
#define ESUM_MMV_HPP

#include <string>
#include <vector>

#include "esum/algebra.hpp"

namespace esum {

// Per-position sign descriptor of a mixed-value spec.  Free positions carry
// kPlus/kMinus (the summed-over parity filter); pinned positions carry a
// literal sign or a (possibly negated) product of free positions' signs.
struct MMVEntry {
  enum Kind { kPlus, kMinus, kProd, kNegProd } kind = kPlus;
  bool pinned = false;
  std::vector<int> refs;  // 1-based positions, only for kProd/kNegProd

  static MMVEntry free_plus() { return {kPlus, false, {}}; }
  static MMVEntry free_minus() { return {kMinus, false, {}}; }
  static MMVEntry pinned_sign(int s) { return {s < 0 ? kMinus : kPlus, true, {}}; }
  static MMVEntry pinned_prod(std::vector<int> refs, bool negated) {
    return {negated ? kNegProd : kProd, true, std::move(refs)};
  }
};

struct MMVSpec {
  std::vector<int> parts;
  std::vector<MMVEntry> entries;

  size_t depth() const { return parts.size(); }
  bool fixed_empty() const {
    for (const auto& e : entries)
      if (e.pinned) return false;
    return true;
  }
  void validate() const;
  std::string str() const;
};

enum class MMVKind { kTUpper, kTLower, kS, kZeta };

// T: checked at positions j == d (mod 2); t: all checked; S: the
// complementary alternating pattern; zeta: all plus, no free positions.
MMVSpec variant_to_mmv(MMVKind kind, const std::vector<int>& parts);

// 2^d signed Euler terms, coefficient -1 exactly when mu_j = eps_j = -1.
IndexComb expand_mmv(const MMVSpec& spec);

// 2^{#free} terms; pinned positions resolve per their descriptor.
IndexComb expand_incomplete_mmv(const MMVSpec& spec);

}  // namespace esum

#endif
