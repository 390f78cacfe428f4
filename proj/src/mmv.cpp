#include "esum/mmv.hpp"

#include <stdexcept>

namespace esum {

void MMVSpec::validate() const {
  if (parts.size() != entries.size())
    throw std::invalid_argument("MMVSpec parts/entries length mismatch");
  for (int p : parts)
    if (p < 1) throw std::invalid_argument("MMVSpec parts must be >= 1");
  for (const auto& e : entries) {
    if (e.kind == MMVEntry::kProd || e.kind == MMVEntry::kNegProd) {
      if (!e.pinned) throw std::invalid_argument("e-product entries must be pinned");
      for (int r : e.refs) {
        if (r < 1 || r > static_cast<int>(parts.size()))
          throw std::invalid_argument("e-product reference out of range");
        if (entries[r - 1].pinned)
          throw std::invalid_argument("e-product must reference free positions");
      }
    }
  }
}

std::string MMVSpec::str() const {
  // Pinned: bar = -1, bare = +1, products as e{...} / ~e{...}.
  // Free: v-prefix = checked (-1), bare = +1.
  std::string pos;
  bool any_pinned = false;
  for (size_t j = 0; j < entries.size(); ++j) {
    if (entries[j].pinned) {
      if (any_pinned) pos += ",";
      pos += std::to_string(j + 1);
      any_pinned = true;
    }
  }
  std::string out = any_pinned ? "MI{" + pos + "}(" : "M(";
  for (size_t j = 0; j < parts.size(); ++j) {
    if (j) out += ",";
    const MMVEntry& e = entries[j];
    if (!e.pinned) {
      if (e.kind == MMVEntry::kMinus) out += "v";
      out += std::to_string(parts[j]);
    } else if (e.kind == MMVEntry::kPlus) {
      out += std::to_string(parts[j]);
    } else if (e.kind == MMVEntry::kMinus) {
      out += "-" + std::to_string(parts[j]);
    } else {
      out += std::to_string(parts[j]) + "*";
      if (e.kind == MMVEntry::kNegProd) out += "~";
      out += "e{";
      for (size_t i = 0; i < e.refs.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(e.refs[i]);
      }
      out += "}";
    }
  }
  return out + ")";
}

MMVSpec variant_to_mmv(MMVKind kind, const std::vector<int>& parts) {
  MMVSpec spec;
  spec.parts = parts;
  const int d = static_cast<int>(parts.size());
  for (int j = 1; j <= d; ++j) {
    switch (kind) {
      case MMVKind::kTLower:
        spec.entries.push_back(MMVEntry::free_minus());
        break;
      case MMVKind::kTUpper:
        spec.entries.push_back(((d - j) % 2 == 0) ? MMVEntry::free_minus()
                                                  : MMVEntry::free_plus());
        break;
      case MMVKind::kS:
        spec.entries.push_back(((d - j) % 2 == 1) ? MMVEntry::free_minus()
                                                  : MMVEntry::free_plus());
        break;
      case MMVKind::kZeta:
        spec.entries.push_back(MMVEntry::pinned_sign(+1));
        break;
    }
  }
  return spec;
}

IndexComb expand_mmv(const MMVSpec& spec) {
  if (!spec.fixed_empty())
    throw std::invalid_argument("expand_mmv requires an empty fixed set");
  return expand_incomplete_mmv(spec);
}

IndexComb expand_incomplete_mmv(const MMVSpec& spec) {
  spec.validate();
  const int d = static_cast<int>(spec.depth());
  std::vector<int> free_pos;
  for (int j = 0; j < d; ++j)
    if (!spec.entries[j].pinned) free_pos.push_back(j);

  IndexComb out;
  const size_t combos = size_t{1} << free_pos.size();
  for (size_t mask = 0; mask < combos; ++mask) {
    std::vector<int> mu(d, +1);
    int coef = 1;
    for (size_t i = 0; i < free_pos.size(); ++i) {
      int j = free_pos[i];
      mu[j] = (mask >> i) & 1 ? -1 : +1;
      // sgn(1 + mu_j + eps_j) = -1 only if mu_j = eps_j = -1
      if (mu[j] == -1 && spec.entries[j].kind == MMVEntry::kMinus) coef = -coef;
    }
    for (int j = 0; j < d; ++j) {
      const MMVEntry& e = spec.entries[j];
      if (!e.pinned) continue;
      switch (e.kind) {
        case MMVEntry::kPlus:
          mu[j] = +1;
          break;
        case MMVEntry::kMinus:
          mu[j] = -1;
          break;
        case MMVEntry::kProd:
        case MMVEntry::kNegProd: {
          int s = (e.kind == MMVEntry::kNegProd) ? -1 : +1;
          for (int r : e.refs) s *= mu[r - 1];
          mu[j] = s;
          break;
        }
      }
    }
    std::vector<int> entries(d);
    for (int j = 0; j < d; ++j) entries[j] = mu[j] * spec.parts[j];
    out.add(Index(entries), Rational(coef));
  }
  return out;
}

}  // namespace esum
