#include "esum/genfun.hpp"

#include <functional>
#include <stdexcept>

namespace esum {

namespace {

struct FoldTerm {
  std::vector<Slot> slots;
};

// All interleavings of a and b preserving internal order, as tag sequences
// (false = from a, true = from b).
void interleavings(size_t na, size_t nb, std::vector<std::vector<bool>>& out) {
  std::vector<bool> cur;
  std::function<void(size_t, size_t)> rec = [&](size_t i, size_t j) {
    if (i == na && j == nb) {
      out.push_back(cur);
      return;
    }
    if (i < na) {
      cur.push_back(false);
      rec(i + 1, j);
      cur.pop_back();
    }
    if (j < nb) {
      cur.push_back(true);
      rec(i, j + 1);
      cur.pop_back();
    }
  };
  rec(0, 0);
}

// One shuffle fold step with the cloning operator: every maximal run gains
// the first form of the run that follows it.
std::vector<FoldTerm> csh_fold(const std::vector<FoldTerm>& acc,
                               const std::vector<Slot>& next) {
  std::vector<FoldTerm> out;
  for (const FoldTerm& t : acc) {
    std::vector<std::vector<bool>> tags;
    interleavings(t.slots.size(), next.size(), tags);
    for (const auto& tag : tags) {
      std::vector<Slot> merged;
      merged.reserve(tag.size());
      size_t ia = 0, ib = 0;
      for (bool fromb : tag)
        merged.push_back(fromb ? next[ib++] : t.slots[ia++]);
      // block boundaries: positions where the source tag changes
      size_t pos = 0;
      while (pos < tag.size()) {
        size_t end = pos;
        while (end + 1 < tag.size() && tag[end + 1] == tag[pos]) ++end;
        if (end + 1 < tag.size()) {
          const LinearForm& gain = merged[end + 1].factors.front().form;
          for (size_t k = pos; k <= end; ++k) merged[k].factors.front().form += gain;
        }
        pos = end + 1;
      }
      out.push_back({std::move(merged)});
    }
  }
  return out;
}

// Quasi-shuffle of slot lists; fusing concatenates factor lists and
// multiplies signs.
void cst_fold_rec(const std::vector<Slot>& a, size_t ia, const std::vector<Slot>& b,
                  size_t ib, std::vector<Slot>& cur, std::vector<FoldTerm>& out) {
  if (ia == a.size() && ib == b.size()) {
    out.push_back({cur});
    return;
  }
  if (ia < a.size()) {
    cur.push_back(a[ia]);
    cst_fold_rec(a, ia + 1, b, ib, cur, out);
    cur.pop_back();
  }
  if (ib < b.size()) {
    cur.push_back(b[ib]);
    cst_fold_rec(a, ia, b, ib + 1, cur, out);
    cur.pop_back();
  }
  if (ia < a.size() && ib < b.size()) {
    Slot fused = a[ia];
    fused.factors.insert(fused.factors.end(), b[ib].factors.begin(), b[ib].factors.end());
    fused.sign *= b[ib].sign;
    cur.push_back(std::move(fused));
    cst_fold_rec(a, ia + 1, b, ib + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<Slot> group_slots(const std::vector<FGroup>& groups, size_t g, size_t nvars,
                              size_t offset, bool p_domain) {
  const FGroup& grp = groups[g];
  SignVector signs = p_domain ? p_map(grp.signs) : grp.signs;
  std::vector<Slot> slots(grp.depth());
  for (size_t i = 0; i < grp.depth(); ++i) {
    slots[i].factors.push_back({LinearForm::unit(nvars, offset + i), 0, Poly1{}});
    slots[i].sign = signs[i];
  }
  return slots;
}

size_t total_vars(const std::vector<FGroup>& groups) {
  size_t n = 0;
  for (const auto& g : groups) n += g.depth();
  return n;
}

GenSide expand(const std::vector<FGroup>& groups, bool shuffle_side) {
  if (groups.empty()) throw std::invalid_argument("empty F-invocation");
  for (const auto& g : groups) {
    if (g.depth() == 0) throw std::invalid_argument("empty group in F-invocation");
    if (g.point.size() != g.depth())
      throw std::invalid_argument("group point/signs length mismatch");
  }
  const size_t nvars = total_vars(groups);
  GenSide side;
  side.flavor = shuffle_side ? GenSide::kSh : GenSide::kStar;
  side.nvars = nvars;

  std::vector<FoldTerm> acc = {
      FoldTerm{group_slots(groups, 0, nvars, 0, shuffle_side)}};
  size_t offset = groups[0].depth();
  for (size_t g = 1; g < groups.size(); ++g) {
    std::vector<Slot> next = group_slots(groups, g, nvars, offset, shuffle_side);
    if (shuffle_side) {
      acc = csh_fold(acc, next);
    } else {
      std::vector<FoldTerm> out;
      for (const FoldTerm& t : acc) {
        std::vector<Slot> cur;
        cst_fold_rec(t.slots, 0, next, 0, cur, out);
      }
      acc = std::move(out);
    }
    offset += groups[g].depth();
  }
  side.terms.reserve(acc.size());
  for (auto& t : acc) side.terms.push_back({Rational(1), std::move(t.slots)});
  return side;
}

}  // namespace

GenSide csh_expand(const std::vector<FGroup>& groups) { return expand(groups, true); }
GenSide cst_expand(const std::vector<FGroup>& groups) { return expand(groups, false); }

GenSide differentiate(const GenSide& side, int var) {
  if (var < 1 || static_cast<size_t>(var) > side.nvars)
    throw std::invalid_argument("derivative variable out of range");
  const size_t v = static_cast<size_t>(var - 1);
  GenSide out;
  out.flavor = side.flavor;
  out.nvars = side.nvars;
  for (const CompTerm& t : side.terms) {
    for (size_t si = 0; si < t.slots.size(); ++si) {
      for (size_t fi = 0; fi < t.slots[si].factors.size(); ++fi) {
        const SlotFactor& f = t.slots[si].factors[fi];
        long c = f.form.coeffs[v];
        if (c == 0) continue;
        CompTerm nt = t;
        SlotFactor& nf = nt.slots[si].factors[fi];
        nf.poly.mul_linear(1 + nf.shift, Rational(c));  // factor (a - 1 - shift)
        nf.shift += 1;
        out.terms.push_back(std::move(nt));
      }
    }
  }
  return out;
}

namespace {

// Scalar contribution of one factor at sub-exponent a, or nullopt-like
// "skip" signalled through ok=false.
bool factor_value(const SlotFactor& f, const std::vector<long>& point, long a,
                  Rational& out) {
  Rational pv = f.poly.eval(a);
  if (pv == 0) return false;
  long e = a - 1 - f.shift;
  if (e < 0) return false;
  long v = f.form.eval(point);
  if (v == 0) {
    if (e > 0) return false;
    out = pv;
    return true;
  }
  out = pv * rat_pow(Rational(v), e);
  return true;
}

}  // namespace

TPoly instantiate(const GenSide& side, const std::vector<long>& point, int w) {
  if (point.size() != side.nvars)
    throw std::invalid_argument("instantiation point has wrong arity");
  TPoly total;
  for (const CompTerm& t : side.terms) {
    const size_t nslots = t.slots.size();
    if (w < static_cast<int>(nslots)) continue;
    std::vector<int> parts(nslots, 0);
    std::function<void(size_t, int, const Rational&)> rec = [&](size_t si, int rem,
                                                                const Rational& scalar) {
      if (si == nslots) {
        if (rem != 0) return;
        SignVector xi(nslots);
        for (size_t i = 0; i < nslots; ++i) xi[i] = static_cast<int8_t>(t.slots[i].sign);
        SignVector sym_signs = (side.flavor == GenSide::kSh) ? q_map(xi) : xi;
        Index u(parts, sym_signs);
        TPoly red =
            (side.flavor == GenSide::kSh) ? shuffle_regularize(u) : star_regularize(u);
        total += red * (t.coef * scalar);
        return;
      }
      const Slot& slot = t.slots[si];
      int min_rest = 0;
      for (size_t sj = si + 1; sj < nslots; ++sj)
        min_rest += static_cast<int>(t.slots[sj].factors.size());
      // distribute the slot total over its factors
      std::function<void(size_t, int, const Rational&)> frec =
          [&](size_t fi, int used, const Rational& fscalar) {
            if (fi == slot.factors.size()) {
              if (slot.fixed_value > 0 && used != slot.fixed_value) return;
              parts[si] = used;
              rec(si + 1, rem - used, fscalar);
              return;
            }
            int remaining_here = rem - used - min_rest;
            int min_tail = static_cast<int>(slot.factors.size() - fi - 1);
            for (int a = 1; a + min_tail <= remaining_here; ++a) {
              Rational fv;
              if (!factor_value(slot.factors[fi], point, a, fv)) continue;
              frec(fi + 1, used + a, fscalar * fv);
            }
          };
      frec(0, 0, scalar);
    };
    rec(0, w, Rational(1));
  }
  return total;
}

namespace {

// Modifying terms: the sum over composition tuples where some group's
// composition starts (1,1) with (+,+) signs, of the product of that tuple's
// per-group regularized values times the evaluated monomial.
TPoly delta_terms(const std::vector<FGroup>& groups, GenSide::Flavor flavor,
                  const std::vector<int>& shifts, const std::vector<long>& point, int w) {
  const size_t ngroups = groups.size();
  std::vector<std::vector<int>> comps(ngroups);
  TPoly total;

  std::function<void(size_t, int, const Rational&)> rec = [&](size_t g, int rem,
                                                              const Rational& scalar) {
    if (g == ngroups) {
      if (rem != 0) return;
      bool delta = false;
      for (size_t gg = 0; gg < ngroups && !delta; ++gg) {
        const auto& c = comps[gg];
        if (c.size() >= 2 && c[0] == 1 && c[1] == 1 && groups[gg].signs[0] == 1 &&
            groups[gg].signs[1] == 1)
          delta = true;
      }
      if (!delta) return;
      TPoly prod = TPoly(IndexComb(Index()));
      for (size_t gg = 0; gg < ngroups; ++gg) {
        Index u(comps[gg], groups[gg].signs);
        TPoly red = (flavor == GenSide::kSh) ? shuffle_regularize(u) : star_regularize(u);
        prod = mul(prod, red);
      }
      total += prod * scalar;
      return;
    }
    const FGroup& grp = groups[g];
    const int dg = static_cast<int>(grp.depth());
    size_t var_off = 0;
    for (size_t gg = 0; gg < g; ++gg) var_off += groups[gg].depth();
    int min_rest = 0;
    for (size_t gg = g + 1; gg < ngroups; ++gg)
      min_rest += static_cast<int>(groups[gg].depth());
    comps[g].assign(dg, 0);
    std::function<void(int, int, const Rational&)> crec = [&](int i, int used,
                                                              const Rational& cs) {
      if (i == dg) {
        rec(g + 1, rem - used, cs);
        return;
      }
      int budget = rem - used - min_rest - (dg - i - 1);
      for (int a = 1; a <= budget; ++a) {
        int shift = shifts[var_off + i];
        // falling factorial (a-1)(a-2)...(a-shift) from the derivatives
        Rational ff(1);
        for (int h = 1; h <= shift; ++h) ff *= Rational(a - h);
        if (ff == 0) continue;
        long e = a - 1 - shift;
        if (e < 0) continue;
        long pv = point[var_off + i];
        Rational fv;
        if (pv == 0) {
          if (e > 0) continue;
          fv = ff;
        } else {
          fv = ff * rat_pow(Rational(pv), e);
        }
        comps[g][i] = a;
        crec(i + 1, used + a, cs * fv);
      }
      comps[g][i] = 0;
    };
    crec(0, 0, scalar);
  };
  rec(0, w, Rational(1));
  return total;
}

}  // namespace

TPoly f_identity(const FInvocation& inv, int w) {
  int total_depth = 0;
  for (const auto& g : inv.groups) total_depth += static_cast<int>(g.depth());
  if (w <= total_depth) throw std::invalid_argument("weight below threshold");

  GenSide sh = csh_expand(inv.groups);
  GenSide st = cst_expand(inv.groups);
  std::vector<int> shifts(sh.nvars, 0);
  for (int j : inv.derivs) {
    sh = differentiate(sh, j);
    st = differentiate(st, j);
    if (j < 1 || static_cast<size_t>(j) > shifts.size())
      throw std::invalid_argument("derivative variable out of range");
    shifts[j - 1] += 1;
  }
  std::vector<long> point;
  for (const auto& g : inv.groups)
    point.insert(point.end(), g.point.begin(), g.point.end());

  TPoly sh_side = instantiate(sh, point, w) - delta_terms(inv.groups, GenSide::kSh, shifts, point, w);
  TPoly st_side = instantiate(st, point, w) - delta_terms(inv.groups, GenSide::kStar, shifts, point, w);
  return sh_side - st_side;
}

}  // namespace esum
