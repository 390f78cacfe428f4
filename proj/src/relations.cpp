#include "esum/relations.hpp"

#include <algorithm>
#include <functional>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "esum/regularize.hpp"

namespace esum {

std::vector<Index> enumerate_words(int w, SignLevel level) {
  std::vector<Index> out;
  std::vector<int> entries;
  std::function<void(int)> rec = [&](int rem) {
    if (rem == 0) {
      out.push_back(Index(entries));
      return;
    }
    for (int part = 1; part <= rem; ++part) {
      entries.push_back(part);
      rec(rem - part);
      entries.pop_back();
      if (level == SignLevel::kFullEuler) {
        entries.push_back(-part);
        rec(rem - part);
        entries.pop_back();
      }
    }
  };
  rec(w);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

int max_depth(const IndexComb& c) {
  int d = 0;
  for (const auto& [u, _] : c.terms()) d = std::max<int>(d, static_cast<int>(u.depth()));
  return d;
}

// Only the T-degree-0 coefficient is homogeneous of the set's weight; the
// higher coefficients are lower-weight relations and belong to the sets of
// those weights.
void push_rows(RelationSet& set, const TPoly& poly, const std::string& provenance) {
  const IndexComb& c = poly.coeff(0);
  if (c.zero()) return;
  if (max_depth(c) > set.depth_cap) return;
  set.rows.push_back({c, provenance});
}

}  // namespace

RelationSet generate_relations(int w, int depth_cap, SignLevel level) {
  if (w < 2) throw std::invalid_argument("generate_relations requires weight >= 2");
  RelationSet set;
  set.weight = w;
  set.depth_cap = depth_cap > 0 ? depth_cap : w;
  set.sign_level = level;

  // regularization defects of every non-admissible word
  for (const Index& u : enumerate_words(w, level)) {
    if (u.admissible()) continue;
    TPoly defect = shuffle_regularize(u) - rho_apply(star_regularize(u));
    push_rows(set, defect, "defect " + u.str());
  }

  // product relations sh(u sh v) - rho(star(u * v)) with v admissible
  for (int w2 = 1; w2 < w; ++w2) {
    int w1 = w - w2;
    for (const Index& v : enumerate_words(w2, level)) {
      if (!v.admissible()) continue;
      for (const Index& u : enumerate_words(w1, level)) {
        if (u.admissible() && w1 > w2) continue;  // unordered admissible pairs once
        if (u.admissible() && w1 == w2 && v < u) continue;
        TPoly row = shuffle_regularize(shuffle_indices(u, v)) -
                    rho_apply(star_regularize(stuffle(u, v)));
        push_rows(set, row, "pair " + u.str() + " x " + v.str());
      }
    }
  }
  return set;
}

namespace {

// Gaussian elimination over Q with per-row combination tracking.
class SpanSolver {
 public:
  // Rows are reduced in order; reduced nonzero rows join the basis.
  void add_row(const IndexComb& row, int id) {
    IndexComb r = row;
    std::map<int, Rational> red;  // after reduce: r == row[id] - sum red * rows
    reduce(r, red);
    if (r.zero()) return;
    std::map<int, Rational> combo{{id, Rational(1)}};
    for (const auto& [rid, c] : red) {
      combo[rid] -= c;
      if (combo[rid] == 0) combo.erase(rid);
    }
    normalize(r, combo);
    basis_.push_back({std::move(r), std::move(combo)});
    pivot_[basis_.back().vec.terms().begin()->first] = basis_.size() - 1;
  }

  // Reduce v against the basis; combo receives the coefficients of the
  // original rows subtracted from v.
  void reduce(IndexComb& v, std::map<int, Rational>& combo) const {
    bool changed = true;
    while (changed && !v.zero()) {
      changed = false;
      const Index& lead = v.terms().begin()->first;
      auto it = pivot_.find(lead);
      if (it != pivot_.end()) {
        const BasisRow& b = basis_[it->second];
        Rational f = v.terms().begin()->second;  // basis rows are monic
        v -= b.vec * f;
        for (const auto& [rid, c] : b.combo) {
          auto jt = combo.find(rid);
          if (jt == combo.end()) {
            if (f * c != 0) combo[rid] = f * c;
          } else {
            jt->second += f * c;
            if (jt->second == 0) combo.erase(jt);
          }
        }
        changed = true;
      }
    }
  }

  size_t rank() const { return basis_.size(); }

 private:
  struct BasisRow {
    IndexComb vec;
    std::map<int, Rational> combo;
  };
  void normalize(IndexComb& r, std::map<int, Rational>& combo) {
    Rational lead = r.terms().begin()->second;
    r *= Rational(1) / lead;
    for (auto& [_, c] : combo) c /= lead;
  }
  std::vector<BasisRow> basis_;
  std::map<Index, size_t> pivot_;
};

SpanSolver build_solver(const RelationSet& rels) {
  SpanSolver solver;
  for (size_t i = 0; i < rels.rows.size(); ++i)
    solver.add_row(rels.rows[i].comb, static_cast<int>(i));
  return solver;
}

void check_homogeneous(const IndexComb& candidate, int weight) {
  for (const auto& [u, _] : candidate.terms())
    if (u.weight() != weight)
      throw std::invalid_argument("candidate weight mismatch with relation set");
}

}  // namespace

std::optional<Certificate> verify_in_span(const IndexComb& candidate,
                                          const RelationSet& rels) {
  check_homogeneous(candidate, rels.weight);
  SpanSolver solver = build_solver(rels);
  IndexComb v = candidate;
  std::map<int, Rational> combo;
  solver.reduce(v, combo);
  if (!v.zero()) return std::nullopt;
  Certificate cert;
  cert.combination = std::move(combo);
  return cert;
}

IndexComb recombine(const Certificate& cert, const RelationSet& rels) {
  IndexComb out;
  for (const auto& [rid, c] : cert.combination)
    out += rels.rows.at(static_cast<size_t>(rid)).comb * c;
  return out;
}

std::optional<std::vector<Rational>> express_in_terms(const IndexComb& candidate,
                                                      const std::vector<Index>& allowed,
                                                      const RelationSet& rels) {
  check_homogeneous(candidate, rels.weight);
  SpanSolver solver = build_solver(rels);

  // normal forms modulo the span
  auto normal_form = [&](const IndexComb& c) {
    IndexComb v = c;
    std::map<int, Rational> combo;
    solver.reduce(v, combo);
    return v;
  };
  IndexComb target = normal_form(candidate);
  SpanSolver inner;
  std::vector<IndexComb> nf;
  for (size_t i = 0; i < allowed.size(); ++i) {
    nf.push_back(normal_form(IndexComb(allowed[i])));
    inner.add_row(nf.back(), static_cast<int>(i));
  }
  std::map<int, Rational> combo;
  inner.reduce(target, combo);
  if (!target.zero()) return std::nullopt;
  std::vector<Rational> out(allowed.size(), Rational(0));
  for (const auto& [i, c] : combo) out[static_cast<size_t>(i)] = c;
  return out;
}

int span_rank(const RelationSet& rels) {
  return static_cast<int>(build_solver(rels).rank());
}

std::string RelationSet::to_json() const {
  nlohmann::json j;
  j["weight"] = weight;
  j["depthCap"] = depth_cap;
  j["signLevel"] = sign_level == SignLevel::kMzvOnly ? "mzv-only" : "full-euler";
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const auto& [u, c] : row.comb.terms()) {
      // bit-exact p/q form
      std::string frac = numerator(c).str() + "/" + denominator(c).str();
      r.push_back(nlohmann::json::array({u.key(), frac}));
    }
    rows_json.push_back(std::move(r));
  }
  j["rows"] = std::move(rows_json);
  return j.dump(2);
}

RelationSet RelationSet::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  RelationSet set;
  set.weight = j.at("weight").get<int>();
  set.depth_cap = j.at("depthCap").get<int>();
  set.sign_level = j.at("signLevel").get<std::string>() == "mzv-only" ? SignLevel::kMzvOnly
                                                                      : SignLevel::kFullEuler;
  for (const auto& r : j.at("rows")) {
    RelationRow row;
    for (const auto& term : r)
      row.comb.add(Index::from_key(term.at(0).get<std::string>()),
                   parse_rational(term.at(1).get<std::string>()));
    set.rows.push_back(std::move(row));
  }
  return set;
}

}  // namespace esum
