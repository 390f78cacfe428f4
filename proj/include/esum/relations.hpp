#ifndef ESUM_RELATIONS_HPP
#define ESUM_RELATIONS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "esum/tpoly.hpp"

namespace esum {

enum class SignLevel { kMzvOnly, kFullEuler };

struct RelationRow {
  IndexComb comb;          // homogeneous of the set's weight, admissible symbols
  std::string provenance;  // generator word or pair, plus T-degree
};

struct RelationSet {
  int weight = 0;
  int depth_cap = 0;
  SignLevel sign_level = SignLevel::kMzvOnly;
  std::vector<RelationRow> rows;

  std::string to_json() const;
  static RelationSet from_json(const std::string& text);
};

// Rows are the per-T-degree regularization defects of every non-admissible
// word of weight w together with the product relations
// sh(u shuffle v) - rho(star(u stuffle v)) over pairs with v admissible.
// Rows containing symbols deeper than depth_cap are dropped.
RelationSet generate_relations(int w, int depth_cap, SignLevel level);

struct Certificate {
  // row index -> rational coefficient; candidate == sum coeff * row
  std::map<int, Rational> combination;
};

// Exact Gaussian elimination over Q with combination tracking.
std::optional<Certificate> verify_in_span(const IndexComb& candidate, const RelationSet& rels);

// Recombine a certificate; used to check certificates exactly.
IndexComb recombine(const Certificate& cert, const RelationSet& rels);

// Solve candidate == sum_i c_i allowed_i modulo the row span, exactly.
std::optional<std::vector<Rational>> express_in_terms(const IndexComb& candidate,
                                                      const std::vector<Index>& allowed,
                                                      const RelationSet& rels);

// Rank of the row space (used by tests and reports).
int span_rank(const RelationSet& rels);

// All words of the given weight at a sign level, canonically ordered.
std::vector<Index> enumerate_words(int w, SignLevel level);

}  // namespace esum

#endif
