#ifndef ESUM_ALGEBRA_HPP
#define ESUM_ALGEBRA_HPP

#include "esum/index.hpp"
#include "esum/lincomb.hpp"
#include "esum/word.hpp"

namespace esum {

using IndexComb = LinComb<Index>;
using WordComb = LinComb<Word>;

// Quasi-shuffle expansion: interleave parts, with stuffed terms combining
// leading parts via oplus.  Total (including non-admissible inputs/outputs).
IndexComb stuffle(const Index& u, const Index& v);

// Standard shuffle of words: all order-preserving interleavings with
// multiplicity; term count with multiplicity is binom(|w1|+|w2|, |w1|).
WordComb shuffle_words(const Word& w1, const Word& w2);

// Shuffle on indexes through the word encoding.
IndexComb shuffle_indices(const Index& u, const Index& v);

// Bilinear extensions.
IndexComb stuffle(const IndexComb& a, const IndexComb& b);
IndexComb shuffle_indices(const IndexComb& a, const IndexComb& b);

IndexComb words_to_indices(const WordComb& wc);

}  // namespace esum

#endif
