#ifndef RNMS_LEGALITY_HPP
#define RNMS_LEGALITY_HPP

#include <cstddef>
#include <vector>

#include "rnms/alphabet.hpp"

namespace rnms {

struct LegalityLimits {
  /// Refuse closures whose word set would grow beyond this many words.
  std::size_t max_words = 2'000'000;
};

/// D_{m,ell}: all legal words of length `ell` in lexicographic order (a < b).
///
/// Legality does not depend on the probabilities as long as all of them are positive, so
/// no probability vector is taken. Results are memoized per (m, ell); the function is safe
/// to call concurrently.
const std::vector<Word>& legal_words(int m, int ell, const LegalityLimits& limits = {});

/// True iff `w` is a subword of some realization of zeta_m^k(a) for some k.
/// The empty word is legal.
bool is_legal(int m, const Word& w, const LegalityLimits& limits = {});

/// Position of `w` in legal_words(m, |w|), or -1 if `w` is illegal.
std::ptrdiff_t legal_index(int m, const Word& w);

}  // namespace rnms

#endif  // RNMS_LEGALITY_HPP
