#ifndef RNMS_ENTROPY_HPP
#define RNMS_ENTROPY_HPP

#include <cstdint>
#include <vector>

#include "rnms/alphabet.hpp"

namespace rnms {

/// Word lengths of the generation sets: l_0 = 0, l_1 = l_2 = 1, l_{n+1} = m l_n + l_{n-1}.
std::vector<std::uint64_t> generation_lengths(int m, int n_max);

struct GenerationLimits {
  /// Largest generation set, in letters, that may be held in memory.
  double max_stored_letters = 1e8;
  /// Largest number of letters that a streaming count may generate and inspect.
  double max_streamed_letters = 4e9;
};

/// G_n: all exact realizations of zeta_m^{n-1}(b), sorted.
struct GenerationSet {
  int level = 0;
  std::size_t word_length = 0;
  std::vector<Word> words;
};

/// Builds G_n from G_1 = {b}, G_2 = {a} and
///   G_n = union_i  G_{n-1}^i G_{n-2} G_{n-1}^{m-i}.
/// Levels are memoized per m. Throws ResourceError, naming the largest level that can be
/// held, when the projected size of G_n exceeds `limits.max_stored_letters`.
GenerationSet generation_set(int m, int n, const GenerationLimits& limits = {});

/// |G_n|. Uses the stored set when it fits; otherwise counts without materializing G_n
/// (inclusion-exclusion over the two splits for m = 1, a first-split streaming count for
/// m >= 2). Throws ResourceError naming the largest countable level when neither fits.
std::uint64_t generation_count(int m, int n, const GenerationLimits& limits = {});

/// Largest n for which generation_count(m, n, limits) succeeds.
int largest_countable_level(int m, const GenerationLimits& limits = {});

/// log|G_n| / l_n in nats, n >= 3.
double empirical_entropy(int m, int n, const GenerationLimits& limits = {});

struct EntropyResult {
  double value = 0.0;     // nats per letter
  int terms_used = 0;     // summands i = 2 .. terms_used + 1
  double tail_bound = 0;  // rigorous bound on the omitted tail
};

/// Topological entropy
///   h_m = (lambda - 1)/(1 - lambda') * sum_{i>=2} log(m(i-1)+1) / lambda^i,
/// summed until a bound on the remaining tail (log x <= sqrt x, geometric ratio) is < tol.
EntropyResult entropy_series(int m, double tol);

/// sum_{i=0}^{3} C(l,i) - m(m+1)(3l - 2m - 4)/6; only valid for m+3 <= l <= 2m+2.
std::uint64_t complexity_formula(int m, int ell);

/// |D_{m,l}| by exhaustive closure.
std::uint64_t complexity_exact(int m, int ell);

}  // namespace rnms

#endif  // RNMS_ENTROPY_HPP
