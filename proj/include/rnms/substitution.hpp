#ifndef RNMS_SUBSTITUTION_HPP
#define RNMS_SUBSTITUTION_HPP

#include <Eigen/Core>

#include "rnms/alphabet.hpp"
#include "rnms/noble_means.hpp"
#include "rnms/random_source.hpp"

namespace rnms {

/// zeta_{m,i}(a) = a^i b a^{m-i}.
Word rule_image_of_a(int m, int i);

/// Apply zeta_{m,i}: a -> a^i b a^{m-i}, b -> a.
Word deterministic_substitute(int m, int i, const Word& w);

/// Draw a rule index from `probs` using exactly one uniform draw.
int sample_rule(const ProbabilityVector& probs, RandomSource& rng);

/// One application of the random rule zeta_m: every `a` independently becomes
/// zeta_{m,i}(a) with probability p_i, one draw per `a` taken left to right; every `b`
/// becomes `a`.
Word random_substitute(int m, const ProbabilityVector& probs, const Word& w, RandomSource& rng);

/// k-fold application of random_substitute; k = 0 returns `seed_word`.
Word iterate_random(int m, const ProbabilityVector& probs, const Word& seed_word, int k,
                    RandomSource& rng);

/// Iterate from `seed_word` until the word has at least `min_length` letters.
Word grow_random(int m, const ProbabilityVector& probs, const Word& seed_word,
                 std::size_t min_length, RandomSource& rng);

/// [[m,1],[1,0]] in (a,b) order.
Eigen::Matrix2i substitution_matrix(int m);

}  // namespace rnms

#endif  // RNMS_SUBSTITUTION_HPP
