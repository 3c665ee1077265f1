#ifndef RNMS_INDUCED_HPP
#define RNMS_INDUCED_HPP

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Core>

#include "rnms/alphabet.hpp"
#include "rnms/noble_means.hpp"

namespace rnms {

/// One realization v of zeta_m(w) together with the sliding ell-windows it contributes.
struct InducedImage {
  Word realization;
  std::vector<std::size_t> windows;  // indices into InducedSubstitution::words
  double probability = 0.0;
};

/// The induced substitution on legal ell-words: a source word w maps to the windows
/// v_{[k, k+ell-1]}, 0 <= k < |zeta_m(w_0)|, of each realization v of zeta_m(w).
struct InducedSubstitution {
  int m = 0;
  int ell = 0;
  ProbabilityVector probs;
  std::vector<Word> words;                         // D_{m,ell}, lexicographic
  std::vector<std::vector<InducedImage>> images;   // per source word, in enumeration order
};

/// Enumerates all (m+1)^{#a(w)} realizations of every legal w. Requires strict probabilities
/// and ell >= 1; throws ResourceError when one word has more than `max_realizations`.
InducedSubstitution induced_substitution(int m, int ell, const ProbabilityVector& probs,
                                         std::size_t max_realizations = 1'000'000);

/// Substitution matrix of the induced substitution, indexed by D_{m,ell} in lexicographic
/// order: entry (v, w) is the expected number of windows equal to v produced from w.
/// ell = 1 returns [[m,1],[1,0]] for any valid probabilities.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> induced_matrix(int m, int ell,
                                                                     const ProbabilityVector& probs);

/// Expected window counts of one source word, summed over its realizations.
Eigen::VectorXd expected_windows(const InducedSubstitution& induced, std::size_t source);

/// Eigenvalues with multiplicity (Eigen's real Schur based solver).
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> matrix_spectrum(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& M);

/// Normalized Perron-Frobenius right eigenvector: word frequencies phi^{(ell)}.
struct FrequencyVector {
  std::vector<Word> words;
  Eigen::VectorXd values;  // positive, sums to 1
  double eigenvalue = 0.0;
  int iterations = 0;

  /// phi(v); 0 for words not in the index set.
  double operator()(const Word& v) const;
};

struct PowerIterationOptions {
  double residual_tolerance = 1e-12;
  int max_iterations = 100'000;
};

/// Power iteration on a primitive nonnegative matrix. Throws NumericError on
/// non-convergence or when the Perron eigenvalue differs from lambda_m by more than `tol`.
FrequencyVector pf_frequencies(const Eigen::MatrixXd& M, const std::vector<Word>& words, int m,
                               double tol = 1e-9, const PowerIterationOptions& options = {});

/// pf_frequencies of induced_matrix(m, ell, probs).
FrequencyVector word_frequencies(int m, int ell, const ProbabilityVector& probs, double tol = 1e-9);

/// mu(Z_k(v)) = phi^{(|v|)}(v); zero for illegal v.
double cylinder_measure(int m, const ProbabilityVector& probs, const Word& v);

/// Sliding-window frequencies of all ell-words in one realization grown from `a` by
/// iterate_random to at least `letters` letters. Windows start at positions >= `offset`.
std::map<Word, double> empirical_frequencies(int m, const ProbabilityVector& probs, int ell,
                                             std::size_t letters, std::uint64_t seed,
                                             std::size_t offset = 0);

}  // namespace rnms

#endif  // RNMS_INDUCED_HPP
