#include "rnms/substitution.hpp"

#include <numeric>

namespace rnms {

ProbabilityVector ProbabilityVector::uniform(int m) {
  if (m < 1) throw ParameterError("m must be a positive integer");
  return ProbabilityVector(std::vector<double>(static_cast<std::size_t>(m) + 1, 1.0 / (m + 1)));
}

ProbabilityVector ProbabilityVector::indicator(int m, int i) {
  if (m < 1 || i < 0 || i > m) throw ParameterError("indicator index out of range");
  std::vector<double> p(static_cast<std::size_t>(m) + 1, 0.0);
  p[static_cast<std::size_t>(i)] = 1.0;
  return ProbabilityVector(std::move(p));
}

void ProbabilityVector::validate(int m, bool strict) const {
  if (m < 1) throw ParameterError("m must be a positive integer");
  if (p_.size() != static_cast<std::size_t>(m) + 1) {
    throw ParameterError("probability vector needs " + std::to_string(m + 1) + " entries, got " +
                         std::to_string(p_.size()));
  }
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (!(p_[i] >= 0.0) || !std::isfinite(p_[i])) {
      throw ParameterError("probability p_" + std::to_string(i) + " is negative or not finite");
    }
    if (strict && !(p_[i] > 0.0)) {
      throw ParameterError("probability p_" + std::to_string(i) + " must be strictly positive");
    }
  }
  const double sum = std::accumulate(p_.begin(), p_.end(), 0.0);
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw ParameterError("probabilities sum to " + std::to_string(sum) + ", not 1");
  }
}

bool ProbabilityVector::is_strict() const noexcept {
  for (double x : p_) {
    if (!(x > 0.0)) return false;
  }
  return !p_.empty();
}

ProbabilityVector ProbabilityVector::reflected() const {
  return ProbabilityVector(std::vector<double>(p_.rbegin(), p_.rend()));
}

Word rule_image_of_a(int m, int i) {
  if (m < 1) throw ParameterError("m must be a positive integer");
  if (i < 0 || i > m) {
    throw ParameterError("rule index i=" + std::to_string(i) + " outside [0," + std::to_string(m) + "]");
  }
  Word img(static_cast<std::size_t>(m) + 1, 'a');
  img[static_cast<std::size_t>(i)] = 'b';
  return img;
}

Word deterministic_substitute(int m, int i, const Word& w) {
  const Word img = rule_image_of_a(m, i);
  Word out;
  out.reserve(w.size() * img.size());
  for (char c : w) {
    if (c == 'a') {
      out += img;
    } else if (c == 'b') {
      out += 'a';
    } else {
      throw ParameterError("word contains a letter other than a, b");
    }
  }
  return out;
}

int sample_rule(const ProbabilityVector& probs, RandomSource& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  int last_positive = 0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) last_positive = static_cast<int>(i);
    cumulative += probs[i];
    if (u < cumulative) return static_cast<int>(i);
  }
  // Only reachable when the partial sums round to slightly below 1.
  return last_positive;
}

Word random_substitute(int m, const ProbabilityVector& probs, const Word& w, RandomSource& rng) {
  probs.validate(m);
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) images.push_back(rule_image_of_a(m, i));

  Word out;
  out.reserve(w.size() * static_cast<std::size_t>(m + 1));
  for (char c : w) {
    if (c == 'a') {
      out += images[static_cast<std::size_t>(sample_rule(probs, rng))];
    } else if (c == 'b') {
      out += 'a';
    } else {
      throw ParameterError("word contains a letter other than a, b");
    }
  }
  return out;
}

Word iterate_random(int m, const ProbabilityVector& probs, const Word& seed_word, int k,
                    RandomSource& rng) {
  if (k < 0) throw ParameterError("iteration count must be nonnegative");
  probs.validate(m);
  Word w = parse_word(seed_word);
  for (int step = 0; step < k; ++step) w = random_substitute(m, probs, w, rng);
  return w;
}

Word grow_random(int m, const ProbabilityVector& probs, const Word& seed_word,
                 std::size_t min_length, RandomSource& rng) {
  probs.validate(m);
  Word w = parse_word(seed_word);
  if (w.empty()) throw ParameterError("cannot grow the empty word");
  while (w.size() < min_length) w = random_substitute(m, probs, w, rng);
  return w;
}

Eigen::Matrix2i substitution_matrix(int m) {
  if (m < 1) throw ParameterError("m must be a positive integer");
  Eigen::Matrix2i M;
  M << m, 1, 1, 0;
  return M;
}

}  // namespace rnms
