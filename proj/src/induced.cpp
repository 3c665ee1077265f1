#include "rnms/induced.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "rnms/errors.hpp"
#include "rnms/legality.hpp"
#include "rnms/random_source.hpp"
#include "rnms/substitution.hpp"

namespace rnms {
namespace {

std::size_t realization_count(int m, const Word& w, std::size_t cap) {
  std::size_t count = 1;
  for (char c : w) {
    if (c != 'a') continue;
    if (count > cap / std::size_t(m + 1)) {
      throw ResourceError("word " + w + " has more than " + std::to_string(cap) + " realizations");
    }
    count *= std::size_t(m + 1);
  }
  return count;
}

// Calls visit(realization, choices) for every realization of zeta_m(w); choices[j] is the
// rule index used for the j-th `a` of w.
template <typename Visit>
void for_each_realization(int m, const Word& w, const std::vector<Word>& a_images, Visit&& visit) {
  std::vector<int> choices;
  Word buffer;
  auto recurse = [&](auto&& self, std::size_t pos) -> void {
    if (pos == w.size()) {
      visit(static_cast<const Word&>(buffer), static_cast<const std::vector<int>&>(choices));
      return;
    }
    const std::size_t mark = buffer.size();
    if (w[pos] == 'b') {
      buffer += 'a';
      self(self, pos + 1);
    } else {
      for (int i = 0; i <= m; ++i) {
        buffer += a_images[std::size_t(i)];
        choices.push_back(i);
        self(self, pos + 1);
        choices.pop_back();
        buffer.resize(mark);
      }
    }
    buffer.resize(mark);
  };
  recurse(recurse, 0);
}

std::vector<Word> a_images_for(int m) {
  std::vector<Word> images;
  for (int i = 0; i <= m; ++i) images.push_back(rule_image_of_a(m, i));
  return images;
}

std::size_t first_image_length(int m, const Word& w) { return w[0] == 'a' ? std::size_t(m) + 1 : 1; }

std::size_t index_of(const std::vector<Word>& words, const std::string& v) {
  auto it = std::lower_bound(words.begin(), words.end(), v);
  if (it == words.end() || *it != v) {
    throw NumericError("induced window " + v + " is not a legal word");
  }
  return std::size_t(it - words.begin());
}

void check_induced_args(int m, int ell, const ProbabilityVector& probs) {
  if (ell < 1) throw ParameterError("word length must be positive");
  probs.validate(m, /*strict=*/true);
}

}  // namespace

InducedSubstitution induced_substitution(int m, int ell, const ProbabilityVector& probs,
                                         std::size_t max_realizations) {
  check_induced_args(m, ell, probs);
  InducedSubstitution out;
  out.m = m;
  out.ell = ell;
  out.probs = probs;
  out.words = legal_words(m, ell);
  out.images.resize(out.words.size());

  const auto a_images = a_images_for(m);
  const std::size_t len = std::size_t(ell);
  for (std::size_t s = 0; s < out.words.size(); ++s) {
    const Word& w = out.words[s];
    realization_count(m, w, max_realizations);
    const std::size_t n_windows = first_image_length(m, w);
    for_each_realization(m, w, a_images, [&](const Word& v, const std::vector<int>& choices) {
      InducedImage image;
      image.realization = v;
      image.probability = 1.0;
      for (int c : choices) image.probability *= probs[std::size_t(c)];
      for (std::size_t k = 0; k < n_windows; ++k) image.windows.push_back(index_of(out.words, v.substr(k, len)));
      out.images[s].push_back(std::move(image));
    });
  }
  return out;
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> induced_matrix(int m, int ell,
                                                                     const ProbabilityVector& probs) {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (ell == 1) {
    probs.validate(m);
    return substitution_matrix(m).cast<Scalar>();
  }
  check_induced_args(m, ell, probs);

  const auto& words = legal_words(m, ell);
  const auto a_images = a_images_for(m);
  const std::size_t len = std::size_t(ell);
  Matrix M = Matrix::Zero(Eigen::Index(words.size()), Eigen::Index(words.size()));
  for (std::size_t s = 0; s < words.size(); ++s) {
    const Word& w = words[s];
    realization_count(m, w, 1'000'000);
    const std::size_t n_windows = first_image_length(m, w);
    for_each_realization(m, w, a_images, [&](const Word& v, const std::vector<int>& choices) {
      Scalar p(1);
      for (int c : choices) p *= Scalar(probs[std::size_t(c)]);
      for (std::size_t k = 0; k < n_windows; ++k) {
        M(Eigen::Index(index_of(words, v.substr(k, len))), Eigen::Index(s)) += p;
      }
    });
  }
  return M;
}

template Eigen::MatrixXd induced_matrix<double>(int, int, const ProbabilityVector&);
template Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> induced_matrix<long double>(
    int, int, const ProbabilityVector&);

Eigen::VectorXd expected_windows(const InducedSubstitution& induced, std::size_t source) {
  Eigen::VectorXd counts = Eigen::VectorXd::Zero(Eigen::Index(induced.words.size()));
  for (const InducedImage& image : induced.images.at(source)) {
    for (std::size_t idx : image.windows) counts(Eigen::Index(idx)) += image.probability;
  }
  return counts;
}

template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1> matrix_spectrum(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& M) {
  if (M.rows() != M.cols()) throw ParameterError("spectrum needs a square matrix");
  Eigen::EigenSolver<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> solver(M, false);
  if (solver.info() != Eigen::Success) throw NumericError("eigenvalue iteration did not converge");
  return solver.eigenvalues();
}

template Eigen::VectorXcd matrix_spectrum<double>(const Eigen::MatrixXd&);
template Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, 1> matrix_spectrum<long double>(
    const Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>&);

double FrequencyVector::operator()(const Word& v) const {
  auto it = std::lower_bound(words.begin(), words.end(), v);
  if (it == words.end() || *it != v) return 0.0;
  return values(it - words.begin());
}

FrequencyVector pf_frequencies(const Eigen::MatrixXd& M, const std::vector<Word>& words, int m,
                               double tol, const PowerIterationOptions& options) {
  if (M.rows() != M.cols() || std::size_t(M.rows()) != words.size()) {
    throw ParameterError("matrix dimension does not match the word index");
  }
  if ((M.array() < 0.0).any()) throw ParameterError("Perron-Frobenius iteration needs a nonnegative matrix");
  const NobleMeans<double> nm(m);

  const Eigen::Index n = M.rows();
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / double(n));
  FrequencyVector out;
  out.words = words;
  for (int it = 1; it <= options.max_iterations; ++it) {
    Eigen::VectorXd y = M * x;
    const double eigenvalue = y.sum();  // x sums to one
    y /= eigenvalue;
    const double residual = (M * y - eigenvalue * y).lpNorm<Eigen::Infinity>() /
                            (eigenvalue * y.lpNorm<Eigen::Infinity>());
    x = std::move(y);
    if (residual <= options.residual_tolerance) {
      out.values = x;
      out.eigenvalue = eigenvalue;
      out.iterations = it;
      if (std::abs(eigenvalue - nm.lambda) > tol) {
        throw NumericError("Perron eigenvalue " + std::to_string(eigenvalue) + " differs from lambda_" +
                           std::to_string(m) + " = " + std::to_string(nm.lambda));
      }
      if ((x.array() <= 0.0).any()) throw NumericError("Perron vector is not strictly positive");
      return out;
    }
  }
  throw NumericError("power iteration did not converge within " + std::to_string(options.max_iterations) +
                     " iterations");
}

FrequencyVector word_frequencies(int m, int ell, const ProbabilityVector& probs, double tol) {
  if (ell >= 2) probs.validate(m, /*strict=*/true);
  std::vector<Word> words = ell == 1 ? std::vector<Word>{"a", "b"} : legal_words(m, ell);
  return pf_frequencies(induced_matrix<double>(m, ell, probs), words, m, tol);
}

double cylinder_measure(int m, const ProbabilityVector& probs, const Word& v) {
  if (v.empty()) return 1.0;
  probs.validate(m, /*strict=*/true);
  if (!is_legal(m, v)) return 0.0;
  return word_frequencies(m, int(v.size()), probs)(v);
}

std::map<Word, double> empirical_frequencies(int m, const ProbabilityVector& probs, int ell,
                                             std::size_t letters, std::uint64_t seed, std::size_t offset) {
  probs.validate(m, /*strict=*/true);
  if (ell < 1 || ell > 62) throw ParameterError("window length must lie in [1, 62]");
  if (letters < std::size_t(ell)) throw ParameterError("need at least ell letters");
  RandomSource rng(seed);
  const Word w = grow_random(m, probs, "a", letters, rng);
  const std::size_t len = std::size_t(ell);
  if (offset + len > w.size()) throw ParameterError("offset leaves no complete window");

  // Windows as bit codes (a = 0, b = 1), most significant bit first.
  const std::uint64_t mask = (std::uint64_t(1) << len) - 1;
  std::unordered_map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t code = 0;
  for (std::size_t i = offset; i < w.size(); ++i) {
    code = ((code << 1) | (w[i] == 'b' ? 1u : 0u)) & mask;
    if (i + 1 >= offset + len) ++counts[code];
  }
  const double total = double(w.size() - offset - len + 1);
  std::map<Word, double> out;
  for (const auto& [c, n] : counts) {
    Word v(len, 'a');
    for (std::size_t j = 0; j < len; ++j) {
      if ((c >> (len - 1 - j)) & 1u) v[j] = 'b';
    }
    out.emplace(std::move(v), double(n) / total);
  }
  return out;
}

}  // namespace rnms
