#include <doctest.h>

#include <algorithm>

#include "oracles/oracles.hpp"
#include "rnms/errors.hpp"
#include "rnms/induced.hpp"
#include "rnms/legality.hpp"
#include "rnms/random_source.hpp"

using namespace rnms;

namespace {

ProbabilityVector random_probs(int m, RandomSource& rng) {
  std::vector<double> p(std::size_t(m) + 1);
  double sum = 0.0;
  for (auto& x : p) sum += (x = 0.05 + rng.uniform());
  for (auto& x : p) x /= sum;
  return ProbabilityVector(std::move(p));
}

// Sorted by real part, then imaginary part.
std::vector<std::complex<double>> sorted(const Eigen::VectorXcd& v) {
  std::vector<std::complex<double>> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end(), [](auto a, auto b) { return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag(); });
  return out;
}

const InducedImage* find_image(const InducedSubstitution& s, const Word& source, const Word& realization) {
  const auto it = std::find(s.words.begin(), s.words.end(), source);
  for (const auto& img : s.images[std::size_t(it - s.words.begin())]) {
    if (img.realization == realization) return &img;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("induced substitution rows for m = 1, l = 2") {
  const ProbabilityVector p{0.3, 0.7};
  const auto s = induced_substitution(1, 2, p);
  REQUIRE(s.words == std::vector<Word>{"aa", "ab", "ba", "bb"});
  const auto* abab = find_image(s, "aa", "abab");
  REQUIRE(abab);
  CHECK(abab->windows == std::vector<std::size_t>{1, 2});
  CHECK(abab->probability == doctest::Approx(0.49));
  const auto* bb = find_image(s, "bb", "aa");
  REQUIRE(bb);
  CHECK(bb->windows == std::vector<std::size_t>{0});
  CHECK(bb->probability == 1.0);
  const auto* aba = find_image(s, "ba", "aba");
  REQUIRE(aba);
  CHECK(aba->windows == std::vector<std::size_t>{1});
  CHECK(aba->probability == doctest::Approx(0.3));
  CHECK(s.images[0].size() == 4);
  CHECK(s.images[3].size() == 1);
}

TEST_CASE("induced substitution invariants") {
  RandomSource rng(3);
  for (int m = 1; m <= 3; ++m) {
    for (int ell = 2; ell <= 4; ++ell) {
      const auto p = random_probs(m, rng);
      const auto s = induced_substitution(m, ell, p);
      const auto M = induced_matrix<double>(m, ell, p);
      for (std::size_t w = 0; w < s.words.size(); ++w) {
        double total = 0.0;
        for (const auto& img : s.images[w]) {
          total += img.probability;
          CHECK(img.windows.size() == (s.words[w][0] == 'a' ? std::size_t(m) + 1 : 1));
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((expected_windows(s, w) - M.col(Eigen::Index(w))).cwiseAbs().maxCoeff() < 1e-14);
        CHECK(M.col(Eigen::Index(w)).sum() == doctest::Approx(s.words[w][0] == 'a' ? m + 1 : 1));
      }
    }
  }
  CHECK_THROWS_AS(induced_substitution(1, 2, {1.0, 0.0}), ParameterError);
}

TEST_CASE("M_{m,2} equals the explicit matrix") {
  RandomSource rng(4);
  for (int m = 1; m <= 5; ++m) {
    for (int t = 0; t < 3; ++t) {
      const auto p = random_probs(m, rng);
      const Eigen::MatrixXd M = induced_matrix<double>(m, 2, p);
      CHECK((M - oracle::induced_matrix_m2(m, p[0], p[std::size_t(m)])).cwiseAbs().maxCoeff() < 1e-14);
    }
  }
  Eigen::Matrix4d half;
  half << 0.25, 0.5, 0.5, 1, 0.75, 0.5, 0.5, 0, 0.75, 1, 0, 0, 0.25, 0, 0, 0;
  CHECK((induced_matrix<double>(1, 2, {0.5, 0.5}) - half).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("l = 1 gives the substitution matrix") {
  for (int m = 1; m <= 4; ++m) {
    const Eigen::MatrixXd M = induced_matrix<double>(m, 1, ProbabilityVector::indicator(m, 0));
    CHECK(M(0, 0) == m);
    CHECK(M(0, 1) == 1);
    CHECK(M(1, 0) == 1);
    CHECK(M(1, 1) == 0);
  }
}

TEST_CASE("spectra") {
  const auto ev = sorted(matrix_spectrum<double>(induced_matrix<double>(1, 2, {0.5, 0.5})));
  CHECK(ev[0].real() == doctest::Approx(-0.6180339887).epsilon(1e-9));
  CHECK(ev[1].real() == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(ev[2].real() == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(ev[3].real() == doctest::Approx(1.6180339887).epsilon(1e-9));
  const auto ev2 = matrix_spectrum<double>(induced_matrix<double>(2, 2, ProbabilityVector::uniform(2)));
  auto has = [&](double x) {
    for (Eigen::Index i = 0; i < ev2.size(); ++i) {
      if (std::abs(ev2(i) - x) < 1e-9) return true;
    }
    return false;
  };
  CHECK(has(-1.0 / 3));
  CHECK(has(1.0 / 9));
}

TEST_CASE("Perron-Frobenius frequencies") {
  for (int m = 1; m <= 4; ++m) {
    const NobleMeans<double> nm(m);
    const auto f = word_frequencies(m, 1, ProbabilityVector::uniform(m));
    CHECK(f("a") == doctest::Approx(nm.lambda / (nm.lambda + 1)).epsilon(1e-10));
    CHECK(f("b") == doctest::Approx(1 / (nm.lambda + 1)).epsilon(1e-10));
    CHECK(f.eigenvalue == doctest::Approx(nm.lambda).epsilon(1e-10));
  }
  const auto f2 = word_frequencies(1, 2, {0.5, 0.5});
  CHECK(f2("bb") > 0.0);
  CHECK(f2.values.sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(f2.values.minCoeff() > 0.0);
}

TEST_CASE("palindromic probabilities give reversal symmetric frequencies") {
  for (int m = 1; m <= 3; ++m) {
    std::vector<double> p(std::size_t(m) + 1);
    double sum = 0.0;
    for (int i = 0; i <= m; ++i) sum += (p[std::size_t(i)] = 1.0 + std::min(i, m - i));
    for (auto& x : p) x /= sum;
    const auto f = word_frequencies(m, 4, ProbabilityVector(p));
    for (const auto& w : f.words) CHECK(std::abs(f(w) - f(reversed(w))) < 1e-10);
  }
}

TEST_CASE("Kolmogorov consistency") {
  RandomSource rng(5);
  for (int m = 1; m <= 3; ++m) {
    const auto p = random_probs(m, rng);
    for (int ell = 1; ell <= 3; ++ell) {
      const auto lo = word_frequencies(m, ell, p);
      const auto hi = word_frequencies(m, ell + 1, p);
      for (const auto& v : lo.words) {
        CHECK(std::abs(lo(v) - hi(v + "a") - hi(v + "b")) < 1e-10);
        CHECK(std::abs(lo(v) - hi("a" + v) - hi("b" + v)) < 1e-10);
      }
    }
  }
}

TEST_CASE("cylinder measure") {
  const ProbabilityVector p{0.4, 0.6};
  CHECK(cylinder_measure(1, p, "bbb") == 0.0);
  CHECK(cylinder_measure(1, p, "a") == doctest::Approx(0.6180339887).epsilon(1e-9));
  double sum = 0.0;
  for (const auto& w : legal_words(1, 3)) sum += cylinder_measure(1, p, w);
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("empirical frequencies converge") {
  const ProbabilityVector p{0.5, 0.5};
  const auto emp = empirical_frequencies(1, p, 1, 1'000'000, 17);
  CHECK(std::abs(emp.at("a") - 0.6180339887) < 5e-3);
  double sum = 0.0;
  for (const auto& [w, f] : emp) sum += f;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  const auto f2 = word_frequencies(1, 2, p);
  const auto emp2 = empirical_frequencies(1, p, 2, 1'000'000, 17);
  for (const auto& w : f2.words) CHECK(std::abs(emp2.at(w) - f2(w)) < 5e-3);
  const auto shifted = empirical_frequencies(1, p, 2, 1'000'000, 17, 1000);
  for (const auto& w : f2.words) CHECK(std::abs(shifted.at(w) - f2(w)) < 5e-3);
}
