#include "rnms/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "rnms/diffraction.hpp"
#include "rnms/entropy.hpp"
#include "rnms/geometry.hpp"
#include "rnms/induced.hpp"
#include "rnms/legality.hpp"
#include "rnms/random_source.hpp"
#include "rnms/spectrum_table.hpp"
#include "rnms/substitution.hpp"

namespace rnms {
namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream ss;
  ss.precision(3);
  ss << std::scientific << x;
  return ss.str();
}

ProbabilityVector random_strict_probs(int m, RandomSource& rng) {
  std::vector<double> p(std::size_t(m) + 1);
  double sum = 0.0;
  for (auto& x : p) sum += (x = 0.05 + rng.uniform());
  for (auto& x : p) x /= sum;
  return ProbabilityVector(std::move(p));
}

/// Greedy nearest matching of `expected` into `computed`; returns the worst matched distance
/// and the largest modulus among the unmatched computed values.
std::pair<double, double> match_eigenvalues(const Eigen::VectorXcd& computed, const std::vector<std::complex<double>>& expected) {
  std::vector<bool> used(std::size_t(computed.size()), false);
  double worst = 0.0;
  for (const auto& e : expected) {
    double best = INFINITY;
    Eigen::Index pick = -1;
    for (Eigen::Index i = 0; i < computed.size(); ++i) {
      if (used[std::size_t(i)]) continue;
      const double d = std::abs(computed(i) - e);
      if (d < best) best = d, pick = i;
    }
    if (pick < 0) return {INFINITY, INFINITY};
    used[std::size_t(pick)] = true;
    worst = std::max(worst, best);
  }
  double rest = 0.0;
  for (Eigen::Index i = 0; i < computed.size(); ++i) {
    if (!used[std::size_t(i)]) rest = std::max(rest, std::abs(computed(i)));
  }
  return {worst, rest};
}

std::vector<std::complex<double>> expected_m2_spectrum(int m, const ProbabilityVector& p) {
  const NobleMeans<double> nm(m);
  return {nm.lambda, nm.lambda_conj, -p[0], p[0] * p[std::size_t(m)]};
}

Outcome check_entropy_table() {
  const double table[] = {0.444399, 0.408549, 0.371399, 0.338619, 0.310804, 0.287298, 0.267301};
  double worst = 0.0;
  for (int m = 1; m <= 7; ++m) worst = std::max(worst, std::abs(entropy_series(m, 1e-9).value - table[m - 1]));
  // the six printed decimals of h_2 are truncated rather than rounded
  return {worst < 1e-6, "max deviation " + fmt(worst)};
}

Outcome check_entropy_decreasing() {
  double prev = INFINITY;
  for (int m = 1; m <= 7; ++m) {
    const double h = entropy_series(m, 1e-12).value;
    if (!(h < prev)) return {false, "h_" + std::to_string(m) + " does not decrease"};
    prev = h;
  }
  return {true, "h_1 > ... > h_7"};
}

Outcome check_generation_sets() {
  const std::uint64_t expected[] = {2, 3, 8};
  for (int n = 3; n <= 5; ++n) {
    if (generation_count(1, n) != expected[n - 3]) return {false, "|G_" + std::to_string(n) + "| mismatch"};
  }
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 9 - 2 * m; ++n) {
      const auto g = generation_set(m, n);
      std::vector<Word> rev;
      for (const auto& w : g.words) {
        if (!is_legal(m, w)) return {false, "illegal word " + w + " in G_" + std::to_string(n)};
        rev.push_back(reversed(w));
      }
      std::sort(rev.begin(), rev.end());
      if (rev != g.words) return {false, "G_" + std::to_string(n) + " not reversal closed for m=" + std::to_string(m)};
    }
  }
  return {true, "|G_3..5| = 2,3,8; members legal; reversal closed"};
}

Outcome check_empirical_entropy() {
  const double h1 = entropy_series(1, 1e-12).value;
  double prev = 0.0;
  std::string values;
  for (int n = 3; n <= 10; ++n) {
    const double e = empirical_entropy(1, n);
    values += (n > 3 ? " " : "") + fmt(e);
    if (e < prev || e > h1 + 0.01) return {false, "fails at n=" + std::to_string(n) + ": " + values};
    prev = e;
  }
  return {true, "n=3..10: " + values};
}

Outcome check_complexity() {
  for (int m = 1; m <= 3; ++m) {
    for (int ell = m + 3; ell <= 2 * m + 2; ++ell) {
      if (complexity_formula(m, ell) != complexity_exact(m, ell)) {
        return {false, "m=" + std::to_string(m) + " l=" + std::to_string(ell)};
      }
    }
  }
  const bool base = complexity_exact(1, 2) == 4 && complexity_exact(1, 4) == 13;
  return {base, base ? "formula = exhaustive on every window, m=1..3" : "|D_{1,2}| or |D_{1,4}| wrong"};
}

Outcome check_legality_closure() {
  for (int m = 1; m <= 3; ++m) {
    for (int ell = 2; ell <= 8; ++ell) {
      for (const auto& w : legal_words(m, ell)) {
        if (!is_legal(m, reversed(w))) return {false, "reversal of " + w + " illegal"};
        if (!is_legal(m, w.substr(1)) || !is_legal(m, w.substr(0, w.size() - 1))) {
          return {false, "factor of " + w + " illegal"};
        }
      }
    }
  }
  return {true, "reflection and factor closed, l<=8, m<=3"};
}

Outcome check_letter_counts() {
  RandomSource rng(7);
  for (int m = 1; m <= 4; ++m) {
    const auto M = substitution_matrix(m);
    const auto probs = random_strict_probs(m, rng);
    Word w = "a";
    for (int k = 0; k < 6; ++k) {
      const auto before = abelianization(w);
      w = random_substitute(m, probs, w, rng);
      const auto after = abelianization(w);
      if (std::int64_t(after.a) != M(0, 0) * std::int64_t(before.a) + M(0, 1) * std::int64_t(before.b) ||
          std::int64_t(after.b) != M(1, 0) * std::int64_t(before.a) + M(1, 1) * std::int64_t(before.b)) {
        return {false, "letter counts off for m=" + std::to_string(m)};
      }
    }
  }
  return {true, "abelianization(zeta(w)) = M abelianization(w)"};
}

Outcome check_induced_spectrum() {
  RandomSource rng(11);
  double worst = 0.0, zero = 0.0, pf = 0.0;
  for (int m = 1; m <= 3; ++m) {
    for (int t = 0; t < 5; ++t) {
      const auto p = random_strict_probs(m, rng);
      const auto expected = expected_m2_spectrum(m, p);
      const auto s2 = matrix_spectrum<double>(induced_matrix<double>(m, 2, p));
      const auto [d2, rest2] = match_eigenvalues(s2, expected);
      const Eigen::VectorXcd s3 = matrix_spectrum<long double>(induced_matrix<long double>(m, 3, p)).cast<std::complex<double>>();
      const auto [d3, rest3] = match_eigenvalues(s3, expected);
      worst = std::max({worst, d2, d3});
      zero = std::max(zero, rest3);
      if (rest2 > 1e-9) worst = std::max(worst, rest2);
    }
  }
  for (int m = 1; m <= 4; ++m) {
    for (int ell = 1; ell <= 4; ++ell) {
      const auto p = random_strict_probs(m, rng);
      const auto f = word_frequencies(m, ell, p, 1e-9);
      pf = std::max(pf, std::abs(f.eigenvalue - NobleMeans<double>(m).lambda));
    }
  }
  return {worst <= 1e-9 && zero <= 1e-9 && pf <= 1e-9,
          "eigenvalue error " + fmt(worst) + ", extra eigenvalues " + fmt(zero) + ", PF error " + fmt(pf)};
}

Outcome check_kolmogorov() {
  RandomSource rng(13);
  double worst = 0.0;
  for (int m = 1; m <= 3; ++m) {
    const auto p = random_strict_probs(m, rng);
    for (int ell = 1; ell <= 3; ++ell) {
      const auto lo = word_frequencies(m, ell, p);
      const auto hi = word_frequencies(m, ell + 1, p);
      for (const auto& v : lo.words) {
        worst = std::max(worst, std::abs(lo(v) - hi(v + "a") - hi(v + "b")));
        worst = std::max(worst, std::abs(lo(v) - hi("a" + v) - hi("b" + v)));
      }
    }
  }
  return {worst <= 1e-10, "max defect " + fmt(worst)};
}

Outcome check_empirical_frequencies() {
  const ProbabilityVector p{0.5, 0.5};
  const auto f = word_frequencies(1, 2, p);
  const auto emp = empirical_frequencies(1, p, 2, 1'000'000, 2024);
  double worst = 0.0;
  for (const auto& w : f.words) {
    const auto it = emp.find(w);
    worst = std::max(worst, std::abs(f(w) - (it == emp.end() ? 0.0 : it->second)));
  }
  return {worst <= 5e-3, "max |empirical - phi| " + fmt(worst)};
}

Outcome check_diffraction_oracle() {
  double worst = 0.0;
  for (double p0 : {0.2, 0.5, 0.8}) {
    for (int j = 0; j < 25; ++j) {
      const double k = 3.0 * j / 24.0;
      const auto A = recursion_A(k, 6, p0);
      const auto B = recursion_B(k, 6, p0);
      for (int n = 0; n <= 6; ++n) {
        const auto e = exhaustive_expectation(k, n, p0);
        worst = std::max(worst, std::abs(e.mean - A[std::size_t(n)]));
        worst = std::max(worst, std::abs(e.variance - B[std::size_t(n)]));
      }
    }
  }
  return {worst <= 1e-12, "max deviation " + fmt(worst)};
}

Outcome check_closed_form() {
  double worst = 0.0;
  for (int j = 0; j < 100; ++j) {
    const double k = 0.03 * (j + 1);
    const auto B = recursion_B(k, 30, 0.5);
    for (int n = 2; n <= 30; ++n) {
      const double c = closed_form_B(k, n, 0.5);
      worst = std::max(worst, std::abs(c - B[std::size_t(n)]) / std::max(1.0, std::abs(B[std::size_t(n)])));
    }
  }
  return {worst <= 1e-9, "max relative deviation " + fmt(worst)};
}

std::vector<double> sup_differences(DeltaVariant variant, double p0) {
  const auto L = inflation_lengths(25);
  std::vector<double> sup(26, 0.0);
  for (int j = 0; j < 100; ++j) {
    const double k = 0.03 * (j + 1);
    const auto B = recursion_B(k, 25, p0, variant);
    for (int n = 10; n <= 25; ++n) {
      const double d = std::abs(B[std::size_t(n)] / L[std::size_t(n)] - B[std::size_t(n - 1)] / L[std::size_t(n - 1)]);
      sup[std::size_t(n)] = std::max(sup[std::size_t(n)], d);
    }
  }
  return sup;
}

Outcome check_b_convergence() {
  const auto sup = sup_differences(DeltaVariant::Corrected, 0.5);
  for (int n = 11; n <= 25; ++n) {
    if (!(sup[std::size_t(n)] < sup[std::size_t(n - 1)])) return {false, "sup difference grows at n=" + std::to_string(n)};
  }
  return {true, "sup difference " + fmt(sup[10]) + " at n=10 -> " + fmt(sup[25]) + " at n=25"};
}

Outcome check_misprint_divergence() {
  double ratio = 0.0;
  for (int j = 0; j < 100; ++j) {
    const double k = 0.03 * (j + 1);
    const double good = ac_density(k, 25, 0.5, DeltaVariant::Corrected);
    const double bad = ac_density(k, 25, 0.5, DeltaVariant::Misprint);
    if (good > 0.0) ratio = std::max(ratio, bad / good);
  }
  return {ratio > 10.0, "max misprint/corrected ratio at n=25: " + fmt(ratio)};
}

Outcome check_two_pathways() {
  double worst0 = std::abs(pp_intensity(module_point(1, {0, 0}), 0.5) - pp_estimate(0.0, 20, 0.5));
  double worst = 0.0;
  int count = 0;
  for (const auto& kp : fourier_module_points(1, 3.0, 1.0)) {
    if (kp.value <= 0.0) continue;
    worst = std::max(worst, std::abs(pp_intensity(kp, 0.5) - pp_estimate(kp.value, 20, 0.5)));
    ++count;
  }
  return {worst0 <= 1e-3 && worst <= 1e-2 && count >= 5,
          "k=0: " + fmt(worst0) + "; " + std::to_string(count) + " module points: " + fmt(worst)};
}

Outcome check_monte_carlo_spectrum(unsigned threads) {
  const auto grid = default_k_grid(1);
  const int n = 6;
  const auto table = mc_spectrum(1, ProbabilityVector{0.5, 0.5}, n, grid, 1000, 42, threads);
  const double L = inflation_lengths(n)[n];
  std::size_t good = 0;
  for (const auto& r : table.rows) {
    const double predicted = L * r.pp.value() + ac_density(r.k, n, 0.5);
    if (std::abs(r.mc_mean - predicted) <= 5.0 * r.mc_stderr) ++good;
  }
  const double fraction = double(good) / double(table.rows.size());
  return {fraction >= 0.95, std::to_string(good) + "/" + std::to_string(table.rows.size()) + " grid points within 5 stderr"};
}

Outcome check_geometry() {
  RandomSource rng(99);
  const Word w = grow_random(1, ProbabilityVector{0.5, 0.5}, "a", 10'000, rng).substr(0, 10'000);
  const auto ps = realize(w, 1);
  const auto violations = window_check(ps);
  const double density = empirical_density(ps);
  const double target = NobleMeans<double>(1).lambda / std::sqrt(5.0);
  return {violations.empty() && std::abs(density - target) <= 1e-3,
          std::to_string(violations.size()) + " window violations, density " + fmt(density)};
}

}  // namespace

std::vector<CheckResult> run_validation(const ValidationOptions& options,
                                        const std::function<void(const CheckResult&)>& on_result) {
  struct Entry {
    std::string name;
    std::string anchor;
    bool expected_divergent;
    std::function<Outcome()> run;
  };
  std::vector<Entry> checks = {
      {"entropy-table", "entropy series vs tabulated h_1..h_7", false, check_entropy_table},
      {"entropy-decreasing", "h_m decreasing in m", false, check_entropy_decreasing},
      {"generation-sets", "generation set union G_n", false, check_generation_sets},
      {"empirical-entropy", "log|G_n|/l_n below h_1", false, check_empirical_entropy},
      {"complexity-formula", "closed complexity formula, m+3 <= l <= 2m+2", false, check_complexity},
      {"legality-closure", "legal words: reflection and factors", false, check_legality_closure},
      {"letter-counts", "substitution matrix M", false, check_letter_counts},
      {"induced-spectrum", "spectrum of M_{m,2}, M_{m,3}; PF eigenvalue lambda_m", false, check_induced_spectrum},
      {"kolmogorov-consistency", "PF eigenvector phi^(l) vs phi^(l+1)", false, check_kolmogorov},
      {"empirical-frequencies", "ergodic theorem for word frequencies", false, check_empirical_frequencies},
      {"diffraction-oracle", "A_n and B_n recursions vs enumeration", false, check_diffraction_oracle},
      {"closed-form-B", "explicit sum for B_n", false, check_closed_form},
      {"B-convergence", "Delta_n with conjugate on A_{n-2}", false, check_b_convergence},
      {"two-pathway-bragg", "eta recursion vs |A_n|^2/L_n^2", false, check_two_pathways},
      {"monte-carlo-spectrum", "diffraction figure, n = 6, p0 = 1/2",
       false, [&] { return check_monte_carlo_spectrum(options.threads); }},
      {"window-and-density", "window [lambda'-1, 1-lambda'], density lambda/sqrt 5", false, check_geometry},
  };
  if (options.misprint_mode) {
    checks.push_back({"misprint-divergence", "Delta_n with conjugate on A_{n-1}", true, check_misprint_divergence});
  }

  std::vector<CheckResult> results;
  for (const auto& s : checks) {
    CheckResult r{s.name, s.anchor, false, s.expected_divergent, {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
      const auto outcome = s.run();
      r.passed = outcome.passed;
      r.detail = outcome.detail;
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(r);
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace rnms
