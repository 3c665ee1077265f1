#include "rnms/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "rnms/errors.hpp"

namespace rnms {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex phase(double t) { return std::polar(1.0, -kTwoPi * t); }  // e^{-2 pi i t}

// e^{-2 pi i k L_n} with L_n = lambda F_n + F_{n-1} formed in extended precision
Complex length_phase(double k, int n) {
  static const long double lambda = (1.0L + std::sqrt(5.0L)) / 2.0L;
  long double f0 = 0.0L, f1 = 1.0L;
  for (int j = 1; j < n; ++j) f1 = std::exchange(f0, f1) + f1;
  long double t = n == 0 ? 1.0L : lambda * f1 + f0;
  t *= k;
  t -= std::round(t);
  return Complex(std::polar(1.0L, -2.0L * std::numbers::pi_v<long double> * t));
}

void check_p0(double p0) {
  if (!(p0 >= 0.0 && p0 <= 1.0)) throw ParameterError("p0 must lie in [0, 1]");
}

const NobleMeans<double>& golden() {
  static const NobleMeans<double> nm(1);
  return nm;
}

}  // namespace

std::vector<std::uint64_t> fibonacci_numbers(int n_max) {
  if (n_max < 0) throw ParameterError("n_max must be nonnegative");
  if (n_max > 92) throw NumericError("Fibonacci numbers beyond F_92 overflow 64 bits");
  std::vector<std::uint64_t> F{0, 1};
  for (int n = 2; n <= n_max; ++n) F.push_back(F[std::size_t(n - 1)] + F[std::size_t(n - 2)]);
  F.resize(std::size_t(n_max) + 1);
  return F;
}

std::vector<double> inflation_lengths(int n_max) {
  const auto F = fibonacci_numbers(std::max(n_max, 1));
  std::vector<double> L(std::size_t(n_max) + 1);
  L[0] = 1.0;
  for (int n = 1; n <= n_max; ++n) {
    L[std::size_t(n)] = golden().lambda * double(F[std::size_t(n)]) + double(F[std::size_t(n - 1)]);
  }
  return L;
}

std::vector<Complex> recursion_A(double k, int n_max, double p0) {
  check_p0(p0);
  if (n_max < 1) throw ParameterError("n_max must be at least 1");
  const double p1 = 1.0 - p0;
  std::vector<Complex> A(std::size_t(n_max) + 1);
  A[0] = length_phase(k, 0);
  A[1] = length_phase(k, 1);
  for (int n = 2; n <= n_max; ++n) {
    A[std::size_t(n)] = (p1 + p0 * length_phase(k, n - 2)) * A[std::size_t(n - 1)] +
                        (p0 + p1 * length_phase(k, n - 1)) * A[std::size_t(n - 2)];
  }
  return A;
}

double delta(double k, int n, std::span<const Complex> A, DeltaVariant variant) {
  if (n < 2) throw ParameterError("Delta_n needs n >= 2");
  if (A.size() < std::size_t(n)) throw ParameterError("A sequence too short for Delta_n");
  const auto L = inflation_lengths(n - 1);
  const double t1 = kTwoPi * k * L[std::size_t(n - 1)];
  const double t2 = kTwoPi * k * L[std::size_t(n - 2)];
  const Complex a1 = A[std::size_t(n - 1)];
  const Complex a2 = A[std::size_t(n - 2)];
  const Complex cross = variant == DeltaVariant::Corrected ? a1 * std::conj(a2) : std::conj(a1) * a2;
  const Complex factor = (1.0 - std::polar(1.0, t1)) * (1.0 - std::polar(1.0, -t2));
  return (1.0 - std::cos(t1)) * std::norm(a2) + (1.0 - std::cos(t2)) * std::norm(a1) - (factor * cross).real();
}

std::vector<double> recursion_B(double k, int n_max, double p0, DeltaVariant variant) {
  const auto A = recursion_A(k, std::max(n_max, 1), p0);
  const double weight = 2.0 * p0 * (1.0 - p0);
  std::vector<double> B(std::size_t(std::max(n_max, 1)) + 1, 0.0);
  for (int n = 2; n <= n_max; ++n) {
    B[std::size_t(n)] = B[std::size_t(n - 1)] + B[std::size_t(n - 2)] + weight * delta(k, n, A, variant);
  }
  B.resize(std::size_t(n_max) + 1);
  return B;
}

double closed_form_B(double k, int n, double p0) {
  if (n < 2) throw ParameterError("closed form needs n >= 2");
  const auto A = recursion_A(k, n, p0);
  const auto F = fibonacci_numbers(n);
  double sum = 0.0;
  for (int i = 2; i <= n; ++i) sum += double(F[std::size_t(n + 1 - i)]) * delta(k, i, A);
  return 2.0 * p0 * (1.0 - p0) * sum;
}

double pp_estimate(double k, int n, double p0) {
  if (n < 1) throw ParameterError("pp_estimate needs n >= 1");
  const auto A = recursion_A(k, n, p0);
  const double L = inflation_lengths(n)[std::size_t(n)];
  return std::norm(A[std::size_t(n)]) / (L * L);
}

double ac_density(double k, int n, double p0, DeltaVariant variant) {
  if (n < 2) throw ParameterError("ac_density needs n >= 2");
  return recursion_B(k, n, p0, variant)[std::size_t(n)] / inflation_lengths(n)[std::size_t(n)];
}

double left_endpoint_expectation(double k, int n, double p0) {
  check_p0(p0);
  if (n == 0) return 1.0;  // one point, length 1
  const double q0 = 1.0 - p0;
  const auto A = recursion_A(k, std::max(n, 1), q0);
  const double B = n >= 2 ? recursion_B(k, n, q0)[std::size_t(n)] : 0.0;
  return (std::norm(A[std::size_t(n)]) + B) / inflation_lengths(n)[std::size_t(n)];
}

int eta_levels_for(double y) {
  const double xi = std::abs(golden().lambda_conj);
  int n = 1;
  double scale = std::abs(y) * xi;
  while (scale >= 1e-8) {
    scale *= xi;
    ++n;
  }
  return n;
}

Eigen::Vector2cd eta_hat(double y, double p0, int n_levels) {
  check_p0(p0);
  const double p1 = 1.0 - p0;
  const double xi = golden().lambda_conj;
  const int n = n_levels > 0 ? n_levels : eta_levels_for(y);
  const double root5 = golden().root_disc;

  // Left-to-right product P_1 P_2 ... P_n, each factor scaled by |xi| to keep entries O(1).
  Eigen::Matrix2cd product = Eigen::Matrix2cd::Identity();
  double xi_power = 1.0;  // xi^{l-1}
  for (int l = 1; l <= n; ++l) {
    Eigen::Matrix2cd factor;
    factor << p0 * phase(y * xi_power) + p1, 1.0,
              p0 + p1 * phase(y * xi_power * xi), 0.0;
    product = product * (factor * std::abs(xi));
    xi_power *= xi;
  }
  Eigen::Vector2cd base(1.0 / root5, (golden().lambda - 1.0) / root5);
  return product * base;
}

FourierModulePoint module_point(int m, QuadraticInteger x) {
  const NobleMeans<double> nm(m);
  return {m, x, real_value(x, nm) / nm.root_disc, -star_value(x, nm) / nm.root_disc};
}

std::vector<FourierModulePoint> fourier_module_points(int m, double k_max, double star_cutoff) {
  if (!(k_max > 0.0) || !(star_cutoff > 0.0)) throw ParameterError("k_max and star_cutoff must be positive");
  const NobleMeans<double> nm(m);
  const double s = nm.root_disc;
  // |u + v L| <= k_max s and |u + v L'| <= star_cutoff s give |v| s <= (k_max + star_cutoff) s.
  const auto v_max = std::int64_t(std::floor(k_max + star_cutoff));
  std::vector<FourierModulePoint> out;
  for (std::int64_t v = -v_max; v <= v_max; ++v) {
    const double lo = std::max(-k_max * s - double(v) * nm.lambda, -star_cutoff * s - double(v) * nm.lambda_conj);
    const double hi = std::min(k_max * s - double(v) * nm.lambda, star_cutoff * s - double(v) * nm.lambda_conj);
    for (auto u = std::int64_t(std::ceil(lo)) - 1; u <= std::int64_t(std::floor(hi)) + 1; ++u) {
      FourierModulePoint p = module_point(m, {u, v});
      if (std::abs(p.value) <= k_max && std::abs(p.star) <= star_cutoff) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end(),
            [](const FourierModulePoint& a, const FourierModulePoint& b) { return a.value < b.value; });
  return out;
}

double pp_intensity(const FourierModulePoint& kp, double p0) {
  if (kp.m != 1) throw UnsupportedError("Bragg intensities via eta_hat exist only for m = 1");
  const Eigen::Vector2cd eta = eta_hat(-kp.star, p0);
  return std::norm(eta(0) + eta(1));
}

Expectation exhaustive_expectation(double k, int n, double p0) {
  check_p0(p0);
  if (n < 0) throw ParameterError("level must be nonnegative");
  if (n > 7) throw ResourceError("exhaustive enumeration is limited to n <= 7 (2^20 realizations)");
  const long double q0 = p0, q1 = 1.0L - q0;

  using Realizations = std::vector<std::pair<std::string, long double>>;
  Realizations older{{"b", 1.0L}};
  Realizations newer{{"a", 1.0L}};
  if (n == 0) newer = older;
  for (int level = 2; level <= n; ++level) {
    Realizations next;
    next.reserve(2 * older.size() * newer.size());
    for (const auto& [x, px] : newer) {
      for (const auto& [y, py] : older) {
        next.emplace_back(x + y, q1 * px * py);
        next.emplace_back(y + x, q0 * px * py);
      }
    }
    older = std::move(newer);
    newer = std::move(next);
  }

  const NobleMeans<double>& nm = golden();
  std::vector<std::complex<long double>> sums;
  sums.reserve(newer.size());
  std::complex<long double> mean = 0.0L;
  long double second = 0.0L;
  for (const auto& [word, prob] : newer) {
    QuadraticInteger right;
    Complex g(0.0, 0.0);
    for (char c : word) {
      right = right + (c == 'a' ? QuadraticInteger{0, 1} : QuadraticInteger{1, 0});
      g += phase(k * real_value(right, nm));
    }
    sums.emplace_back(g);
    mean += prob * sums.back();
    second += prob * std::norm(sums.back());
  }
  long double variance = 0.0L;
  for (std::size_t i = 0; i < sums.size(); ++i) variance += newer[i].second * std::norm(sums[i] - mean);
  const Expectation e{Complex(mean), double(second), double(variance)};
  return e;
}

}  // namespace rnms
