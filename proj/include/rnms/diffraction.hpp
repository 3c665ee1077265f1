#ifndef RNMS_DIFFRACTION_HPP
#define RNMS_DIFFRACTION_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "rnms/noble_means.hpp"
#include "rnms/quadratic_integer.hpp"

namespace rnms {

// Random Fibonacci (m = 1) diffraction.
//
// Level n of the random inflation is W_0 = b, W_1 = a and W_n = W_{n-1} W_{n-2} with
// probability p1 or W_{n-2} W_{n-1} with probability p0, sub-words independent. This is the
// law of zeta^{n-1}(a). W_n has F_{n+1} letters and length L_n = lambda F_n + F_{n-1}.
// The exponential sum g_n(k) = sum_j exp(-2 pi i k x_j) runs over right endpoints x_j.

using Complex = std::complex<double>;

/// Which factor carries the complex conjugate in the cross term of Delta_n.
enum class DeltaVariant {
  Corrected,  // A_{n-1} * conj(A_{n-2}); the variance recursion that converges
  Misprint,   // conj(A_{n-1}) * A_{n-2}; kept only to demonstrate divergence
};

/// F_0 .. F_{n_max} with F_0 = 0, F_1 = F_2 = 1.
std::vector<std::uint64_t> fibonacci_numbers(int n_max);

/// L_0 .. L_{n_max}: L_0 = 1, L_n = lambda_1 F_n + F_{n-1}.
std::vector<double> inflation_lengths(int n_max);

/// A_0 .. A_{n_max}, A_n(k) = E g_n(k).
std::vector<Complex> recursion_A(double k, int n_max, double p0);

/// Delta_n(k) from A_{n-1}, A_{n-2}; n >= 2 and A must hold at least n entries.
double delta(double k, int n, std::span<const Complex> A, DeltaVariant variant = DeltaVariant::Corrected);

/// B_0 .. B_{n_max}, B_n(k) = Var g_n(k); B_0 = B_1 = 0, B_n = B_{n-1} + B_{n-2} + 2 p0 p1 Delta_n.
std::vector<double> recursion_B(double k, int n_max, double p0, DeltaVariant variant = DeltaVariant::Corrected);

/// B_n = 2 p0 p1 sum_{i=2}^{n} F_{n+1-i} Delta_i.
double closed_form_B(double k, int n, double p0);

/// |A_n(k)|^2 / L_n^2.
double pp_estimate(double k, int n, double p0);

/// B_n(k) / L_n.
double ac_density(double k, int n, double p0, DeltaVariant variant = DeltaVariant::Corrected);

/// Expected |g|^2 / L_n for the left-endpoint exponential sum of a level-n realization.
/// Reversal maps left endpoints to right endpoints and swaps p0 <-> p1, so this is
/// (|A_n|^2 + B_n)/L_n evaluated at 1 - p0.
double left_endpoint_expectation(double k, int n, double p0);

/// Smallest level count with |y| |xi|^n < 1e-8 (at least 1).
int eta_levels_for(double y);

/// (eta_a, eta_b)(y) = |xi|^n P_1 P_2 ... P_n (eta_a, eta_b)(0), xi = lambda_1', with
/// P_l = p0 [[e(y xi^{l-1}), 1], [1, 0]] + p1 [[1, 1], [e(y xi^l), 0]], e(t) = exp(-2 pi i t)
/// and (eta_a, eta_b)(0) = (1, lambda_1 - 1)/sqrt 5. `n_levels <= 0` picks eta_levels_for(y).
Eigen::Vector2cd eta_hat(double y, double p0, int n_levels = 0);

/// A point of the Fourier module Z[lambda_m]/sqrt(m^2+4).
struct FourierModulePoint {
  int m = 1;
  QuadraticInteger x;
  double value = 0.0;  // (u + v lambda)/sqrt(m^2+4)
  double star = 0.0;   // -(u + v lambda')/sqrt(m^2+4)
};

FourierModulePoint module_point(int m, QuadraticInteger x);

/// All module points with |value| <= k_max and |star| <= star_cutoff, sorted by value.
std::vector<FourierModulePoint> fourier_module_points(int m, double k_max, double star_cutoff);

/// Bragg intensity |eta_a(-k') + eta_b(-k')|^2 (m = 1 only).
double pp_intensity(const FourierModulePoint& kp, double p0);

struct Expectation {
  Complex mean;          // E g_n(k)
  double second_moment;  // E |g_n(k)|^2
  double variance;       // E |g_n(k) - E g_n(k)|^2, accumulated about the mean
};

/// Exact expectations by enumerating all 2^{T(n)} realizations of the concatenation model,
/// T(n) = 1 + T(n-1) + T(n-2). Throws ResourceError for n > 7.
Expectation exhaustive_expectation(double k, int n, double p0);

}  // namespace rnms

#endif  // RNMS_DIFFRACTION_HPP
