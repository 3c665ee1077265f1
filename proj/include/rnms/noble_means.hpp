#ifndef RNMS_NOBLE_MEANS_HPP
#define RNMS_NOBLE_MEANS_HPP

#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include "rnms/errors.hpp"

namespace rnms {

/// Constants of the noble means family for a fixed m >= 1.
///
/// `lambda` is the Perron root (m + sqrt(m^2 + 4)) / 2 of [[m,1],[1,0]] and `lambda_conj`
/// its algebraic conjugate. The conjugate is evaluated as -1/lambda to avoid the
/// cancellation in (m - sqrt(m^2 + 4)) / 2 for large m.
template <typename Scalar = double>
struct NobleMeans {
  int m;
  Scalar root_disc;    // sqrt(m^2 + 4) = lambda - lambda_conj
  Scalar lambda;
  Scalar lambda_conj;

  explicit NobleMeans(int m_) : m(m_) {
    if (m_ < 1) throw ParameterError("m must be a positive integer, got " + std::to_string(m_));
    using std::sqrt;
    root_disc = sqrt(Scalar(m_) * Scalar(m_) + Scalar(4));
    lambda = (Scalar(m_) + root_disc) / Scalar(2);
    lambda_conj = Scalar(-1) / lambda;
  }
};

/// Weights (p_0, ..., p_m) of the m + 1 local realizations of the random rule on `a`.
class ProbabilityVector {
 public:
  static constexpr double kSumTolerance = 1e-12;

  ProbabilityVector() = default;
  ProbabilityVector(std::initializer_list<double> p) : p_(p) {}
  explicit ProbabilityVector(std::vector<double> p) : p_(std::move(p)) {}

  /// The uniform vector (1/(m+1), ..., 1/(m+1)).
  static ProbabilityVector uniform(int m);
  /// Indicator of rule i: p_i = 1, all others 0.
  static ProbabilityVector indicator(int m, int i);

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& values() const noexcept { return p_; }

  /// Throws ParameterError unless there are m+1 entries, all >= 0 (> 0 when `strict`),
  /// summing to 1 within kSumTolerance.
  void validate(int m, bool strict = false) const;
  bool is_strict() const noexcept;

  /// Reflection image (p_m, ..., p_0), corresponding to the rule swap i <-> m - i.
  ProbabilityVector reflected() const;

 private:
  std::vector<double> p_;
};

}  // namespace rnms

#endif  // RNMS_NOBLE_MEANS_HPP
