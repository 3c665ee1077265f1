#ifndef RNMS_QUADRATIC_INTEGER_HPP
#define RNMS_QUADRATIC_INTEGER_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

#include "rnms/errors.hpp"
#include "rnms/noble_means.hpp"

namespace rnms {

/// u + v*lambda_m in Z[lambda_m]. The ring depends on m only through multiplication
/// (lambda^2 = m*lambda + 1), so m is passed to mul() rather than stored.
/// Arithmetic is checked: overflow throws NumericError.
struct QuadraticInteger {
  std::int64_t u = 0;
  std::int64_t v = 0;

  friend bool operator==(const QuadraticInteger&, const QuadraticInteger&) = default;
  friend auto operator<=>(const QuadraticInteger&, const QuadraticInteger&) = default;
};

namespace detail {
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw NumericError("Z[lambda] coordinate overflow");
  return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw NumericError("Z[lambda] coordinate overflow");
  return r;
}
}  // namespace detail

inline QuadraticInteger operator+(QuadraticInteger x, QuadraticInteger y) {
  return {detail::checked_add(x.u, y.u), detail::checked_add(x.v, y.v)};
}

inline QuadraticInteger operator-(QuadraticInteger x) {
  return {detail::checked_mul(x.u, -1), detail::checked_mul(x.v, -1)};
}

inline QuadraticInteger operator-(QuadraticInteger x, QuadraticInteger y) { return x + (-y); }

/// (u1 + v1 L)(u2 + v2 L) = (u1 u2 + v1 v2) + (u1 v2 + u2 v1 + m v1 v2) L.
inline QuadraticInteger mul(QuadraticInteger x, QuadraticInteger y, int m) {
  using detail::checked_add;
  using detail::checked_mul;
  const std::int64_t vv = checked_mul(x.v, y.v);
  return {checked_add(checked_mul(x.u, y.u), vv),
          checked_add(checked_add(checked_mul(x.u, y.v), checked_mul(y.u, x.v)), checked_mul(m, vv))};
}

/// Real embedding u + v*lambda.
template <typename Scalar>
Scalar real_value(QuadraticInteger x, const NobleMeans<Scalar>& nm) {
  return Scalar(x.u) + Scalar(x.v) * nm.lambda;
}

/// Star map (algebraic conjugation) u + v*lambda'.
template <typename Scalar>
Scalar star_value(QuadraticInteger x, const NobleMeans<Scalar>& nm) {
  return Scalar(x.u) + Scalar(x.v) * nm.lambda_conj;
}

inline std::string to_string(QuadraticInteger x) {
  return "(" + std::to_string(x.u) + "," + std::to_string(x.v) + ")";
}

}  // namespace rnms

template <>
struct std::hash<rnms::QuadraticInteger> {
  std::size_t operator()(const rnms::QuadraticInteger& x) const noexcept {
    const std::uint64_t h = std::uint64_t(x.u) * 0x9e3779b97f4a7c15ULL ^ (std::uint64_t(x.v) + 0x632be59bd9b4e019ULL);
    return std::size_t(h ^ (h >> 29));
  }
};

#endif  // RNMS_QUADRATIC_INTEGER_HPP
