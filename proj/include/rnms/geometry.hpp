#ifndef RNMS_GEOMETRY_HPP
#define RNMS_GEOMETRY_HPP

#include <map>
#include <ostream>
#include <vector>

#include "rnms/alphabet.hpp"
#include "rnms/quadratic_integer.hpp"

namespace rnms {

/// Left endpoints of the intervals obtained by turning `a` into length lambda_m and `b` into
/// length 1, plus the total length. Coordinates are exact.
struct PointSet {
  int m = 1;
  std::vector<QuadraticInteger> points;
  QuadraticInteger length;
};

PointSet realize(const Word& w, int m, QuadraticInteger anchor = {});

double star_map(QuadraticInteger x, int m);

/// Closed internal-space window [lambda' - 1, 1 - lambda'].
struct Window {
  double lower;
  double upper;

  static Window for_family(int m);
  double length() const noexcept { return upper - lower; }
  bool contains(double y, double tolerance = 1e-9) const noexcept {
    return y >= lower - tolerance && y <= upper + tolerance;
  }
};

struct WindowViolation {
  std::size_t index;
  QuadraticInteger point;
  double star;
};

/// Points whose star image falls outside the window (beyond `tolerance`).
std::vector<WindowViolation> window_check(const PointSet& points, double tolerance = 1e-9);

/// (count - 1) / (last - first).
double empirical_density(const PointSet& points);

/// Coefficients of the finite autocorrelation: for each exact difference z = x - y with
/// real value in [0, max_distance], (number of ordered pairs at difference z) / (last - first).
/// The z = 0 term counts count - 1 self pairs so that it equals empirical_density. With
/// `symmetric`, the negative differences in [-max_distance, 0) are included as well.
std::map<QuadraticInteger, double> autocorrelation_coefficients(const PointSet& points, double max_distance,
                                                                bool symmetric = false);

/// CSV with header u,v,real_value,star_value; reals printed with 17 significant digits.
void write_point_set_csv(const PointSet& points, std::ostream& out);

}  // namespace rnms

#endif  // RNMS_GEOMETRY_HPP
