#include "rnms/geometry.hpp"

#include <cstdio>

#include "rnms/errors.hpp"

namespace rnms {

PointSet realize(const Word& w, int m, QuadraticInteger anchor) {
  const NobleMeans<double> nm(m);  // validates m
  PointSet out;
  out.m = m;
  out.points.reserve(w.size());
  QuadraticInteger x = anchor;
  for (char c : w) {
    out.points.push_back(x);
    if (c == 'a') {
      x = x + QuadraticInteger{0, 1};
    } else if (c == 'b') {
      x = x + QuadraticInteger{1, 0};
    } else {
      throw ParameterError("word contains a letter other than a, b");
    }
  }
  out.length = x - anchor;
  return out;
}

double star_map(QuadraticInteger x, int m) { return star_value(x, NobleMeans<double>(m)); }

Window Window::for_family(int m) {
  const NobleMeans<double> nm(m);
  return {nm.lambda_conj - 1.0, 1.0 - nm.lambda_conj};
}

std::vector<WindowViolation> window_check(const PointSet& points, double tolerance) {
  const NobleMeans<double> nm(points.m);
  const Window window = Window::for_family(points.m);
  std::vector<WindowViolation> violations;
  for (std::size_t i = 0; i < points.points.size(); ++i) {
    const double y = star_value(points.points[i], nm);
    if (!window.contains(y, tolerance)) violations.push_back({i, points.points[i], y});
  }
  return violations;
}

double empirical_density(const PointSet& points) {
  if (points.points.size() < 2) throw ParameterError("density needs at least two points");
  const NobleMeans<double> nm(points.m);
  const double span = real_value(points.points.back() - points.points.front(), nm);
  return double(points.points.size() - 1) / span;
}

std::map<QuadraticInteger, double> autocorrelation_coefficients(const PointSet& points, double max_distance,
                                                                bool symmetric) {
  if (!(max_distance > 0.0)) throw ParameterError("max_distance must be positive");
  const std::size_t n = points.points.size();
  if (n < 2) throw ParameterError("autocorrelation needs at least two points");
  const NobleMeans<double> nm(points.m);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = real_value(points.points[i], nm);
  const double span = x.back() - x.front();

  std::map<QuadraticInteger, std::size_t> counts;
  counts[QuadraticInteger{}] = n - 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n && x[j] - x[i] <= max_distance; ++j) {
      const QuadraticInteger z = points.points[j] - points.points[i];
      ++counts[z];
      if (symmetric) ++counts[-z];
    }
  }
  std::map<QuadraticInteger, double> out;
  for (const auto& [z, c] : counts) out.emplace(z, double(c) / span);
  return out;
}

void write_point_set_csv(const PointSet& points, std::ostream& out) {
  const NobleMeans<double> nm(points.m);
  out << "u,v,real_value,star_value\n";
  char buf[64];
  for (const QuadraticInteger& p : points.points) {
    out << p.u << ',' << p.v << ',';
    std::snprintf(buf, sizeof buf, "%.17g", real_value(p, nm));
    out << buf << ',';
    std::snprintf(buf, sizeof buf, "%.17g", star_value(p, nm));
    out << buf << '\n';
  }
}

}  // namespace rnms
