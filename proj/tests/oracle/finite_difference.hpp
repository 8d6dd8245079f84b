#pragma once

// Central-difference oracle, independent of the jet machinery: it only ever
// evaluates fields at order 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "acm3/fields.hpp"

namespace oracle {

inline constexpr double kStep = 1e-5;

/// |a - b| / max(1, |b|).
inline double relative_error(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline acm3::ChartPoint shifted(const acm3::ChartPoint& p, std::size_t axis, double h) {
  std::vector<double> c = p.coords();
  c[axis] += h;
  return acm3::ChartPoint(std::move(c));
}

/// d/du_axis of every entry of f, by (f(p + h e) - f(p - h e)) / 2h.
inline std::vector<double> central_difference(const std::function<std::vector<double>(const acm3::ChartPoint&)>& f,
                                              const acm3::ChartPoint& p, std::size_t axis, double h = kStep) {
  const std::vector<double> up = f(shifted(p, axis, h));
  const std::vector<double> down = f(shifted(p, axis, -h));
  std::vector<double> r(up.size());
  for (std::size_t i = 0; i < up.size(); ++i) r[i] = (up[i] - down[i]) / (2 * h);
  return r;
}

/// Order-0 values of a tensor field as a plain function of the point.
template <class Tag>
std::function<std::vector<double>(const acm3::ChartPoint&)> values_of(const acm3::TensorField<Tag>& f) {
  return [f](const acm3::ChartPoint& p) { return f(p, 0).values(); };
}

inline std::function<std::vector<double>(const acm3::ChartPoint&)> values_of(const acm3::ScalarField& f) {
  return [f](const acm3::ChartPoint& p) { return std::vector<double>{f.value(p)}; };
}

/// Max relative error between the jet partial d/du_axis of every entry of f
/// at p and the central difference of its values.
template <class Tag>
double max_partial_error(const acm3::TensorField<Tag>& f, const acm3::ChartPoint& p, std::size_t axis) {
  const acm3::JetArray jets = f(p, 1);
  const std::vector<double> fd = central_difference(values_of(f), p, axis);
  double worst = 0.0;
  for (std::size_t i = 0; i < jets.size(); ++i)
    worst = std::max(worst, relative_error(jets[i].partial({axis}), fd[i]));
  return worst;
}

inline double max_partial_error(const acm3::ScalarField& f, const acm3::ChartPoint& p, std::size_t axis) {
  const double fd = central_difference(values_of(f), p, axis)[0];
  return relative_error(f(p, 1).partial({axis}), fd);
}

/// Mixed second partial d^2/du_a du_b of every entry, differencing the
/// jet-free first differences.
template <class Tag>
double max_second_partial_error(const acm3::TensorField<Tag>& f, const acm3::ChartPoint& p, std::size_t a,
                                std::size_t b, double h = 1e-4) {
  const acm3::JetArray jets = f(p, 2);
  const auto first = [&](const acm3::ChartPoint& q) { return central_difference(values_of(f), q, b, h); };
  const std::vector<double> fd = central_difference(first, p, a, h);
  double worst = 0.0;
  for (std::size_t i = 0; i < jets.size(); ++i)
    worst = std::max(worst, relative_error(jets[i].partial({a, b}), fd[i]));
  return worst;
}

/// Christoffel symbols G^k_ij at (k, i, j) from differenced metric values.
template <class Tag>
std::vector<double> christoffel_by_differences(const acm3::TensorField<Tag>& g, const acm3::ChartPoint& p) {
  const std::size_t m = g.dim();
  const Eigen::MatrixXd ginv = g(p, 0).values_matrix().inverse();
  std::vector<std::vector<double>> dg(m);
  for (std::size_t a = 0; a < m; ++a) dg[a] = central_difference(values_of(g), p, a);
  const auto d = [&](std::size_t a, std::size_t i, std::size_t j) { return dg[a][i * m + j]; };
  std::vector<double> r(m * m * m, 0.0);
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t l = 0; l < m; ++l)
          r[(k * m + i) * m + j] += 0.5 * ginv(k, l) * (d(i, j, l) + d(j, i, l) - d(l, i, j));
  return r;
}

}  // namespace oracle
