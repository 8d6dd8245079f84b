#include "acm3/sampling.hpp"

#include <cmath>
#include <numbers>

namespace acm3 {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Eigen::VectorXd Rng::uniform_vector(std::size_t dim, double lo, double hi) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = uniform(lo, hi);
  return v;
}

Eigen::VectorXd Rng::normal_vector(std::size_t dim) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = normal();
  return v;
}

Eigen::MatrixXd Rng::orthogonal(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) a(i, j) = normal();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::vector<ChartPoint> sample_box(std::size_t dim, std::size_t count, double half_width, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ChartPoint> pts;
  pts.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const Eigen::VectorXd v = rng.uniform_vector(dim, -half_width, half_width);
    pts.emplace_back(std::vector<double>(v.data(), v.data() + v.size()));
  }
  return pts;
}

std::vector<ChartPoint> sample_ball(std::size_t dim, std::size_t count, double radius, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ChartPoint> pts;
  pts.reserve(count);
  while (pts.size() < count) {
    Eigen::VectorXd dir = rng.normal_vector(dim);
    const double norm = dir.norm();
    if (norm == 0.0) continue;
    const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
    const Eigen::VectorXd v = dir * (r / norm);
    if (v.norm() > radius) continue;
    pts.emplace_back(std::vector<double>(v.data(), v.data() + v.size()));
  }
  return pts;
}

}  // namespace acm3
