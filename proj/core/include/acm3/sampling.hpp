#pragma once

// Seeded sampling of chart points, tangent vectors and orthogonal matrices.

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "acm3/jet.hpp"

namespace acm3 {

/// Deterministic generator. Doubles are built from the top 53 bits so the
/// stream is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller on uniform()).
  double normal();
  std::uint64_t next() { return engine_(); }

  Eigen::VectorXd uniform_vector(std::size_t dim, double lo, double hi);
  Eigen::VectorXd normal_vector(std::size_t dim);
  /// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, sign-fixed).
  Eigen::MatrixXd orthogonal(std::size_t dim);

 private:
  std::mt19937_64 engine_;
};

/// Derived seed for an independent stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// Points uniform in the cube [-half_width, half_width]^dim.
std::vector<ChartPoint> sample_box(std::size_t dim, std::size_t count, double half_width, std::uint64_t seed);
/// Points uniform in the closed Euclidean ball of the given radius. Draws
/// that land on or beyond the boundary through rounding are rejected.
std::vector<ChartPoint> sample_ball(std::size_t dim, std::size_t count, double radius, std::uint64_t seed);

}  // namespace acm3
