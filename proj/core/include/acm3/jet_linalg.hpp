#pragma once

// Dense arrays of jets and the small amount of linear algebra the geometry
// layer needs on them (products, inverses, linear solves).

#include <cstddef>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "acm3/jet.hpp"

namespace acm3 {

/// Row-major multi-dimensional array of jets (rank 1 to 4).
class JetArray {
 public:
  JetArray(std::vector<std::size_t> shape, const Jet& fill);
  static JetArray zeros(std::vector<std::size_t> shape, std::size_t dim, int order);
  static JetArray from_vector(const Eigen::VectorXd& v, std::size_t dim, int order);
  static JetArray from_matrix(const Eigen::MatrixXd& m, std::size_t dim, int order);

  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t extent(std::size_t axis) const { return shape_.at(axis); }
  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return data_.size(); }
  /// Minimum order over all entries.
  int order() const;
  std::size_t jet_dim() const { return data_.front().dim(); }

  Jet& operator[](std::size_t flat) { return data_[flat]; }
  const Jet& operator[](std::size_t flat) const { return data_[flat]; }
  Jet& operator()(std::size_t i) { return data_[i]; }
  const Jet& operator()(std::size_t i) const { return data_[i]; }
  Jet& operator()(std::size_t i, std::size_t j) { return data_[i * shape_[1] + j]; }
  const Jet& operator()(std::size_t i, std::size_t j) const { return data_[i * shape_[1] + j]; }
  Jet& operator()(std::size_t i, std::size_t j, std::size_t k) {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }
  const Jet& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * shape_[1] + j) * shape_[2] + k];
  }

  JetArray truncate(int order) const;
  /// Entrywise d/du_axis.
  JetArray derivative(std::size_t axis) const;

  /// Value parts (rank 1 only).
  Eigen::VectorXd values_vector() const;
  /// Value parts (rank 2 only).
  Eigen::MatrixXd values_matrix() const;
  /// Value parts, flattened row-major (any rank).
  std::vector<double> values() const;

  JetArray& operator+=(const JetArray& rhs);
  JetArray& operator-=(const JetArray& rhs);
  JetArray& operator*=(double s);
  JetArray& operator*=(const Jet& s);

  friend JetArray operator+(JetArray a, const JetArray& b) { return a += b; }
  friend JetArray operator-(JetArray a, const JetArray& b) { return a -= b; }
  friend JetArray operator*(JetArray a, double s) { return a *= s; }
  friend JetArray operator*(double s, JetArray a) { return a *= s; }
  friend JetArray operator*(JetArray a, const Jet& s) { return a *= s; }
  friend JetArray operator*(const Jet& s, JetArray a) { return a *= s; }

 private:
  void check_same_shape(const JetArray& rhs) const;

  std::vector<std::size_t> shape_;
  std::vector<Jet> data_;
};

/// Matrix product of rank-2 arrays (or rank-2 times rank-1).
JetArray matmul(const JetArray& a, const JetArray& b);
/// Transpose of a rank-2 array.
JetArray transpose(const JetArray& a);
/// Inner product of two rank-1 arrays.
Jet dot(const JetArray& a, const JetArray& b);

/// Solves A X = B (B rank 1 or 2) by Gaussian elimination with partial
/// pivoting on the value parts. Throws std::domain_error if A is singular.
JetArray solve(const JetArray& a, const JetArray& b);
/// Matrix inverse via solve().
JetArray inverse(const JetArray& a);

}  // namespace acm3
