#include "acm3/jet_linalg.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace acm3 {

namespace {

std::size_t product(const std::vector<std::size_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1}, std::multiplies<>());
}

}  // namespace

JetArray::JetArray(std::vector<std::size_t> shape, const Jet& fill)
    : shape_(std::move(shape)), data_(product(shape_), fill) {
  if (shape_.empty() || shape_.size() > 4) throw std::invalid_argument("JetArray rank must be 1..4");
  if (data_.empty()) throw std::invalid_argument("JetArray must be non-empty");
}

JetArray JetArray::zeros(std::vector<std::size_t> shape, std::size_t dim, int order) {
  return JetArray(std::move(shape), Jet(dim, order));
}

JetArray JetArray::from_vector(const Eigen::VectorXd& v, std::size_t dim, int order) {
  JetArray r = zeros({static_cast<std::size_t>(v.size())}, dim, order);
  for (Eigen::Index i = 0; i < v.size(); ++i) r.data_[static_cast<std::size_t>(i)] += v[i];
  return r;
}

JetArray JetArray::from_matrix(const Eigen::MatrixXd& m, std::size_t dim, int order) {
  const auto rows = static_cast<std::size_t>(m.rows());
  const auto cols = static_cast<std::size_t>(m.cols());
  JetArray r = zeros({rows, cols}, dim, order);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      r(i, j) += m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return r;
}

int JetArray::order() const {
  int o = kMaxJetOrder;
  for (const auto& j : data_) o = std::min(o, j.order());
  return o;
}

JetArray JetArray::truncate(int order) const {
  JetArray r = *this;
  for (auto& j : r.data_) j = j.truncate(order);
  return r;
}

JetArray JetArray::derivative(std::size_t axis) const {
  JetArray r = *this;
  for (auto& j : r.data_) j = j.derivative(axis);
  return r;
}

Eigen::VectorXd JetArray::values_vector() const {
  if (rank() != 1) throw std::logic_error("values_vector() on a non-vector JetArray");
  Eigen::VectorXd v(static_cast<Eigen::Index>(data_.size()));
  for (std::size_t i = 0; i < data_.size(); ++i) v[static_cast<Eigen::Index>(i)] = data_[i].value();
  return v;
}

Eigen::MatrixXd JetArray::values_matrix() const {
  if (rank() != 2) throw std::logic_error("values_matrix() on a non-matrix JetArray");
  Eigen::MatrixXd m(static_cast<Eigen::Index>(shape_[0]), static_cast<Eigen::Index>(shape_[1]));
  for (std::size_t i = 0; i < shape_[0]; ++i)
    for (std::size_t j = 0; j < shape_[1]; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).value();
  return m;
}

std::vector<double> JetArray::values() const {
  std::vector<double> v(data_.size());
  for (std::size_t i = 0; i < data_.size(); ++i) v[i] = data_[i].value();
  return v;
}

void JetArray::check_same_shape(const JetArray& rhs) const {
  if (shape_ != rhs.shape_) throw std::invalid_argument("JetArray shape mismatch");
}

JetArray& JetArray::operator+=(const JetArray& rhs) {
  check_same_shape(rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

JetArray& JetArray::operator-=(const JetArray& rhs) {
  check_same_shape(rhs);
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

JetArray& JetArray::operator*=(double s) {
  for (auto& j : data_) j *= s;
  return *this;
}

JetArray& JetArray::operator*=(const Jet& s) {
  for (auto& j : data_) j = j * s;
  return *this;
}

JetArray matmul(const JetArray& a, const JetArray& b) {
  if (a.rank() != 2) throw std::invalid_argument("matmul: lhs must be rank 2");
  const std::size_t rows = a.extent(0);
  const std::size_t inner = a.extent(1);
  if (b.extent(0) != inner) throw std::invalid_argument("matmul: inner dimension mismatch");
  const int order = std::min(a.order(), b.order());
  const std::size_t dim = a.jet_dim();
  if (b.rank() == 1) {
    JetArray r = JetArray::zeros({rows}, dim, order);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < inner; ++k) r(i) += a(i, k) * b(k);
    return r;
  }
  if (b.rank() != 2) throw std::invalid_argument("matmul: rhs must be rank 1 or 2");
  const std::size_t cols = b.extent(1);
  JetArray r = JetArray::zeros({rows, cols}, dim, order);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      const Jet& aik = a(i, k);
      bool zero = true;
      for (double c : aik.coefficients())
        if (c != 0.0) {
          zero = false;
          break;
        }
      if (zero) continue;
      for (std::size_t j = 0; j < cols; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

JetArray transpose(const JetArray& a) {
  if (a.rank() != 2) throw std::invalid_argument("transpose: rank must be 2");
  JetArray r({a.extent(1), a.extent(0)}, a[0]);
  for (std::size_t i = 0; i < a.extent(0); ++i)
    for (std::size_t j = 0; j < a.extent(1); ++j) r(j, i) = a(i, j);
  return r;
}

Jet dot(const JetArray& a, const JetArray& b) {
  if (a.rank() != 1 || b.rank() != 1 || a.size() != b.size())
    throw std::invalid_argument("dot: rank-1 arrays of equal length required");
  Jet r = a(0) * b(0);
  for (std::size_t i = 1; i < a.size(); ++i) r += a(i) * b(i);
  return r;
}

JetArray solve(const JetArray& a, const JetArray& b) {
  if (a.rank() != 2 || a.extent(0) != a.extent(1)) throw std::invalid_argument("solve: square matrix required");
  const std::size_t n = a.extent(0);
  if (b.extent(0) != n) throw std::invalid_argument("solve: right-hand side has wrong length");
  const bool vector_rhs = b.rank() == 1;
  const std::size_t cols = vector_rhs ? 1 : b.extent(1);

  std::vector<Jet> m;
  m.reserve(n * n);
  for (std::size_t i = 0; i < n * n; ++i) m.push_back(a[i]);
  std::vector<Jet> x;
  x.reserve(n * cols);
  for (std::size_t i = 0; i < n * cols; ++i) x.push_back(b[i]);

  double scale = 0.0;
  for (const auto& j : m) scale = std::max(scale, std::abs(j.value()));
  if (scale == 0.0) throw std::domain_error("solve: zero matrix");

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(m[i * n + k].value()) > std::abs(m[piv * n + k].value())) piv = i;
    if (std::abs(m[piv * n + k].value()) <= 1e-13 * scale) throw std::domain_error("solve: singular matrix");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[k * n + j], m[piv * n + j]);
      for (std::size_t j = 0; j < cols; ++j) std::swap(x[k * cols + j], x[piv * cols + j]);
    }
    const Jet inv_pivot = reciprocal(m[k * n + k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i * n + k].value() == 0.0) {
        bool zero = true;
        for (double c : m[i * n + k].coefficients())
          if (c != 0.0) {
            zero = false;
            break;
          }
        if (zero) continue;
      }
      const Jet f = m[i * n + k] * inv_pivot;
      for (std::size_t j = k + 1; j < n; ++j) m[i * n + j] -= f * m[k * n + j];
      for (std::size_t j = 0; j < cols; ++j) x[i * cols + j] -= f * x[k * cols + j];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    const Jet inv_pivot = reciprocal(m[k * n + k]);
    for (std::size_t j = 0; j < cols; ++j) {
      Jet acc = x[k * cols + j];
      for (std::size_t l = k + 1; l < n; ++l) acc -= m[k * n + l] * x[l * cols + j];
      x[k * cols + j] = acc * inv_pivot;
    }
  }

  JetArray r = vector_rhs ? JetArray({n}, x[0]) : JetArray({n, cols}, x[0]);
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = x[i];
  return r;
}

JetArray inverse(const JetArray& a) {
  const std::size_t n = a.extent(0);
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  return solve(a, JetArray::from_matrix(id, a.jet_dim(), a.order()));
}

}  // namespace acm3
