#pragma once

// Truncated multivariate Taylor jets.
//
// A Jet of order K in m variables carries the value and every partial
// derivative of total degree <= K of a scalar quantity at one chart point.
// Internally the coefficients are stored in Taylor form
//
//     f(p + h) = sum_alpha c_alpha h^alpha,   c_alpha = (d^alpha f)(p) / alpha!
//
// indexed by monomials ordered first by degree, then lexicographically on the
// sorted axis tuple. Because the ordering is degree-major, the coefficients of
// an order-K jet are a prefix of the coefficients of an order-(K+1) jet, so
// truncation is a resize and all orders share one layout table per dimension.

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace acm3 {

/// Highest derivative order any jet may carry.
inline constexpr int kMaxJetOrder = 3;

/// Thrown when a computation needs more derivatives than the active budget.
class OrderBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Order budget in effect on the calling thread (defaults to kMaxJetOrder).
int order_budget() noexcept;

/// RAII guard lowering the order budget for the current thread.
class ScopedOrderBudget {
 public:
  explicit ScopedOrderBudget(int budget);
  ~ScopedOrderBudget();
  ScopedOrderBudget(const ScopedOrderBudget&) = delete;
  ScopedOrderBudget& operator=(const ScopedOrderBudget&) = delete;

 private:
  int previous_;
};

/// Throws OrderBudgetExceeded unless 0 <= order <= order_budget().
void require_order(int order);

/// A point of a coordinate chart. Entries are finite by construction.
class ChartPoint {
 public:
  ChartPoint() = default;
  explicit ChartPoint(std::vector<double> coords);
  ChartPoint(std::initializer_list<double> coords);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const noexcept { return coords_; }

 private:
  std::vector<double> coords_;
};

/// Monomial bookkeeping shared by all jets of one dimension.
class JetLayout {
 public:
  struct Product {
    std::uint32_t lhs;
    std::uint32_t rhs;
    std::uint32_t out;
  };

  /// Process-wide immutable layout for `dim` variables.
  static const JetLayout& for_dim(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }
  /// Number of monomials of total degree <= order.
  std::size_t size(int order) const { return offsets_.at(static_cast<std::size_t>(order) + 1); }
  int degree(std::size_t index) const { return degree_[index]; }
  /// Sorted axis tuple of a monomial (length == degree).
  std::span<const std::uint16_t> axes(std::size_t index) const;
  int exponent(std::size_t index, std::size_t axis) const;
  /// alpha! for the monomial at `index`.
  double factorial(std::size_t index) const { return factorial_[index]; }
  /// Index of the monomial with the given axes (any order). Throws if degree > kMaxJetOrder.
  std::size_t index_of(std::span<const std::size_t> axes) const;
  /// Index of monomial * u_axis, or -1 when that exceeds kMaxJetOrder.
  std::ptrdiff_t raised(std::size_t index, std::size_t axis) const {
    return raised_[index * dim_ + axis];
  }
  /// Cauchy-product terms whose output degree is <= order.
  std::span<const Product> products(int order) const;

  JetLayout(const JetLayout&) = delete;
  JetLayout& operator=(const JetLayout&) = delete;

 private:
  explicit JetLayout(std::size_t dim);
  friend struct JetLayoutRegistry;

  std::size_t dim_;
  std::vector<std::size_t> offsets_;  // offsets_[k] = #monomials of degree < k
  std::vector<std::array<std::uint16_t, kMaxJetOrder>> axes_;
  std::vector<int> degree_;
  std::vector<double> factorial_;
  std::vector<std::ptrdiff_t> raised_;
  std::vector<Product> products_;
  std::vector<std::size_t> product_counts_;  // per output order
};

/// Truncated Taylor jet. Immutable value semantics; arithmetic follows the
/// Leibniz and chain rules exactly up to the jet order.
class Jet {
 public:
  /// Zero jet.
  Jet(std::size_t dim, int order);

  static Jet constant(std::size_t dim, int order, double value);
  /// Jet of the coordinate function u_axis at p.
  static Jet variable(std::size_t axis, const ChartPoint& p, int order);

  std::size_t dim() const noexcept { return layout_->dim(); }
  int order() const noexcept { return order_; }
  double value() const noexcept { return coeffs_[0]; }

  /// Partial derivative d^{axes} f at the base point (empty list = value).
  double partial(std::initializer_list<std::size_t> axes) const;
  double partial(std::span<const std::size_t> axes) const;

  /// Raw Taylor coefficients (length layout.size(order)).
  std::span<const double> coefficients() const noexcept { return coeffs_; }
  std::span<double> coefficients() noexcept { return coeffs_; }
  const JetLayout& layout() const noexcept { return *layout_; }

  /// Restriction to a lower order.
  Jet truncate(int order) const;
  /// d/du_axis; the result has order() - 1.
  Jet derivative(std::size_t axis) const;

  Jet& operator+=(const Jet& rhs);
  Jet& operator-=(const Jet& rhs);
  Jet& operator*=(const Jet& rhs);
  Jet& operator/=(const Jet& rhs);
  Jet& operator+=(double rhs);
  Jet& operator-=(double rhs);
  Jet& operator*=(double rhs);
  Jet& operator/=(double rhs);

  friend Jet operator-(Jet a);
  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b);
  friend Jet operator+(Jet a, double b) { return a += b; }
  friend Jet operator+(double a, Jet b) { return b += a; }
  friend Jet operator-(Jet a, double b) { return a -= b; }
  friend Jet operator-(double a, const Jet& b) { return -b + a; }
  friend Jet operator*(Jet a, double b) { return a *= b; }
  friend Jet operator*(double a, Jet b) { return b *= a; }
  friend Jet operator/(Jet a, double b) { return a /= b; }
  friend Jet operator/(double a, const Jet& b);

 private:
  Jet(const JetLayout* layout, int order);
  void align_with(const Jet& rhs);
  friend Jet compose_univariate(const Jet& x, std::span<const double> taylor);

  const JetLayout* layout_;
  int order_;
  std::vector<double> coeffs_;
};

/// f(x) where `taylor[k]` = f^(k)(x0) / k! at x0 = x.value().
Jet compose_univariate(const Jet& x, std::span<const double> taylor);

Jet reciprocal(const Jet& x);
Jet sqrt(const Jet& x);
Jet square(const Jet& x);

/// Substitute du = A dw into the Taylor polynomial of f (A is dim x dim,
/// row-major). Used to re-express jets under affine changes of chart.
Jet substitute_linear(const Jet& f, std::span<const double> a_row_major);

/// Lift all coordinate functions at p to jets of the given order.
std::vector<Jet> lift_coordinates(const ChartPoint& p, int order);

/// Coordinate-function jet u_i at p (bounds-checked).
Jet jet_lift_coordinate(std::size_t axis, const ChartPoint& p, int order);

}  // namespace acm3
