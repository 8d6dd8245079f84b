#pragma once

// Tensor fields on a single chart.
//
// A field is a pure map (chart point, order) -> jet-valued components. Any
// field built from other fields requests whatever extra orders it needs from
// its inputs, so derivatives of derived quantities come out exact up to the
// active order budget.
//
// Index conventions (m = chart dimension):
//   VectorField        X^i                shape {m}
//   OneFormField       w_i                shape {m}
//   EndomorphismField  A^i_j at (i, j)    shape {m, m}   (A X)^i = A^i_j X^j
//   MetricField        g_ij               shape {m, m}
//   BilinearField      b_ij               shape {m, m}
//   TwoFormField       w_ij antisymmetric shape {m, m}
//   ThreeFormField     w_ijk              shape {m, m, m}
//   VectorTwoFormField N^i_jk at (i,j,k)  shape {m, m, m}
//   ConnectionField    G^k_ij at (k,i,j)  shape {m, m, m}  nabla_{d_i} d_j = G^k_ij d_k
//
// Forms use the half convention: (a ^ b)(X, Y) = 1/2 (a(X) b(Y) - a(Y) b(X)),
// so the component array of a two-form is w_ij = w(d_i, d_j) and
// dw(X, Y) = 1/2 (X w(Y) - Y w(X) - w([X, Y])).

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "acm3/jet.hpp"
#include "acm3/jet_linalg.hpp"

namespace acm3 {

struct VectorTag {
  static constexpr std::size_t rank = 1;
  static constexpr const char* name = "vector";
};
struct OneFormTag {
  static constexpr std::size_t rank = 1;
  static constexpr const char* name = "one-form";
};
struct EndomorphismTag {
  static constexpr std::size_t rank = 2;
  static constexpr const char* name = "endomorphism";
};
struct MetricTag {
  static constexpr std::size_t rank = 2;
  static constexpr const char* name = "metric";
};
struct BilinearTag {
  static constexpr std::size_t rank = 2;
  static constexpr const char* name = "bilinear";
};
struct TwoFormTag {
  static constexpr std::size_t rank = 2;
  static constexpr const char* name = "two-form";
};
struct ThreeFormTag {
  static constexpr std::size_t rank = 3;
  static constexpr const char* name = "three-form";
};
struct VectorTwoFormTag {
  static constexpr std::size_t rank = 3;
  static constexpr const char* name = "vector-valued two-form";
};
struct ConnectionTag {
  static constexpr std::size_t rank = 3;
  static constexpr const char* name = "connection coefficients";
};

/// Scalar function on the chart.
class ScalarField {
 public:
  using Evaluator = std::function<Jet(const ChartPoint&, int)>;

  ScalarField(std::size_t dim, Evaluator eval);

  std::size_t dim() const noexcept { return dim_; }
  /// Jet of the field at p. Throws OrderBudgetExceeded past the budget.
  Jet operator()(const ChartPoint& p, int order) const;
  double value(const ChartPoint& p) const { return (*this)(p, 0).value(); }

 private:
  std::size_t dim_;
  std::shared_ptr<const Evaluator> eval_;
};

/// Tensor field with components described by Tag.
template <class Tag>
class TensorField {
 public:
  using tag = Tag;
  using Evaluator = std::function<JetArray(const ChartPoint&, int)>;

  TensorField(std::size_t dim, Evaluator eval)
      : dim_(dim), eval_(std::make_shared<const Evaluator>(std::move(eval))) {}

  std::size_t dim() const noexcept { return dim_; }

  JetArray operator()(const ChartPoint& p, int order) const {
    require_order(order);
    if (p.dim() != dim_) throw std::invalid_argument("chart point dimension does not match field");
    JetArray r = (*eval_)(p, order);
    if (r.rank() != Tag::rank) throw std::logic_error(std::string("evaluator returned wrong rank for ") + Tag::name);
    return r;
  }

  /// Component values at p (order 0).
  JetArray at(const ChartPoint& p) const { return (*this)(p, 0); }

 private:
  std::size_t dim_;
  std::shared_ptr<const Evaluator> eval_;
};

using VectorField = TensorField<VectorTag>;
using OneFormField = TensorField<OneFormTag>;
using EndomorphismField = TensorField<EndomorphismTag>;
using MetricField = TensorField<MetricTag>;
using BilinearField = TensorField<BilinearTag>;
using TwoFormField = TensorField<TwoFormTag>;
using ThreeFormField = TensorField<ThreeFormTag>;
using VectorTwoFormField = TensorField<VectorTwoFormTag>;
using ConnectionField = TensorField<ConnectionTag>;

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

ScalarField constant_scalar(std::size_t dim, double value);
/// The coordinate function u_axis.
ScalarField coordinate_function(std::size_t dim, std::size_t axis);

/// d/du_axis.
VectorField coordinate_vector(std::size_t dim, std::size_t axis);
/// du_axis.
OneFormField coordinate_one_form(std::size_t dim, std::size_t axis);

VectorField constant_vector(const Eigen::VectorXd& v);
OneFormField constant_one_form(const Eigen::VectorXd& w);
EndomorphismField constant_endomorphism(const Eigen::MatrixXd& a);
MetricField constant_metric(const Eigen::MatrixXd& g);
BilinearField constant_bilinear(const Eigen::MatrixXd& b);
EndomorphismField identity_endomorphism(std::size_t dim);

/// Field whose components are the given scalar fields.
VectorField vector_from_components(std::vector<ScalarField> components);
OneFormField one_form_from_components(std::vector<ScalarField> components);

template <class Tag>
TensorField<Tag> constant_tensor(std::size_t dim, std::vector<std::size_t> shape, std::vector<double> values) {
  auto data = std::make_shared<std::vector<double>>(std::move(values));
  return TensorField<Tag>(dim, [dim, shape, data](const ChartPoint&, int order) {
    JetArray r = JetArray::zeros(shape, dim, order);
    for (std::size_t i = 0; i < data->size(); ++i) r[i] += (*data)[i];
    return r;
  });
}

/// Reinterpret the components of a field under another tag (same rank).
template <class To, class From>
TensorField<To> retag(const TensorField<From>& f) {
  static_assert(To::rank == From::rank, "retag requires equal ranks");
  return TensorField<To>(f.dim(), [f](const ChartPoint& p, int order) { return f(p, order); });
}

/// Small bounded cache of (point, order) -> value. Serves lower orders by
/// truncating a cached higher-order result.
template <class Value>
class EvaluationCache {
 public:
  explicit EvaluationCache(std::size_t capacity = 16) : capacity_(capacity) {}

  std::optional<Value> find(const ChartPoint& p, int order) const {
    std::lock_guard lock(mutex_);
    for (const auto& e : entries_)
      if (e.order >= order && e.coords == p.coords()) return e.order == order ? e.value : e.value.truncate(order);
    return std::nullopt;
  }

  void insert(const ChartPoint& p, int order, const Value& v) const {
    std::lock_guard lock(mutex_);
    if (entries_.size() >= capacity_) entries_.erase(entries_.begin());
    entries_.push_back({p.coords(), order, v});
  }

 private:
  struct Entry {
    std::vector<double> coords;
    int order;
    Value value;
  };
  std::size_t capacity_;
  mutable std::mutex mutex_;
  mutable std::vector<Entry> entries_;
};

/// Same field, with recent evaluations cached. Evaluation stays pure.
template <class Tag>
TensorField<Tag> memoize(const TensorField<Tag>& f, std::size_t capacity = 16) {
  auto cache = std::make_shared<EvaluationCache<JetArray>>(capacity);
  return TensorField<Tag>(f.dim(), [f, cache](const ChartPoint& p, int order) {
    if (auto hit = cache->find(p, order)) return *hit;
    JetArray v = f(p, order);
    cache->insert(p, order, v);
    return v;
  });
}

// ---------------------------------------------------------------------------
// Linear combinators
// ---------------------------------------------------------------------------

template <class Tag>
TensorField<Tag> operator+(const TensorField<Tag>& a, const TensorField<Tag>& b) {
  return TensorField<Tag>(a.dim(), [a, b](const ChartPoint& p, int order) { return a(p, order) + b(p, order); });
}

template <class Tag>
TensorField<Tag> operator-(const TensorField<Tag>& a, const TensorField<Tag>& b) {
  return TensorField<Tag>(a.dim(), [a, b](const ChartPoint& p, int order) { return a(p, order) - b(p, order); });
}

template <class Tag>
TensorField<Tag> operator-(const TensorField<Tag>& a) {
  return TensorField<Tag>(a.dim(), [a](const ChartPoint& p, int order) { return a(p, order) * -1.0; });
}

template <class Tag>
TensorField<Tag> operator*(double s, const TensorField<Tag>& a) {
  return TensorField<Tag>(a.dim(), [a, s](const ChartPoint& p, int order) { return a(p, order) * s; });
}

template <class Tag>
TensorField<Tag> operator*(const ScalarField& f, const TensorField<Tag>& a) {
  return TensorField<Tag>(a.dim(), [a, f](const ChartPoint& p, int order) { return a(p, order) * f(p, order); });
}

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);

// ---------------------------------------------------------------------------
// Pointwise algebra
// ---------------------------------------------------------------------------

/// X^i, as a scalar field.
ScalarField component(const VectorField& x, std::size_t i);
/// A X.
VectorField apply(const EndomorphismField& a, const VectorField& x);
/// A B.
EndomorphismField compose(const EndomorphismField& a, const EndomorphismField& b);
/// w(X).
ScalarField contract(const OneFormField& w, const VectorField& x);
/// w o A, i.e. (w o A)_j = w_i A^i_j.
OneFormField pull_back(const OneFormField& w, const EndomorphismField& a);
/// b(X, Y) for any covariant two-tensor.
template <class Tag>
ScalarField evaluate_bilinear(const TensorField<Tag>& b, const VectorField& x, const VectorField& y);
/// g(X, Y).
ScalarField inner(const MetricField& g, const VectorField& x, const VectorField& y);
/// w(X, Y) of a two-form.
ScalarField evaluate_form(const TwoFormField& w, const VectorField& x, const VectorField& y);
/// w(X, Y, Z) of a three-form.
ScalarField evaluate_form(const ThreeFormField& w, const VectorField& x, const VectorField& y, const VectorField& z);
/// N(X, Y) of a vector-valued two-form.
VectorField evaluate_vector_form(const VectorTwoFormField& n, const VectorField& x, const VectorField& y);
/// The endomorphism X (x) w: E -> w(E) X.
EndomorphismField tensor_product(const VectorField& x, const OneFormField& w);
/// Symmetric bilinear field a (x) b: (X, Y) -> a(X) b(Y).
BilinearField tensor_product(const OneFormField& a, const OneFormField& b);

/// d f / du_axis.
ScalarField partial(const ScalarField& f, std::size_t axis);
/// X(f) = X^i d_i f.
ScalarField directional_derivative(const VectorField& x, const ScalarField& f);

// ---------------------------------------------------------------------------
// Pointwise helpers on evaluated component arrays
// ---------------------------------------------------------------------------

/// (A x)^i for jet arrays.
JetArray apply_array(const JetArray& a, const JetArray& x);
/// w_i x^i for jet arrays.
Jet contract_array(const JetArray& w, const JetArray& x);
/// b_ij x^i y^j for jet arrays.
Jet bilinear_array(const JetArray& b, const JetArray& x, const JetArray& y);
/// X^j d_j Y^i where x has order K and y has order K + 1.
JetArray directional_array(const JetArray& x, const JetArray& y_higher);

template <class Tag>
ScalarField evaluate_bilinear(const TensorField<Tag>& b, const VectorField& x, const VectorField& y) {
  static_assert(Tag::rank == 2, "evaluate_bilinear requires a rank-2 covariant field");
  return ScalarField(b.dim(), [b, x, y](const ChartPoint& p, int order) {
    return bilinear_array(b(p, order), x(p, order), y(p, order));
  });
}

}  // namespace acm3
