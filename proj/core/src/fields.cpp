#include "acm3/fields.hpp"

#include <algorithm>
#include <stdexcept>

namespace acm3 {

ScalarField::ScalarField(std::size_t dim, Evaluator eval)
    : dim_(dim), eval_(std::make_shared<const Evaluator>(std::move(eval))) {}

Jet ScalarField::operator()(const ChartPoint& p, int order) const {
  require_order(order);
  if (p.dim() != dim_) throw std::invalid_argument("chart point dimension does not match field");
  return (*eval_)(p, order);
}

ScalarField constant_scalar(std::size_t dim, double value) {
  return ScalarField(dim, [dim, value](const ChartPoint&, int order) { return Jet::constant(dim, order, value); });
}

ScalarField coordinate_function(std::size_t dim, std::size_t axis) {
  if (axis >= dim) throw std::out_of_range("coordinate axis out of range");
  return ScalarField(dim, [axis](const ChartPoint& p, int order) { return Jet::variable(axis, p, order); });
}

namespace {

Eigen::VectorXd unit(std::size_t dim, std::size_t axis) {
  if (axis >= dim) throw std::out_of_range("coordinate axis out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(axis)] = 1.0;
  return v;
}

std::vector<double> flatten(const Eigen::MatrixXd& a) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(a.size()));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) v.push_back(a(i, j));
  return v;
}

template <class Tag>
TensorField<Tag> constant_rank1(const Eigen::VectorXd& v) {
  const auto m = static_cast<std::size_t>(v.size());
  return constant_tensor<Tag>(m, {m}, std::vector<double>(v.data(), v.data() + v.size()));
}

template <class Tag>
TensorField<Tag> constant_rank2(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("square matrix required");
  const auto m = static_cast<std::size_t>(a.rows());
  return constant_tensor<Tag>(m, {m, m}, flatten(a));
}

template <class Tag>
TensorField<Tag> from_components(std::vector<ScalarField> components) {
  if (components.empty()) throw std::invalid_argument("empty component list");
  const std::size_t m = components.front().dim();
  if (components.size() != m) throw std::invalid_argument("component count must equal chart dimension");
  auto comps = std::make_shared<const std::vector<ScalarField>>(std::move(components));
  return TensorField<Tag>(m, [m, comps](const ChartPoint& p, int order) {
    JetArray r = JetArray::zeros({m}, m, order);
    for (std::size_t i = 0; i < m; ++i) r(i) = (*comps)[i](p, order);
    return r;
  });
}

}  // namespace

VectorField coordinate_vector(std::size_t dim, std::size_t axis) { return constant_vector(unit(dim, axis)); }
OneFormField coordinate_one_form(std::size_t dim, std::size_t axis) { return constant_one_form(unit(dim, axis)); }

VectorField constant_vector(const Eigen::VectorXd& v) { return constant_rank1<VectorTag>(v); }
OneFormField constant_one_form(const Eigen::VectorXd& w) { return constant_rank1<OneFormTag>(w); }
EndomorphismField constant_endomorphism(const Eigen::MatrixXd& a) { return constant_rank2<EndomorphismTag>(a); }
MetricField constant_metric(const Eigen::MatrixXd& g) { return constant_rank2<MetricTag>(g); }
BilinearField constant_bilinear(const Eigen::MatrixXd& b) { return constant_rank2<BilinearTag>(b); }

EndomorphismField identity_endomorphism(std::size_t dim) {
  return constant_endomorphism(
      Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim)));
}

VectorField vector_from_components(std::vector<ScalarField> components) {
  return from_components<VectorTag>(std::move(components));
}

OneFormField one_form_from_components(std::vector<ScalarField> components) {
  return from_components<OneFormTag>(std::move(components));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return ScalarField(a.dim(), [a, b](const ChartPoint& p, int order) { return a(p, order) + b(p, order); });
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return ScalarField(a.dim(), [a, b](const ChartPoint& p, int order) { return a(p, order) - b(p, order); });
}

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
  return ScalarField(a.dim(), [a, b](const ChartPoint& p, int order) { return a(p, order) * b(p, order); });
}

ScalarField operator*(double s, const ScalarField& a) {
  return ScalarField(a.dim(), [a, s](const ChartPoint& p, int order) { return a(p, order) * s; });
}

// ---------------------------------------------------------------------------

JetArray apply_array(const JetArray& a, const JetArray& x) { return matmul(a, x); }

Jet contract_array(const JetArray& w, const JetArray& x) { return dot(w, x); }

Jet bilinear_array(const JetArray& b, const JetArray& x, const JetArray& y) {
  return dot(x, matmul(b, y));
}

JetArray directional_array(const JetArray& x, const JetArray& y_higher) {
  const std::size_t m = y_higher.jet_dim();
  const int order = std::min(x.order(), y_higher.order() - 1);
  JetArray r = JetArray::zeros(y_higher.shape(), m, order);
  for (std::size_t j = 0; j < m; ++j) {
    const JetArray dy = y_higher.derivative(j);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += x(j) * dy[i];
  }
  return r;
}

ScalarField component(const VectorField& x, std::size_t i) {
  if (i >= x.dim()) throw std::out_of_range("component index out of range");
  return ScalarField(x.dim(), [x, i](const ChartPoint& p, int order) { return x(p, order)(i); });
}

VectorField apply(const EndomorphismField& a, const VectorField& x) {
  return VectorField(x.dim(), [a, x](const ChartPoint& p, int order) { return matmul(a(p, order), x(p, order)); });
}

EndomorphismField compose(const EndomorphismField& a, const EndomorphismField& b) {
  return EndomorphismField(a.dim(),
                           [a, b](const ChartPoint& p, int order) { return matmul(a(p, order), b(p, order)); });
}

ScalarField contract(const OneFormField& w, const VectorField& x) {
  return ScalarField(x.dim(), [w, x](const ChartPoint& p, int order) { return dot(w(p, order), x(p, order)); });
}

OneFormField pull_back(const OneFormField& w, const EndomorphismField& a) {
  return OneFormField(w.dim(), [w, a](const ChartPoint& p, int order) {
    return matmul(transpose(a(p, order)), w(p, order));
  });
}

ScalarField inner(const MetricField& g, const VectorField& x, const VectorField& y) {
  return evaluate_bilinear(g, x, y);
}

ScalarField evaluate_form(const TwoFormField& w, const VectorField& x, const VectorField& y) {
  return evaluate_bilinear(w, x, y);
}

ScalarField evaluate_form(const ThreeFormField& w, const VectorField& x, const VectorField& y, const VectorField& z) {
  return ScalarField(w.dim(), [w, x, y, z](const ChartPoint& p, int order) {
    const JetArray a = w(p, order);
    const JetArray xv = x(p, order), yv = y(p, order), zv = z(p, order);
    const std::size_t m = xv.size();
    Jet r(m, order);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) r += a(i, j, k) * xv(i) * yv(j) * zv(k);
    return r;
  });
}

VectorField evaluate_vector_form(const VectorTwoFormField& n, const VectorField& x, const VectorField& y) {
  return VectorField(n.dim(), [n, x, y](const ChartPoint& p, int order) {
    const JetArray a = n(p, order);
    const JetArray xv = x(p, order), yv = y(p, order);
    const std::size_t m = xv.size();
    JetArray r = JetArray::zeros({m}, m, order);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = 0; k < m; ++k) r(i) += a(i, j, k) * xv(j) * yv(k);
    return r;
  });
}

EndomorphismField tensor_product(const VectorField& x, const OneFormField& w) {
  return EndomorphismField(x.dim(), [x, w](const ChartPoint& p, int order) {
    const JetArray xv = x(p, order), wv = w(p, order);
    const std::size_t m = xv.size();
    JetArray r = JetArray::zeros({m, m}, m, order);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) r(i, j) = xv(i) * wv(j);
    return r;
  });
}

BilinearField tensor_product(const OneFormField& a, const OneFormField& b) {
  return BilinearField(a.dim(), [a, b](const ChartPoint& p, int order) {
    const JetArray av = a(p, order), bv = b(p, order);
    const std::size_t m = av.size();
    JetArray r = JetArray::zeros({m, m}, m, order);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) r(i, j) = av(i) * bv(j);
    return r;
  });
}

ScalarField partial(const ScalarField& f, std::size_t axis) {
  if (axis >= f.dim()) throw std::out_of_range("partial: axis out of range");
  return ScalarField(f.dim(), [f, axis](const ChartPoint& p, int order) {
    require_order(order + 1);
    return f(p, order + 1).derivative(axis);
  });
}

ScalarField directional_derivative(const VectorField& x, const ScalarField& f) {
  return ScalarField(f.dim(), [x, f](const ChartPoint& p, int order) {
    require_order(order + 1);
    const Jet fh = f(p, order + 1);
    const JetArray xv = x(p, order);
    Jet r(f.dim(), order);
    for (std::size_t j = 0; j < f.dim(); ++j) r += xv(j) * fh.derivative(j);
    return r;
  });
}

}  // namespace acm3
