#include "acm3/calculus.hpp"

namespace acm3 {

VectorField lie_bracket(const VectorField& x, const VectorField& y) {
  return VectorField(x.dim(), [x, y](const ChartPoint& p, int order) {
    require_order(order + 1);
    const JetArray xh = x(p, order + 1);
    const JetArray yh = y(p, order + 1);
    return directional_array(xh.truncate(order), yh) - directional_array(yh.truncate(order), xh);
  });
}

TwoFormField exterior_derivative(const OneFormField& w) {
  return TwoFormField(w.dim(), [w](const ChartPoint& p, int order) {
    require_order(order + 1);
    const JetArray wh = w(p, order + 1);
    const std::size_t m = wh.size();
    JetArray r = JetArray::zeros({m, m}, m, order);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        Jet v = (wh(j).derivative(i) - wh(i).derivative(j)) * 0.5;
        r(j, i) = -v;
        r(i, j) = std::move(v);
      }
    return r;
  });
}

ThreeFormField exterior_derivative(const TwoFormField& w) {
  return ThreeFormField(w.dim(), [w](const ChartPoint& p, int order) {
    require_order(order + 1);
    const JetArray wh = w(p, order + 1);
    const std::size_t m = wh.extent(0);
    std::vector<JetArray> dw;
    dw.reserve(m);
    for (std::size_t a = 0; a < m; ++a) dw.push_back(wh.derivative(a));
    JetArray r = JetArray::zeros({m, m, m}, m, order);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
          const Jet v = (dw[i](j, k) + dw[j](k, i) + dw[k](i, j)) * (1.0 / 3.0);
          r(i, j, k) = v;
          r(j, k, i) = v;
          r(k, i, j) = v;
          r(j, i, k) = -v;
          r(i, k, j) = -v;
          r(k, j, i) = -v;
        }
    return r;
  });
}

EndomorphismField lie_derivative_endo(const VectorField& xi, const EndomorphismField& phi) {
  return EndomorphismField(xi.dim(), [xi, phi](const ChartPoint& p, int order) {
    require_order(order + 1);
    const JetArray xh = xi(p, order + 1);
    const JetArray ph = phi(p, order + 1);
    const JetArray x = xh.truncate(order);
    const JetArray f = ph.truncate(order);
    const std::size_t m = x.size();
    // dxi(i, k) = d_k xi^i
    JetArray dxi = JetArray::zeros({m, m}, m, order);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) dxi(i, k) = xh(i).derivative(k);
    JetArray r = directional_array(x, ph);
    r -= matmul(dxi, f);
    r += matmul(f, dxi);
    return r;
  });
}

VectorField lie_derivative_endo_apply(const VectorField& xi, const EndomorphismField& phi, const VectorField& x) {
  return lie_bracket(xi, apply(phi, x)) - apply(phi, lie_bracket(xi, x));
}

BilinearField lie_derivative_metric(const VectorField& xi, const MetricField& g) {
  return BilinearField(xi.dim(), [xi, g](const ChartPoint& p, int order) {
    require_order(order + 1);
    const JetArray xh = xi(p, order + 1);
    const JetArray gh = g(p, order + 1);
    const JetArray gv = gh.truncate(order);
    const std::size_t m = xh.size();
    // dxi(k, i) = d_i xi^k
    JetArray dxi = JetArray::zeros({m, m}, m, order);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t i = 0; i < m; ++i) dxi(k, i) = xh(k).derivative(i);
    JetArray r = directional_array(xh.truncate(order), gh);
    const JetArray gd = matmul(gv, dxi);  // (g dxi)_ij = g_ik d_j xi^k
    r += gd;
    r += transpose(gd);
    return r;
  });
}

ScalarField lie_derivative_metric_apply(const VectorField& xi, const MetricField& g, const VectorField& x,
                                        const VectorField& y) {
  return directional_derivative(xi, inner(g, x, y)) - inner(g, lie_bracket(xi, x), y) -
         inner(g, x, lie_bracket(xi, y));
}

OneFormField musical_flat(const MetricField& g, const VectorField& x) {
  return OneFormField(x.dim(), [g, x](const ChartPoint& p, int order) { return matmul(g(p, order), x(p, order)); });
}

VectorField musical_sharp(const MetricField& g, const OneFormField& w) {
  return VectorField(w.dim(), [g, w](const ChartPoint& p, int order) { return solve(g(p, order), w(p, order)); });
}

}  // namespace acm3
