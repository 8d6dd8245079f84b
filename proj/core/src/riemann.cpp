#include "acm3/riemann.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <stdexcept>

namespace acm3 {

ConnectionField christoffel(const MetricField& g) {
  const std::size_t m = g.dim();
  ConnectionField raw(m, [g, m](const ChartPoint& p, int order) {
    require_order(order + 1);
    const JetArray gh = g(p, order + 1);
    if (order == 0) {
      Eigen::MatrixXd g0(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) g0(i, j) = gh(i, j).value();
      const Eigen::MatrixXd ginv = g0.ldlt().solve(Eigen::MatrixXd::Identity(m, m));
      // dg(a, i, j) = d_a g_ij
      std::vector<double> dg(m * m * m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          const auto c = gh(i, j).coefficients();
          for (std::size_t a = 0; a < m; ++a) dg[(a * m + i) * m + j] = c[1 + a];
        }
      Eigen::VectorXd lowered(m);
      JetArray r = JetArray::zeros({m, m, m}, m, 0);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
          for (std::size_t l = 0; l < m; ++l)
            lowered(l) = 0.5 * (dg[(i * m + j) * m + l] + dg[(j * m + i) * m + l] - dg[(l * m + i) * m + j]);
          const Eigen::VectorXd up = ginv * lowered;
          for (std::size_t k = 0; k < m; ++k) {
            if (up(k) == 0.0) continue;
            r(k, i, j).coefficients()[0] = up(k);
            r(k, j, i).coefficients()[0] = up(k);
          }
        }
      return r;
    }
    std::vector<JetArray> dg;
    dg.reserve(m);
    for (std::size_t a = 0; a < m; ++a) dg.push_back(gh.derivative(a));
    // lowered(l, i, j) = 1/2 (d_i g_jl + d_j g_il - d_l g_ij)
    JetArray lowered = JetArray::zeros({m, m, m}, m, order);
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) {
          Jet v = (dg[i](j, l) + dg[j](i, l) - dg[l](i, j)) * 0.5;
          lowered(l, j, i) = v;
          lowered(l, i, j) = std::move(v);
        }
    const JetArray ginv = inverse(gh.truncate(order));
    JetArray r = JetArray::zeros({m, m, m}, m, order);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t l = 0; l < m; ++l) {
        const Jet& gkl = ginv(k, l);
        bool zero = true;
        for (double c : gkl.coefficients())
          if (c != 0.0) {
            zero = false;
            break;
          }
        if (zero) continue;
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = i; j < m; ++j) r(k, i, j) += gkl * lowered(l, i, j);
      }
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < i; ++j) r(k, i, j) = r(k, j, i);
    return r;
  });
  return memoize(raw);
}

// ---------------------------------------------------------------------------

AffineConnection::AffineConnection(std::string name, std::size_t dim, Derivative derivative, bool is_levi_civita,
                                   std::optional<ConnectionField> coefficients)
    : name_(std::move(name)),
      dim_(dim),
      derivative_(std::move(derivative)),
      is_levi_civita_(is_levi_civita),
      coefficients_(std::move(coefficients)) {}

ConnectionField AffineConnection::coefficients() const {
  if (coefficients_) return *coefficients_;
  const std::size_t m = dim_;
  std::vector<VectorField> columns;
  columns.reserve(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      columns.push_back(derivative_(coordinate_vector(m, i), coordinate_vector(m, j)));
  ConnectionField raw(m, [columns, m](const ChartPoint& p, int order) {
    JetArray r = JetArray::zeros({m, m, m}, m, order);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const JetArray v = columns[i * m + j](p, order);
        for (std::size_t k = 0; k < m; ++k) r(k, i, j) = v(k);
      }
    return r;
  });
  return memoize(raw);
}

AffineConnection connection_from_coefficients(std::string name, const ConnectionField& gamma, bool is_levi_civita) {
  const std::size_t m = gamma.dim();
  auto derivative = [gamma, m](const VectorField& x, const VectorField& y) {
    return VectorField(m, [gamma, x, y, m](const ChartPoint& p, int order) {
      require_order(order + 1);
      const JetArray xv = x(p, order);
      const JetArray yh = y(p, order + 1);
      const JetArray yv = yh.truncate(order);
      const JetArray gv = gamma(p, order);
      JetArray r = directional_array(xv, yh);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          const Jet xy = xv(i) * yv(j);
          for (std::size_t k = 0; k < m; ++k) r(k) += gv(k, i, j) * xy;
        }
      return r;
    });
  };
  return AffineConnection(std::move(name), m, derivative, is_levi_civita, gamma);
}

AffineConnection levi_civita(const MetricField& g) {
  return connection_from_coefficients("levi-civita", christoffel(g), true);
}

VectorField torsion(const AffineConnection& c, const VectorField& x, const VectorField& y) {
  return c.derivative(x, y) - c.derivative(y, x) - lie_bracket(x, y);
}

ScalarField nabla_metric(const AffineConnection& c, const MetricField& g, const VectorField& z, const VectorField& x,
                         const VectorField& y) {
  return directional_derivative(z, inner(g, x, y)) - inner(g, c.derivative(z, x), y) -
         inner(g, x, c.derivative(z, y));
}

ScalarField nabla_one_form(const AffineConnection& c, const OneFormField& w, const VectorField& e,
                           const VectorField& f) {
  return directional_derivative(e, contract(w, f)) - contract(w, c.derivative(e, f));
}

VectorField nabla_endomorphism(const AffineConnection& c, const EndomorphismField& a, const VectorField& e,
                               const VectorField& f) {
  return c.derivative(e, apply(a, f)) - apply(a, c.derivative(e, f));
}

VectorField curvature_operator(const AffineConnection& c, const VectorField& x, const VectorField& y,
                               const VectorField& z) {
  return c.derivative(x, c.derivative(y, z)) - c.derivative(y, c.derivative(x, z)) -
         c.derivative(lie_bracket(x, y), z);
}

// ---------------------------------------------------------------------------

EndomorphismField covariant_derivative(const ConnectionField& gamma, const VectorField& xi) {
  const std::size_t m = xi.dim();
  return EndomorphismField(m, [gamma, xi, m](const ChartPoint& p, int order) {
    require_order(order + 1);
    const JetArray xh = xi(p, order + 1);
    const JetArray xv = xh.truncate(order);
    const JetArray gv = gamma(p, order);
    JetArray r = JetArray::zeros({m, m}, m, order);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < m; ++k) {
        Jet v = xh(i).derivative(k);
        for (std::size_t l = 0; l < m; ++l) v += gv(i, k, l) * xv(l);
        r(i, k) = std::move(v);
      }
    return r;
  });
}

EndomorphismDerivativeField covariant_derivative(const ConnectionField& gamma, const EndomorphismField& a) {
  const std::size_t m = a.dim();
  return EndomorphismDerivativeField(m, [gamma, a, m](const ChartPoint& p, int order) {
    require_order(order + 1);
    const JetArray ah = a(p, order + 1);
    const JetArray av = ah.truncate(order);
    const JetArray gv = gamma(p, order);
    JetArray r = JetArray::zeros({m, m, m}, m, order);
    for (std::size_t k = 0; k < m; ++k) {
      const JetArray dk = ah.derivative(k);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          Jet v = dk(i, j);
          for (std::size_t l = 0; l < m; ++l) v += gv(i, k, l) * av(l, j) - gv(l, k, j) * av(i, l);
          r(k, i, j) = std::move(v);
        }
    }
    return r;
  });
}

BilinearDerivativeField covariant_derivative(const ConnectionField& gamma, const BilinearField& b) {
  const std::size_t m = b.dim();
  return BilinearDerivativeField(m, [gamma, b, m](const ChartPoint& p, int order) {
    require_order(order + 1);
    const JetArray bh = b(p, order + 1);
    const JetArray bv = bh.truncate(order);
    const JetArray gv = gamma(p, order);
    JetArray r = JetArray::zeros({m, m, m}, m, order);
    for (std::size_t k = 0; k < m; ++k) {
      const JetArray dk = bh.derivative(k);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          Jet v = dk(i, j);
          for (std::size_t l = 0; l < m; ++l) v -= gv(l, k, i) * bv(l, j) + gv(l, k, j) * bv(i, l);
          r(k, i, j) = std::move(v);
        }
    }
    return r;
  });
}

RiemannField riemann_components(const ConnectionField& gamma) {
  const std::size_t m = gamma.dim();
  return RiemannField(m, [gamma, m](const ChartPoint& p, int order) {
    require_order(order + 1);
    const JetArray gh = gamma(p, order + 1);
    const JetArray gv = gh.truncate(order);
    std::vector<JetArray> dg;
    dg.reserve(m);
    for (std::size_t a = 0; a < m; ++a) dg.push_back(gh.derivative(a));
    JetArray r = JetArray::zeros({m, m, m, m}, m, order);
    auto at4 = [m](std::size_t l, std::size_t i, std::size_t j, std::size_t k) {
      return ((l * m + i) * m + j) * m + k;
    };
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
          for (std::size_t k = 0; k < m; ++k) {
            Jet v = dg[i](l, j, k) - dg[j](l, i, k);
            for (std::size_t n = 0; n < m; ++n) v += gv(l, i, n) * gv(n, j, k) - gv(l, j, n) * gv(n, i, k);
            r[at4(l, j, i, k)] = -v;
            r[at4(l, i, j, k)] = std::move(v);
          }
    return r;
  });
}

CurvatureTensor::CurvatureTensor(std::size_t dim, RiemannField components)
    : dim_(dim), components_(std::move(components)) {}

std::vector<double> CurvatureTensor::components_at(const ChartPoint& p) const { return components_(p, 0).values(); }

Eigen::VectorXd apply_curvature(const std::vector<double>& r, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                const Eigen::VectorXd& z) {
  const auto m = static_cast<std::size_t>(x.size());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(x.size());
  std::size_t idx = 0;
  for (std::size_t l = 0; l < m; ++l) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const double xy = x[static_cast<Eigen::Index>(i)] * y[static_cast<Eigen::Index>(j)];
        for (std::size_t k = 0; k < m; ++k, ++idx)
          if (xy != 0.0) acc += r[idx] * xy * z[static_cast<Eigen::Index>(k)];
      }
    out[static_cast<Eigen::Index>(l)] = acc;
  }
  return out;
}

Eigen::VectorXd CurvatureTensor::apply(const ChartPoint& p, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                       const Eigen::VectorXd& z) const {
  return apply_curvature(components_at(p), x, y, z);
}

CurvatureTensor riemann_curvature(const AffineConnection& c) {
  return CurvatureTensor(c.dim(), riemann_components(c.coefficients()));
}

Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& g) {
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw std::domain_error("metric is not positive definite");
  const Eigen::MatrixXd l = llt.matrixL();
  return l.transpose().triangularView<Eigen::Upper>().solve(
      Eigen::MatrixXd::Identity(g.rows(), g.cols()));
}

Eigen::MatrixXd ricci_from_components(const std::vector<double>& r, const Eigen::MatrixXd& g,
                                      const Eigen::MatrixXd& frame) {
  const auto m = static_cast<std::size_t>(g.rows());
  Eigen::MatrixXd ric = Eigen::MatrixXd::Zero(g.rows(), g.cols());
  for (Eigen::Index a = 0; a < frame.cols(); ++a) {
    const Eigen::VectorXd e = frame.col(a);
    const Eigen::VectorXd ge = g * e;
    // Ric(d_j, d_k) += g(R(E_a, d_j) d_k, E_a) = (g e)_l e^i R^l_ijk
    std::size_t idx = 0;
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t i = 0; i < m; ++i) {
        const double w = ge[static_cast<Eigen::Index>(l)] * e[static_cast<Eigen::Index>(i)];
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t k = 0; k < m; ++k, ++idx)
            ric(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) += w * r[idx];
      }
  }
  return ric;
}

Eigen::MatrixXd ricci(const CurvatureTensor& curv, const MetricField& g, const ChartPoint& p,
                      const std::optional<Eigen::MatrixXd>& frame) {
  const Eigen::MatrixXd gv = g(p, 0).values_matrix();
  return ricci_from_components(curv.components_at(p), gv, frame ? *frame : orthonormal_frame(gv));
}

double scalar_curvature(const CurvatureTensor& curv, const MetricField& g, const ChartPoint& p) {
  const Eigen::MatrixXd gv = g(p, 0).values_matrix();
  const Eigen::MatrixXd e = orthonormal_frame(gv);
  const Eigen::MatrixXd ric = ricci_from_components(curv.components_at(p), gv, e);
  return (e.transpose() * ric * e).trace();
}

KillingResult is_killing(const VectorField& xi, const MetricField& g, const std::vector<ChartPoint>& points,
                         double tol) {
  const BilinearField lg = lie_derivative_metric(xi, g);
  double worst = 0.0;
  for (const auto& p : points)
    for (double v : lg(p, 0).values()) worst = std::max(worst, std::abs(v));
  return {worst <= tol, worst};
}

}  // namespace acm3
