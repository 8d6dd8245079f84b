#include "acm3/canonical.hpp"

#include <algorithm>
#include <cmath>

#include "acm3/sampling.hpp"

namespace acm3 {

const char* to_string(StructureClass c) noexcept {
  switch (c) {
    case StructureClass::three_sasakian:
      return "3-sasakian";
    case StructureClass::three_cosymplectic:
      return "3-cosymplectic";
    case StructureClass::generic:
      break;
  }
  return "generic";
}

CanonicalConnection::CanonicalConnection(AlmostContactMetric3Structure s)
    : s_(std::move(s)), lc_(acm3::levi_civita(s_.g())), gamma_(lc_.coefficients()) {}

VectorField CanonicalConnection::derivative(const VectorField& e, const VectorField& f) const {
  const AlmostContactMetric3Structure s = s_;
  const ConnectionField gamma = gamma_;
  const std::size_t m = s.dim();
  return VectorField(m, [s, gamma, e, f, m](const ChartPoint& p, int order) {
    require_order(order + 1);
    const JetArray ev = e(p, order);
    const JetArray fh = f(p, order + 1);
    std::array<JetArray, 3> xi_h{s.xi(0)(p, order + 1), s.xi(1)(p, order + 1), s.xi(2)(p, order + 1)};
    std::array<JetArray, 3> eta_h{s.eta(0)(p, order + 1), s.eta(1)(p, order + 1), s.eta(2)(p, order + 1)};
    std::array<JetArray, 3> xi{xi_h[0].truncate(order), xi_h[1].truncate(order), xi_h[2].truncate(order)};
    std::array<JetArray, 3> eta{eta_h[0].truncate(order), eta_h[1].truncate(order), eta_h[2].truncate(order)};

    JetArray e_hor = ev;
    std::array<Jet, 3> eta_e{dot(eta[0], ev), dot(eta[1], ev), dot(eta[2], ev)};
    for (int a = 0; a < 3; ++a) e_hor -= eta_e[a] * xi[a];

    std::array<Jet, 3> eta_f{dot(eta_h[0], fh), dot(eta_h[1], fh), dot(eta_h[2], fh)};
    JetArray f_hor_h = fh;
    for (int a = 0; a < 3; ++a) f_hor_h -= eta_f[a] * xi_h[a];
    const JetArray f_hor = f_hor_h.truncate(order);

    // (nabla_{E^h} F^h)^h
    JetArray r = directional_array(e_hor, f_hor_h);
    const JetArray gv = gamma(p, order);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        const Jet w = e_hor(i) * f_hor(j);
        for (std::size_t k = 0; k < m; ++k) r(k) += gv(k, i, j) * w;
      }
    for (int a = 0; a < 3; ++a) r -= dot(eta[a], r) * xi[a];

    for (int a = 0; a < 3; ++a) {
      // eta_a(E) [xi_a, F^h]
      const JetArray bracket = directional_array(xi[a], f_hor_h) - directional_array(f_hor, xi_h[a]);
      r += eta_e[a] * bracket;
      // E(eta_a(F)) xi_a
      Jet de(m, order);
      for (std::size_t j = 0; j < m; ++j) de += ev(j) * eta_f[a].derivative(j);
      r += de * xi[a];
    }
    return r;
  });
}

AffineConnection CanonicalConnection::as_affine() const {
  const CanonicalConnection self = *this;
  return AffineConnection(
      "canonical", s_.dim(), [self](const VectorField& e, const VectorField& f) { return self.derivative(e, f); },
      false);
}

VectorField canonical_torsion(const CanonicalConnection& c, const VectorField& e, const VectorField& f) {
  return c.derivative(e, f) - c.derivative(f, e) - lie_bracket(e, f);
}

Eigen::VectorXd canonical_torsion(const CanonicalConnection& c, const Eigen::VectorXd& e, const Eigen::VectorXd& f,
                                  const ChartPoint& p) {
  return canonical_torsion(c, constant_vector(e), constant_vector(f))(p, 0).values_vector();
}

VectorField canonical_curvature(const CanonicalConnection& c, const VectorField& x, const VectorField& y,
                                const VectorField& z) {
  return curvature_operator(c.as_affine(), x, y, z);
}

Eigen::VectorXd canonical_curvature(const CanonicalConnection& c, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                    const Eigen::VectorXd& z, const ChartPoint& p) {
  return canonical_curvature(c, constant_vector(x), constant_vector(y), constant_vector(z))(p, 0).values_vector();
}

Eigen::MatrixXd horizontal_orthonormal_frame(const AlmostContactMetric3Structure& s, const ChartPoint& p) {
  const StructureValues v = structure_values(s, p);
  const HorizontalSpace h = horizontal_space(v);
  const Eigen::MatrixXd gh = h.basis.transpose() * v.g * h.basis;
  return h.basis * orthonormal_frame(gh);
}

double horizontal_scalar_curvature(const CanonicalConnection& c, const ChartPoint& p) {
  const Eigen::MatrixXd frame = horizontal_orthonormal_frame(c.structure(), p);
  const Eigen::MatrixXd g = c.structure().g()(p, 0).values_matrix();
  double total = 0.0;
  for (Eigen::Index i = 0; i < frame.cols(); ++i)
    for (Eigen::Index j = 0; j < frame.cols(); ++j) {
      if (i == j) continue;
      const Eigen::VectorXd r = canonical_curvature(c, frame.col(i), frame.col(j), frame.col(j), p);
      total += frame.col(i).dot(g * r);
    }
  return total;
}

std::vector<Eigen::VectorXd> seeded_vectors(std::size_t dim, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Eigen::VectorXd> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) out.push_back(rng.uniform_vector(dim, -1.0, 1.0));
  return out;
}

namespace {

std::vector<VectorField> constant_fields(const std::vector<Eigen::VectorXd>& v) {
  std::vector<VectorField> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(constant_vector(x));
  return out;
}

double vmax(const VectorField& f, const ChartPoint& p) { return max_abs(f(p, 0).values()); }
double smax(const ScalarField& f, const ChartPoint& p) { return std::abs(f(p, 0).value()); }

}  // namespace

ResidualReport check_metric_compat(const CanonicalConnection& c, const std::vector<ChartPoint>& points, double tol,
                                   std::uint64_t seed) {
  const auto& s = c.structure();
  const AffineConnection conn = c.as_affine();
  const auto v = constant_fields(seeded_vectors(s.dim(), 9, seed));
  std::vector<ScalarField> terms;
  for (std::size_t k = 0; k + 2 < v.size(); k += 3) terms.push_back(nabla_metric(conn, s.g(), v[k], v[k + 1], v[k + 2]));
  double r = 0.0;
  for (const auto& p : points)
    for (const auto& t : terms) r = std::max(r, smax(t, p));
  ResidualReport rep;
  rep.add("nabla-tilde-g", r, tol, points.size() * terms.size());
  for (int a = 0; a < 3; ++a) {
    const KillingResult k = is_killing(s.xi(a), s.g(), points, tol);
    rep.add("killing-xi" + std::to_string(a + 1), k.max_residual, tol, points.size());
  }
  return rep;
}

ResidualReport check_eta_parallel(const CanonicalConnection& c, const std::vector<ChartPoint>& points, double tol,
                                  std::uint64_t seed) {
  const auto& s = c.structure();
  const AffineConnection conn = c.as_affine();
  const auto v = constant_fields(seeded_vectors(s.dim(), 4, seed));
  std::vector<ScalarField> parallel, mixed, vertical;
  for (int a = 0; a < 3; ++a) {
    parallel.push_back(nabla_one_form(conn, s.eta(a), v[0], v[1]));
    parallel.push_back(nabla_one_form(conn, s.eta(a), v[2], v[3]));
    const TwoFormField deta = exterior_derivative(s.eta(a));
    const VectorField x = horizontal_projection(s, v[0]);
    for (int b = 0; b < 3; ++b) {
      mixed.push_back(evaluate_form(deta, x, s.xi(b)));
      vertical.push_back(nabla_one_form(conn, s.eta(a), v[1], s.xi(b)));
    }
  }
  double rp = 0, rm = 0, rv = 0;
  for (const auto& p : points) {
    for (const auto& t : parallel) rp = std::max(rp, smax(t, p));
    for (const auto& t : mixed) rm = std::max(rm, smax(t, p));
    for (const auto& t : vertical) rv = std::max(rv, smax(t, p));
  }
  ResidualReport rep;
  rep.add("nabla-tilde-eta", rp, tol, points.size() * parallel.size());
  rep.add("deta-horizontal-reeb", rm, tol, points.size() * mixed.size());
  rep.add("nabla-tilde-eta-on-reeb", rv, tol, points.size() * vertical.size());
  return rep;
}

ResidualReport check_nabla_tilde_phi(const CanonicalConnection& c, StructureClass cls,
                                     const std::vector<ChartPoint>& points, double tol, std::uint64_t seed) {
  const auto& s = c.structure();
  const AffineConnection conn = c.as_affine();
  const auto raw = seeded_vectors(s.dim(), 4, seed);
  const auto v = constant_fields(raw);
  const bool sasakian = cls == StructureClass::three_sasakian;

  std::array<VectorField, 3> general{nabla_endomorphism(conn, s.phi(0), v[0], v[1]),
                                     nabla_endomorphism(conn, s.phi(1), v[0], v[1]),
                                     nabla_endomorphism(conn, s.phi(2), v[0], v[1])};
  const VectorField x = horizontal_projection(s, v[2]);
  const VectorField eh = horizontal_projection(s, v[3]);
  const VectorField reeb2_phi1 = nabla_endomorphism(conn, s.phi(0), s.xi(1), x);
  const VectorField horizontal_phi1 = nabla_endomorphism(conn, s.phi(0), eh, x);

  double r_general = 0, r_reeb = 0, r_hor = 0;
  for (const auto& p : points) {
    const StructureValues sv = structure_values(s, p);
    Eigen::VectorXd fh = raw[1];
    for (int a = 0; a < 3; ++a) fh -= sv.eta[a].dot(raw[1]) * sv.xi[a];
    for (int a = 0; a < 3; ++a) {
      Eigen::VectorXd expected = Eigen::VectorXd::Zero(fh.size());
      if (sasakian)
        for (int b = 0; b < 3; ++b)
          for (int g = 0; g < 3; ++g) {
            const int e = epsilon(a, b, g);
            if (e == 0) continue;
            expected -= e * (sv.eta[b].dot(raw[0]) * (sv.phi[g] * fh) - sv.eta[g].dot(raw[0]) * (sv.phi[b] * fh));
          }
      r_general = std::max(r_general, max_abs(general[a](p, 0).values_vector() - expected));
    }
    const Eigen::VectorXd xv = x(p, 0).values_vector();
    const Eigen::VectorXd expected_reeb = sasakian ? Eigen::VectorXd(-2.0 * (sv.phi[2] * xv))
                                                   : Eigen::VectorXd(Eigen::VectorXd::Zero(xv.size()));
    r_reeb = std::max(r_reeb, max_abs(reeb2_phi1(p, 0).values_vector() - expected_reeb));
    r_hor = std::max(r_hor, vmax(horizontal_phi1, p));
  }
  ResidualReport rep;
  const std::size_t n = points.size();
  rep.add(sasakian ? "nabla-tilde-phi-formula" : "nabla-tilde-phi-zero", r_general, tol, n * 3);
  rep.add("nabla-tilde-reeb2-phi1", r_reeb, tol, n);
  rep.add("nabla-tilde-horizontal-phi1", r_hor, tol, n);
  return rep;
}

ResidualReport check_uniqueness_axioms(const AffineConnection& conn, const AlmostContactMetric3Structure& s,
                                       const std::vector<ChartPoint>& points, double tol, std::uint64_t seed) {
  const auto v = constant_fields(seeded_vectors(s.dim(), 4, seed));
  std::vector<VectorField> axiom1;
  for (int a = 0; a < 3; ++a) {
    axiom1.push_back(conn.derivative(v[0], s.xi(a)));
    axiom1.push_back(conn.derivative(v[3], s.xi(a)));
  }
  const VectorField x = horizontal_projection(s, v[1]);
  const VectorField y = horizontal_projection(s, v[2]);
  const VectorField z = horizontal_projection(s, v[3]);
  const ScalarField axiom2a = nabla_metric(conn, s.g(), z, x, y);
  const ScalarField axiom2b = nabla_metric(conn, s.g(), x, y, y);
  VectorField expected_t = constant_vector(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s.dim())));
  for (int a = 0; a < 3; ++a)
    expected_t = expected_t + (2.0 * evaluate_form(exterior_derivative(s.eta(a)), x, y)) * s.xi(a);
  const VectorField axiom3a = torsion(conn, x, y) - expected_t;
  std::vector<VectorField> axiom3b;
  for (int a = 0; a < 3; ++a) axiom3b.push_back(torsion(conn, x, s.xi(a)));

  double r1 = 0, r2 = 0, r3a = 0, r3b = 0;
  for (const auto& p : points) {
    for (const auto& f : axiom1) r1 = std::max(r1, vmax(f, p));
    r2 = std::max({r2, smax(axiom2a, p), smax(axiom2b, p)});
    r3a = std::max(r3a, vmax(axiom3a, p));
    for (const auto& f : axiom3b) r3b = std::max(r3b, vmax(f, p));
  }
  ResidualReport rep;
  const std::size_t n = points.size();
  rep.add("axiom-reeb-parallel", r1, tol, n * axiom1.size());
  rep.add("axiom-horizontal-metric", r2, tol, n * 2);
  rep.add("axiom-torsion-horizontal", r3a, tol, n);
  rep.add("axiom-torsion-mixed", r3b, tol, n * 3);
  return rep;
}

ResidualReport check_torsion(const CanonicalConnection& c, const std::vector<ChartPoint>& points, double tol,
                             std::uint64_t seed) {
  const auto& s = c.structure();
  const auto v = constant_fields(seeded_vectors(s.dim(), 4, seed));
  const VectorField x = horizontal_projection(s, v[0]);
  const VectorField y = horizontal_projection(s, v[1]);
  std::array<TwoFormField, 3> deta{exterior_derivative(s.eta(0)), exterior_derivative(s.eta(1)),
                                   exterior_derivative(s.eta(2))};
  auto expected = [&](const VectorField& e, const VectorField& f) {
    VectorField r = constant_vector(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(s.dim())));
    for (int a = 0; a < 3; ++a) r = r + (2.0 * evaluate_form(deta[a], e, f)) * s.xi(a);
    return r;
  };
  const VectorField horizontal = canonical_torsion(c, x, y) - expected(x, y);
  std::vector<VectorField> mixed, reeb;
  for (int a = 0; a < 3; ++a) {
    mixed.push_back(canonical_torsion(c, x, s.xi(a)));
    for (int b = 0; b < 3; ++b)
      if (a != b) reeb.push_back(canonical_torsion(c, s.xi(a), s.xi(b)) - lie_bracket(s.xi(b), s.xi(a)));
  }
  const VectorField general = canonical_torsion(c, v[2], v[3]) - expected(v[2], v[3]);

  double rh = 0, rm = 0, rr = 0, rg = 0;
  for (const auto& p : points) {
    rh = std::max(rh, vmax(horizontal, p));
    for (const auto& f : mixed) rm = std::max(rm, vmax(f, p));
    for (const auto& f : reeb) rr = std::max(rr, vmax(f, p));
    rg = std::max(rg, vmax(general, p));
  }
  ResidualReport rep;
  const std::size_t n = points.size();
  rep.add("torsion-horizontal", rh, tol, n);
  rep.add("torsion-horizontal-reeb", rm, tol, n * mixed.size());
  rep.add("torsion-reeb-pair", rr, tol, n * reeb.size());
  rep.add("torsion-integrable-vertical", rg, tol, n);
  return rep;
}

ResidualReport check_canonical_curvature(const CanonicalConnection& c, const std::vector<ChartPoint>& points,
                                         const CurvatureTolerances& tol, std::uint64_t seed) {
  const auto& s = c.structure();
  const std::size_t m = s.dim();
  const auto raw = seeded_vectors(m, 5, seed);
  const auto v = constant_fields(raw);
  const CurvatureTensor lc_curv = riemann_curvature(c.levi_civita());
  std::array<TwoFormField, 3> deta{exterior_derivative(s.eta(0)), exterior_derivative(s.eta(1)),
                                   exterior_derivative(s.eta(2))};

  std::vector<VectorField> reeb, vertical, mixed;
  for (int a = 0; a < 3; ++a) {
    reeb.push_back(canonical_curvature(c, v[0], v[1], s.xi(a)));
    for (int b = a + 1; b < 3; ++b) vertical.push_back(canonical_curvature(c, s.xi(a), s.xi(b), v[2]));
  }
  // Horizontal projections of coordinate fields (basic-field approximation).
  const VectorField bx = horizontal_projection(s, coordinate_vector(m, 0));
  const VectorField by = horizontal_projection(s, coordinate_vector(m, 1));
  for (int a = 0; a < 3; ++a) mixed.push_back(canonical_curvature(c, bx, s.xi(a), by));

  double r_reeb = 0, r_vert = 0, r_mixed = 0, r_literal = 0, r_carried = 0;
  for (const auto& p : points) {
    for (const auto& f : reeb) r_reeb = std::max(r_reeb, vmax(f, p));
    for (const auto& f : vertical) r_vert = std::max(r_vert, vmax(f, p));
    for (const auto& f : mixed) r_mixed = std::max(r_mixed, vmax(f, p));

    const StructureValues sv = structure_values(s, p);
    auto hor = [&](const Eigen::VectorXd& e) {
      Eigen::VectorXd r = e;
      for (int a = 0; a < 3; ++a) r -= sv.eta[a].dot(e) * sv.xi[a];
      return r;
    };
    const Eigen::VectorXd x = hor(raw[2]), y = hor(raw[3]), z = hor(raw[4]);
    const Eigen::VectorXd rt = canonical_curvature(c, x, y, z, p);
    const Eigen::VectorXd rh = hor(lc_curv.apply(p, x, y, z));
    Eigen::VectorXd literal = rh, carried = rh;
    for (int a = 0; a < 3; ++a) {
      const Eigen::MatrixXd d = deta[a](p, 0).values_matrix();
      const double dyz = y.dot(d * z), dxz = x.dot(d * z), dxy = x.dot(d * y);
      literal += dyz * (sv.phi[a] * x) - dxz * (sv.phi[a] * y);
      carried += dxz * (sv.phi[a] * y) - dyz * (sv.phi[a] * x) + 2.0 * dxy * (sv.phi[a] * z);
    }
    r_literal = std::max(r_literal, max_abs(rt - literal));
    r_carried = std::max(r_carried, max_abs(rt - carried));
  }
  ResidualReport rep;
  const std::size_t n = points.size();
  rep.add("curvature-reeb-annihilated", r_reeb, tol.reeb, n * reeb.size());
  rep.add("curvature-vertical-pair", r_vert, tol.vertical, n * vertical.size());
  rep.add("curvature-mixed-basic", r_mixed, tol.mixed, n * mixed.size());
  rep.add("curvature-horizontal-formula-stated", r_literal, tol.formula, n);
  rep.add("curvature-horizontal-formula-carried", r_carried, tol.formula, n);
  return rep;
}

}  // namespace acm3
