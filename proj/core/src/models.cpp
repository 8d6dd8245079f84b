#include "acm3/models.hpp"

#include <algorithm>
#include <cmath>

#include "acm3/sampling.hpp"

namespace acm3 {

namespace {

// Row layout of the packed sphere bundle: phi_1, phi_2, phi_3 (m rows each),
// then xi_1..3 and eta_1..3 (one row each).
std::size_t xi_row(std::size_t m, int a) { return 3 * m + static_cast<std::size_t>(a); }
std::size_t eta_row(std::size_t m, int a) { return 3 * m + 3 + static_cast<std::size_t>(a); }

JetArray slice_rows(const JetArray& b, std::size_t first, std::size_t count) {
  const std::size_t m = b.extent(1);
  JetArray out({count, m}, b[0]);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < m; ++j) out(i, j) = b(first + i, j);
  return out;
}

JetArray row_vector(const JetArray& b, std::size_t row) {
  const std::size_t m = b.extent(1);
  JetArray out({m}, b[0]);
  for (std::size_t j = 0; j < m; ++j) out(j) = b(row, j);
  return out;
}

// Rows of J times a column of jets; J has one +-1 per row.
std::vector<Jet> apply_signed_permutation(const Eigen::MatrixXd& j, const std::vector<Jet>& x) {
  std::vector<Jet> out;
  out.reserve(x.size());
  for (Eigen::Index r = 0; r < j.rows(); ++r) {
    Eigen::Index c = 0;
    j.row(r).cwiseAbs().maxCoeff(&c);
    out.push_back(x[static_cast<std::size_t>(c)] * j(r, c));
  }
  return out;
}

std::vector<ChartPoint> to_points(const std::vector<Eigen::VectorXd>& v) {
  std::vector<ChartPoint> out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(std::vector<double>(x.data(), x.data() + x.size()));
  return out;
}

Eigen::VectorXd to_vector(const ChartPoint& p) {
  return Eigen::Map<const Eigen::VectorXd>(p.coords().data(), static_cast<Eigen::Index>(p.dim()));
}

}  // namespace

Eigen::MatrixXd quaternion_structure(std::size_t n, int a) {
  const auto size = static_cast<Eigen::Index>(4 * n + 4);
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(size, size);
  for (Eigen::Index b = 0; b < size; b += 4) {
    auto blk = j.block(b, b, 4, 4);
    switch (a) {
      case 0:  // (a, b, c, d) -> (b, -a, -d, c)
        blk(0, 1) = 1;
        blk(1, 0) = -1;
        blk(2, 3) = -1;
        blk(3, 2) = 1;
        break;
      case 1:  // (c, d, -a, -b)
        blk(0, 2) = 1;
        blk(1, 3) = 1;
        blk(2, 0) = -1;
        blk(3, 1) = -1;
        break;
      case 2:  // (d, -c, b, -a)
        blk(0, 3) = 1;
        blk(1, 2) = -1;
        blk(2, 1) = 1;
        blk(3, 0) = -1;
        break;
      default:
        throw std::out_of_range("quaternion index must be 0, 1 or 2");
    }
  }
  return j;
}

Eigen::MatrixXd flat_phi(std::size_t n, int a) {
  const auto nn = static_cast<Eigen::Index>(n);
  const Eigen::Index m = 4 * nn + 3;
  const Eigen::Index x = 0, y = nn, u = 2 * nn, v = 3 * nn, z = 4 * nn;
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(m, m);
  // f(row, col) = phi^row_col; set (r, c) = -s and (c, r) = s per pair.
  auto pair = [&](Eigen::Index r, Eigen::Index c, double s) {
    for (Eigen::Index i = 0; i < nn; ++i) {
      f(r + i, c + i) = -s;
      f(c + i, r + i) = s;
    }
  };
  auto reeb = [&](Eigen::Index r, Eigen::Index c, double s) {
    f(z + r, z + c) = -s;
    f(z + c, z + r) = s;
  };
  switch (a) {
    case 0:
      pair(x, y, 1);
      pair(u, v, 1);
      reeb(1, 2, 1);
      break;
    case 1:
      pair(x, u, 1);
      pair(y, v, -1);
      reeb(0, 2, -1);
      break;
    case 2:
      pair(x, v, 1);
      pair(y, u, 1);
      reeb(0, 1, 1);
      break;
    default:
      throw std::out_of_range("structure index must be 0, 1 or 2");
  }
  return f;
}

std::vector<ChartPoint> Model::sample_points(std::size_t count, std::uint64_t seed) const {
  const std::size_t m = dim();
  switch (kind) {
    case ModelKind::flat:
      return sample_box(m, count, 1.0, seed);
    case ModelKind::sphere:
      return sample_ball(m, count, kSphereChartRadius, seed);
    case ModelKind::scrambled: {
      const auto flat = sample_box(m, count, 1.0, seed);
      std::vector<Eigen::VectorXd> w;
      w.reserve(count);
      for (const auto& p : flat) w.push_back(chart_map->linear.transpose() * (to_vector(p) - chart_map->offset));
      return to_points(w);
    }
  }
  return {};
}

bool Model::in_domain(const ChartPoint& p) const {
  const Eigen::VectorXd v = to_vector(p);
  switch (kind) {
    case ModelKind::flat:
      return v.cwiseAbs().maxCoeff() <= 1.0;
    case ModelKind::sphere:
      return v.norm() <= kSphereChartRadius;
    case ModelKind::scrambled:
      return (chart_map->linear * v + chart_map->offset).cwiseAbs().maxCoeff() <= 1.0 + 1e-12;
  }
  return false;
}

Model make_flat(std::size_t n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const std::size_t m = 4 * n + 3;
  std::array<EndomorphismField, 3> phi{constant_endomorphism(flat_phi(n, 0)), constant_endomorphism(flat_phi(n, 1)),
                                       constant_endomorphism(flat_phi(n, 2))};
  std::array<VectorField, 3> xi{coordinate_vector(m, 4 * n), coordinate_vector(m, 4 * n + 1),
                                coordinate_vector(m, 4 * n + 2)};
  std::array<OneFormField, 3> eta{coordinate_one_form(m, 4 * n), coordinate_one_form(m, 4 * n + 1),
                                  coordinate_one_form(m, 4 * n + 2)};
  AlmostContactMetric3Structure s(constant_metric(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m),
                                                                             static_cast<Eigen::Index>(m))),
                                  phi, xi, eta);
  return Model{"flat3cos", ModelKind::flat, n, std::move(s), StructureClass::three_cosymplectic, std::nullopt};
}

Model make_sphere(std::size_t n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const std::size_t m = 4 * n + 3;
  const std::array<Eigen::MatrixXd, 3> jq{quaternion_structure(n, 0), quaternion_structure(n, 1),
                                          quaternion_structure(n, 2)};

  BilinearField bundle = memoize(BilinearField(m, [m, jq](const ChartPoint& p, int order) {
    const std::vector<Jet> u = lift_coordinates(p, order);
    Jet s = Jet::constant(m, order, 1.0);
    for (const auto& ui : u) s += ui * ui;
    const Jet r = reciprocal(s);
    const Jet r2 = r * r;
    // g = 4 r^2 I, so the normal equations G v = DF^T w reduce to v = (s^2 / 4) DF^T w.
    const Jet inv_g = s * s * 0.25;

    std::vector<Jet> x;
    x.reserve(m + 1);
    for (std::size_t i = 0; i < m; ++i) x.push_back(2.0 * u[i] * r);
    x.push_back((s - 2.0) * r);

    JetArray df = JetArray::zeros({m + 1, m}, m, order);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) df(i, j) = -4.0 * u[i] * u[j] * r2;
      df(i, i) += 2.0 * r;
    }
    for (std::size_t j = 0; j < m; ++j) df(m, j) = 4.0 * u[j] * r2;
    const JetArray dft = transpose(df);

    JetArray out = JetArray::zeros({3 * m + 6, m}, m, order);
    for (int a = 0; a < 3; ++a) {
      const std::vector<Jet> jx = apply_signed_permutation(jq[a], x);
      for (std::size_t j = 0; j < m; ++j) {
        Jet eta(m, order);
        for (std::size_t i = 0; i <= m; ++i) eta -= df(i, j) * jx[i];
        out(xi_row(m, a), j) = eta * inv_g;
        out(eta_row(m, a), j) = std::move(eta);
      }
      JetArray jdf = JetArray::zeros({m + 1, m}, m, order);
      for (std::size_t j = 0; j < m; ++j) {
        std::vector<Jet> col;
        col.reserve(m + 1);
        for (std::size_t i = 0; i <= m; ++i) col.push_back(df(i, j));
        const std::vector<Jet> jcol = apply_signed_permutation(jq[a], col);
        for (std::size_t i = 0; i <= m; ++i) jdf(i, j) = jcol[i];
      }
      const JetArray phi = matmul(dft, jdf);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) out(static_cast<std::size_t>(a) * m + i, j) = phi(i, j) * inv_g;
    }
    return out;
  }));

  MetricField g = memoize(MetricField(m, [m](const ChartPoint& p, int order) {
    const std::vector<Jet> u = lift_coordinates(p, order);
    Jet s = Jet::constant(m, order, 1.0);
    for (const auto& ui : u) s += ui * ui;
    const Jet r = reciprocal(s);
    const Jet c = 4.0 * r * r;
    JetArray out = JetArray::zeros({m, m}, m, order);
    for (std::size_t i = 0; i < m; ++i) out(i, i) = c;
    return out;
  }));

  std::array<EndomorphismField, 3> phi{
      EndomorphismField(m, [bundle, m](const ChartPoint& p, int k) { return slice_rows(bundle(p, k), 0, m); }),
      EndomorphismField(m, [bundle, m](const ChartPoint& p, int k) { return slice_rows(bundle(p, k), m, m); }),
      EndomorphismField(m, [bundle, m](const ChartPoint& p, int k) { return slice_rows(bundle(p, k), 2 * m, m); })};
  std::array<VectorField, 3> xi{
      VectorField(m, [bundle, m](const ChartPoint& p, int k) { return row_vector(bundle(p, k), xi_row(m, 0)); }),
      VectorField(m, [bundle, m](const ChartPoint& p, int k) { return row_vector(bundle(p, k), xi_row(m, 1)); }),
      VectorField(m, [bundle, m](const ChartPoint& p, int k) { return row_vector(bundle(p, k), xi_row(m, 2)); })};
  std::array<OneFormField, 3> eta{
      OneFormField(m, [bundle, m](const ChartPoint& p, int k) { return row_vector(bundle(p, k), eta_row(m, 0)); }),
      OneFormField(m, [bundle, m](const ChartPoint& p, int k) { return row_vector(bundle(p, k), eta_row(m, 1)); }),
      OneFormField(m, [bundle, m](const ChartPoint& p, int k) { return row_vector(bundle(p, k), eta_row(m, 2)); })};
  AlmostContactMetric3Structure s(g, phi, xi, eta);
  return Model{"sphere3sas", ModelKind::sphere, n, std::move(s), StructureClass::three_sasakian, std::nullopt};
}

namespace {

// Re-express a field evaluated in flat coordinates u in the coordinates w,
// u = A w + b: jets are substituted, then components transformed by `post`.
template <class Tag, class Post>
TensorField<Tag> pull_through(const TensorField<Tag>& f, const AffineMap& map, Post post) {
  const auto a_row = std::make_shared<std::vector<double>>();
  const Eigen::Index m = map.linear.rows();
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) a_row->push_back(map.linear(i, j));
  return TensorField<Tag>(f.dim(), [f, map, a_row, post](const ChartPoint& w, int order) {
    const Eigen::VectorXd u = map.linear * to_vector(w) + map.offset;
    JetArray r = f(ChartPoint(std::vector<double>(u.data(), u.data() + u.size())), order);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = substitute_linear(r[k], *a_row);
    return post(r);
  });
}

}  // namespace

Model scramble(const Model& flat, const AffineMap& map) {
  if (flat.kind != ModelKind::flat) throw std::invalid_argument("scramble expects the flat model");
  const std::size_t m = flat.dim();
  if (static_cast<std::size_t>(map.linear.rows()) != m || static_cast<std::size_t>(map.linear.cols()) != m ||
      static_cast<std::size_t>(map.offset.size()) != m)
    throw std::invalid_argument("affine map dimension does not match the model");
  const Eigen::MatrixXd a = map.linear;
  auto lin = [m](const Eigen::MatrixXd& x, int order) { return JetArray::from_matrix(x, m, order); };
  auto vec_post = [a, lin](const JetArray& x) { return matmul(lin(a.transpose(), x.order()), x); };
  auto endo_post = [a, lin](const JetArray& x) {
    return matmul(matmul(lin(a.transpose(), x.order()), x), lin(a, x.order()));
  };
  const auto& s = flat.structure;
  std::array<EndomorphismField, 3> phi{pull_through(s.phi(0), map, endo_post),
                                       pull_through(s.phi(1), map, endo_post),
                                       pull_through(s.phi(2), map, endo_post)};
  std::array<VectorField, 3> xi{pull_through(s.xi(0), map, vec_post), pull_through(s.xi(1), map, vec_post),
                                pull_through(s.xi(2), map, vec_post)};
  std::array<OneFormField, 3> eta{pull_through(s.eta(0), map, vec_post), pull_through(s.eta(1), map, vec_post),
                                  pull_through(s.eta(2), map, vec_post)};
  AlmostContactMetric3Structure out(pull_through(s.g(), map, endo_post), phi, xi, eta);
  return Model{"flat3cos-scrambled", ModelKind::scrambled, flat.n, std::move(out),
               StructureClass::three_cosymplectic, map};
}

Model scramble(const Model& flat, std::uint64_t seed) {
  const std::size_t m = flat.dim();
  Rng rng(derive_seed(seed, 0x5c4a));
  AffineMap map{rng.orthogonal(m), Eigen::VectorXd()};
  map.offset = rng.uniform_vector(m, -0.5, 0.5);
  return scramble(flat, map);
}

// ---------------------------------------------------------------------------

std::array<Eigen::MatrixXd, 3> darboux_form_constants(std::size_t n) {
  const auto nn = static_cast<Eigen::Index>(n);
  const Eigen::Index m = 4 * nn + 3;
  const Eigen::Index x = 0, y = nn, u = 2 * nn, v = 3 * nn, z = 4 * nn;
  std::array<Eigen::MatrixXd, 3> c;
  for (auto& k : c) k = Eigen::MatrixXd::Zero(m, m);
  auto set = [&](int a, Eigen::Index i, Eigen::Index j, double val) {
    c[a](i, j) = val;
    c[a](j, i) = -val;
  };
  for (Eigen::Index i = 0; i < nn; ++i) {
    set(0, x + i, y + i, -1);
    set(0, u + i, v + i, -1);
    set(1, x + i, u + i, -1);
    set(1, y + i, v + i, 1);
    set(2, x + i, v + i, -1);
    set(2, y + i, u + i, -1);
  }
  set(0, z + 1, z + 2, -1);
  set(1, z + 0, z + 2, 1);
  set(2, z + 0, z + 1, -1);
  return c;
}

DarbouxFrame::DarbouxFrame(Model model, ChartPoint base, Eigen::MatrixXd initial, int ode_steps)
    : model_(std::move(model)),
      base_(std::move(base)),
      initial_(std::move(initial)),
      ode_steps_(ode_steps),
      gamma_(christoffel(model_.structure.g())) {}

Eigen::MatrixXd DarbouxFrame::evaluate(const ChartPoint& q) const {
  const auto& s = model_.structure;
  const std::size_t m = s.dim();
  const Eigen::Index h = static_cast<Eigen::Index>(4 * model_.n);
  const Eigen::VectorXd p0 = to_vector(base_);
  const Eigen::VectorXd d = to_vector(q) - p0;
  Eigen::MatrixXd w = initial_.leftCols(h);

  const double len = d.norm();
  if (len > 0.0) {
    const int steps = std::max(1, static_cast<int>(std::ceil(ode_steps_ * len)));
    const double dt = 1.0 / steps;
    // dV^k/dt = -Gamma^k_ij(gamma(t)) d^i V^j along gamma(t) = p + t d. The
    // coefficient matrix is sampled once per half step and shared by stages.
    std::vector<Eigen::MatrixXd> coeff;
    coeff.reserve(static_cast<std::size_t>(2 * steps + 1));
    for (int k = 0; k <= 2 * steps; ++k) {
      const Eigen::VectorXd pt = p0 + (0.5 * k * dt) * d;
      const std::vector<double> gv =
          gamma_(ChartPoint(std::vector<double>(pt.data(), pt.data() + pt.size())), 0).values();
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
      for (std::size_t kk = 0; kk < m; ++kk)
        for (std::size_t i = 0; i < m; ++i)
          for (std::size_t j = 0; j < m; ++j)
            a(static_cast<Eigen::Index>(kk), static_cast<Eigen::Index>(j)) -=
                gv[(kk * m + i) * m + j] * d[static_cast<Eigen::Index>(i)];
      coeff.push_back(std::move(a));
    }
    for (int step = 0; step < steps; ++step) {
      const Eigen::MatrixXd& a0 = coeff[static_cast<std::size_t>(2 * step)];
      const Eigen::MatrixXd& ah = coeff[static_cast<std::size_t>(2 * step + 1)];
      const Eigen::MatrixXd& a1 = coeff[static_cast<std::size_t>(2 * step + 2)];
      const Eigen::MatrixXd k1 = a0 * w;
      const Eigen::MatrixXd k2 = ah * (w + 0.5 * dt * k1);
      const Eigen::MatrixXd k3 = ah * (w + 0.5 * dt * k2);
      const Eigen::MatrixXd k4 = a1 * (w + dt * k3);
      w += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
  }
  Eigen::MatrixXd out(static_cast<Eigen::Index>(m), h + 3);
  out.leftCols(h) = w;
  for (int a = 0; a < 3; ++a) out.col(h + a) = s.xi(a)(q, 0).values_vector();
  return out;
}

Eigen::VectorXd DarbouxFrame::bracket(std::size_t a, std::size_t b, const ChartPoint& q, double h) const {
  const auto m = static_cast<Eigen::Index>(q.dim());
  const Eigen::VectorXd q0 = to_vector(q);
  const Eigen::MatrixXd f = evaluate(q);
  const auto ia = static_cast<Eigen::Index>(a), ib = static_cast<Eigen::Index>(b);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    Eigen::VectorXd qp = q0, qm = q0;
    qp[j] += h;
    qm[j] -= h;
    const Eigen::MatrixXd fp = evaluate(ChartPoint(std::vector<double>(qp.data(), qp.data() + m)));
    const Eigen::MatrixXd fm = evaluate(ChartPoint(std::vector<double>(qm.data(), qm.data() + m)));
    const Eigen::MatrixXd df = (fp - fm) / (2.0 * h);
    r += f(j, ia) * df.col(ib) - f(j, ib) * df.col(ia);
  }
  return r;
}

double DarbouxFrame::max_bracket(const ChartPoint& q, double h) const {
  const auto m = static_cast<Eigen::Index>(q.dim());
  const Eigen::VectorXd q0 = to_vector(q);
  const Eigen::MatrixXd f = evaluate(q);
  std::vector<Eigen::MatrixXd> df;
  for (Eigen::Index j = 0; j < m; ++j) {
    Eigen::VectorXd qp = q0, qm = q0;
    qp[j] += h;
    qm[j] -= h;
    df.push_back((evaluate(ChartPoint(std::vector<double>(qp.data(), qp.data() + m))) -
                  evaluate(ChartPoint(std::vector<double>(qm.data(), qm.data() + m)))) /
                 (2.0 * h));
  }
  double r = 0.0;
  for (Eigen::Index a = 0; a < f.cols(); ++a)
    for (Eigen::Index b = a + 1; b < f.cols(); ++b) {
      Eigen::VectorXd br = Eigen::VectorXd::Zero(m);
      for (Eigen::Index j = 0; j < m; ++j) br += f(j, a) * df[j].col(b) - f(j, b) * df[j].col(a);
      r = std::max(r, max_abs(br));
    }
  return r;
}

double DarbouxFrame::form_constant_residual(const ChartPoint& q) const {
  const StructureValues v = structure_values(model_.structure, q);
  const Eigen::MatrixXd f = evaluate(q);
  const auto expected = darboux_form_constants(model_.n);
  double r = 0.0;
  for (int a = 0; a < 3; ++a) r = std::max(r, max_abs(f.transpose() * v.Phi[a] * f - expected[a]));
  return r;
}

double DarbouxFrame::phi2_yv_residual(const ChartPoint& q) const {
  const StructureValues v = structure_values(model_.structure, q);
  const Eigen::MatrixXd f = evaluate(q);
  const auto n = static_cast<Eigen::Index>(model_.n);
  const Eigen::MatrixXd block = f.middleCols(n, n).transpose() * v.Phi[1] * f.middleCols(3 * n, n);
  return max_abs(block - Eigen::MatrixXd::Identity(n, n));
}

double DarbouxFrame::orthonormality_residual(const ChartPoint& q) const {
  const Eigen::MatrixXd g = model_.structure.g()(q, 0).values_matrix();
  const Eigen::MatrixXd f = evaluate(q);
  return max_abs(f.transpose() * g * f - Eigen::MatrixXd::Identity(f.cols(), f.cols()));
}

double DarbouxFrame::adapted_residual(const ChartPoint& q) const {
  const StructureValues v = structure_values(model_.structure, q);
  const Eigen::MatrixXd f = evaluate(q);
  const auto n = static_cast<Eigen::Index>(model_.n);
  double r = 0.0;
  for (int a = 0; a < 3; ++a)
    r = std::max(r, max_abs(f.middleCols((a + 1) * n, n) - v.phi[a] * f.leftCols(n)));
  return r;
}

DarbouxFrame build_darboux_frame(const Model& model, const ChartPoint& p, int ode_steps, double flat_tol) {
  const auto& s = model.structure;
  const std::size_t m = s.dim();
  if (ode_steps < 1) throw std::invalid_argument("ode_steps must be positive");
  const std::vector<double> r = riemann_components(christoffel(s.g()))(p, 0).values();
  const double curvature = max_abs(r);
  if (curvature > flat_tol)
    throw NonFlatError("Darboux frame requires a flat metric; max |R| = " + std::to_string(curvature), curvature);

  const StructureValues v = structure_values(s, p);
  auto ip = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return a.dot(v.g * b); };
  std::vector<Eigen::VectorXd> span{v.xi[0], v.xi[1], v.xi[2]};
  std::vector<Eigen::VectorXd> seeds;
  for (std::size_t k = 0; k < m && seeds.size() < model.n; ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(k));
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : span) e -= ip(b, e) * b;
    const double norm = std::sqrt(ip(e, e));
    if (norm < 1e-6) continue;
    e /= norm;
    seeds.push_back(e);
    span.push_back(e);
    for (int a = 0; a < 3; ++a) span.push_back(v.phi[a] * e);
  }
  const auto n = static_cast<Eigen::Index>(model.n);
  Eigen::MatrixXd initial(static_cast<Eigen::Index>(m), 4 * n + 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd& e = seeds[static_cast<std::size_t>(i)];
    initial.col(i) = e;
    for (int a = 0; a < 3; ++a) initial.col((a + 1) * n + i) = v.phi[a] * e;
  }
  for (int a = 0; a < 3; ++a) initial.col(4 * n + a) = v.xi[a];
  return DarbouxFrame(model, p, std::move(initial), ode_steps);
}

double sphere_nonflatness_witness(const Model& model, const ChartPoint& p) {
  if (!model.in_domain(p)) throw ChartDomainError("chart point outside the sampling domain of " + model.id);
  return horizontal_scalar_curvature(CanonicalConnection(model.structure), p);
}

}  // namespace acm3
