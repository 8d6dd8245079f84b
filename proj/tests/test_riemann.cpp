#include <doctest.h>

#include <cmath>

#include "acm3/contact3.hpp"
#include "acm3/models.hpp"
#include "acm3/riemann.hpp"
#include "acm3/sampling.hpp"
#include "oracle/finite_difference.hpp"
#include "oracle/generators.hpp"

using namespace acm3;

namespace {

constexpr std::size_t kM = 7;

struct Geometry {
  Model model;
  AffineConnection lc;
  CurvatureTensor curv;
  explicit Geometry(Model m)
      : model(std::move(m)), lc(levi_civita(model.structure.g())), curv(riemann_curvature(lc)) {}
};

const Geometry& sphere() {
  static const Geometry g(make_sphere(1));
  return g;
}

const Geometry& flat() {
  static const Geometry g(make_flat(1));
  return g;
}

double vmax(const VectorField& f, const ChartPoint& p) { return max_abs(f(p, 0).values()); }

}  // namespace

TEST_CASE("christoffel symbols") {
  const ChartPoint p{0.3, -0.2, 0.5, 0.1, 0.7, -0.4, 0.9};
  for (double v : christoffel(flat().model.structure.g())(p, 1).values()) CHECK(v == 0.0);

  const ConnectionField gamma = christoffel(sphere().model.structure.g());
  const ChartPoint origin(std::vector<double>(kM, 0.0));
  CHECK(std::abs(gamma(origin, 0)(0, 0, 0).value()) < 1e-15);

  double worst = 0.0;
  for (const auto& q : sphere().model.sample_points(8, 7)) {
    const auto expected = oracle::christoffel_by_differences(sphere().model.structure.g(), q);
    const auto got = gamma(q, 0).values();
    for (std::size_t i = 0; i < got.size(); ++i) worst = std::max(worst, oracle::relative_error(got[i], expected[i]));
    // Order-0 evaluation agrees with the leading coefficients of a higher-order one.
    const auto high = gamma(q, 2).values();
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(high[i] - got[i]) < 1e-14);
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("levi-civita is torsion-free and metric") {
  Rng rng(derive_seed(42, 30));
  for (const Geometry* geo : {&flat(), &sphere()}) {
    const bool curved = geo == &sphere();
    const double tol = curved ? 1e-8 : 1e-10;
    const MetricField g = geo->model.structure.g();
    double tors = 0, metric = 0;
    for (const auto& p : geo->model.sample_points(32, 8)) {
      const VectorField x = constant_vector(gen::vector(kM, rng)), y = constant_vector(gen::vector(kM, rng)),
                        z = constant_vector(gen::vector(kM, rng));
      tors = std::max(tors, vmax(torsion(geo->lc, x, y), p));
      metric = std::max(metric, std::abs(nabla_metric(geo->lc, g, z, x, y).value(p)));
    }
    CHECK(tors <= tol);
    CHECK(metric <= tol);
    CHECK(geo->lc.is_levi_civita());
  }
  const auto pts = sphere().model.sample_points(4, 9);
  const BilinearDerivativeField ng =
      covariant_derivative(christoffel(sphere().model.structure.g()), retag<BilinearTag>(sphere().model.structure.g()));
  for (const auto& p : pts) CHECK(max_abs(ng(p, 0).values()) < 1e-8);
}

TEST_CASE("affine connection operator laws") {
  Rng rng(derive_seed(42, 31));
  const auto& lc = sphere().lc;
  const VectorField x = gen::polynomial_vector(kM, rng), y = gen::polynomial_vector(kM, rng),
                    z = gen::polynomial_vector(kM, rng);
  const ScalarField f = gen::quadratic(kM, rng);
  double add = 0, lin = 0, leib = 0;
  for (const auto& p : sphere().model.sample_points(8, 10)) {
    add = std::max(add, vmax(lc.derivative(x + y, z) - lc.derivative(x, z) - lc.derivative(y, z), p));
    add = std::max(add, vmax(lc.derivative(x, y + z) - lc.derivative(x, y) - lc.derivative(x, z), p));
    lin = std::max(lin, vmax(lc.derivative(f * x, y) - f * lc.derivative(x, y), p));
    leib = std::max(leib, vmax(lc.derivative(x, f * y) - directional_derivative(x, f) * y - f * lc.derivative(x, y), p));
  }
  CHECK(add < 1e-10);
  CHECK(lin < 1e-10);
  CHECK(leib < 1e-10);
}

TEST_CASE("flat curvature vanishes exactly") {
  for (const auto& p : flat().model.sample_points(8, 11)) {
    CHECK(max_abs(flat().curv.components_at(p)) == 0.0);
    CHECK(max_abs(ricci(flat().curv, flat().model.structure.g(), p)) == 0.0);
    CHECK(scalar_curvature(flat().curv, flat().model.structure.g(), p) == 0.0);
  }
  const Model scrambled = scramble(make_flat(1), 42);
  const CurvatureTensor rc = riemann_curvature(levi_civita(scrambled.structure.g()));
  for (const auto& p : scrambled.sample_points(4, 12)) CHECK(max_abs(rc.components_at(p)) <= 1e-12);
}

TEST_CASE("sphere curvature constants") {
  const MetricField g = sphere().model.structure.g();
  Rng rng(derive_seed(42, 32));
  double scal = 0, einstein = 0, frame_diff = 0, vertical = 0;
  for (const auto& p : sphere().model.sample_points(8, 13)) {
    scal = std::max(scal, std::abs(scalar_curvature(sphere().curv, g, p) - 42.0));
    const Eigen::MatrixXd gv = g(p, 0).values_matrix();
    const Eigen::MatrixXd ric = ricci(sphere().curv, g, p);
    einstein = std::max(einstein, max_abs(ric - 6.0 * gv));
    // A second orthonormal frame: the first rotated by a seeded orthogonal matrix.
    const Eigen::MatrixXd frame2 = orthonormal_frame(gv) * rng.orthogonal(kM);
    frame_diff = std::max(frame_diff, max_abs(ric - ricci(sphere().curv, g, p, frame2)));
    const StructureValues v = structure_values(sphere().model.structure, p);
    const Eigen::VectorXd r = sphere().curv.apply(p, v.xi[0], v.xi[1], v.xi[1]);
    vertical = std::max(vertical, std::abs(v.xi[0].dot(v.g * r) - 1.0));
  }
  CHECK(scal <= 1e-5);
  CHECK(einstein <= 1e-6);
  CHECK(frame_diff <= 1e-10);
  CHECK(vertical <= 1e-6);
}

TEST_CASE("sphere curvature identities") {
  Rng rng(derive_seed(42, 33));
  const auto& curv = sphere().curv;
  double anti = 0, bianchi = 0, tensorial = 0, nested = 0;
  for (const auto& p : sphere().model.sample_points(8, 14)) {
    const Eigen::VectorXd x = gen::vector(kM, rng), y = gen::vector(kM, rng), z = gen::vector(kM, rng);
    const Eigen::VectorXd rxy = curv.apply(p, x, y, z);
    anti = std::max(anti, (rxy + curv.apply(p, y, x, z)).cwiseAbs().maxCoeff());
    bianchi = std::max(bianchi, (rxy + curv.apply(p, y, z, x) + curv.apply(p, z, x, y)).cwiseAbs().maxCoeff());
    const double f = rng.uniform(-2, 2);
    tensorial = std::max(tensorial, (curv.apply(p, f * x, y, z) - f * rxy).cwiseAbs().maxCoeff());
    tensorial = std::max(tensorial, (curv.apply(p, x, y, f * z) - f * rxy).cwiseAbs().maxCoeff());
    const VectorField op =
        curvature_operator(sphere().lc, constant_vector(x), constant_vector(y), constant_vector(z));
    nested = std::max(nested, (op(p, 0).values_vector() - rxy).cwiseAbs().maxCoeff());
  }
  CHECK(anti <= 1e-12);
  CHECK(bianchi <= 1e-7);
  CHECK(tensorial <= 1e-8);
  CHECK(nested <= 1e-8);
}

TEST_CASE("curvature tensoriality for field multipliers") {
  Rng rng(derive_seed(42, 34));
  const ScalarField f = gen::quadratic(kM, rng);
  const VectorField x = constant_vector(gen::vector(kM, rng)), y = constant_vector(gen::vector(kM, rng)),
                    z = constant_vector(gen::vector(kM, rng));
  const ChartPoint p = sphere().model.sample_points(1, 15).front();
  const VectorField lhs = curvature_operator(sphere().lc, f * x, y, z);
  const VectorField rhs = f * curvature_operator(sphere().lc, x, y, z);
  CHECK(vmax(lhs - rhs, p) <= 1e-8);
}

TEST_CASE("killing fields") {
  const auto pts = flat().model.sample_points(8, 16);
  for (int a = 0; a < 3; ++a) {
    const KillingResult k = is_killing(flat().model.structure.xi(a), flat().model.structure.g(), pts, 1e-12);
    CHECK(k.killing);
    CHECK(k.max_residual == 0.0);
  }
  const VectorField radial = coordinate_function(kM, 0) * coordinate_vector(kM, 0);
  const KillingResult k = is_killing(radial, flat().model.structure.g(), pts, 1e-7);
  CHECK_FALSE(k.killing);
  CHECK(k.max_residual == doctest::Approx(2.0));
}

TEST_CASE("orthonormal frames") {
  const Eigen::MatrixXd g = (Eigen::MatrixXd(2, 2) << 4, 1, 1, 3).finished();
  const Eigen::MatrixXd e = orthonormal_frame(g);
  CHECK((e.transpose() * g * e - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(orthonormal_frame((Eigen::MatrixXd(2, 2) << 1, 2, 2, 1).finished()), std::domain_error);
}
