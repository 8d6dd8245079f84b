#include <doctest.h>

#include <cmath>
#include <tuple>

#include "acm3/canonical.hpp"
#include "acm3/models.hpp"
#include "acm3/sampling.hpp"
#include "oracle/generators.hpp"

using namespace acm3;

namespace {

constexpr std::size_t kM = 7;
constexpr std::size_t kX = 0, kY = 1, kZ1 = 4;

const Model& sphere() {
  static const Model m = make_sphere(1);
  return m;
}

const Model& flat() {
  static const Model m = make_flat(1);
  return m;
}

const CanonicalConnection& sphere_canonical() {
  static const CanonicalConnection c(sphere().structure);
  return c;
}

const CanonicalConnection& flat_canonical() {
  static const CanonicalConnection c(flat().structure);
  return c;
}

double vmax(const VectorField& f, const ChartPoint& p) { return max_abs(f(p, 0).values()); }

}  // namespace

TEST_CASE("canonical equals levi-civita on the flat model") {
  Rng rng(derive_seed(42, 50));
  const auto& c = flat_canonical();
  double worst = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const VectorField e = gen::polynomial_vector(kM, rng), f = gen::polynomial_vector(kM, rng);
    for (const auto& p : flat().sample_points(4, 1))
      worst = std::max(worst, vmax(c.derivative(e, f) - c.levi_civita().derivative(e, f), p));
  }
  CHECK(worst <= 1e-12);
  for (const auto& p : flat().sample_points(4, 2)) {
    const Eigen::VectorXd x = Eigen::VectorXd::Unit(kM, kX), y = Eigen::VectorXd::Unit(kM, kY);
    CHECK(canonical_curvature(c, x, y, x, p).cwiseAbs().maxCoeff() == 0.0);
    CHECK(canonical_torsion(c, x, y, p).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("reeb fields are parallel and outputs on horizontal fields are horizontal") {
  Rng rng(derive_seed(42, 51));
  for (const CanonicalConnection* c : {&flat_canonical(), &sphere_canonical()}) {
    const auto& s = c->structure();
    const VectorField e = gen::polynomial_vector(kM, rng);
    for (const auto& p : (c == &flat_canonical() ? flat() : sphere()).sample_points(4, 3))
      for (int a = 0; a < 3; ++a) CHECK(vmax(c->derivative(e, s.xi(a)), p) <= 1e-12);
  }
  const auto& s = sphere().structure;
  const VectorField x = horizontal_projection(s, constant_vector(gen::vector(kM, rng)));
  const VectorField y = horizontal_projection(s, coordinate_vector(kM, kY));
  const VectorField d = sphere_canonical().derivative(x, y);
  for (const auto& p : sphere().sample_points(4, 4))
    for (int a = 0; a < 3; ++a) CHECK(std::abs(inner(s.g(), d, s.xi(a)).value(p)) <= 1e-12);
}

TEST_CASE("canonical torsion") {
  const auto& c = sphere_canonical();
  const auto& s = sphere().structure;
  Rng rng(derive_seed(42, 52));
  double horizontal = 0, pair = 0;
  for (const auto& p : sphere().sample_points(8, 5)) {
    const StructureValues v = structure_values(s, p);
    const Eigen::VectorXd x = horizontal_projection(s, p, gen::vector(kM, rng));
    const Eigen::VectorXd y = horizontal_projection(s, p, gen::vector(kM, rng));
    Eigen::VectorXd expected = Eigen::VectorXd::Zero(kM);
    for (int a = 0; a < 3; ++a) expected += 2.0 * x.dot(v.Phi[a] * y) * v.xi[a];
    horizontal = std::max(horizontal, (canonical_torsion(c, x, y, p) - expected).cwiseAbs().maxCoeff());
    pair = std::max(pair, (canonical_torsion(c, v.xi[0], v.xi[1], p) + 2.0 * v.xi[2]).cwiseAbs().maxCoeff());
  }
  CHECK(horizontal <= 1e-7);
  CHECK(pair <= 1e-7);

  const ResidualReport flat_rep = check_torsion(flat_canonical(), flat().sample_points(4, 6), 1e-12);
  CHECK(flat_rep.all_pass());
  CHECK(flat_rep.max_residual() == 0.0);
  const ResidualReport sphere_rep = check_torsion(c, sphere().sample_points(4, 7), 1e-7);
  CHECK(sphere_rep.all_pass());
}

TEST_CASE("torsion and curvature are tensorial") {
  Rng rng(derive_seed(42, 53));
  const auto& c = sphere_canonical();
  const ScalarField f = gen::quadratic(kM, rng);
  const VectorField e = constant_vector(gen::vector(kM, rng)), g = constant_vector(gen::vector(kM, rng));
  const VectorField z = constant_vector(gen::vector(kM, rng));
  const ChartPoint p = sphere().sample_points(1, 8).front();
  CHECK(vmax(canonical_torsion(c, f * e, g) - f * canonical_torsion(c, e, g), p) <= 1e-8);
  CHECK(vmax(canonical_torsion(c, e, f * g) - f * canonical_torsion(c, e, g), p) <= 1e-8);
  CHECK(vmax(canonical_curvature(c, f * e, g, z) - f * canonical_curvature(c, e, g, z), p) <= 1e-8);
  CHECK(vmax(canonical_curvature(c, e, g, f * z) - f * canonical_curvature(c, e, g, z), p) <= 1e-8);
}

TEST_CASE("metric compatibility and killing reeb fields") {
  const ResidualReport f = check_metric_compat(flat_canonical(), flat().sample_points(4, 9), 1e-12);
  CHECK(f.all_pass());
  CHECK(f.max_residual() == 0.0);
  const ResidualReport s = check_metric_compat(sphere_canonical(), sphere().sample_points(8, 10), 1e-7);
  CHECK(s.all_pass());

  // g + z1 dx1 (x) dx1 keeps the flat phi, xi, eta but spoils the Killing property of xi_1.
  const auto& fs = flat().structure;
  const MetricField g2 = fs.g() + coordinate_function(kM, kZ1) *
                                      retag<MetricTag>(tensor_product(coordinate_one_form(kM, kX),
                                                                      coordinate_one_form(kM, kX)));
  const CanonicalConnection bent(AlmostContactMetric3Structure(g2, {fs.phi(0), fs.phi(1), fs.phi(2)},
                                                               {fs.xi(0), fs.xi(1), fs.xi(2)},
                                                               {fs.eta(0), fs.eta(1), fs.eta(2)}));
  const ChartPoint p{0.1, 0.2, -0.3, 0.4, 1.0, 0.0, 0.0};
  const ResidualReport r = check_metric_compat(bent, {p}, 1e-9);
  CHECK(r.entry("killing-xi1").max_residual >= 0.5);
  CHECK_FALSE(r.entry("nabla-tilde-g").pass);
  const VectorField dx = coordinate_vector(kM, kX);
  CHECK(std::abs(nabla_metric(bent.as_affine(), g2, fs.xi(0), dx, dx).value(p)) >= 0.5);
}

TEST_CASE("eta parallel") {
  const ResidualReport f = check_eta_parallel(flat_canonical(), flat().sample_points(4, 11), 1e-12);
  CHECK(f.all_pass());
  CHECK(f.max_residual() == 0.0);
  const ResidualReport s = check_eta_parallel(sphere_canonical(), sphere().sample_points(8, 12), 1e-8);
  CHECK(s.all_pass());
  CHECK(s.entry("deta-horizontal-reeb").max_residual <= 1e-8);
  CHECK(s.entry("nabla-tilde-eta-on-reeb").max_residual <= 1e-12);
}

TEST_CASE("covariant derivative of phi") {
  const ResidualReport f =
      check_nabla_tilde_phi(flat_canonical(), StructureClass::three_cosymplectic, flat().sample_points(4, 13), 1e-12);
  CHECK(f.entry("nabla-tilde-phi-zero").max_residual == 0.0);
  const ResidualReport s =
      check_nabla_tilde_phi(sphere_canonical(), StructureClass::three_sasakian, sphere().sample_points(8, 14), 1e-6);
  CHECK(s.all_pass());
  CHECK(s.entry("nabla-tilde-reeb2-phi1").max_residual <= 1e-6);
  CHECK(s.entry("nabla-tilde-horizontal-phi1").max_residual <= 1e-6);
}

TEST_CASE("uniqueness axioms") {
  const ResidualReport f =
      check_uniqueness_axioms(flat_canonical().as_affine(), flat().structure, flat().sample_points(4, 15), 1e-12);
  CHECK(f.all_pass());
  CHECK(f.max_residual() == 0.0);
  const ResidualReport s = check_uniqueness_axioms(sphere_canonical().as_affine(), sphere().structure,
                                                   sphere().sample_points(4, 16), 1e-7);
  CHECK(s.all_pass());
}

TEST_CASE("perturbed connections against the uniqueness axioms") {
  const auto pts = flat().sample_points(4, 17);
  // nabla_{d_i} d_j += c xi_1 for each (i, j, c).
  const auto perturbed = [](std::initializer_list<std::tuple<std::size_t, std::size_t, double>> terms) {
    std::vector<double> values(kM * kM * kM, 0.0);
    for (const auto& [i, j, c] : terms) values[(kZ1 * kM + i) * kM + j] = c;
    return connection_from_coefficients("perturbed", constant_tensor<ConnectionTag>(kM, {kM, kM, kM}, values));
  };
  // Antisymmetric part: torsion 0.2 xi_1 on (d/dx1, d/dy1), which vanishes for the model.
  const AffineConnection skew = perturbed({{kX, kY, 0.1}, {kY, kX, -0.1}});
  const ResidualReport rs = check_uniqueness_axioms(skew, flat().structure, pts, 1e-9);
  CHECK_FALSE(rs.entry("axiom-torsion-horizontal").pass);
  const VectorField t = torsion(skew, coordinate_vector(kM, kX), coordinate_vector(kM, kY));
  CHECK(vmax(t, pts.front()) >= 0.05);

  // 0.1 xi_1 (x) dx1 (x) dx1 is symmetric: torsion, nabla xi_a and the
  // horizontal metric terms are all unchanged, so every axiom still holds.
  const AffineConnection sym = perturbed({{kX, kX, 0.1}});
  const ResidualReport rp = check_uniqueness_axioms(sym, flat().structure, pts, 1e-9);
  CHECK(rp.all_pass());
  const VectorField dx = coordinate_vector(kM, kX);
  CHECK(vmax(sym.derivative(dx, dx) - flat_canonical().derivative(dx, dx), pts.front()) == doctest::Approx(0.1));
}

TEST_CASE("canonical curvature on the sphere") {
  const auto& c = sphere_canonical();
  const auto& s = sphere().structure;
  Rng rng(derive_seed(42, 54));
  double vertical = 0;
  for (const auto& p : sphere().sample_points(4, 18)) {
    const StructureValues v = structure_values(s, p);
    vertical = std::max(vertical,
                        canonical_curvature(c, v.xi[0], v.xi[1], gen::vector(kM, rng), p).cwiseAbs().maxCoeff());
  }
  CHECK(vertical <= 1e-6);

  CurvatureTolerances tol;
  const ResidualReport r = check_canonical_curvature(c, sphere().sample_points(4, 19), tol);
  CHECK(r.entry("curvature-reeb-annihilated").pass);
  CHECK(r.entry("curvature-vertical-pair").pass);
  CHECK(r.entry("curvature-mixed-basic").pass);
  CHECK(r.entry("curvature-horizontal-formula-carried").pass);
  // The formula without the 2 d eta(X, Y) phi Z term does not hold on the sphere.
  CHECK(r.entry("curvature-horizontal-formula-stated").max_residual > 0.1);
}

TEST_CASE("horizontal scalar curvature") {
  const auto pts = sphere().sample_points(8, 20);
  double lo = 1e300, hi = -1e300;
  for (const auto& p : pts) {
    const double v = horizontal_scalar_curvature(sphere_canonical(), p);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    CHECK(v == doctest::Approx(48.0).epsilon(1e-4 / 48.0));
  }
  CHECK(hi - lo <= 1e-4);
  CHECK(horizontal_scalar_curvature(flat_canonical(), flat().sample_points(1, 21).front()) == 0.0);

  const Eigen::MatrixXd frame = horizontal_orthonormal_frame(sphere().structure, pts.front());
  CHECK(frame.cols() == 4);
  const StructureValues v = structure_values(sphere().structure, pts.front());
  CHECK(max_abs(frame.transpose() * v.g * frame - Eigen::MatrixXd::Identity(4, 4)) <= 1e-12);
  for (int a = 0; a < 3; ++a) CHECK(max_abs(v.eta[a].transpose() * frame) <= 1e-12);
}
