#include <doctest.h>

#include <cmath>

#include "acm3/calculus.hpp"
#include "acm3/contact3.hpp"
#include "acm3/models.hpp"
#include "acm3/sampling.hpp"
#include "oracle/finite_difference.hpp"
#include "oracle/generators.hpp"

using namespace acm3;

namespace {

// Flat chart, n = 1: axes x, y, u, v, z1, z2, z3.
constexpr std::size_t kM = 7;
constexpr std::size_t kX = 0, kY = 1, kZ1 = 4;

double vmax(const VectorField& f, const ChartPoint& p) { return max_abs(f(p, 0).values()); }

template <class Tag>
double tmax(const TensorField<Tag>& f, const ChartPoint& p) {
  return max_abs(f(p, 0).values());
}

const Model& sphere() {
  static const Model m = make_sphere(1);
  return m;
}

const Model& flat() {
  static const Model m = make_flat(1);
  return m;
}

}  // namespace

TEST_CASE("lie bracket examples") {
  const ChartPoint p{0.3, -0.2, 0.5, 0.1, 0.7, -0.4, 0.9};
  CHECK(vmax(lie_bracket(coordinate_vector(kM, kX), coordinate_vector(kM, kY)), p) == 0.0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(vmax(lie_bracket(flat().structure.xi(a), flat().structure.xi(b)), p) == 0.0);

  const ScalarField x1 = coordinate_function(kM, kX), y1 = coordinate_function(kM, kY);
  const VectorField X = x1 * coordinate_vector(kM, kY);
  const VectorField Y = y1 * coordinate_vector(kM, kX);
  const VectorField expected = x1 * coordinate_vector(kM, kX) - y1 * coordinate_vector(kM, kY);
  const VectorField br = lie_bracket(X, Y);
  CHECK(vmax(br - expected, p) < 1e-15);
  // The coordinate formula against differences of the component values.
  const auto fd = [&](const ChartPoint& q) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(kM);
    const Eigen::VectorXd xv = X(q, 0).values_vector(), yv = Y(q, 0).values_vector();
    for (std::size_t j = 0; j < kM; ++j) {
      const auto dy = oracle::central_difference(oracle::values_of(Y), q, j);
      const auto dx = oracle::central_difference(oracle::values_of(X), q, j);
      for (std::size_t i = 0; i < kM; ++i) r(i) += xv(j) * dy[i] - yv(j) * dx[i];
    }
    return r;
  };
  CHECK((br(p, 0).values_vector() - fd(p)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("exterior derivative examples") {
  const ChartPoint p{0.3, -0.2, 0.5, 0.1, 0.7, -0.4, 0.9};
  for (std::size_t a = 0; a < 3; ++a) {
    CHECK(tmax(exterior_derivative(exterior_derivative(coordinate_one_form(kM, kZ1 + a))), p) == 0.0);
    CHECK(tmax(exterior_derivative(flat().structure.eta(static_cast<int>(a))), p) == 0.0);
  }
  // eta = x dy, half convention.
  const OneFormField eta = coordinate_function(kM, kX) * coordinate_one_form(kM, kY);
  const ScalarField v = evaluate_form(exterior_derivative(eta), coordinate_vector(kM, kX), coordinate_vector(kM, kY));
  CHECK(v.value(p) == doctest::Approx(0.5));
  // The same number from dw(X, Y) = 1/2 (X w(Y) - Y w(X) - w([X, Y])) with
  // one-sided inputs differentiated by the oracle.
  const ScalarField wy = contract(eta, coordinate_vector(kM, kY));
  const ScalarField wx = contract(eta, coordinate_vector(kM, kX));
  const double by_hand = 0.5 * (oracle::central_difference(oracle::values_of(wy), p, kX)[0] -
                                oracle::central_difference(oracle::values_of(wx), p, kY)[0]);
  CHECK(by_hand == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("lie derivative of endomorphisms") {
  const ChartPoint p{0.3, -0.2, 0.5, 0.1, 0.7, -0.4, 0.9};
  const auto& f = flat().structure;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) CHECK(tmax(lie_derivative_endo(f.xi(a), f.phi(b)), p) == 0.0);

  Rng rng(derive_seed(42, 20));
  const EndomorphismField c = constant_endomorphism(gen::matrix(kM, rng));
  CHECK(tmax(lie_derivative_endo(constant_vector(gen::vector(kM, rng)), c), p) == 0.0);

  const auto& s = sphere().structure;
  double worst = 0.0;
  for (const auto& q : sphere().sample_points(16, 3)) {
    const EndomorphismField l = lie_derivative_endo(s.xi(1), s.phi(0));
    worst = std::max(worst, tmax(l + 2.0 * s.phi(2), q));
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("lie derivative of the metric") {
  const ChartPoint p{0.3, -0.2, 0.5, 0.1, 0.7, -0.4, 0.9};
  const MetricField g = flat().structure.g();
  CHECK(tmax(lie_derivative_metric(coordinate_vector(kM, kZ1), g), p) == 0.0);

  const VectorField radial = coordinate_function(kM, kX) * coordinate_vector(kM, kX);
  const BilinearField lg = lie_derivative_metric(radial, g);
  CHECK(lg(p, 0)(kX, kX).value() == doctest::Approx(2.0));
  CHECK(lie_derivative_metric_apply(radial, g, coordinate_vector(kM, kX), coordinate_vector(kM, kX)).value(p) ==
        doctest::Approx(2.0));

  const auto pts = sphere().sample_points(32, 4);
  for (int a = 0; a < 3; ++a) {
    const KillingResult k = is_killing(sphere().structure.xi(a), sphere().structure.g(), pts, 1e-7);
    CHECK(k.killing);
    CHECK(k.max_residual < 1e-7);
  }
}

TEST_CASE("musical maps") {
  const ChartPoint p{0.3, -0.2, 0.5, 0.1, 0.7, -0.4, 0.9};
  const OneFormField w = musical_flat(flat().structure.g(), coordinate_vector(kM, kX));
  CHECK(tmax(w - coordinate_one_form(kM, kX), p) == 0.0);

  const MetricField g = sphere().structure.g();
  const ChartPoint origin(std::vector<double>(kM, 0.0));
  const OneFormField w0 = musical_flat(g, coordinate_vector(kM, 0));
  CHECK(w0(origin, 0)(0).value() == doctest::Approx(4.0));
  for (std::size_t i = 1; i < kM; ++i) CHECK(std::abs(w0(origin, 0)(i).value()) < 1e-15);

  Rng rng(derive_seed(42, 21));
  double worst = 0.0;
  for (const auto& q : sphere().sample_points(32, 5)) {
    const VectorField x = constant_vector(gen::vector(kM, rng));
    worst = std::max(worst, vmax(musical_sharp(g, musical_flat(g, x)) - x, q));
  }
  CHECK(worst < 1e-9);

  const Eigen::MatrixXd singular = Eigen::MatrixXd::Zero(kM, kM);
  CHECK_THROWS_AS(musical_sharp(constant_metric(singular), coordinate_one_form(kM, 0))(p, 0), std::domain_error);
}

TEST_CASE("calculus properties on seeded polynomial fields") {
  Rng rng(derive_seed(42, 22));
  const std::size_t m = 5;
  const auto pts = sample_box(m, 8, 1.0, derive_seed(42, 23));
  double anti = 0, jacobi = 0, dd = 0, nat = 0, nat_g = 0;
  for (int trial = 0; trial < 4; ++trial) {
    const VectorField x = gen::polynomial_vector(m, rng), y = gen::polynomial_vector(m, rng),
                      z = gen::polynomial_vector(m, rng);
    const OneFormField w = gen::polynomial_one_form(m, rng);
    const Eigen::MatrixXd a = gen::matrix(m, rng);
    const EndomorphismField phi =
        constant_endomorphism(a) + coordinate_function(m, 0) * constant_endomorphism(a.transpose());
    const Eigen::MatrixXd b = gen::matrix(m, rng);
    const MetricField g = constant_metric(b * b.transpose() + m * Eigen::MatrixXd::Identity(m, m)) +
                          (coordinate_function(m, 1) * coordinate_function(m, 1)) *
                              constant_metric(Eigen::MatrixXd::Identity(m, m));
    const VectorField cyc = lie_bracket(x, lie_bracket(y, z)) + lie_bracket(y, lie_bracket(z, x)) +
                            lie_bracket(z, lie_bracket(x, y));
    for (const auto& p : pts) {
      anti = std::max(anti, vmax(lie_bracket(x, y) + lie_bracket(y, x), p));
      jacobi = std::max(jacobi, vmax(cyc, p));
      dd = std::max(dd, tmax(exterior_derivative(exterior_derivative(w)), p));
      const VectorField tensorial = lie_derivative_endo_apply(x, phi, y);
      nat = std::max(nat, vmax(tensorial - apply(lie_derivative_endo(x, phi), y), p));
      nat_g = std::max(nat_g, std::abs(lie_derivative_metric_apply(x, g, y, z).value(p) -
                                       evaluate_bilinear(lie_derivative_metric(x, g), y, z).value(p)));
    }
  }
  CHECK(anti <= 1e-12);
  CHECK(jacobi <= 1e-9);
  CHECK(dd <= 1e-9);
  CHECK(nat <= 1e-9);
  CHECK(nat_g <= 1e-9);
}

TEST_CASE("memoized fields serve lower orders by truncation") {
  const VectorField xi = sphere().structure.xi(0);
  const VectorField cached = memoize(xi);
  const ChartPoint p = sphere().sample_points(1, 6).front();
  const JetArray high = cached(p, 3);
  for (int k = 0; k <= 3; ++k) {
    const JetArray a = cached(p, k), b = xi(p, k);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t c = 0; c < b[i].coefficients().size(); ++c)
        CHECK(a[i].coefficients()[c] == b[i].coefficients()[c]);
  }
  CHECK(high.order() == 3);
}

TEST_CASE("model fields agree with central differences") {
  double worst = 0.0;
  const auto& s = sphere().structure;
  for (const auto& p : sphere().sample_points(32, derive_seed(42, 24)))
    for (std::size_t axis = 0; axis < kM; ++axis) {
      worst = std::max(worst, oracle::max_partial_error(s.g(), p, axis));
      for (int a = 0; a < 3; ++a) {
        worst = std::max(worst, oracle::max_partial_error(s.phi(a), p, axis));
        worst = std::max(worst, oracle::max_partial_error(s.xi(a), p, axis));
        worst = std::max(worst, oracle::max_partial_error(s.eta(a), p, axis));
      }
    }
  CHECK(worst < 1e-6);
}
