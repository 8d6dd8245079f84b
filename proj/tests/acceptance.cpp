// Acceptance criteria: one PASS/FAIL line each. Exit status 1 if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "acm3/canonical.hpp"
#include "acm3/models.hpp"
#include "acm3/sampling.hpp"
#include "oracle/finite_difference.hpp"
#include "oracle/generators.hpp"

using namespace acm3;

namespace {

constexpr std::uint64_t kSeed = 42;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

/// Appends "name=residual" to detail and folds residual <= tol into pass.
struct Tally {
  bool pass = true;
  std::string detail;
  void add(const std::string& name, double residual, double tol) {
    const bool ok = std::isfinite(residual) && residual <= tol;
    pass = pass && ok;
    if (!detail.empty()) detail += ", ";
    detail += name + "=" + fmt("%.2e", residual) + (ok ? "" : " (over " + fmt("%.0e", tol) + ")");
  }
  void note(const std::string& text) {
    if (!detail.empty()) detail += ", ";
    detail += text;
  }
  Outcome done() const { return {pass, detail}; }
};

double vmax(const VectorField& f, const ChartPoint& p) { return max_abs(f(p, 0).values()); }

template <class Tag>
double tmax(const TensorField<Tag>& f, const ChartPoint& p) {
  return max_abs(f(p, 0).values());
}

struct Models {
  Model flat = make_flat(1);
  Model scrambled = scramble(make_flat(1), kSeed);
  Model sphere = make_sphere(1);
};

const Models& models() {
  static const Models m;
  return m;
}

Outcome structure_axioms() {
  Tally t;
  for (const Model* m : {&models().flat, &models().scrambled, &models().sphere}) {
    const double tol = m->kind == ModelKind::sphere ? 1e-7 : 1e-9;
    const auto pts = m->sample_points(32, derive_seed(kSeed, 1));
    double acms = 0;
    for (int a = 0; a < 3; ++a) acms = std::max(acms, check_acms(m->structure.structure(a), pts, tol).max_residual());
    const ResidualReport q = check_3structure(m->structure, pts, tol);
    t.add(m->id + ":acms+compatible", acms, tol);
    t.add(m->id + ":quaternionic", q.max_residual(), tol);
  }
  return t.done();
}

Outcome sphere_quantitative() {
  Tally t;
  const Model& s = models().sphere;
  const MetricField g = s.structure.g();
  const CurvatureTensor curv = riemann_curvature(levi_civita(g));
  double scal = 0, einstein = 0, vertical = 0;
  for (const auto& p : s.sample_points(8, derive_seed(kSeed, 2))) {
    const double sc = scalar_curvature(curv, g, p);
    scal = std::max(scal, std::abs(sc - 42.0));
    const Eigen::MatrixXd gv = g(p, 0).values_matrix();
    // Einstein constant scal / dim.
    einstein = std::max(einstein, max_abs(ricci(curv, g, p) - (sc / 7.0) * gv));
    const StructureValues v = structure_values(s.structure, p);
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        vertical = std::max(vertical, std::abs(v.xi[a].dot(v.g * curv.apply(p, v.xi[a], v.xi[b], v.xi[b])) - 1.0));
  }
  t.add("scal-42", scal, 1e-5);
  t.add("ricci-6g", einstein, 1e-6);
  t.add("vertical-sectional-1", vertical, 1e-6);
  const Model s2 = make_sphere(2);
  const CurvatureTensor c2 = riemann_curvature(levi_civita(s2.structure.g()));
  double scal2 = 0;
  for (const auto& p : s2.sample_points(2, derive_seed(kSeed, 3)))
    scal2 = std::max(scal2, std::abs(scalar_curvature(c2, s2.structure.g(), p) - 110.0));
  t.add("n2-scal-110", scal2, 1e-4);
  return t.done();
}

Outcome flat_curvature() {
  Tally t;
  for (const Model* m : {&models().flat, &models().scrambled}) {
    const CurvatureTensor curv = riemann_curvature(levi_civita(m->structure.g()));
    double r = 0, ric = 0;
    for (const auto& p : m->sample_points(8, derive_seed(kSeed, 4))) {
      r = std::max(r, max_abs(curv.components_at(p)));
      ric = std::max(ric, max_abs(ricci(curv, m->structure.g(), p)));
    }
    t.add(m->id + ":riemann", r, 1e-12);
    t.add(m->id + ":ricci", ric, 1e-12);
  }
  return t.done();
}

Outcome canonical_connection() {
  Tally t;
  const CanonicalConnection flat(models().flat.structure), scr(models().scrambled.structure),
      sph(models().sphere.structure);
  const auto fp = models().flat.sample_points(4, derive_seed(kSeed, 5));
  const auto cp = models().scrambled.sample_points(4, derive_seed(kSeed, 5));
  const auto sp = models().sphere.sample_points(4, derive_seed(kSeed, 5));

  t.add("axioms-flat", check_uniqueness_axioms(flat.as_affine(), flat.structure(), fp, 1e-7).max_residual(), 1e-7);
  t.add("axioms-sphere", check_uniqueness_axioms(sph.as_affine(), sph.structure(), sp, 1e-7).max_residual(), 1e-7);
  t.add("nabla-phi-sphere",
        check_nabla_tilde_phi(sph, StructureClass::three_sasakian, sp, 1e-6).max_residual(), 1e-6);

  Rng rng(derive_seed(kSeed, 6));
  double same = 0;
  for (const auto* pair : {&flat, &scr}) {
    const VectorField e = gen::polynomial_vector(7, rng), f = gen::polynomial_vector(7, rng);
    for (const auto& p : pair == &flat ? fp : cp)
      same = std::max(same, vmax(pair->derivative(e, f) - pair->levi_civita().derivative(e, f), p));
  }
  t.add("equals-levi-civita-flat", same, 1e-12);

  double torsion = 0;
  for (const char* e : {"torsion-horizontal", "torsion-horizontal-reeb", "torsion-reeb-pair"}) {
    torsion = std::max(torsion, check_torsion(flat, fp, 1e-7).entry(e).max_residual);
    torsion = std::max(torsion, check_torsion(sph, sp, 1e-7).entry(e).max_residual);
  }
  t.add("torsion-cases", torsion, 1e-7);

  const ResidualReport curv = check_canonical_curvature(sph, sp, CurvatureTolerances{});
  t.add("curvature-reeb", std::max(curv.entry("curvature-reeb-annihilated").max_residual,
                                   curv.entry("curvature-vertical-pair").max_residual),
        1e-6);
  t.add("horizontal-formula", curv.entry("curvature-horizontal-formula-stated").max_residual, 1e-6);
  t.note("with +2 d eta(X, Y) phi Z: " + fmt("%.2e", curv.entry("curvature-horizontal-formula-carried").max_residual));
  return t.done();
}

Outcome projected_curvature() {
  Tally t;
  double worst = 0, lo = 1e300;
  for (const auto& p : models().sphere.sample_points(8, derive_seed(kSeed, 7))) {
    const double v = sphere_nonflatness_witness(models().sphere, p);
    worst = std::max(worst, std::abs(v - 48.0));
    lo = std::min(lo, v);
  }
  t.add("horizontal-scal-48", worst, 1e-4);
  t.pass = t.pass && lo > 0.0;
  t.note("min=" + fmt("%.10g", lo));
  return t.done();
}

Outcome lie_derivatives() {
  Tally t;
  const auto& s = models().sphere.structure;
  double sphere = 0, flat = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      EndomorphismField d = lie_derivative_endo(s.xi(a), s.phi(b));
      for (int c = 0; c < 3; ++c)
        if (epsilon(a, b, c) != 0) d = d - (2.0 * epsilon(a, b, c)) * s.phi(c);
      for (const auto& p : models().sphere.sample_points(8, derive_seed(kSeed, 8))) sphere = std::max(sphere, tmax(d, p));
      for (const Model* m : {&models().flat, &models().scrambled})
        for (const auto& p : m->sample_points(4, derive_seed(kSeed, 8)))
          flat = std::max(flat, tmax(lie_derivative_endo(m->structure.xi(a), m->structure.phi(b)), p));
    }
  t.add("sphere", sphere, 1e-7);
  t.add("flat", flat, 1e-12);
  return t.done();
}

Outcome musical() {
  Tally t;
  for (const Model* m : {&models().flat, &models().scrambled, &models().sphere}) {
    const bool curved = m->kind == ModelKind::sphere;
    const double tol = curved ? 1e-7 : 1e-12;
    const auto pts = m->sample_points(16, derive_seed(kSeed, 9));
    t.add(m->id + ":identities", verify_musical_identities(m->structure, pts, tol).max_residual(), tol);
    double on_h = 0;
    for (const auto& p : pts) {
      const StructureValues v = structure_values(m->structure, p);
      const HorizontalSpace h = horizontal_space(v);
      on_h = std::max(on_h, max_abs(h.basis.transpose() * (recover_metric(v.Phi, v.xi, v.eta) - v.g) * h.basis));
    }
    t.add(m->id + ":metric-on-H", on_h, curved ? 1e-7 : 1e-12);
  }
  return t.done();
}

Outcome darboux() {
  Tally t;
  const Model& sc = models().scrambled;
  const auto pts = sc.sample_points(4, derive_seed(kSeed, 10));
  const DarbouxFrame frame = build_darboux_frame(sc, pts.front());
  double constants = 0, brackets = 0, flipped = 0;
  // Opposite-sign table: every horizontal entry negated, as under Phi = g(phi ., .).
  auto table = darboux_form_constants(1);
  for (int a = 0; a < 3; ++a) table[a].topLeftCorner(4, 4) *= -1.0;
  for (const auto& q : pts) {
    constants = std::max({constants, frame.form_constant_residual(q), frame.orthonormality_residual(q),
                          frame.adapted_residual(q)});
    brackets = std::max(brackets, frame.max_bracket(q));
    const Eigen::MatrixXd f = frame.evaluate(q);
    const StructureValues v = structure_values(sc.structure, q);
    for (int a = 0; a < 3; ++a) flipped = std::max(flipped, max_abs(f.transpose() * v.Phi[a] * f - table[a]));
  }
  t.add("frame-constants", constants, 1e-6);
  t.add("brackets", brackets, 1e-6);
  t.note("against negated horizontal signs: " + fmt("%.2e", flipped));
  bool refused = false;
  try {
    build_darboux_frame(models().sphere, models().sphere.sample_points(1, derive_seed(kSeed, 10)).front());
  } catch (const NonFlatError& e) {
    refused = e.curvature() > 1e-9;
    t.note("sphere refused, max|R|=" + fmt("%.3g", e.curvature()));
  }
  t.pass = t.pass && refused;
  return t.done();
}

Outcome integrability() {
  Tally t;
  Rng rng(derive_seed(kSeed, 11));
  for (const Model* m : {&models().flat, &models().scrambled}) {
    const auto& s = m->structure;
    const VectorField x = horizontal_projection(s, gen::polynomial_vector(7, rng));
    const VectorField y = horizontal_projection(s, gen::polynomial_vector(7, rng));
    double r = 0;
    for (const auto& p : m->sample_points(8, derive_seed(kSeed, 12)))
      for (int a = 0; a < 3; ++a) r = std::max(r, std::abs(contract(s.eta(a), lie_bracket(x, y)).value(p)));
    t.add(m->id + ":eta-bracket", r, 1e-9);
  }
  const auto& s = models().sphere.structure;
  double best = 0;
  for (const auto& p : models().sphere.sample_points(8, derive_seed(kSeed, 13))) {
    const VectorField x = horizontal_projection(s, constant_vector(gen::vector(7, rng)));
    const VectorField y = horizontal_projection(s, constant_vector(gen::vector(7, rng)));
    for (int a = 0; a < 3; ++a) best = std::max(best, std::abs(contract(s.eta(a), lie_bracket(x, y)).value(p)));
  }
  t.pass = t.pass && best >= 0.1;
  t.note("sphere max|eta([X, Y])|=" + fmt("%.3g", best));
  return t.done();
}

Outcome oracle_equivalence() {
  Tally t;
  Rng rng(derive_seed(kSeed, 14));
  const auto& sph = models().sphere;
  const auto& scr = models().scrambled;
  const ConnectionField gs = christoffel(sph.structure.g());
  double first = 0, second = 0, gamma = 0;
  for (int k = 0; k < 16; ++k) {
    const Model& m = k % 4 == 3 ? scr : sph;
    const auto& s = m.structure;
    const ChartPoint p = m.sample_points(1, derive_seed(kSeed, 100 + static_cast<std::uint64_t>(k))).front();
    const std::size_t axis = static_cast<std::size_t>(rng.next() % 7);
    const int a = k % 3;
    first = std::max({first, oracle::max_partial_error(s.g(), p, axis), oracle::max_partial_error(s.phi(a), p, axis),
                      oracle::max_partial_error(s.xi(a), p, axis), oracle::max_partial_error(s.eta(a), p, axis)});
    const std::size_t other = static_cast<std::size_t>(rng.next() % 7);
    second = std::max(second, oracle::max_second_partial_error(s.g(), p, axis, other));
    if (&m == &sph) {
      const auto expected = oracle::christoffel_by_differences(s.g(), p);
      const auto got = gs(p, 0).values();
      for (std::size_t i = 0; i < got.size(); ++i) gamma = std::max(gamma, oracle::relative_error(got[i], expected[i]));
      gamma = std::max(gamma, oracle::max_partial_error(gs, p, axis));
    }
  }
  t.add("first-partials", first, 1e-6);
  t.add("second-partials", second, 1e-6);
  t.add("christoffel", gamma, 1e-6);
  return t.done();
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"structure axioms", structure_axioms},
      {"sphere curvature constants", sphere_quantitative},
      {"flat curvature vanishes", flat_curvature},
      {"canonical connection", canonical_connection},
      {"projected curvature constant", projected_curvature},
      {"lie derivative formulas", lie_derivatives},
      {"musical identities", musical},
      {"darboux construction", darboux},
      {"integrability dichotomy", integrability},
      {"finite-difference oracle", oracle_equivalence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s  %zu  %s  [%s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("# passed=%zu failed=%d\n", criteria.size() - static_cast<std::size_t>(failed), failed);
  return failed == 0 ? 0 : 1;
}
