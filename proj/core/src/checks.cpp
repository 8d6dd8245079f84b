#include "acm3/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "acm3/calculus.hpp"
#include "acm3/sampling.hpp"

namespace acm3 {

const char* to_string(Suite s) noexcept {
  switch (s) {
    case Suite::structure:
      return "structure";
    case Suite::connection:
      return "connection";
    case Suite::curvature:
      return "curvature";
    case Suite::darboux:
      return "darboux";
    case Suite::musical:
      return "musical";
  }
  return "unknown";
}

std::optional<Suite> parse_suite(const std::string& name) {
  if (name == "all") return std::nullopt;
  for (Suite s : {Suite::structure, Suite::connection, Suite::curvature, Suite::darboux, Suite::musical})
    if (name == to_string(s)) return s;
  throw std::invalid_argument("unknown suite: " + name);
}

Model make_model(const std::string& manifold, std::size_t n, std::uint64_t seed) {
  if (manifold == "flat3cos") return make_flat(n);
  if (manifold == "sphere3sas") return make_sphere(n);
  if (manifold == "flat3cos-scrambled") return scramble(make_flat(n), seed);
  throw std::invalid_argument("unknown manifold: " + manifold);
}

// ---------------------------------------------------------------------------

CheckContext::CheckContext(const Model& model, const RunOptions& options)
    : model_(model), options_(options), points_(model.sample_points(options.points, derive_seed(options.seed, 1))) {}

std::vector<ChartPoint> CheckContext::points(std::size_t count) const {
  return {points_.begin(), points_.begin() + static_cast<std::ptrdiff_t>(std::min(count, points_.size()))};
}

double CheckContext::base_tolerance() const noexcept { return curved() ? options_.tol_curved : options_.tol_flat; }

double CheckContext::tolerance(double curved_floor) const noexcept {
  return curved() ? std::max(options_.tol_curved, curved_floor) : options_.tol_flat;
}

std::uint64_t CheckContext::stream(std::uint64_t k) const { return derive_seed(options_.seed, 100 + k); }

const CanonicalConnection& CheckContext::canonical() {
  if (!canonical_) canonical_ = std::make_unique<CanonicalConnection>(model_.structure);
  return *canonical_;
}

const AffineConnection& CheckContext::levi_civita() {
  if (!lc_) lc_ = std::make_unique<AffineConnection>(canonical().levi_civita());
  return *lc_;
}

const CurvatureTensor& CheckContext::curvature() {
  if (!curvature_) curvature_ = std::make_unique<CurvatureTensor>(riemann_curvature(levi_civita()));
  return *curvature_;
}

const DarbouxFrame& CheckContext::darboux_frame() {
  if (!frame_)
    frame_ = std::make_unique<DarbouxFrame>(build_darboux_frame(model_, points_.front(), options_.ode_steps));
  return *frame_;
}

bool CheckDefinition::applies_to(ModelKind k) const { return std::find(models.begin(), models.end(), k) != models.end(); }

Conventions report_conventions() {
  return {"half: (a ^ b)(X, Y) = (a(X) b(Y) - a(Y) b(X)) / 2 and d eta(X, Y) = (X eta(Y) - Y eta(X) - eta([X, Y])) / 2",
          "column action: phi_a e_j = sum_i M(i, j) e_i, so phi_1 dx = dy, phi_2 dx = du, phi_3 dx = dv and "
          "phi_a xi_b = sum eps_abc xi_c; with Phi = g(., phi .) the horizontal Darboux constants are "
          "Phi_1(X, Y) = Phi_1(U, V) = -1, Phi_2(X, U) = -1, Phi_2(Y, V) = +1, Phi_3(X, V) = Phi_3(Y, U) = -1 "
          "(the opposite horizontal signs belong to the reading Phi = g(phi ., .)); vertical constants "
          "Phi_1(xi_2, xi_3) = -1, Phi_2(xi_1, xi_3) = +1, Phi_3(xi_1, xi_2) = -1",
          "right multiplication: J_a = right multiplication by -i, -j, -k on each block of H^{n+1}; "
          "xi_a = -J_a x = x i, x j, x k; phi_a = tangential part of J_a; then nabla xi_a = -phi_a and "
          "[xi_1, xi_2] = 2 xi_3"};
}

// ---------------------------------------------------------------------------

namespace {

using Kinds = std::vector<ModelKind>;
const Kinds kAll{ModelKind::flat, ModelKind::scrambled, ModelKind::sphere};
const Kinds kFlat{ModelKind::flat, ModelKind::scrambled};
const Kinds kSphere{ModelKind::sphere};
const Kinds kScrambled{ModelKind::scrambled};

VerificationCheck result(const CheckDefinition& d, double residual, double tol, std::size_t points,
                         std::optional<double> value = std::nullopt) {
  return make_check(d.id, d.description, d.reference, residual, tol, points, value);
}

double field_max(const VectorField& f, const std::vector<ChartPoint>& pts) {
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, max_abs(f(p, 0).values()));
  return r;
}

double field_max(const ScalarField& f, const std::vector<ChartPoint>& pts) {
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, std::abs(f(p, 0).value()));
  return r;
}

template <class Tag>
double field_max(const TensorField<Tag>& f, const std::vector<ChartPoint>& pts) {
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, max_abs(f(p, 0).values()));
  return r;
}

std::vector<VectorField> constant_fields(std::size_t m, std::size_t count, std::uint64_t seed) {
  std::vector<VectorField> out;
  for (const auto& v : seeded_vectors(m, count, seed)) out.push_back(constant_vector(v));
  return out;
}

// Seeded quadratic vector field, used where constant directions would make
// an identity hold trivially.
VectorField polynomial_field(std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ScalarField> comps;
  for (std::size_t i = 0; i < m; ++i) {
    ScalarField c = constant_scalar(m, rng.uniform(-1.0, 1.0));
    for (std::size_t j = 0; j < m; ++j) c = c + rng.uniform(-0.5, 0.5) * coordinate_function(m, j);
    c = c + rng.uniform(-0.5, 0.5) * (coordinate_function(m, (i + 1) % m) * coordinate_function(m, (i + 2) % m));
    comps.push_back(c);
  }
  return vector_from_components(std::move(comps));
}

double curvature_target(const Model& m) {
  if (m.kind != ModelKind::sphere) return 0.0;
  const double n = static_cast<double>(m.n);
  return 2.0 * (2.0 * n + 1.0) * (4.0 * n + 3.0);
}

double horizontal_target(const Model& m) {
  if (m.kind != ModelKind::sphere) return 0.0;
  const double n = static_cast<double>(m.n);
  return 16.0 * n * (n + 2.0);
}

// Reeb bracket constant: [xi_a, xi_b] = c eps_abc xi_c.
double reeb_constant(const Model& m) { return m.kind == ModelKind::sphere ? 2.0 : 0.0; }

std::vector<CheckDefinition> build_catalog() {
  std::vector<CheckDefinition> c;
  auto add = [&c](std::string id, std::string desc, std::string ref, Suite suite, Kinds kinds,
                  std::function<VerificationCheck(CheckContext&, const CheckDefinition&)> fn) {
    c.push_back({std::move(id), std::move(desc), std::move(ref), suite, std::move(kinds), std::move(fn)});
  };

  // ---- structure --------------------------------------------------------
  add("acms-axioms", "almost contact axioms for each of the three structures",
      "phi^2 = -I + eta (x) xi, eta(xi) = 1, phi xi = 0, eta o phi = 0", Suite::structure, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        double r = 0.0;
        for (int a = 0; a < 3; ++a) {
          const auto rep = check_acms(x.structure().structure(a), x.points(), x.base_tolerance(), x.stream(a));
          for (const char* k : {"phi-squared", "eta-of-xi", "phi-of-xi", "eta-after-phi"})
            r = std::max(r, rep.entry(k).max_residual);
        }
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  add("compatible-metric", "metric compatibility on seeded pairs and as a matrix identity",
      "g(phi E, phi F) = g(E, F) - eta(E) eta(F)", Suite::structure, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        double r = 0.0;
        for (int a = 0; a < 3; ++a) {
          const auto rep = check_acms(x.structure().structure(a), x.points(), x.base_tolerance(), x.stream(a));
          r = std::max({r, rep.entry("compatible-metric").max_residual,
                        rep.entry("compatible-metric-matrix").max_residual});
        }
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  add("quaternionic-relations", "the three families of quaternionic relations for all index pairs",
      "phi_a phi_b - eta_b (x) xi_a = sum eps_abc phi_c - delta_ab I, phi_a xi_b = sum eps_abc xi_c, "
      "eta_a o phi_b = sum eps_abc eta_c",
      Suite::structure, kAll, [](CheckContext& x, const CheckDefinition& d) {
        const auto rep = check_3structure(x.structure(), x.points(), x.base_tolerance());
        double r = 0.0;
        for (const char* k : {"phi-phi-relation", "phi-xi-relation", "eta-phi-relation", "eta-xi-duality"})
          r = std::max(r, rep.entry(k).max_residual);
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  add("reeb-orthonormal", "Reeb fields are g-orthonormal", "g(xi_a, xi_b) = delta_ab", Suite::structure, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        const auto rep = check_3structure(x.structure(), x.points(), x.base_tolerance());
        return result(d, rep.entry("reeb-orthonormal").max_residual, x.base_tolerance(), x.points().size());
      });
  add("fundamental-form-skew", "derived fundamental forms are antisymmetric", "Phi(E, F) = g(E, phi F) = -Phi(F, E)",
      Suite::structure, kAll, [](CheckContext& x, const CheckDefinition& d) {
        double r = 0.0;
        for (const auto& p : x.points()) {
          const StructureValues v = structure_values(x.structure(), p);
          for (int a = 0; a < 3; ++a) r = std::max(r, max_abs(v.Phi[a] + v.Phi[a].transpose()));
        }
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  add("normality", "normality tensor of each structure", "N = [phi, phi] + 2 d eta (x) xi = 0", Suite::structure,
      kAll, [](CheckContext& x, const CheckDefinition& d) {
        const auto pts = x.points(8);
        double r = 0.0;
        for (int a = 0; a < 3; ++a)
          r = std::max(r, is_normal(x.structure().structure(a), pts, x.base_tolerance()).second);
        return result(d, r, x.base_tolerance(), pts.size());
      });
  add("deta-equals-fundamental-form", "contact metric condition for each structure", "d eta_a = Phi_a", Suite::structure, kSphere,
      [](CheckContext& x, const CheckDefinition& d) {
        const auto& s = x.structure();
        double r = 0.0;
        for (int a = 0; a < 3; ++a)
          r = std::max(r, field_max(exterior_derivative(s.eta(a)) - s.fundamental_form(a), x.points()));
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  add("deta-zero", "contact forms are closed", "d eta_a = 0", Suite::structure, kFlat,
      [](CheckContext& x, const CheckDefinition& d) {
        double r = 0.0;
        for (int a = 0; a < 3; ++a)
          r = std::max(r, field_max(exterior_derivative(x.structure().eta(a)), x.points()));
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  add("fundamental-form-closed", "fundamental forms are closed", "d Phi_a = 0", Suite::structure, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        double r = 0.0;
        for (int a = 0; a < 3; ++a)
          r = std::max(r, field_max(exterior_derivative(x.structure().fundamental_form(a)), x.points()));
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  add("sasakian-condition", "Sasakian condition for each structure (residual-based classification)",
      "(nabla_E phi)F = g(E, F) xi - eta(F) E", Suite::structure, kSphere,
      [](CheckContext& x, const CheckDefinition& d) {
        const auto pts = x.points(8);
        double r = 0.0;
        for (int a = 0; a < 3; ++a) {
          const auto cl = classify(x.structure().structure(a), x.levi_civita(), pts, x.base_tolerance());
          r = std::max({r, cl.residuals.entry("sasakian").max_residual, cl.residuals.entry("normal").max_residual,
                        cl.residuals.entry("contact-metric").max_residual});
        }
        return result(d, r, x.base_tolerance(), pts.size());
      });
  add("cosymplectic-condition", "cosymplectic condition for each structure (residual-based classification)",
      "nabla phi = 0, d eta = 0, d Phi = 0, N = 0", Suite::structure, kFlat,
      [](CheckContext& x, const CheckDefinition& d) {
        const auto pts = x.points(8);
        double r = 0.0;
        for (int a = 0; a < 3; ++a) {
          const auto cl = classify(x.structure().structure(a), x.levi_civita(), pts, x.base_tolerance());
          r = std::max({r, cl.residuals.entry("cosymplectic").max_residual,
                        cl.residuals.entry("almost-cosymplectic").max_residual});
        }
        return result(d, r, x.base_tolerance(), pts.size());
      });
  add("nabla-xi-equals-minus-phi", "Levi-Civita derivative of the Reeb fields", "nabla xi_a = -phi_a",
      Suite::structure, kSphere, [](CheckContext& x, const CheckDefinition& d) {
        const auto& s = x.structure();
        const ConnectionField gamma = x.levi_civita().coefficients();
        double r = 0.0;
        for (int a = 0; a < 3; ++a) {
          const EndomorphismField dxi = covariant_derivative(gamma, s.xi(a));
          r = std::max(r, field_max(dxi + s.phi(a), x.points()));
        }
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  add("structure-parallel", "xi_a, eta_a, phi_a and Phi_a are Levi-Civita parallel",
      "nabla xi_a = 0, nabla eta_a = 0, nabla phi_a = 0, nabla Phi_a = 0", Suite::structure, kFlat,
      [](CheckContext& x, const CheckDefinition& d) {
        const auto& s = x.structure();
        const ConnectionField gamma = x.levi_civita().coefficients();
        double r = 0.0;
        for (int a = 0; a < 3; ++a) {
          r = std::max(r, field_max(covariant_derivative(gamma, s.xi(a)), x.points()));
          r = std::max(r, field_max(covariant_derivative(gamma, s.phi(a)), x.points()));
          r = std::max(r, field_max(covariant_derivative(gamma, retag<BilinearTag>(s.fundamental_form(a))),
                                    x.points()));
        }
        const auto v = constant_fields(s.dim(), 2, x.stream(23));
        for (int a = 0; a < 3; ++a)
          r = std::max(r, field_max(nabla_one_form(x.levi_civita(), s.eta(a), v[0], v[1]), x.points()));
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  add("reeb-bracket", "brackets of the Reeb fields", "[xi_a, xi_b] = 2 eps_abc xi_c (3-Sasakian), 0 (3-cosymplectic)",
      Suite::structure, kAll, [](CheckContext& x, const CheckDefinition& d) {
        const auto& s = x.structure();
        const double k = reeb_constant(x.model());
        double r = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            if (a == b) continue;
            const int g = 3 - a - b;
            r = std::max(r, field_max(lie_bracket(s.xi(a), s.xi(b)) - (k * epsilon(a, b, g)) * s.xi(g), x.points()));
          }
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  add("lie-derivative-phi", "Lie derivative of each phi_b along each xi_a",
      "L_{xi_a} phi_b = 2 sum eps_abc phi_c (3-Sasakian), 0 (3-cosymplectic)", Suite::structure, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        const auto& s = x.structure();
        const double k = reeb_constant(x.model());
        double r = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) {
            EndomorphismField lie = lie_derivative_endo(s.xi(a), s.phi(b));
            if (a != b) lie = lie - (k * epsilon(a, b, 3 - a - b)) * s.phi(3 - a - b);
            r = std::max(r, field_max(lie, x.points()));
          }
        return result(d, r, x.curved() ? x.base_tolerance() : std::min(x.base_tolerance(), 1e-12),
                      x.points().size());
      });
  add("reeb-killing", "each Reeb field is Killing", "L_{xi_a} g = 0", Suite::structure, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        double r = 0.0;
        for (int a = 0; a < 3; ++a)
          r = std::max(r, is_killing(x.structure().xi(a), x.structure().g(), x.points(), x.base_tolerance()).max_residual);
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  add("reeb-bracket-preserves-horizontal", "for 16 seeded horizontal X, [X, xi_a] stays horizontal",
      "eta_b([X, xi_a]) = 0", Suite::structure, kAll, [](CheckContext& x, const CheckDefinition& d) {
        const auto& s = x.structure();
        double r = 0.0;
        for (const auto& e : constant_fields(s.dim(), 16, x.stream(20))) {
          const VectorField h = horizontal_projection(s, e);
          for (int a = 0; a < 3; ++a) {
            const VectorField br = lie_bracket(h, s.xi(a));
            for (int b = 0; b < 3; ++b) r = std::max(r, field_max(contract(s.eta(b), br), x.points(4)));
          }
        }
        return result(d, r, x.curved() ? std::min(x.base_tolerance(), 1e-8) : x.base_tolerance(),
                      x.points(4).size());
      });
  add("horizontal-integrable", "brackets of seeded horizontal fields stay horizontal", "eta_a([X, Y]) = 0",
      Suite::structure, kFlat, [](CheckContext& x, const CheckDefinition& d) {
        const auto& s = x.structure();
        const auto v = constant_fields(s.dim(), 8, x.stream(21));
        double r = 0.0;
        for (std::size_t k = 0; k + 1 < v.size(); k += 2) {
          const VectorField br = lie_bracket(horizontal_projection(s, v[k]), horizontal_projection(s, v[k + 1]));
          for (int a = 0; a < 3; ++a) r = std::max(r, field_max(contract(s.eta(a), br), x.points()));
        }
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  add("horizontal-nonintegrable", "a seeded horizontal pair whose bracket leaves the horizontal space",
      "max |eta_a([X, Y])| >= 0.1", Suite::structure, kSphere, [](CheckContext& x, const CheckDefinition& d) {
        const auto& s = x.structure();
        const auto v = constant_fields(s.dim(), 8, x.stream(21));
        double best = 0.0;
        for (std::size_t k = 0; k + 1 < v.size(); k += 2) {
          const VectorField br = lie_bracket(horizontal_projection(s, v[k]), horizontal_projection(s, v[k + 1]));
          for (int a = 0; a < 3; ++a) best = std::max(best, field_max(contract(s.eta(a), br), x.points(4)));
        }
        return result(d, std::max(0.0, 0.1 - best), 0.0, x.points(4).size(), best);
      });
  add("horizontal-projection", "projection of seeded fields (and of d/du_0 + 3 xi_2) is horizontal and idempotent",
      "E^h = E - sum eta_a(E) xi_a", Suite::structure, kAll, [](CheckContext& x, const CheckDefinition& d) {
        const auto& s = x.structure();
        auto v = constant_fields(s.dim(), 4, x.stream(22));
        v.push_back(coordinate_vector(s.dim(), 0) + 3.0 * s.xi(1));
        double r = 0.0;
        for (const auto& e : v) {
          const VectorField h = horizontal_projection(s, e);
          for (int a = 0; a < 3; ++a) r = std::max(r, field_max(contract(s.eta(a), h), x.points()));
          r = std::max(r, field_max(horizontal_projection(s, h) - h, x.points()));
        }
        return result(d, r, x.base_tolerance(), x.points().size());
      });

  // ---- connection -------------------------------------------------------
  add("levi-civita-torsion-free", "torsion of the Levi-Civita connection on seeded fields",
      "nabla_X Y - nabla_Y X - [X, Y] = 0", Suite::connection, kAll, [](CheckContext& x, const CheckDefinition& d) {
        const std::size_t m = x.structure().dim();
        const VectorField a = polynomial_field(m, x.stream(30));
        const VectorField b = polynomial_field(m, x.stream(31));
        const auto v = constant_fields(m, 1, x.stream(32));
        const double r = std::max(field_max(torsion(x.levi_civita(), a, b), x.points()),
                                  field_max(torsion(x.levi_civita(), v[0], a), x.points()));
        return result(d, r, x.curved() ? std::max(x.base_tolerance(), 1e-8) : std::max(x.base_tolerance(), 1e-10),
                      x.points().size());
      });
  add("levi-civita-metric", "Levi-Civita connection is metric", "(nabla_Z g)(X, Y) = 0", Suite::connection, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        const auto v = constant_fields(x.structure().dim(), 3, x.stream(33));
        const double r = field_max(nabla_metric(x.levi_civita(), x.structure().g(), v[0], v[1], v[2]), x.points());
        return result(d, r, x.curved() ? std::max(x.base_tolerance(), 1e-8) : std::max(x.base_tolerance(), 1e-10),
                      x.points().size());
      });
  add("canonical-metric-compat", "canonical connection is metric; Killing residuals reported alongside",
      "nabla~ g = 0 if and only if every xi_a is Killing", Suite::connection, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        const auto rep = check_metric_compat(x.canonical(), x.points(), x.base_tolerance(), x.stream(34));
        return result(d, rep.max_residual(), x.base_tolerance(), x.points().size());
      });
  add("canonical-eta-parallel", "contact forms are parallel for the canonical connection",
      "eta_a is nabla~-parallel if and only if d eta_a(X, xi_b) = 0", Suite::connection, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        const auto rep = check_eta_parallel(x.canonical(), x.points(), x.base_tolerance(), x.stream(35));
        const double r =
            std::max(rep.entry("nabla-tilde-eta").max_residual, rep.entry("nabla-tilde-eta-on-reeb").max_residual);
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  add("deta-horizontal-reeb", "mixed horizontal/Reeb components of d eta_a vanish", "d eta_a(X, xi_b) = 0",
      Suite::connection, kAll, [](CheckContext& x, const CheckDefinition& d) {
        const auto rep = check_eta_parallel(x.canonical(), x.points(), x.base_tolerance(), x.stream(35));
        return result(d, rep.entry("deta-horizontal-reeb").max_residual,
                      x.curved() ? std::min(x.base_tolerance(), 1e-8) : x.base_tolerance(), x.points().size());
      });
  add("canonical-nabla-phi", "canonical derivative of each phi_a on seeded E, F",
      "(nabla~_E phi_a)F = -sum eps_abc (eta_b(E) phi_c F^h - eta_c(E) phi_b F^h); nabla~ phi_a = 0 when "
      "3-cosymplectic",
      Suite::connection, kAll, [](CheckContext& x, const CheckDefinition& d) {
        const auto rep = check_nabla_tilde_phi(x.canonical(), x.model().structure_class, x.points(),
                                               x.base_tolerance(), x.stream(36));
        const double r = x.curved() ? rep.entry("nabla-tilde-phi-formula").max_residual
                                    : rep.entry("nabla-tilde-phi-zero").max_residual;
        return result(d, r, x.tolerance(1e-6), x.points().size());
      });
  add("canonical-nabla-phi-reeb", "canonical derivative of phi_1 along xi_2 on horizontal X",
      "(nabla~_{xi_2} phi_1)X = -2 phi_3 X (3-Sasakian), 0 (3-cosymplectic)", Suite::connection, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        const auto rep = check_nabla_tilde_phi(x.canonical(), x.model().structure_class, x.points(),
                                               x.base_tolerance(), x.stream(36));
        return result(d, rep.entry("nabla-tilde-reeb2-phi1").max_residual, x.tolerance(1e-6), x.points().size());
      });
  add("canonical-nabla-phi-horizontal", "canonical derivative of phi_1 along horizontal E on horizontal F",
      "(nabla~_E phi_1)F^h = 0 for horizontal E", Suite::connection, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        const auto rep = check_nabla_tilde_phi(x.canonical(), x.model().structure_class, x.points(),
                                               x.base_tolerance(), x.stream(36));
        return result(d, rep.entry("nabla-tilde-horizontal-phi1").max_residual, x.tolerance(1e-6),
                      x.points().size());
      });
  add("uniqueness-reeb-parallel", "first characterizing property of the canonical connection",
      "nabla~ xi_1 = nabla~ xi_2 = nabla~ xi_3 = 0", Suite::connection, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        const auto rep = check_uniqueness_axioms(x.canonical().as_affine(), x.structure(), x.points(),
                                                 x.base_tolerance(), x.stream(37));
        return result(d, rep.entry("axiom-reeb-parallel").max_residual, x.base_tolerance(), x.points().size());
      });
  add("uniqueness-horizontal-metric", "second characterizing property of the canonical connection",
      "(nabla~_Z g)(X, Y) = 0 for horizontal X, Y, Z", Suite::connection, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        const auto rep = check_uniqueness_axioms(x.canonical().as_affine(), x.structure(), x.points(),
                                                 x.base_tolerance(), x.stream(37));
        return result(d, rep.entry("axiom-horizontal-metric").max_residual, x.base_tolerance(), x.points().size());
      });
  add("uniqueness-torsion", "third characterizing property of the canonical connection",
      "T~(X, Y) = 2 sum d eta_a(X, Y) xi_a and T~(X, xi_a) = 0 for horizontal X, Y", Suite::connection, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        const auto rep = check_uniqueness_axioms(x.canonical().as_affine(), x.structure(), x.points(),
                                                 x.base_tolerance(), x.stream(37));
        const double r = std::max(rep.entry("axiom-torsion-horizontal").max_residual,
                                  rep.entry("axiom-torsion-mixed").max_residual);
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  add("torsion-horizontal-formula", "canonical torsion on horizontal pairs", "T~(X, Y) = 2 sum d eta_a(X, Y) xi_a",
      Suite::connection, kAll, [](CheckContext& x, const CheckDefinition& d) {
        const auto rep = check_torsion(x.canonical(), x.points(), x.base_tolerance(), x.stream(38));
        return result(d, rep.entry("torsion-horizontal").max_residual, x.base_tolerance(), x.points().size());
      });
  add("torsion-horizontal-reeb", "canonical torsion on horizontal/Reeb pairs", "T~(X, xi_a) = 0", Suite::connection,
      kAll, [](CheckContext& x, const CheckDefinition& d) {
        const auto rep = check_torsion(x.canonical(), x.points(), x.base_tolerance(), x.stream(38));
        return result(d, rep.entry("torsion-horizontal-reeb").max_residual, x.base_tolerance(), x.points().size());
      });
  add("torsion-reeb-pair", "canonical torsion on Reeb pairs", "T~(xi_a, xi_b) = [xi_b, xi_a]", Suite::connection,
      kAll, [](CheckContext& x, const CheckDefinition& d) {
        const auto rep = check_torsion(x.canonical(), x.points(), x.base_tolerance(), x.stream(38));
        return result(d, rep.entry("torsion-reeb-pair").max_residual, x.base_tolerance(), x.points().size());
      });
  add("torsion-integrable-vertical", "canonical torsion on arbitrary seeded pairs (vertical distribution integrable)",
      "T~(E, F) = 2 sum d eta_a(E, F) xi_a", Suite::connection, kAll, [](CheckContext& x, const CheckDefinition& d) {
        const auto rep = check_torsion(x.canonical(), x.points(), x.base_tolerance(), x.stream(38));
        return result(d, rep.entry("torsion-integrable-vertical").max_residual, x.base_tolerance(),
                      x.points().size());
      });
  add("canonical-equals-levi-civita", "canonical and Levi-Civita derivatives agree on seeded polynomial fields",
      "nabla~ = nabla on a 3-cosymplectic manifold", Suite::connection, kFlat,
      [](CheckContext& x, const CheckDefinition& d) {
        const std::size_t m = x.structure().dim();
        const VectorField e = polynomial_field(m, x.stream(39));
        const VectorField f = polynomial_field(m, x.stream(40));
        const double r = field_max(x.canonical().derivative(e, f) - x.levi_civita().derivative(e, f), x.points());
        return result(d, r, 1e-12, x.points().size());
      });
  add("canonical-horizontal-output", "canonical derivative of horizontal fields along horizontal fields is horizontal",
      "g(nabla~_X Y, xi_a) = 0", Suite::connection, kAll, [](CheckContext& x, const CheckDefinition& d) {
        const auto& s = x.structure();
        const VectorField hx = horizontal_projection(s, coordinate_vector(s.dim(), 0));
        const VectorField hy = horizontal_projection(s, coordinate_vector(s.dim(), 1));
        const VectorField out = x.canonical().derivative(hx, hy);
        double r = 0.0;
        for (int a = 0; a < 3; ++a) r = std::max(r, field_max(inner(s.g(), out, s.xi(a)), x.points()));
        return result(d, r, x.base_tolerance(), x.points().size());
      });

  // ---- curvature --------------------------------------------------------
  add("riemann-vanishes", "Riemann tensor of the flat model", "R = 0", Suite::curvature, kFlat,
      [](CheckContext& x, const CheckDefinition& d) {
        double r = 0.0;
        for (const auto& p : x.points()) r = std::max(r, max_abs(x.curvature().components_at(p)));
        return result(d, r, 1e-12, x.points().size());
      });
  add("ricci-vanishes", "Ricci tensor of the flat model", "every 3-cosymplectic manifold is Ricci-flat",
      Suite::curvature, kFlat, [](CheckContext& x, const CheckDefinition& d) {
        double r = 0.0;
        for (const auto& p : x.points()) r = std::max(r, max_abs(ricci(x.curvature(), x.structure().g(), p)));
        return result(d, r, 1e-12, x.points().size());
      });
  add("scalar-curvature-total", "scalar curvature of the Levi-Civita connection",
      "scal = 2(2n+1)(4n+3) (3-Sasakian), 0 (3-cosymplectic)", Suite::curvature, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        const double target = curvature_target(x.model());
        double r = 0.0;
        double first = std::numeric_limits<double>::quiet_NaN();
        for (const auto& p : x.points()) {
          const double s = scalar_curvature(x.curvature(), x.structure().g(), p);
          if (std::isnan(first)) first = s;
          r = std::max(r, std::abs(s - target));
        }
        const double tol = x.curved() ? (x.model().n == 1 ? 1e-5 : 1e-4) : 1e-12;
        return result(d, r, tol, x.points().size(), first);
      });
  add("einstein-ricci", "Ricci tensor is a constant multiple of g, constant scal / dim",
      "Ric = 2(2n+1) g", Suite::curvature, kSphere, [](CheckContext& x, const CheckDefinition& d) {
        const double k = curvature_target(x.model()) / static_cast<double>(x.structure().dim());
        double r = 0.0;
        for (const auto& p : x.points()) {
          const Eigen::MatrixXd g = x.structure().g()(p, 0).values_matrix();
          r = std::max(r, max_abs(ricci(x.curvature(), x.structure().g(), p) - k * g));
        }
        return result(d, r, x.tolerance(1e-6), x.points().size());
      });
  add("vertical-sectional-curvature", "sectional curvature of planes spanned by two Reeb fields",
      "g(R_{xi_a xi_b} xi_b, xi_a) = 1", Suite::curvature, kSphere, [](CheckContext& x, const CheckDefinition& d) {
        double r = 0.0;
        for (const auto& p : x.points()) {
          const StructureValues v = structure_values(x.structure(), p);
          for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b) {
              const Eigen::VectorXd rz = x.curvature().apply(p, v.xi[a], v.xi[b], v.xi[b]);
              r = std::max(r, std::abs(v.xi[a].dot(v.g * rz) - 1.0));
            }
        }
        return result(d, r, x.tolerance(1e-6), x.points().size());
      });
  add("first-bianchi", "first Bianchi identity on seeded vectors", "R_{XY}Z + R_{YZ}X + R_{ZX}Y = 0",
      Suite::curvature, kAll, [](CheckContext& x, const CheckDefinition& d) {
        const auto v = seeded_vectors(x.structure().dim(), 3, x.stream(50));
        double r = 0.0;
        for (const auto& p : x.points()) {
          const auto comp = x.curvature().components_at(p);
          r = std::max(r, max_abs(apply_curvature(comp, v[0], v[1], v[2]) + apply_curvature(comp, v[1], v[2], v[0]) +
                                  apply_curvature(comp, v[2], v[0], v[1])));
        }
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  add("ricci-frame-independence", "Ricci tensor from two different orthonormal frames",
      "Ric(X, Y) = sum_a g(R_{E_a X} Y, E_a) is frame independent", Suite::curvature, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        Rng rng(x.stream(51));
        const Eigen::MatrixXd q = rng.orthogonal(x.structure().dim());
        double r = 0.0;
        for (const auto& p : x.points(8)) {
          const Eigen::MatrixXd g = x.structure().g()(p, 0).values_matrix();
          const Eigen::MatrixXd e = orthonormal_frame(g);
          const Eigen::MatrixXd r1 = ricci(x.curvature(), x.structure().g(), p, e);
          const Eigen::MatrixXd r2 = ricci(x.curvature(), x.structure().g(), p, Eigen::MatrixXd(e * q));
          r = std::max(r, max_abs(r1 - r2));
        }
        return result(d, r, 1e-10, x.points(8).size());
      });
  auto curvature_entry = [](const char* entry) {
    return [entry](CheckContext& x, const CheckDefinition& d) {
      CurvatureTolerances tol;
      tol.reeb = tol.vertical = tol.mixed = tol.formula = x.tolerance(1e-6);
      const auto pts = x.points(8);
      const auto rep = check_canonical_curvature(x.canonical(), pts, tol, x.stream(52));
      return result(d, rep.entry(entry).max_residual, x.tolerance(1e-6), pts.size());
    };
  };
  add("canonical-curvature-reeb", "canonical curvature annihilates the Reeb fields", "R~_{EF} xi_a = 0",
      Suite::curvature, kAll, curvature_entry("curvature-reeb-annihilated"));
  add("canonical-curvature-vertical-pair", "canonical curvature along two Reeb fields", "R~_{xi_a xi_b} = 0",
      Suite::curvature, kAll, curvature_entry("curvature-vertical-pair"));
  add("canonical-curvature-mixed-basic",
      "canonical curvature along a horizontal and a Reeb field (basic-field approximation: horizontally projected "
      "coordinate fields)",
      "R~_{X xi_a} Y = 0 for basic X, Y", Suite::curvature, kAll, curvature_entry("curvature-mixed-basic"));
  add("curvature-formula-stated", "horizontal canonical curvature against the commonly quoted formula",
      "R~_{XY}Z = (R_{XY}Z)^h + sum (d eta_a(Y, Z) phi_a X - d eta_a(X, Z) phi_a Y)", Suite::curvature, kAll,
      curvature_entry("curvature-horizontal-formula-stated"));
  add("curvature-formula-carried", "horizontal canonical curvature with the vertical terms carried through",
      "R~_{XY}Z = (R_{XY}Z)^h + sum (d eta_a(X, Z) phi_a Y - d eta_a(Y, Z) phi_a X + 2 d eta_a(X, Y) phi_a Z)",
      Suite::curvature, kAll, curvature_entry("curvature-horizontal-formula-carried"));
  add("horizontal-scalar-curvature", "scalar curvature of the canonical connection over a horizontal frame",
      "sum g(R~_{X_i X_j} X_j, X_i) = 16n(n+2) (3-Sasakian), 0 (3-cosymplectic)", Suite::curvature, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        const double target = horizontal_target(x.model());
        const auto pts = x.points(8);
        double r = 0.0;
        double first = std::numeric_limits<double>::quiet_NaN();
        for (const auto& p : pts) {
          const double s = horizontal_scalar_curvature(x.canonical(), p);
          if (std::isnan(first)) first = s;
          r = std::max(r, std::abs(s - target));
        }
        return result(d, r, x.curved() ? 1e-4 : std::max(x.base_tolerance(), 1e-10), pts.size(), first);
      });
  add("nonflatness-witness", "strictly positive horizontal scalar curvature rules out Darboux-like coordinates",
      "horizontal scalar curvature > 0", Suite::curvature, kSphere, [](CheckContext& x, const CheckDefinition& d) {
        const auto pts = x.points(8);
        double lowest = std::numeric_limits<double>::infinity();
        for (const auto& p : pts) lowest = std::min(lowest, sphere_nonflatness_witness(x.model(), p));
        return result(d, lowest > 0.0 ? 0.0 : 1.0 - std::min(lowest, 0.0), 0.0, pts.size(), lowest);
      });

  // ---- darboux ----------------------------------------------------------
  auto darboux_tol = [](CheckContext& x) { return std::max(x.base_tolerance(), 1e-6); };
  add("darboux-form-constants", "fundamental forms have the Darboux constants in the transported frame",
      "Phi_a(F_i, F_j) constant: Phi_1(X, Y) = Phi_1(U, V) = -1, Phi_2(X, U) = -1, Phi_2(Y, V) = 1, "
      "Phi_3(X, V) = Phi_3(Y, U) = -1, Phi_1(xi_2, xi_3) = -1, Phi_2(xi_1, xi_3) = 1, Phi_3(xi_1, xi_2) = -1",
      Suite::darboux, kFlat, [darboux_tol](CheckContext& x, const CheckDefinition& d) {
        double r = 0.0;
        for (const auto& p : x.points(8)) r = std::max(r, x.darboux_frame().form_constant_residual(p));
        return result(d, r, darboux_tol(x), x.points(8).size());
      });
  add("darboux-phi2-yv", "the Phi_2(Y_i, V_j) block in the transported frame", "Phi_2(Y_i, V_j) = delta_ij",
      Suite::darboux, kFlat, [darboux_tol](CheckContext& x, const CheckDefinition& d) {
        double r = 0.0;
        for (const auto& p : x.points(8)) r = std::max(r, x.darboux_frame().phi2_yv_residual(p));
        return result(d, r, darboux_tol(x), x.points(8).size());
      });
  add("darboux-orthonormal", "transported frame is g-orthonormal", "g(F_i, F_j) = delta_ij", Suite::darboux, kFlat,
      [darboux_tol](CheckContext& x, const CheckDefinition& d) {
        double r = 0.0;
        for (const auto& p : x.points(8)) r = std::max(r, x.darboux_frame().orthonormality_residual(p));
        return result(d, r, darboux_tol(x), x.points(8).size());
      });
  add("darboux-adapted", "transported frame stays adapted to the structure",
      "Y_i = phi_1 X_i, U_i = phi_2 X_i, V_i = phi_3 X_i", Suite::darboux, kFlat,
      [darboux_tol](CheckContext& x, const CheckDefinition& d) {
        double r = 0.0;
        for (const auto& p : x.points(8)) r = std::max(r, x.darboux_frame().adapted_residual(p));
        return result(d, r, darboux_tol(x), x.points(8).size());
      });
  add("darboux-brackets", "pairwise Lie brackets of the transported frame (central differences)",
      "[F_i, F_j] = 0", Suite::darboux, kFlat, [darboux_tol](CheckContext& x, const CheckDefinition& d) {
        double r = 0.0;
        for (const auto& p : x.points(4)) r = std::max(r, x.darboux_frame().max_bracket(p));
        return result(d, r, darboux_tol(x), x.points(4).size());
      });
  add("darboux-flatness-precondition", "the Darboux construction rejects a curved metric",
      "Darboux-like coordinates require a flat metric", Suite::darboux, kSphere,
      [](CheckContext& x, const CheckDefinition& d) {
        try {
          build_darboux_frame(x.model(), x.points().front(), x.options().ode_steps);
        } catch (const NonFlatError& e) {
          return result(d, 0.0, 0.0, 1, e.curvature());
        }
        return result(d, 1.0, 0.0, 1);
      });
  add("scrambled-eta-differs", "contact forms in scrambled coordinates are not coordinate differentials",
      "max |eta_a - dz_a| >= 0.1", Suite::darboux, kScrambled, [](CheckContext& x, const CheckDefinition& d) {
        const auto& s = x.structure();
        const std::size_t m = s.dim();
        double diff = 0.0;
        for (int a = 0; a < 3; ++a) {
          Eigen::VectorXd dz = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
          dz[static_cast<Eigen::Index>(m - 3 + static_cast<std::size_t>(a))] = 1.0;
          diff = std::max(diff, max_abs(s.eta(a)(x.points().front(), 0).values_vector() - dz));
        }
        return result(d, std::max(0.0, 0.1 - diff), 0.0, 1, diff);
      });

  // ---- musical ----------------------------------------------------------
  auto musical_entry = [](std::vector<std::string> entries) {
    return [entries](CheckContext& x, const CheckDefinition& d) {
      const auto rep = verify_musical_identities(x.structure(), x.points(), x.base_tolerance());
      double r = 0.0;
      for (const auto& e : entries) r = std::max(r, rep.entry(e).max_residual);
      return result(d, r, x.base_tolerance(), x.points().size());
    };
  };
  add("musical-gflat-factorization", "metric musical map on H factors through each form",
      "g-flat_H = Phi_a-flat o phi_a^H", Suite::musical, kAll,
      musical_entry({"gflat-equals-Phiflat-phi-1", "gflat-equals-Phiflat-phi-2", "gflat-equals-Phiflat-phi-3"}));
  add("musical-phi-from-forms", "each phi_a on H is recovered from the other two forms",
      "phi_a^H = -1/2 sum eps_abc Phi_b-sharp o Phi_c-flat", Suite::musical, kAll,
      musical_entry({"phi-from-forms-1", "phi-from-forms-2", "phi-from-forms-3"}));
  add("musical-anticommute", "mixed anticommutation of musical maps", "Phi_2-flat o phi_3^H = -Phi_3-flat o phi_2^H",
      Suite::musical, kAll, musical_entry({"Phi2flat-phi3-anticommute"}));
  add("metric-reconstruction-banyaga", "metric on H rebuilt from the three fundamental forms",
      "g-flat_H = -Phi_1-flat o Phi_2-sharp o Phi_3-flat", Suite::musical, kAll,
      musical_entry({"gflat-from-three-forms"}));
  add("metric-recovery", "full metric rebuilt from the forms and the Reeb data equals the model metric",
      "g = g_H + sum eta_a (x) eta_a", Suite::musical, kAll, musical_entry({"metric-reconstruction"}));
  add("musical-roundtrip", "form and metric musical maps invert their sharps",
      "Phi_a-sharp o Phi_a-flat = id_H, g-sharp o g-flat = id", Suite::musical, kAll,
      [](CheckContext& x, const CheckDefinition& d) {
        const auto& s = x.structure();
        double r = 0.0;
        for (const auto& p : x.points()) {
          const StructureValues v = structure_values(s, p);
          const HorizontalSpace h = horizontal_space(v);
          const auto k = h.basis.cols();
          for (int a = 0; a < 3; ++a) {
            const Eigen::MatrixXd f = form_musical(v, h, a, MusicalDirection::flat);
            const Eigen::MatrixXd sh = form_musical(v, h, a, MusicalDirection::sharp);
            r = std::max(r, max_abs(sh * f - Eigen::MatrixXd::Identity(k, k)));
          }
        }
        const auto v = constant_fields(s.dim(), 2, x.stream(60));
        for (const auto& e : v) r = std::max(r, field_max(musical_sharp(s.g(), musical_flat(s.g(), e)) - e, x.points()));
        return result(d, r, x.base_tolerance(), x.points().size());
      });
  return c;
}

}  // namespace

const std::vector<CheckDefinition>& check_catalog() {
  static const std::vector<CheckDefinition> catalog = build_catalog();
  return catalog;
}

VerificationReport run_verification(const RunOptions& options) {
  if (options.order != 2 && options.order != 3) throw std::invalid_argument("order must be 2 or 3");
  if (options.points < 1) throw std::invalid_argument("points must be positive");
  ScopedOrderBudget budget(options.order);
  const Model model = make_model(options.manifold, options.n, options.seed);
  CheckContext ctx(model, options);

  VerificationReport report;
  report.manifold = options.manifold;
  report.n = options.n;
  report.seed = options.seed;
  report.order = options.order;
  report.conventions = report_conventions();
  for (const auto& def : check_catalog()) {
    if (!def.applies_to(model.kind)) continue;
    if (options.suite && def.suite != *options.suite) continue;
    try {
      report.add(def.run(ctx, def));
    } catch (const std::exception& e) {
      report.add(make_check(def.id, def.description + " [error: " + e.what() + "]", def.reference,
                            std::numeric_limits<double>::quiet_NaN(), 0.0, 0));
    }
  }
  return report;
}

}  // namespace acm3
