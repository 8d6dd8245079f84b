#include "acm3/contact3.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "acm3/sampling.hpp"

namespace acm3 {

int epsilon(int a, int b, int c) noexcept {
  if (a < 0 || a > 2 || b < 0 || b > 2 || c < 0 || c > 2) return 0;
  return (a - b) * (b - c) * (c - a) / 2;
}

int delta(int a, int b) noexcept { return a == b ? 1 : 0; }

AlmostContactMetric3Structure::AlmostContactMetric3Structure(MetricField g, std::array<EndomorphismField, 3> phi,
                                                             std::array<VectorField, 3> xi,
                                                             std::array<OneFormField, 3> eta)
    : g_(std::move(g)),
      phi_(std::move(phi)),
      xi_(std::move(xi)),
      eta_(std::move(eta)),
      Phi_{acm3::fundamental_form(AlmostContactMetricStructure{phi_[0], xi_[0], eta_[0], g_}), acm3::fundamental_form(AlmostContactMetricStructure{phi_[1], xi_[1], eta_[1], g_}),
           acm3::fundamental_form(AlmostContactMetricStructure{phi_[2], xi_[2], eta_[2], g_})} {
  const std::size_t m = g_.dim();
  if (m < 7 || (m - 3) % 4 != 0) throw std::invalid_argument("3-structure requires dimension 4n + 3 with n >= 1");
  for (int a = 0; a < 3; ++a)
    if (phi_[a].dim() != m || xi_[a].dim() != m || eta_[a].dim() != m)
      throw std::invalid_argument("structure fields disagree on the chart dimension");
}

// ---------------------------------------------------------------------------

void ResidualReport::add(std::string name, double residual, double tol, std::size_t samples) {
  entries.push_back({std::move(name), residual, tol, residual <= tol, samples});
}

bool ResidualReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const ResidualEntry& e) { return e.pass; });
}

double ResidualReport::max_residual() const {
  double r = 0.0;
  for (const auto& e : entries) r = std::max(r, e.max_residual);
  return r;
}

const ResidualEntry& ResidualReport::entry(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw std::out_of_range("no residual entry named " + name);
}

void ResidualReport::merge(const ResidualReport& other, const std::string& prefix) {
  structure_valid = structure_valid && other.structure_valid;
  for (const auto& e : other.entries) {
    ResidualEntry copy = e;
    copy.name = prefix + e.name;
    entries.push_back(std::move(copy));
  }
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs(const std::vector<double>& v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

// ---------------------------------------------------------------------------

ResidualReport check_acms(const AlmostContactMetricStructure& s, const std::vector<ChartPoint>& points, double tol,
                          std::uint64_t seed) {
  const auto m = static_cast<Eigen::Index>(s.g.dim());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  Rng rng(seed);
  double r_sq = 0, r_eta_xi = 0, r_phi_xi = 0, r_eta_phi = 0, r_compat = 0, r_compat_matrix = 0;
  for (const auto& p : points) {
    const Eigen::MatrixXd phi = s.phi(p, 0).values_matrix();
    const Eigen::VectorXd xi = s.xi(p, 0).values_vector();
    const Eigen::VectorXd eta = s.eta(p, 0).values_vector();
    const Eigen::MatrixXd g = s.g(p, 0).values_matrix();
    r_sq = std::max(r_sq, max_abs(phi * phi + id - xi * eta.transpose()));
    r_eta_xi = std::max(r_eta_xi, std::abs(eta.dot(xi) - 1.0));
    r_phi_xi = std::max(r_phi_xi, max_abs(phi * xi));
    r_eta_phi = std::max(r_eta_phi, max_abs(eta.transpose() * phi));
    r_compat_matrix = std::max(r_compat_matrix, max_abs(phi.transpose() * g * phi - g + eta * eta.transpose()));
    for (int k = 0; k < 4; ++k) {
      const Eigen::VectorXd e = rng.uniform_vector(static_cast<std::size_t>(m), -1.0, 1.0);
      const Eigen::VectorXd f = rng.uniform_vector(static_cast<std::size_t>(m), -1.0, 1.0);
      const double lhs = (phi * e).dot(g * (phi * f));
      const double rhs = e.dot(g * f) - eta.dot(e) * eta.dot(f);
      r_compat = std::max(r_compat, std::abs(lhs - rhs));
    }
  }
  ResidualReport rep;
  const std::size_t n = points.size();
  rep.add("phi-squared", r_sq, tol, n);
  rep.add("eta-of-xi", r_eta_xi, tol, n);
  rep.add("phi-of-xi", r_phi_xi, tol, n);
  rep.add("eta-after-phi", r_eta_phi, tol, n);
  rep.add("compatible-metric", r_compat, tol, n * 4);
  rep.add("compatible-metric-matrix", r_compat_matrix, tol, n);
  rep.structure_valid = rep.all_pass();
  return rep;
}

StructureValues structure_values(const AlmostContactMetric3Structure& s, const ChartPoint& p) {
  StructureValues v;
  v.g = s.g()(p, 0).values_matrix();
  for (int a = 0; a < 3; ++a) {
    v.phi[a] = s.phi(a)(p, 0).values_matrix();
    v.xi[a] = s.xi(a)(p, 0).values_vector();
    v.eta[a] = s.eta(a)(p, 0).values_vector();
    v.Phi[a] = v.g * v.phi[a];
  }
  return v;
}

ResidualReport check_3structure(const AlmostContactMetric3Structure& s, const std::vector<ChartPoint>& points,
                                double tol) {
  const auto m = static_cast<Eigen::Index>(s.dim());
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(m, m);
  double r_pp = 0, r_px = 0, r_ep = 0, r_ex = 0, r_orth = 0;
  for (const auto& p : points) {
    const StructureValues v = structure_values(s, p);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        Eigen::MatrixXd pp = v.phi[a] * v.phi[b] - v.xi[a] * v.eta[b].transpose() + delta(a, b) * id;
        Eigen::VectorXd px = v.phi[a] * v.xi[b];
        Eigen::RowVectorXd ep = v.eta[a].transpose() * v.phi[b];
        for (int c = 0; c < 3; ++c) {
          const int e = epsilon(a, b, c);
          if (e == 0) continue;
          pp -= e * v.phi[c];
          px -= e * v.xi[c];
          ep -= e * v.eta[c].transpose();
        }
        r_pp = std::max(r_pp, max_abs(pp));
        r_px = std::max(r_px, max_abs(px));
        r_ep = std::max(r_ep, max_abs(ep));
        r_ex = std::max(r_ex, std::abs(v.eta[a].dot(v.xi[b]) - delta(a, b)));
        r_orth = std::max(r_orth, std::abs(v.xi[a].dot(v.g * v.xi[b]) - delta(a, b)));
      }
  }
  ResidualReport rep;
  const std::size_t n = points.size();
  rep.add("phi-phi-relation", r_pp, tol, n);
  rep.add("phi-xi-relation", r_px, tol, n);
  rep.add("eta-phi-relation", r_ep, tol, n);
  rep.add("eta-xi-duality", r_ex, tol, n);
  rep.add("reeb-orthonormal", r_orth, tol, n);
  return rep;
}

// ---------------------------------------------------------------------------

VectorTwoFormField nijenhuis(const AlmostContactMetricStructure& s) {
  const std::size_t m = s.g.dim();
  return VectorTwoFormField(m, [s, m](const ChartPoint& p, int order) {
    require_order(order + 1);
    const JetArray ph = s.phi(p, order + 1);
    const JetArray f = ph.truncate(order);
    const JetArray eh = s.eta(p, order + 1);
    const JetArray xi = s.xi(p, order);
    std::vector<JetArray> d;  // d[l](i, k) = d_l phi^i_k
    d.reserve(m);
    for (std::size_t l = 0; l < m; ++l) d.push_back(ph.derivative(l));
    JetArray r = JetArray::zeros({m, m, m}, m, order);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
          Jet v = (eh(k).derivative(j) - eh(j).derivative(k)) * xi(i);
          for (std::size_t l = 0; l < m; ++l) {
            v += f(l, j) * d[l](i, k) - f(l, k) * d[l](i, j);
            v += f(i, l) * (d[k](l, j) - d[j](l, k));
          }
          r(i, k, j) = -v;
          r(i, j, k) = std::move(v);
        }
    return r;
  });
}

VectorField nijenhuis_apply(const AlmostContactMetricStructure& s, const VectorField& x, const VectorField& y) {
  const auto& phi = s.phi;
  const VectorField px = apply(phi, x);
  const VectorField py = apply(phi, y);
  const VectorField bracket = apply(phi, apply(phi, lie_bracket(x, y))) + lie_bracket(px, py) -
                              apply(phi, lie_bracket(px, y)) - apply(phi, lie_bracket(x, py));
  const ScalarField deta = evaluate_form(exterior_derivative(s.eta), x, y);
  return bracket + (2.0 * deta) * s.xi;
}

std::pair<bool, double> is_normal(const AlmostContactMetricStructure& s, const std::vector<ChartPoint>& points,
                                  double tol) {
  const VectorTwoFormField n = nijenhuis(s);
  double worst = 0.0;
  for (const auto& p : points) worst = std::max(worst, max_abs(n(p, 0).values()));
  return {worst <= tol, worst};
}

TwoFormField fundamental_form(const AlmostContactMetricStructure& s) {
  const MetricField g = s.g;
  const EndomorphismField phi = s.phi;
  return TwoFormField(g.dim(), [g, phi](const ChartPoint& p, int order) { return matmul(g(p, order), phi(p, order)); });
}

Classification classify(const AlmostContactMetricStructure& s, const AffineConnection& levi_civita,
                        const std::vector<ChartPoint>& points, double tol) {
  const std::size_t m = s.g.dim();
  const TwoFormField deta = exterior_derivative(s.eta);
  const TwoFormField Phi = fundamental_form(s);
  const ThreeFormField dPhi = exterior_derivative(Phi);
  const VectorTwoFormField n = nijenhuis(s);
  const EndomorphismDerivativeField nabla_phi = covariant_derivative(levi_civita.coefficients(), s.phi);

  double r_contact = 0, r_deta = 0, r_dphi = 0, r_normal = 0, r_sasaki = 0, r_cosym = 0;
  for (const auto& p : points) {
    const Eigen::MatrixXd de = deta(p, 0).values_matrix();
    const Eigen::MatrixXd ph = Phi(p, 0).values_matrix();
    r_contact = std::max(r_contact, max_abs(de - ph));
    r_deta = std::max(r_deta, max_abs(de));
    r_dphi = std::max(r_dphi, max_abs(dPhi(p, 0).values()));
    r_normal = std::max(r_normal, max_abs(n(p, 0).values()));
    const std::vector<double> np = nabla_phi(p, 0).values();
    r_cosym = std::max(r_cosym, max_abs(np));
    const Eigen::MatrixXd g = s.g(p, 0).values_matrix();
    const Eigen::VectorXd xi = s.xi(p, 0).values_vector();
    const Eigen::VectorXd eta = s.eta(p, 0).values_vector();
    // (nabla_k phi)^i_j = g_kj xi^i - eta_j delta^i_k
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          const auto K = static_cast<Eigen::Index>(k), I = static_cast<Eigen::Index>(i),
                     J = static_cast<Eigen::Index>(j);
          const double expected = g(K, J) * xi[I] - (i == k ? eta[J] : 0.0);
          r_sasaki = std::max(r_sasaki, std::abs(np[(k * m + i) * m + j] - expected));
        }
  }
  Classification c;
  const std::size_t count = points.size();
  c.residuals.add("contact-metric", r_contact, tol, count);
  c.residuals.add("almost-cosymplectic", std::max(r_deta, r_dphi), tol, count);
  c.residuals.add("normal", r_normal, tol, count);
  c.residuals.add("sasakian", r_sasaki, tol, count);
  c.residuals.add("cosymplectic", r_cosym, tol, count);
  c.is_contact_metric = r_contact <= tol;
  c.is_almost_cosymplectic = std::max(r_deta, r_dphi) <= tol;
  c.is_normal = r_normal <= tol;
  c.is_sasakian = r_sasaki <= tol;
  c.is_cosymplectic = r_cosym <= tol;
  return c;
}

// ---------------------------------------------------------------------------

VectorField horizontal_projection(const AlmostContactMetric3Structure& s, const VectorField& e) {
  VectorField r = e;
  for (int a = 0; a < 3; ++a) r = r - contract(s.eta(a), e) * s.xi(a);
  return r;
}

Eigen::VectorXd horizontal_projection(const AlmostContactMetric3Structure& s, const ChartPoint& p,
                                      const Eigen::VectorXd& e) {
  Eigen::VectorXd r = e;
  for (int a = 0; a < 3; ++a) {
    const Eigen::VectorXd xi = s.xi(a)(p, 0).values_vector();
    const Eigen::VectorXd eta = s.eta(a)(p, 0).values_vector();
    r -= eta.dot(e) * xi;
  }
  return r;
}

HorizontalSpace horizontal_space(const StructureValues& v) {
  const Eigen::Index m = v.g.rows();
  const Eigen::Index h = m - 3;
  Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(m, m);
  for (int a = 0; a < 3; ++a) proj -= v.xi[a] * v.eta[a].transpose();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(proj);
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, h);
  HorizontalSpace out;
  out.basis = q;
  out.coordinates = q.transpose() * proj;
  return out;
}

Eigen::MatrixXd form_musical(const StructureValues& v, const HorizontalSpace& h, int a, MusicalDirection dir) {
  const Eigen::MatrixXd flat = (h.basis.transpose() * v.Phi.at(static_cast<std::size_t>(a)) * h.basis).transpose();
  if (dir == MusicalDirection::flat) return flat;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(flat);
  if (!lu.isInvertible()) throw std::domain_error("fundamental form is degenerate on the horizontal space");
  return lu.inverse();
}

Eigen::MatrixXd metric_musical(const StructureValues& v, const HorizontalSpace& h) {
  return h.basis.transpose() * v.g * h.basis;
}

Eigen::MatrixXd restricted_endomorphism(const StructureValues& v, const HorizontalSpace& h, int a) {
  return h.basis.transpose() * v.phi.at(static_cast<std::size_t>(a)) * h.basis;
}

ResidualReport verify_musical_identities(const AlmostContactMetric3Structure& s, const std::vector<ChartPoint>& points,
                                    double tol) {
  std::array<double, 3> r_gflat{}, r_phi{};
  double r_anti = 0, r_recon = 0, r_metric = 0;
  for (const auto& p : points) {
    const StructureValues v = structure_values(s, p);
    const HorizontalSpace h = horizontal_space(v);
    const Eigen::MatrixXd gm = metric_musical(v, h);
    std::array<Eigen::MatrixXd, 3> flat, sharp, f;
    for (int a = 0; a < 3; ++a) {
      flat[a] = form_musical(v, h, a, MusicalDirection::flat);
      sharp[a] = form_musical(v, h, a, MusicalDirection::sharp);
      f[a] = restricted_endomorphism(v, h, a);
    }
    for (int a = 0; a < 3; ++a) {
      r_gflat[a] = std::max(r_gflat[a], max_abs(gm - flat[a] * f[a]));
      Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(gm.rows(), gm.cols());
      for (int b = 0; b < 3; ++b)
        for (int c = 0; c < 3; ++c)
          if (epsilon(a, b, c) != 0) rhs += epsilon(a, b, c) * sharp[b] * flat[c];
      r_phi[a] = std::max(r_phi[a], max_abs(f[a] + 0.5 * rhs));
    }
    r_anti = std::max(r_anti, max_abs(flat[1] * f[2] + flat[2] * f[1]));
    r_recon = std::max(r_recon, max_abs(gm + flat[0] * sharp[1] * flat[2]));
    r_metric = std::max(r_metric, max_abs(recover_metric(v.Phi, v.xi, v.eta) - v.g));
  }
  ResidualReport rep;
  const std::size_t n = points.size();
  for (int a = 0; a < 3; ++a) {
    rep.add("gflat-equals-Phiflat-phi-" + std::to_string(a + 1), r_gflat[a], tol, n);
    rep.add("phi-from-forms-" + std::to_string(a + 1), r_phi[a], tol, n);
  }
  rep.add("Phi2flat-phi3-anticommute", r_anti, tol, n);
  rep.add("gflat-from-three-forms", r_recon, tol, n);
  rep.add("metric-reconstruction", r_metric, tol, n);
  return rep;
}

Eigen::MatrixXd recover_metric(const std::array<Eigen::MatrixXd, 3>& Phi, const std::array<Eigen::VectorXd, 3>& xi,
                               const std::array<Eigen::VectorXd, 3>& eta) {
  StructureValues v;
  const Eigen::Index m = Phi[0].rows();
  v.g = Eigen::MatrixXd::Identity(m, m);  // unused by horizontal_space and form_musical
  v.Phi = Phi;
  v.xi = xi;
  v.eta = eta;
  const HorizontalSpace h = horizontal_space(v);
  const Eigen::MatrixXd gh = -form_musical(v, h, 0, MusicalDirection::flat) *
                             form_musical(v, h, 1, MusicalDirection::sharp) *
                             form_musical(v, h, 2, MusicalDirection::flat);
  Eigen::MatrixXd g = h.coordinates.transpose() * gh * h.coordinates;
  for (int a = 0; a < 3; ++a) g += eta[a] * eta[a].transpose();
  return g;
}

Eigen::MatrixXd recover_metric(const AlmostContactMetric3Structure& s, const ChartPoint& p) {
  const StructureValues v = structure_values(s, p);
  return recover_metric(v.Phi, v.xi, v.eta);
}

}  // namespace acm3
