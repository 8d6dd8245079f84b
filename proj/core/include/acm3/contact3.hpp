#pragma once

// Almost contact metric structures, 3-structures and their identities.
//
// Conventions:
//   Phi(E, F) = g(E, phi F), so Phi_ij = g_ik phi^k_j.
//   N = [phi, phi] + 2 d eta (x) xi with
//   [phi, phi](X, Y) = phi^2 [X, Y] + [phi X, phi Y] - phi [phi X, Y] - phi [X, phi Y].
// Indices alpha, beta, gamma are 0-based in code (0, 1, 2 stand for 1, 2, 3).

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acm3/calculus.hpp"
#include "acm3/fields.hpp"
#include "acm3/riemann.hpp"

namespace acm3 {

/// Totally antisymmetric symbol on {0, 1, 2} with epsilon(0, 1, 2) = 1.
int epsilon(int a, int b, int c) noexcept;
int delta(int a, int b) noexcept;

struct AlmostContactMetricStructure {
  EndomorphismField phi;
  VectorField xi;
  OneFormField eta;
  MetricField g;
};

/// Three almost contact structures sharing one metric.
class AlmostContactMetric3Structure {
 public:
  AlmostContactMetric3Structure(MetricField g, std::array<EndomorphismField, 3> phi, std::array<VectorField, 3> xi,
                                std::array<OneFormField, 3> eta);

  std::size_t dim() const noexcept { return g_.dim(); }
  /// Quaternionic dimension n of the horizontal distribution (dim = 4n + 3).
  std::size_t n() const noexcept { return (dim() - 3) / 4; }

  const MetricField& g() const noexcept { return g_; }
  const EndomorphismField& phi(int a) const { return phi_.at(static_cast<std::size_t>(a)); }
  const VectorField& xi(int a) const { return xi_.at(static_cast<std::size_t>(a)); }
  const OneFormField& eta(int a) const { return eta_.at(static_cast<std::size_t>(a)); }
  AlmostContactMetricStructure structure(int a) const { return {phi(a), xi(a), eta(a), g_}; }
  /// Phi_a = g(., phi_a .), derived from (g, phi_a).
  const TwoFormField& fundamental_form(int a) const { return Phi_.at(static_cast<std::size_t>(a)); }

 private:
  MetricField g_;
  std::array<EndomorphismField, 3> phi_;
  std::array<VectorField, 3> xi_;
  std::array<OneFormField, 3> eta_;
  std::array<TwoFormField, 3> Phi_;
};

/// One named residual.
struct ResidualEntry {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = true;
  std::size_t samples = 0;
};

/// Residuals of a family of identities. Never throws for well-formed input.
struct ResidualReport {
  /// Cleared when the input failed the almost contact metric axioms.
  bool structure_valid = true;
  std::vector<ResidualEntry> entries;

  void add(std::string name, double residual, double tol, std::size_t samples);
  bool all_pass() const;
  double max_residual() const;
  /// Entry by name; throws std::out_of_range if absent.
  const ResidualEntry& entry(const std::string& name) const;
  /// Appends every entry of other, prefixing names.
  void merge(const ResidualReport& other, const std::string& prefix = "");
};

/// Max |.| over all entries of a value array.
double max_abs(const Eigen::MatrixXd& m);
double max_abs(const std::vector<double>& v);

/// phi^2 = -I + eta (x) xi, eta(xi) = 1, phi xi = 0, eta o phi = 0 and
/// g(phi E, phi F) = g(E, F) - eta(E) eta(F). Seeded vectors come from `seed`.
ResidualReport check_acms(const AlmostContactMetricStructure& s, const std::vector<ChartPoint>& points, double tol,
                          std::uint64_t seed = 7);

/// The three families of quaternionic relations for all (alpha, beta), plus
/// orthonormality of the Reeb fields.
ResidualReport check_3structure(const AlmostContactMetric3Structure& s, const std::vector<ChartPoint>& points,
                                double tol);

/// Nijenhuis-type tensor N^i_jk of (phi, eta, xi) in components.
VectorTwoFormField nijenhuis(const AlmostContactMetricStructure& s);
/// N(X, Y) assembled from brackets (cross-check of the component form).
VectorField nijenhuis_apply(const AlmostContactMetricStructure& s, const VectorField& x, const VectorField& y);
/// max |N| over points, and whether that is within tol.
std::pair<bool, double> is_normal(const AlmostContactMetricStructure& s, const std::vector<ChartPoint>& points,
                                  double tol);

/// Phi(E, F) = g(E, phi F).
TwoFormField fundamental_form(const AlmostContactMetricStructure& s);

struct Classification {
  bool is_contact_metric = false;
  bool is_almost_cosymplectic = false;
  bool is_normal = false;
  bool is_sasakian = false;
  bool is_cosymplectic = false;
  ResidualReport residuals;
};

/// Residual-based classification. `levi_civita` must be the Levi-Civita
/// connection of s.g (used for the nabla-based Sasakian and cosymplectic tests).
Classification classify(const AlmostContactMetricStructure& s, const AffineConnection& levi_civita,
                        const std::vector<ChartPoint>& points, double tol);

/// E^h = E - sum_a eta_a(E) xi_a.
VectorField horizontal_projection(const AlmostContactMetric3Structure& s, const VectorField& e);
/// Same for component values at p.
Eigen::VectorXd horizontal_projection(const AlmostContactMetric3Structure& s, const ChartPoint& p,
                                      const Eigen::VectorXd& e);

/// Pointwise values of the structure at p.
struct StructureValues {
  Eigen::MatrixXd g;
  std::array<Eigen::MatrixXd, 3> phi;
  std::array<Eigen::VectorXd, 3> xi;
  std::array<Eigen::VectorXd, 3> eta;
  std::array<Eigen::MatrixXd, 3> Phi;
};
StructureValues structure_values(const AlmostContactMetric3Structure& s, const ChartPoint& p);

/// Basis of the horizontal space at a point. Columns are coordinate
/// components of 4n vectors spanning ker eta_1 n ker eta_2 n ker eta_3,
/// orthonormal for the Euclidean chart inner product (not for g).
struct HorizontalSpace {
  Eigen::MatrixXd basis;        // m x 4n
  Eigen::MatrixXd coordinates;  // 4n x m: v -> coefficients of v^h in basis
};
HorizontalSpace horizontal_space(const StructureValues& v);

enum class MusicalDirection { flat, sharp };

/// Matrix of Phi_a-flat: H -> H* (or its inverse for sharp) in the given
/// basis of H and the dual basis of H*. Throws std::domain_error when the
/// restriction of Phi_a to H is singular.
Eigen::MatrixXd form_musical(const StructureValues& v, const HorizontalSpace& h, int a, MusicalDirection dir);
/// g-flat restricted to H, and phi_a restricted to H, in the same bases.
Eigen::MatrixXd metric_musical(const StructureValues& v, const HorizontalSpace& h);
Eigen::MatrixXd restricted_endomorphism(const StructureValues& v, const HorizontalSpace& h, int a);

/// g-flat_H = Phi_a-flat o phi_a^H and phi_a^H = -1/2 sum eps Phi_b-sharp o Phi_c-flat
/// for each a, plus Phi_2-flat o phi_3^H = -Phi_3-flat o phi_2^H and the
/// reconstruction g-flat_H = -Phi_1-flat o Phi_2-sharp o Phi_3-flat.
ResidualReport verify_musical_identities(const AlmostContactMetric3Structure& s, const std::vector<ChartPoint>& points,
                                    double tol);

/// Metric on T_pM rebuilt from the three fundamental forms and the Reeb
/// data alone: horizontal block from -Phi_1-flat o Phi_2-sharp o Phi_3-flat,
/// vertical block delta, mixed block zero.
Eigen::MatrixXd recover_metric(const std::array<Eigen::MatrixXd, 3>& Phi, const std::array<Eigen::VectorXd, 3>& xi,
                               const std::array<Eigen::VectorXd, 3>& eta);
Eigen::MatrixXd recover_metric(const AlmostContactMetric3Structure& s, const ChartPoint& p);

}  // namespace acm3
