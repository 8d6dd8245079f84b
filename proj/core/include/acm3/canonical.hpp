#pragma once

// The canonical connection of an almost contact metric 3-structure:
//   nabla~_X Y = (nabla_X Y)^h,  nabla~_{xi_a} Y = [xi_a, Y],  nabla~ xi_a = 0
// for horizontal X, Y, extended to arbitrary fields by
//   nabla~_E F = (nabla_{E^h} F^h)^h + sum_a eta_a(E) [xi_a, F^h] + sum_a E(eta_a(F)) xi_a.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "acm3/contact3.hpp"
#include "acm3/riemann.hpp"

namespace acm3 {

enum class StructureClass { three_sasakian, three_cosymplectic, generic };

const char* to_string(StructureClass c) noexcept;

class CanonicalConnection {
 public:
  explicit CanonicalConnection(AlmostContactMetric3Structure s);

  const AlmostContactMetric3Structure& structure() const noexcept { return s_; }
  const AffineConnection& levi_civita() const noexcept { return lc_; }

  /// nabla~_E F. At order K this needs E at K and F and the structure at K + 1.
  VectorField derivative(const VectorField& e, const VectorField& f) const;
  /// The same operator packaged as an AffineConnection.
  AffineConnection as_affine() const;

 private:
  AlmostContactMetric3Structure s_;
  AffineConnection lc_;
  ConnectionField gamma_;
};

/// T~(E, F) = nabla~_E F - nabla~_F E - [E, F].
VectorField canonical_torsion(const CanonicalConnection& c, const VectorField& e, const VectorField& f);
Eigen::VectorXd canonical_torsion(const CanonicalConnection& c, const Eigen::VectorXd& e, const Eigen::VectorXd& f,
                                  const ChartPoint& p);

/// R~_{XY}Z from the operator formula. Tensorial, so pointwise values may be
/// computed from any fields through the given vectors; constant fields are used.
VectorField canonical_curvature(const CanonicalConnection& c, const VectorField& x, const VectorField& y,
                                const VectorField& z);
Eigen::VectorXd canonical_curvature(const CanonicalConnection& c, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                    const Eigen::VectorXd& z, const ChartPoint& p);

/// g-orthonormal basis of the horizontal space at p (columns).
Eigen::MatrixXd horizontal_orthonormal_frame(const AlmostContactMetric3Structure& s, const ChartPoint& p);

/// sum_{i,j} g(R~_{X_i X_j} X_j, X_i) over a g-orthonormal horizontal frame.
double horizontal_scalar_curvature(const CanonicalConnection& c, const ChartPoint& p);

/// Seeded constant vector fields used as test directions.
std::vector<Eigen::VectorXd> seeded_vectors(std::size_t dim, std::size_t count, std::uint64_t seed);

/// (nabla~_E g)(F, F') for seeded E, F, F', together with the Killing
/// residual of each xi_a so the equivalence can be inspected.
ResidualReport check_metric_compat(const CanonicalConnection& c, const std::vector<ChartPoint>& points, double tol,
                                   std::uint64_t seed = 11);
/// (nabla~_E eta_a)F for seeded E, F, and d eta_a(X, xi_b) for horizontal X.
ResidualReport check_eta_parallel(const CanonicalConnection& c, const std::vector<ChartPoint>& points, double tol,
                                  std::uint64_t seed = 13);
/// 3-Sasakian: (nabla~_E phi_a)F = -sum eps_abc (eta_b(E) phi_c F^h - eta_c(E) phi_b F^h).
/// 3-cosymplectic: nabla~ phi_a = 0.
ResidualReport check_nabla_tilde_phi(const CanonicalConnection& c, StructureClass cls,
                                     const std::vector<ChartPoint>& points, double tol, std::uint64_t seed = 17);
/// Axioms (i) nabla xi_a = 0, (ii) (nabla_Z g)(X, Y) = 0 on horizontal
/// fields, (iii) T(X, Y) = 2 sum d eta_a(X, Y) xi_a and T(X, xi_a) = 0, for
/// an arbitrary connection on the structure.
ResidualReport check_uniqueness_axioms(const AffineConnection& conn, const AlmostContactMetric3Structure& s,
                                       const std::vector<ChartPoint>& points, double tol, std::uint64_t seed = 19);
/// T~(X, Y) - 2 sum d eta_a(X, Y) xi_a on horizontal X, Y; T~(X, xi_a);
/// T~(xi_a, xi_b) - [xi_b, xi_a]; and the integrable-vertical form on arbitrary E, F.
ResidualReport check_torsion(const CanonicalConnection& c, const std::vector<ChartPoint>& points, double tol,
                             std::uint64_t seed = 23);

/// Curvature identities of nabla~ on a 3-Sasakian structure:
///   R~_{EF} xi_a, R~_{xi_a xi_b} E, R~_{X xi_a} Y (horizontal X, Y),
///   the commonly quoted horizontal formula
///     R~_{XY}Z = (R_{XY}Z)^h + sum (d eta_a(Y, Z) phi_a X - d eta_a(X, Z) phi_a Y),
///   and the formula obtained by carrying the vertical terms through
///     R~_{XY}Z = (R_{XY}Z)^h + sum (d eta_a(X, Z) phi_a Y - d eta_a(Y, Z) phi_a X
///                                   + 2 d eta_a(X, Y) phi_a Z).
struct CurvatureTolerances {
  double reeb = 1e-6;
  double vertical = 1e-6;
  double mixed = 1e-6;
  double formula = 1e-6;
};
ResidualReport check_canonical_curvature(const CanonicalConnection& c, const std::vector<ChartPoint>& points,
                                         const CurvatureTolerances& tol, std::uint64_t seed = 29);

}  // namespace acm3
