#pragma once

// Concrete 3-structures on a single chart.
//
// flat3cos: R^{4n+3} with coordinates (x, y, u, v, z), g = I, xi_a = d/dz_a,
//   eta_a = dz_a and constant phi_a. Matrices act on columns, so
//   phi_1 d/dx_i = d/dy_i, phi_2 d/dx_i = d/du_i, phi_3 d/dx_i = d/dv_i.
// sphere3sas: S^{4n+3} through the inverse stereographic chart
//   x(u) = (2u, |u|^2 - 1) / (1 + |u|^2). J_a is right multiplication by
//   -i, -j, -k on each quaternionic block of R^{4n+4}; xi_a = -J_a x (that is
//   x i, x j, x k) and phi_a is the tangential part of J_a.
// flat3cos-scrambled: flat3cos pulled back through u = A w + b.

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acm3/canonical.hpp"
#include "acm3/contact3.hpp"

namespace acm3 {

enum class ModelKind { flat, sphere, scrambled };

/// Affine chart change u = linear * w + offset.
struct AffineMap {
  Eigen::MatrixXd linear;
  Eigen::VectorXd offset;
};

struct Model {
  std::string id;
  ModelKind kind;
  std::size_t n;
  AlmostContactMetric3Structure structure;
  StructureClass structure_class;
  /// Set for scrambled models: the map from new to flat coordinates.
  std::optional<AffineMap> chart_map;

  std::size_t dim() const noexcept { return structure.dim(); }
  /// Seeded chart points inside the model's sampling domain: the cube
  /// [-1, 1]^m in flat coordinates, or the ball |u| <= 2 on the sphere.
  std::vector<ChartPoint> sample_points(std::size_t count, std::uint64_t seed) const;
  /// Whether p lies in the sampling domain.
  bool in_domain(const ChartPoint& p) const;
};

/// Radius of the sphere sampling ball in the stereographic chart.
inline constexpr double kSphereChartRadius = 2.0;

/// Ambient complex structures on R^{4n+4} (block diagonal 4x4).
Eigen::MatrixXd quaternion_structure(std::size_t n, int a);
/// Constant phi_a of the flat model.
Eigen::MatrixXd flat_phi(std::size_t n, int a);

Model make_flat(std::size_t n);
Model make_sphere(std::size_t n);
/// Pull back a flat model through a seeded rotation and translation.
Model scramble(const Model& flat, std::uint64_t seed);
/// Pull back through a given map (linear part must be orthogonal).
Model scramble(const Model& flat, const AffineMap& map);

/// Chart point sampled outside the sphere chart's well-conditioned ball.
class ChartDomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The Darboux frame builder requires a flat metric.
class NonFlatError : public std::runtime_error {
 public:
  NonFlatError(const std::string& what, double curvature)
      : std::runtime_error(what), curvature_(curvature) {}
  double curvature() const noexcept { return curvature_; }

 private:
  double curvature_;
};

/// Frame fields X_i, Y_i = phi_1 X_i, U_i = phi_2 X_i, V_i = phi_3 X_i,
/// xi_1, xi_2, xi_3, obtained by parallel transport of an adapted basis at
/// the base point along straight chart segments.
class DarbouxFrame {
 public:
  DarbouxFrame(Model model, ChartPoint base, Eigen::MatrixXd initial, int ode_steps);

  const ChartPoint& base() const noexcept { return base_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(initial_.cols()); }
  /// Frame columns at q, ordered (X_1..X_n, Y_1..Y_n, U_1..U_n, V_1..V_n, xi_1, xi_2, xi_3).
  Eigen::MatrixXd evaluate(const ChartPoint& q) const;
  /// Lie brackets [F_a, F_b] at q by central differences of evaluate().
  Eigen::VectorXd bracket(std::size_t a, std::size_t b, const ChartPoint& q, double h = 1e-5) const;
  /// Max |[F_a, F_b]| at q over all pairs, from one central-difference sweep.
  double max_bracket(const ChartPoint& q, double h = 1e-5) const;
  /// Max |Phi_a(F_i, F_j) - expected| at q over a and all frame pairs.
  double form_constant_residual(const ChartPoint& q) const;
  /// Same, but only the Phi_2(Y_i, V_j) block (compared with +delta_ij).
  double phi2_yv_residual(const ChartPoint& q) const;
  /// Max |g(F_i, F_j) - delta_ij| at q.
  double orthonormality_residual(const ChartPoint& q) const;
  /// Max |Y - phi_1 X|, |U - phi_2 X|, |V - phi_3 X| at q.
  double adapted_residual(const ChartPoint& q) const;

 private:
  Model model_;
  ChartPoint base_;
  Eigen::MatrixXd initial_;
  int ode_steps_;
  ConnectionField gamma_;
};

/// Constants Phi_a(F_i, F_j) in a Darboux frame, derived from Phi = g(., phi .).
std::array<Eigen::MatrixXd, 3> darboux_form_constants(std::size_t n);

/// Throws NonFlatError if max |R^l_ijk(p)| exceeds flat_tol.
DarbouxFrame build_darboux_frame(const Model& model, const ChartPoint& p, int ode_steps = 64,
                                 double flat_tol = 1e-9);

/// Horizontal scalar curvature of the canonical connection at p. Throws
/// ChartDomainError outside the model's sampling domain.
double sphere_nonflatness_witness(const Model& model, const ChartPoint& p);

}  // namespace acm3
