#pragma once

// Levi-Civita connection, general affine connections given by an operator,
// and their torsion and curvature.
//
// Curvature convention: R_{XY}Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z.
// In components R(d_i, d_j) d_k = R^l_ijk d_l with
//   R^l_ijk = d_i G^l_jk - d_j G^l_ik + G^l_im G^m_jk - G^l_jm G^m_ik.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "acm3/calculus.hpp"
#include "acm3/fields.hpp"

namespace acm3 {

/// R^l_ijk stored at (l, i, j, k).
struct RiemannTag {
  static constexpr std::size_t rank = 4;
  static constexpr const char* name = "riemann";
};
/// (nabla_k A)^i_j stored at (k, i, j).
struct EndomorphismDerivativeTag {
  static constexpr std::size_t rank = 3;
  static constexpr const char* name = "covariant derivative of an endomorphism";
};
/// (nabla_k b)_ij stored at (k, i, j).
struct BilinearDerivativeTag {
  static constexpr std::size_t rank = 3;
  static constexpr const char* name = "covariant derivative of a bilinear form";
};

using RiemannField = TensorField<RiemannTag>;
using EndomorphismDerivativeField = TensorField<EndomorphismDerivativeTag>;
using BilinearDerivativeField = TensorField<BilinearDerivativeTag>;

/// G^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij).
ConnectionField christoffel(const MetricField& g);

/// Covariant derivative operator on vector fields.
class AffineConnection {
 public:
  using Derivative = std::function<VectorField(const VectorField&, const VectorField&)>;

  AffineConnection(std::string name, std::size_t dim, Derivative derivative, bool is_levi_civita,
                   std::optional<ConnectionField> coefficients = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  bool is_levi_civita() const noexcept { return is_levi_civita_; }

  /// nabla_E F.
  VectorField derivative(const VectorField& e, const VectorField& f) const { return derivative_(e, f); }
  /// G^k_ij with nabla_{d_i} d_j = G^k_ij d_k. Derived from the operator when
  /// no explicit coefficients were supplied.
  ConnectionField coefficients() const;
  bool has_explicit_coefficients() const noexcept { return coefficients_.has_value(); }

 private:
  std::string name_;
  std::size_t dim_;
  Derivative derivative_;
  bool is_levi_civita_;
  std::optional<ConnectionField> coefficients_;
};

/// Connection with (nabla_X Y)^k = X^i d_i Y^k + G^k_ij X^i Y^j.
AffineConnection connection_from_coefficients(std::string name, const ConnectionField& gamma,
                                              bool is_levi_civita = false);
AffineConnection levi_civita(const MetricField& g);

/// T(X, Y) = nabla_X Y - nabla_Y X - [X, Y].
VectorField torsion(const AffineConnection& c, const VectorField& x, const VectorField& y);
/// (nabla_Z g)(X, Y) = Z(g(X, Y)) - g(nabla_Z X, Y) - g(X, nabla_Z Y).
ScalarField nabla_metric(const AffineConnection& c, const MetricField& g, const VectorField& z,
                         const VectorField& x, const VectorField& y);
/// (nabla_E w)(F) = E(w(F)) - w(nabla_E F).
ScalarField nabla_one_form(const AffineConnection& c, const OneFormField& w, const VectorField& e,
                           const VectorField& f);
/// (nabla_E A)F = nabla_E(A F) - A nabla_E F.
VectorField nabla_endomorphism(const AffineConnection& c, const EndomorphismField& a, const VectorField& e,
                               const VectorField& f);
/// R_{XY}Z by nesting the covariant derivative operator.
VectorField curvature_operator(const AffineConnection& c, const VectorField& x, const VectorField& y,
                               const VectorField& z);

/// Component forms built from connection coefficients.
/// (nabla xi) as the endomorphism E -> nabla_E xi, i.e. entry (i, k) = nabla_k xi^i.
EndomorphismField covariant_derivative(const ConnectionField& gamma, const VectorField& xi);
/// (nabla_k A)^i_j = d_k A^i_j + G^i_kl A^l_j - G^l_kj A^i_l.
EndomorphismDerivativeField covariant_derivative(const ConnectionField& gamma, const EndomorphismField& a);
/// (nabla_k b)_ij = d_k b_ij - G^l_ki b_lj - G^l_kj b_il.
BilinearDerivativeField covariant_derivative(const ConnectionField& gamma, const BilinearField& b);

/// R^l_ijk from connection coefficients (no symmetry assumed).
RiemannField riemann_components(const ConnectionField& gamma);

/// Pointwise curvature evaluator.
class CurvatureTensor {
 public:
  CurvatureTensor(std::size_t dim, RiemannField components);

  std::size_t dim() const noexcept { return dim_; }
  /// R^l_ijk values at p, flattened (l, i, j, k).
  std::vector<double> components_at(const ChartPoint& p) const;
  /// R_{XY}Z at p for tangent vectors given by their components.
  Eigen::VectorXd apply(const ChartPoint& p, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                        const Eigen::VectorXd& z) const;

  const RiemannField& field() const noexcept { return components_; }

 private:
  std::size_t dim_;
  RiemannField components_;
};

/// Curvature from the coefficients of c (tensor formula).
CurvatureTensor riemann_curvature(const AffineConnection& c);
/// Same contraction evaluated pointwise from precomputed components.
Eigen::VectorXd apply_curvature(const std::vector<double>& r, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                const Eigen::VectorXd& z);

/// g-orthonormal frame at a point (columns), from the Cholesky factor of g:
/// g = L L^T, E = L^{-T}. Throws std::domain_error if g is not positive definite.
Eigen::MatrixXd orthonormal_frame(const Eigen::MatrixXd& g);

/// Ric(X, Y) = sum_a g(R_{E_a X} Y, E_a) over a g-orthonormal frame. The
/// result is returned in coordinate components Ric_ij.
Eigen::MatrixXd ricci(const CurvatureTensor& curv, const MetricField& g, const ChartPoint& p,
                      const std::optional<Eigen::MatrixXd>& frame = std::nullopt);
/// Same, from precomputed curvature components and metric values.
Eigen::MatrixXd ricci_from_components(const std::vector<double>& r, const Eigen::MatrixXd& g,
                                      const Eigen::MatrixXd& frame);
/// Trace of Ric over a g-orthonormal frame.
double scalar_curvature(const CurvatureTensor& curv, const MetricField& g, const ChartPoint& p);

struct KillingResult {
  bool killing;
  double max_residual;
};
/// Max over points of |L_xi g|_inf compared against tol.
KillingResult is_killing(const VectorField& xi, const MetricField& g, const std::vector<ChartPoint>& points,
                         double tol);

}  // namespace acm3
