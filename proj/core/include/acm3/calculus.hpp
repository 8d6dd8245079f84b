#pragma once

// Exterior and Lie calculus on chart fields (half convention for d).

#include "acm3/fields.hpp"

namespace acm3 {

/// [X, Y]^i = X^j d_j Y^i - Y^j d_j X^i.
VectorField lie_bracket(const VectorField& x, const VectorField& y);

/// (dw)_ij = 1/2 (d_i w_j - d_j w_i).
TwoFormField exterior_derivative(const OneFormField& w);
/// (dw)_ijk = 1/3 (d_i w_jk + d_j w_ki + d_k w_ij).
ThreeFormField exterior_derivative(const TwoFormField& w);
/// Forms of degree above three are not represented.
void exterior_derivative(const ThreeFormField& w) = delete;

/// L_xi phi from the component formula
/// xi^k d_k phi^i_j - phi^k_j d_k xi^i + phi^i_k d_j xi^k.
EndomorphismField lie_derivative_endo(const VectorField& xi, const EndomorphismField& phi);
/// (L_xi phi) X = [xi, phi X] - phi [xi, X].
VectorField lie_derivative_endo_apply(const VectorField& xi, const EndomorphismField& phi, const VectorField& x);

/// L_xi g from the component formula xi^k d_k g_ij + g_kj d_i xi^k + g_ik d_j xi^k.
BilinearField lie_derivative_metric(const VectorField& xi, const MetricField& g);
/// (L_xi g)(X, Y) = xi(g(X, Y)) - g([xi, X], Y) - g(X, [xi, Y]).
ScalarField lie_derivative_metric_apply(const VectorField& xi, const MetricField& g, const VectorField& x,
                                        const VectorField& y);

/// X -> g(X, .).
OneFormField musical_flat(const MetricField& g, const VectorField& x);
/// w -> g^{-1} w. Throws std::domain_error where g is singular.
VectorField musical_sharp(const MetricField& g, const OneFormField& w);

}  // namespace acm3
