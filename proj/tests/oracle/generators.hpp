#pragma once

// Seeded random inputs for property tests.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "acm3/fields.hpp"
#include "acm3/sampling.hpp"

namespace gen {

/// c + sum a_i u_i + sum b_ij u_i u_j with coefficients in [-1, 1].
inline acm3::ScalarField quadratic(std::size_t dim, acm3::Rng& rng) {
  acm3::ScalarField f = acm3::constant_scalar(dim, rng.uniform(-1, 1));
  for (std::size_t i = 0; i < dim; ++i) {
    const acm3::ScalarField ui = acm3::coordinate_function(dim, i);
    f = f + rng.uniform(-1, 1) * ui;
    for (std::size_t j = i; j < dim; ++j) f = f + rng.uniform(-1, 1) * (ui * acm3::coordinate_function(dim, j));
  }
  return f;
}

/// Vector field with quadratic polynomial components.
inline acm3::VectorField polynomial_vector(std::size_t dim, acm3::Rng& rng) {
  std::vector<acm3::ScalarField> c;
  for (std::size_t i = 0; i < dim; ++i) c.push_back(quadratic(dim, rng));
  return acm3::vector_from_components(std::move(c));
}

inline acm3::OneFormField polynomial_one_form(std::size_t dim, acm3::Rng& rng) {
  std::vector<acm3::ScalarField> c;
  for (std::size_t i = 0; i < dim; ++i) c.push_back(quadratic(dim, rng));
  return acm3::one_form_from_components(std::move(c));
}

inline acm3::Jet random_jet(std::size_t dim, int order, acm3::Rng& rng) {
  acm3::Jet j(dim, order);
  for (double& c : j.coefficients()) c = rng.uniform(-1, 1);
  return j;
}

inline Eigen::VectorXd vector(std::size_t dim, acm3::Rng& rng) { return rng.uniform_vector(dim, -1, 1); }

inline Eigen::MatrixXd matrix(std::size_t dim, acm3::Rng& rng) {
  Eigen::MatrixXd a(dim, dim);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = rng.uniform(-1, 1);
  return a;
}

}  // namespace gen
