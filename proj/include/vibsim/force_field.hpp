// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vibsim {

// Real polynomial in the mode coordinates q_0..q_{M-1}, degree <= 4. Keys
// are sorted mode-index multisets; the empty key is the constant term. A
// coefficient multiplies its monomial exactly as stored (no factorial or
// symmetry normalisation).
struct Polynomial {
  int vars = 0;
  std::map<std::vector<int>, double> terms;

  Polynomial() = default;
  explicit Polynomial(int v) : vars(v) {}
  void add(std::vector<int> monomial, double coeff);
  double coeff(const std::vector<int>& monomial) const;
  int degree() const;
};

// Quartic potential in dimensionless normal coordinates, atomic units:
// V = sum k_ij q_i q_j + sum k_ijk q_i q_j q_k + sum k_ijkl ... with each
// index set stored once in ascending order.
struct ForceField {
  std::string label;
  int modes = 0;
  Polynomial potential;  // degrees 2..4
};

// Harmonic frequencies omega_i = sqrt(2 k_ii); throws if any diagonal
// quadratic coefficient is missing or non-positive.
std::vector<double> frequencies(const ForceField& ff);

// Potential restricted to total degree <= order (order in {2,3,4}).
Polynomial potential_polynomial(const ForceField& ff, int order);

// Coordinate substitution q = A q' + b.
struct LinearCoordinateMap {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};

// Substitutes the map into V(q) and collects monomials in q'. Degree is
// never raised; exact zeros are dropped.
Polynomial transform_polynomial(const Polynomial& v, const LinearCoordinateMap& map);

// Mode-localisation weights for an orthogonal U:
//   Wp_ij = sqrt(omega_i / omega_j) U_ij   (momenta)
//   Wq_ij = sqrt(omega_j / omega_i) U_ij   (coordinates)
// so that Wp * Wq^T = I.
struct LocalizationMap {
  Eigen::MatrixXd wp;
  Eigen::MatrixXd wq;
};

LocalizationMap localization_map(const std::vector<double>& omega,
                                 const Eigen::MatrixXd& u);

}  // namespace vibsim
