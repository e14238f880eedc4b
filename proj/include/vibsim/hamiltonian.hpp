// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "vibsim/boson.hpp"
#include "vibsim/force_field.hpp"
#include "vibsim/pauli.hpp"

namespace vibsim {

struct HamiltonianOptions {
  int order = 4;           // highest potential degree kept (2, 3 or 4)
  bool zero_point = true;  // keep the omega/2 constants
};

// Ladder form of a coordinate polynomial alone: every monomial goes through
// q_m = (2 omega_m)^{-1/2} (a_m + a_m^dag), one term per create/annihilate
// choice (2^degree ordered products per monomial).
BosonPolynomial ladder_expand(const Polynomial& poly, const std::vector<double>& omega);

// Ladder form of H = p^2/2 + V with the harmonic part written analytically
// as sum_j omega_j (n_j + 1/2); only the residual polynomial goes through
// the q_j = (2 omega_j)^{-1/2} (a_j + a_j^dag) substitution. This keeps the
// harmonic ladder exactly diagonal at every truncation d.
BosonPolynomial second_quantize(const std::vector<double>& omega_ref,
                                const Polynomial& residual, bool zero_point);

BosonPolynomial build_second_quantized(const ForceField& ff,
                                       const HamiltonianOptions& opts = {});

// Same Hamiltonian in a localised mode basis: the harmonic part becomes the
// normal-ordered bilinear sum_jk (U^T diag(omega) U)_jk a_j^dag a_k (plus
// the zero-point constant) and the anharmonic polynomial is rewritten with
// the coordinate weights Wq before the ladder substitution.
BosonPolynomial build_second_quantized_localized(const ForceField& ff,
                                                 const Eigen::MatrixXd& u,
                                                 const HamiltonianOptions& opts = {});

struct VibHamiltonian {
  EncodingSpec enc;
  BosonPolynomial second_quantized;
  PauliSum qubit_form;

  std::size_t term_count() const { return qubit_form.size(); }
};

VibHamiltonian build_qubit_hamiltonian(const ForceField& ff, const EncodingSpec& enc,
                                       const HamiltonianOptions& opts = {},
                                       const Eigen::MatrixXd* localize = nullptr,
                                       double threshold = kCoeffThreshold);

// Ascending eigenvalues of the dense qubit operator (full 2^n space).
std::vector<double> exact_spectrum(const VibHamiltonian& h, int n_lowest);

// Restriction of a qubit operator to the d^M encoded basis states, ordered
// as encoded_subspace_indices. For compact encodings with d a power of two
// this is the whole space re-ordered.
Eigen::MatrixXcd encoded_subspace_matrix(const PauliSum& op, const EncodingSpec& spec);

// Ascending eigenvalues of the encoded-subspace restriction; this is the
// physical spectrum for direct encodings, where the full 2^n matrix also
// carries unphysical bit patterns.
std::vector<double> encoded_subspace_spectrum(const VibHamiltonian& h, int n_lowest);

}  // namespace vibsim
