// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "vibsim/boson.hpp"
#include "vibsim/force_field.hpp"
#include "vibsim/statevector.hpp"

namespace vibsim {

// Duschinsky relation q_f = U q_i + d between the normal coordinates of
// two electronic surfaces, with the harmonic frequencies of both.
struct DuschinskyData {
  Eigen::MatrixXd u;        // orthogonal rotation, M x M
  Eigen::VectorXd shift;    // displacement d
  Eigen::VectorXd omega_i;  // initial-surface frequencies
  Eigen::VectorXd omega_f;  // final-surface frequencies

  int modes() const { return static_cast<int>(u.rows()); }
};

// Throws std::invalid_argument on shape mismatch, non-orthogonal u
// (tolerance 1e-10) or non-positive frequencies.
void validate(const DuschinskyData& dusch);

// Anti-Hermitian generators of the four factors. The composed operator is
//   U_dok = exp(t) exp(-sp) exp(s) exp(r),
// i.e. rotation, squeeze to the initial frequencies, inverse squeeze to
// the final frequencies, then displacement. The squeeze generators carry
// their scalar trace terms; under level truncation s, sp and r pick up a
// small Hermitian defect at the boundary which is reported, not removed.
struct DoktorovFactors {
  BosonPolynomial t;
  BosonPolynomial s;
  BosonPolynomial sp;
  BosonPolynomial r;
};

DoktorovFactors doktorov_generators(const DuschinskyData& dusch);

enum class DoktorovMethod { DenseExp, Trotter };

struct DoktorovOptions {
  DoktorovMethod method = DoktorovMethod::DenseExp;
  int trotter_steps = 1;
};

// Dense realisation on the d^M Fock space (occupation tuples indexed with
// mode 0 least significant, matching fock_matrix). For compact encoding
// with power-of-two d this index space coincides with the qubit space.
struct DoktorovOperator {
  int modes = 0;
  int levels = 0;
  Eigen::MatrixXcd matrix;
  // max |U^dag U - I|; nonzero because truncated squeeze and rotation
  // generators are not exactly anti-Hermitian. Surfaced as a diagnostic;
  // no re-orthogonalisation is applied.
  double unitarity_residual = 0.0;
};

// dense_exp: matrix exponential of each truncated generator, multiplied in
// composition order. trotter: each generator is Pauli-encoded (compact
// scheme, d must be a power of two), the imaginary part of each
// coefficient becomes a rotation angle and every factor is split into N
// first-order passes; the Hermitian truncation defect has no rotation to
// map to and is dropped, so the circuit route is exactly unitary.
DoktorovOperator build_doktorov(const DuschinskyData& dusch, int levels,
                                const DoktorovOptions& opts = {});

// Amplitudes of the encoded d^M occupation subspace of a qubit state, in
// fock_matrix index order.
Eigen::VectorXcd fock_amplitudes(const StateVector& s, const EncodingSpec& spec);

double franck_condon_factor(const Eigen::VectorXcd& psi_i,
                            const Eigen::VectorXcd& psi_f,
                            const DoktorovOperator& dok);
double franck_condon_factor(const StateVector& psi_i, const StateVector& psi_f,
                            const DuschinskyData& dusch, const EncodingSpec& spec,
                            const DoktorovOptions& opts = {});

// Swap-test sampled estimate of |<f|U|i>|^2; U psi_i is normalised for the
// test and the estimate is rescaled by its squared norm. Compact
// power-of-two d only (the Fock and qubit spaces must coincide).
double franck_condon_sampled(const StateVector& psi_i, const StateVector& psi_f,
                             const DuschinskyData& dusch, const EncodingSpec& spec,
                             std::uint64_t shots, std::uint64_t seed,
                             const DoktorovOptions& opts = {});

// |<f| mu(q_f) U_dok |i>|^2 for a dipole surface of degree <= 2 in the
// final-surface coordinates; mu is ladder-expanded with omega_f.
double non_condon_factor(const Eigen::VectorXcd& psi_i,
                         const Eigen::VectorXcd& psi_f, const Polynomial& mu,
                         const DuschinskyData& dusch, const DoktorovOperator& dok);
double non_condon_factor(const StateVector& psi_i, const StateVector& psi_f,
                         const Polynomial& mu, const DuschinskyData& dusch,
                         const EncodingSpec& spec, const DoktorovOptions& opts = {});

// Final-surface Hamiltonian re-expressed in the initial coordinates and
// diagonalised there, so eigenstate overlaps give Franck-Condon integrals
// without building the Doktorov operator. Columns of `states` are H_f'
// eigenvectors in the initial-basis Fock space, energies ascending.
struct TransformedEigenstates {
  Eigen::VectorXd energies;
  Eigen::MatrixXcd states;
};

TransformedEigenstates fc_via_transformed_hamiltonian(const ForceField& ff_f,
                                                      const DuschinskyData& dusch,
                                                      int levels);

// FC table between the lowest eigenstates of two surfaces: entry (k, l) is
// |<f_l|U_dok|i_k>|^2 with both sets of eigenstates computed on the d^M
// Fock space. Frequencies in dusch must match the force fields.
struct FranckCondonTable {
  Eigen::VectorXd energies_i;
  Eigen::VectorXd energies_f;
  Eigen::MatrixXd factors;  // n_i x n_f
};

FranckCondonTable franck_condon_table(const ForceField& ff_i, const ForceField& ff_f,
                                      const DuschinskyData& dusch, int levels,
                                      int n_i, int n_f,
                                      const DoktorovOptions& opts = {});

}  // namespace vibsim
