// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "vibsim/boson.hpp"
#include "vibsim/statevector.hpp"

namespace vibsim {

struct VscfOptions {
  double tol = 1e-10;     // sweep-to-sweep energy change (hartree)
  int max_sweeps = 200;
  double damping = 0.0;   // 0 = plain updates; else mix damping * old orbital
  // Warm-start orbitals (one unit d-vector per mode); empty means the s = 0
  // basis states.
  std::vector<Eigen::VectorXcd> initial;
};

struct VscfResult {
  std::vector<Eigen::VectorXcd> orbitals;  // one unit d-vector per mode
  double energy = 0.0;
  int iterations = 0;  // completed sweeps
  bool converged = false;
};

// Mean-field ground state of a ladder Hamiltonian at truncation d: sweeps
// modes in order, each update replacing the mode's orbital with the ground
// eigenvector of the d x d effective Hamiltonian obtained by contracting
// every other mode with its current orbital. Starts from the s = 0 basis
// orbitals. The result is returned (with converged = false) even when the
// sweep limit is hit.
VscfResult vscf(const BosonPolynomial& h, int modes, int levels,
                const VscfOptions& opts = {});

// Product state over the encoded register with per-mode amplitudes taken
// from the orbitals (a simulator-side shortcut; no preparation circuit).
StateVector product_state(const std::vector<Eigen::VectorXcd>& orbitals,
                          const EncodingSpec& spec);

}  // namespace vibsim
