// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "vibsim/boson.hpp"
#include "vibsim/pauli.hpp"
#include "vibsim/statevector.hpp"

namespace vibsim {

// One-mode excitation |to><from| - h.c. with from < to.
struct SingleExcitation {
  int mode = 0;
  int from = 0;
  int to = 0;
};

// Two-mode excitation, both modes raising, mode_a < mode_b.
struct DoubleExcitation {
  int mode_a = 0;
  int from_a = 0;
  int to_a = 0;
  int mode_b = 0;
  int from_b = 0;
  int to_b = 0;
};

std::vector<SingleExcitation> standard_singles(int modes, int levels);
std::vector<DoubleExcitation> standard_doubles(int modes, int levels);

// Anti-Hermitian generator K = |to><from| - |from><to| patterns encoded on
// the qubit register; every Pauli coefficient is purely imaginary.
PauliSum excitation_generator(const SingleExcitation& ex, const EncodingSpec& spec);
PauliSum excitation_generator(const DoubleExcitation& ex, const EncodingSpec& spec);

// exp(i alpha(theta) sigma) with alpha a linear form in the parameters.
// Rotations produced by excitations that share a Pauli string are merged
// into a single gate.
struct AnsatzGate {
  std::vector<Axis> axes;
  std::vector<std::pair<int, double>> alpha;  // (parameter slot, coefficient)
};

struct AnsatzCircuit {
  EncodingSpec enc;
  int n_params = 0;
  std::vector<SingleExcitation> singles;
  std::vector<DoubleExcitation> doubles;
  // Singles block first, then doubles, each in canonical string order.
  std::vector<AnsatzGate> gates;

  void apply(StateVector& s, const std::vector<double>& theta) const;
};

// rank 1 = singles only, rank 2 = singles and doubles.
AnsatzCircuit build_circuit(int modes, int levels, Scheme scheme, int rank = 2);

struct VqeOptions {
  double step = 0.1;
  double grad_eps = 1e-4;
  int max_iter = 20000;
  double grad_tol = 1e-9;
  double init_perturbation = 0.01;
  std::uint64_t seed = 0;
  // Fixed-step descent; default adapts the step down when a move raises
  // the energy.
  bool pure_gd = false;
};

struct VqeResult {
  std::vector<double> theta;
  double energy = 0.0;
  // Accepted energies, starting from the initial parameter vector.
  std::vector<double> energy_trace;
  // Max-norm of the gradient driving each accepted step; one entry per
  // energy_trace entry after the first.
  std::vector<double> grad_norm_trace;
  int iterations = 0;
  bool converged = false;
  bool diverged = false;
};

double ansatz_energy(const PauliSum& h, const AnsatzCircuit& circuit,
                     const StateVector& reference, const std::vector<double>& theta);

std::vector<double> ansatz_gradient(const PauliSum& h, const AnsatzCircuit& circuit,
                                    const StateVector& reference,
                                    const std::vector<double>& theta, double eps);

VqeResult vqe_minimize(const PauliSum& h, const AnsatzCircuit& circuit,
                       const StateVector& reference, const VqeOptions& opts = {});

}  // namespace vibsim
