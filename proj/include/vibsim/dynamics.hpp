// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <vector>

#include "vibsim/pauli.hpp"
#include "vibsim/statevector.hpp"

namespace vibsim {

// One first-order product-formula step exp(-i H dt) ~ prod_k exp(-i c_k
// sigma_k dt), terms applied in the stored (canonical) order. Coefficients
// must be real up to 1e-10; identity strings contribute the global phase
// exactly, which keeps commuting Hamiltonians exact at any step count.
void trotter_step(StateVector& s, const PauliSum& h, double dt);

// n_steps first-order steps of total duration `time`.
void evolve(StateVector& s, const PauliSum& h, double time, int n_steps);

struct Trajectory {
  std::vector<double> times;
  // values[k][j] = <obs_j> at times[k].
  std::vector<std::vector<double>> values;
};

// Expectation values along a cumulative evolution: the state advances from
// each requested time to the next with ceil(dt * steps_per_unit) steps (at
// least one per nonzero segment). Times must be non-negative and
// non-decreasing.
Trajectory observable_trajectory(const StateVector& psi0, const PauliSum& h,
                                 const std::vector<PauliSum>& observables,
                                 const std::vector<double>& times,
                                 double steps_per_unit);

}  // namespace vibsim
