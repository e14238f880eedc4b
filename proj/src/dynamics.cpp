// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "vibsim/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace vibsim {

void trotter_step(StateVector& s, const PauliSum& h, double dt) {
  if (h.n_qubits() != s.n_qubits())
    throw std::invalid_argument("trotter_step: register width mismatch");
  for (const auto& t : h.terms()) {
    if (std::abs(t.coeff.imag()) > 1e-10)
      throw std::invalid_argument("trotter_step: Hamiltonian coefficient not real");
    apply_rotation(s, t.axes, t.coeff.real() * dt);
  }
}

void evolve(StateVector& s, const PauliSum& h, double time, int n_steps) {
  if (n_steps < 1) throw std::invalid_argument("evolve: need at least one step");
  const double dt = time / n_steps;
  for (int k = 0; k < n_steps; ++k) trotter_step(s, h, dt);
}

Trajectory observable_trajectory(const StateVector& psi0, const PauliSum& h,
                                 const std::vector<PauliSum>& observables,
                                 const std::vector<double>& times,
                                 double steps_per_unit) {
  if (steps_per_unit <= 0.0)
    throw std::invalid_argument("observable_trajectory: steps_per_unit must be positive");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (times[k] < 0.0 || (k > 0 && times[k] < times[k - 1]))
      throw std::invalid_argument(
          "observable_trajectory: times must be non-negative and non-decreasing");
  }

  Trajectory traj;
  traj.times = times;
  StateVector s = psi0;
  double now = 0.0;
  for (double t : times) {
    const double dt = t - now;
    if (dt > 0.0) {
      const int steps =
          std::max(1, static_cast<int>(std::ceil(dt * steps_per_unit - 1e-9)));
      evolve(s, h, dt, steps);
      now = t;
    }
    std::vector<double> row;
    row.reserve(observables.size());
    for (const auto& obs : observables) row.push_back(expectation(s, obs));
    traj.values.push_back(std::move(row));
  }
  return traj;
}

}  // namespace vibsim
