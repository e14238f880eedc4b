// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "vibsim/pauli.hpp"

namespace vibsim {

// Dense statevector over n qubits, amplitudes indexed little-endian
// (bit k of the index is qubit k).
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amp_.size(); }
  std::vector<std::complex<double>>& amplitudes() { return amp_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amp_; }
  std::complex<double>& operator[](std::size_t i) { return amp_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return amp_[i]; }

  double norm() const;
  void normalize();

 private:
  int n_qubits_ = 0;
  std::vector<std::complex<double>> amp_;
};

// |bits> with the string read qubit n-1 .. qubit 0 left to right, so
// "010" is e_2 (qubit 1 set).
StateVector prepare_basis(const std::string& bits);
StateVector prepare_basis_index(int n_qubits, std::size_t index);

// s <- P s for a coefficient-carrying Pauli term.
void apply_pauli(StateVector& s, const PauliTerm& term);

// s <- exp(-i theta P) s = (cos(theta) I - i sin(theta) P) s for a pure
// Pauli string P (no coefficient). Norm-preserving.
void apply_rotation(StateVector& s, const std::vector<Axis>& axes, double theta);

// <a|b>; throws on register width mismatch.
std::complex<double> overlap_exact(const StateVector& a, const StateVector& b);

// <s|H|s> for Hermitian H; throws if the imaginary residue exceeds 1e-10,
// otherwise discards it.
double expectation(const StateVector& s, const PauliSum& h);

// Deterministic uniform double in [0, 1) from the documented mt19937_64
// stream (53 high bits of each draw); bit-reproducible across platforms.
double uniform01(std::mt19937_64& rng);

// Ancilla swap-test estimate of |<a|b>|^2: samples `shots` Bernoulli
// outcomes with P(ancilla = 0) = (1 + |<a|b>|^2)/2 from mt19937_64(seed)
// and returns 2 f0 - 1 clamped to [0, 1].
double swap_test_estimate(const StateVector& a, const StateVector& b,
                          std::uint64_t shots, std::uint64_t seed);

}  // namespace vibsim
