// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "vibsim/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace vibsim {

namespace {

struct TermMasks {
  std::uint64_t flip = 0;
  std::uint64_t parity = 0;
  std::complex<double> base{1.0, 0.0};  // coefficient times i^{#Y}
};

TermMasks make_masks(const std::vector<Axis>& axes, std::complex<double> coeff) {
  static constexpr std::complex<double> ipow[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  TermMasks m;
  int ny = 0;
  for (std::size_t k = 0; k < axes.size(); ++k) {
    switch (axes[k]) {
      case Axis::I: break;
      case Axis::X: m.flip |= std::uint64_t{1} << k; break;
      case Axis::Y:
        m.flip |= std::uint64_t{1} << k;
        m.parity |= std::uint64_t{1} << k;
        ++ny;
        break;
      case Axis::Z: m.parity |= std::uint64_t{1} << k; break;
    }
  }
  m.base = coeff * ipow[ny & 3];
  return m;
}

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > kDenseQubitGuard)
    throw std::invalid_argument("StateVector: qubit count outside [0, " +
                                std::to_string(kDenseQubitGuard) + "]");
  amp_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const auto& a : amp_) n2 += std::norm(a);
  return std::sqrt(n2);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::runtime_error("StateVector::normalize: zero vector");
  for (auto& a : amp_) a /= n;
}

StateVector prepare_basis(const std::string& bits) {
  std::size_t index = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const char c = bits[bits.size() - 1 - i];
    if (c == '1')
      index |= std::size_t{1} << i;
    else if (c != '0')
      throw std::invalid_argument("prepare_basis: bitstring must be 0/1");
  }
  return prepare_basis_index(static_cast<int>(bits.size()), index);
}

StateVector prepare_basis_index(int n_qubits, std::size_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim())
    throw std::invalid_argument("prepare_basis_index: index out of range");
  s[index] = {1.0, 0.0};
  return s;
}

void apply_pauli(StateVector& s, const PauliTerm& term) {
  if (term.n_qubits() != s.n_qubits())
    throw std::invalid_argument("apply_pauli: register widths differ");
  const TermMasks m = make_masks(term.axes, term.coeff);
  std::vector<std::complex<double>> out(s.dim(), {0.0, 0.0});
  for (std::size_t x = 0; x < s.dim(); ++x) {
    const int par = std::popcount(x & m.parity) & 1;
    out[x ^ m.flip] = (par ? -m.base : m.base) * s[x];
  }
  s.amplitudes() = std::move(out);
}

void apply_rotation(StateVector& s, const std::vector<Axis>& axes, double theta) {
  if (static_cast<int>(axes.size()) != s.n_qubits())
    throw std::invalid_argument("apply_rotation: register widths differ");
  const TermMasks m = make_masks(axes, {1.0, 0.0});
  const std::complex<double> c{std::cos(theta), 0.0};
  const std::complex<double> mis{0.0, -std::sin(theta)};
  auto& amp = s.amplitudes();
  if (m.flip == 0) {
    // Diagonal string: P|x> = (+-1)|x>.
    for (std::size_t x = 0; x < amp.size(); ++x) {
      const int par = std::popcount(x & m.parity) & 1;
      amp[x] *= c + (par ? -mis : mis) * m.base;
    }
    return;
  }
  // Off-diagonal: process each (x, x^flip) pair once.
  for (std::size_t x = 0; x < amp.size(); ++x) {
    const std::size_t y = x ^ m.flip;
    if (y < x) continue;
    const int par_x = std::popcount(x & m.parity) & 1;
    const int par_y = std::popcount(y & m.parity) & 1;
    const std::complex<double> ax = amp[x], ay = amp[y];
    // P maps |x> -> phase_x |y| and |y> -> phase_y |x>.
    const std::complex<double> phase_x = par_x ? -m.base : m.base;
    const std::complex<double> phase_y = par_y ? -m.base : m.base;
    amp[x] = c * ax + mis * phase_y * ay;
    amp[y] = c * ay + mis * phase_x * ax;
  }
}

std::complex<double> overlap_exact(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits())
    throw std::invalid_argument("overlap_exact: register widths differ");
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t x = 0; x < a.dim(); ++x) acc += std::conj(a[x]) * b[x];
  return acc;
}

double expectation(const StateVector& s, const PauliSum& h) {
  if (h.n_qubits() != s.n_qubits())
    throw std::invalid_argument("expectation: register widths differ");
  std::complex<double> acc{0.0, 0.0};
  for (const auto& t : h.terms()) {
    const TermMasks m = make_masks(t.axes, t.coeff);
    std::complex<double> term_acc{0.0, 0.0};
    for (std::size_t x = 0; x < s.dim(); ++x) {
      const int par = std::popcount(x & m.parity) & 1;
      term_acc += std::conj(s[x ^ m.flip]) * (par ? -s[x] : s[x]);
    }
    acc += m.base * term_acc;
  }
  if (std::abs(acc.imag()) > 1e-10)
    throw std::runtime_error("expectation: imaginary residue " +
                             std::to_string(acc.imag()) + " exceeds 1e-10");
  return acc.real();
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double swap_test_estimate(const StateVector& a, const StateVector& b,
                          std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("swap_test_estimate: shots must be > 0");
  const double fidelity = std::norm(overlap_exact(a, b));
  const double p0 = 0.5 * (1.0 + fidelity);
  std::mt19937_64 rng(seed);
  std::uint64_t zeros = 0;
  for (std::uint64_t k = 0; k < shots; ++k)
    if (uniform01(rng) < p0) ++zeros;
  const double f0 = static_cast<double>(zeros) / static_cast<double>(shots);
  return std::clamp(2.0 * f0 - 1.0, 0.0, 1.0);
}

}  // namespace vibsim
