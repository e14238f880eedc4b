// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "vibsim/pauli.hpp"

namespace vibsim {

enum class LadderKind { Create, Annihilate, Number };

struct LadderOp {
  LadderKind kind;
  int mode;
};

// Ordered product of ladder operators with a complex coefficient. An empty
// product is a constant (identity) term. Operators on different modes
// commute; the stored order only matters within a mode.
struct BosonTerm {
  std::complex<double> coeff{1.0, 0.0};
  std::vector<LadderOp> ops;
};

struct BosonPolynomial {
  int modes = 0;
  std::vector<BosonTerm> terms;

  BosonPolynomial() = default;
  explicit BosonPolynomial(int m) : modes(m) {}
  void add(std::complex<double> coeff, std::vector<LadderOp> ops);
  BosonPolynomial& operator+=(const BosonPolynomial& other);
  // Merges terms with identical operator sequences; drops |c| <= threshold.
  void simplify(double threshold = kCoeffThreshold);
};

enum class Scheme { Direct, Compact };

// Number of levels kept per mode (d) plus the qubit mapping choice.
struct EncodingSpec {
  Scheme scheme = Scheme::Compact;
  int modes = 0;
  int levels = 0;
};

// Qubits per mode register: d for direct (one-hot), ceil(log2 d) for compact.
int qubits_per_mode(const EncodingSpec& spec);
int total_qubits(const EncodingSpec& spec);

// Vibrational mode count 3n-6 (3n-5 when linear); throws if < 1.
int mode_count(int n_atoms, bool linear);
int qubit_count(int n_atoms, bool linear, int levels, Scheme scheme);

// d x d truncated matrix: create has sqrt(s+1) on the first subdiagonal,
// annihilate is its transpose, number is diag(0..d-1).
Eigen::MatrixXcd ladder_matrix(LadderKind kind, int levels);

// Truncated per-mode matrix products for one term; modes the term does not
// touch are omitted (they act as identity).
std::map<int, Eigen::MatrixXcd> per_mode_matrices(const BosonTerm& term, int levels);

// Dense operator on the full d^M mode space (modes ordered with mode 0 as
// the least-significant factor). Products are truncated matrix products.
Eigen::MatrixXcd fock_matrix(const BosonPolynomial& poly, int modes, int levels);

// Pauli encoding of a product of per-mode d x d matrices (one entry per
// mode at most; missing modes act as identity). Mode m owns the contiguous
// qubit block starting at m * qubits_per_mode.
PauliSum encode_mode_matrices(
    const EncodingSpec& spec,
    const std::vector<std::pair<int, Eigen::MatrixXcd>>& mode_ops,
    std::complex<double> coeff);

// Pauli encoding of a ladder polynomial. Per-mode operator products are
// formed as truncated matrix products first and the resulting d x d matrix
// is expanded through the projector identities; simplify(threshold) is
// applied to the result.
PauliSum encode_operator(const BosonPolynomial& poly, const EncodingSpec& spec,
                         double threshold = kCoeffThreshold);

// Computational-basis bitstring for an occupation tuple, qubit n-1 leftmost.
// Direct sets qubit s of the mode register; compact writes s in binary with
// bit k of s on qubit k of the register.
std::string encode_basis_state(const std::vector<int>& occupations,
                               const EncodingSpec& spec);

// Index of that bitstring in a little-endian statevector.
std::size_t encoded_basis_index(const std::vector<int>& occupations,
                                const EncodingSpec& spec);

// Indices of all d^M encoded basis states, occupation tuples enumerated
// with mode 0 fastest.
std::vector<std::size_t> encoded_subspace_indices(const EncodingSpec& spec);

}  // namespace vibsim
