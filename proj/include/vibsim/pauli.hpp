// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace vibsim {

// Coefficients with |c| at or below this are dropped by simplify().
inline constexpr double kCoeffThreshold = 1e-12;

// to_matrix() refuses to build dense operators wider than this.
inline constexpr int kDenseQubitGuard = 16;

enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_char(Axis a);
Axis axis_from_char(char c);

// One tensor product of single-qubit Paulis with a complex coefficient.
// axes[k] acts on qubit k; qubit 0 is the least-significant tensor factor,
// so the dense matrix is sigma_{n-1} (x) ... (x) sigma_0.
struct PauliTerm {
  std::complex<double> coeff{1.0, 0.0};
  std::vector<Axis> axes;

  int n_qubits() const { return static_cast<int>(axes.size()); }
  bool is_identity_string() const;

  // Axes rendered with qubit 0 as the rightmost character ("XZI" puts
  // X on qubit 2, Z on qubit 1, I on qubit 0).
  std::string axes_string() const;
  static std::vector<Axis> axes_from_string(std::string_view s);
};

// Product of two terms on the same register, folding X*Y = iZ etc. into
// the coefficient.
PauliTerm multiply(const PauliTerm& a, const PauliTerm& b);

// Compares axes in string order (qubit n-1 first), I < X < Y < Z.
bool axes_less(const std::vector<Axis>& a, const std::vector<Axis>& b);

class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  void add(PauliTerm term);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum& operator*=(std::complex<double> scale);

  // Merges duplicate axes, drops coefficients with |c| <= threshold and
  // leaves terms sorted in canonical (lexicographic axes) order.
  void simplify(double threshold = kCoeffThreshold);

  PauliSum adjoint() const;

  // Dense 2^n x 2^n matrix; throws if n exceeds kDenseQubitGuard.
  Eigen::MatrixXcd to_matrix() const;

  // Largest |H - H^dagger| entry, computed termwise (no dense matrix).
  double hermiticity_residual() const;

  // One term per line: "<re> <im> <axes>" with the axes string in the
  // same qubit order as axes_string().
  std::string to_text() const;
  static PauliSum from_text(std::string_view text);

 private:
  int n_qubits_ = 0;
  std::vector<PauliTerm> terms_;
};

PauliSum multiply(const PauliSum& a, const PauliSum& b);

}  // namespace vibsim
