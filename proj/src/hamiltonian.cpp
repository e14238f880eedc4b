// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "vibsim/hamiltonian.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>

namespace vibsim {

BosonPolynomial ladder_expand(const Polynomial& poly, const std::vector<double>& omega) {
  if (poly.vars != static_cast<int>(omega.size()))
    throw std::invalid_argument("ladder_expand: variable count mismatch");
  BosonPolynomial out(poly.vars);
  for (const auto& [mono, c] : poly.terms) {
    if (c == 0.0) continue;
    double scale = c;
    for (int m : mono) scale /= std::sqrt(2.0 * omega[m]);
    const std::size_t k = mono.size();
    for (std::size_t choice = 0; choice < (std::size_t{1} << k); ++choice) {
      std::vector<LadderOp> ops;
      ops.reserve(k);
      for (std::size_t i = 0; i < k; ++i) {
        const LadderKind kind =
            ((choice >> i) & 1) ? LadderKind::Create : LadderKind::Annihilate;
        ops.push_back(LadderOp{kind, mono[i]});
      }
      out.add(scale, std::move(ops));
    }
  }
  return out;
}

namespace {

void check_omega(const std::vector<double>& omega) {
  for (double w : omega)
    if (w <= 0.0)
      throw std::invalid_argument("second_quantize: non-positive reference frequency");
}

// V with the analytic harmonic reference sum_i (omega_i^2/2) q_i^2 removed.
Polynomial anharmonic_residual(const ForceField& ff, int order,
                               const std::vector<double>& omega) {
  Polynomial residual = potential_polynomial(ff, order);
  for (int i = 0; i < ff.modes; ++i) {
    auto it = residual.terms.find({i, i});
    if (it == residual.terms.end()) continue;
    it->second -= 0.5 * omega[i] * omega[i];
    if (it->second == 0.0) residual.terms.erase(it);
  }
  return residual;
}

}  // namespace

BosonPolynomial second_quantize(const std::vector<double>& omega_ref,
                                const Polynomial& residual, bool zero_point) {
  const int modes = static_cast<int>(omega_ref.size());
  if (residual.vars != modes)
    throw std::invalid_argument("second_quantize: polynomial variable count mismatch");
  check_omega(omega_ref);
  BosonPolynomial h(modes);
  for (int j = 0; j < modes; ++j) {
    h.add(omega_ref[j], {LadderOp{LadderKind::Number, j}});
    if (zero_point) h.add(0.5 * omega_ref[j], {});
  }
  h += ladder_expand(residual, omega_ref);
  return h;
}

BosonPolynomial build_second_quantized(const ForceField& ff,
                                       const HamiltonianOptions& opts) {
  const std::vector<double> omega = frequencies(ff);
  return second_quantize(omega, anharmonic_residual(ff, opts.order, omega),
                         opts.zero_point);
}

BosonPolynomial build_second_quantized_localized(const ForceField& ff,
                                                 const Eigen::MatrixXd& u,
                                                 const HamiltonianOptions& opts) {
  const std::vector<double> omega = frequencies(ff);
  const int modes = ff.modes;
  const LocalizationMap lm = localization_map(omega, u);

  BosonPolynomial h(modes);
  // p^2/2 plus the harmonic potential, carried through the weights exactly:
  // the normal-ordered form is sum_jk G_jk a_j^dag a_k + tr(G)/2 with
  // G = U^T diag(omega) U.
  Eigen::MatrixXd g = u.transpose() * Eigen::Map<const Eigen::VectorXd>(
                                          omega.data(), modes)
                                          .asDiagonal() *
                      u;
  for (int j = 0; j < modes; ++j) {
    h.add(g(j, j), {LadderOp{LadderKind::Number, j}});
    if (opts.zero_point) h.add(0.5 * omega[j], {});
    for (int k = 0; k < modes; ++k) {
      if (k == j) continue;
      h.add(g(j, k), {LadderOp{LadderKind::Create, j}, LadderOp{LadderKind::Annihilate, k}});
    }
  }

  const Polynomial residual = anharmonic_residual(ff, opts.order, omega);
  const LinearCoordinateMap map{lm.wq, Eigen::VectorXd::Zero(modes)};
  h += ladder_expand(transform_polynomial(residual, map), omega);
  return h;
}

VibHamiltonian build_qubit_hamiltonian(const ForceField& ff, const EncodingSpec& enc,
                                       const HamiltonianOptions& opts,
                                       const Eigen::MatrixXd* localize,
                                       double threshold) {
  if (enc.modes != ff.modes)
    throw std::invalid_argument("build_qubit_hamiltonian: encoding mode count mismatch");
  VibHamiltonian h;
  h.enc = enc;
  h.second_quantized = localize
                           ? build_second_quantized_localized(ff, *localize, opts)
                           : build_second_quantized(ff, opts);
  h.qubit_form = encode_operator(h.second_quantized, enc, threshold);
  return h;
}

namespace {

std::vector<double> lowest_eigenvalues(const Eigen::MatrixXcd& m, int n_lowest) {
  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-9)
    throw std::runtime_error("spectrum: operator is not Hermitian (residual " +
                             std::to_string(herm) + ")");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd((m + m.adjoint()) / 2.0), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectrum: eigensolver failed");
  const auto& ev = solver.eigenvalues();
  const int n = std::min<int>(n_lowest, static_cast<int>(ev.size()));
  if (n_lowest < 1) throw std::invalid_argument("spectrum: n_lowest must be >= 1");
  return std::vector<double>(ev.data(), ev.data() + n);
}

}  // namespace

std::vector<double> exact_spectrum(const VibHamiltonian& h, int n_lowest) {
  return lowest_eigenvalues(h.qubit_form.to_matrix(), n_lowest);
}

Eigen::MatrixXcd encoded_subspace_matrix(const PauliSum& op, const EncodingSpec& spec) {
  if (op.n_qubits() != total_qubits(spec))
    throw std::invalid_argument("encoded_subspace_matrix: register width mismatch");
  const std::vector<std::size_t> basis = encoded_subspace_indices(spec);
  std::unordered_map<std::size_t, int> position;
  position.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i)
    position.emplace(basis[i], static_cast<int>(i));

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  static constexpr std::complex<double> ipow[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  for (const auto& t : op.terms()) {
    std::uint64_t flip = 0, parity_mask = 0;
    int ny = 0;
    for (int k = 0; k < op.n_qubits(); ++k) {
      switch (t.axes[k]) {
        case Axis::I: break;
        case Axis::X: flip |= std::uint64_t{1} << k; break;
        case Axis::Y:
          flip |= std::uint64_t{1} << k;
          parity_mask |= std::uint64_t{1} << k;
          ++ny;
          break;
        case Axis::Z: parity_mask |= std::uint64_t{1} << k; break;
      }
    }
    const std::complex<double> base = t.coeff * ipow[ny & 3];
    for (std::size_t col = 0; col < basis.size(); ++col) {
      const std::size_t target = basis[col] ^ flip;
      const auto it = position.find(target);
      if (it == position.end()) continue;  // outside the encoded subspace
      const int par = std::popcount(basis[col] & parity_mask) & 1;
      m(it->second, col) += par ? -base : base;
    }
  }
  return m;
}

std::vector<double> encoded_subspace_spectrum(const VibHamiltonian& h, int n_lowest) {
  return lowest_eigenvalues(encoded_subspace_matrix(h.qubit_form, h.enc), n_lowest);
}

}  // namespace vibsim
