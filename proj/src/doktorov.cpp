// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "vibsim/doktorov.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "vibsim/hamiltonian.hpp"

namespace vibsim {

namespace {

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

bool power_of_two(int d) { return d >= 1 && (d & (d - 1)) == 0; }

// Rotation list for one factor: (axes, angle generator alpha) pairs with
// exp(G) = prod exp(i alpha_k sigma_k). Real coefficient parts are the
// Hermitian truncation defect and carry no rotation.
struct RotationList {
  std::vector<std::pair<std::vector<Axis>, double>> rots;
};

RotationList encode_rotations(const BosonPolynomial& gen, const EncodingSpec& spec) {
  RotationList out;
  const PauliSum p = encode_operator(gen, spec);
  for (const auto& t : p.terms()) {
    const double alpha = t.coeff.imag();
    if (std::abs(alpha) > 1e-15) out.rots.emplace_back(t.axes, alpha);
  }
  return out;
}

// One first-order pass of exp(sign * G) split over n steps.
void apply_pass(StateVector& s, const RotationList& list, double sign, int n_steps) {
  for (const auto& [axes, alpha] : list.rots)
    apply_rotation(s, axes, -sign * alpha / n_steps);
}

std::size_t pow_size(int base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= static_cast<std::size_t>(base);
  return r;
}

}  // namespace

void validate(const DuschinskyData& dusch) {
  const int m = dusch.modes();
  if (m < 1) throw std::invalid_argument("duschinsky: empty system");
  if (dusch.u.cols() != m || dusch.shift.size() != m ||
      dusch.omega_i.size() != m || dusch.omega_f.size() != m)
    throw std::invalid_argument("duschinsky: inconsistent dimensions");
  const double ortho =
      (dusch.u.transpose() * dusch.u - Eigen::MatrixXd::Identity(m, m))
          .cwiseAbs()
          .maxCoeff();
  if (ortho > 1e-10)
    throw std::invalid_argument("duschinsky: rotation matrix is not orthogonal");
  for (int j = 0; j < m; ++j)
    if (!(dusch.omega_i(j) > 0.0) || !(dusch.omega_f(j) > 0.0))
      throw std::invalid_argument("duschinsky: frequencies must be positive");
}

DoktorovFactors doktorov_generators(const DuschinskyData& dusch) {
  validate(dusch);
  const int m = dusch.modes();
  DoktorovFactors f;
  f.t = BosonPolynomial(m);
  f.s = BosonPolynomial(m);
  f.sp = BosonPolynomial(m);
  f.r = BosonPolynomial(m);

  for (int j = 0; j < m; ++j) {
    const double c = dusch.shift(j) * std::sqrt(dusch.omega_f(j) / 2.0);
    if (c != 0.0) {
      f.t.add(c, {{LadderKind::Create, j}});
      f.t.add(-c, {{LadderKind::Annihilate, j}});
    }
  }

  // -(l/2)(a^dag + a)(a^dag - a) + l/2 per mode; the scalar cancels the
  // normal-ordering constant so the untruncated generator is exactly
  // (l/2)(a^2 - (a^dag)^2).
  auto squeeze = [](BosonPolynomial& gen, int mode, double l) {
    if (l == 0.0) return;
    gen.add(-l / 2.0, {{LadderKind::Create, mode}, {LadderKind::Create, mode}});
    gen.add(l / 2.0, {{LadderKind::Create, mode}, {LadderKind::Annihilate, mode}});
    gen.add(-l / 2.0, {{LadderKind::Annihilate, mode}, {LadderKind::Create, mode}});
    gen.add(l / 2.0, {{LadderKind::Annihilate, mode}, {LadderKind::Annihilate, mode}});
    gen.add(l / 2.0, {});
  };
  for (int j = 0; j < m; ++j) {
    squeeze(f.s, j, 0.5 * std::log(dusch.omega_i(j)));
    squeeze(f.sp, j, 0.5 * std::log(dusch.omega_f(j)));
  }

  if (dusch.u.determinant() < 0.0)
    throw std::invalid_argument(
        "duschinsky: rotation must be proper (det(U) = +1)");
  const Eigen::MatrixXd l = dusch.u.log();
  if (!l.allFinite() || (l + l.transpose()).cwiseAbs().maxCoeff() > 1e-8 ||
      (l.exp() - dusch.u).cwiseAbs().maxCoeff() > 1e-8)
    throw std::invalid_argument(
        "duschinsky: rotation has no real skew-symmetric logarithm");
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      if (l(j, k) == 0.0) continue;
      f.r.add(l(j, k) / 2.0,
              {{LadderKind::Create, j}, {LadderKind::Annihilate, k}});
      f.r.add(-l(j, k) / 2.0,
              {{LadderKind::Annihilate, j}, {LadderKind::Create, k}});
    }
  return f;
}

DoktorovOperator build_doktorov(const DuschinskyData& dusch, int levels,
                                const DoktorovOptions& opts) {
  if (levels < 2) throw std::invalid_argument("doktorov: need at least two levels");
  const DoktorovFactors f = doktorov_generators(dusch);
  const int m = dusch.modes();

  DoktorovOperator out;
  out.modes = m;
  out.levels = levels;

  if (opts.method == DoktorovMethod::DenseExp) {
    const Eigen::MatrixXcd ut = fock_matrix(f.t, m, levels).exp();
    const Eigen::MatrixXcd usp_dag = Eigen::MatrixXcd(-fock_matrix(f.sp, m, levels)).exp();
    const Eigen::MatrixXcd us = fock_matrix(f.s, m, levels).exp();
    const Eigen::MatrixXcd ur = fock_matrix(f.r, m, levels).exp();
    out.matrix = ut * usp_dag * us * ur;
  } else {
    if (!power_of_two(levels))
      throw std::invalid_argument("doktorov: trotter route needs power-of-two levels");
    if (opts.trotter_steps < 1)
      throw std::invalid_argument("doktorov: trotter_steps must be >= 1");
    const EncodingSpec spec{Scheme::Compact, m, levels};
    const int nq = total_qubits(spec);
    const RotationList rt = encode_rotations(f.t, spec);
    const RotationList rs = encode_rotations(f.s, spec);
    const RotationList rsp = encode_rotations(f.sp, spec);
    const RotationList rr = encode_rotations(f.r, spec);
    const int n = opts.trotter_steps;

    const std::size_t dim = pow_size(levels, m);
    out.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t col = 0; col < dim; ++col) {
      // Compact registers store the occupation in binary, so the Fock
      // index is the qubit index.
      StateVector s = prepare_basis_index(nq, col);
      for (int pass = 0; pass < n; ++pass) apply_pass(s, rr, 1.0, n);
      for (int pass = 0; pass < n; ++pass) apply_pass(s, rs, 1.0, n);
      for (int pass = 0; pass < n; ++pass) apply_pass(s, rsp, -1.0, n);
      for (int pass = 0; pass < n; ++pass) apply_pass(s, rt, 1.0, n);
      for (std::size_t row = 0; row < dim; ++row) out.matrix(row, col) = s[row];
    }
  }

  out.unitarity_residual =
      (out.matrix.adjoint() * out.matrix -
       Eigen::MatrixXcd::Identity(out.matrix.rows(), out.matrix.cols()))
          .cwiseAbs()
          .maxCoeff();
  return out;
}

Eigen::VectorXcd fock_amplitudes(const StateVector& s, const EncodingSpec& spec) {
  if (s.n_qubits() != total_qubits(spec))
    throw std::invalid_argument("fock_amplitudes: register width mismatch");
  const auto idx = encoded_subspace_indices(spec);
  Eigen::VectorXcd v(idx.size());
  for (std::size_t k = 0; k < idx.size(); ++k) v(k) = s[idx[k]];
  return v;
}

double franck_condon_factor(const Eigen::VectorXcd& psi_i,
                            const Eigen::VectorXcd& psi_f,
                            const DoktorovOperator& dok) {
  if (psi_i.size() != dok.matrix.cols() || psi_f.size() != dok.matrix.rows())
    throw std::invalid_argument("franck_condon_factor: dimension mismatch");
  const std::complex<double> amp = (psi_f.adjoint() * dok.matrix * psi_i)(0, 0);
  return std::norm(amp);
}

double franck_condon_factor(const StateVector& psi_i, const StateVector& psi_f,
                            const DuschinskyData& dusch, const EncodingSpec& spec,
                            const DoktorovOptions& opts) {
  if (spec.modes != dusch.modes())
    throw std::invalid_argument("franck_condon_factor: mode count mismatch");
  const DoktorovOperator dok = build_doktorov(dusch, spec.levels, opts);
  return franck_condon_factor(fock_amplitudes(psi_i, spec),
                              fock_amplitudes(psi_f, spec), dok);
}

double franck_condon_sampled(const StateVector& psi_i, const StateVector& psi_f,
                             const DuschinskyData& dusch, const EncodingSpec& spec,
                             std::uint64_t shots, std::uint64_t seed,
                             const DoktorovOptions& opts) {
  if (spec.scheme != Scheme::Compact || !power_of_two(spec.levels))
    throw std::invalid_argument(
        "franck_condon_sampled: compact power-of-two encoding required");
  if (spec.modes != dusch.modes())
    throw std::invalid_argument("franck_condon_sampled: mode count mismatch");
  const DoktorovOperator dok = build_doktorov(dusch, spec.levels, opts);
  const Eigen::VectorXcd moved = dok.matrix * fock_amplitudes(psi_i, spec);
  const double norm2 = moved.squaredNorm();
  if (norm2 <= 0.0) return 0.0;
  StateVector s(psi_i.n_qubits());
  for (Eigen::Index k = 0; k < moved.size(); ++k)
    s[static_cast<std::size_t>(k)] = moved(k) / std::sqrt(norm2);
  return norm2 * swap_test_estimate(psi_f, s, shots, seed);
}

double non_condon_factor(const Eigen::VectorXcd& psi_i,
                         const Eigen::VectorXcd& psi_f, const Polynomial& mu,
                         const DuschinskyData& dusch, const DoktorovOperator& dok) {
  if (mu.vars != dusch.modes())
    throw std::invalid_argument("non_condon_factor: dipole variable count mismatch");
  if (mu.degree() > 2)
    throw std::invalid_argument("non_condon_factor: dipole degree above 2");
  const BosonPolynomial ladder = ladder_expand(mu, to_std(dusch.omega_f));
  const Eigen::MatrixXcd mu_mat = fock_matrix(ladder, dok.modes, dok.levels);
  const std::complex<double> amp =
      (psi_f.adjoint() * mu_mat * dok.matrix * psi_i)(0, 0);
  return std::norm(amp);
}

double non_condon_factor(const StateVector& psi_i, const StateVector& psi_f,
                         const Polynomial& mu, const DuschinskyData& dusch,
                         const EncodingSpec& spec, const DoktorovOptions& opts) {
  if (spec.modes != dusch.modes())
    throw std::invalid_argument("non_condon_factor: mode count mismatch");
  const DoktorovOperator dok = build_doktorov(dusch, spec.levels, opts);
  return non_condon_factor(fock_amplitudes(psi_i, spec),
                           fock_amplitudes(psi_f, spec), mu, dusch, dok);
}

TransformedEigenstates fc_via_transformed_hamiltonian(const ForceField& ff_f,
                                                      const DuschinskyData& dusch,
                                                      int levels) {
  validate(dusch);
  if (ff_f.modes != dusch.modes())
    throw std::invalid_argument("fc_via_transformed_hamiltonian: mode count mismatch");
  if (levels < 2)
    throw std::invalid_argument("fc_via_transformed_hamiltonian: need two levels");
  const int m = dusch.modes();

  // V_f in the initial coordinates: substitute q_f = U q_i + d, then take
  // out the initial harmonic reference so the ladder form stays diagonal
  // in the harmonic part.
  Polynomial residual =
      transform_polynomial(potential_polynomial(ff_f, 4),
                           LinearCoordinateMap{dusch.u, dusch.shift});
  for (int j = 0; j < m; ++j)
    residual.add({j, j}, -0.5 * dusch.omega_i(j) * dusch.omega_i(j));

  const BosonPolynomial h = second_quantize(to_std(dusch.omega_i), residual, true);
  Eigen::MatrixXcd mat = fock_matrix(h, m, levels);
  const double herm = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
  if (herm > 1e-9)
    throw std::runtime_error("fc_via_transformed_hamiltonian: non-Hermitian matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      Eigen::MatrixXcd((mat + mat.adjoint()) / 2.0));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("fc_via_transformed_hamiltonian: eigensolver failed");

  TransformedEigenstates out;
  out.energies = solver.eigenvalues();
  out.states = solver.eigenvectors();
  return out;
}

FranckCondonTable franck_condon_table(const ForceField& ff_i, const ForceField& ff_f,
                                      const DuschinskyData& dusch, int levels,
                                      int n_i, int n_f,
                                      const DoktorovOptions& opts) {
  validate(dusch);
  if (ff_i.modes != dusch.modes() || ff_f.modes != dusch.modes())
    throw std::invalid_argument("franck_condon_table: mode count mismatch");
  const auto check_freqs = [](const ForceField& ff, const Eigen::VectorXd& ref) {
    const auto w = frequencies(ff);
    for (int j = 0; j < ref.size(); ++j)
      if (std::abs(w[j] - ref(j)) > 1e-9 * std::max(1.0, std::abs(ref(j))))
        throw std::invalid_argument(
            "franck_condon_table: duschinsky frequencies disagree with force field");
  };
  check_freqs(ff_i, dusch.omega_i);
  check_freqs(ff_f, dusch.omega_f);

  const int m = dusch.modes();
  const auto eigenstates = [&](const ForceField& ff) {
    const Eigen::MatrixXcd mat =
        fock_matrix(build_second_quantized(ff), m, levels);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        Eigen::MatrixXcd((mat + mat.adjoint()) / 2.0));
    if (solver.info() != Eigen::Success)
      throw std::runtime_error("franck_condon_table: eigensolver failed");
    return std::make_pair(Eigen::VectorXd(solver.eigenvalues()),
                          Eigen::MatrixXcd(solver.eigenvectors()));
  };
  const auto [ei, vi] = eigenstates(ff_i);
  const auto [ef, vf] = eigenstates(ff_f);

  const int dim = static_cast<int>(vi.rows());
  if (n_i < 1 || n_f < 1 || n_i > dim || n_f > dim)
    throw std::invalid_argument("franck_condon_table: state count out of range");

  const DoktorovOperator dok = build_doktorov(dusch, levels, opts);
  FranckCondonTable table;
  table.energies_i = ei.head(n_i);
  table.energies_f = ef.head(n_f);
  table.factors.resize(n_i, n_f);
  for (int k = 0; k < n_i; ++k)
    for (int l = 0; l < n_f; ++l)
      table.factors(k, l) = franck_condon_factor(vi.col(k), vf.col(l), dok);
  return table;
}

}  // namespace vibsim
