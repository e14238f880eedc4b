// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "vibsim/vscf.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace vibsim {

namespace {

struct ContractedTerm {
  std::complex<double> coeff;
  // Mode-sorted list of (mode, d x d matrix) factors.
  std::vector<std::pair<int, Eigen::MatrixXcd>> factors;
};

std::complex<double> orbital_expectation(const Eigen::MatrixXcd& a,
                                         const Eigen::VectorXcd& phi) {
  return (phi.adjoint() * a * phi)(0, 0);
}

std::complex<double> term_energy(const ContractedTerm& t,
                                 const std::vector<Eigen::VectorXcd>& phi) {
  std::complex<double> e = t.coeff;
  for (const auto& [mode, a] : t.factors) e *= orbital_expectation(a, phi[mode]);
  return e;
}

double total_energy(const std::vector<ContractedTerm>& terms,
                    const std::vector<Eigen::VectorXcd>& phi) {
  std::complex<double> e{0.0, 0.0};
  for (const auto& t : terms) e += term_energy(t, phi);
  if (std::abs(e.imag()) > 1e-9)
    throw std::runtime_error("vscf: energy has imaginary residue");
  return e.real();
}

// Rotate the global phase so the largest-magnitude component is real and
// positive; keeps repeated runs bit-comparable.
void fix_phase(Eigen::VectorXcd& v) {
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const std::complex<double> pivot = v(imax);
  if (std::abs(pivot) > 0.0) v *= std::conj(pivot) / std::abs(pivot);
}

}  // namespace

VscfResult vscf(const BosonPolynomial& h, int modes, int levels,
                const VscfOptions& opts) {
  if (modes < 1 || h.modes > modes)
    throw std::invalid_argument("vscf: bad mode count");
  if (levels < 2) throw std::invalid_argument("vscf: need at least two levels");
  if (opts.damping < 0.0 || opts.damping >= 1.0)
    throw std::invalid_argument("vscf: damping must be in [0, 1)");

  std::vector<ContractedTerm> terms;
  terms.reserve(h.terms.size());
  for (const auto& t : h.terms) {
    auto mats = per_mode_matrices(t, levels);
    terms.push_back(ContractedTerm{
        t.coeff, std::vector<std::pair<int, Eigen::MatrixXcd>>(mats.begin(), mats.end())});
  }

  VscfResult res;
  if (opts.initial.empty()) {
    res.orbitals.assign(modes, Eigen::VectorXcd::Unit(levels, 0));
  } else {
    if (static_cast<int>(opts.initial.size()) != modes)
      throw std::invalid_argument("vscf: warm-start orbital count mismatch");
    res.orbitals = opts.initial;
    for (auto& phi : res.orbitals) {
      if (phi.size() != levels)
        throw std::invalid_argument("vscf: warm-start orbital length mismatch");
      const double n = phi.norm();
      if (n <= 0.0) throw std::invalid_argument("vscf: warm-start orbital is zero");
      phi /= n;
    }
  }
  double e_prev = total_energy(terms, res.orbitals);

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    for (int i = 0; i < modes; ++i) {
      Eigen::MatrixXcd heff = Eigen::MatrixXcd::Zero(levels, levels);
      for (const auto& t : terms) {
        std::complex<double> weight = t.coeff;
        const Eigen::MatrixXcd* own = nullptr;
        for (const auto& [mode, a] : t.factors) {
          if (mode == i)
            own = &a;
          else
            weight *= orbital_expectation(a, res.orbitals[mode]);
        }
        if (own)
          heff += weight * (*own);
        else
          heff += weight * Eigen::MatrixXcd::Identity(levels, levels);
      }
      const double herm = (heff - heff.adjoint()).cwiseAbs().maxCoeff();
      if (herm > 1e-9)
        throw std::runtime_error("vscf: effective Hamiltonian not Hermitian");
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
          Eigen::MatrixXcd((heff + heff.adjoint()) / 2.0));
      if (solver.info() != Eigen::Success)
        throw std::runtime_error("vscf: eigensolver failed");
      Eigen::VectorXcd ground = solver.eigenvectors().col(0);
      if (opts.damping > 0.0) {
        // The eigensolver fixes the phase arbitrarily; align it with the
        // previous orbital so the mixture interpolates instead of cancelling.
        const std::complex<double> ov = res.orbitals[i].dot(ground);
        if (std::abs(ov) > 1e-12) ground *= std::conj(ov) / std::abs(ov);
        ground = (1.0 - opts.damping) * ground + opts.damping * res.orbitals[i];
        ground.normalize();
      }
      fix_phase(ground);
      res.orbitals[i] = ground;
    }
    res.iterations = sweep + 1;
    const double e = total_energy(terms, res.orbitals);
    const double delta = std::abs(e - e_prev);
    e_prev = e;
    if (delta < opts.tol) {
      res.converged = true;
      break;
    }
  }
  res.energy = e_prev;
  return res;
}

StateVector product_state(const std::vector<Eigen::VectorXcd>& orbitals,
                          const EncodingSpec& spec) {
  if (static_cast<int>(orbitals.size()) != spec.modes)
    throw std::invalid_argument("product_state: orbital count mismatch");
  for (const auto& phi : orbitals)
    if (phi.size() != spec.levels)
      throw std::invalid_argument("product_state: orbital length mismatch");
  StateVector s(total_qubits(spec));
  std::vector<int> occ(spec.modes, 0);
  std::size_t count = 1;
  for (int m = 0; m < spec.modes; ++m) count *= static_cast<std::size_t>(spec.levels);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t rest = i;
    std::complex<double> amp{1.0, 0.0};
    for (int m = 0; m < spec.modes; ++m) {
      occ[m] = static_cast<int>(rest % spec.levels);
      rest /= spec.levels;
      amp *= orbitals[m](occ[m]);
    }
    if (amp != std::complex<double>(0.0, 0.0)) s[encoded_basis_index(occ, spec)] = amp;
  }
  return s;
}

}  // namespace vibsim
