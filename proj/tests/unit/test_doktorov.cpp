// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "support/oracles.hpp"
#include "vibsim/doktorov.hpp"
#include "vibsim/hamiltonian.hpp"

using namespace vibsim;

namespace {

DuschinskyData single_mode(double shift, double wi, double wf) {
  DuschinskyData d;
  d.u = Eigen::MatrixXd::Identity(1, 1);
  d.shift = Eigen::VectorXd::Constant(1, shift);
  d.omega_i = Eigen::VectorXd::Constant(1, wi);
  d.omega_f = Eigen::VectorXd::Constant(1, wf);
  return d;
}

Eigen::MatrixXd rot2(double theta) {
  Eigen::MatrixXd u(2, 2);
  u << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return u;
}

DuschinskyData two_mode(double theta, const Eigen::Vector2d& shift,
                        const Eigen::Vector2d& wi, const Eigen::Vector2d& wf) {
  DuschinskyData d;
  d.u = rot2(theta);
  d.shift = shift;
  d.omega_i = wi;
  d.omega_f = wf;
  return d;
}

ForceField harmonic2(double w0, double w1) {
  ForceField ff;
  ff.modes = 2;
  ff.potential = Polynomial(2);
  ff.potential.add({0, 0}, 0.5 * w0 * w0);
  ff.potential.add({1, 1}, 0.5 * w1 * w1);
  return ff;
}

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig_states(const ForceField& ff,
                                                           int modes, int levels) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(
      fock_matrix(build_second_quantized(ff), modes, levels));
}

}  // namespace

TEST_CASE("a trivial transform builds the identity operator") {
  DuschinskyData d;
  d.u = Eigen::MatrixXd::Identity(2, 2);
  d.shift = Eigen::VectorXd::Zero(2);
  d.omega_i = (Eigen::VectorXd(2) << 1.0, 2.2).finished();
  d.omega_f = d.omega_i;
  const DoktorovOperator dok = build_doktorov(d, 8);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(64, 64);
  CHECK((dok.matrix - id).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(dok.unitarity_residual < 1e-12);
}

TEST_CASE("pure displacement reproduces the Poisson progression") {
  const double w = 1.0;
  const double delta = 0.6;
  const double s = w * delta * delta / 2.0;
  const DoktorovOperator dok = build_doktorov(single_mode(delta, w, w), 16);
  CHECK(dok.unitarity_residual < 1e-12);
  for (int n = 0; n <= 6; ++n) {
    const double fc = std::norm(dok.matrix(n, 0));
    CHECK(std::abs(fc - oracles::poisson_pmf(n, s)) < 1e-9);
    const double quad = oracles::displaced_overlap(n, w, 0, w, delta);
    CHECK(std::abs(fc - quad * quad) < 1e-6);
  }
}

TEST_CASE("a pure frequency change only reaches even levels") {
  const DoktorovOperator dok = build_doktorov(single_mode(0.0, 1.0, 2.0), 16);
  for (int n : {1, 3, 5, 7}) CHECK(std::norm(dok.matrix(n, 0)) < 1e-10);

  // Gentler squeeze so boundary truncation stays below the oracle tolerance.
  const DoktorovOperator soft = build_doktorov(single_mode(0.0, 1.0, 1.3), 16);
  for (int n : {0, 2, 4, 6}) {
    const double quad = oracles::displaced_overlap(n, 1.3, 0, 1.0, 0.0);
    CHECK(std::abs(std::norm(soft.matrix(n, 0)) - quad * quad) < 1e-6);
  }
  for (int n : {1, 3, 5}) CHECK(std::norm(soft.matrix(n, 0)) < 1e-10);
}

TEST_CASE("identity-transform factors are Kronecker deltas") {
  const EncodingSpec spec{Scheme::Compact, 2, 4};
  DuschinskyData d;
  d.u = Eigen::MatrixXd::Identity(2, 2);
  d.shift = Eigen::VectorXd::Zero(2);
  d.omega_i = (Eigen::VectorXd(2) << 1.1, 0.7).finished();
  d.omega_f = d.omega_i;

  const StateVector g = prepare_basis(encode_basis_state({0, 0}, spec));
  const StateVector e10 = prepare_basis(encode_basis_state({1, 0}, spec));
  CHECK(std::abs(franck_condon_factor(g, g, d, spec) - 1.0) < 1e-12);
  CHECK(franck_condon_factor(g, e10, d, spec) < 1e-14);
  CHECK(std::abs(franck_condon_factor(e10, e10, d, spec) - 1.0) < 1e-12);
}

TEST_CASE("the displaced origin line follows exp(-S)") {
  const double w = 1.0;
  const double delta = 0.9;
  const double s = w * delta * delta / 2.0;
  const EncodingSpec spec{Scheme::Compact, 1, 16};
  const StateVector g = prepare_basis(encode_basis_state({0}, spec));
  const double fc = franck_condon_factor(g, g, single_mode(delta, w, w), spec);
  CHECK(std::abs(fc - std::exp(-s)) < 1e-9);
  const double quad = oracles::displaced_overlap(0, w, 0, w, delta);
  CHECK(std::abs(fc - quad * quad) < 1e-6);
}

TEST_CASE("a constant dipole reduces to the plain factor") {
  const EncodingSpec spec{Scheme::Compact, 2, 4};
  const DuschinskyData d =
      two_mode(0.3, {0.4, -0.2}, {1.0, 1.37}, {1.21, 1.1});
  Polynomial mu(2);
  mu.add({}, 1.0);
  for (const auto& occ_f : {std::vector<int>{0, 0}, {1, 0}, {1, 1}}) {
    const StateVector g = prepare_basis(encode_basis_state({0, 0}, spec));
    const StateVector f = prepare_basis(encode_basis_state(occ_f, spec));
    CHECK(std::abs(non_condon_factor(g, f, mu, d, spec) -
                   franck_condon_factor(g, f, d, spec)) < 1e-12);
  }
}

TEST_CASE("a linear dipole on the identity transform gives 1/(2 omega)") {
  const double w = 1.25;
  const EncodingSpec spec{Scheme::Compact, 1, 8};
  Polynomial mu(1);
  mu.add({0}, 1.0);
  const StateVector g = prepare_basis(encode_basis_state({0}, spec));
  const StateVector e1 = prepare_basis(encode_basis_state({1}, spec));
  const double v = non_condon_factor(g, e1, mu, single_mode(0.0, w, w), spec);
  CHECK(std::abs(v - 1.0 / (2.0 * w)) < 1e-12);
}

TEST_CASE("a linear dipole on a displaced mode matches weighted quadrature") {
  const double w = 1.0;
  const double delta = 0.8;
  const EncodingSpec spec{Scheme::Compact, 1, 16};
  Polynomial mu(1);
  mu.add({0}, 1.0);
  const StateVector g = prepare_basis(encode_basis_state({0}, spec));
  for (int m : {0, 1, 2}) {
    const StateVector f = prepare_basis(encode_basis_state({m}, spec));
    const double v = non_condon_factor(g, f, mu, single_mode(delta, w, w), spec);
    const double quad = oracles::displaced_overlap(
        m, w, 0, w, delta, [](double qf) { return qf; });
    CHECK(std::abs(v - quad * quad) < 1e-6);
  }
}

TEST_CASE("a mixed dipole keeps the interference signs straight") {
  const double w = 1.0;
  const double delta = 0.7;
  const EncodingSpec spec{Scheme::Compact, 1, 16};
  Polynomial mu(1);
  mu.add({}, 1.0);
  mu.add({0}, 0.5);
  mu.add({0, 0}, 0.1);
  const auto weight = [](double qf) { return 1.0 + 0.5 * qf + 0.1 * qf * qf; };
  const StateVector g = prepare_basis(encode_basis_state({0}, spec));
  for (int m : {0, 1, 2, 3}) {
    const StateVector f = prepare_basis(encode_basis_state({m}, spec));
    const double v = non_condon_factor(g, f, mu, single_mode(delta, w, w), spec);
    const double quad = oracles::displaced_overlap(m, w, 0, w, delta, weight);
    CHECK(std::abs(v - quad * quad) < 1e-6);
  }
}

TEST_CASE("the transformed-Hamiltonian route is exact for identical surfaces") {
  const ForceField ff = harmonic2(1.0, 1.37);
  DuschinskyData d;
  d.u = Eigen::MatrixXd::Identity(2, 2);
  d.shift = Eigen::VectorXd::Zero(2);
  d.omega_i = (Eigen::VectorXd(2) << 1.0, 1.37).finished();
  d.omega_f = d.omega_i;
  const int levels = 6;

  const TransformedEigenstates tr = fc_via_transformed_hamiltonian(ff, d, levels);
  const auto hi = eig_states(ff, 2, levels);
  for (int k = 0; k < 8; ++k)
    for (int l = 0; l < 8; ++l) {
      const double ov =
          std::norm((tr.states.col(l).adjoint() * hi.eigenvectors().col(k))(0, 0));
      CHECK(std::abs(ov - (k == l ? 1.0 : 0.0)) < 1e-8);
    }
  for (int l = 0; l < 8; ++l)
    CHECK(std::abs(tr.energies(l) - hi.eigenvalues()(l)) < 1e-10);
}

TEST_CASE("both routes agree for a displaced single mode") {
  ForceField ff;
  ff.modes = 1;
  ff.potential = Polynomial(1);
  ff.potential.add({0, 0}, 0.5);
  const DuschinskyData d = single_mode(0.6, 1.0, 1.0);
  const int levels = 16;

  const TransformedEigenstates tr = fc_via_transformed_hamiltonian(ff, d, levels);
  const DoktorovOperator dok = build_doktorov(d, levels);
  for (int n = 0; n <= 6; ++n) {
    // The initial surface is harmonic, so its eigenstates are the Fock basis.
    const double via_h = std::norm(tr.states(0, n));
    const double via_dok = std::norm(dok.matrix(n, 0));
    CHECK(std::abs(via_h - via_dok) < 2e-3);
    const double quad = oracles::displaced_overlap(n, 1.0, 0, 1.0, 0.6);
    CHECK(std::abs(via_h - quad * quad) < 2e-3);
  }
}

TEST_CASE("both routes agree for a two-mode rotation") {
  const ForceField ff = harmonic2(1.0, 1.37);
  DuschinskyData d;
  d.u = rot2(0.2);
  d.shift = Eigen::VectorXd::Zero(2);
  d.omega_i = (Eigen::VectorXd(2) << 1.0, 1.37).finished();
  d.omega_f = d.omega_i;
  const int levels = 8;

  const FranckCondonTable table = franck_condon_table(ff, ff, d, levels, 3, 6);
  const TransformedEigenstates tr = fc_via_transformed_hamiltonian(ff, d, levels);
  const auto hi = eig_states(ff, 2, levels);
  for (int k = 0; k < 3; ++k)
    for (int l = 0; l < 6; ++l) {
      const double via_h =
          std::norm((tr.states.col(l).adjoint() * hi.eigenvectors().col(k))(0, 0));
      CHECK(std::abs(via_h - table.factors(k, l)) < 5e-3);
    }
}

TEST_CASE("the factor table matches per-mode quadrature products") {
  const ForceField ff = harmonic2(1.0, 1.37);
  DuschinskyData d;
  d.u = Eigen::MatrixXd::Identity(2, 2);
  d.shift = (Eigen::VectorXd(2) << 0.4, 0.2).finished();
  d.omega_i = (Eigen::VectorXd(2) << 1.0, 1.37).finished();
  d.omega_f = d.omega_i;

  const FranckCondonTable table = franck_condon_table(ff, ff, d, 8, 1, 6);
  REQUIRE(table.factors.rows() == 1);
  REQUIRE(table.factors.cols() == 6);
  for (int l = 0; l + 1 < 6; ++l)
    CHECK(table.energies_f(l) < table.energies_f(l + 1));

  // Final levels sorted by n0 + 1.37 n1.
  const std::vector<std::pair<int, int>> occ = {{0, 0}, {1, 0}, {0, 1},
                                                {2, 0}, {1, 1}, {0, 2}};
  double row_sum = 0.0;
  for (int l = 0; l < 6; ++l) {
    const double a0 = oracles::displaced_overlap(occ[l].first, 1.0, 0, 1.0, 0.4);
    const double a1 =
        oracles::displaced_overlap(occ[l].second, 1.37, 0, 1.37, 0.2);
    CHECK(std::abs(table.factors(0, l) - a0 * a0 * a1 * a1) < 1e-8);
    CHECK(table.factors(0, l) >= 0.0);
    CHECK(table.factors(0, l) <= 1.0 + 1e-12);
    row_sum += table.factors(0, l);
  }
  CHECK(row_sum <= 1.0 + 1e-12);
}

TEST_CASE("displacement-only unitarity stays exact as levels grow") {
  std::vector<double> residuals;
  for (int levels : {4, 8, 16}) {
    const DoktorovOperator dok = build_doktorov(single_mode(0.8, 1.0, 1.0), levels);
    CHECK(dok.unitarity_residual < 1e-12);
    residuals.push_back(dok.unitarity_residual);
  }
  for (std::size_t k = 0; k + 1 < residuals.size(); ++k)
    CHECK(residuals[k + 1] <= residuals[k] + 1e-12);
}

TEST_CASE("squeeze truncation surfaces as a unitarity diagnostic") {
  const DoktorovOperator dense = build_doktorov(single_mode(0.0, 1.0, 2.0), 8);
  CHECK(dense.unitarity_residual > 1e-6);

  DoktorovOptions trotter;
  trotter.method = DoktorovMethod::Trotter;
  trotter.trotter_steps = 2;
  const DoktorovOperator circ = build_doktorov(single_mode(0.0, 1.0, 2.0), 8, trotter);
  CHECK(circ.unitarity_residual < 1e-12);
}

TEST_CASE("the ground column is complete at sixteen levels") {
  const Eigen::MatrixXcd disp =
      build_doktorov(single_mode(0.9, 1.0, 1.0), 16).matrix;
  CHECK(disp.col(0).squaredNorm() >= 0.999);
  const Eigen::MatrixXcd mixed =
      build_doktorov(single_mode(0.5, 1.0, 1.3), 16).matrix;
  CHECK(mixed.col(0).squaredNorm() >= 0.999);
}

TEST_CASE("the circuit route converges to the dense route as steps double") {
  const DuschinskyData d = two_mode(0.35, {0.5, -0.3}, {1.0, 1.0}, {1.0, 1.0});
  const DoktorovOperator dense = build_doktorov(d, 4);
  REQUIRE(dense.unitarity_residual < 1e-12);

  std::vector<double> dev;
  for (int n : {1, 2, 4, 8}) {
    DoktorovOptions opts;
    opts.method = DoktorovMethod::Trotter;
    opts.trotter_steps = n;
    const DoktorovOperator t = build_doktorov(d, 4, opts);
    CHECK(t.unitarity_residual < 1e-12);
    dev.push_back((t.matrix - dense.matrix).cwiseAbs().maxCoeff());
  }
  for (std::size_t k = 0; k + 1 < dev.size(); ++k) {
    const double ratio = dev[k] / dev[k + 1];
    CHECK(ratio > 1.6);
    CHECK(ratio < 2.4);
  }
}

TEST_CASE("a sampled factor tracks the exact value") {
  const EncodingSpec spec{Scheme::Compact, 1, 16};
  const DuschinskyData d = single_mode(0.8, 1.0, 1.0);
  const StateVector g = prepare_basis(encode_basis_state({0}, spec));
  const StateVector e1 = prepare_basis(encode_basis_state({1}, spec));

  CHECK(std::abs(franck_condon_sampled(g, g, single_mode(0.0, 1.0, 1.0), spec,
                                       1000, 1) -
                 1.0) < 1e-12);

  const double exact = franck_condon_factor(g, e1, d, spec);
  const std::uint64_t shots = 200000;
  const double sampled = franck_condon_sampled(g, e1, d, spec, shots, 4);
  const double p = (1.0 + exact) / 2.0;
  const double sigma = 2.0 * std::sqrt(p * (1.0 - p) / double(shots));
  CHECK(std::abs(sampled - exact) < 3.0 * sigma);
}

TEST_CASE("fock amplitudes pick out the encoded subspace") {
  const EncodingSpec direct{Scheme::Direct, 2, 2};
  StateVector s(4);
  s[6] = 0.8;  // |occ 1,0>: qubits 1 and 2 hot
  s[9] = 0.6;  // |occ 0,1>: qubits 0 and 3 hot
  const Eigen::VectorXcd v = fock_amplitudes(s, direct);
  REQUIRE(v.size() == 4);
  CHECK(std::abs(v(1) - 0.8) < 1e-15);
  CHECK(std::abs(v(2) - 0.6) < 1e-15);
  CHECK(std::abs(v(0)) < 1e-15);
  CHECK(std::abs(v(3)) < 1e-15);

  StateVector wrong(3);
  CHECK_THROWS_AS(fock_amplitudes(wrong, direct), std::invalid_argument);
}

TEST_CASE("invalid transforms and inputs are rejected") {
  DuschinskyData bad = single_mode(0.0, 1.0, 1.0);
  bad.u(0, 0) = 1.1;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);

  DuschinskyData neg = single_mode(0.0, -1.0, 1.0);
  CHECK_THROWS_AS(validate(neg), std::invalid_argument);

  DuschinskyData shape = single_mode(0.0, 1.0, 1.0);
  shape.shift = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(validate(shape), std::invalid_argument);

  // Orthogonal but improper: no real skew-symmetric logarithm.
  DuschinskyData flip;
  flip.u = (Eigen::MatrixXd(2, 2) << 0.0, 1.0, 1.0, 0.0).finished();
  flip.shift = Eigen::VectorXd::Zero(2);
  flip.omega_i = Eigen::VectorXd::Ones(2);
  flip.omega_f = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(doktorov_generators(flip), std::invalid_argument);

  CHECK_THROWS_AS(build_doktorov(single_mode(0.1, 1.0, 1.0), 1),
                  std::invalid_argument);

  DoktorovOptions odd;
  odd.method = DoktorovMethod::Trotter;
  CHECK_THROWS_AS(build_doktorov(single_mode(0.1, 1.0, 1.0), 3, odd),
                  std::invalid_argument);
  odd.trotter_steps = 0;
  CHECK_THROWS_AS(build_doktorov(single_mode(0.1, 1.0, 1.0), 4, odd),
                  std::invalid_argument);

  const DoktorovOperator dok = build_doktorov(single_mode(0.1, 1.0, 1.0), 4);
  const Eigen::VectorXcd small = Eigen::VectorXcd::Zero(2);
  const Eigen::VectorXcd fit = Eigen::VectorXcd::Zero(4);
  CHECK_THROWS_AS(franck_condon_factor(small, fit, dok), std::invalid_argument);

  Polynomial cubic(1);
  cubic.add({0, 0, 0}, 1.0);
  CHECK_THROWS_AS(
      non_condon_factor(fit, fit, cubic, single_mode(0.1, 1.0, 1.0), dok),
      std::invalid_argument);
  Polynomial wrong_vars(2);
  wrong_vars.add({0}, 1.0);
  CHECK_THROWS_AS(
      non_condon_factor(fit, fit, wrong_vars, single_mode(0.1, 1.0, 1.0), dok),
      std::invalid_argument);
}
