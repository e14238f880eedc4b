// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "support/oracles.hpp"
#include "vibsim/hamiltonian.hpp"
#include "vibsim/io.hpp"
#include "vibsim/uvcc.hpp"

using namespace vibsim;

namespace {

constexpr double kPi = 3.14159265358979323846;

ForceField harmonic_pair() {
  ForceField ff;
  ff.modes = 2;
  ff.potential = Polynomial(2);
  ff.potential.add({0, 0}, 0.5);    // omega = 1
  ff.potential.add({1, 1}, 1.125);  // omega = 1.5
  return ff;
}

VibHamiltonian h2o_d2() {
  const ForceField ff = load_force_field(VIBSIM_DATA_DIR "/h2o.json");
  return build_qubit_hamiltonian(ff, {Scheme::Compact, 3, 2});
}

Eigen::VectorXcd as_vector(const StateVector& s) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(s.amplitudes().size()));
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = s.amplitudes()[k];
  return v;
}

StateVector random_state(int n, std::mt19937_64& rng) {
  StateVector s(n);
  std::normal_distribution<double> g;
  for (auto& a : s.amplitudes()) a = {g(rng), g(rng)};
  s.normalize();
  return s;
}

std::vector<double> random_theta(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> t(n);
  for (auto& x : t) x = u(rng);
  return t;
}

}  // namespace

TEST_CASE("a two-level single excitation reduces to one Y rotation") {
  const EncodingSpec spec{Scheme::Compact, 1, 2};
  const PauliSum gen = excitation_generator(SingleExcitation{0, 0, 1}, spec);
  REQUIRE(gen.size() == 1);
  CHECK(gen.terms()[0].axes_string() == "Y");
  CHECK(std::abs(gen.terms()[0].coeff - std::complex<double>(0.0, -1.0)) < 1e-14);

  const AnsatzCircuit c = build_circuit(1, 2, Scheme::Compact, 1);
  REQUIRE(c.gates.size() == 1);
  REQUIRE(c.n_params == 1);
  REQUIRE(c.gates[0].alpha.size() == 1);
  CHECK(c.gates[0].alpha[0].first == 0);
  CHECK(c.gates[0].alpha[0].second == doctest::Approx(-1.0));

  const double theta = 0.37;
  StateVector s = prepare_basis("0");
  c.apply(s, {theta});
  CHECK(std::abs(s[0] - std::cos(theta)) < 1e-14);
  CHECK(std::abs(s[1] - std::sin(theta)) < 1e-14);
}

TEST_CASE("a two-mode double excitation gives the paired XY rotations") {
  const EncodingSpec spec{Scheme::Compact, 2, 2};
  const PauliSum gen =
      excitation_generator(DoubleExcitation{0, 0, 1, 1, 0, 1}, spec);
  REQUIRE(gen.size() == 2);
  std::set<std::string> strings;
  for (const auto& t : gen.terms()) {
    strings.insert(t.axes_string());
    CHECK(std::abs(t.coeff - std::complex<double>(0.0, -0.5)) < 1e-14);
  }
  CHECK(strings == std::set<std::string>{"XY", "YX"});

  // Dense identity: raise both modes minus the conjugate.
  const Eigen::MatrixXcd c2 = oracles::create_matrix(2);
  const Eigen::MatrixXcd a2 = oracles::destroy_matrix(2);
  const Eigen::MatrixXcd ref =
      oracles::kron(c2, c2) - oracles::kron(a2, a2);
  CHECK((gen.to_matrix() - ref).cwiseAbs().maxCoeff() < 1e-14);

  // The two strings commute, so the circuit realizes exp(theta (T - T+))
  // exactly: |00> -> cos|00> + sin|11>.
  const AnsatzCircuit c = build_circuit(2, 2, Scheme::Compact, 2);
  REQUIRE(c.n_params == 3);
  const double phi = 0.81;
  StateVector s = prepare_basis("00");
  c.apply(s, {0.0, 0.0, phi});
  CHECK(std::abs(s[0] - std::cos(phi)) < 1e-13);
  CHECK(std::abs(s[3] - std::sin(phi)) < 1e-13);
  CHECK(std::abs(s[1]) < 1e-14);
  CHECK(std::abs(s[2]) < 1e-14);
}

TEST_CASE("generators are anti-Hermitian with purely imaginary coefficients") {
  const EncodingSpec spec{Scheme::Compact, 2, 4};
  std::vector<PauliSum> gens;
  gens.push_back(excitation_generator(SingleExcitation{0, 0, 3}, spec));
  gens.push_back(excitation_generator(SingleExcitation{1, 1, 2}, spec));
  gens.push_back(excitation_generator(DoubleExcitation{0, 0, 2, 1, 1, 3}, spec));
  for (const auto& gen : gens) {
    for (const auto& t : gen.terms()) CHECK(std::abs(t.coeff.real()) < 1e-14);
    const Eigen::MatrixXcd m = gen.to_matrix();
    CHECK((m + m.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
  }

  // Power-of-two compact encodings act on the full register, so the dense
  // form must equal the bare transition difference.
  Eigen::MatrixXcd t01 = Eigen::MatrixXcd::Zero(4, 4);
  t01(3, 0) = 1.0;
  const Eigen::MatrixXcd single =
      oracles::kron(Eigen::MatrixXcd::Identity(4, 4),
                    Eigen::MatrixXcd(t01 - t01.adjoint()));
  CHECK((gens[0].to_matrix() - single).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("gate and parameter counts follow the mode and level layout") {
  const AnsatzCircuit c3 = build_circuit(3, 2, Scheme::Compact, 2);
  CHECK(c3.gates.size() == 9);
  CHECK(c3.n_params == 6);
  CHECK(c3.singles.size() == 3);
  CHECK(c3.doubles.size() == 3);

  const AnsatzCircuit c1 = build_circuit(1, 2, Scheme::Compact, 2);
  CHECK(c1.gates.size() == 1);
  CHECK(c1.n_params == 1);

  const AnsatzCircuit c2 = build_circuit(2, 2, Scheme::Compact, 2);
  CHECK(c2.gates.size() == 4);
  CHECK(c2.n_params == 3);
  int one_qubit = 0;
  int two_qubit = 0;
  for (const auto& g : c2.gates) {
    int weight = 0;
    for (Axis a : g.axes) weight += a != Axis::I;
    if (weight == 1) ++one_qubit;
    if (weight == 2) ++two_qubit;
  }
  CHECK(one_qubit == 2);
  CHECK(two_qubit == 2);

  // Paired double gates share one parameter slot.
  std::map<int, int> slot_uses;
  for (std::size_t g = 3; g < c3.gates.size(); ++g) {
    REQUIRE(c3.gates[g].alpha.size() == 1);
    slot_uses[c3.gates[g].alpha[0].first] += 1;
  }
  CHECK(slot_uses.size() == 3);
  for (const auto& [slot, uses] : slot_uses) {
    CHECK(slot >= 3);
    CHECK(uses == 2);
  }
}

TEST_CASE("zero parameters act as the identity") {
  std::mt19937_64 rng(5);
  for (const auto& [modes, levels] : {std::pair{3, 2}, std::pair{2, 4}}) {
    const AnsatzCircuit c = build_circuit(modes, levels, Scheme::Compact, 2);
    const StateVector ref = random_state(total_qubits(c.enc), rng);
    StateVector s = ref;
    c.apply(s, std::vector<double>(c.n_params, 0.0));
    CHECK((as_vector(s) - as_vector(ref)).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("the circuit matches a dense gate-by-gate exponential") {
  const AnsatzCircuit c = build_circuit(2, 4, Scheme::Compact, 2);
  std::mt19937_64 rng(11);
  const std::vector<double> theta = random_theta(c.n_params, rng);
  const StateVector ref = random_state(total_qubits(c.enc), rng);

  Eigen::VectorXcd expected = as_vector(ref);
  for (const auto& g : c.gates) {
    double a = 0.0;
    for (const auto& [slot, w] : g.alpha) a += w * theta[slot];
    PauliTerm p;
    p.coeff = 1.0;
    p.axes = g.axes;
    PauliSum term(total_qubits(c.enc));
    term.add(std::move(p));
    // exp(i a sigma) = exp(-i sigma (-a))
    expected = oracles::propagate(term.to_matrix(), -a, expected);
  }

  StateVector s = ref;
  c.apply(s, theta);
  CHECK((as_vector(s) - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("the ansatz preserves the norm") {
  std::mt19937_64 rng(17);
  for (const auto& [modes, levels] : {std::pair{3, 2}, std::pair{2, 4}}) {
    const AnsatzCircuit c = build_circuit(modes, levels, Scheme::Compact, 2);
    for (int rep = 0; rep < 3; ++rep) {
      StateVector s = random_state(total_qubits(c.enc), rng);
      c.apply(s, random_theta(c.n_params, rng));
      CHECK(std::abs(s.norm() - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("sampled energies never undercut the variational bound") {
  const VibHamiltonian h = h2o_d2();
  const double exact = exact_spectrum(h, 1).front();
  const AnsatzCircuit c = build_circuit(3, 2, Scheme::Compact, 2);
  const StateVector ref = prepare_basis("000");
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 25; ++rep) {
    const double e = ansatz_energy(h.qubit_form, c, ref, random_theta(6, rng));
    CHECK(e >= exact - 1e-10);
  }
}

TEST_CASE("central differences agree with a five-point stencil") {
  const VibHamiltonian h = h2o_d2();
  const AnsatzCircuit c = build_circuit(3, 2, Scheme::Compact, 2);
  const StateVector ref = prepare_basis("000");
  std::mt19937_64 rng(29);
  const std::vector<double> theta = random_theta(c.n_params, rng);

  const std::vector<double> grad =
      ansatz_gradient(h.qubit_form, c, ref, theta, 1e-4);
  for (int i = 0; i < c.n_params; ++i) {
    const double st = oracles::stencil_derivative(
        [&](double x) {
          std::vector<double> t = theta;
          t[i] = x;
          return ansatz_energy(h.qubit_form, c, ref, t);
        },
        theta[i], 1e-3);
    CHECK(std::abs(grad[i] - st) <= 1e-6 * (std::abs(st) + 1e-4));
  }
}

TEST_CASE("descent reaches the exact water ground state monotonically") {
  const VibHamiltonian h = h2o_d2();
  const AnsatzCircuit c = build_circuit(3, 2, Scheme::Compact, 2);
  const StateVector ref = prepare_basis("000");
  const VqeResult res = vqe_minimize(h.qubit_form, c, ref);
  CHECK(res.converged);
  CHECK_FALSE(res.diverged);

  const double exact = exact_spectrum(h, 1).front();
  CHECK(std::abs(res.energy - exact) < 1e-6);
  REQUIRE(!res.energy_trace.empty());
  CHECK(res.energy == doctest::Approx(res.energy_trace.back()).epsilon(1e-12));
  CHECK(res.grad_norm_trace.size() + 1 == res.energy_trace.size());
  for (std::size_t k = 0; k + 1 < res.energy_trace.size(); ++k)
    CHECK(res.energy_trace[k + 1] <= res.energy_trace[k] + 1e-9);
}

TEST_CASE("a harmonic field keeps the reference as its optimum") {
  const VibHamiltonian h =
      build_qubit_hamiltonian(harmonic_pair(), {Scheme::Compact, 2, 2});
  const AnsatzCircuit c = build_circuit(2, 2, Scheme::Compact, 2);
  const StateVector ref = prepare_basis("00");
  const VqeResult res = vqe_minimize(h.qubit_form, c, ref);
  CHECK(res.converged);
  CHECK(std::abs(res.energy - 1.25) < 1e-6);
  for (double t : res.theta) CHECK(std::abs(t) < 1e-4);
}

TEST_CASE("an unperturbed start at a stationary point returns immediately") {
  const VibHamiltonian h =
      build_qubit_hamiltonian(harmonic_pair(), {Scheme::Compact, 2, 2});
  const AnsatzCircuit c = build_circuit(2, 2, Scheme::Compact, 2);
  const StateVector ref = prepare_basis("00");
  VqeOptions opts;
  opts.init_perturbation = 0.0;
  const VqeResult res = vqe_minimize(h.qubit_form, c, ref, opts);
  CHECK(res.converged);
  CHECK(res.iterations == 0);
  CHECK(res.energy_trace.size() == 1);
  CHECK(res.energy == doctest::Approx(1.25).epsilon(1e-12));
}

TEST_CASE("runaway fixed-step descent is flagged as divergence") {
  ForceField ff;
  ff.modes = 1;
  ff.potential = Polynomial(1);
  ff.potential.add({0, 0}, 0.5);
  const VibHamiltonian h = build_qubit_hamiltonian(ff, {Scheme::Compact, 1, 2});
  const AnsatzCircuit c = build_circuit(1, 2, Scheme::Compact, 1);
  VqeOptions opts;
  opts.pure_gd = true;
  opts.step = 1.075;  // overshoots the quadratic bowl every iteration
  opts.seed = 7;
  opts.max_iter = 200;
  const VqeResult res = vqe_minimize(h.qubit_form, c, prepare_basis("0"), opts);
  CHECK(res.diverged);
  CHECK_FALSE(res.converged);
  REQUIRE(res.energy_trace.size() >= 11);
  const std::size_t n = res.energy_trace.size();
  for (std::size_t k = n - 10; k < n; ++k)
    CHECK(res.energy_trace[k] > res.energy_trace[k - 1]);
}

TEST_CASE("a one-parameter energy is an order-two trigonometric polynomial") {
  PauliSum h(1);
  for (const auto& [c, axes] :
       {std::pair{0.7, "I"}, std::pair{-0.35, "Z"}, std::pair{0.2, "X"}}) {
    PauliTerm t;
    t.coeff = c;
    t.axes = PauliTerm::axes_from_string(axes);
    h.add(std::move(t));
  }
  const AnsatzCircuit c = build_circuit(1, 2, Scheme::Compact, 1);
  const StateVector ref = prepare_basis("0");

  const int n = 8;
  std::vector<std::complex<double>> bins(n, 0.0);
  for (int j = 0; j < n; ++j) {
    const double theta = 2.0 * kPi * j / n;
    const double e = ansatz_energy(h, c, ref, {theta});
    for (int k = 0; k < n; ++k)
      bins[k] += e * std::exp(std::complex<double>(0.0, -2.0 * kPi * k * j / n)) /
                 double(n);
  }
  for (int k : {3, 4, 5}) CHECK(std::abs(bins[k]) < 1e-10);

  for (double theta : {0.3, 1.1, 2.5, 4.0, 5.7}) {
    std::complex<double> fit = 0.0;
    for (int k : {0, 1, 2, 6, 7}) {
      const int order = k <= 2 ? k : k - n;
      fit += bins[k] * std::exp(std::complex<double>(0.0, order * theta));
    }
    CHECK(std::abs(fit.imag()) < 1e-10);
    CHECK(std::abs(fit.real() - ansatz_energy(h, c, ref, {theta})) < 1e-8);
  }
}

TEST_CASE("invalid excitations, ranks, and options are rejected") {
  const EncodingSpec spec{Scheme::Compact, 2, 2};
  CHECK_THROWS_AS(excitation_generator(SingleExcitation{0, 1, 1}, spec),
                  std::invalid_argument);
  CHECK_THROWS_AS(excitation_generator(SingleExcitation{2, 0, 1}, spec),
                  std::invalid_argument);
  CHECK_THROWS_AS(excitation_generator(DoubleExcitation{1, 0, 1, 1, 0, 1}, spec),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_circuit(2, 2, Scheme::Compact, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_circuit(2, 2, Scheme::Compact, 3), std::invalid_argument);

  const AnsatzCircuit c = build_circuit(2, 2, Scheme::Compact, 2);
  StateVector s = prepare_basis("00");
  CHECK_THROWS_AS(c.apply(s, {0.0}), std::invalid_argument);
  VqeOptions bad;
  bad.step = 0.0;
  PauliSum h(2);
  CHECK_THROWS_AS(vqe_minimize(h, c, s, bad), std::invalid_argument);
}
