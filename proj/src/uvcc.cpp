// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "vibsim/uvcc.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <random>
#include <stdexcept>

#include "vibsim/util.hpp"

namespace vibsim {

namespace {

Eigen::MatrixXcd transition(int to, int from, int levels) {
  Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(levels, levels);
  e(to, from) = 1.0;
  return e;
}

void check_single(const SingleExcitation& ex, const EncodingSpec& spec) {
  if (ex.mode < 0 || ex.mode >= spec.modes)
    throw std::invalid_argument("excitation mode out of range");
  if (ex.from < 0 || ex.to >= spec.levels || ex.from >= ex.to)
    throw std::invalid_argument("excitation levels must satisfy 0 <= from < to < d");
}

void check_double(const DoubleExcitation& ex, const EncodingSpec& spec) {
  check_single({ex.mode_a, ex.from_a, ex.to_a}, spec);
  check_single({ex.mode_b, ex.from_b, ex.to_b}, spec);
  if (ex.mode_a >= ex.mode_b)
    throw std::invalid_argument("double excitation needs mode_a < mode_b");
}

// Imaginary parts of the generator terms, keyed by axes for merging.
void collect_alpha(const PauliSum& gen, int slot,
                   std::map<std::vector<Axis>, std::vector<std::pair<int, double>>,
                            bool (*)(const std::vector<Axis>&, const std::vector<Axis>&)>&
                       block) {
  for (const auto& t : gen.terms()) {
    if (std::abs(t.coeff.real()) > 1e-12)
      throw std::runtime_error("uvcc: generator term with real coefficient");
    block[t.axes].emplace_back(slot, t.coeff.imag());
  }
}

void flush_block(
    const std::map<std::vector<Axis>, std::vector<std::pair<int, double>>,
                   bool (*)(const std::vector<Axis>&, const std::vector<Axis>&)>& block,
    std::vector<AnsatzGate>& gates) {
  for (const auto& [axes, alpha] : block) gates.push_back(AnsatzGate{axes, alpha});
}

}  // namespace

std::vector<SingleExcitation> standard_singles(int modes, int levels) {
  std::vector<SingleExcitation> out;
  for (int m = 0; m < modes; ++m)
    for (int from = 0; from < levels; ++from)
      for (int to = from + 1; to < levels; ++to) out.push_back({m, from, to});
  return out;
}

std::vector<DoubleExcitation> standard_doubles(int modes, int levels) {
  std::vector<DoubleExcitation> out;
  for (int ma = 0; ma < modes; ++ma)
    for (int mb = ma + 1; mb < modes; ++mb)
      for (int fa = 0; fa < levels; ++fa)
        for (int ta = fa + 1; ta < levels; ++ta)
          for (int fb = 0; fb < levels; ++fb)
            for (int tb = fb + 1; tb < levels; ++tb)
              out.push_back({ma, fa, ta, mb, fb, tb});
  return out;
}

PauliSum excitation_generator(const SingleExcitation& ex, const EncodingSpec& spec) {
  check_single(ex, spec);
  PauliSum gen = encode_mode_matrices(
      spec, {{ex.mode, transition(ex.to, ex.from, spec.levels)}}, 1.0);
  gen += encode_mode_matrices(
      spec, {{ex.mode, transition(ex.from, ex.to, spec.levels)}}, -1.0);
  gen.simplify();
  return gen;
}

PauliSum excitation_generator(const DoubleExcitation& ex, const EncodingSpec& spec) {
  check_double(ex, spec);
  PauliSum gen = encode_mode_matrices(
      spec,
      {{ex.mode_a, transition(ex.to_a, ex.from_a, spec.levels)},
       {ex.mode_b, transition(ex.to_b, ex.from_b, spec.levels)}},
      1.0);
  gen += encode_mode_matrices(
      spec,
      {{ex.mode_a, transition(ex.from_a, ex.to_a, spec.levels)},
       {ex.mode_b, transition(ex.from_b, ex.to_b, spec.levels)}},
      -1.0);
  gen.simplify();
  return gen;
}

void AnsatzCircuit::apply(StateVector& s, const std::vector<double>& theta) const {
  if (static_cast<int>(theta.size()) != n_params)
    throw std::invalid_argument("ansatz: parameter count mismatch");
  for (const auto& g : gates) {
    double a = 0.0;
    for (const auto& [slot, c] : g.alpha) a += c * theta[slot];
    // exp(i a sigma) = exp(-i (-a) sigma)
    apply_rotation(s, g.axes, -a);
  }
}

AnsatzCircuit build_circuit(int modes, int levels, Scheme scheme, int rank) {
  if (rank < 1 || rank > 2) throw std::invalid_argument("ansatz rank must be 1 or 2");
  AnsatzCircuit c;
  c.enc = EncodingSpec{scheme, modes, levels};
  c.singles = standard_singles(modes, levels);
  if (rank >= 2) c.doubles = standard_doubles(modes, levels);
  c.n_params = static_cast<int>(c.singles.size() + c.doubles.size());

  using Block = std::map<std::vector<Axis>, std::vector<std::pair<int, double>>,
                         bool (*)(const std::vector<Axis>&, const std::vector<Axis>&)>;
  Block singles_block(&axes_less);
  Block doubles_block(&axes_less);
  int slot = 0;
  for (const auto& ex : c.singles)
    collect_alpha(excitation_generator(ex, c.enc), slot++, singles_block);
  for (const auto& ex : c.doubles)
    collect_alpha(excitation_generator(ex, c.enc), slot++, doubles_block);
  flush_block(singles_block, c.gates);
  flush_block(doubles_block, c.gates);
  return c;
}

double ansatz_energy(const PauliSum& h, const AnsatzCircuit& circuit,
                     const StateVector& reference, const std::vector<double>& theta) {
  StateVector s = reference;
  circuit.apply(s, theta);
  return expectation(s, h);
}

std::vector<double> ansatz_gradient(const PauliSum& h, const AnsatzCircuit& circuit,
                                    const StateVector& reference,
                                    const std::vector<double>& theta, double eps) {
  std::vector<double> grad(theta.size(), 0.0);
  parallel_for(theta.size(), [&](std::size_t i) {
    std::vector<double> t = theta;
    t[i] = theta[i] + eps;
    const double plus = ansatz_energy(h, circuit, reference, t);
    t[i] = theta[i] - eps;
    const double minus = ansatz_energy(h, circuit, reference, t);
    grad[i] = (plus - minus) / (2.0 * eps);
  });
  return grad;
}

VqeResult vqe_minimize(const PauliSum& h, const AnsatzCircuit& circuit,
                       const StateVector& reference, const VqeOptions& opts) {
  if (opts.step <= 0.0) throw std::invalid_argument("vqe: step must be positive");
  if (opts.grad_eps <= 0.0) throw std::invalid_argument("vqe: grad_eps must be positive");

  VqeResult res;
  res.theta.assign(circuit.n_params, 0.0);
  if (opts.init_perturbation > 0.0) {
    std::mt19937_64 rng(opts.seed);
    for (auto& t : res.theta)
      t = (2.0 * uniform01(rng) - 1.0) * opts.init_perturbation;
  }

  double energy = ansatz_energy(h, circuit, reference, res.theta);
  res.energy_trace.push_back(energy);
  double step = opts.step;
  int rising = 0;

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    const auto grad = ansatz_gradient(h, circuit, reference, res.theta, opts.grad_eps);
    double gmax = 0.0;
    for (double g : grad) gmax = std::max(gmax, std::abs(g));
    if (gmax < opts.grad_tol) {
      res.converged = true;
      break;
    }

    if (opts.pure_gd) {
      for (std::size_t i = 0; i < res.theta.size(); ++i)
        res.theta[i] -= step * grad[i];
      const double next = ansatz_energy(h, circuit, reference, res.theta);
      rising = next > energy ? rising + 1 : 0;
      energy = next;
      res.energy_trace.push_back(energy);
      res.grad_norm_trace.push_back(gmax);
      res.iterations = iter + 1;
      if (rising >= 10) {
        res.diverged = true;
        break;
      }
      continue;
    }

    // Backtracking step: shrink until the move strictly lowers the energy,
    // recover geometrically on success. A step that cannot improve within
    // the floor means the energy is stationary to machine precision.
    std::vector<double> trial(res.theta.size());
    double next = energy;
    bool moved = false;
    while (step >= 1e-14) {
      for (std::size_t i = 0; i < trial.size(); ++i)
        trial[i] = res.theta[i] - step * grad[i];
      next = ansatz_energy(h, circuit, reference, trial);
      if (next < energy) {
        moved = true;
        break;
      }
      step /= 2.0;
    }
    res.iterations = iter + 1;
    if (!moved) {
      res.converged = true;
      break;
    }
    res.theta = trial;
    energy = next;
    res.energy_trace.push_back(energy);
    res.grad_norm_trace.push_back(gmax);
    step = std::min(opts.step, step * 2.0);
  }

  res.energy = energy;
  return res;
}

}  // namespace vibsim
