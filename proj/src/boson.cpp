// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "vibsim/boson.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace vibsim {

namespace {

void check_spec(const EncodingSpec& spec) {
  if (spec.modes < 1)
    throw std::invalid_argument("EncodingSpec: need at least one mode");
  if (spec.levels < 2)
    throw std::invalid_argument("EncodingSpec: need at least two levels per mode");
}

void check_occupations(const std::vector<int>& occ, const EncodingSpec& spec) {
  if (static_cast<int>(occ.size()) != spec.modes)
    throw std::invalid_argument("occupation tuple length does not match mode count");
  for (int s : occ)
    if (s < 0 || s >= spec.levels)
      throw std::invalid_argument("occupation outside truncation range");
}

}  // namespace

void BosonPolynomial::add(std::complex<double> coeff, std::vector<LadderOp> ops) {
  for (const auto& op : ops)
    if (op.mode < 0 || op.mode >= modes)
      throw std::invalid_argument("BosonPolynomial::add: mode index out of range");
  terms.push_back(BosonTerm{coeff, std::move(ops)});
}

BosonPolynomial& BosonPolynomial::operator+=(const BosonPolynomial& other) {
  if (other.modes != modes)
    throw std::invalid_argument("BosonPolynomial +=: mode counts differ");
  terms.insert(terms.end(), other.terms.begin(), other.terms.end());
  return *this;
}

void BosonPolynomial::simplify(double threshold) {
  auto key = [](const BosonTerm& t) {
    std::vector<int> k;
    k.reserve(t.ops.size() * 2);
    for (const auto& op : t.ops) {
      k.push_back(static_cast<int>(op.kind));
      k.push_back(op.mode);
    }
    return k;
  };
  std::map<std::vector<int>, BosonTerm> merged;
  for (auto& t : terms) {
    auto [it, inserted] = merged.try_emplace(key(t), t);
    if (!inserted) it->second.coeff += t.coeff;
  }
  terms.clear();
  for (auto& [k, t] : merged)
    if (std::abs(t.coeff) > threshold) terms.push_back(std::move(t));
}

int qubits_per_mode(const EncodingSpec& spec) {
  check_spec(spec);
  if (spec.scheme == Scheme::Direct) return spec.levels;
  return std::bit_width(static_cast<unsigned>(spec.levels - 1));
}

int total_qubits(const EncodingSpec& spec) {
  return spec.modes * qubits_per_mode(spec);
}

int mode_count(int n_atoms, bool linear) {
  const int m = linear ? 3 * n_atoms - 5 : 3 * n_atoms - 6;
  if (m < 1)
    throw std::invalid_argument("mode_count: no vibrational modes for this geometry");
  return m;
}

int qubit_count(int n_atoms, bool linear, int levels, Scheme scheme) {
  EncodingSpec spec{scheme, mode_count(n_atoms, linear), levels};
  return total_qubits(spec);
}

Eigen::MatrixXcd ladder_matrix(LadderKind kind, int levels) {
  if (levels < 2)
    throw std::invalid_argument("ladder_matrix: need at least two levels");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(levels, levels);
  switch (kind) {
    case LadderKind::Create:
      for (int s = 0; s + 1 < levels; ++s) m(s + 1, s) = std::sqrt(double(s + 1));
      break;
    case LadderKind::Annihilate:
      for (int s = 0; s + 1 < levels; ++s) m(s, s + 1) = std::sqrt(double(s + 1));
      break;
    case LadderKind::Number:
      for (int s = 0; s < levels; ++s) m(s, s) = double(s);
      break;
  }
  return m;
}

namespace {

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace

std::map<int, Eigen::MatrixXcd> per_mode_matrices(const BosonTerm& term, int levels) {
  std::map<int, Eigen::MatrixXcd> mats;
  for (const auto& op : term.ops) {
    auto it = mats.find(op.mode);
    if (it == mats.end()) {
      mats.emplace(op.mode, ladder_matrix(op.kind, levels));
    } else {
      it->second = it->second * ladder_matrix(op.kind, levels);
    }
  }
  return mats;
}

Eigen::MatrixXcd fock_matrix(const BosonPolynomial& poly, int modes, int levels) {
  if (modes < 1 || poly.modes > modes)
    throw std::invalid_argument("fock_matrix: bad mode count");
  std::size_t dim = 1;
  for (int m = 0; m < modes; ++m) dim *= static_cast<std::size_t>(levels);
  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(dim, dim);
  const Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(levels, levels);
  for (const auto& term : poly.terms) {
    auto mats = per_mode_matrices(term, levels);
    // Mode 0 is the least-significant factor.
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
    for (int m = modes - 1; m >= 0; --m) {
      auto it = mats.find(m);
      acc = kron(acc, it == mats.end() ? eye : it->second);
    }
    total += term.coeff * acc;
  }
  return total;
}

namespace {

using LocalExpansion = std::map<std::vector<Axis>, std::complex<double>>;

// Pauli expansion of a d x d operator on one compact (binary) register.
LocalExpansion expand_compact(const Eigen::MatrixXcd& a, int levels, int width) {
  static const std::complex<double> half{0.5, 0.0};
  static const std::complex<double> half_i{0.0, 0.5};
  LocalExpansion out;
  for (int s = 0; s < levels; ++s) {
    for (int t = 0; t < levels; ++t) {
      const std::complex<double> entry = a(s, t);
      if (entry == std::complex<double>(0.0, 0.0)) continue;
      std::vector<std::pair<std::vector<Axis>, std::complex<double>>> partial{
          {std::vector<Axis>(width, Axis::I), entry}};
      for (int k = 0; k < width; ++k) {
        const int sb = (s >> k) & 1;
        const int tb = (t >> k) & 1;
        std::vector<std::pair<Axis, std::complex<double>>> factors;
        if (sb == tb) {
          factors = {{Axis::I, half}, {Axis::Z, sb ? -half : half}};
        } else if (sb == 1) {  // |1><0| = (X - iY)/2
          factors = {{Axis::X, half}, {Axis::Y, -half_i}};
        } else {  // |0><1| = (X + iY)/2
          factors = {{Axis::X, half}, {Axis::Y, half_i}};
        }
        std::vector<std::pair<std::vector<Axis>, std::complex<double>>> next;
        next.reserve(partial.size() * 2);
        for (const auto& [axes, c] : partial) {
          for (const auto& [ax, f] : factors) {
            auto grown = axes;
            grown[k] = ax;
            next.emplace_back(std::move(grown), c * f);
          }
        }
        partial = std::move(next);
      }
      for (auto& [axes, c] : partial) out[axes] += c;
    }
  }
  return out;
}

// Pauli expansion of a d x d operator on one direct (one-hot) register.
// Transitions touch only the source and target qubits; the action is exact
// on the one-hot subspace and never maps one-hot states out of it.
LocalExpansion expand_direct(const Eigen::MatrixXcd& a, int levels) {
  LocalExpansion out;
  const int width = levels;
  for (int s = 0; s < levels; ++s) {
    for (int t = 0; t < levels; ++t) {
      const std::complex<double> entry = a(s, t);
      if (entry == std::complex<double>(0.0, 0.0)) continue;
      if (s == t) {  // |1><1|_s = (I - Z_s)/2
        std::vector<Axis> id(width, Axis::I);
        out[id] += entry * 0.5;
        std::vector<Axis> z(width, Axis::I);
        z[s] = Axis::Z;
        out[z] += entry * -0.5;
      } else {  // |1><0|_s (x) |0><1|_t = (X-iY)_s (X+iY)_t / 4
        static const std::complex<double> im{0.0, 1.0};
        const std::complex<double> q = entry * 0.25;
        const std::pair<Axis, std::complex<double>> fs[2] = {{Axis::X, {1.0, 0.0}},
                                                             {Axis::Y, -im}};
        const std::pair<Axis, std::complex<double>> ft[2] = {{Axis::X, {1.0, 0.0}},
                                                             {Axis::Y, im}};
        for (const auto& [ax_s, cs] : fs) {
          for (const auto& [ax_t, ct] : ft) {
            std::vector<Axis> axes(width, Axis::I);
            axes[s] = ax_s;
            axes[t] = ax_t;
            out[axes] += q * cs * ct;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

PauliSum encode_mode_matrices(
    const EncodingSpec& spec,
    const std::vector<std::pair<int, Eigen::MatrixXcd>>& mode_ops,
    std::complex<double> coeff) {
  check_spec(spec);
  const int width = qubits_per_mode(spec);
  const int n = total_qubits(spec);

  std::vector<std::pair<int, LocalExpansion>> locals;
  locals.reserve(mode_ops.size());
  for (const auto& [mode, a] : mode_ops) {
    if (mode < 0 || mode >= spec.modes)
      throw std::invalid_argument("encode_mode_matrices: mode index out of range");
    if (a.rows() != spec.levels || a.cols() != spec.levels)
      throw std::invalid_argument("encode_mode_matrices: operator is not d x d");
    for (const auto& [m, unused] : locals)
      if (m == mode)
        throw std::invalid_argument("encode_mode_matrices: duplicate mode entry");
    locals.emplace_back(mode, spec.scheme == Scheme::Compact
                                  ? expand_compact(a, spec.levels, width)
                                  : expand_direct(a, spec.levels));
  }

  PauliSum out(n);
  std::vector<std::pair<std::vector<Axis>, std::complex<double>>> partial{
      {std::vector<Axis>(n, Axis::I), coeff}};
  for (const auto& [mode, expansion] : locals) {
    std::vector<std::pair<std::vector<Axis>, std::complex<double>>> next;
    next.reserve(partial.size() * expansion.size());
    for (const auto& [axes, c] : partial) {
      for (const auto& [local_axes, lc] : expansion) {
        auto grown = axes;
        for (int k = 0; k < width; ++k) grown[mode * width + k] = local_axes[k];
        next.emplace_back(std::move(grown), c * lc);
      }
    }
    partial = std::move(next);
  }
  for (auto& [axes, c] : partial) out.add(PauliTerm{c, std::move(axes)});
  return out;
}

PauliSum encode_operator(const BosonPolynomial& poly, const EncodingSpec& spec,
                         double threshold) {
  check_spec(spec);
  if (poly.modes > spec.modes)
    throw std::invalid_argument("encode_operator: polynomial has more modes than the encoding");
  PauliSum out(total_qubits(spec));
  for (const auto& term : poly.terms) {
    auto mats = per_mode_matrices(term, spec.levels);
    std::vector<std::pair<int, Eigen::MatrixXcd>> mode_ops(mats.begin(), mats.end());
    out += encode_mode_matrices(spec, mode_ops, term.coeff);
  }
  out.simplify(threshold);
  return out;
}

std::string encode_basis_state(const std::vector<int>& occupations,
                               const EncodingSpec& spec) {
  check_spec(spec);
  check_occupations(occupations, spec);
  const int width = qubits_per_mode(spec);
  const int n = total_qubits(spec);
  std::string bits(n, '0');
  for (int m = 0; m < spec.modes; ++m) {
    const int s = occupations[m];
    if (spec.scheme == Scheme::Direct) {
      bits[n - 1 - (m * width + s)] = '1';
    } else {
      for (int k = 0; k < width; ++k)
        if ((s >> k) & 1) bits[n - 1 - (m * width + k)] = '1';
    }
  }
  return bits;
}

std::size_t encoded_basis_index(const std::vector<int>& occupations,
                                const EncodingSpec& spec) {
  const std::string bits = encode_basis_state(occupations, spec);
  std::size_t index = 0;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[bits.size() - 1 - i] == '1') index |= std::size_t{1} << i;
  return index;
}

std::vector<std::size_t> encoded_subspace_indices(const EncodingSpec& spec) {
  check_spec(spec);
  std::size_t count = 1;
  for (int m = 0; m < spec.modes; ++m) count *= static_cast<std::size_t>(spec.levels);
  std::vector<std::size_t> out;
  out.reserve(count);
  std::vector<int> occ(spec.modes, 0);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t rest = i;
    for (int m = 0; m < spec.modes; ++m) {
      occ[m] = static_cast<int>(rest % spec.levels);
      rest /= spec.levels;
    }
    out.push_back(encoded_basis_index(occ, spec));
  }
  return out;
}

}  // namespace vibsim
