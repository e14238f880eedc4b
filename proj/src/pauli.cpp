// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "vibsim/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>
#include <stdexcept>

#include "vibsim/util.hpp"

namespace vibsim {

char axis_char(Axis a) {
  switch (a) {
    case Axis::I: return 'I';
    case Axis::X: return 'X';
    case Axis::Y: return 'Y';
    case Axis::Z: return 'Z';
  }
  throw std::invalid_argument("axis_char: invalid axis");
}

Axis axis_from_char(char c) {
  switch (c) {
    case 'I': return Axis::I;
    case 'X': return Axis::X;
    case 'Y': return Axis::Y;
    case 'Z': return Axis::Z;
    default: throw std::invalid_argument(std::string("axis_from_char: '") + c + "'");
  }
}

bool PauliTerm::is_identity_string() const {
  return std::all_of(axes.begin(), axes.end(),
                     [](Axis a) { return a == Axis::I; });
}

std::string PauliTerm::axes_string() const {
  std::string s(axes.size(), 'I');
  for (std::size_t k = 0; k < axes.size(); ++k)
    s[axes.size() - 1 - k] = axis_char(axes[k]);
  return s;
}

std::vector<Axis> PauliTerm::axes_from_string(std::string_view s) {
  std::vector<Axis> axes(s.size());
  for (std::size_t k = 0; k < s.size(); ++k)
    axes[k] = axis_from_char(s[s.size() - 1 - k]);
  return axes;
}

namespace {

// Single-qubit products: result axis and the phase folded into the
// coefficient (XY = iZ, YX = -iZ, ...).
struct AxisProduct {
  Axis axis;
  std::complex<double> phase;
};

AxisProduct axis_multiply(Axis a, Axis b) {
  static constexpr std::complex<double> one{1.0, 0.0};
  static constexpr std::complex<double> pi{0.0, 1.0};
  static constexpr std::complex<double> mi{0.0, -1.0};
  if (a == Axis::I) return {b, one};
  if (b == Axis::I) return {a, one};
  if (a == b) return {Axis::I, one};
  switch (a) {
    case Axis::X: return (b == Axis::Y) ? AxisProduct{Axis::Z, pi} : AxisProduct{Axis::Y, mi};
    case Axis::Y: return (b == Axis::Z) ? AxisProduct{Axis::X, pi} : AxisProduct{Axis::Z, mi};
    case Axis::Z: return (b == Axis::X) ? AxisProduct{Axis::Y, pi} : AxisProduct{Axis::X, mi};
    default: break;
  }
  throw std::logic_error("axis_multiply: unreachable");
}

}  // namespace

PauliTerm multiply(const PauliTerm& a, const PauliTerm& b) {
  if (a.axes.size() != b.axes.size())
    throw std::invalid_argument("PauliTerm multiply: register widths differ");
  PauliTerm out;
  out.coeff = a.coeff * b.coeff;
  out.axes.resize(a.axes.size());
  for (std::size_t k = 0; k < a.axes.size(); ++k) {
    const AxisProduct p = axis_multiply(a.axes[k], b.axes[k]);
    out.axes[k] = p.axis;
    out.coeff *= p.phase;
  }
  return out;
}

bool axes_less(const std::vector<Axis>& a, const std::vector<Axis>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  // String order: qubit n-1 is the leftmost character.
  for (std::size_t k = a.size(); k-- > 0;) {
    if (a[k] != b[k]) return axis_char(a[k]) < axis_char(b[k]);
  }
  return false;
}

PauliSum::PauliSum(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0)
    throw std::invalid_argument("PauliSum: negative qubit count");
}

void PauliSum::add(PauliTerm term) {
  if (terms_.empty() && n_qubits_ == 0) {
    n_qubits_ = term.n_qubits();
  } else if (term.n_qubits() != n_qubits_) {
    throw std::invalid_argument("PauliSum::add: register widths differ");
  }
  terms_.push_back(std::move(term));
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (terms_.empty() && n_qubits_ == 0) n_qubits_ = other.n_qubits_;
  if (other.n_qubits_ != n_qubits_ && !(other.terms_.empty() && other.n_qubits_ == 0))
    throw std::invalid_argument("PauliSum +=: register widths differ");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

PauliSum& PauliSum::operator*=(std::complex<double> scale) {
  for (auto& t : terms_) t.coeff *= scale;
  return *this;
}

PauliSum multiply(const PauliSum& a, const PauliSum& b) {
  if (a.n_qubits() != b.n_qubits())
    throw std::invalid_argument("PauliSum multiply: register widths differ");
  PauliSum out(a.n_qubits());
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms()) out.add(multiply(ta, tb));
  return out;
}

void PauliSum::simplify(double threshold) {
  std::sort(terms_.begin(), terms_.end(),
            [](const PauliTerm& a, const PauliTerm& b) {
              return axes_less(a.axes, b.axes);
            });
  std::vector<PauliTerm> merged;
  merged.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!merged.empty() && merged.back().axes == t.axes) {
      merged.back().coeff += t.coeff;
    } else {
      merged.push_back(std::move(t));
    }
  }
  terms_.clear();
  for (auto& t : merged) {
    if (std::abs(t.coeff) > threshold) terms_.push_back(std::move(t));
  }
}

PauliSum PauliSum::adjoint() const {
  PauliSum out(n_qubits_);
  for (const auto& t : terms_) {
    PauliTerm c = t;
    c.coeff = std::conj(c.coeff);
    out.add(std::move(c));
  }
  return out;
}

Eigen::MatrixXcd PauliSum::to_matrix() const {
  if (n_qubits_ > kDenseQubitGuard)
    throw std::invalid_argument("PauliSum::to_matrix: " + std::to_string(n_qubits_) +
                                " qubits exceeds the dense guard of " +
                                std::to_string(kDenseQubitGuard));
  const std::size_t dim = std::size_t{1} << n_qubits_;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  static constexpr std::complex<double> ipow[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  for (const auto& t : terms_) {
    std::uint64_t flip = 0, ymask = 0, zmask = 0;
    int ny = 0;
    for (int k = 0; k < n_qubits_; ++k) {
      switch (t.axes[k]) {
        case Axis::I: break;
        case Axis::X: flip |= std::uint64_t{1} << k; break;
        case Axis::Y: flip |= std::uint64_t{1} << k; ymask |= std::uint64_t{1} << k; ++ny; break;
        case Axis::Z: zmask |= std::uint64_t{1} << k; break;
      }
    }
    const std::complex<double> base = t.coeff * ipow[ny & 3];
    const std::uint64_t parity_mask = ymask | zmask;
    for (std::uint64_t col = 0; col < dim; ++col) {
      const int par = std::popcount(col & parity_mask) & 1;
      m(col ^ flip, col) += par ? -base : base;
    }
  }
  return m;
}

double PauliSum::hermiticity_residual() const {
  // Upper bound on ||H - H^dagger||: after merging duplicate strings each
  // term contributes 2|Im c| and Pauli strings have unit operator norm.
  std::map<std::string, std::complex<double>> merged;
  for (const auto& t : terms_) merged[t.axes_string()] += t.coeff;
  double r = 0.0;
  for (const auto& [axes, c] : merged) r += 2.0 * std::abs(c.imag());
  return r;
}

std::string PauliSum::to_text() const {
  std::string out;
  for (const auto& t : terms_) {
    out += fmt_g17(t.coeff.real());
    out += ' ';
    out += fmt_g17(t.coeff.imag());
    out += ' ';
    out += t.axes_string();
    out += '\n';
  }
  return out;
}

PauliSum PauliSum::from_text(std::string_view text) {
  PauliSum out;
  std::istringstream stream{std::string(text)};
  std::string line;
  while (std::getline(stream, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string re, im, axes;
    if (!(ls >> re >> im >> axes))
      throw std::invalid_argument("PauliSum::from_text: bad line: " + line);
    std::string trailing;
    if (ls >> trailing)
      throw std::invalid_argument("PauliSum::from_text: trailing tokens: " + line);
    char* end = nullptr;
    const double re_v = std::strtod(re.c_str(), &end);
    if (end != re.c_str() + re.size())
      throw std::invalid_argument("PauliSum::from_text: bad coefficient: " + re);
    const double im_v = std::strtod(im.c_str(), &end);
    if (end != im.c_str() + im.size())
      throw std::invalid_argument("PauliSum::from_text: bad coefficient: " + im);
    PauliTerm t;
    t.coeff = {re_v, im_v};
    t.axes = PauliTerm::axes_from_string(axes);
    out.add(std::move(t));
  }
  return out;
}

}  // namespace vibsim
