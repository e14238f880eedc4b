// This code is licensed under the Apache License, Version 2.0. You may
// obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.

#include "vibsim/force_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vibsim {

void Polynomial::add(std::vector<int> monomial, double coeff) {
  for (int i : monomial)
    if (i < 0 || i >= vars)
      throw std::invalid_argument("Polynomial::add: mode index out of range");
  if (monomial.size() > 4)
    throw std::invalid_argument("Polynomial::add: degree above 4");
  std::sort(monomial.begin(), monomial.end());
  terms[std::move(monomial)] += coeff;
}

double Polynomial::coeff(const std::vector<int>& monomial) const {
  auto key = monomial;
  std::sort(key.begin(), key.end());
  auto it = terms.find(key);
  return it == terms.end() ? 0.0 : it->second;
}

int Polynomial::degree() const {
  int deg = 0;
  for (const auto& [mono, c] : terms)
    if (c != 0.0) deg = std::max(deg, static_cast<int>(mono.size()));
  return deg;
}

std::vector<double> frequencies(const ForceField& ff) {
  std::vector<double> omega(ff.modes);
  for (int i = 0; i < ff.modes; ++i) {
    const double kii = ff.potential.coeff({i, i});
    if (kii <= 0.0)
      throw std::invalid_argument("frequencies: diagonal quadratic coefficient for mode " +
                                  std::to_string(i) + " is missing or non-positive");
    omega[i] = std::sqrt(2.0 * kii);
  }
  return omega;
}

Polynomial potential_polynomial(const ForceField& ff, int order) {
  if (order < 2 || order > 4)
    throw std::invalid_argument("potential_polynomial: order must be 2, 3 or 4");
  Polynomial out(ff.modes);
  for (const auto& [mono, c] : ff.potential.terms)
    if (static_cast<int>(mono.size()) <= order && c != 0.0) out.terms[mono] = c;
  return out;
}

Polynomial transform_polynomial(const Polynomial& v, const LinearCoordinateMap& map) {
  const int n = v.vars;
  if (map.a.rows() != n || map.a.cols() != n || map.b.size() != n)
    throw std::invalid_argument("transform_polynomial: map dimensions do not match");
  Polynomial out(n);
  // Each monomial is a product of linear forms A.row(i) q' + b_i; expand
  // factor by factor, carrying var index -1 for the constant part.
  for (const auto& [mono, c] : v.terms) {
    if (c == 0.0) continue;
    std::vector<std::pair<std::vector<int>, double>> partial{{{}, c}};
    for (int factor_var : mono) {
      std::vector<std::pair<std::vector<int>, double>> next;
      next.reserve(partial.size() * (n + 1));
      for (const auto& [vars_so_far, coeff] : partial) {
        for (int j = 0; j < n; ++j) {
          const double a = map.a(factor_var, j);
          if (a == 0.0) continue;
          auto grown = vars_so_far;
          grown.push_back(j);
          next.emplace_back(std::move(grown), coeff * a);
        }
        const double b = map.b(factor_var);
        if (b != 0.0) next.emplace_back(vars_so_far, coeff * b);
      }
      partial = std::move(next);
    }
    for (auto& [monomial, coeff] : partial) out.add(std::move(monomial), coeff);
  }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = (it->second == 0.0) ? out.terms.erase(it) : std::next(it);
  return out;
}

LocalizationMap localization_map(const std::vector<double>& omega,
                                 const Eigen::MatrixXd& u) {
  const int n = static_cast<int>(omega.size());
  if (u.rows() != n || u.cols() != n)
    throw std::invalid_argument("localization_map: U dimensions do not match omega");
  for (double w : omega)
    if (w <= 0.0) throw std::invalid_argument("localization_map: non-positive frequency");
  const double ortho = (u.transpose() * u - Eigen::MatrixXd::Identity(n, n))
                           .cwiseAbs()
                           .maxCoeff();
  if (ortho > 1e-10)
    throw std::invalid_argument("localization_map: U is not orthogonal");
  LocalizationMap out{Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double r = std::sqrt(omega[i] / omega[j]);
      out.wp(i, j) = r * u(i, j);
      out.wq(i, j) = u(i, j) / r;
    }
  }
  return out;
}

}  // namespace vibsim
