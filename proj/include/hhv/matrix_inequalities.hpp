// Copyright 2026 The hhverify Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file matrix_inequalities.hpp
 * Signed margins (left side minus right side) of the determinantal,
 * immanantal and operator Hornich-Hlawka type inequalities. Scalar margins
 * carry the largest absolute summand as scale; Loewner margins carry the
 * largest operand spectral radius.
 */

#ifndef HHV_MATRIX_INEQUALITIES_HPP
#define HHV_MATRIX_INEQUALITIES_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "hhv/matrix_core.hpp"
#include "hhv/numeric.hpp"

namespace hhv {

/// Delta_{A_1} ... Delta_{A_n} det (X), subsets by increasing size with sign
/// (-1)^{n-|S|}.
Margin det_alternating_difference(std::span<const SymMatrix> as,
                                  const SymMatrix& x);

/// e_k(A)+e_k(B)+e_k(C)+e_k(A+B+C) - e_k(A+B) - e_k(B+C) - e_k(C+A)
Margin esym_hlawka_margin(const SymMatrix& a, const SymMatrix& b,
                          const SymMatrix& c, std::size_t k);

/// Third-order difference of det written out term by term.
Margin det_hlawka_with_base_margin(const SymMatrix& a, const SymMatrix& b,
                                   const SymMatrix& c, const SymMatrix& x);

Margin immanant_hh_margin(const SymMatrix& a, const SymMatrix& b,
                          const SymMatrix& c, const SymMatrix& x,
                          const CharacterSpec& chi);

/// Iterated difference of arbitrary order for an immanant. Only order 3 is a
/// known result; higher orders are exploratory.
Margin immanant_alternating_difference(std::span<const SymMatrix> as,
                                       const SymMatrix& x,
                                       const CharacterSpec& chi);

/// lambda_min of the operator Hornich-Hlawka difference for p-th tensor
/// powers.
LoewnerMargin operator_hh_margin(const SymMatrix& a, const SymMatrix& b,
                                 const SymMatrix& c, const SymMatrix& x,
                                 std::size_t p);

/// X^k(x)V(x)X^l + (X+Y+Z)^k(x)V(x)(X+Y+Z)^l
///   - (X+Y)^k(x)V(x)(X+Y)^l - (X+Z)^k(x)V(x)(X+Z)^l
LoewnerMargin lemma_main_margin(const SymMatrix& x, const SymMatrix& y,
                                const SymMatrix& z, const SymMatrix& v,
                                std::size_t k, std::size_t l);

/// sum_{j<p} Z^j (x) V (x) Z^{p-1-j}
SymMatrix tensor_power_derivative(const SymMatrix& z, const SymMatrix& v,
                                  std::size_t p);

/// Max-norm gap between the forward difference quotient of Z -> Z^{(x)p}
/// along V with step h and tensor_power_derivative.
double derivative_formula_check(const SymMatrix& z, const SymMatrix& v,
                                std::size_t p, double h);

/// (S_n + S_{n-2} + ...) - (S_{n-1} + S_{n-3} + ...) where S_k sums the p-th
/// tensor powers of all k-subset sums shifted by X.
LoewnerMargin generalized_sk_margin(std::span<const SymMatrix> as,
                                    const SymMatrix& x, std::size_t p);

/// Reverse Hornich-Hlawka margin for det^{1/2} on 2x2 matrices.
Margin serre_reverse_margin(const SymMatrix& a, const SymMatrix& b,
                            const SymMatrix& c);

/// The forward Hornich-Hlawka margin for det^{1/2}; the negation of
/// serre_reverse_margin.
Margin sqrt_det_forward_margin(const SymMatrix& a, const SymMatrix& b,
                               const SymMatrix& c);

/// det^{1/n}(A+B) det^{1/n}(A+C) - det^{1/n}B det^{1/n}C
///   - det^{1/n}A det^{1/n}(A+B+C)
Margin minkowski_like_margin(const SymMatrix& a, const SymMatrix& b,
                             const SymMatrix& c);

/// sum over nonempty S of (-1)^{|S|-1} det^{-rho}(sum_{i in S} A_i)
Margin detrho_alternating_sum(std::span<const SymMatrix> as, double rho);

/// True when rho lies in {0, 1/2, 1, ...} or in [(N-1)/2, inf).
bool detrho_exponent_admissible(double rho, std::size_t n);

struct VaOptions {
  /// Re-check the three-variable hypothesis on every triple of inputs.
  bool strict = false;
  double tol = kDefaultTolerance;
};

/**
 * C(n-2,k-1) sum phi(x_i) + C(n-2,k-2) phi(sum x_i)
 *   - sum_{|S|=k} phi(sum_{i in S} x_i)
 *
 * T needs operator+. With strict options, a triple violating
 * phi(x)+phi(y)+phi(z)+phi(x+y+z) >= phi(x+y)+phi(y+z)+phi(z+x) raises
 * HypothesisViolated.
 */
template <class T, class Phi>
Margin va_margin(std::span<const T> xs, std::size_t k, Phi&& phi,
                 const VaOptions& options = {}) {
  const std::size_t n = xs.size();
  if (k < 2 || k >= n) {
    throw IndexError("va_margin needs 2 <= k < n");
  }
  if (options.strict) {
    for (const auto& t : combinations(n, 3)) {
      const T& x = xs[t[0]];
      const T& y = xs[t[1]];
      const T& z = xs[t[2]];
      SignedSum hh;
      hh.add(phi(x));
      hh.add(phi(y));
      hh.add(phi(z));
      hh.add(phi(x + y + z));
      hh.add(-phi(x + y));
      hh.add(-phi(y + z));
      hh.add(-phi(z + x));
      if (!hh.margin().passes(options.tol)) {
        throw HypothesisViolated("functional fails the three-variable inequality");
      }
    }
  }
  SignedSum sum;
  const double c_single = binomial(n - 2, k - 1);
  const double c_total = binomial(n - 2, k - 2);
  T total = xs[0];
  for (std::size_t i = 0; i < n; ++i) {
    sum.add(c_single * phi(xs[i]));
    if (i > 0) {
      total = total + xs[i];
    }
  }
  sum.add(c_total * phi(total));
  for (const auto& s : combinations(n, k)) {
    T acc = xs[s[0]];
    for (std::size_t j = 1; j < s.size(); ++j) {
      acc = acc + xs[s[j]];
    }
    sum.add(-phi(acc));
  }
  return sum.margin();
}

/// V -> det(V + T) - det(T)
std::function<double(const SymMatrix&)> shifted_det_functional(const SymMatrix& t);

}  // namespace hhv

#endif  // HHV_MATRIX_INEQUALITIES_HPP
