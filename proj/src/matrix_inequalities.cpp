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

#include "hhv/matrix_inequalities.hpp"

#include <algorithm>
#include <cmath>

namespace hhv {

namespace {

void require_common_dim(std::span<const SymMatrix> ms) {
  for (const auto& m : ms) {
    if (m.dim() != ms.front().dim()) {
      throw DimensionMismatch("inequality operands differ in dimension");
    }
  }
}

double parity_sign(std::size_t n, std::size_t size) {
  return ((n - size) % 2 == 0) ? 1.0 : -1.0;
}

SymMatrix subset_sum(std::span<const SymMatrix> as,
                     const std::vector<std::size_t>& subset, const SymMatrix& x) {
  if (subset.empty()) {
    return x;
  }
  SymMatrix acc = as[subset[0]];
  for (std::size_t j = 1; j < subset.size(); ++j) {
    acc = acc + as[subset[j]];
  }
  return acc + x;
}

// f(A+X)+f(B+X)+f(C+X)+f(A+B+C+X) - f(A+B+X) - f(B+C+X) - f(C+A+X) - f(X)
template <class F>
Margin hh_with_base(const SymMatrix& a, const SymMatrix& b, const SymMatrix& c,
                    const SymMatrix& x, F&& f) {
  const SymMatrix arr[] = {a, b, c, x};
  require_common_dim(arr);
  SignedSum sum;
  sum.add(f(a + x));
  sum.add(f(b + x));
  sum.add(f(c + x));
  sum.add(f(a + b + c + x));
  sum.add(-f(a + b + x));
  sum.add(-f(b + c + x));
  sum.add(-f(c + a + x));
  sum.add(-f(x));
  return sum.margin();
}

// f(A)+f(B)+f(C)+f(A+B+C) - f(A+B) - f(B+C) - f(C+A)
template <class F>
Margin hh_plain(const SymMatrix& a, const SymMatrix& b, const SymMatrix& c,
                F&& f) {
  const SymMatrix arr[] = {a, b, c};
  require_common_dim(arr);
  SignedSum sum;
  sum.add(f(a));
  sum.add(f(b));
  sum.add(f(c));
  sum.add(f(a + b + c));
  sum.add(-f(a + b));
  sum.add(-f(b + c));
  sum.add(-f(c + a));
  return sum.margin();
}

}  // namespace

Margin det_alternating_difference(std::span<const SymMatrix> as,
                                  const SymMatrix& x) {
  if (as.empty()) {
    throw IndexError("difference order must be >= 1");
  }
  require_common_dim(as);
  if (x.dim() != as.front().dim()) {
    throw DimensionMismatch("base and steps differ in dimension");
  }
  const std::size_t n = as.size();
  SignedSum sum;
  for (const auto& subset : subsets_by_size(n)) {
    sum.add(parity_sign(n, subset.size()) * determinant(subset_sum(as, subset, x)));
  }
  return sum.margin();
}

Margin esym_hlawka_margin(const SymMatrix& a, const SymMatrix& b,
                          const SymMatrix& c, std::size_t k) {
  if (k > a.dim()) {
    throw IndexError("esym index exceeds dimension");
  }
  return hh_plain(a, b, c, [k](const SymMatrix& m) { return esym(m, k); });
}

Margin det_hlawka_with_base_margin(const SymMatrix& a, const SymMatrix& b,
                                   const SymMatrix& c, const SymMatrix& x) {
  return hh_with_base(a, b, c, x, [](const SymMatrix& m) { return determinant(m); });
}

Margin immanant_hh_margin(const SymMatrix& a, const SymMatrix& b,
                          const SymMatrix& c, const SymMatrix& x,
                          const CharacterSpec& chi) {
  if (a.dim() > kMaxImmanantDim) {
    throw SizeLimit("immanant limited to N <= 8");
  }
  return hh_with_base(a, b, c, x,
                      [&chi](const SymMatrix& m) { return immanant(m, chi); });
}

Margin immanant_alternating_difference(std::span<const SymMatrix> as,
                                       const SymMatrix& x,
                                       const CharacterSpec& chi) {
  if (as.empty()) {
    throw IndexError("difference order must be >= 1");
  }
  require_common_dim(as);
  const std::size_t n = as.size();
  SignedSum sum;
  for (const auto& subset : subsets_by_size(n)) {
    sum.add(parity_sign(n, subset.size()) * immanant(subset_sum(as, subset, x), chi));
  }
  return sum.margin();
}

LoewnerMargin operator_hh_margin(const SymMatrix& a, const SymMatrix& b,
                                 const SymMatrix& c, const SymMatrix& x,
                                 std::size_t p) {
  const SymMatrix arr[] = {a, b, c, x};
  require_common_dim(arr);
  if (p < 1) {
    throw IndexError("tensor power must be >= 1");
  }
  const SymMatrix plus[] = {a + x, b + x, c + x, a + b + c + x};
  const SymMatrix minus[] = {a + b + x, b + c + x, c + a + x, x};
  std::size_t dim = 1;
  for (std::size_t i = 0; i < p; ++i) {
    dim *= a.dim();
    if (dim > kMaxTensorDim) {
      throw SizeLimit("tensor dimension exceeds 4096");
    }
  }
  Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                               static_cast<Eigen::Index>(dim));
  double scale = 0.0;
  for (const auto& m : plus) {
    diff += tensor_power(m, p).matrix();
    scale = std::max(scale, std::pow(m.spectral_radius(), static_cast<double>(p)));
  }
  for (const auto& m : minus) {
    diff -= tensor_power(m, p).matrix();
    scale = std::max(scale, std::pow(m.spectral_radius(), static_cast<double>(p)));
  }
  return {min_eigenvalue(diff), scale};
}

LoewnerMargin lemma_main_margin(const SymMatrix& x, const SymMatrix& y,
                                const SymMatrix& z, const SymMatrix& v,
                                std::size_t k, std::size_t l) {
  const SymMatrix arr[] = {x, y, z, v};
  require_common_dim(arr);
  const SymMatrix plus[] = {x, x + y + z};
  const SymMatrix minus[] = {x + y, x + z};
  const double rho_v = v.spectral_radius();
  const auto kl = static_cast<double>(k + l);
  Eigen::MatrixXd diff = mixed_tensor(plus[0], k, v, l).matrix();
  double scale = std::pow(plus[0].spectral_radius(), kl) * rho_v;
  diff += mixed_tensor(plus[1], k, v, l).matrix();
  scale = std::max(scale, std::pow(plus[1].spectral_radius(), kl) * rho_v);
  for (const auto& m : minus) {
    diff -= mixed_tensor(m, k, v, l).matrix();
    scale = std::max(scale, std::pow(m.spectral_radius(), kl) * rho_v);
  }
  return {min_eigenvalue(diff), scale};
}

SymMatrix tensor_power_derivative(const SymMatrix& z, const SymMatrix& v,
                                  std::size_t p) {
  if (p < 1) {
    throw IndexError("tensor power must be >= 1");
  }
  if (z.dim() != v.dim()) {
    throw DimensionMismatch("Z and V differ in dimension");
  }
  Eigen::MatrixXd acc = mixed_tensor(z, 0, v, p - 1).matrix();
  for (std::size_t j = 1; j < p; ++j) {
    acc += mixed_tensor(z, j, v, p - 1 - j).matrix();
  }
  return SymMatrix(acc);
}

double derivative_formula_check(const SymMatrix& z, const SymMatrix& v,
                                std::size_t p, double h) {
  if (!(h > 0.0)) {
    throw DomainError("step h must be positive");
  }
  const SymMatrix formula = tensor_power_derivative(z, v, p);
  const Eigen::MatrixXd quotient =
      (tensor_power(z + h * v, p).matrix() - tensor_power(z, p).matrix()) / h;
  return (quotient - formula.matrix()).cwiseAbs().maxCoeff();
}

LoewnerMargin generalized_sk_margin(std::span<const SymMatrix> as,
                                    const SymMatrix& x, std::size_t p) {
  const std::size_t n = as.size();
  if (n < 1 || n > 6) {
    throw IndexError("generalized inequality supports 1 <= n <= 6");
  }
  require_common_dim(as);
  if (x.dim() != as.front().dim()) {
    throw DimensionMismatch("base and summands differ in dimension");
  }
  if (p < 1) {
    throw IndexError("tensor power must be >= 1");
  }
  std::size_t dim = 1;
  for (std::size_t i = 0; i < p; ++i) {
    dim *= x.dim();
    if (dim > kMaxTensorDim) {
      throw SizeLimit("tensor dimension exceeds 4096");
    }
  }
  Eigen::MatrixXd diff = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                               static_cast<Eigen::Index>(dim));
  double scale = 0.0;
  for (const auto& subset : subsets_by_size(n)) {
    const SymMatrix m = subset_sum(as, subset, x);
    diff += parity_sign(n, subset.size()) * tensor_power(m, p).matrix();
    scale = std::max(scale, std::pow(m.spectral_radius(), static_cast<double>(p)));
  }
  return {min_eigenvalue(diff), scale};
}

Margin sqrt_det_forward_margin(const SymMatrix& a, const SymMatrix& b,
                               const SymMatrix& c) {
  if (a.dim() != 2) {
    throw DimensionMismatch("det^{1/2} inequality needs 2x2 matrices");
  }
  return hh_plain(a, b, c, [](const SymMatrix& m) { return det_power(m, 0.5); });
}

Margin serre_reverse_margin(const SymMatrix& a, const SymMatrix& b,
                            const SymMatrix& c) {
  const Margin forward = sqrt_det_forward_margin(a, b, c);
  return {-forward.value, forward.scale};
}

Margin minkowski_like_margin(const SymMatrix& a, const SymMatrix& b,
                             const SymMatrix& c) {
  const SymMatrix arr[] = {a, b, c};
  require_common_dim(arr);
  const double e = 1.0 / static_cast<double>(a.dim());
  SignedSum sum;
  sum.add(det_power(a + b, e) * det_power(a + c, e));
  sum.add(-det_power(b, e) * det_power(c, e));
  sum.add(-det_power(a, e) * det_power(a + b + c, e));
  return sum.margin();
}

Margin detrho_alternating_sum(std::span<const SymMatrix> as, double rho) {
  if (as.empty()) {
    throw IndexError("alternating sum needs at least one matrix");
  }
  if (!(rho >= 0.0)) {
    throw DomainError("rho must be nonnegative");
  }
  require_common_dim(as);
  SignedSum sum;
  for (const auto& subset : subsets_by_size(as.size())) {
    if (subset.empty()) {
      continue;
    }
    SymMatrix m = as[subset[0]];
    for (std::size_t j = 1; j < subset.size(); ++j) {
      m = m + as[subset[j]];
    }
    const double sign = (subset.size() % 2 == 1) ? 1.0 : -1.0;
    sum.add(sign * det_power(m, -rho));
  }
  return sum.margin();
}

bool detrho_exponent_admissible(double rho, std::size_t n) {
  if (rho >= 0.5 * static_cast<double>(n - 1)) {
    return true;
  }
  const double twice = 2.0 * rho;
  return rho >= 0.0 && twice == std::floor(twice);
}

std::function<double(const SymMatrix&)> shifted_det_functional(const SymMatrix& t) {
  const double base = determinant(t);
  return [t, base](const SymMatrix& v) { return determinant(v + t) - base; };
}

}  // namespace hhv
