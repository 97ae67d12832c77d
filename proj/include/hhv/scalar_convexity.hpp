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
 * @file scalar_convexity.hpp
 * Divided differences, iterated difference operators and sampled probes of
 * higher-order convexity for real functions of one variable, together with
 * the catalog of test functions the probes run against.
 */

#ifndef HHV_SCALAR_CONVEXITY_HPP
#define HHV_SCALAR_CONVEXITY_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hhv/numeric.hpp"

namespace hhv {

/// A real interval whose endpoints may be open, closed or infinite.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = true;
  bool hi_closed = true;

  [[nodiscard]] bool contains(double x) const;
  [[nodiscard]] double length() const { return hi - lo; }
};

/// A point where the defining formula is 0/0 (or similar) but the function
/// extends continuously with value `limit`.
struct RemovableSingularity {
  double at = 0.0;
  double limit = 0.0;
};

/**
 * A named real function from the catalog.
 *
 * `derivative(n, x)`, when present, returns the exact n-th derivative; it is
 * used only by tests that bound divided differences by derivative ranges.
 */
class FunctionSpec {
 public:
  using Eval = std::function<double(double)>;
  using Derivative = std::function<double(int, double)>;

  FunctionSpec(std::string id, Eval eval, Interval domain, std::string notes,
               Derivative derivative = {},
               std::vector<RemovableSingularity> removable = {});

  [[nodiscard]] const std::string& id() const { return id_; }
  [[nodiscard]] const Interval& domain() const { return domain_; }
  [[nodiscard]] const std::string& notes() const { return notes_; }
  [[nodiscard]] bool has_derivative() const {
    return static_cast<bool>(derivative_);
  }
  [[nodiscard]] double derivative(int order, double x) const;

  /// Raw formula, no domain or singularity handling.
  [[nodiscard]] double raw(double x) const { return eval_(x); }
  [[nodiscard]] const std::vector<RemovableSingularity>& removable() const {
    return removable_;
  }

 private:
  std::string id_;
  Eval eval_;
  Interval domain_;
  std::string notes_;
  Derivative derivative_;
  std::vector<RemovableSingularity> removable_;
};

/// Distance below which a removable singularity is replaced by its limit.
inline constexpr double kSingularityRadius = 1e-12;

/// Evaluates `f` at `x`; throws DomainError outside the domain and
/// SingularityError when the value is not finite.
double eval_function(const FunctionSpec& f, double x);

// Catalog. Ids are stable strings; parametric families encode the parameter
// after a colon, e.g. "pow:0.5" or "poly:1,0,2".
FunctionSpec make_abs();
FunctionSpec make_power(double alpha);
FunctionSpec make_exp();
FunctionSpec make_exp_neg(double alpha);
FunctionSpec make_x_over_x_plus_one();
FunctionSpec make_one_minus_exp_neg(double alpha);
FunctionSpec make_log1p();
FunctionSpec make_x_minus_one_over_log();
FunctionSpec make_neg_x_log_x();
FunctionSpec make_sinh();
FunctionSpec make_cosh();
FunctionSpec make_neg_log_gamma();
/// sum_i coeffs[i] x^i
FunctionSpec make_polynomial(std::vector<double> coeffs);
/// 1 - (x-3) + (x-3)^3/6
FunctionSpec make_shifted_cubic();
/// -x^2 + sqrt(x)
FunctionSpec make_neg_square_plus_sqrt();

/// Looks a function up by id; throws DomainError for unknown ids.
FunctionSpec catalog_function(std::string_view id);

/// A catalog function paired with the interval probes use by default.
struct CatalogEntry {
  FunctionSpec function;
  Interval probe_interval;
};

/// Every catalog function with default parameters.
std::vector<CatalogEntry> function_catalog();

/// Points and function for a divided difference. A negative `min_spacing`
/// selects the default of 1e-6 times the spread of the points.
struct DividedDiffInput {
  std::vector<double> points;
  FunctionSpec f;
  double min_spacing = -1.0;
};

inline constexpr double kMinSpacingFraction = 1e-6;

/// Product form sum_j f(x_j) / prod_{k!=j}(x_j - x_k). The points are sorted
/// first, so the result is identical for every permutation of them.
double divided_difference(const DividedDiffInput& input);

/// Same value through the recursive difference-quotient table.
double divided_difference_recursive(const DividedDiffInput& input);

/// Product form on precomputed values, with the largest absolute summand as
/// scale. `points` and `values` correspond index-wise.
Margin divided_difference_values(std::span<const double> points,
                                 std::span<const double> values,
                                 double min_spacing);

/// Recursive form on precomputed values.
double divided_difference_values_recursive(std::span<const double> points,
                                           std::span<const double> values,
                                           double min_spacing);

/**
 * Delta_{h_1} ... Delta_{h_n} f(base), expanded as the alternating sum over
 * the 2^n subsets of steps. Terms are accumulated by increasing subset size
 * with compensated summation.
 */
Margin iterated_difference(const FunctionSpec& f, double base,
                           std::span<const double> steps);

/// Outcome of a sampled probe.
struct Verdict {
  double min_margin = 0.0;
  /// Largest summand magnitude over every sampled tuple.
  double scale = 0.0;
  std::vector<double> witness;
  bool passed = true;
  std::size_t evaluated = 0;
  /// Order that produced the minimum (cone probes); -1 when not applicable.
  int order = -1;
};

struct ProbeOptions {
  std::size_t grid = 16;
  std::size_t random_tuples = 0;
  std::uint64_t seed = 0;
  double tol = kDefaultTolerance;
};

/// Uniform grid of `grid` points on [a,b]; endpoints lying on an open end of
/// `domain` are nudged inward by kMinSpacingFraction * (b - a).
std::vector<double> probe_grid(const Interval& domain, double a, double b,
                               std::size_t grid);

/// Minimum n-th divided difference over all (n+1)-subsets of the grid (and
/// optional random tuples). Witness is the minimizing tuple.
Verdict n_convexity_probe(const FunctionSpec& f, double a, double b, int n,
                          const ProbeOptions& options = {});

/// Minimum n-th iterated difference over grid-aligned (base, steps) with
/// positive steps and base + sum(steps) inside [a,b]. Witness is
/// (base, h_1, ..., h_n).
Verdict positive_difference_probe(const FunctionSpec& f, double a, double b,
                                  int n, const ProbeOptions& options = {});

/// Bernstein polynomial of degree m of f over [a,b] (default [0,1]), by de
/// Casteljau's algorithm.
double bernstein_poly(const FunctionSpec& f, int m, double x,
                      Interval on = {0.0, 1.0});

/// The degree-m Bernstein polynomial of f as a catalog-style function.
FunctionSpec bernstein_approximant(const FunctionSpec& f, int m,
                                   Interval on = {0.0, 1.0});

}  // namespace hhv

#endif  // HHV_SCALAR_CONVEXITY_HPP
