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

#include "hhv/scalar_convexity.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <utility>

namespace hhv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_param(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_param(std::string_view text) {
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw DomainError("cannot parse function parameter '" + std::string(text) +
                      "'");
  }
  return v;
}

// alpha (alpha-1) ... (alpha-n+1)
double falling_factorial(double alpha, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) {
    r *= alpha - i;
  }
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) {
    r *= i;
  }
  return r;
}

void check_spacing(std::span<const double> sorted, double min_spacing) {
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (!(sorted[i] - sorted[i - 1] >= min_spacing) ||
        sorted[i] == sorted[i - 1]) {
      throw DegenerateInput("divided difference points closer than " +
                            format_param(min_spacing));
    }
  }
}

double resolve_spacing(std::span<const double> sorted, double requested) {
  if (requested >= 0.0) {
    return requested;
  }
  if (sorted.size() < 2) {
    return 0.0;
  }
  return kMinSpacingFraction * (sorted.back() - sorted.front());
}

// Sorts (point, value) pairs by point.
std::pair<std::vector<double>, std::vector<double>> sorted_pairs(
    std::span<const double> points, std::span<const double> values) {
  if (points.size() != values.size()) {
    throw DimensionMismatch("points and values differ in length");
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return points[a] < points[b];
  });
  std::vector<double> xs(points.size());
  std::vector<double> ys(points.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    xs[i] = points[order[i]];
    ys[i] = values[order[i]];
  }
  return {std::move(xs), std::move(ys)};
}

std::vector<double> evaluate_all(const FunctionSpec& f,
                                 std::span<const double> points) {
  std::vector<double> values(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    values[i] = eval_function(f, points[i]);
  }
  return values;
}

}  // namespace

bool Interval::contains(double x) const {
  if (std::isnan(x)) {
    return false;
  }
  const bool above = lo_closed ? x >= lo : x > lo;
  const bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

FunctionSpec::FunctionSpec(std::string id, Eval eval, Interval domain,
                           std::string notes, Derivative derivative,
                           std::vector<RemovableSingularity> removable)
    : id_(std::move(id)),
      eval_(std::move(eval)),
      domain_(domain),
      notes_(std::move(notes)),
      derivative_(std::move(derivative)),
      removable_(std::move(removable)) {}

double FunctionSpec::derivative(int order, double x) const {
  if (!derivative_) {
    throw DomainError("no closed-form derivative for " + id_);
  }
  return derivative_(order, x);
}

double eval_function(const FunctionSpec& f, double x) {
  if (!f.domain().contains(x)) {
    throw DomainError(f.id() + ": " + format_param(x) + " outside domain");
  }
  for (const auto& s : f.removable()) {
    if (std::abs(x - s.at) < kSingularityRadius) {
      return s.limit;
    }
  }
  const double v = f.raw(x);
  if (!std::isfinite(v)) {
    throw SingularityError(f.id() + ": non-finite value at " + format_param(x));
  }
  return v;
}

// ---------------------------------------------------------------- catalog

FunctionSpec make_abs() {
  return {"abs", [](double x) { return std::abs(x); }, {-kInf, kInf, false, false},
          "convex; kink at 0"};
}

FunctionSpec make_power(double alpha) {
  Interval dom = alpha > 0.0 ? Interval{0.0, kInf, true, false}
                             : Interval{0.0, kInf, false, false};
  std::string notes = "x^alpha";
  if ((alpha > 0.0 && alpha <= 1.0) || alpha >= 2.0) {
    notes += "; 3-convex";
  }
  if (alpha > 0.0 && alpha <= 1.0) {
    notes += "; Bernstein function";
  }
  return {"pow:" + format_param(alpha),
          [alpha](double x) { return std::pow(x, alpha); },
          dom,
          notes,
          [alpha](int n, double x) {
            return falling_factorial(alpha, n) * std::pow(x, alpha - n);
          }};
}

FunctionSpec make_exp() {
  return {"exp", [](double x) { return std::exp(x); },
          {-kInf, kInf, false, false}, "n-convex for every n",
          [](int, double x) { return std::exp(x); }};
}

FunctionSpec make_exp_neg(double alpha) {
  return {"expneg:" + format_param(alpha),
          [alpha](double x) { return std::exp(-alpha * x); },
          {-kInf, kInf, false, false},
          "completely monotone on [0,inf)",
          [alpha](int n, double x) {
            return std::pow(-alpha, n) * std::exp(-alpha * x);
          }};
}

FunctionSpec make_x_over_x_plus_one() {
  return {"x_over_1px", [](double x) { return x / (x + 1.0); },
          {0.0, kInf, true, false}, "Bernstein function; 3-convex",
          [](int n, double x) {
            if (n == 0) {
              return x / (x + 1.0);
            }
            const double sign = (n % 2 == 1) ? 1.0 : -1.0;
            return sign * factorial(n) / std::pow(x + 1.0, n + 1);
          }};
}

FunctionSpec make_one_minus_exp_neg(double alpha) {
  return {"1mexpneg:" + format_param(alpha),
          [alpha](double x) { return -std::expm1(-alpha * x); },
          {-kInf, kInf, false, false},
          "Bernstein function on [0,inf); 3-convex",
          [alpha](int n, double x) {
            if (n == 0) {
              return -std::expm1(-alpha * x);
            }
            return -std::pow(-alpha, n) * std::exp(-alpha * x);
          }};
}

FunctionSpec make_log1p() {
  return {"log1p", [](double x) { return std::log1p(x); },
          {0.0, kInf, true, false}, "Bernstein function; 3-convex",
          [](int n, double x) {
            if (n == 0) {
              return std::log1p(x);
            }
            const double sign = (n % 2 == 1) ? 1.0 : -1.0;
            return sign * factorial(n - 1) / std::pow(1.0 + x, n);
          }};
}

FunctionSpec make_x_minus_one_over_log() {
  return {"xm1_over_log",
          [](double x) {
            if (x == 0.0) {
              return 0.0;
            }
            return (x - 1.0) / std::log(x);
          },
          {0.0, kInf, true, false},
          "Bernstein function; 3-convex",
          {},
          {{1.0, 1.0}}};
}

FunctionSpec make_neg_x_log_x() {
  return {"neg_xlogx", [](double x) { return -x * std::log(x); },
          {0.0, kInf, true, false}, "3-convex",
          [](int n, double x) {
            switch (n) {
              case 0:
                return -x * std::log(x);
              case 1:
                return -std::log(x) - 1.0;
              default: {
                const double sign = (n % 2 == 1) ? 1.0 : -1.0;
                return sign * factorial(n - 2) / std::pow(x, n - 1);
              }
            }
          },
          {{0.0, 0.0}}};
}

FunctionSpec make_sinh() {
  return {"sinh", [](double x) { return std::sinh(x); },
          {-kInf, kInf, false, false}, "3-convex on [0,inf)",
          [](int n, double x) {
            return n % 2 == 0 ? std::sinh(x) : std::cosh(x);
          }};
}

FunctionSpec make_cosh() {
  return {"cosh", [](double x) { return std::cosh(x); },
          {-kInf, kInf, false, false}, "3-convex on [0,inf)",
          [](int n, double x) {
            return n % 2 == 0 ? std::cosh(x) : std::sinh(x);
          }};
}

FunctionSpec make_neg_log_gamma() {
  return {"neg_lgamma", [](double x) { return -std::lgamma(x); },
          {0.0, kInf, false, false}, "3-convex"};
}

FunctionSpec make_polynomial(std::vector<double> coeffs) {
  std::string id = "poly:";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i > 0) {
      id += ",";
    }
    id += format_param(coeffs[i]);
  }
  const bool nonneg = std::all_of(coeffs.begin(), coeffs.end(),
                                  [](double c) { return c >= 0.0; });
  std::string notes = "polynomial";
  if (nonneg) {
    notes += "; n-convex on [0,inf) for every n";
  }
  if (coeffs.size() <= 3) {
    notes += "; 3-convex and 3-concave";
  }
  auto eval = [coeffs](double x) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) {
      acc = acc * x + coeffs[i];
    }
    return acc;
  };
  auto deriv = [coeffs](int n, double x) {
    double acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > static_cast<std::size_t>(n);) {
      acc = acc * x + coeffs[i] * falling_factorial(static_cast<double>(i), n);
    }
    return acc;
  };
  return {id, eval, {-kInf, kInf, false, false}, notes, deriv};
}

FunctionSpec make_shifted_cubic() {
  return {"cubic3",
          [](double x) {
            const double u = x - 3.0;
            return 1.0 - u + u * u * u / 6.0;
          },
          {-kInf, kInf, false, false},
          "3-convex on [0,inf) but not 0-, 1- or 2-convex",
          [](int n, double x) {
            const double u = x - 3.0;
            switch (n) {
              case 0:
                return 1.0 - u + u * u * u / 6.0;
              case 1:
                return -1.0 + u * u / 2.0;
              case 2:
                return u;
              case 3:
                return 1.0;
              default:
                return 0.0;
            }
          }};
}

FunctionSpec make_neg_square_plus_sqrt() {
  return {"negsq_plus_sqrt",
          [](double x) { return -x * x + std::sqrt(x); },
          {0.0, kInf, true, false},
          "3-convex",
          [](int n, double x) {
            const double root = falling_factorial(0.5, n) * std::pow(x, 0.5 - n);
            const double square = falling_factorial(2.0, n) * std::pow(x, 2.0 - n);
            return root - square;
          }};
}

FunctionSpec catalog_function(std::string_view id) {
  const auto colon = id.find(':');
  const std::string_view head = id.substr(0, colon);
  const std::string_view tail =
      colon == std::string_view::npos ? std::string_view{} : id.substr(colon + 1);
  auto need_param = [&]() {
    if (tail.empty()) {
      throw DomainError("function '" + std::string(id) + "' needs a parameter");
    }
    return parse_param(tail);
  };
  if (head == "abs") return make_abs();
  if (head == "pow") return make_power(need_param());
  if (head == "exp") return make_exp();
  if (head == "expneg") return make_exp_neg(tail.empty() ? 1.0 : need_param());
  if (head == "x_over_1px") return make_x_over_x_plus_one();
  if (head == "1mexpneg")
    return make_one_minus_exp_neg(tail.empty() ? 1.0 : need_param());
  if (head == "log1p") return make_log1p();
  if (head == "xm1_over_log") return make_x_minus_one_over_log();
  if (head == "neg_xlogx") return make_neg_x_log_x();
  if (head == "sinh") return make_sinh();
  if (head == "cosh") return make_cosh();
  if (head == "neg_lgamma") return make_neg_log_gamma();
  if (head == "cubic3") return make_shifted_cubic();
  if (head == "negsq_plus_sqrt") return make_neg_square_plus_sqrt();
  if (head == "poly") {
    std::vector<double> coeffs;
    std::string_view rest = tail;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      coeffs.push_back(parse_param(rest.substr(0, comma)));
      if (comma == std::string_view::npos) {
        break;
      }
      rest = rest.substr(comma + 1);
    }
    if (coeffs.empty()) {
      throw DomainError("poly needs coefficients");
    }
    return make_polynomial(std::move(coeffs));
  }
  throw DomainError("unknown function id '" + std::string(id) + "'");
}

std::vector<CatalogEntry> function_catalog() {
  const Interval unit_two{0.0, 2.0};
  return {
      {make_abs(), {-2.0, 2.0}},
      {make_power(0.5), unit_two},
      {make_power(1.5), unit_two},
      {make_power(3.0), unit_two},
      {make_exp(), unit_two},
      {make_exp_neg(1.0), unit_two},
      {make_x_over_x_plus_one(), unit_two},
      {make_one_minus_exp_neg(1.0), unit_two},
      {make_log1p(), unit_two},
      {make_x_minus_one_over_log(), unit_two},
      {make_neg_x_log_x(), unit_two},
      {make_sinh(), unit_two},
      {make_cosh(), unit_two},
      {make_neg_log_gamma(), {0.5, 3.0}},
      {make_polynomial({0.0, 0.0, 1.0}), {0.0, 1.0}},
      {make_polynomial({1.0, 2.0, 0.5, 0.25}), unit_two},
      {make_shifted_cubic(), {0.0, 6.0}},
      {make_neg_square_plus_sqrt(), unit_two},
  };
}

// ------------------------------------------------------ divided differences

Margin divided_difference_values(std::span<const double> points,
                                 std::span<const double> values,
                                 double min_spacing) {
  if (points.empty()) {
    throw DegenerateInput("divided difference needs at least one point");
  }
  auto [xs, ys] = sorted_pairs(points, values);
  check_spacing(xs, resolve_spacing(xs, min_spacing));
  SignedSum sum;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    double denom = 1.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (k != j) {
        denom *= xs[j] - xs[k];
      }
    }
    sum.add(ys[j] / denom);
  }
  return sum.margin();
}

double divided_difference_values_recursive(std::span<const double> points,
                                           std::span<const double> values,
                                           double min_spacing) {
  if (points.empty()) {
    throw DegenerateInput("divided difference needs at least one point");
  }
  auto [xs, table] = sorted_pairs(points, values);
  check_spacing(xs, resolve_spacing(xs, min_spacing));
  const std::size_t n = xs.size();
  // table[i] holds [x_i, ..., x_{i+level}; f] after each pass
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      table[i] = (table[i + 1] - table[i]) / (xs[i + level] - xs[i]);
    }
  }
  return table[0];
}

double divided_difference(const DividedDiffInput& input) {
  const auto values = evaluate_all(input.f, input.points);
  return divided_difference_values(input.points, values, input.min_spacing)
      .value;
}

double divided_difference_recursive(const DividedDiffInput& input) {
  const auto values = evaluate_all(input.f, input.points);
  return divided_difference_values_recursive(input.points, values,
                                             input.min_spacing);
}

Margin iterated_difference(const FunctionSpec& f, double base,
                           std::span<const double> steps) {
  const std::size_t n = steps.size();
  SignedSum sum;
  for (const auto& subset : subsets_by_size(n)) {
    double x = base;
    for (std::size_t i : subset) {
      x += steps[i];
    }
    const double sign = ((n - subset.size()) % 2 == 0) ? 1.0 : -1.0;
    sum.add(sign * eval_function(f, x));
  }
  return sum.margin();
}

// ------------------------------------------------------------------ probes

std::vector<double> probe_grid(const Interval& domain, double a, double b,
                               std::size_t grid) {
  if (!(b > a) || grid < 2) {
    throw DomainError("probe interval must satisfy a < b with grid >= 2");
  }
  const double nudge = kMinSpacingFraction * (b - a);
  double lo = a;
  double hi = b;
  if (!domain.contains(lo)) {
    lo += nudge;
  }
  if (!domain.contains(hi)) {
    hi -= nudge;
  }
  if (!domain.contains(lo) || !domain.contains(hi)) {
    throw DomainError("probe interval not inside the function's domain");
  }
  std::vector<double> pts(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(grid - 1);
    pts[i] = lo + t * (hi - lo);
  }
  pts.back() = hi;
  return pts;
}

namespace {

struct ProbeAccumulator {
  double tol;
  Verdict verdict;
  bool first = true;

  void offer(const Margin& m, std::vector<double> witness) {
    ++verdict.evaluated;
    verdict.scale = std::max(verdict.scale, m.scale);
    if (first || m.value < verdict.min_margin) {
      verdict.min_margin = m.value;
      verdict.witness = std::move(witness);
      first = false;
    }
  }
  Verdict finish() {
    verdict.passed = verdict.min_margin >= -tol * verdict.scale;
    return std::move(verdict);
  }
};

// Enumerates nondecreasing step multiples j_1 <= ... <= j_n, j >= 1, with
// sum <= budget.
void for_each_step_pattern(int n, int budget,
                           const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> js(static_cast<std::size_t>(n), 1);
  std::function<void(int, int, int)> rec = [&](int pos, int min_j, int left) {
    if (pos == n) {
      fn(js);
      return;
    }
    const int remaining = n - pos - 1;
    for (int j = min_j; j + remaining * j <= left; ++j) {
      js[static_cast<std::size_t>(pos)] = j;
      rec(pos + 1, j, left - j);
    }
  };
  rec(0, 1, budget);
}

}  // namespace

Verdict n_convexity_probe(const FunctionSpec& f, double a, double b, int n,
                          const ProbeOptions& options) {
  if (n < 0) {
    throw DomainError("order must be nonnegative");
  }
  const auto grid = probe_grid(f.domain(), a, b, options.grid);
  const auto k = static_cast<std::size_t>(n) + 1;
  if (grid.size() < k) {
    throw DomainError("grid has fewer than n+1 points");
  }
  const auto values = evaluate_all(f, grid);
  const double spacing = kMinSpacingFraction * (b - a);

  ProbeAccumulator acc{options.tol, {}};
  std::vector<double> pts(k);
  std::vector<double> vals(k);
  for (const auto& comb : combinations(grid.size(), k)) {
    for (std::size_t i = 0; i < k; ++i) {
      pts[i] = grid[comb[i]];
      vals[i] = values[comb[i]];
    }
    acc.offer(divided_difference_values(pts, vals, spacing), pts);
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unif(grid.front(), grid.back());
  for (std::size_t t = 0; t < options.random_tuples; ++t) {
    for (auto& p : pts) {
      p = unif(rng);
    }
    std::sort(pts.begin(), pts.end());
    try {
      for (std::size_t i = 0; i < k; ++i) {
        vals[i] = eval_function(f, pts[i]);
      }
      acc.offer(divided_difference_values(pts, vals, spacing), pts);
    } catch (const DegenerateInput&) {
      // coincident draws carry no information
    }
  }
  return acc.finish();
}

Verdict positive_difference_probe(const FunctionSpec& f, double a, double b,
                                  int n, const ProbeOptions& options) {
  if (n < 0) {
    throw DomainError("order must be nonnegative");
  }
  const auto grid = probe_grid(f.domain(), a, b, options.grid);
  const auto values = evaluate_all(f, grid);
  const int last = static_cast<int>(grid.size()) - 1;
  const auto subsets = subsets_by_size(static_cast<std::size_t>(n));

  ProbeAccumulator acc{options.tol, {}};
  for (int i0 = 0; i0 <= last; ++i0) {
    for_each_step_pattern(n, last - i0, [&](const std::vector<int>& js) {
      SignedSum sum;
      for (const auto& subset : subsets) {
        int idx = i0;
        for (std::size_t i : subset) {
          idx += js[i];
        }
        const double sign =
            ((static_cast<std::size_t>(n) - subset.size()) % 2 == 0) ? 1.0 : -1.0;
        sum.add(sign * values[static_cast<std::size_t>(idx)]);
      }
      std::vector<double> witness{grid[static_cast<std::size_t>(i0)]};
      for (int j : js) {
        witness.push_back(grid[static_cast<std::size_t>(i0 + j)] -
                          grid[static_cast<std::size_t>(i0)]);
      }
      acc.offer(sum.margin(), std::move(witness));
    });
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double lo = grid.front();
  const double hi = grid.back();
  std::vector<double> steps(static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < options.random_tuples; ++t) {
    const double base = lo + unif(rng) * (hi - lo);
    const double budget = unif(rng) * (hi - base);
    double total = 0.0;
    std::vector<double> weights(steps.size() + 1);
    for (auto& w : weights) {
      w = -std::log1p(-unif(rng));
      total += w;
    }
    for (std::size_t i = 0; i < steps.size(); ++i) {
      steps[i] = budget * weights[i] / total;
    }
    std::vector<double> witness{base};
    witness.insert(witness.end(), steps.begin(), steps.end());
    acc.offer(iterated_difference(f, base, steps), std::move(witness));
  }
  return acc.finish();
}

// -------------------------------------------------------------- Bernstein

double bernstein_poly(const FunctionSpec& f, int m, double x, Interval on) {
  if (m < 1) {
    throw DomainError("Bernstein degree must be >= 1");
  }
  if (!(x >= on.lo && x <= on.hi)) {
    throw DomainError("Bernstein argument outside its interval");
  }
  const double t = (x - on.lo) / (on.hi - on.lo);
  std::vector<double> c(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) {
    c[static_cast<std::size_t>(i)] =
        eval_function(f, on.lo + (on.hi - on.lo) * i / m);
  }
  // de Casteljau: repeated convex combinations
  for (int level = m; level > 0; --level) {
    for (int i = 0; i < level; ++i) {
      const auto u = static_cast<std::size_t>(i);
      c[u] = (1.0 - t) * c[u] + t * c[u + 1];
    }
  }
  return c[0];
}

FunctionSpec bernstein_approximant(const FunctionSpec& f, int m, Interval on) {
  if (m < 1) {
    throw DomainError("Bernstein degree must be >= 1");
  }
  std::vector<double> nodes(static_cast<std::size_t>(m) + 1);
  for (int i = 0; i <= m; ++i) {
    nodes[static_cast<std::size_t>(i)] =
        eval_function(f, on.lo + (on.hi - on.lo) * i / m);
  }
  auto eval = [nodes, on](double x) {
    const double t = (x - on.lo) / (on.hi - on.lo);
    std::vector<double> c = nodes;
    for (std::size_t level = c.size() - 1; level > 0; --level) {
      for (std::size_t i = 0; i < level; ++i) {
        c[i] = (1.0 - t) * c[i] + t * c[i + 1];
      }
    }
    return c[0];
  };
  return {"bernstein:" + std::to_string(m) + ":" + f.id(), eval,
          Interval{on.lo, on.hi, true, true}, "Bernstein polynomial"};
}

}  // namespace hhv
