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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "hhv/scalar_convexity.hpp"

using namespace hhv;

namespace {

double dd(const FunctionSpec& f, std::vector<double> pts) {
  return divided_difference({std::move(pts), f});
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) {
    r *= i;
  }
  return r;
}

}  // namespace

TEST_CASE("eval_function handles removable singularities and domains") {
  CHECK(eval_function(make_x_over_x_plus_one(), 1.0) == 0.5);
  CHECK(eval_function(make_shifted_cubic(), 3.0) == 1.0);
  const FunctionSpec g = make_x_minus_one_over_log();
  CHECK(eval_function(g, 1.0) == 1.0);
  // the limit agrees with nearby values
  CHECK(eval_function(g, 1.0 + 1e-6) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(eval_function(g, 1.0 - 1e-6) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(eval_function(make_neg_x_log_x(), 0.0) == 0.0);
  CHECK_THROWS_AS(eval_function(make_log1p(), -2.0), DomainError);
  CHECK_THROWS_AS(eval_function(make_power(0.5), -1.0), DomainError);
}

TEST_CASE("catalog ids parse back to the same function") {
  for (const auto& entry : function_catalog()) {
    const FunctionSpec f = catalog_function(entry.function.id());
    const double x = 0.5 * (entry.probe_interval.lo + entry.probe_interval.hi) + 0.1;
    CHECK(eval_function(f, x) == eval_function(entry.function, x));
  }
  CHECK_THROWS_AS(catalog_function("no-such-function"), DomainError);
  CHECK(eval_function(catalog_function("poly:1,2,3"), 2.0) == 17.0);
}

TEST_CASE("divided differences on polynomials") {
  const FunctionSpec sq = make_polynomial({0.0, 0.0, 1.0});
  const FunctionSpec cube = make_polynomial({0.0, 0.0, 0.0, 1.0});
  CHECK(dd(sq, {1.0, 3.0}) == doctest::Approx(4.0));
  CHECK(dd(sq, {0.0, 1.0, 2.0}) == doctest::Approx(1.0));
  CHECK(dd(cube, {0.0, 1.0, 2.0, 3.0}) == doctest::Approx(1.0));
  // degree-2 polynomial has vanishing third divided differences
  CHECK(std::abs(dd(sq, {0.1, 0.4, 0.7, 0.9})) < 1e-12);
  // n-th divided difference of x^n is 1 for any points
  CHECK(dd(cube, {-1.3, 0.2, 0.25, 4.0}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("product form is exactly permutation invariant") {
  const FunctionSpec f = make_exp();
  std::vector<double> pts{0.3, 1.7, 0.9, 1.2};
  const double ref = dd(f, pts);
  std::sort(pts.begin(), pts.end());
  do {
    CHECK(dd(f, pts) == ref);
  } while (std::next_permutation(pts.begin(), pts.end()));
}

TEST_CASE("close points raise DegenerateInput") {
  const FunctionSpec f = make_exp();
  CHECK_THROWS_AS(dd(f, {0.0, 1.0, 1.0}), DegenerateInput);
  DividedDiffInput in{{0.0, 0.5, 0.5 + 1e-3}, f, 1e-2};
  CHECK_THROWS_AS(divided_difference(in), DegenerateInput);
  CHECK_THROWS_AS(divided_difference_recursive(in), DegenerateInput);
}

TEST_CASE("divided differences lie in the derivative range") {
  std::mt19937_64 rng(7);
  for (const auto& entry : function_catalog()) {
    const FunctionSpec& f = entry.function;
    if (!f.has_derivative()) {
      continue;
    }
    const double lo = entry.probe_interval.lo + 0.05;
    const double hi = entry.probe_interval.hi - 0.05;
    std::uniform_real_distribution<double> u(lo, hi);
    for (int n = 1; n <= 3; ++n) {
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> pts(static_cast<std::size_t>(n) + 1);
        for (auto& x : pts) {
          x = u(rng);
        }
        std::sort(pts.begin(), pts.end());
        bool spaced = true;
        for (std::size_t i = 1; i < pts.size(); ++i) {
          spaced = spaced && pts[i] - pts[i - 1] > 0.05;
        }
        if (!spaced) {
          continue;
        }
        double dmin = INFINITY;
        double dmax = -INFINITY;
        for (int s = 0; s <= 400; ++s) {
          const double x = pts.front() + (pts.back() - pts.front()) * s / 400.0;
          if (entry.function.id() == "abs" && std::abs(x) < 1e-9) {
            continue;
          }
          const double d = f.derivative(n, x) / factorial(n);
          dmin = std::min(dmin, d);
          dmax = std::max(dmax, d);
        }
        const double value = dd(f, pts);
        const double slack = 1e-6 * std::max({1.0, std::abs(dmin), std::abs(dmax)});
        INFO(f.id() << " n=" << n);
        CHECK(value >= dmin - slack);
        CHECK(value <= dmax + slack);
      }
    }
  }
}

TEST_CASE("iterated differences") {
  const double s11[] = {1.0, 1.0};
  const double s123[] = {1.0, 2.0, 3.0};
  const double s111[] = {1.0, 1.0, 1.0};
  CHECK(iterated_difference(make_polynomial({0.0, 0.0, 1.0}), 0.0, s11).value ==
        doctest::Approx(2.0));
  CHECK(iterated_difference(make_polynomial({0.0, 0.0, 0.0, 1.0}), 0.0, s123).value ==
        doctest::Approx(36.0));
  const double e = std::exp(1.0);
  const double oracle = 3.0 / e + std::exp(-3.0) - 3.0 / (e * e) - 1.0;
  CHECK(iterated_difference(make_exp_neg(1.0), 0.0, s111).value ==
        doctest::Approx(oracle).epsilon(1e-14));
  CHECK(oracle == doctest::Approx(-0.25258).epsilon(1e-4));

  // exp(x) prod(exp(h_i) - 1)
  const double steps[] = {0.2, 0.5, 0.1, 0.7};
  double closed = std::exp(0.3);
  for (double h : steps) {
    closed *= std::expm1(h);
  }
  const Margin m = iterated_difference(make_exp(), 0.3, steps);
  CHECK(m.value == doctest::Approx(closed).epsilon(1e-12));
  CHECK(m.scale > 0.0);
}

TEST_CASE("n-convexity probe on the shifted cubic") {
  const FunctionSpec f = make_shifted_cubic();
  const Verdict v3 = n_convexity_probe(f, 0.0, 6.0, 3);
  CHECK(v3.passed);
  CHECK(v3.min_margin == doctest::Approx(1.0 / 6.0).epsilon(1e-9));
  const Verdict v1 = n_convexity_probe(f, 0.0, 6.0, 1, {64});
  CHECK_FALSE(v1.passed);
  REQUIRE(v1.witness.size() == 2);
  CHECK(std::abs(0.5 * (v1.witness[0] + v1.witness[1]) - 3.0) < 1.0);
  CHECK(eval_function(f, 3.1) < eval_function(f, 3.0));
}

TEST_CASE("x^2 is both 3-convex and 3-concave") {
  const Verdict v = n_convexity_probe(make_polynomial({0.0, 0.0, 1.0}), 0.0, 1.0, 3);
  CHECK(v.passed);
  CHECK(std::abs(v.min_margin) < 1e-9);
  const Verdict neg = n_convexity_probe(make_polynomial({0.0, 0.0, -1.0}), 0.0, 1.0, 3);
  CHECK(neg.passed);
}

TEST_CASE("positive difference probe") {
  const Verdict e = positive_difference_probe(make_exp(), 0.0, 2.0, 2);
  CHECK(e.passed);
  CHECK(e.min_margin > 0.0);
  const Verdict a = positive_difference_probe(make_abs(), -2.0, 2.0, 2);
  CHECK(a.passed);
  CHECK(std::abs(a.min_margin) < 1e-12);
  const Verdict c = positive_difference_probe(make_polynomial({0.0, 0.0, -1.0}), 0.0, 1.0, 2);
  CHECK_FALSE(c.passed);
  const Verdict m = positive_difference_probe(make_shifted_cubic(), 0.0, 6.0, 1);
  CHECK_FALSE(m.passed);
  REQUIRE(m.witness.size() == 2);
}

TEST_CASE("probes with random tuples stay seeded") {
  ProbeOptions o;
  o.random_tuples = 50;
  o.seed = 3;
  const Verdict a = n_convexity_probe(make_exp_neg(1.0), 0.0, 2.0, 2, o);
  const Verdict b = n_convexity_probe(make_exp_neg(1.0), 0.0, 2.0, 2, o);
  CHECK(a.min_margin == b.min_margin);
  CHECK(a.witness == b.witness);
  CHECK(a.passed);
}

TEST_CASE("Bernstein polynomials") {
  const FunctionSpec one = make_polynomial({1.0});
  const FunctionSpec lin = make_polynomial({0.0, 1.0});
  const FunctionSpec sq = make_polynomial({0.0, 0.0, 1.0});
  for (int m : {1, 5, 10, 20}) {
    CHECK(bernstein_poly(one, m, 0.3) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(bernstein_poly(lin, 10, 0.7) == doctest::Approx(0.7).epsilon(1e-14));
  CHECK(bernstein_poly(sq, 10, 0.5) == doctest::Approx(0.275).epsilon(1e-14));
  for (double x : {0.0, 0.2, 0.9, 1.0}) {
    CHECK(bernstein_poly(sq, 7, x) == doctest::Approx(x * x + x * (1 - x) / 7).epsilon(1e-13));
  }
  // interpolates the endpoints
  CHECK(bernstein_poly(make_exp(), 6, 1.0) == doctest::Approx(std::exp(1.0)));
  CHECK_THROWS_AS(bernstein_poly(sq, 0, 0.5), DomainError);
  CHECK_THROWS_AS(bernstein_poly(sq, 3, 1.5), DomainError);

  const FunctionSpec b = bernstein_approximant(make_exp(), 5, {0.0, 2.0});
  CHECK(eval_function(b, 2.0) == doctest::Approx(std::exp(2.0)));
}
