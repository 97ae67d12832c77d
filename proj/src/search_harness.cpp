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

#include "hhv/search_harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <limits>
#include <thread>

#include "hhv/cone_calculus.hpp"
#include "hhv/matrix_core.hpp"
#include "hhv/matrix_inequalities.hpp"
#include "hhv/scalar_convexity.hpp"

namespace hhv {

namespace {

using Rng = std::mt19937_64;

struct Entry {
  InequalityInfo info;
  std::function<void(const SearchConfig&)> validate;
  std::function<Witness(Rng&, const SearchConfig&, Distribution)> sample;
  std::function<Margin(const Witness&, const SearchConfig&)> evaluate;
  /// Maps perturbed vector inputs back into the sampling region.
  std::function<void(Witness&, const SearchConfig&)> project;
};

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Eigen::MatrixXd symmetrized(const Eigen::MatrixXd& m) {
  return 0.5 * (m + m.transpose());
}

Eigen::MatrixXd normal_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(static_cast<Eigen::Index>(rows),
                    static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      g(i, j) = normal(rng);
    }
  }
  return g;
}

/// Gram factor G with G G^T = m for PSD m.
Eigen::MatrixXd gram_factor(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * root.asDiagonal();
}

/// Lifts the spectrum so that the condition number stays below `limit`.
Eigen::MatrixXd make_definite(Eigen::MatrixXd m, double limit) {
  const Eigen::VectorXd ev = symmetric_eigenvalues(m);
  const double rho = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  if (rho == 0.0) {
    m += Eigen::MatrixXd::Identity(m.rows(), m.cols());
    return m;
  }
  const double floor = 2.0 * rho / limit;
  if (ev(0) < floor) {
    m.diagonal().array() += floor - ev(0);
  }
  return m;
}

std::vector<SymMatrix> as_sym(const Witness& w) {
  std::vector<SymMatrix> out;
  out.reserve(w.matrices.size());
  for (const auto& m : w.matrices) {
    out.emplace_back(m);
  }
  return out;
}

void require_inputs(const Witness& w, std::size_t matrices, std::size_t vectors) {
  if (w.matrices.size() != matrices || w.vectors.size() != vectors) {
    throw DimensionMismatch("witness has " + std::to_string(w.matrices.size()) +
                            " matrices and " + std::to_string(w.vectors.size()) +
                            " vectors; expected " + std::to_string(matrices) +
                            " and " + std::to_string(vectors));
  }
}

void require_tensor_cap(std::size_t dim, std::size_t exponent) {
  double size = 1.0;
  for (std::size_t i = 0; i < exponent; ++i) {
    size *= static_cast<double>(dim);
  }
  if (size > static_cast<double>(kMaxTensorDim)) {
    throw SizeLimit("tensor dimension " + std::to_string(dim) + "^" +
                    std::to_string(exponent) + " exceeds 4096");
  }
}

void require_order(const SearchConfig& c, std::size_t lo, std::size_t hi) {
  if (c.order < lo || c.order > hi) {
    throw IndexError("order must lie in [" + std::to_string(lo) + ", " +
                     std::to_string(hi) + "]");
  }
}

CharacterSpec character_for(const SearchConfig& c) {
  if (c.character == "sign") {
    return CharacterSpec::sign();
  }
  if (c.character == "trivial") {
    return CharacterSpec::trivial();
  }
  if (c.character == "standard") {
    return standard_character(c.dim);
  }
  throw ConfigError("unknown character '" + c.character + "'");
}

std::function<Witness(Rng&, const SearchConfig&, Distribution)> psd_sampler(
    std::function<std::size_t(const SearchConfig&)> count) {
  return [count](Rng& rng, const SearchConfig& c, Distribution d) {
    Witness w;
    const std::size_t n = count(c);
    for (std::size_t i = 0; i < n; ++i) {
      w.matrices.push_back(sample_psd(c.dim, rng, d));
    }
    return w;
  };
}

std::function<std::size_t(const SearchConfig&)> fixed(std::size_t n) {
  return [n](const SearchConfig&) { return n; };
}

// -- scalar helpers ---------------------------------------------------------

struct ScalarSetup {
  FunctionSpec f;
  double lo;
  double hi;
};

ScalarSetup scalar_setup(const std::string& id) {
  for (auto& entry : function_catalog()) {
    if (entry.function.id() == id) {
      return {entry.function, entry.probe_interval.lo, entry.probe_interval.hi};
    }
  }
  FunctionSpec f = catalog_function(id);
  const Interval& d = f.domain();
  const double lo = std::max(d.lo, 0.0);
  return {f, lo, std::min(d.hi, lo + 2.0)};
}

/// Shrinks an interval away from open endpoints of the domain.
std::pair<double, double> sampling_range(const ScalarSetup& s) {
  const Interval& d = s.f.domain();
  const double pad = 1e-9 * (s.hi - s.lo);
  const double lo = (!d.lo_closed && s.lo <= d.lo) ? s.lo + pad : s.lo;
  const double hi = (!d.hi_closed && s.hi >= d.hi) ? s.hi - pad : s.hi;
  return {lo, hi};
}

std::string scalar_id(const SearchConfig& c, const char* fallback) {
  return c.function.empty() ? std::string(fallback) : c.function;
}

std::vector<double> spaced_points(Rng& rng, std::size_t count, double lo,
                                  double hi) {
  const double gap = 1e-3 * (hi - lo);
  std::vector<double> xs(count);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (auto& x : xs) {
      x = uniform(rng, lo, hi);
    }
    std::vector<double> sorted = xs;
    std::sort(sorted.begin(), sorted.end());
    bool ok = true;
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      ok = ok && sorted[i] - sorted[i - 1] >= gap;
    }
    if (ok) {
      return xs;
    }
  }
  throw DegenerateInput("could not draw well separated points");
}

Witness sample_steps(Rng& rng, double lo, double hi, std::size_t n) {
  const double base = uniform(rng, lo, hi);
  std::vector<double> v{base};
  const double room = (hi - base) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    v.push_back(uniform(rng, 0.0, room));
  }
  return {{}, {v}};
}

void project_steps(std::vector<double>& v, double lo, double hi) {
  v[0] = std::clamp(v[0], lo, hi);
  double total = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    v[i] = std::max(v[i], 0.0);
    total += v[i];
  }
  if (v[0] + total > hi && total > 0.0) {
    const double shrink = (hi - v[0]) / total;
    for (std::size_t i = 1; i < v.size(); ++i) {
      v[i] *= shrink;
    }
  }
}

Margin steps_margin(const FunctionSpec& f, const std::vector<double>& v) {
  return iterated_difference(f, v[0], std::span<const double>(v).subspan(1));
}

// -- cone helpers -----------------------------------------------------------

std::vector<ConePoint> cone_points(const Witness& w, std::size_t from) {
  std::vector<ConePoint> out;
  for (std::size_t i = from; i < w.vectors.size(); ++i) {
    out.emplace_back(w.vectors[i]);
  }
  return out;
}

std::vector<double> uniform_vector(Rng& rng, std::size_t dim, double lo,
                                   double hi) {
  std::vector<double> v(dim);
  for (auto& x : v) {
    x = uniform(rng, lo, hi);
  }
  return v;
}

void clamp_vector(std::vector<double>& v, double lo, double hi) {
  for (auto& x : v) {
    x = std::clamp(x, lo, hi);
  }
}

Margin worse(const Margin& a, const Margin& b) {
  return a.normalized() <= b.normalized() ? a : b;
}

std::string multi_id(const SearchConfig& c, const char* fallback) {
  return c.function.empty() ? std::string(fallback) : c.function;
}

// -- registry ---------------------------------------------------------------

void add_matrix_entries(std::vector<Entry>& r) {
  r.push_back(
      {{"op-hh", "operator Hornich-Hlawka inequality for tensor powers",
        "lambda_min of the signed sum of p-th Kronecker powers of A+X, B+X, "
        "C+X, A+B+C+X minus A+B+X, B+C+X, C+A+X, X (uses --dim, --p)"},
       [](const SearchConfig& c) {
         if (c.power < 1) {
           throw IndexError("p must be >= 1");
         }
         require_tensor_cap(c.dim, c.power);
       },
       psd_sampler(fixed(4)),
       [](const Witness& w, const SearchConfig& c) {
         require_inputs(w, 4, 0);
         const auto m = as_sym(w);
         return operator_hh_margin(m[0], m[1], m[2], m[3], c.power);
       },
       nullptr});

  r.push_back(
      {{"det-diff", "positive differences of every order for det",
        "Delta_{A_1}...Delta_{A_n} det(X) (uses --dim, --order)"},
       [](const SearchConfig& c) { require_order(c, 1, 10); },
       psd_sampler([](const SearchConfig& c) { return c.order + 1; }),
       [](const Witness& w, const SearchConfig& c) {
         require_inputs(w, c.order + 1, 0);
         const auto m = as_sym(w);
         return det_alternating_difference(
             std::span<const SymMatrix>(m).first(c.order), m.back());
       },
       nullptr});

  r.push_back(
      {{"det-hh", "third-order difference of det with a base point",
        "the eight-term Hornich-Hlawka expansion of det (uses --dim)"},
       [](const SearchConfig&) {},
       psd_sampler(fixed(4)),
       [](const Witness& w, const SearchConfig&) {
         require_inputs(w, 4, 0);
         const auto m = as_sym(w);
         return det_hlawka_with_base_margin(m[0], m[1], m[2], m[3]);
       },
       nullptr});

  r.push_back(
      {{"esym-hlawka",
        "Hornich-Hlawka inequality for elementary symmetric functions",
        "e_k of eigenvalues over A, B, C and their sums (uses --dim, --k)"},
       [](const SearchConfig& c) {
         if (c.k > c.dim) {
           throw IndexError("k must not exceed dim");
         }
       },
       psd_sampler(fixed(3)),
       [](const Witness& w, const SearchConfig& c) {
         require_inputs(w, 3, 0);
         const auto m = as_sym(w);
         return esym_hlawka_margin(m[0], m[1], m[2], c.k);
       },
       nullptr});

  r.push_back(
      {{"imm-hh", "third-order positive differences of immanants",
        "immanant Hornich-Hlawka with base X (uses --dim, --character)"},
       [](const SearchConfig& c) {
         if (c.dim > kMaxImmanantDim) {
           throw SizeLimit("immanants limited to dim <= 8");
         }
         character_for(c);
       },
       psd_sampler(fixed(4)),
       [](const Witness& w, const SearchConfig& c) {
         require_inputs(w, 4, 0);
         const auto m = as_sym(w);
         return immanant_hh_margin(m[0], m[1], m[2], m[3], character_for(c));
       },
       nullptr});

  r.push_back(
      {{"lemma-main", "mixed tensor Hornich-Hlawka lemma",
        "X^k(x)V(x)X^l + (X+Y+Z)^k(x)V(x)(X+Y+Z)^l - (X+Y)^k(x)V(x)(X+Y)^l - "
        "(X+Z)^k(x)V(x)(X+Z)^l (uses --dim, --k, --p as l)"},
       [](const SearchConfig& c) {
         require_tensor_cap(c.dim, c.k + c.power + 1);
       },
       psd_sampler(fixed(4)),
       [](const Witness& w, const SearchConfig& c) {
         require_inputs(w, 4, 0);
         const auto m = as_sym(w);
         return lemma_main_margin(m[0], m[1], m[2], m[3], c.k, c.power);
       },
       nullptr});

  r.push_back(
      {{"sk-general", "alternating tensor-power sums over subset sums",
        "(S_n + S_{n-2} + ...) - (S_{n-1} + ...) for p-th tensor powers "
        "(uses --dim, --order, --p)"},
       [](const SearchConfig& c) {
         require_order(c, 1, 6);
         if (c.power < 1) {
           throw IndexError("p must be >= 1");
         }
         require_tensor_cap(c.dim, c.power);
       },
       psd_sampler([](const SearchConfig& c) { return c.order + 1; }),
       [](const Witness& w, const SearchConfig& c) {
         require_inputs(w, c.order + 1, 0);
         const auto m = as_sym(w);
         return generalized_sk_margin(
             std::span<const SymMatrix>(m).first(c.order), m.back(), c.power);
       },
       nullptr});

  const auto require_2x2 = [](const SearchConfig& c) {
    if (c.dim != 2) {
      throw DimensionMismatch("this inequality is stated for 2x2 matrices");
    }
  };
  r.push_back(
      {{"serre-rev", "reverse Hornich-Hlawka inequality for det^{1/2}",
        "forward det^{1/2} Hornich-Hlawka sum negated, 2x2 only"},
       require_2x2,
       psd_sampler(fixed(3)),
       [](const Witness& w, const SearchConfig&) {
         require_inputs(w, 3, 0);
         const auto m = as_sym(w);
         return serre_reverse_margin(m[0], m[1], m[2]);
       },
       nullptr});

  r.push_back(
      {{"sqrt-det-forward",
        "forward Hornich-Hlawka sum for det^{1/2} (not expected to hold)",
        "the forward det^{1/2} sum on 2x2 matrices", true},
       require_2x2,
       psd_sampler(fixed(3)),
       [](const Witness& w, const SearchConfig&) {
         require_inputs(w, 3, 0);
         const auto m = as_sym(w);
         return sqrt_det_forward_margin(m[0], m[1], m[2]);
       },
       nullptr});

  r.push_back(
      {{"minkowski-det", "Minkowski-type inequality for det^{1/n}",
        "det^{1/n}(A+B)det^{1/n}(A+C) - det^{1/n}B det^{1/n}C - "
        "det^{1/n}A det^{1/n}(A+B+C) (uses --dim)"},
       [](const SearchConfig&) {},
       psd_sampler(fixed(3)),
       [](const Witness& w, const SearchConfig&) {
         require_inputs(w, 3, 0);
         const auto m = as_sym(w);
         return minkowski_like_margin(m[0], m[1], m[2]);
       },
       nullptr});

  r.push_back(
      {{"det-rho", "alternating sums of det^{-rho}",
        "sum over nonempty S of (-1)^{|S|-1} det^{-rho}(A_S) on strictly "
        "definite samples (uses --dim, --order, --rho, cond_limit)"},
       [](const SearchConfig& c) {
         require_order(c, 1, 8);
         if (!(c.rho >= 0.0)) {
           throw ConfigError("rho must be nonnegative");
         }
         if (!(c.cond_limit > 1.0)) {
           throw ConfigError("cond_limit must exceed 1");
         }
       },
       [](Rng& rng, const SearchConfig& c, Distribution d) {
         Witness w;
         for (std::size_t i = 0; i < c.order; ++i) {
           w.matrices.push_back(
               symmetrized(make_definite(sample_psd(c.dim, rng, d), c.cond_limit)));
         }
         return w;
       },
       [](const Witness& w, const SearchConfig& c) {
         require_inputs(w, c.order, 0);
         return detrho_alternating_sum(as_sym(w), c.rho);
       },
       nullptr});

  r.push_back(
      {{"va", "binomial Vasic-Adamovic inequality",
        "C(n-2,k-1) sum phi(x_i) + C(n-2,k-2) phi(sum x_i) - sum_{|S|=k} "
        "phi(x_S); --function norm (vectors in R^dim) or shifted-det "
        "(PSD matrices, last one is the shift T) (uses --order, --k)"},
       [](const SearchConfig& c) {
         if (c.k < 2 || c.k >= c.order) {
           throw IndexError("va needs 2 <= k < order");
         }
         if (!c.function.empty() && c.function != "norm" &&
             c.function != "shifted-det") {
           throw ConfigError("va functional must be norm or shifted-det");
         }
       },
       [](Rng& rng, const SearchConfig& c, Distribution d) {
         Witness w;
         if (c.function == "shifted-det") {
           for (std::size_t i = 0; i <= c.order; ++i) {
             w.matrices.push_back(sample_psd(c.dim, rng, d));
           }
           return w;
         }
         std::normal_distribution<double> normal(0.0, 1.0);
         for (std::size_t i = 0; i < c.order; ++i) {
           std::vector<double> v(c.dim);
           for (auto& x : v) {
             x = normal(rng);
           }
           w.vectors.push_back(v);
         }
         return w;
       },
       [](const Witness& w, const SearchConfig& c) {
         if (c.function == "shifted-det") {
           require_inputs(w, c.order + 1, 0);
           const auto m = as_sym(w);
           return va_margin(std::span<const SymMatrix>(m).first(c.order), c.k,
                            shifted_det_functional(m.back()));
         }
         require_inputs(w, 0, c.order);
         std::vector<Eigen::VectorXd> xs;
         for (const auto& v : w.vectors) {
           xs.push_back(Eigen::Map<const Eigen::VectorXd>(
               v.data(), static_cast<Eigen::Index>(v.size())));
         }
         return va_margin(std::span<const Eigen::VectorXd>(xs), c.k,
                          [](const Eigen::VectorXd& x) { return x.norm(); });
       },
       nullptr});
}

void add_scalar_entries(std::vector<Entry>& r) {
  r.push_back(
      {{"n-convex", "n-convexity via divided differences",
        "n-th divided difference on n+1 random points of the probe interval "
        "(uses --function, default exp, --order)"},
       [](const SearchConfig& c) {
         require_order(c, 1, 8);
         scalar_setup(scalar_id(c, "exp"));
       },
       [](Rng& rng, const SearchConfig& c, Distribution) {
         const auto [lo, hi] = sampling_range(scalar_setup(scalar_id(c, "exp")));
         return Witness{{}, {spaced_points(rng, c.order + 1, lo, hi)}};
       },
       [](const Witness& w, const SearchConfig& c) {
         require_inputs(w, 0, 1);
         const ScalarSetup s = scalar_setup(scalar_id(c, "exp"));
         std::vector<double> values;
         for (double x : w.vectors[0]) {
           values.push_back(eval_function(s.f, x));
         }
         return divided_difference_values(w.vectors[0], values, -1.0);
       },
       nullptr});

  r.push_back(
      {{"pos-diff", "positive differences of order n",
        "Delta_{h_1}...Delta_{h_n} f(x) with h_i >= 0 inside the probe "
        "interval (uses --function, default exp, --order)"},
       [](const SearchConfig& c) {
         require_order(c, 1, 10);
         scalar_setup(scalar_id(c, "exp"));
       },
       [](Rng& rng, const SearchConfig& c, Distribution) {
         const auto [lo, hi] = sampling_range(scalar_setup(scalar_id(c, "exp")));
         return sample_steps(rng, lo, hi, c.order);
       },
       [](const Witness& w, const SearchConfig& c) {
         require_inputs(w, 0, 1);
         return steps_margin(scalar_setup(scalar_id(c, "exp")).f, w.vectors[0]);
       },
       [](Witness& w, const SearchConfig& c) {
         const auto [lo, hi] = sampling_range(scalar_setup(scalar_id(c, "exp")));
         project_steps(w.vectors[0], lo, hi);
       }});

  r.push_back(
      {{"cm", "complete monotonicity on the cone through differences",
        "(-1)^k Delta_{v_1}...Delta_{v_k} f(x), x in [0.5,2]^d, v_i in "
        "[0,1]^d (uses --function, default explin:1,2, --order <= 4)"},
       [](const SearchConfig& c) {
         require_order(c, 1, 4);
         multi_catalog_function(multi_id(c, "explin:1,2"));
       },
       [](Rng& rng, const SearchConfig& c, Distribution) {
         const auto f = multi_catalog_function(multi_id(c, "explin:1,2"));
         Witness w;
         w.vectors.push_back(uniform_vector(rng, f.dim, 0.5, 2.0));
         for (std::size_t i = 0; i < c.order; ++i) {
           w.vectors.push_back(uniform_vector(rng, f.dim, 0.0, 1.0));
         }
         return w;
       },
       [](const Witness& w, const SearchConfig& c) {
         require_inputs(w, 0, c.order + 1);
         const auto f = multi_catalog_function(multi_id(c, "explin:1,2"));
         const auto steps = cone_points(w, 1);
         Margin m = cone_iterated_difference(f, ConePoint(w.vectors[0]), steps);
         if (c.order % 2 == 1) {
           m.value = -m.value;
         }
         return m;
       },
       [](Witness& w, const SearchConfig&) {
         clamp_vector(w.vectors[0], 0.5, 2.0);
         for (std::size_t i = 1; i < w.vectors.size(); ++i) {
           clamp_vector(w.vectors[i], 0.0, 1.0);
         }
       }});

  r.push_back(
      {{"sz-bound", "Sendov-Zitikis double bound",
        "0 <= sum over nonempty S of (-1)^{|S|-1} f(x_S) <= f(0), reporting "
        "the tighter side (uses --function, default explin:1,1, --order)"},
       [](const SearchConfig& c) {
         require_order(c, 1, 10);
         multi_catalog_function(multi_id(c, "explin:1,1"));
       },
       [](Rng& rng, const SearchConfig& c, Distribution) {
         const auto f = multi_catalog_function(multi_id(c, "explin:1,1"));
         const double lo = f.open_domain ? 1e-3 : 0.0;
         Witness w;
         for (std::size_t i = 0; i < c.order; ++i) {
           w.vectors.push_back(uniform_vector(rng, f.dim, lo, 2.0));
         }
         return w;
       },
       [](const Witness& w, const SearchConfig& c) {
         require_inputs(w, 0, c.order);
         const auto f = multi_catalog_function(multi_id(c, "explin:1,1"));
         const auto pts = cone_points(w, 0);
         if (!f.value_at_origin) {
           return sz_alternating_sum(f, pts);
         }
         const SzBounds b = sz_double_bound(f, pts);
         return worse(b.lower, b.upper);
       },
       nullptr});

  r.push_back(
      {{"pq", "product identities of the alternating exponential sums",
        "minus the larger relative gap between P, Q and 1 - prod(1 - e^{-a}), "
        "prod(1 - e^{-a}); a_i in [0.1, 5] (uses --order)"},
       [](const SearchConfig& c) { require_order(c, 2, 16); },
       [](Rng& rng, const SearchConfig& c, Distribution) {
         return Witness{{}, {uniform_vector(rng, c.order, 0.1, 5.0)}};
       },
       [](const Witness& w, const SearchConfig&) {
         require_inputs(w, 0, 1);
         const PqValues v = bernstein_pq_values(w.vectors[0]);
         const double gap = std::max(relative_difference(v.p, v.p_closed),
                                     relative_difference(v.q, v.q_closed));
         return Margin{-gap, 1.0};
       },
       nullptr});

  r.push_back(
      {{"min2-order2",
        "second-order positive differences of min(x, y) (not expected to hold)",
        "Delta_A Delta_B min(X) with X, A, B in [0,2]^2; holds only when A and "
        "B lie on different axes",
        true},
       [](const SearchConfig&) {},
       [](Rng& rng, const SearchConfig&, Distribution) {
         Witness w;
         for (int i = 0; i < 3; ++i) {
           w.vectors.push_back(uniform_vector(rng, 2, 0.0, 2.0));
         }
         return w;
       },
       [](const Witness& w, const SearchConfig&) {
         require_inputs(w, 0, 3);
         return cone_iterated_difference(make_min2(), ConePoint(w.vectors[0]),
                                         cone_points(w, 1));
       },
       [](Witness& w, const SearchConfig&) {
         for (auto& v : w.vectors) {
           clamp_vector(v, 0.0, 2.0);
         }
       }});

  r.push_back(
      {{"double-diff", "application order of double divided differences",
        "minus |x-first - y-first| nested divided difference of order "
        "(n, n) on [0.5, 2]^2 (uses --function, default explin:1,2, --order)"},
       [](const SearchConfig& c) {
         require_order(c, 1, 6);
         if (multi_catalog_function(multi_id(c, "explin:1,2")).dim != 2) {
           throw DimensionMismatch("double divided differences need dim 2");
         }
       },
       [](Rng& rng, const SearchConfig& c, Distribution) {
         return Witness{{},
                        {spaced_points(rng, c.order + 1, 0.5, 2.0),
                         spaced_points(rng, c.order + 1, 0.5, 2.0)}};
       },
       [](const Witness& w, const SearchConfig& c) {
         require_inputs(w, 0, 2);
         const auto f = multi_catalog_function(multi_id(c, "explin:1,2"));
         const Bivariate g = [&f](double x, double y) {
           const double p[] = {x, y};
           return eval_multi(f, p);
         };
         const double a = nested_double_divided_difference(
             w.vectors[0], w.vectors[1], g, AxisOrder::kXFirst);
         const double b = nested_double_divided_difference(
             w.vectors[0], w.vectors[1], g, AxisOrder::kYFirst);
         return Margin{-std::abs(a - b), std::max(std::abs(a), std::abs(b))};
       },
       nullptr});
}

void add_counterexample_entries(std::vector<Entry>& r) {
  r.push_back(
      {{"popoviciu-exp",
        "Popoviciu sum with the f(0) term for e^{-x} (not expected to hold)",
        "f(x)+f(y)+f(z)+f(x+y+z) - f(x+y)-f(y+z)-f(z+x) - f(0), f = e^{-x}, "
        "x, y, z in [0,3]",
        true},
       [](const SearchConfig&) {},
       [](Rng& rng, const SearchConfig&, Distribution) {
         return Witness{{}, {uniform_vector(rng, 3, 0.0, 3.0)}};
       },
       [](const Witness& w, const SearchConfig&) {
         require_inputs(w, 0, 1);
         return iterated_difference(make_exp_neg(1.0), 0.0, w.vectors[0]);
       },
       [](Witness& w, const SearchConfig&) { clamp_vector(w.vectors[0], 0.0, 3.0); }});

  r.push_back(
      {{"negsqrt-order2",
        "order-2 positive differences of -2 sqrt(xy) (not expected to hold)",
        "Delta_A Delta_B f(X), f = -2 sqrt(xy), X in [0.001, 0.1]^2, A, B in "
        "[0,3]^2",
        true},
       [](const SearchConfig&) {},
       [](Rng& rng, const SearchConfig&, Distribution) {
         Witness w;
         w.vectors.push_back(uniform_vector(rng, 2, 1e-3, 0.1));
         w.vectors.push_back(uniform_vector(rng, 2, 0.0, 3.0));
         w.vectors.push_back(uniform_vector(rng, 2, 0.0, 3.0));
         return w;
       },
       [](const Witness& w, const SearchConfig&) {
         require_inputs(w, 0, 3);
         return cone_iterated_difference(make_neg_two_sqrt_xy(),
                                         ConePoint(w.vectors[0]),
                                         cone_points(w, 1));
       },
       [](Witness& w, const SearchConfig&) {
         clamp_vector(w.vectors[0], 1e-3, 0.1);
         clamp_vector(w.vectors[1], 0.0, 3.0);
         clamp_vector(w.vectors[2], 0.0, 3.0);
       }});

  r.push_back(
      {{"cubic-monotone",
        "monotonicity of 1-(x-3)+(x-3)^3/6 (not expected to hold)",
        "f(x+h) - f(x) with h >= 0 on [0, 6]", true},
       [](const SearchConfig&) {},
       [](Rng& rng, const SearchConfig&, Distribution) {
         return sample_steps(rng, 0.0, 6.0, 1);
       },
       [](const Witness& w, const SearchConfig&) {
         require_inputs(w, 0, 1);
         return steps_margin(make_shifted_cubic(), w.vectors[0]);
       },
       [](Witness& w, const SearchConfig&) { project_steps(w.vectors[0], 0.0, 6.0); }});
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> r;
    add_matrix_entries(r);
    add_scalar_entries(r);
    add_counterexample_entries(r);
    return r;
  }();
  return entries;
}

const Entry* find_entry(std::string_view id) {
  for (const auto& e : registry()) {
    if (e.info.id == id) {
      return &e;
    }
  }
  return nullptr;
}

const Entry& entry_or_throw(std::string_view id) {
  const Entry* e = find_entry(id);
  if (e == nullptr) {
    throw UnknownInequality("unknown inequality '" + std::string(id) + "'");
  }
  return *e;
}

void validate_common(const SearchConfig& c) {
  if (c.trials < 1) {
    throw ConfigError("trials must be >= 1");
  }
  if (c.dim < 1) {
    throw ConfigError("dim must be >= 1");
  }
  if (!(c.tol >= 0.0)) {
    throw ConfigError("tolerance must be nonnegative");
  }
}

Witness sample_with(const Entry& e, const SearchConfig& c, std::uint64_t t) {
  Rng rng = trial_rng(c.seed, t);
  return e.sample(rng, c, trial_distribution(c.distribution, t));
}

struct Best {
  bool set = false;
  Margin margin;
  std::size_t trial = 0;
  Witness witness;
  std::size_t failures = 0;

  void offer(const Margin& m, std::size_t t, const Witness& w) {
    const double n = m.normalized();
    const double cur = margin.normalized();
    if (!set || n < cur || (n == cur && t < trial)) {
      set = true;
      margin = m;
      trial = t;
      witness = w;
    }
  }
};

std::optional<Margin> try_evaluate(const Entry& e, const Witness& w,
                                   const SearchConfig& c) {
  try {
    return e.evaluate(w, c);
  } catch (const Error&) {
    return std::nullopt;
  }
}

void refine(const Entry& e, const SearchConfig& c, Witness& w, Margin& m) {
  std::vector<Eigen::MatrixXd> factors;
  std::vector<double> mstep;
  for (const auto& a : w.matrices) {
    factors.push_back(gram_factor(a));
    mstep.push_back(0.25 * factors.back().cwiseAbs().maxCoeff() + 1e-3);
  }
  double vstep = 0.5;
  const auto accept = [&](Witness& candidate) {
    if (e.project) {
      e.project(candidate, c);
    }
    const auto cm = try_evaluate(e, candidate, c);
    if (cm && cm->value < m.value) {
      w = candidate;
      m = *cm;
      return true;
    }
    return false;
  };
  for (int step = 0; step < kRefinementSteps; ++step) {
    for (std::size_t i = 0; i < w.vectors.size(); ++i) {
      for (std::size_t j = 0; j < w.vectors[i].size(); ++j) {
        for (double dir : {1.0, -1.0}) {
          Witness cand = w;
          cand.vectors[i][j] += dir * vstep;
          if (accept(cand)) {
            break;
          }
        }
      }
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      for (Eigen::Index k = 0; k < factors[i].size(); ++k) {
        for (double dir : {1.0, -1.0}) {
          Eigen::MatrixXd g = factors[i];
          g(k) += dir * mstep[i];
          Witness cand = w;
          cand.matrices[i] = symmetrized(g * g.transpose());
          if (accept(cand)) {
            factors[i] = g;
            break;
          }
        }
      }
      mstep[i] *= 0.5;
    }
    vstep *= 0.5;
  }
}

}  // namespace

std::string distribution_name(Distribution d) {
  switch (d) {
    case Distribution::kMixed:
      return "mixed";
    case Distribution::kGram:
      return "gram";
    case Distribution::kGramShift:
      return "gram+shift";
    case Distribution::kDiagonal:
      return "diagonal";
    case Distribution::kBoundary:
      return "boundary";
  }
  return "mixed";
}

Distribution parse_distribution(std::string_view name) {
  for (Distribution d : {Distribution::kMixed, Distribution::kGram,
                         Distribution::kGramShift, Distribution::kDiagonal,
                         Distribution::kBoundary}) {
    if (distribution_name(d) == name) {
      return d;
    }
  }
  throw ConfigError("unknown distribution '" + std::string(name) + "'");
}

Distribution trial_distribution(Distribution d, std::uint64_t t) {
  if (d != Distribution::kMixed) {
    return d;
  }
  switch (t % 4) {
    case 2:
      return Distribution::kGramShift;
    case 3:
      return Distribution::kBoundary;
    default:
      return Distribution::kGram;
  }
}

const std::vector<InequalityInfo>& list_inequalities() {
  static const std::vector<InequalityInfo> infos = [] {
    std::vector<InequalityInfo> out;
    for (const auto& e : registry()) {
      out.push_back(e.info);
    }
    return out;
  }();
  return infos;
}

const InequalityInfo& inequality_info(std::string_view id) {
  return entry_or_throw(id).info;
}

bool is_registered(std::string_view id) { return find_entry(id) != nullptr; }

void validate_config(std::string_view id, const SearchConfig& config) {
  const Entry& e = entry_or_throw(id);
  validate_common(config);
  e.validate(config);
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t t) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(t),
                    static_cast<std::uint32_t>(t >> 32)};
  return std::mt19937_64(seq);
}

Eigen::MatrixXd sample_psd(std::size_t n, std::mt19937_64& rng,
                           Distribution d) {
  if (n < 1) {
    throw ConfigError("matrix dimension must be >= 1");
  }
  switch (d) {
    case Distribution::kDiagonal: {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        m(i, i) = uniform(rng, 0.0, 2.0);
      }
      return m;
    }
    case Distribution::kBoundary: {
      const std::size_t width =
          n == 1 ? 0
                 : std::uniform_int_distribution<std::size_t>(1, n - 1)(rng);
      if (width == 0) {
        return Eigen::MatrixXd::Zero(1, 1);
      }
      const Eigen::MatrixXd g = normal_matrix(rng, n, width);
      return symmetrized(g * g.transpose());
    }
    case Distribution::kGramShift: {
      const Eigen::MatrixXd g = normal_matrix(rng, n, n);
      Eigen::MatrixXd m = symmetrized(g * g.transpose());
      m.diagonal().array() += uniform(rng, 1e-3, 1.0);
      return m;
    }
    case Distribution::kMixed:
    case Distribution::kGram:
      break;
  }
  const Eigen::MatrixXd g = normal_matrix(rng, n, n);
  return symmetrized(g * g.transpose());
}

Witness sample_inputs(std::string_view id, const SearchConfig& config,
                      std::uint64_t trial) {
  const Entry& e = entry_or_throw(id);
  validate_config(id, config);
  return sample_with(e, config, trial);
}

Margin evaluate_inputs(std::string_view id, const Witness& w,
                       const SearchConfig& config) {
  const Entry& e = entry_or_throw(id);
  validate_config(id, config);
  return e.evaluate(w, config);
}

CampaignReport run_campaign(std::string_view id, const SearchConfig& config) {
  const Entry& e = entry_or_throw(id);
  validate_config(id, config);
  const auto start = std::chrono::steady_clock::now();

  std::size_t workers = config.threads;
  if (workers == 0) {
    workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  }
  workers = std::min(workers, config.trials);

  std::vector<Best> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  const auto work = [&](std::size_t w) {
    try {
      for (std::size_t t = w; t < config.trials; t += workers) {
        Witness input = sample_with(e, config, t);
        const Margin m = e.evaluate(input, config);
        if (!m.passes(config.tol)) {
          ++partial[w].failures;
        }
        partial[w].offer(m, t, input);
      }
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back(work, w);
    }
    for (auto& th : pool) {
      th.join();
    }
  }
  for (const auto& err : errors) {
    if (err) {
      std::rethrow_exception(err);
    }
  }

  Best best;
  for (auto& p : partial) {
    best.failures += p.failures;
    if (p.set) {
      best.offer(p.margin, p.trial, p.witness);
    }
  }

  CampaignReport report;
  report.inequality = std::string(id);
  report.config = config;
  report.trials = config.trials;
  report.min_margin = best.margin.value;
  report.scale = best.margin.scale;
  report.witness_trial = best.trial;
  report.witness = std::move(best.witness);
  report.failures = best.failures;
  report.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

std::optional<SearchResult> search_counterexample(std::string_view id,
                                                  const SearchConfig& config) {
  const Entry* e = find_entry(id);
  if (e == nullptr) {
    throw UnknownTarget("unknown search target '" + std::string(id) + "'");
  }
  validate_config(id, config);
  for (std::size_t t = 0; t < config.trials; ++t) {
    Witness w = sample_with(*e, config, t);
    Margin m = e->evaluate(w, config);
    if (m.value < -10.0 * config.tol * m.scale) {
      SearchResult result;
      result.trial = t;
      result.first_margin = m.value;
      refine(*e, config, w, m);
      result.witness = std::move(w);
      result.margin = m;
      return result;
    }
  }
  return std::nullopt;
}

}  // namespace hhv
