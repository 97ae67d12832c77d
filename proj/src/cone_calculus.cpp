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

#include "hhv/cone_calculus.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <utility>

namespace hhv {

namespace {

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v[i]);
    if (i > 0) {
      out += ",";
    }
    out.append(buf, res.ptr);
  }
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto piece =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    double v = 0.0;
    auto res = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (piece.empty() || res.ec != std::errc{} ||
        res.ptr != piece.data() + piece.size()) {
      throw DomainError("cannot parse parameter list '" + text + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) {
      break;
    }
    pos = comma + 1;
  }
  return out;
}

double sign_for(std::size_t n, std::size_t subset_size) {
  return ((n - subset_size) % 2 == 0) ? 1.0 : -1.0;
}

}  // namespace

ConePoint::ConePoint(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) {
    throw DomainError("cone point needs at least one coordinate");
  }
  for (double c : coords_) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw DomainError("cone point coordinates must be finite and >= 0");
    }
  }
}

ConePoint ConePoint::zero(std::size_t dim) {
  return ConePoint(std::vector<double>(dim, 0.0));
}

ConePoint operator+(const ConePoint& a, const ConePoint& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("cone points of different dimension");
  }
  std::vector<double> c(a.dim());
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = a.coords_[i] + b.coords_[i];
  }
  return ConePoint(std::move(c));
}

double eval_multi(const MultiFunctionSpec& f, std::span<const double> x) {
  if (f.dim != 0 && x.size() != f.dim) {
    throw DimensionMismatch(f.id + " expects dimension " + std::to_string(f.dim));
  }
  for (double c : x) {
    if (c < 0.0 || (f.open_domain && c == 0.0)) {
      throw DomainError(f.id + ": argument outside the domain");
    }
  }
  const double v = f.eval(x);
  if (!std::isfinite(v)) {
    throw SingularityError(f.id + ": non-finite value");
  }
  return v;
}

// ---------------------------------------------------------------- catalog

MultiFunctionSpec make_min2() {
  MultiFunctionSpec f;
  f.id = "min2";
  f.dim = 2;
  f.eval = [](std::span<const double> x) { return std::min(x[0], x[1]); };
  f.value_at_origin = 0.0;
  f.notes = "concave; positive differences of order 2";
  return f;
}

MultiFunctionSpec make_neg_two_sqrt_xy() {
  MultiFunctionSpec f;
  f.id = "negsqrt2";
  f.dim = 2;
  f.open_domain = true;
  f.eval = [](std::span<const double> x) { return -2.0 * std::sqrt(x[0] * x[1]); };
  f.notes = "convex; lacks positive differences of order 2";
  return f;
}

MultiFunctionSpec make_composed(const FunctionSpec& g, std::vector<double> w) {
  for (double c : w) {
    if (!(c >= 0.0)) {
      throw DomainError("weight vector must lie in the cone");
    }
  }
  MultiFunctionSpec f;
  f.id = "compose:" + g.id() + "@" + join(w);
  f.dim = w.size();
  f.eval = [g, w](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      s += x[i] * w[i];
    }
    return eval_function(g, s);
  };
  if (g.domain().contains(0.0)) {
    f.value_at_origin = eval_function(g, 0.0);
  }
  f.notes = "inherits positive differences from " + g.id();
  return f;
}

MultiFunctionSpec make_riesz(std::vector<double> alphas) {
  for (double a : alphas) {
    if (!(a > 0.0)) {
      throw DomainError("Riesz exponents must be positive");
    }
  }
  MultiFunctionSpec f;
  f.id = "riesz:" + join(alphas);
  f.dim = alphas.size();
  f.open_domain = true;
  f.completely_monotone = true;
  f.eval = [alphas](std::span<const double> x) {
    double r = 1.0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
      r *= std::pow(x[i], -alphas[i]);
    }
    return r;
  };
  f.notes = "completely monotone on the open cone";
  return f;
}

MultiFunctionSpec make_exp_linear(std::vector<double> y) {
  for (double c : y) {
    if (!(c >= 0.0)) {
      throw DomainError("exponential weight must lie in the cone");
    }
  }
  MultiFunctionSpec f;
  f.id = "explin:" + join(y);
  f.dim = y.size();
  f.completely_monotone = true;
  f.value_at_origin = 1.0;
  f.eval = [y](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      s += y[i] * x[i];
    }
    return std::exp(-s);
  };
  f.notes = "completely monotone on the closed cone";
  return f;
}

MultiFunctionSpec multi_catalog_function(const std::string& id) {
  const auto colon = id.find(':');
  const std::string head = id.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : id.substr(colon + 1);
  if (head == "min2") return make_min2();
  if (head == "negsqrt2") return make_neg_two_sqrt_xy();
  if (head == "riesz") return make_riesz(parse_list(tail));
  if (head == "explin") return make_exp_linear(parse_list(tail));
  if (head == "compose") {
    const auto at = tail.rfind('@');
    if (at == std::string::npos) {
      throw DomainError("compose id needs '@weights'");
    }
    return make_composed(catalog_function(tail.substr(0, at)),
                         parse_list(tail.substr(at + 1)));
  }
  throw DomainError("unknown multivariate function id '" + id + "'");
}

// ------------------------------------------------------ alternating sums

Margin cone_iterated_difference(const MultiFunctionSpec& f,
                                const ConePoint& base,
                                std::span<const ConePoint> steps) {
  const std::size_t n = steps.size();
  for (const auto& s : steps) {
    if (s.dim() != base.dim()) {
      throw DimensionMismatch("step and base dimensions differ");
    }
  }
  SignedSum sum;
  std::vector<double> x(base.dim());
  for (const auto& subset : subsets_by_size(n)) {
    for (std::size_t d = 0; d < x.size(); ++d) {
      x[d] = base[d];
    }
    for (std::size_t i : subset) {
      for (std::size_t d = 0; d < x.size(); ++d) {
        x[d] += steps[i][d];
      }
    }
    sum.add(sign_for(n, subset.size()) * eval_multi(f, x));
  }
  return sum.margin();
}

Margin sz_alternating_sum(const MultiFunctionSpec& f,
                          std::span<const ConePoint> points) {
  if (points.empty()) {
    throw DomainError("alternating sum needs at least one point");
  }
  const std::size_t dim = points.front().dim();
  for (const auto& p : points) {
    if (p.dim() != dim) {
      throw DimensionMismatch("points of different dimension");
    }
  }
  SignedSum sum;
  std::vector<double> x(dim);
  for (const auto& subset : subsets_by_size(points.size())) {
    if (subset.empty()) {
      continue;
    }
    std::fill(x.begin(), x.end(), 0.0);
    for (std::size_t i : subset) {
      for (std::size_t d = 0; d < dim; ++d) {
        x[d] += points[i][d];
      }
    }
    const double sign = (subset.size() % 2 == 1) ? 1.0 : -1.0;
    sum.add(sign * eval_multi(f, x));
  }
  return sum.margin();
}

SzBounds sz_double_bound(const MultiFunctionSpec& f,
                         std::span<const ConePoint> points) {
  if (!f.value_at_origin) {
    throw DomainError(f.id + " has no continuous extension to the origin");
  }
  const Margin sum = sz_alternating_sum(f, points);
  const double f0 = *f.value_at_origin;
  const double scale = std::max(sum.scale, std::abs(f0));
  return {{sum.value, scale}, {f0 - sum.value, scale}};
}

PqValues bernstein_pq_values(std::span<const double> alphas) {
  for (double a : alphas) {
    if (!(a >= 0.0)) {
      throw DomainError("exponents must be nonnegative");
    }
  }
  CompensatedSum p;
  CompensatedSum q;
  for (const auto& subset : subsets_by_size(alphas.size())) {
    if (subset.empty()) {
      continue;
    }
    double s = 0.0;
    for (std::size_t i : subset) {
      s += alphas[i];
    }
    const double sign = (subset.size() % 2 == 1) ? 1.0 : -1.0;
    p.add(sign * std::exp(-s));
    q.add(sign * -std::expm1(-s));
  }
  // prod(1 - e^{-a}) through log1p/expm1 to keep small exponents accurate
  double log_prod = 0.0;
  bool zero_factor = false;
  for (double a : alphas) {
    if (a == 0.0) {
      zero_factor = true;
      break;
    }
    log_prod += std::log(-std::expm1(-a));
  }
  PqValues out;
  out.p = p.value();
  out.q = q.value();
  out.q_closed = zero_factor ? 0.0 : std::exp(log_prod);
  out.p_closed = zero_factor ? 1.0 : -std::expm1(log_prod);
  return out;
}

// ------------------------------------------------------------------ probe

Verdict cm_difference_probe(const MultiFunctionSpec& f, const Box& region,
                            int k_max, const ProbeOptions& options) {
  const std::size_t dim = region.lo.size();
  if (dim == 0 || region.hi.size() != dim) {
    throw DimensionMismatch("box bounds differ in dimension");
  }
  if (k_max < 1 || k_max > 4) {
    throw DomainError("k_max must lie in 1..4");
  }
  for (std::size_t d = 0; d < dim; ++d) {
    if (!(region.lo[d] > 0.0) || !(region.hi[d] > region.lo[d])) {
      throw DomainError("probe box must lie strictly inside the open cone");
    }
  }

  // base points: tensor grid capped at about 256 points
  std::size_t per_axis = options.grid;
  while (per_axis > 2 && std::pow(static_cast<double>(per_axis),
                                  static_cast<double>(dim)) > 256.0) {
    --per_axis;
  }
  std::vector<std::vector<double>> bases;
  {
    std::vector<std::size_t> idx(dim, 0);
    while (true) {
      std::vector<double> x(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        const double t =
            static_cast<double>(idx[d]) / static_cast<double>(per_axis - 1);
        x[d] = region.lo[d] + t * (region.hi[d] - region.lo[d]);
      }
      bases.push_back(std::move(x));
      std::size_t d = 0;
      while (d < dim && ++idx[d] == per_axis) {
        idx[d] = 0;
        ++d;
      }
      if (d == dim) {
        break;
      }
    }
  }

  // candidate steps: axes at two lengths plus seeded random cone directions
  double h = region.hi[0] - region.lo[0];
  for (std::size_t d = 1; d < dim; ++d) {
    h = std::min(h, region.hi[d] - region.lo[d]);
  }
  h /= static_cast<double>(std::max<std::size_t>(options.grid, 2) - 1);
  std::vector<ConePoint> candidates;
  for (std::size_t d = 0; d < dim; ++d) {
    for (double len : {h, 2.0 * h}) {
      std::vector<double> v(dim, 0.0);
      v[d] = len;
      candidates.emplace_back(std::move(v));
    }
  }
  const std::size_t n_random = options.random_tuples == 0 ? 4 : options.random_tuples;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (std::size_t r = 0; r < n_random; ++r) {
    std::vector<double> v(dim);
    double norm = 0.0;
    for (auto& c : v) {
      c = unif(rng);
      norm += c * c;
    }
    norm = std::sqrt(norm);
    const double len = h * (1.0 + 3.0 * unif(rng));
    for (auto& c : v) {
      c = norm > 0.0 ? c / norm * len : len;
    }
    candidates.emplace_back(std::move(v));
  }

  Verdict verdict;
  bool first = true;
  for (int k = 1; k <= k_max; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    // multisets of size k from the candidate steps
    std::vector<std::size_t> pick(static_cast<std::size_t>(k), 0);
    while (true) {
      std::vector<ConePoint> steps;
      steps.reserve(pick.size());
      for (std::size_t i : pick) {
        steps.push_back(candidates[i]);
      }
      for (const auto& x : bases) {
        const Margin m = cone_iterated_difference(f, ConePoint(x), steps);
        const double value = sign * m.value;
        ++verdict.evaluated;
        verdict.scale = std::max(verdict.scale, m.scale);
        if (first || value < verdict.min_margin) {
          first = false;
          verdict.min_margin = value;
          verdict.order = k;
          verdict.witness = x;
          for (const auto& s : steps) {
            verdict.witness.insert(verdict.witness.end(), s.coords().begin(),
                                   s.coords().end());
          }
        }
      }
      std::size_t i = pick.size();
      while (i > 0 && pick[i - 1] == candidates.size() - 1) {
        --i;
      }
      if (i == 0) {
        break;
      }
      const std::size_t next = pick[i - 1] + 1;
      for (std::size_t j = i - 1; j < pick.size(); ++j) {
        pick[j] = next;
      }
    }
  }
  verdict.passed = verdict.min_margin >= -options.tol * verdict.scale;
  return verdict;
}

// ------------------------------------------------ double divided differences

namespace {

std::vector<double> product_weights(std::span<const double> pts) {
  const double spread =
      *std::max_element(pts.begin(), pts.end()) - *std::min_element(pts.begin(), pts.end());
  const double min_gap = kMinSpacingFraction * spread;
  std::vector<double> w(pts.size());
  for (std::size_t j = 0; j < pts.size(); ++j) {
    double denom = 1.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k == j) {
        continue;
      }
      const double gap = pts[j] - pts[k];
      if (std::abs(gap) < min_gap || gap == 0.0) {
        throw DegenerateInput("double divided difference points too close");
      }
      denom *= gap;
    }
    w[j] = denom;
  }
  return w;
}

}  // namespace

double double_divided_difference(std::span<const double> xs,
                                 std::span<const double> ys, const Bivariate& f) {
  if (xs.empty() || ys.empty()) {
    throw DegenerateInput("double divided difference needs points on both axes");
  }
  const auto wx = product_weights(xs);
  const auto wy = product_weights(ys);
  std::vector<double> terms;
  terms.reserve(xs.size() * ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) {
      terms.push_back(f(xs[i], ys[j]) / (wx[i] * wy[j]));
    }
  }
  std::sort(terms.begin(), terms.end());
  CompensatedSum sum;
  for (double t : terms) {
    sum.add(t);
  }
  return sum.value();
}

double nested_double_divided_difference(std::span<const double> xs,
                                        std::span<const double> ys,
                                        const Bivariate& f, AxisOrder order) {
  if (xs.empty() || ys.empty()) {
    throw DegenerateInput("double divided difference needs points on both axes");
  }
  std::vector<double> outer;
  std::vector<double> inner;
  if (order == AxisOrder::kXFirst) {
    // inner difference along y for each fixed x, then along x
    for (double x : xs) {
      inner.clear();
      for (double y : ys) {
        inner.push_back(f(x, y));
      }
      outer.push_back(divided_difference_values_recursive(ys, inner, -1.0));
    }
    return divided_difference_values_recursive(xs, outer, -1.0);
  }
  for (double y : ys) {
    inner.clear();
    for (double x : xs) {
      inner.push_back(f(x, y));
    }
    outer.push_back(divided_difference_values_recursive(xs, inner, -1.0));
  }
  return divided_difference_values_recursive(ys, outer, -1.0);
}

}  // namespace hhv
