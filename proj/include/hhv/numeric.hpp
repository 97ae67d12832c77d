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

#ifndef HHV_NUMERIC_HPP
#define HHV_NUMERIC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhv {

/// Relative tolerance applied to every margin unless overridden.
inline constexpr double kDefaultTolerance = 1e-9;

// Error hierarchy. Every failure the library reports derives from Error so
// callers (the CLI in particular) can catch a single type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};
class SingularityError : public Error {
 public:
  using Error::Error;
};
class DegenerateInput : public Error {
 public:
  using Error::Error;
};
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};
class IndexError : public Error {
 public:
  using Error::Error;
};
class SizeLimit : public Error {
 public:
  using Error::Error;
};
class InvalidCharacter : public Error {
 public:
  using Error::Error;
};
class NegativeDeterminant : public Error {
 public:
  using Error::Error;
};
class SingularMatrix : public Error {
 public:
  using Error::Error;
};
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};
class UnknownInequality : public Error {
 public:
  using Error::Error;
};
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A signed left-minus-right value together with the magnitude it is judged
/// against. `scale` is the largest absolute summand (or the largest operand
/// spectral radius for Loewner margins).
struct Margin {
  double value = 0.0;
  double scale = 0.0;

  [[nodiscard]] bool passes(double tol = kDefaultTolerance) const {
    return value >= -tol * scale;
  }
  /// margin / scale, or the raw margin when the scale vanishes.
  [[nodiscard]] double normalized() const {
    return scale > 0.0 ? value / scale : value;
  }
};

/// Neumaier's variant of Kahan summation. Accumulation order is the call
/// order, so results are reproducible.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  [[nodiscard]] double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// Accumulates signed terms and tracks the largest absolute term.
class SignedSum {
 public:
  void add(double term) {
    sum_.add(term);
    scale_ = std::max(scale_, std::abs(term));
  }
  [[nodiscard]] Margin margin() const { return {sum_.value(), scale_}; }

 private:
  CompensatedSum sum_;
  double scale_ = 0.0;
};

/// All subsets of {0..n-1} ordered by increasing size, lexicographic within
/// each size. The empty subset comes first.
std::vector<std::vector<std::size_t>> subsets_by_size(std::size_t n);

/// All k-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);

/// Binomial coefficient as a double (exact for the small arguments used here).
double binomial(std::size_t n, std::size_t k);

/// Relative difference |a-b| / max(|a|,|b|), zero when both vanish.
double relative_difference(double a, double b);

}  // namespace hhv

#endif  // HHV_NUMERIC_HPP
