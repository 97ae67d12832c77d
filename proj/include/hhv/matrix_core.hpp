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
 * @file matrix_core.hpp
 * Real symmetric matrices and the matrix functions the inequalities are
 * stated in: Loewner comparison, elementary symmetric functions, compound
 * matrices, permanents, immanants and Kronecker (tensor) powers.
 */

#ifndef HHV_MATRIX_CORE_HPP
#define HHV_MATRIX_CORE_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hhv/numeric.hpp"

namespace hhv {

/// Largest dimension any tensor power or mixed tensor may reach.
inline constexpr std::size_t kMaxTensorDim = 4096;
inline constexpr std::size_t kMaxPermanentDim = 14;
inline constexpr std::size_t kMaxNaivePermanentDim = 10;
inline constexpr std::size_t kMaxImmanantDim = 8;
/// Asymmetry above which parsed matrices carry a warning.
inline constexpr double kAsymmetryWarning = 1e-12;

/**
 * A real symmetric matrix. Construction symmetrizes the input as
 * (M + M^T) / 2, which is exact for input that is already symmetric.
 */
class SymMatrix {
 public:
  explicit SymMatrix(const Eigen::MatrixXd& m);

  static SymMatrix identity(std::size_t n);
  static SymMatrix zero(std::size_t n);
  static SymMatrix diagonal(std::span<const double> d);
  static SymMatrix from_rows(const std::vector<std::vector<double>>& rows);

  [[nodiscard]] std::size_t dim() const {
    return static_cast<std::size_t>(m_.rows());
  }
  [[nodiscard]] const Eigen::MatrixXd& matrix() const { return m_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  /// max |m_ij - m_ji| of the matrix passed to the constructor.
  [[nodiscard]] double input_asymmetry() const { return asymmetry_; }

  /// Eigenvalues in ascending order.
  [[nodiscard]] Eigen::VectorXd eigenvalues() const;
  [[nodiscard]] double spectral_radius() const;
  [[nodiscard]] double trace() const { return m_.trace(); }

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator*(double s, const SymMatrix& a);

 private:
  Eigen::MatrixXd m_;
  double asymmetry_ = 0.0;
};

/// Smallest eigenvalue of a difference, judged against the operands' size.
using LoewnerMargin = Margin;

/// lambda_min(A - B) with scale max(rho(A), rho(B)).
LoewnerMargin loewner_margin(const SymMatrix& a, const SymMatrix& b);

/// Smallest eigenvalue of a (symmetric) dense matrix.
double min_eigenvalue(const Eigen::MatrixXd& m);
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m);

/// Product of the eigenvalues. Eigenvalues within 1e-12 * rho of zero count
/// as zero, so singular inputs give exactly 0.
double determinant(const SymMatrix& a);

/// e_k of the eigenvalues, via the product expansion prod_i (1 + lambda_i t).
/// Uses the same zero floor as determinant().
double esym(const SymMatrix& a, std::size_t k);
/// e_k of the eigenvalues through Newton's identities on power sums.
double esym_newton(const SymMatrix& a, std::size_t k);
/// Sum of all k x k principal minors.
double esym_minors(const SymMatrix& a, std::size_t k);
/// e_0 ... e_N of a list of values (product expansion).
std::vector<double> elementary_symmetric(std::span<const double> values);

/// Matrix of k x k minors indexed by lexicographically ordered index sets.
SymMatrix compound_matrix(const SymMatrix& a, std::size_t k);

/// Ryser's inclusion-exclusion formula with Gray-code row-sum updates.
double permanent(const SymMatrix& a);
/// Sum over all permutations; kept as an oracle for small sizes.
double permanent_naive(const SymMatrix& a);

/// Permutation weights for immanants over the full symmetric group.
struct CharacterSpec {
  enum class Kind { kSign, kTrivial, kCustom };
  Kind kind = Kind::kSign;
  /// Used when kind == kCustom; keys are permutations in one-line notation.
  std::map<std::vector<std::size_t>, double> weights;

  static CharacterSpec sign() { return {Kind::kSign, {}}; }
  static CharacterSpec trivial() { return {Kind::kTrivial, {}}; }
  static CharacterSpec custom(std::map<std::vector<std::size_t>, double> w) {
    return {Kind::kCustom, std::move(w)};
  }
  /// Tabulates `fn` on every permutation of n letters.
  static CharacterSpec from_function(
      std::size_t n,
      const std::function<double(std::span<const std::size_t>)>& fn);
};

/// Character of the standard (n-1)-dimensional representation of S_n:
/// number of fixed points minus one.
CharacterSpec standard_character(std::size_t n);

/// sign(sigma) in {+1, -1}
int permutation_sign(std::span<const std::size_t> perm);

/// sum_sigma chi(sigma) prod_i a_{i, sigma(i)}
double immanant(const SymMatrix& a, const CharacterSpec& chi);

SymMatrix kronecker(const SymMatrix& a, const SymMatrix& b);
/// p-fold Kronecker power.
SymMatrix tensor_power(const SymMatrix& a, std::size_t p);
/// X^{(x)k} (x) V (x) X^{(x)l}; zero powers are omitted.
SymMatrix mixed_tensor(const SymMatrix& x, std::size_t k, const SymMatrix& v,
                       std::size_t l);

/**
 * prod_i lambda_i^exponent over the eigenvalues. For positive exponents,
 * eigenvalues within 1e-12 * rho of zero are treated as zero and anything
 * more negative raises NegativeDeterminant; for negative exponents a
 * smallest eigenvalue below 1e-12 * rho raises SingularMatrix.
 */
double det_power(const SymMatrix& a, double exponent);

inline constexpr double kSingularRatio = 1e-12;

struct ParsedMatrix {
  SymMatrix matrix;
  std::optional<std::string> warning;
};

/// Reads consecutive blocks of "N" followed by N rows of N numbers.
std::vector<ParsedMatrix> parse_matrices(std::istream& in);
ParsedMatrix parse_matrix(std::istream& in);
/// Writes the block format with round-trip precision.
std::string format_matrix(const SymMatrix& a);

}  // namespace hhv

#endif  // HHV_MATRIX_CORE_HPP
