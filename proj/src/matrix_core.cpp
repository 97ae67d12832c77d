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

#include "hhv/matrix_core.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <string>

namespace hhv {

namespace {

using Index = Eigen::Index;

Index idx(std::size_t i) { return static_cast<Index>(i); }

void require_same_dim(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("matrices of dimension " + std::to_string(a.dim()) +
                            " and " + std::to_string(b.dim()));
  }
}

std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    r *= base;
    if (r > kMaxTensorDim) {
      throw SizeLimit("tensor dimension exceeds " + std::to_string(kMaxTensorDim));
    }
  }
  return r;
}

Eigen::MatrixXd principal_submatrix(const Eigen::MatrixXd& m,
                                    const std::vector<std::size_t>& rows,
                                    const std::vector<std::size_t>& cols) {
  Eigen::MatrixXd s(idx(rows.size()), idx(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      s(idx(i), idx(j)) = m(idx(rows[i]), idx(cols[j]));
    }
  }
  return s;
}

double small_determinant(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) {
    return 1.0;
  }
  return m.partialPivLu().determinant();
}

/// Eigenvalues with those within kSingularRatio * rho of zero set to zero.
Eigen::VectorXd snapped_eigenvalues(const SymMatrix& a) {
  Eigen::VectorXd ev = a.eigenvalues();
  const double floor = kSingularRatio * ev.cwiseAbs().maxCoeff();
  for (Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= floor) {
      ev(i) = 0.0;
    }
  }
  return ev;
}

}  // namespace

// --------------------------------------------------------------- SymMatrix

SymMatrix::SymMatrix(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw DimensionMismatch("symmetric matrix must be square with N >= 1");
  }
  if (!m.allFinite()) {
    throw DomainError("matrix entries must be finite");
  }
  asymmetry_ = (m - m.transpose()).cwiseAbs().maxCoeff();
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::identity(std::size_t n) {
  return SymMatrix(Eigen::MatrixXd::Identity(idx(n), idx(n)));
}

SymMatrix SymMatrix::zero(std::size_t n) {
  return SymMatrix(Eigen::MatrixXd::Zero(idx(n), idx(n)));
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(idx(d.size()), idx(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) {
    m(idx(i), idx(i)) = d[i];
  }
  return SymMatrix(m);
}

SymMatrix SymMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  Eigen::MatrixXd m(idx(rows.size()), idx(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw DimensionMismatch("matrix rows must have N entries");
    }
    for (std::size_t j = 0; j < rows.size(); ++j) {
      m(idx(i), idx(j)) = rows[i][j];
    }
  }
  return SymMatrix(m);
}

Eigen::VectorXd SymMatrix::eigenvalues() const {
  return symmetric_eigenvalues(m_);
}

double SymMatrix::spectral_radius() const {
  return eigenvalues().cwiseAbs().maxCoeff();
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b);
  return SymMatrix(a.m_ + b.m_);
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b);
  return SymMatrix(a.m_ - b.m_);
}

SymMatrix operator*(double s, const SymMatrix& a) { return SymMatrix(s * a.m_); }

// --------------------------------------------------------------- spectra

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error("symmetric eigensolver failed to converge");
  }
  return solver.eigenvalues();
}

double min_eigenvalue(const Eigen::MatrixXd& m) {
  return symmetric_eigenvalues(m)(0);
}

LoewnerMargin loewner_margin(const SymMatrix& a, const SymMatrix& b) {
  require_same_dim(a, b);
  const double value = min_eigenvalue(a.matrix() - b.matrix());
  return {value, std::max(a.spectral_radius(), b.spectral_radius())};
}

double determinant(const SymMatrix& a) { return snapped_eigenvalues(a).prod(); }

std::vector<double> elementary_symmetric(std::span<const double> values) {
  // coefficients of prod (1 + v t), built one factor at a time
  std::vector<double> e(values.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t k = i + 1; k > 0; --k) {
      e[k] += values[i] * e[k - 1];
    }
  }
  return e;
}

double esym(const SymMatrix& a, std::size_t k) {
  if (k > a.dim()) {
    throw IndexError("esym index " + std::to_string(k) + " exceeds dimension");
  }
  const Eigen::VectorXd ev = snapped_eigenvalues(a);
  return elementary_symmetric(std::span<const double>(ev.data(), ev.size()))[k];
}

double esym_newton(const SymMatrix& a, std::size_t k) {
  if (k > a.dim()) {
    throw IndexError("esym index " + std::to_string(k) + " exceeds dimension");
  }
  const Eigen::VectorXd ev = a.eigenvalues();
  std::vector<double> power(k + 1, 0.0);
  for (std::size_t i = 1; i <= k; ++i) {
    power[i] = ev.array().pow(static_cast<double>(i)).sum();
  }
  std::vector<double> e(k + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t m = 1; m <= k; ++m) {
    double acc = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
      const double sign = (i % 2 == 1) ? 1.0 : -1.0;
      acc += sign * e[m - i] * power[i];
    }
    e[m] = acc / static_cast<double>(m);
  }
  return e[k];
}

double esym_minors(const SymMatrix& a, std::size_t k) {
  if (k > a.dim()) {
    throw IndexError("esym index " + std::to_string(k) + " exceeds dimension");
  }
  CompensatedSum sum;
  for (const auto& s : combinations(a.dim(), k)) {
    sum.add(small_determinant(principal_submatrix(a.matrix(), s, s)));
  }
  return sum.value();
}

SymMatrix compound_matrix(const SymMatrix& a, std::size_t k) {
  if (k < 1 || k > a.dim()) {
    throw IndexError("compound order must lie in 1..N");
  }
  const auto sets = combinations(a.dim(), k);
  if (sets.size() > kMaxTensorDim) {
    throw SizeLimit("compound matrix too large");
  }
  Eigen::MatrixXd c(idx(sets.size()), idx(sets.size()));
  for (std::size_t r = 0; r < sets.size(); ++r) {
    for (std::size_t s = 0; s < sets.size(); ++s) {
      c(idx(r), idx(s)) =
          small_determinant(principal_submatrix(a.matrix(), sets[r], sets[s]));
    }
  }
  return SymMatrix(c);
}

// ------------------------------------------------------ permanents/immanants

double permanent(const SymMatrix& a) {
  const std::size_t n = a.dim();
  if (n > kMaxPermanentDim) {
    throw SizeLimit("permanent limited to N <= " + std::to_string(kMaxPermanentDim));
  }
  const Eigen::MatrixXd& m = a.matrix();
  std::vector<double> row_sums(n, 0.0);
  std::vector<bool> in_set(n, false);
  CompensatedSum total;
  const std::size_t count = std::size_t{1} << n;
  // Gray code: step g flips column ctz(g); subset size parity alternates
  for (std::size_t g = 1; g < count; ++g) {
    const auto col = static_cast<std::size_t>(std::countr_zero(g));
    const double dir = in_set[col] ? -1.0 : 1.0;
    in_set[col] = !in_set[col];
    for (std::size_t i = 0; i < n; ++i) {
      row_sums[i] += dir * m(idx(i), idx(col));
    }
    double prod = 1.0;
    for (double s : row_sums) {
      prod *= s;
    }
    // subset size parity equals the parity of g's Gray code popcount
    const std::size_t size = static_cast<std::size_t>(std::popcount(g ^ (g >> 1)));
    total.add(((n - size) % 2 == 0) ? prod : -prod);
  }
  return total.value();
}

double permanent_naive(const SymMatrix& a) {
  const std::size_t n = a.dim();
  if (n > kMaxNaivePermanentDim) {
    throw SizeLimit("naive permanent limited to N <= " +
                    std::to_string(kMaxNaivePermanentDim));
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  CompensatedSum sum;
  do {
    double prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      prod *= a(i, perm[i]);
    }
    sum.add(prod);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum.value();
}

int permutation_sign(std::span<const std::size_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  std::size_t transpositions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) {
      continue;
    }
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0 ? 1 : -1;
}

CharacterSpec CharacterSpec::from_function(
    std::size_t n, const std::function<double(std::span<const std::size_t>)>& fn) {
  std::map<std::vector<std::size_t>, double> w;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  do {
    w.emplace(perm, fn(perm));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return custom(std::move(w));
}

CharacterSpec standard_character(std::size_t n) {
  return CharacterSpec::from_function(n, [](std::span<const std::size_t> p) {
    double fixed = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      fixed += p[i] == i ? 1.0 : 0.0;
    }
    return fixed - 1.0;
  });
}

double immanant(const SymMatrix& a, const CharacterSpec& chi) {
  const std::size_t n = a.dim();
  if (n > kMaxImmanantDim) {
    throw SizeLimit("immanant limited to N <= " + std::to_string(kMaxImmanantDim));
  }
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  CompensatedSum sum;
  do {
    double weight = 1.0;
    switch (chi.kind) {
      case CharacterSpec::Kind::kSign:
        weight = permutation_sign(perm);
        break;
      case CharacterSpec::Kind::kTrivial:
        break;
      case CharacterSpec::Kind::kCustom: {
        const auto it = chi.weights.find(perm);
        if (it == chi.weights.end()) {
          throw InvalidCharacter("character undefined on a permutation of " +
                                 std::to_string(n) + " letters");
        }
        weight = it->second;
        break;
      }
    }
    if (weight == 0.0) {
      continue;
    }
    double prod = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      prod *= a(i, perm[i]);
    }
    sum.add(weight * prod);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum.value();
}

// ------------------------------------------------------------ tensors

SymMatrix kronecker(const SymMatrix& a, const SymMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  if (na * nb > kMaxTensorDim) {
    throw SizeLimit("tensor dimension exceeds " + std::to_string(kMaxTensorDim));
  }
  Eigen::MatrixXd k(idx(na * nb), idx(na * nb));
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) {
      k.block(idx(i * nb), idx(j * nb), idx(nb), idx(nb)) = a(i, j) * b.matrix();
    }
  }
  return SymMatrix(k);
}

SymMatrix tensor_power(const SymMatrix& a, std::size_t p) {
  if (p < 1) {
    throw IndexError("tensor power must be >= 1");
  }
  checked_power(a.dim(), p);
  SymMatrix out = a;
  for (std::size_t i = 1; i < p; ++i) {
    out = kronecker(out, a);
  }
  return out;
}

SymMatrix mixed_tensor(const SymMatrix& x, std::size_t k, const SymMatrix& v,
                       std::size_t l) {
  const std::size_t total = checked_power(x.dim(), k + l) * v.dim();
  if (total > kMaxTensorDim) {
    throw SizeLimit("tensor dimension exceeds " + std::to_string(kMaxTensorDim));
  }
  SymMatrix out = v;
  if (k > 0) {
    out = kronecker(tensor_power(x, k), out);
  }
  if (l > 0) {
    out = kronecker(out, tensor_power(x, l));
  }
  return out;
}

double det_power(const SymMatrix& a, double exponent) {
  const Eigen::VectorXd ev = a.eigenvalues();
  const double rho = ev.cwiseAbs().maxCoeff();
  const double floor = kSingularRatio * rho;
  if (exponent == 0.0) {
    return 1.0;
  }
  if (exponent < 0.0) {
    if (!(ev(0) >= floor) || rho == 0.0) {
      throw SingularMatrix("matrix numerically singular for a negative power");
    }
  } else if (ev(0) < -floor) {
    throw NegativeDeterminant("matrix has a negative eigenvalue");
  }
  double r = 1.0;
  for (Index i = 0; i < ev.size(); ++i) {
    const double lambda = ev(i) <= floor ? 0.0 : ev(i);
    r *= std::pow(lambda, exponent);
  }
  return r;
}

// ------------------------------------------------------------ text format

ParsedMatrix parse_matrix(std::istream& in) {
  long long n = 0;
  if (!(in >> n) || n < 1) {
    throw ParseError("expected a positive matrix dimension");
  }
  const auto dim = static_cast<std::size_t>(n);
  Eigen::MatrixXd m(idx(dim), idx(dim));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      std::string tok;
      if (!(in >> tok)) {
        throw ParseError("matrix truncated at row " + std::to_string(i));
      }
      double v = 0.0;
      auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        throw ParseError("bad matrix entry '" + tok + "'");
      }
      m(idx(i), idx(j)) = v;
    }
  }
  ParsedMatrix out{SymMatrix(m), std::nullopt};
  if (out.matrix.input_asymmetry() > kAsymmetryWarning) {
    out.warning = "input asymmetric by " + std::to_string(out.matrix.input_asymmetry()) +
                  "; symmetrized";
  }
  return out;
}

std::vector<ParsedMatrix> parse_matrices(std::istream& in) {
  std::vector<ParsedMatrix> out;
  while (true) {
    in >> std::ws;
    if (in.peek() == std::char_traits<char>::eof()) {
      break;
    }
    out.push_back(parse_matrix(in));
  }
  return out;
}

std::string format_matrix(const SymMatrix& a) {
  std::string out = std::to_string(a.dim()) + "\n";
  char buf[64];
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      auto res = std::to_chars(buf, buf + sizeof(buf), a(i, j));
      if (j > 0) {
        out += ' ';
      }
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  return out;
}

}  // namespace hhv
