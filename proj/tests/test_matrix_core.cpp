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
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "hhv/matrix_core.hpp"

using namespace hhv;

namespace {

SymMatrix random_psd(std::mt19937_64& rng, std::size_t n, std::size_t width) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(width));
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m(i) = g(rng);
  }
  return SymMatrix(m * m.transpose());
}

SymMatrix random_sym(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m(i) = g(rng);
  }
  return SymMatrix(m);
}

// Textbook Leibniz sum over permutations, with an independent sign count.
double leibniz(const SymMatrix& a, const std::function<double(const std::vector<std::size_t>&)>& w) {
  std::vector<std::size_t> p(a.dim());
  std::iota(p.begin(), p.end(), 0);
  double total = 0.0;
  do {
    double prod = w(p);
    for (std::size_t i = 0; i < p.size(); ++i) {
      prod *= a(i, p[i]);
    }
    total += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

int inversions(const std::vector<std::size_t>& p) {
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      c += p[i] > p[j] ? 1 : 0;
    }
  }
  return c;
}

}  // namespace

TEST_CASE("construction symmetrizes and records asymmetry") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 2.0, 4.0, 3.0;
  const SymMatrix s(m);
  CHECK(s(0, 1) == 3.0);
  CHECK(s(1, 0) == 3.0);
  CHECK(s.input_asymmetry() == 2.0);
  CHECK(SymMatrix::identity(3).trace() == 3.0);
  CHECK(SymMatrix::from_rows({{1.0, 2.0}, {2.0, 5.0}})(1, 1) == 5.0);
}

TEST_CASE("Loewner margins") {
  const double d12[] = {1.0, 2.0};
  const double d21[] = {2.0, 1.0};
  CHECK(loewner_margin(SymMatrix::identity(2), SymMatrix::zero(2)).value == doctest::Approx(1.0));
  CHECK(loewner_margin(SymMatrix::diagonal(d12), SymMatrix::diagonal(d21)).value ==
        doctest::Approx(-1.0));
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    CHECK(loewner_margin(random_psd(rng, 4, 2), SymMatrix::zero(4)).passes());
  }
  CHECK_THROWS_AS(loewner_margin(SymMatrix::identity(2), SymMatrix::identity(3)),
                  DimensionMismatch);
}

TEST_CASE("elementary symmetric functions") {
  const double d[] = {1.0, 2.0, 3.0};
  const SymMatrix a = SymMatrix::diagonal(d);
  CHECK(esym(a, 2) == doctest::Approx(11.0));
  CHECK(esym(a, 0) == 1.0);
  for (std::size_t k = 0; k <= 5; ++k) {
    CHECK(esym(SymMatrix::identity(5), k) == doctest::Approx(std::tgamma(6.0) / (std::tgamma(k + 1.0) * std::tgamma(6.0 - k))));
  }
  CHECK_THROWS_AS(esym(a, 4), IndexError);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const SymMatrix s = random_sym(rng, 5);
    CHECK(esym(s, 1) == doctest::Approx(s.trace()).epsilon(1e-12));
    CHECK(esym(s, 5) == doctest::Approx(determinant(s)).epsilon(1e-9));
    for (std::size_t k = 0; k <= 5; ++k) {
      const double ref = esym_minors(s, k);
      CHECK(esym(s, k) == doctest::Approx(ref).epsilon(1e-9).scale(1.0));
      CHECK(esym_newton(s, k) == doctest::Approx(ref).epsilon(1e-8).scale(1.0));
    }
  }
}

TEST_CASE("compound matrices") {
  const double d[] = {1.0, 2.0, 3.0};
  const SymMatrix c = compound_matrix(SymMatrix::diagonal(d), 2);
  REQUIRE(c.dim() == 3);
  CHECK(c(0, 0) == doctest::Approx(2.0));
  CHECK(c(1, 1) == doctest::Approx(3.0));
  CHECK(c(2, 2) == doctest::Approx(6.0));
  CHECK(std::abs(c(0, 1)) < 1e-15);
  std::mt19937_64 rng(3);
  const SymMatrix s = random_sym(rng, 4);
  CHECK(compound_matrix(s, 4)(0, 0) == doctest::Approx(determinant(s)).epsilon(1e-10));
  // trace of the k-th compound is e_k
  CHECK(compound_matrix(s, 2).trace() == doctest::Approx(esym(s, 2)).epsilon(1e-10));
  CHECK_THROWS_AS(compound_matrix(s, 5), IndexError);
}

TEST_CASE("permanents") {
  CHECK(permanent(SymMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}})) == doctest::Approx(2.0));
  CHECK(permanent(SymMatrix::from_rows({{1.0, 2.0}, {2.0, 4.0}})) == doctest::Approx(8.0));
  const double d[] = {2.0, 3.0, 0.5, 7.0};
  CHECK(permanent(SymMatrix::diagonal(d)) == doctest::Approx(21.0));
  std::mt19937_64 rng(4);
  for (std::size_t n = 1; n <= 7; ++n) {
    const SymMatrix s = random_sym(rng, n);
    const double ref = leibniz(s, [](const auto&) { return 1.0; });
    CHECK(permanent(s) == doctest::Approx(ref).epsilon(1e-10));
    CHECK(permanent_naive(s) == doctest::Approx(ref).epsilon(1e-12));
  }
  CHECK_THROWS_AS(permanent(SymMatrix::identity(15)), SizeLimit);
}

TEST_CASE("immanants") {
  const SymMatrix a = SymMatrix::from_rows({{2.0, 0.5}, {0.5, 3.0}});
  CHECK(immanant(a, CharacterSpec::sign()) == doctest::Approx(6.0 - 0.25));
  CHECK(immanant(SymMatrix::from_rows({{1.0, 1.0}, {1.0, 1.0}}), CharacterSpec::trivial()) ==
        doctest::Approx(2.0));
  CHECK(immanant(SymMatrix::identity(3), standard_character(3)) == doctest::Approx(2.0));

  std::mt19937_64 rng(6);
  for (std::size_t n = 2; n <= 5; ++n) {
    const SymMatrix s = random_sym(rng, n);
    const double sign_ref =
        leibniz(s, [](const auto& p) { return inversions(p) % 2 == 0 ? 1.0 : -1.0; });
    CHECK(immanant(s, CharacterSpec::sign()) == doctest::Approx(sign_ref).epsilon(1e-10));
    CHECK(immanant(s, CharacterSpec::sign()) == doctest::Approx(determinant(s)).epsilon(1e-9));
    CHECK(immanant(s, CharacterSpec::trivial()) == doctest::Approx(permanent(s)).epsilon(1e-10));
    const double std_ref = leibniz(s, [](const auto& p) {
      double fixed = 0.0;
      for (std::size_t i = 0; i < p.size(); ++i) {
        fixed += p[i] == i ? 1.0 : 0.0;
      }
      return fixed - 1.0;
    });
    CHECK(immanant(s, standard_character(n)) == doctest::Approx(std_ref).epsilon(1e-10));
  }

  std::map<std::vector<std::size_t>, double> partial{{{0, 1}, 1.0}};
  CHECK_THROWS_AS(immanant(a, CharacterSpec::custom(partial)), InvalidCharacter);
  CHECK_THROWS_AS(immanant(SymMatrix::identity(9), CharacterSpec::trivial()), SizeLimit);
}

TEST_CASE("permutation sign") {
  const std::size_t id[] = {0, 1, 2};
  const std::size_t swap[] = {1, 0, 2};
  const std::size_t cyc[] = {1, 2, 0};
  CHECK(permutation_sign(id) == 1);
  CHECK(permutation_sign(swap) == -1);
  CHECK(permutation_sign(cyc) == 1);
}

TEST_CASE("Kronecker and tensor powers") {
  CHECK(tensor_power(SymMatrix::identity(2), 2).matrix() == Eigen::MatrixXd::Identity(4, 4));
  const double d[] = {1.0, 2.0};
  const SymMatrix t = tensor_power(SymMatrix::diagonal(d), 2);
  CHECK(t.matrix().diagonal() == Eigen::Vector4d(1.0, 2.0, 2.0, 4.0));
  std::mt19937_64 rng(8);
  const SymMatrix a = random_psd(rng, 3, 3);
  CHECK(loewner_margin(tensor_power(a, 3), SymMatrix::zero(27)).passes());
  // eigenvalues of A(x)A are products of eigenvalues
  const Eigen::VectorXd ev = a.eigenvalues();
  std::vector<double> prods;
  for (Eigen::Index i = 0; i < 3; ++i) {
    for (Eigen::Index j = 0; j < 3; ++j) {
      prods.push_back(ev(i) * ev(j));
    }
  }
  std::sort(prods.begin(), prods.end());
  const Eigen::VectorXd tv = tensor_power(a, 2).eigenvalues();
  for (std::size_t i = 0; i < prods.size(); ++i) {
    CHECK(tv(static_cast<Eigen::Index>(i)) == doctest::Approx(prods[i]).epsilon(1e-10).scale(ev(2) * ev(2)));
  }
  CHECK_THROWS_AS(tensor_power(SymMatrix::identity(5), 6), SizeLimit);
}

TEST_CASE("mixed tensors") {
  const SymMatrix v = SymMatrix::from_rows({{1.0, 2.0}, {2.0, 5.0}});
  CHECK(mixed_tensor(SymMatrix::identity(2), 0, v, 0).matrix() == v.matrix());
  CHECK(mixed_tensor(SymMatrix::identity(2), 1, SymMatrix::identity(2), 0).matrix() ==
        Eigen::MatrixXd::Identity(4, 4));
  const SymMatrix m = mixed_tensor(SymMatrix::diagonal(std::vector<double>{2.0}), 1,
                                   SymMatrix::diagonal(std::vector<double>{3.0}), 1);
  CHECK(m(0, 0) == 12.0);
  CHECK_THROWS_AS(mixed_tensor(SymMatrix::identity(4), 3, SymMatrix::identity(4), 3), SizeLimit);
}

TEST_CASE("determinant powers") {
  const SymMatrix two = 2.0 * SymMatrix::identity(2);
  CHECK(det_power(two, 0.5) == doctest::Approx(2.0));
  CHECK(det_power(two, -0.5) == doctest::Approx(0.5));
  CHECK(det_power(3.0 * SymMatrix::identity(3), 1.0 / 3.0) == doctest::Approx(3.0));
  CHECK(det_power(SymMatrix::zero(2), 0.5) == 0.0);
  CHECK_THROWS_AS(det_power(SymMatrix::zero(2), -1.0), SingularMatrix);
  CHECK_THROWS_AS(det_power(SymMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}), 0.5),
                  NegativeDeterminant);
  std::mt19937_64 rng(9);
  const SymMatrix a = random_psd(rng, 4, 4);
  CHECK(det_power(a, 1.0) == doctest::Approx(determinant(a)).epsilon(1e-10));
}

TEST_CASE("matrix text format round-trips") {
  std::mt19937_64 rng(10);
  const SymMatrix a = random_psd(rng, 3, 3);
  std::istringstream in(format_matrix(a) + format_matrix(SymMatrix::identity(2)));
  const auto parsed = parse_matrices(in);
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[0].matrix.matrix() == a.matrix());
  CHECK_FALSE(parsed[0].warning.has_value());
  CHECK(parsed[1].matrix.dim() == 2);

  std::istringstream asym("2\n1 2\n2.5 3\n");
  const ParsedMatrix p = parse_matrix(asym);
  CHECK(p.warning.has_value());
  std::istringstream bad("2\n1 2\n3\n");
  CHECK_THROWS_AS(parse_matrix(bad), ParseError);
  std::istringstream junk("2\n1 x\n3 4\n");
  CHECK_THROWS_AS(parse_matrix(junk), ParseError);
}
