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
 * @file search_harness.hpp
 * Seeded sampling of inequality inputs, verification campaigns and
 * counterexample search over a registry of string identifiers.
 */

#ifndef HHV_SEARCH_HARNESS_HPP
#define HHV_SEARCH_HARNESS_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hhv/numeric.hpp"

namespace hhv {

class UnknownTarget : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// kMixed cycles gram, gram, gram+shift, boundary over trial indices.
enum class Distribution { kMixed, kGram, kGramShift, kDiagonal, kBoundary };

std::string distribution_name(Distribution d);
/// Accepts "mixed", "gram", "gram+shift", "diagonal", "boundary".
Distribution parse_distribution(std::string_view name);
/// Concrete distribution used by trial `t`.
Distribution trial_distribution(Distribution d, std::uint64_t t);

struct SearchConfig {
  std::uint64_t seed = 0;
  std::size_t trials = 1000;
  std::size_t dim = 2;
  /// Number of steps / summands n.
  std::size_t order = 3;
  /// Tensor power p (also l for lemma-main).
  std::size_t power = 1;
  /// Secondary index: e_k index, va subset size, k for lemma-main.
  std::size_t k = 2;
  double rho = 0.5;
  double alpha = 1.0;
  Distribution distribution = Distribution::kMixed;
  double tol = kDefaultTolerance;
  /// Catalog function id for probes; empty selects the entry default.
  std::string function;
  /// "sign", "trivial" or "standard".
  std::string character = "sign";
  /// Largest condition number admitted for strictly definite samples.
  double cond_limit = 1e8;
  /// Worker threads; 0 uses the hardware concurrency.
  std::size_t threads = 1;
};

/// Full input values of one trial. Matrices are stored exactly symmetric.
struct Witness {
  std::vector<Eigen::MatrixXd> matrices;
  std::vector<std::vector<double>> vectors;
};

struct CampaignReport {
  std::string inequality;
  SearchConfig config;
  std::size_t trials = 0;
  double min_margin = 0.0;
  double scale = 0.0;
  std::size_t witness_trial = 0;
  Witness witness;
  std::size_t failures = 0;
  double elapsed_ms = 0.0;

  [[nodiscard]] bool passed() const { return failures == 0; }
};

struct InequalityInfo {
  std::string id;
  /// Name of the result the identifier checks.
  std::string anchor;
  std::string description;
  /// Statements known to be false; search is expected to succeed.
  bool expect_violation = false;
};

/// Every registered identifier, in registration order.
const std::vector<InequalityInfo>& list_inequalities();
const InequalityInfo& inequality_info(std::string_view id);
bool is_registered(std::string_view id);

/// Throws ConfigError, SizeLimit, IndexError or DimensionMismatch.
void validate_config(std::string_view id, const SearchConfig& config);

/// Independent generator for trial t, seeded from (seed, t) only.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t t);

/// PSD sample. kMixed behaves like kGram.
Eigen::MatrixXd sample_psd(std::size_t n, std::mt19937_64& rng,
                           Distribution d);

Witness sample_inputs(std::string_view id, const SearchConfig& config,
                      std::uint64_t trial);
Margin evaluate_inputs(std::string_view id, const Witness& w,
                       const SearchConfig& config);

CampaignReport run_campaign(std::string_view id, const SearchConfig& config);

struct SearchResult {
  Witness witness;
  Margin margin;
  std::size_t trial = 0;
  /// Margin of the first violating sample before refinement.
  double first_margin = 0.0;
};

inline constexpr int kRefinementSteps = 20;

/**
 * Samples trials in order and stops at the first margin below
 * -10 tol scale, then runs coordinate descent on the raw margin with
 * halving step size. Returns nothing when all trials pass.
 */
std::optional<SearchResult> search_counterexample(std::string_view id,
                                                  const SearchConfig& config);

}  // namespace hhv

#endif  // HHV_SEARCH_HARNESS_HPP
