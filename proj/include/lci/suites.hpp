#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

namespace lci {

/// Outcome of one verification suite: `detail` holds the per-check records
/// ({"name", "pass", ...}) and, on failure, the first counterexample.
struct SuiteReport {
  std::string suite;
  bool pass = true;
  nlohmann::ordered_json detail = nlohmann::ordered_json::object();

  void add_check(const std::string& name, bool ok, nlohmann::ordered_json fields = nlohmann::ordered_json::object());
  nlohmann::ordered_json to_json() const;
};

/// Exhaustive pairs (m = 2, n <= 6; m = 3, n <= 4) and `trials_per_cell` random
/// pairs for every (m, n) in {2,3,4} x {10,50,200} under the uniform law and
/// a non-uniform law: representation == DP.
SuiteReport run_representation_suite(std::uint64_t seed, std::int64_t trials_per_cell, int threads = 1);

/// Brute force == DP in weak and strict mode on random pairs with lengths <= 10, m <= 4.
SuiteReport run_oracle_chain_suite(std::uint64_t seed, std::int64_t trials, int threads = 1);

/// Indicator-lattice last passage time == DP on random pairs, m <= 4, n <= 100.
SuiteReport run_percolation_suite(std::uint64_t seed, std::int64_t trials, int threads = 1);

struct LawsSuiteConfig {
  std::uint64_t seed = 1;
  std::int64_t gap_words = 10;          // uniform m = 3 words of length gap_n
  std::int64_t gap_n = 10000;
  std::int64_t pgf_words = 100000;      // words for the N_3^* generating function
  std::int64_t hoeffding_trials = 10000;
  std::int64_t hoeffding_n = 10000;
  std::int64_t residual_samples = 1000;
  std::int64_t residual_n = 10000;
  std::int64_t sampler_draws = 100000;
  std::int64_t first_occurrence_words = 10000;
  double z = 4.0;
  int threads = 1;
};

/// Moments, covariance, independence proxy and generating functions of the gap counts and N_i^*.
SuiteReport run_laws_suite(const LawsSuiteConfig& config);

/// Monte Carlo tail frequencies of centred gap sums against theta_r / theta_l on
/// k in {1, 10, 100, 1000}, x in {0.5, 1, 2, 4} sqrt(k), plus the K_n envelope grid.
SuiteReport run_tails_suite(std::uint64_t seed, std::int64_t trials, int threads = 1);

/// |max min(a, b) - max min(a + c, b + d)| <= max(|c| v |d|) on random dyadic tuples.
SuiteReport run_lemma_suite(std::uint64_t seed, std::int64_t trials, int threads = 1);

}  // namespace lci
