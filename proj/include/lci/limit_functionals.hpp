#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lci/prob_laws.hpp"
#include "lci/stats.hpp"

namespace lci {

/**
 * Two independent `dim`-dimensional standard Brownian motions sampled at
 * t = g / G, g = 0..G. Coordinate i of path j is the row
 * values(j, i)[0..G]; every row starts at exactly 0.
 */
class BrownianPathPair {
 public:
  BrownianPathPair(int dim, std::int64_t grid, std::uint64_t seed);

  int dim() const noexcept { return dim_; }
  std::int64_t grid() const noexcept { return grid_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Path j in {0, 1}, coordinate i in [0, dim).
  std::span<const double> row(int j, int i) const;
  std::span<double> row(int j, int i);

  /// Keeps every `factor`-th grid point (G must be divisible by factor).
  BrownianPathPair coarsen(std::int64_t factor) const;
  /// Exchanges the two paths.
  BrownianPathPair swapped() const;

 private:
  int dim_;
  std::int64_t grid_;
  std::uint64_t seed_;
  std::vector<double> values_;  // [j][i][g]
};

/// Increments N(0, 1/G) drawn from Rng(seed): path 0 coordinates first, then path 1, each in time order.
BrownianPathPair sample_path_pair(int dim, std::int64_t grid, std::uint64_t seed);

enum class FunctionalKind {
  uniform_eq00,
  binary_form,
  nonuniform_eq00max,
  single_letter_lconst,
  driftfree_conjecture,
};

std::string to_string(FunctionalKind kind);
FunctionalKind functional_kind_from_string(const std::string& name);

/**
 * Which limiting functional to evaluate.
 *
 * Chamber kinds maximise over 0 = g_0 <= g_1 <= ... <= g_{d-1} <= g_d = G of
 *   min_{j=1,2} ( kappa * sum_i B_j^i(G) + sum_i (B_j^i(g_i) - B_j^i(g_{i-1})) )
 * with (d, kappa) = (m, -1/m) for uniform_eq00, (m, 0) for driftfree_conjecture
 * and (k, (sqrt(1 - k p_max) - 1) / k) for nonuniform_eq00max, k the multiplicity
 * of p_max.
 */
struct FunctionalSpec {
  FunctionalKind kind = FunctionalKind::uniform_eq00;
  int m = 2;
  double p_max = 0.5;
  int multiplicity = 2;

  static FunctionalSpec uniform(int m);
  static FunctionalSpec binary();
  static FunctionalSpec nonuniform(const LetterLaw& law);
  static FunctionalSpec lconst(int m);
  static FunctionalSpec driftfree(int m);

  /// Number of Brownian coordinates per path this functional reads.
  int path_dim() const;
  /// Coefficient of sum_i B_j^i(G) for chamber kinds.
  double drift() const;
};

/// Objective of a chamber kind at one grid vector (g_1, ..., g_{d-1}), for tests.
double chamber_objective(const BrownianPathPair& paths, double kappa, std::span<const std::int64_t> g);

double eval_functional(const BrownianPathPair& paths, const FunctionalSpec& spec);

/// Sample s uses the path pair of seed stream (seed, s).
std::uint64_t sample_seed(std::uint64_t seed, std::int64_t sample_index);

SampleBatch sample_functional_batch(const FunctionalSpec& spec, std::int64_t grid, std::int64_t samples,
                                    std::uint64_t seed, int threads = 1);

enum class PrelimitStatistic {
  lci,
  /// min(N_m(x), N_m(y)) for the top letter m.
  single_letter_top,
  /// max_r min(N_r(x), N_r(y)).
  single_letter_best,
};

std::string to_string(PrelimitStatistic statistic);

/**
 * Centred and scaled pre-limit samples. Uniform laws use (X - n/m) / sqrt(n/m);
 * other laws use (X - n p_max) / sqrt(n p_max). Sample s draws its word pair
 * from stream (seed, s); the LCI is computed by the representation kernel.
 */
SampleBatch sample_prelimit_batch(const LetterLaw& law, std::int64_t n, std::int64_t samples, std::uint64_t seed,
                                  PrelimitStatistic statistic = PrelimitStatistic::lci, int threads = 1);

/// (T_3(n, n, m) - n) / sqrt(n) on iid exponential(1) weights; sample s uses seed stream (seed, s).
SampleBatch sample_exponential_lpp_batch(int m, std::int64_t n, std::int64_t samples, std::uint64_t seed,
                                         int threads = 1);

}  // namespace lci
