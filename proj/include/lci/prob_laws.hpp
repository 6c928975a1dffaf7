#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lci/alphabet_words.hpp"
#include "lci/rng.hpp"

namespace lci {

/// Letter probabilities (p_1, ..., p_m).
class LetterLaw {
 public:
  /// p_i = 1/m exactly; samplers use an exact integer draw.
  static LetterLaw uniform(int m);
  /// Throws DomainError unless every p_i >= 0 and |sum - 1| <= 1e-12.
  explicit LetterLaw(std::vector<double> probs);

  int m() const noexcept { return static_cast<int>(probs_.size()); }
  double p(Letter a) const { return probs_.at(static_cast<std::size_t>(a - 1)); }
  std::span<const double> probs() const noexcept { return probs_; }
  bool is_uniform() const noexcept { return uniform_; }

  double p_max() const noexcept;
  /// Number of letters whose probability is within 1e-12 of p_max.
  int multiplicity() const noexcept;

  Letter sample(Rng& rng) const noexcept;

 private:
  LetterLaw(std::vector<double> probs, bool uniform);

  std::vector<double> probs_;
  std::vector<double> cumulative_;
  bool uniform_ = false;
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// ---------------------------------------------------------------------------
// Gap counts N_r^{T_i^{j-1}, T_i^j}: copies of r between consecutive i's.

/// p_i / (p_i + p_r - p_r x). Requires i != r and a positive denominator.
double pgf_gap_count(const LetterLaw& law, Letter i, Letter r, double x);
/// mean p_r/p_i, variance (p_r/p_i)(1 + p_r/p_i).
Moments moments_gap_count(const LetterLaw& law, Letter i, Letter r);
/// Cov of the r- and s-counts in the same gap: p_r p_s / p_i^2 (the variance when r == s).
double gap_count_covariance(const LetterLaw& law, Letter i, Letter r, Letter s);
/// Joint PGF E[prod_{r != i} x_r^{N_r}] = p_i / (1 - sum_{r != i} p_r x_r).
/// `x` is indexed by letter - 1; the entry for i is ignored.
double pgf_gap_vector(const LetterLaw& law, Letter i, std::span<const double> x);

// ---------------------------------------------------------------------------
// Wasted letters N_i^* = sum_{j<i} N_{i,j}^*.

/// (p_j / (p_j + p_i - p_i x))^{k_j}, requires j < i.
double pgf_nstar_component(const LetterLaw& law, Letter i, Letter j, Count k_j, double x);
Moments moments_nstar_component(const LetterLaw& law, Letter i, Letter j, Count k_j);
/// Product of the components over j < i; uses k[0 .. i-2].
double pgf_nstar(const LetterLaw& law, Letter i, const PickVector& k, double x);
Moments moments_nstar(const LetterLaw& law, Letter i, const PickVector& k);

// ---------------------------------------------------------------------------
// Chernoff bounds for sums of centred gap counts (uniform letters).

/// A bound carried in log space; `value` is exp(log), flushed to 0 below exp(-700).
struct LogBound {
  double log = 0.0;
  double value = 1.0;
};

LogBound make_log_bound(double log_value) noexcept;

/// Theta_k^r(x) = (x+2k)^{x+2k} / ((2x+2k)^{x+k} (2k)^k), x >= 0, k >= 0.
LogBound theta_r(double k, double x);
/// Theta_k^l(x) = (2k-x)^{2k-x} / ((2k-2x)^{k-x} (2k)^k) for 0 <= x <= k; exactly 0 for x > k.
LogBound theta_l(double k, double x);

/// Direct minimisation of the Chernoff exponents over t (golden section on the
/// convex log-exponent). Independent of the closed forms above; returns log.
double theta_r_variational(double k, double x);
double theta_l_variational(double k, double x);

/// K_n(x) = (x+2n)^{x+2n} / ((2x+2n)^{x+n} (2n)^n) for x >= -n, n >= 1.
LogBound k_bound(double n, double x);

/// Envelope K_n(x) <= C exp(-c n min(|x|/n, x^2/n^2)).
struct KEnvelope {
  double c = 0.0;
  double C = 1.0;
};

/**
 * Constants for the K_n envelope. log K_n(a n) = n h(a) exactly, so with
 * C = 1 the envelope holds for every n iff c <= -h(a) / min(|a|, a^2) on
 * a in [-1, 10]. calibrate_k_envelope(-1, 10, 1e-4) gives 0.169899 (attained
 * at a = 1); the constant below is rounded down.
 */
inline constexpr KEnvelope kKEnvelope{0.1698, 1.0};

/// Largest c (with C = 1) such that the envelope holds on the a-grid [lo, hi] with step `step`.
KEnvelope calibrate_k_envelope(double lo, double hi, double step);
/// log of C exp(-c n min(|x|/n, x^2/n^2)).
double k_envelope_log(const KEnvelope& env, double n, double x);
bool k_envelope_holds(const KEnvelope& env, double n, double x);

// ---------------------------------------------------------------------------
// Samplers. Geometric laws live on {1, 2, ...}, the law of T_i^j - T_i^{j-1}.

Word sample_word(const LetterLaw& law, Count n, Rng& rng);
Word sample_word(const LetterLaw& law, Count n, std::uint64_t seed);
/// G(p) on {1, 2, ...}, mean 1/p; p in (0, 1].
Count sample_geometric(double p, Rng& rng);
Count sample_geometric(double p, std::uint64_t seed);
/// Pascal BN(j, p): sum of j independent G(p), the law of T_i^j.
Count sample_negative_binomial(Count j, double p, Rng& rng);
Count sample_negative_binomial(Count j, double p, std::uint64_t seed);

// ---------------------------------------------------------------------------

struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;  // row-major

  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
};

/// (m-1)x(m-1) covariance of the limiting Brownian motion: 1 on the diagonal, 1/2 elsewhere.
DenseMatrix limit_covariance(int m);

/// Both sides of |max_k (a_k ^ b_k) - max_k ((a_k+c_k) ^ (b_k+d_k))| <= max_k (|c_k| v |d_k|).
struct MaxMinPerturbation {
  double gap = 0.0;
  double bound = 0.0;
};
MaxMinPerturbation max_min_perturbation(std::span<const double> a, std::span<const double> b,
                                        std::span<const double> c, std::span<const double> d);

}  // namespace lci
