#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lci/alphabet_words.hpp"
#include "lci/prob_laws.hpp"

namespace lci {

enum class Route { dp, bruteforce, representation, percolation };

std::string to_string(Route route);

/// Length of a longest common increasing subsequence and the route that computed it.
struct LciResult {
  Count length = 0;
  /// Maximiser of the representation (lexicographically smallest); representation route only.
  std::optional<PickVector> argmax_k;
  Route route = Route::dp;
};

/// Recursion over (i, j, last letter) with two rolling rows; O(|x| |y| m) time,
/// O(|y| m) memory. Lengths may differ.
LciResult lci_dp(const Word& x, const Word& y, bool strict = false);

inline constexpr Count kBruteforceMaxLength = 12;

/// Enumerates every increasing subsequence of x and keeps those that are also
/// subsequences of y. Both words must have length <= kBruteforceMaxLength.
LciResult lci_bruteforce(const Word& x, const Word& y, bool strict = false);

/**
 * Max over the nested constraint set of
 *   min( sum(k) + N_m(x) - R(x),  sum(k) + N_m(y) - R(y) ),
 * enumerated depth-first over k_1, ..., k_{m-1} with incremental stopping
 * times. The last coordinate is a linear scan, so the cost is
 * O(n^{m-1}) with O(1) work per candidate. Words must have equal length.
 */
LciResult lci_representation(const Word& x, const Word& y);

/// Objective of the representation at a fixed pick vector, or nullopt if k is
/// outside the constraint set for either word.
std::optional<Count> representation_objective(const WordStats& x, const WordStats& y,
                                              const PickVector& k);

/// Longest weakly (or strictly) increasing subsequence of one word.
Count longest_increasing(const Word& w, bool strict = false);

/// min(N_r(x), N_r(y)) for one fixed letter r.
Count single_letter_alignment(const Word& x, const Word& y, Letter r);
/// max over r of min(N_r(x), N_r(y)).
Count best_single_letter_alignment(const Word& x, const Word& y);

struct Counterexample {
  Word x;
  Word y;
  Count expected = 0;  // lci_dp
  Count actual = 0;    // lci_representation
};

struct VerifyReport {
  std::int64_t checked = 0;
  std::int64_t mismatches = 0;
  std::optional<Counterexample> first_counterexample;
  bool pass() const noexcept { return mismatches == 0; }
  void merge(const VerifyReport& other);
};

/// Random word pairs: trial t uses stream (seed, t), m uniform in [2, m_max],
/// n uniform in [0, n_max], and alternates the uniform law with a decreasing
/// non-uniform law. Checks lci_representation == lci_dp on each pair.
VerifyReport verify_representation(std::uint64_t seed, std::int64_t trials, Count n_max, int m_max,
                                   int threads = 1);

/// `trials` pairs of length n drawn from `law`; trial t uses stream (seed, t).
VerifyReport verify_representation_law(const LetterLaw& law, Count n, std::int64_t trials,
                                       std::uint64_t seed, int threads = 1);

/// Every pair of words of length exactly n over m letters, for n = 0..n_max.
VerifyReport verify_representation_exhaustive(int m, Count n_max);

}  // namespace lci
