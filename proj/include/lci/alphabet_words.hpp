#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lci {

/// Letters are the integers 1..m, ordered as integers.
using Letter = std::int32_t;
/// Positions and counts inside a word.
using Count = std::int64_t;

class Alphabet {
 public:
  explicit Alphabet(int m);
  int size() const noexcept { return m_; }
  bool contains(Letter a) const noexcept { return a >= 1 && a <= m_; }
  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  int m_;
};

/// A finite word over an Alphabet. Immutable once built.
class Word {
 public:
  Word(std::vector<Letter> letters, Alphabet alphabet);

  Count size() const noexcept { return static_cast<Count>(letters_.size()); }
  bool empty() const noexcept { return letters_.empty(); }
  const Alphabet& alphabet() const noexcept { return alphabet_; }
  int m() const noexcept { return alphabet_.size(); }
  /// 0-based access; position p (1-based) is `(*this)[p - 1]`.
  Letter operator[](Count i) const { return letters_[static_cast<std::size_t>(i)]; }
  std::span<const Letter> letters() const noexcept { return letters_; }

  /// Appends one letter (the word is extended as a prefix of an infinite sequence).
  Word appended(Letter a) const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
  Alphabet alphabet_;
};

/// (k_1, ..., k_{m-1}): how many copies of each non-top letter are picked.
struct PickVector {
  std::vector<Count> k;

  std::size_t size() const noexcept { return k.size(); }
  Count total() const noexcept;
  Count operator[](std::size_t i) const { return k[i]; }
};

/**
 * Occurrence and counting statistics of one word, precomputed once.
 *
 * Occurrence positions are 1-based; T_r^0 = 0 and T_r^j for j > N_r is
 * absent (std::nullopt), never a sentinel.
 */
class WordStats {
 public:
  explicit WordStats(const Word& w);

  int m() const noexcept { return m_; }
  Count n() const noexcept { return n_; }

  /// N_r.
  Count count(Letter r) const;
  /// N_r^{s,t}: occurrences of r at positions s+1..t. Requires 0 <= s <= t <= n.
  Count window(Letter r, Count s, Count t) const;
  /// T_r^j, or nullopt when the word has fewer than j copies of r.
  std::optional<Count> occurrence(Letter r, Count j) const;
  /// All positions of r, increasing.
  std::span<const Count> occurrences(Letter r) const;

  /// N_r^{0,t} without range checks; 0 <= t <= n.
  Count prefix_count_unchecked(Letter r, Count t) const noexcept {
    return prefix_[static_cast<std::size_t>(r - 1) * static_cast<std::size_t>(n_ + 1) +
                   static_cast<std::size_t>(t)];
  }

 private:
  void check_letter(Letter r) const;

  int m_;
  Count n_;
  std::vector<std::vector<Count>> occ_;  // occ_[r-1] = positions of r
  std::vector<std::int32_t> prefix_;      // (m) x (n+1) prefix counts
};

/**
 * Result of the stopping-time recursion for one word and one pick vector.
 *
 * The stopping times are tau_0 = 0 and, for i = 1..m-1,
 * tau_i = tau_{i-1} when k_i = 0, otherwise tau_i = T_i^{k_i + N_i^*},
 * with N_i^* = N_i^{0, tau_{i-1}} the copies of letter i that occur before
 * the previous picks complete. R counts top letters falling in the gaps
 * consumed while collecting the picks; each stage's first gap starts at
 * tau_{i-1}, so R = N_m^{0, tau_{m-1}} and H = N_m - R.
 */
struct StarCounts {
  std::vector<Count> nstar;  // N_1^*, ..., N_{m-1}^* (N_1^* = 0)
  Count r_stat = 0;          // R
  Count stop = 0;            // tau_{m-1}
  bool feasible = true;      // every stopping time exists in the word
};

std::vector<Count> count_letters(const Word& w);
Count window_count(const Word& w, Letter r, Count s, Count t);
std::optional<Count> occurrence_position(const Word& w, Letter r, Count j);

StarCounts star_counts(const WordStats& stats, const PickVector& k);
StarCounts star_counts(const Word& w, const PickVector& k);

/// S_{i,r}: copies of r after the last occurrence of i (the whole word if i is absent).
Count tail_residual(const WordStats& stats, Letter i, Letter r);
Count tail_residual(const Word& w, Letter i, Letter r);

/// Digit string for m <= 9 ("1213"), comma-separated integers otherwise.
/// Both spellings are accepted by parse_word when m <= 9.
Word parse_word(std::string_view text, int m);
std::string format_word(const Word& w);

}  // namespace lci
