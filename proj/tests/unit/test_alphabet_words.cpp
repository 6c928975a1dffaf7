#include <doctest.h>

#include <vector>

#include "lci/alphabet_words.hpp"
#include "lci/errors.hpp"
#include "lci/prob_laws.hpp"
#include "lci/rng.hpp"

using namespace lci;

namespace {

Word w(std::vector<Letter> letters, int m) { return Word(std::move(letters), Alphabet(m)); }

// Walks the word left to right collecting k_1 ones, then k_2 twos, ... exactly
// as in the letter-collection picture: letters of type i seen before the
// previous stage finished are wasted (N_i^*), and R counts the top letters
// passed over before the last stage finishes.
StarCounts collect_by_scanning(const Word& word, const PickVector& k) {
  const int m = word.m();
  StarCounts out;
  out.nstar.assign(static_cast<std::size_t>(m - 1), 0);
  Count pos = 0;
  for (int i = 1; i <= m - 1; ++i) {
    Count wasted = 0;
    for (Count p = 0; p < pos; ++p) wasted += word[p] == i ? 1 : 0;
    out.nstar[static_cast<std::size_t>(i - 1)] = wasted;
    Count need = k[static_cast<std::size_t>(i - 1)];
    while (need > 0) {
      if (pos == word.size()) {
        out.feasible = false;
        return out;
      }
      if (word[pos] == i) --need;
      ++pos;
    }
  }
  for (Count p = 0; p < pos; ++p) out.r_stat += word[p] == m ? 1 : 0;
  out.stop = pos;
  return out;
}

}  // namespace

TEST_CASE("count_letters") {
  CHECK(count_letters(w({1, 1, 2, 1, 3}, 3)) == std::vector<Count>{3, 1, 1});
  CHECK(count_letters(w({}, 2)) == std::vector<Count>{0, 0});
  CHECK(count_letters(w({2, 2, 2}, 2)) == std::vector<Count>{0, 3});
  CHECK_THROWS_AS(w({1, 4}, 3), InputError);
  CHECK_THROWS_AS(w({0}, 3), InputError);
  CHECK_THROWS_AS(Alphabet(0), InputError);
}

TEST_CASE("window_count") {
  const Word word = w({1, 3, 2, 1, 3, 2}, 3);
  CHECK(window_count(word, 3, 1, 4) == 1);
  for (Count s = 0; s <= word.size(); ++s) CHECK(window_count(word, 2, s, s) == 0);
  CHECK(window_count(w({2, 2}, 2), 2, 0, 2) == 2);
  CHECK_THROWS_AS(window_count(word, 3, 4, 1), InputError);
  CHECK_THROWS_AS(window_count(word, 3, 0, 7), InputError);
  CHECK_THROWS_AS(window_count(word, 4, 0, 1), InputError);
}

TEST_CASE("occurrence_position") {
  const Word word = w({1, 2, 1, 2}, 2);
  CHECK(occurrence_position(word, 1, 2) == Count{3});
  CHECK_FALSE(occurrence_position(word, 2, 3).has_value());
  CHECK(occurrence_position(word, 1, 0) == Count{0});
  CHECK(occurrence_position(word, 2, 0) == Count{0});
  CHECK_THROWS_AS(occurrence_position(word, 1, -1), InputError);
}

TEST_CASE("star_counts examples") {
  const auto sc = star_counts(w({1, 3, 2, 1, 3, 2}, 3), PickVector{{2, 1}});
  CHECK(sc.feasible);
  CHECK(sc.nstar == std::vector<Count>{0, 1});
  CHECK(sc.r_stat == 2);

  const auto zero = star_counts(w({3, 1, 2, 2, 3}, 3), PickVector{{0, 0}});
  CHECK(zero.feasible);
  CHECK(zero.nstar == std::vector<Count>{0, 0});
  CHECK(zero.r_stat == 0);

  CHECK_FALSE(star_counts(w({2, 2}, 2), PickVector{{1}}).feasible);
  CHECK_THROWS_AS(star_counts(w({1, 2}, 2), PickVector{{1, 1}}), InputError);
  CHECK_THROWS_AS(star_counts(w({1}, 1), PickVector{{}}), InputError);
}

TEST_CASE("star_counts agrees with the scanning procedure") {
  Rng rng(2024);
  for (int trial = 0; trial < 3000; ++trial) {
    const int m = 2 + static_cast<int>(rng.uniform_below(4));
    const Count n = static_cast<Count>(rng.uniform_below(15));
    const Word word = sample_word(LetterLaw::uniform(m), n, rng);
    PickVector k;
    for (int i = 0; i < m - 1; ++i) k.k.push_back(static_cast<Count>(rng.uniform_below(5)));
    const auto got = star_counts(word, k);
    const auto want = collect_by_scanning(word, k);
    REQUIRE(got.feasible == want.feasible);
    if (!want.feasible) continue;
    CHECK(got.nstar == want.nstar);
    CHECK(got.r_stat == want.r_stat);
    CHECK(got.stop == want.stop);
    const auto counts = count_letters(word);
    for (int i = 0; i < m - 1; ++i) CHECK(got.nstar[i] + k[i] <= counts[i]);
  }
}

TEST_CASE("tail_residual") {
  CHECK(tail_residual(w({1, 3, 3}, 3), 1, 3) == 2);
  CHECK(tail_residual(w({3, 1}, 3), 1, 3) == 0);
  CHECK(tail_residual(w({3, 3}, 3), 1, 3) == 2);
  CHECK_THROWS_AS(tail_residual(w({1, 3}, 3), 3, 3), InputError);
}

TEST_CASE("counting invariants on random words") {
  Rng rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 1 + static_cast<int>(rng.uniform_below(5));
    const Word word = sample_word(LetterLaw::uniform(m), static_cast<Count>(rng.uniform_below(41)), rng);
    const auto counts = count_letters(word);
    Count total = 0;
    for (Letter r = 1; r <= m; ++r) {
      total += counts[r - 1];
      CHECK(window_count(word, r, 0, word.size()) == counts[r - 1]);
      for (Count j = 1; j <= counts[r - 1]; ++j) {
        const auto pos = occurrence_position(word, r, j);
        REQUIRE(pos.has_value());
        CHECK(window_count(word, r, 0, *pos) == j);
        CHECK(word[*pos - 1] == r);
      }
      CHECK_FALSE(occurrence_position(word, r, counts[r - 1] + 1).has_value());
      for (Letter i = 1; i <= m; ++i) {
        if (i == r) continue;
        Count gaps = 0;
        for (Count j = 1; j <= counts[i - 1]; ++j) {
          gaps += window_count(word, r, *occurrence_position(word, i, j - 1), *occurrence_position(word, i, j));
        }
        CHECK(tail_residual(word, i, r) + gaps == counts[r - 1]);
      }
    }
    CHECK(total == word.size());
  }
}

TEST_CASE("parse and format words") {
  CHECK(parse_word("1213", 3) == w({1, 2, 1, 3}, 3));
  CHECK(parse_word("1,2,1,3", 3) == w({1, 2, 1, 3}, 3));
  CHECK(parse_word("", 2).empty());
  CHECK(parse_word("10,2", 12) == w({10, 2}, 12));
  CHECK(format_word(w({1, 2, 1, 3}, 3)) == "1213");
  CHECK(format_word(w({10, 2}, 12)) == "10,2");
  CHECK_THROWS_AS(parse_word("13", 2), InputError);
  CHECK_THROWS_AS(parse_word("1a", 2), InputError);
}

TEST_CASE("WordStats matches the free functions") {
  const Word word = w({2, 1, 3, 3, 1, 2, 2}, 3);
  const WordStats stats(word);
  CHECK(stats.n() == 7);
  CHECK(stats.count(2) == 3);
  CHECK(stats.window(2, 1, 7) == 2);
  CHECK(stats.occurrence(3, 2) == Count{4});
  CHECK(stats.occurrences(1).size() == 2);
  CHECK(word.appended(1).size() == 8);
}
