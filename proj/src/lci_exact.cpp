#include "lci/lci_exact.hpp"

#include <algorithm>
#include <limits>

#include "lci/errors.hpp"
#include "lci/parallel.hpp"

namespace lci {

std::string to_string(Route route) {
  switch (route) {
    case Route::dp: return "dp";
    case Route::bruteforce: return "bruteforce";
    case Route::representation: return "representation";
    case Route::percolation: return "percolation";
  }
  return "unknown";
}

namespace {

void check_same_alphabet(const Word& x, const Word& y) {
  if (x.m() != y.m()) {
    throw InputError("words are over different alphabets (" + std::to_string(x.m()) + " vs " +
                     std::to_string(y.m()) + ")");
  }
}

}  // namespace

LciResult lci_dp(const Word& x, const Word& y, bool strict) {
  check_same_alphabet(x, y);
  const auto m = static_cast<std::size_t>(x.m());
  const auto cols = static_cast<std::size_t>(y.size()) + 1;
  const std::size_t stride = m + 1;
  // row[j * stride + a]: best length using x[1..i], y[1..j] with every letter <= a.
  std::vector<std::int32_t> prev(cols * stride, 0);
  std::vector<std::int32_t> cur(cols * stride, 0);
  for (Count i = 1; i <= x.size(); ++i) {
    const auto xi = static_cast<std::size_t>(x[i - 1]);
    std::fill(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(stride), 0);
    for (std::size_t j = 1; j < cols; ++j) {
      const bool match = static_cast<std::size_t>(y[static_cast<Count>(j) - 1]) == xi;
      const std::int32_t* up = &prev[j * stride];
      const std::int32_t* left = &cur[(j - 1) * stride];
      std::int32_t* out = &cur[j * stride];
      const std::int32_t take = match ? prev[(j - 1) * stride + (strict ? xi - 1 : xi)] + 1 : 0;
      out[0] = 0;
      for (std::size_t a = 1; a <= m; ++a) {
        std::int32_t v = std::max({up[a], left[a], out[a - 1]});
        if (match && a >= xi) v = std::max(v, take);
        out[a] = v;
      }
    }
    std::swap(prev, cur);
  }
  return {prev[(cols - 1) * stride + m], std::nullopt, Route::dp};
}

namespace {

bool is_subsequence(std::span<const Letter> needle, std::span<const Letter> hay) {
  std::size_t p = 0;
  for (Letter a : hay) {
    if (p < needle.size() && needle[p] == a) ++p;
  }
  return p == needle.size();
}

}  // namespace

LciResult lci_bruteforce(const Word& x, const Word& y, bool strict) {
  check_same_alphabet(x, y);
  if (x.size() > kBruteforceMaxLength || y.size() > kBruteforceMaxLength) {
    throw InputError("bruteforce route is limited to words of length <= " +
                     std::to_string(kBruteforceMaxLength));
  }
  const auto n = static_cast<std::size_t>(x.size());
  Count best = 0;
  std::vector<Letter> pick;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    pick.clear();
    bool increasing = true;
    for (std::size_t p = 0; p < n && increasing; ++p) {
      if (!(mask & (1u << p))) continue;
      const Letter a = x[static_cast<Count>(p)];
      if (!pick.empty() && (strict ? a <= pick.back() : a < pick.back())) increasing = false;
      pick.push_back(a);
    }
    if (!increasing || static_cast<Count>(pick.size()) <= best) continue;
    if (is_subsequence(pick, y.letters())) best = static_cast<Count>(pick.size());
  }
  return {best, std::nullopt, Route::bruteforce};
}

// ---------------------------------------------------------------------------
// Representation kernel.

namespace {

// max over t in [0, len) of min(a[t] - da, b[t] - db).
#if defined(__GNUC__) && defined(__x86_64__) && !defined(__clang__)
__attribute__((target_clones("avx2", "default")))
#endif
std::int32_t scan_max_min(const std::int32_t* a, const std::int32_t* b, std::int32_t da, std::int32_t db,
                          std::int64_t len) {
  std::int32_t best = std::numeric_limits<std::int32_t>::min();
  for (std::int64_t t = 0; t < len; ++t) {
    const std::int32_t va = a[t] - da;
    const std::int32_t vb = b[t] - db;
    const std::int32_t v = va < vb ? va : vb;
    best = best > v ? best : v;
  }
  return best;
}

std::int64_t scan_locate(const std::int32_t* a, const std::int32_t* b, std::int32_t da, std::int32_t db,
                         std::int64_t len, std::int32_t target) {
  for (std::int64_t t = 0; t < len; ++t) {
    if (std::min(a[t] - da, b[t] - db) == target) return t;
  }
  return -1;
}

struct SideTables {
  const WordStats* stats;
  Count top_total;
  // h[c] = c + (top letters after the c-th copy of the last picked letter), c >= 1.
  std::vector<std::int32_t> h;

  SideTables(const WordStats& s) : stats(&s), top_total(s.count(s.m())) {
    const Letter last = s.m() - 1;
    const auto occ = s.occurrences(last);
    h.assign(occ.size() + 1, 0);
    for (std::size_t c = 1; c <= occ.size(); ++c) {
      h[c] = static_cast<std::int32_t>(static_cast<Count>(c) + tail(occ[c - 1]));
    }
  }

  Count tail(Count t) const { return top_total - stats->prefix_count_unchecked(stats->m(), t); }
};

class RepresentationSearch {
 public:
  RepresentationSearch(const WordStats& x, const WordStats& y) : x_(x), y_(y), k_(static_cast<std::size_t>(x.m() - 1), 0) {}

  void run() { descend(1, 0, 0, 0); }

  Count best() const { return best_; }
  const std::vector<Count>& argmax() const { return argmax_; }

 private:
  void descend(Letter i, Count tau_x, Count tau_y, Count sum) {
    const int m = x_.stats->m();
    const Count nx = x_.stats->prefix_count_unchecked(i, tau_x);
    const Count ny = y_.stats->prefix_count_unchecked(i, tau_y);
    const auto occ_x = x_.stats->occurrences(i);
    const auto occ_y = y_.stats->occurrences(i);
    const Count avail = std::min(static_cast<Count>(occ_x.size()) - nx, static_cast<Count>(occ_y.size()) - ny);
    const auto slot = static_cast<std::size_t>(i - 1);

    if (i == m - 1) {
      // k_i = 0 leaves the stopping times in place.
      const Count zero = sum + std::min(x_.tail(tau_x), y_.tail(tau_y));
      consider(zero, slot, 0);
      if (avail <= 0) return;
      const std::int32_t* a = x_.h.data() + nx + 1;
      const std::int32_t* b = y_.h.data() + ny + 1;
      const auto da = static_cast<std::int32_t>(nx);
      const auto db = static_cast<std::int32_t>(ny);
      const Count peak = sum + scan_max_min(a, b, da, db, avail);
      if (peak > best_) {
        const std::int64_t t = scan_locate(a, b, da, db, avail, static_cast<std::int32_t>(peak - sum));
        consider(peak, slot, t + 1);
      }
      return;
    }

    k_[slot] = 0;
    descend(i + 1, tau_x, tau_y, sum);
    for (Count k = 1; k <= avail; ++k) {
      k_[slot] = k;
      descend(i + 1, occ_x[static_cast<std::size_t>(nx + k - 1)], occ_y[static_cast<std::size_t>(ny + k - 1)],
              sum + k);
    }
    k_[slot] = 0;
  }

  void consider(Count value, std::size_t slot, Count k_last) {
    if (value <= best_) return;
    best_ = value;
    argmax_ = k_;
    argmax_[slot] = k_last;
  }

  SideTables x_;
  SideTables y_;
  std::vector<Count> k_;
  Count best_ = -1;
  std::vector<Count> argmax_;
};

}  // namespace

LciResult lci_representation(const Word& x, const Word& y) {
  check_same_alphabet(x, y);
  if (x.size() != y.size()) throw InputError("the representation route needs words of equal length");
  if (x.m() == 1) return {x.size(), PickVector{}, Route::representation};
  const WordStats sx(x);
  const WordStats sy(y);
  RepresentationSearch search(sx, sy);
  search.run();
  return {search.best(), PickVector{search.argmax()}, Route::representation};
}

std::optional<Count> representation_objective(const WordStats& x, const WordStats& y, const PickVector& k) {
  if (x.m() != y.m()) throw InputError("words are over different alphabets");
  const StarCounts cx = star_counts(x, k);
  const StarCounts cy = star_counts(y, k);
  if (!cx.feasible || !cy.feasible) return std::nullopt;
  const Count total = k.total();
  const Letter top = x.m();
  return std::min(total + x.count(top) - cx.r_stat, total + y.count(top) - cy.r_stat);
}

// ---------------------------------------------------------------------------

Count longest_increasing(const Word& w, bool strict) {
  std::vector<Letter> tails;
  for (Letter a : w.letters()) {
    auto it = strict ? std::lower_bound(tails.begin(), tails.end(), a)
                     : std::upper_bound(tails.begin(), tails.end(), a);
    if (it == tails.end()) {
      tails.push_back(a);
    } else {
      *it = a;
    }
  }
  return static_cast<Count>(tails.size());
}

Count single_letter_alignment(const Word& x, const Word& y, Letter r) {
  check_same_alphabet(x, y);
  if (!x.alphabet().contains(r)) throw InputError("letter " + std::to_string(r) + " is outside the alphabet");
  const auto cx = std::count(x.letters().begin(), x.letters().end(), r);
  const auto cy = std::count(y.letters().begin(), y.letters().end(), r);
  return static_cast<Count>(std::min(cx, cy));
}

Count best_single_letter_alignment(const Word& x, const Word& y) {
  check_same_alphabet(x, y);
  const auto cx = count_letters(x);
  const auto cy = count_letters(y);
  Count best = 0;
  for (std::size_t r = 0; r < cx.size(); ++r) best = std::max(best, std::min(cx[r], cy[r]));
  return best;
}

// ---------------------------------------------------------------------------

void VerifyReport::merge(const VerifyReport& other) {
  checked += other.checked;
  mismatches += other.mismatches;
  if (!first_counterexample && other.first_counterexample) first_counterexample = other.first_counterexample;
}

namespace {

VerifyReport check_pair(const Word& x, const Word& y) {
  VerifyReport report;
  report.checked = 1;
  const Count expected = lci_dp(x, y).length;
  const Count actual = lci_representation(x, y).length;
  if (expected != actual) {
    report.mismatches = 1;
    report.first_counterexample = Counterexample{x, y, expected, actual};
  }
  return report;
}

template <class MakePair>
VerifyReport run_trials(std::int64_t trials, int threads, MakePair&& make_pair) {
  if (trials < 0) throw InputError("trial count must be >= 0");
  std::vector<VerifyReport> slots(static_cast<std::size_t>(trials));
  parallel_for(trials, threads, [&](std::int64_t t) {
    auto [x, y] = make_pair(t);
    slots[static_cast<std::size_t>(t)] = check_pair(x, y);
  });
  VerifyReport total;
  for (const auto& r : slots) total.merge(r);
  return total;
}

LetterLaw decreasing_law(int m) {
  std::vector<double> p(static_cast<std::size_t>(m));
  const double norm = m * (m + 1) / 2.0;
  for (int i = 0; i < m; ++i) p[static_cast<std::size_t>(i)] = (m - i) / norm;
  double sum = 0.0;
  for (int i = 1; i < m; ++i) sum += p[static_cast<std::size_t>(i)];
  p[0] = 1.0 - sum;
  return LetterLaw(std::move(p));
}

}  // namespace

VerifyReport verify_representation(std::uint64_t seed, std::int64_t trials, Count n_max, int m_max, int threads) {
  if (m_max < 2) throw InputError("m_max must be >= 2");
  if (n_max < 0) throw InputError("n_max must be >= 0");
  return run_trials(trials, threads, [&](std::int64_t t) {
    Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(t));
    const int m = 2 + static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(m_max - 1)));
    const auto n = static_cast<Count>(rng.uniform_below(static_cast<std::uint64_t>(n_max + 1)));
    const LetterLaw law = (t % 2 == 0) ? LetterLaw::uniform(m) : decreasing_law(m);
    Word x = sample_word(law, n, rng);
    Word y = sample_word(law, n, rng);
    return std::pair{std::move(x), std::move(y)};
  });
}

VerifyReport verify_representation_law(const LetterLaw& law, Count n, std::int64_t trials, std::uint64_t seed,
                                       int threads) {
  if (law.m() < 2) throw InputError("the representation check needs m >= 2");
  return run_trials(trials, threads, [&](std::int64_t t) {
    Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(t));
    Word x = sample_word(law, n, rng);
    Word y = sample_word(law, n, rng);
    return std::pair{std::move(x), std::move(y)};
  });
}

VerifyReport verify_representation_exhaustive(int m, Count n_max) {
  if (m < 2) throw InputError("the representation check needs m >= 2");
  if (n_max < 0) throw InputError("n_max must be >= 0");
  const Alphabet alphabet(m);
  VerifyReport total;
  for (Count n = 0; n <= n_max; ++n) {
    std::vector<Word> words;
    std::vector<Letter> digits(static_cast<std::size_t>(n), 1);
    for (;;) {
      words.emplace_back(digits, alphabet);
      std::size_t p = 0;
      while (p < digits.size() && digits[p] == m) digits[p++] = 1;
      if (p == digits.size()) break;
      ++digits[p];
    }
    for (const auto& x : words) {
      for (const auto& y : words) total.merge(check_pair(x, y));
    }
  }
  return total;
}

}  // namespace lci
