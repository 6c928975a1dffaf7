#include "lci/alphabet_words.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "lci/errors.hpp"

namespace lci {

Alphabet::Alphabet(int m) : m_(m) {
  if (m < 1) throw InputError("alphabet size must be >= 1, got " + std::to_string(m));
}

Word::Word(std::vector<Letter> letters, Alphabet alphabet)
    : letters_(std::move(letters)), alphabet_(alphabet) {
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (!alphabet_.contains(letters_[i])) {
      throw InputError("letter " + std::to_string(letters_[i]) + " at position " +
                       std::to_string(i + 1) + " is outside 1.." + std::to_string(alphabet_.size()));
    }
  }
}

Word Word::appended(Letter a) const {
  auto copy = letters_;
  copy.push_back(a);
  return Word(std::move(copy), alphabet_);
}

Count PickVector::total() const noexcept { return std::accumulate(k.begin(), k.end(), Count{0}); }

WordStats::WordStats(const Word& w)
    : m_(w.m()),
      n_(w.size()),
      occ_(static_cast<std::size_t>(w.m())),
      prefix_(static_cast<std::size_t>(w.m()) * static_cast<std::size_t>(w.size() + 1), 0) {
  const auto stride = static_cast<std::size_t>(n_ + 1);
  for (Count p = 1; p <= n_; ++p) occ_[static_cast<std::size_t>(w[p - 1] - 1)].push_back(p);
  for (int r = 0; r < m_; ++r) {
    std::int32_t* row = prefix_.data() + static_cast<std::size_t>(r) * stride;
    std::int32_t running = 0;
    for (Count p = 1; p <= n_; ++p) {
      if (w[p - 1] == r + 1) ++running;
      row[p] = running;
    }
  }
}

void WordStats::check_letter(Letter r) const {
  if (r < 1 || r > m_) {
    throw InputError("letter " + std::to_string(r) + " is outside 1.." + std::to_string(m_));
  }
}

Count WordStats::count(Letter r) const {
  check_letter(r);
  return static_cast<Count>(occ_[static_cast<std::size_t>(r - 1)].size());
}

Count WordStats::window(Letter r, Count s, Count t) const {
  check_letter(r);
  if (s < 0 || s > t || t > n_) {
    throw InputError("window (" + std::to_string(s) + ", " + std::to_string(t) +
                     "] is not inside [0, " + std::to_string(n_) + "]");
  }
  return prefix_count_unchecked(r, t) - prefix_count_unchecked(r, s);
}

std::optional<Count> WordStats::occurrence(Letter r, Count j) const {
  check_letter(r);
  if (j < 0) throw InputError("occurrence index must be >= 0");
  if (j == 0) return Count{0};
  const auto& positions = occ_[static_cast<std::size_t>(r - 1)];
  if (j > static_cast<Count>(positions.size())) return std::nullopt;
  return positions[static_cast<std::size_t>(j - 1)];
}

std::span<const Count> WordStats::occurrences(Letter r) const {
  check_letter(r);
  return occ_[static_cast<std::size_t>(r - 1)];
}

std::vector<Count> count_letters(const Word& w) {
  std::vector<Count> counts(static_cast<std::size_t>(w.m()), 0);
  for (Letter a : w.letters()) ++counts[static_cast<std::size_t>(a - 1)];
  return counts;
}

Count window_count(const Word& w, Letter r, Count s, Count t) {
  if (s < 0 || s > t || t > w.size()) {
    throw InputError("window (" + std::to_string(s) + ", " + std::to_string(t) +
                     "] is not inside [0, " + std::to_string(w.size()) + "]");
  }
  if (!w.alphabet().contains(r)) throw InputError("letter out of range");
  Count c = 0;
  for (Count p = s + 1; p <= t; ++p) c += (w[p - 1] == r);
  return c;
}

std::optional<Count> occurrence_position(const Word& w, Letter r, Count j) {
  if (!w.alphabet().contains(r)) throw InputError("letter out of range");
  if (j < 0) throw InputError("occurrence index must be >= 0");
  if (j == 0) return Count{0};
  Count seen = 0;
  for (Count p = 1; p <= w.size(); ++p) {
    if (w[p - 1] == r && ++seen == j) return p;
  }
  return std::nullopt;
}

StarCounts star_counts(const WordStats& stats, const PickVector& k) {
  const int m = stats.m();
  if (m < 2) throw InputError("star_counts needs an alphabet of size >= 2");
  if (k.size() != static_cast<std::size_t>(m - 1)) {
    throw InputError("pick vector has length " + std::to_string(k.size()) + ", expected " +
                     std::to_string(m - 1));
  }
  for (Count ki : k.k) {
    if (ki < 0) throw InputError("pick counts must be nonnegative");
  }

  StarCounts out;
  out.nstar.assign(static_cast<std::size_t>(m - 1), 0);
  const Letter top = m;
  Count tau = 0;
  for (Letter i = 1; i < m; ++i) {
    const Count nstar = stats.prefix_count_unchecked(i, tau);
    out.nstar[static_cast<std::size_t>(i - 1)] = nstar;
    const Count ki = k[static_cast<std::size_t>(i - 1)];
    if (ki == 0) continue;
    const auto occ = stats.occurrences(i);
    if (nstar + ki > static_cast<Count>(occ.size())) {
      out.feasible = false;
      return out;
    }
    // Gaps (T_i^{j-1}, T_i^j] for j = N_i^*+1 .. N_i^*+k_i, the first one clipped at tau.
    Count from = tau;
    for (Count j = nstar + 1; j <= nstar + ki; ++j) {
      const Count to = occ[static_cast<std::size_t>(j - 1)];
      out.r_stat += stats.prefix_count_unchecked(top, to) - stats.prefix_count_unchecked(top, from);
      from = to;
    }
    tau = from;
  }
  out.stop = tau;
  return out;
}

StarCounts star_counts(const Word& w, const PickVector& k) { return star_counts(WordStats(w), k); }

Count tail_residual(const WordStats& stats, Letter i, Letter r) {
  if (i == r) throw InputError("tail_residual needs two distinct letters");
  const auto occ_i = stats.occurrences(i);
  const Count last = occ_i.empty() ? 0 : occ_i.back();
  return stats.window(r, last, stats.n());
}

Count tail_residual(const Word& w, Letter i, Letter r) { return tail_residual(WordStats(w), i, r); }

Word parse_word(std::string_view text, int m) {
  Alphabet alphabet(m);
  std::vector<Letter> letters;
  const bool has_comma = text.find(',') != std::string_view::npos;
  if (!has_comma && m <= 9) {
    for (char c : text) {
      if (c < '0' || c > '9') {
        throw InputError(std::string("unexpected character '") + c + "' in word");
      }
      letters.push_back(c - '0');
    }
    return Word(std::move(letters), alphabet);
  }
  std::size_t pos = 0;
  while (pos <= text.size() && !text.empty()) {
    const std::size_t next = std::min(text.find(',', pos), text.size());
    auto token = text.substr(pos, next - pos);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    Letter value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
      throw InputError("cannot parse letter '" + std::string(token) + "'");
    }
    letters.push_back(value);
    pos = next + 1;
    if (next == text.size()) break;
  }
  return Word(std::move(letters), alphabet);
}

std::string format_word(const Word& w) {
  std::string out;
  const bool digits = w.m() <= 9;
  for (Count p = 0; p < w.size(); ++p) {
    if (!digits && p > 0) out += ',';
    out += std::to_string(w[p]);
  }
  return out;
}

}  // namespace lci
