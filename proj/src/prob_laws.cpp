#include "lci/prob_laws.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "lci/errors.hpp"

namespace lci {

namespace {

constexpr double kSumTolerance = 1e-12;
constexpr double kTieTolerance = 1e-12;
constexpr double kFlushLog = -700.0;
constexpr double kLn2 = 0.69314718055994530942;

// a * ln(b) with the convention 0 * ln(0) = 0.
double xlogy(double a, double b) { return a == 0.0 ? 0.0 : a * std::log(b); }

void check_letter(const LetterLaw& law, Letter a) {
  if (a < 1 || a > law.m()) {
    throw InputError("letter " + std::to_string(a) + " is outside 1.." + std::to_string(law.m()));
  }
}

void check_pair(const LetterLaw& law, Letter i, Letter r) {
  check_letter(law, i);
  check_letter(law, r);
  if (i == r) throw InputError("gap counts need two distinct letters");
  if (law.p(i) <= 0.0) throw DomainError("letter " + std::to_string(i) + " has probability 0");
}

template <class F>
double golden_minimum(F&& f, double lo, double hi) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < 300 && b - a > 1e-15 * (1.0 + std::abs(a)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return std::min({fc, fd, f(lo), f(hi)});
}

}  // namespace

LetterLaw::LetterLaw(std::vector<double> probs, bool uniform)
    : probs_(std::move(probs)), uniform_(uniform) {
  cumulative_.resize(probs_.size());
  std::partial_sum(probs_.begin(), probs_.end(), cumulative_.begin());
  if (!cumulative_.empty()) cumulative_.back() = 1.0;
}

LetterLaw LetterLaw::uniform(int m) {
  if (m < 1) throw InputError("alphabet size must be >= 1");
  return LetterLaw(std::vector<double>(static_cast<std::size_t>(m), 1.0 / m), true);
}

LetterLaw::LetterLaw(std::vector<double> probs) : LetterLaw(std::move(probs), false) {
  if (probs_.empty()) throw DomainError("a letter law needs at least one letter");
  double sum = 0.0;
  for (double p : probs_) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("letter probabilities must be >= 0");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw DomainError("letter probabilities sum to " + std::to_string(sum) + ", not 1");
  }
  const double first = probs_.front();
  uniform_ = std::all_of(probs_.begin(), probs_.end(),
                         [first](double p) { return std::abs(p - first) <= kTieTolerance; });
}

double LetterLaw::p_max() const noexcept { return *std::max_element(probs_.begin(), probs_.end()); }

int LetterLaw::multiplicity() const noexcept {
  const double top = p_max();
  return static_cast<int>(
      std::count_if(probs_.begin(), probs_.end(), [top](double p) { return top - p <= kTieTolerance; }));
}

Letter LetterLaw::sample(Rng& rng) const noexcept {
  if (uniform_) return static_cast<Letter>(rng.uniform_below(probs_.size())) + 1;
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto idx = std::min<std::ptrdiff_t>(it - cumulative_.begin(),
                                            static_cast<std::ptrdiff_t>(probs_.size()) - 1);
  return static_cast<Letter>(idx) + 1;
}

// ---------------------------------------------------------------------------

double pgf_gap_count(const LetterLaw& law, Letter i, Letter r, double x) {
  check_pair(law, i, r);
  const double denom = law.p(i) + law.p(r) - law.p(r) * x;
  if (denom <= 0.0) throw DomainError("pgf argument outside the radius of convergence");
  return law.p(i) / denom;
}

Moments moments_gap_count(const LetterLaw& law, Letter i, Letter r) {
  check_pair(law, i, r);
  const double q = law.p(r) / law.p(i);
  return {q, q * (1.0 + q)};
}

double gap_count_covariance(const LetterLaw& law, Letter i, Letter r, Letter s) {
  check_pair(law, i, r);
  check_pair(law, i, s);
  if (r == s) return moments_gap_count(law, i, r).variance;
  return law.p(r) * law.p(s) / (law.p(i) * law.p(i));
}

double pgf_gap_vector(const LetterLaw& law, Letter i, std::span<const double> x) {
  check_letter(law, i);
  if (x.size() != static_cast<std::size_t>(law.m())) {
    throw InputError("pgf_gap_vector needs one argument per letter");
  }
  if (law.p(i) <= 0.0) throw DomainError("letter " + std::to_string(i) + " has probability 0");
  double s = 0.0;
  for (Letter r = 1; r <= law.m(); ++r) {
    if (r != i) s += law.p(r) * x[static_cast<std::size_t>(r - 1)];
  }
  if (s >= 1.0) throw DomainError("pgf argument outside the radius of convergence");
  return law.p(i) / (1.0 - s);
}

double pgf_nstar_component(const LetterLaw& law, Letter i, Letter j, Count k_j, double x) {
  if (k_j < 0) throw InputError("pick counts must be nonnegative");
  return std::pow(pgf_gap_count(law, j, i, x), static_cast<double>(k_j));
}

Moments moments_nstar_component(const LetterLaw& law, Letter i, Letter j, Count k_j) {
  if (k_j < 0) throw InputError("pick counts must be nonnegative");
  const Moments g = moments_gap_count(law, j, i);
  return {g.mean * static_cast<double>(k_j), g.variance * static_cast<double>(k_j)};
}

namespace {
void check_prefix(const LetterLaw& law, Letter i, const PickVector& k) {
  check_letter(law, i);
  if (k.size() + 1 < static_cast<std::size_t>(i)) {
    throw InputError("pick vector is shorter than the letters below " + std::to_string(i));
  }
}
}  // namespace

double pgf_nstar(const LetterLaw& law, Letter i, const PickVector& k, double x) {
  check_prefix(law, i, k);
  double out = 1.0;
  for (Letter j = 1; j < i; ++j) out *= pgf_nstar_component(law, i, j, k[static_cast<std::size_t>(j - 1)], x);
  return out;
}

Moments moments_nstar(const LetterLaw& law, Letter i, const PickVector& k) {
  check_prefix(law, i, k);
  Moments out;
  for (Letter j = 1; j < i; ++j) {
    const Moments c = moments_nstar_component(law, i, j, k[static_cast<std::size_t>(j - 1)]);
    out.mean += c.mean;
    out.variance += c.variance;
  }
  return out;
}

// ---------------------------------------------------------------------------

LogBound make_log_bound(double log_value) noexcept {
  if (log_value < kFlushLog) return {log_value, 0.0};
  return {log_value, std::exp(log_value)};
}

LogBound theta_r(double k, double x) {
  if (!(k >= 0.0) || !(x >= 0.0)) throw DomainError("theta_r needs k >= 0 and x >= 0");
  return make_log_bound(xlogy(x + 2 * k, x + 2 * k) - xlogy(x + k, 2 * x + 2 * k) - xlogy(k, 2 * k));
}

LogBound theta_l(double k, double x) {
  if (!(k >= 0.0) || !(x >= 0.0)) throw DomainError("theta_l needs k >= 0 and x >= 0");
  // A sum of k variables bounded below by -1 cannot fall below -k.
  if (x > k) return {-std::numeric_limits<double>::infinity(), 0.0};
  return make_log_bound(xlogy(2 * k - x, 2 * k - x) - xlogy(k - x, 2 * k - 2 * x) - xlogy(k, 2 * k));
}

double theta_r_variational(double k, double x) {
  if (!(k >= 0.0) || !(x >= 0.0)) throw DomainError("theta_r needs k >= 0 and x >= 0");
  auto f = [k, x](double t) {
    const double tail = k == 0.0 ? 0.0 : k * std::log(2.0 - std::exp(t));
    return -t * (x + k) - tail;
  };
  return golden_minimum(f, 0.0, kLn2 * (1.0 - 1e-15));
}

double theta_l_variational(double k, double x) {
  if (!(k >= 0.0) || !(x >= 0.0)) throw DomainError("theta_l needs k >= 0 and x >= 0");
  // The infimum is approached as t -> infinity when x >= k; t is capped at 200.
  auto f = [k, x](double t) { return t * (k - x) - k * std::log(2.0 - std::exp(-t)); };
  return golden_minimum(f, 0.0, 200.0);
}

LogBound k_bound(double n, double x) {
  if (!(n >= 1.0)) throw DomainError("k_bound needs n >= 1");
  if (!(x >= -n)) throw DomainError("k_bound needs x >= -n");
  return make_log_bound(xlogy(x + 2 * n, x + 2 * n) - xlogy(x + n, 2 * x + 2 * n) - xlogy(n, 2 * n));
}

KEnvelope calibrate_k_envelope(double lo, double hi, double step) {
  if (!(step > 0.0) || !(lo < hi) || lo < -1.0) throw InputError("bad calibration grid");
  double best = std::numeric_limits<double>::infinity();
  const auto steps = static_cast<std::int64_t>(std::floor((hi - lo) / step + 0.5));
  for (std::int64_t s = 0; s <= steps; ++s) {
    const double a = lo + static_cast<double>(s) * step;
    const double scale = std::min(std::abs(a), a * a);
    if (scale < 1e-12) continue;
    best = std::min(best, -k_bound(1.0, a).log / scale);
  }
  return {best, 1.0};
}

double k_envelope_log(const KEnvelope& env, double n, double x) {
  const double a = x / n;
  return std::log(env.C) - env.c * n * std::min(std::abs(a), a * a);
}

bool k_envelope_holds(const KEnvelope& env, double n, double x) {
  const double bound = k_envelope_log(env, n, x);
  return k_bound(n, x).log <= bound + 1e-12 * (1.0 + std::abs(bound));
}

// ---------------------------------------------------------------------------

Word sample_word(const LetterLaw& law, Count n, Rng& rng) {
  if (n < 0) throw InputError("word length must be >= 0");
  std::vector<Letter> letters(static_cast<std::size_t>(n));
  for (auto& a : letters) a = law.sample(rng);
  return Word(std::move(letters), Alphabet(law.m()));
}

Word sample_word(const LetterLaw& law, Count n, std::uint64_t seed) {
  Rng rng(seed);
  return sample_word(law, n, rng);
}

Count sample_geometric(double p, Rng& rng) {
  if (!(p > 0.0) || p > 1.0) throw DomainError("geometric parameter must lie in (0, 1]");
  if (p == 1.0) return 1;
  const double draw = std::ceil(std::log(rng.uniform_open0()) / std::log1p(-p));
  return std::max<Count>(1, static_cast<Count>(draw));
}

Count sample_geometric(double p, std::uint64_t seed) {
  Rng rng(seed);
  return sample_geometric(p, rng);
}

Count sample_negative_binomial(Count j, double p, Rng& rng) {
  if (j < 0) throw InputError("negative binomial needs j >= 0");
  Count total = 0;
  for (Count l = 0; l < j; ++l) total += sample_geometric(p, rng);
  return total;
}

Count sample_negative_binomial(Count j, double p, std::uint64_t seed) {
  Rng rng(seed);
  return sample_negative_binomial(j, p, rng);
}

// ---------------------------------------------------------------------------

DenseMatrix limit_covariance(int m) {
  if (m < 2) throw InputError("the limiting covariance needs m >= 2");
  const auto d = static_cast<std::size_t>(m - 1);
  DenseMatrix out{d, d, std::vector<double>(d * d, 0.5)};
  for (std::size_t i = 0; i < d; ++i) out(i, i) = 1.0;
  return out;
}

MaxMinPerturbation max_min_perturbation(std::span<const double> a, std::span<const double> b,
                                        std::span<const double> c, std::span<const double> d) {
  const std::size_t len = a.size();
  if (len == 0 || b.size() != len || c.size() != len || d.size() != len) {
    throw InputError("max_min_perturbation needs four nonempty sequences of equal length");
  }
  double before = -std::numeric_limits<double>::infinity();
  double after = -std::numeric_limits<double>::infinity();
  double bound = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    before = std::max(before, std::min(a[k], b[k]));
    after = std::max(after, std::min(a[k] + c[k], b[k] + d[k]));
    bound = std::max({bound, std::abs(c[k]), std::abs(d[k])});
  }
  return {std::abs(before - after), bound};
}

}  // namespace lci
