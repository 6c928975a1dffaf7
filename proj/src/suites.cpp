#include "lci/suites.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "lci/errors.hpp"
#include "lci/lci_exact.hpp"
#include "lci/parallel.hpp"
#include "lci/percolation.hpp"
#include "lci/prob_laws.hpp"
#include "lci/rng.hpp"
#include "lci/stats.hpp"

namespace lci {

using json = nlohmann::ordered_json;

void SuiteReport::add_check(const std::string& name, bool ok, json fields) {
  json entry;
  entry["name"] = name;
  entry["pass"] = ok;
  for (auto& [key, value] : fields.items()) entry[key] = value;
  detail["checks"].push_back(std::move(entry));
  pass = pass && ok;
}

json SuiteReport::to_json() const {
  json out;
  out["suite"] = suite;
  out["pass"] = pass;
  for (const auto& [key, value] : detail.items()) out[key] = value;
  return out;
}

namespace {

json counterexample_json(const Counterexample& c) {
  return json{{"x", format_word(c.x)}, {"y", format_word(c.y)}, {"m", c.x.m()}, {"expected", c.expected}, {"actual", c.actual}};
}

void record_verify(SuiteReport& report, const std::string& name, const VerifyReport& r) {
  json fields{{"checked", r.checked}, {"mismatches", r.mismatches}};
  if (r.first_counterexample) {
    fields["counterexample"] = counterexample_json(*r.first_counterexample);
    if (!report.detail.contains("first_counterexample")) {
      report.detail["first_counterexample"] = fields["counterexample"];
    }
  }
  report.add_check(name, r.pass(), std::move(fields));
}

LetterLaw nonuniform_law(int m) {
  switch (m) {
    case 2: return LetterLaw({0.6, 0.4});
    case 3: return LetterLaw({0.5, 0.3, 0.2});
    case 4: return LetterLaw({0.4, 0.3, 0.2, 0.1});
  }
  throw InputError("no preset non-uniform law for m = " + std::to_string(m));
}

void check_trials(std::int64_t trials) {
  if (trials < 0) throw InputError("trials must be >= 0");
}

}  // namespace

// ---------------------------------------------------------------------------

SuiteReport run_representation_suite(std::uint64_t seed, std::int64_t trials_per_cell, int threads) {
  check_trials(trials_per_cell);
  SuiteReport report{"representation"};
  report.detail["seed"] = seed;
  record_verify(report, "exhaustive m=2 n<=6", verify_representation_exhaustive(2, 6));
  record_verify(report, "exhaustive m=3 n<=4", verify_representation_exhaustive(3, 4));
  std::uint64_t cell = 0;
  for (int m : {2, 3, 4}) {
    for (Count n : {10, 50, 200}) {
      for (bool uniform : {true, false}) {
        const LetterLaw law = uniform ? LetterLaw::uniform(m) : nonuniform_law(m);
        const auto r = verify_representation_law(law, n, trials_per_cell, stream_seed(seed, cell++), threads);
        record_verify(report,
                      "random m=" + std::to_string(m) + " n=" + std::to_string(n) + (uniform ? " uniform" : " nonuniform"),
                      r);
      }
    }
  }
  return report;
}

SuiteReport run_oracle_chain_suite(std::uint64_t seed, std::int64_t trials, int threads) {
  check_trials(trials);
  SuiteReport report{"oracle-chain"};
  report.detail["seed"] = seed;
  struct Outcome {
    bool weak_ok = true;
    bool strict_ok = true;
    json example;
  };
  std::vector<Outcome> outcomes(static_cast<std::size_t>(trials));
  parallel_for(trials, threads, [&](std::int64_t t) {
    Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(t));
    const int m = 1 + static_cast<int>(rng.uniform_below(4));
    const auto n1 = static_cast<Count>(rng.uniform_below(11));
    const auto n2 = static_cast<Count>(rng.uniform_below(11));
    const LetterLaw law = LetterLaw::uniform(m);
    const Word x = sample_word(law, n1, rng);
    const Word y = sample_word(law, n2, rng);
    Outcome& o = outcomes[static_cast<std::size_t>(t)];
    for (bool strict : {false, true}) {
      const Count dp = lci_dp(x, y, strict).length;
      const Count brute = lci_bruteforce(x, y, strict).length;
      if (dp != brute) {
        (strict ? o.strict_ok : o.weak_ok) = false;
        if (o.example.is_null()) {
          o.example = json{{"x", format_word(x)}, {"y", format_word(y)}, {"m", m}, {"strict", strict}, {"dp", dp}, {"bruteforce", brute}};
        }
      }
    }
  });
  std::int64_t weak_bad = 0;
  std::int64_t strict_bad = 0;
  for (const auto& o : outcomes) {
    weak_bad += !o.weak_ok;
    strict_bad += !o.strict_ok;
    if (!o.example.is_null() && !report.detail.contains("first_counterexample")) report.detail["first_counterexample"] = o.example;
  }
  report.add_check("bruteforce == dp (weak)", weak_bad == 0, {{"checked", trials}, {"mismatches", weak_bad}});
  report.add_check("bruteforce == dp (strict)", strict_bad == 0, {{"checked", trials}, {"mismatches", strict_bad}});
  return report;
}

SuiteReport run_percolation_suite(std::uint64_t seed, std::int64_t trials, int threads) {
  check_trials(trials);
  SuiteReport report{"percolation"};
  report.detail["seed"] = seed;
  std::vector<json> examples(static_cast<std::size_t>(trials));
  parallel_for(trials, threads, [&](std::int64_t t) {
    Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(t));
    const int m = 1 + static_cast<int>(rng.uniform_below(4));
    const auto n = static_cast<Count>(rng.uniform_below(101));
    const LetterLaw law = LetterLaw::uniform(m);
    const Word x = sample_word(law, n, rng);
    const Word y = sample_word(law, n, rng);
    const IndicatorLattice lattice = indicator_lattice(x, y);
    const Count dp = lci_dp(x, y).length;
    const std::int64_t t3 = lpp_t3(lattice);
    const std::int64_t tp = lpp_tp(lattice, 2);
    if (dp != t3 || dp != tp) {
      examples[static_cast<std::size_t>(t)] =
          json{{"x", format_word(x)}, {"y", format_word(y)}, {"m", m}, {"dp", dp}, {"lpp_t3", t3}, {"lpp_tp", tp}};
    }
  });
  std::int64_t bad = 0;
  for (const auto& e : examples) {
    if (e.is_null()) continue;
    ++bad;
    if (!report.detail.contains("first_counterexample")) report.detail["first_counterexample"] = e;
  }
  report.add_check("lpp_t3(indicator) == lci_dp", bad == 0, {{"checked", trials}, {"mismatches", bad}});
  return report;
}

// ---------------------------------------------------------------------------

namespace {

json moment_fields(const MomentReport& r) { return lci::to_json(r); }

// Draws letters until the word is long enough for every stopping time of k.
StarCounts star_counts_until_feasible(const LetterLaw& law, const PickVector& k, Rng& rng) {
  std::vector<Letter> letters;
  Count target = 32;
  for (;;) {
    while (static_cast<Count>(letters.size()) < target) letters.push_back(law.sample(rng));
    const StarCounts counts = star_counts(Word(letters, Alphabet(law.m())), k);
    if (counts.feasible) return counts;
    target *= 2;
  }
}

}  // namespace

SuiteReport run_laws_suite(const LawsSuiteConfig& cfg) {
  SuiteReport report{"laws"};
  report.detail["seed"] = cfg.seed;
  const LetterLaw law3 = LetterLaw::uniform(3);
  std::uint64_t stream = 0;

  // Gap counts of letters 2 and 3 between consecutive 1s.
  {
    std::vector<std::vector<double>> per_word3(static_cast<std::size_t>(cfg.gap_words));
    std::vector<std::vector<double>> per_word2(static_cast<std::size_t>(cfg.gap_words));
    const std::uint64_t base = stream_seed(cfg.seed, stream++);
    parallel_for(cfg.gap_words, cfg.threads, [&](std::int64_t w) {
      Rng rng = Rng::for_stream(base, static_cast<std::uint64_t>(w));
      const WordStats stats(sample_word(law3, cfg.gap_n, rng));
      Count prev = 0;
      for (Count pos : stats.occurrences(1)) {
        per_word3[static_cast<std::size_t>(w)].push_back(static_cast<double>(stats.window(3, prev, pos)));
        per_word2[static_cast<std::size_t>(w)].push_back(static_cast<double>(stats.window(2, prev, pos)));
        prev = pos;
      }
    });
    std::vector<double> gaps3;
    std::vector<double> gaps2;
    for (std::size_t w = 0; w < per_word3.size(); ++w) {
      gaps3.insert(gaps3.end(), per_word3[w].begin(), per_word3[w].end());
      gaps2.insert(gaps2.end(), per_word2[w].begin(), per_word2[w].end());
    }
    const Moments target = moments_gap_count(law3, 1, 3);
    const MomentReport mr = moment_check(gaps3, target.mean, target.variance, cfg.z);
    report.add_check("gap count N_3 between 1s: mean 1, variance 2", mr.pass, moment_fields(mr));

    const double rho = lag1_autocorrelation(gaps3);
    const double band = 4.0 / std::sqrt(static_cast<double>(gaps3.size()));
    report.add_check("gap counts: lag-1 autocorrelation", std::abs(rho) <= band,
                     {{"autocorrelation", rho}, {"band", band}, {"n", gaps3.size()}});

    const double m2 = mean_of(gaps2);
    const double m3 = mean_of(gaps3);
    std::vector<double> products(gaps3.size());
    for (std::size_t t = 0; t < gaps3.size(); ++t) products[t] = (gaps2[t] - m2) * (gaps3[t] - m3);
    const double cov = mean_of(products);
    const double se = std::sqrt(variance_of(products) / static_cast<double>(products.size()));
    const double target_cov = gap_count_covariance(law3, 1, 2, 3);
    report.add_check("gap counts: covariance of N_2 and N_3 in one gap", std::abs(cov - target_cov) <= cfg.z * se,
                     {{"covariance", cov}, {"target", target_cov}, {"se", se}});
  }

  // Generating function of N_3^* for k = (5, 3); with m = 3 this is R = N_3^{0, tau_2}.
  {
    const PickVector k{{5, 3}};
    std::vector<std::int64_t> nstar(static_cast<std::size_t>(cfg.pgf_words));
    const std::uint64_t base = stream_seed(cfg.seed, stream++);
    parallel_for(cfg.pgf_words, cfg.threads, [&](std::int64_t w) {
      Rng rng = Rng::for_stream(base, static_cast<std::uint64_t>(w));
      nstar[static_cast<std::size_t>(w)] = star_counts_until_feasible(law3, k, rng).r_stat;
    });
    for (double x : {0.0, 0.25, 0.5, 0.75}) {
      const PgfEstimate est = empirical_pgf(nstar, x);
      const double exact = pgf_nstar(law3, 3, k, x);
      report.add_check("pgf of N_3^*, k=(5,3), x=" + std::to_string(x).substr(0, 4),
                       std::abs(est.estimate - exact) <= cfg.z * est.standard_error,
                       {{"estimate", est.estimate}, {"se", est.standard_error}, {"exact", exact}});
    }
    std::vector<double> as_real(nstar.begin(), nstar.end());
    const Moments target = moments_nstar(law3, 3, k);
    const MomentReport mr = moment_check(as_real, target.mean, target.variance, cfg.z);
    report.add_check("N_3^* moments, k=(5,3)", mr.pass, moment_fields(mr));
  }

  // Concentration of letter counts.
  {
    const double radius = std::sqrt(static_cast<double>(cfg.hoeffding_n)) * std::log(static_cast<double>(cfg.hoeffding_n));
    std::vector<char> hit(static_cast<std::size_t>(cfg.hoeffding_trials), 0);
    const std::uint64_t base = stream_seed(cfg.seed, stream++);
    parallel_for(cfg.hoeffding_trials, cfg.threads, [&](std::int64_t t) {
      Rng rng = Rng::for_stream(base, static_cast<std::uint64_t>(t));
      Count ones = 0;
      for (Count p = 0; p < cfg.hoeffding_n; ++p) ones += (law3.sample(rng) == 1);
      hit[static_cast<std::size_t>(t)] = std::abs(static_cast<double>(ones) - cfg.hoeffding_n / 3.0) >= radius;
    });
    const auto hits = std::count(hit.begin(), hit.end(), 1);
    report.add_check("letter counts within sqrt(n) ln n of n/m", hits == 0,
                     {{"trials", cfg.hoeffding_trials}, {"n", cfg.hoeffding_n}, {"exceedances", hits}});
  }

  // Residual after the last occurrence is negligible at the sqrt(n) scale.
  {
    std::vector<double> ratio(static_cast<std::size_t>(cfg.residual_samples));
    const std::uint64_t base = stream_seed(cfg.seed, stream++);
    parallel_for(cfg.residual_samples, cfg.threads, [&](std::int64_t t) {
      Rng rng = Rng::for_stream(base, static_cast<std::uint64_t>(t));
      const Word w = sample_word(law3, cfg.residual_n, rng);
      const auto s = static_cast<double>(tail_residual(w, 1, 3));
      ratio[static_cast<std::size_t>(t)] = s * s / static_cast<double>(cfg.residual_n);
    });
    const double mean = mean_of(ratio);
    report.add_check("mean of S_{1,3}^2 / n below 0.01", mean < 0.01, {{"mean", mean}, {"n", cfg.residual_n}});
  }

  // Samplers.
  {
    Rng rng = Rng::for_stream(cfg.seed, 1000 + stream++);
    std::vector<double> geo(static_cast<std::size_t>(cfg.sampler_draws));
    for (auto& v : geo) v = static_cast<double>(sample_geometric(0.5, rng));
    const double mean = mean_of(geo);
    const double se = std::sqrt(2.0 / static_cast<double>(geo.size()));
    report.add_check("geometric(1/2) mean 2 within 3 SE", std::abs(mean - 2.0) <= 3.0 * se, {{"mean", mean}, {"se", se}});

    std::vector<double> nb(static_cast<std::size_t>(cfg.sampler_draws));
    for (auto& v : nb) v = static_cast<double>(sample_negative_binomial(5, 0.3, rng));
    const MomentReport mr = moment_check(nb, 5 / 0.3, 5 * 0.7 / (0.3 * 0.3), cfg.z);
    report.add_check("negative binomial BN(5, 0.3) moments", mr.pass, moment_fields(mr));

    // T_1^1 on uniform binary words against the exact geometric(1/2) distribution function.
    const LetterLaw law2 = LetterLaw::uniform(2);
    std::vector<Count> first(static_cast<std::size_t>(cfg.first_occurrence_words));
    for (auto& v : first) {
      Count pos = 1;
      while (law2.sample(rng) != 1) ++pos;
      v = pos;
    }
    std::sort(first.begin(), first.end());
    double d = 0.0;
    const auto total = static_cast<double>(first.size());
    for (std::size_t i = 0; i < first.size();) {
      std::size_t j = i;
      while (j < first.size() && first[j] == first[i]) ++j;
      const double exact_below = 1.0 - std::ldexp(1.0, -static_cast<int>(first[i] - 1));
      const double exact_at = 1.0 - std::ldexp(1.0, -static_cast<int>(first[i]));
      d = std::max({d, std::abs(static_cast<double>(i) / total - exact_below), std::abs(static_cast<double>(j) / total - exact_at)});
      i = j;
    }
    const double critical = ks_coefficient(0.01) / std::sqrt(total);
    report.add_check("T_1^1 on binary words ~ geometric(1/2), KS alpha=0.01", d <= critical,
                     {{"statistic", d}, {"critical", critical}});
  }
  return report;
}

// ---------------------------------------------------------------------------

SuiteReport run_tails_suite(std::uint64_t seed, std::int64_t trials, int threads) {
  check_trials(trials);
  if (trials < 1) throw InputError("the tail suite needs at least one trial");
  SuiteReport report{"tails"};
  report.detail["seed"] = seed;
  const std::vector<std::int64_t> ks{1, 10, 100, 1000};
  const std::vector<double> mults{0.5, 1.0, 2.0, 4.0};
  const std::int64_t k_max = ks.back();
  const LetterLaw law3 = LetterLaw::uniform(3);

  // sums[t][a] = sum over the first ks[a] gaps of (count of 3s between consecutive 1s - 1).
  std::vector<std::int64_t> sums(static_cast<std::size_t>(trials) * ks.size());
  parallel_for(trials, threads, [&](std::int64_t t) {
    Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(t));
    std::int64_t s = 0;
    std::int64_t gaps = 0;
    std::size_t next = 0;
    std::int64_t threes = 0;
    while (gaps < k_max) {
      const Letter a = law3.sample(rng);
      if (a == 3) ++threes;
      if (a != 1) continue;
      s += threes - 1;
      threes = 0;
      ++gaps;
      if (gaps == ks[next]) sums[static_cast<std::size_t>(t) * ks.size() + next++] = s;
    }
  });

  const auto n = static_cast<double>(trials);
  auto ucl = [n](double theta) { return theta + 4.0 * std::sqrt(theta * (1.0 - theta) / n) + 1.0 / n; };
  std::int64_t violations = 0;
  json grid = json::array();
  for (std::size_t a = 0; a < ks.size(); ++a) {
    const auto k = static_cast<double>(ks[a]);
    for (double mult : mults) {
      const double y = mult * std::sqrt(k) * std::sqrt(2.0);
      std::int64_t right = 0;
      std::int64_t left = 0;
      for (std::int64_t t = 0; t < trials; ++t) {
        const auto s = static_cast<double>(sums[static_cast<std::size_t>(t) * ks.size() + a]);
        right += s >= y;
        left += s <= -y;
      }
      const double fr = right / n;
      const double fl = left / n;
      const double tr = theta_r(k, y).value;
      const double tl = theta_l(k, y).value;
      const bool ok = fr <= ucl(tr) && fl <= ucl(tl);
      violations += !ok;
      grid.push_back(json{{"k", ks[a]}, {"x_over_sqrt_k", mult}, {"right_freq", fr}, {"theta_r", tr},
                          {"left_freq", fl}, {"theta_l", tl}, {"pass", ok}});
    }
  }
  report.detail["grid"] = grid;
  report.add_check("tail frequencies below theta_r / theta_l (4-sigma upper confidence limit)", violations == 0,
                   {{"trials", trials}, {"violations", violations}});

  // Envelope of K_n on n in {10, ..., 10^4}, x in [-n, 10n].
  std::int64_t points = 0;
  std::int64_t failures = 0;
  for (double nn : {10.0, 30.0, 100.0, 300.0, 1000.0, 3000.0, 10000.0}) {
    const std::int64_t steps = 22000;
    for (std::int64_t s = 0; s <= steps; ++s) {
      const double x = -nn + 11.0 * nn * static_cast<double>(s) / static_cast<double>(steps);
      ++points;
      failures += !k_envelope_holds(kKEnvelope, nn, x);
    }
  }
  const KEnvelope fine = calibrate_k_envelope(-1.0, 10.0, 1e-5);
  report.add_check("K_n envelope holds on the grid", failures == 0,
                   {{"c", kKEnvelope.c}, {"C", kKEnvelope.C}, {"points", points}, {"failures", failures}});
  report.add_check("recorded envelope constant below the fine-grid calibration", kKEnvelope.c <= fine.c,
                   {{"recorded_c", kKEnvelope.c}, {"calibrated_c", fine.c}});
  return report;
}

// ---------------------------------------------------------------------------

SuiteReport run_lemma_suite(std::uint64_t seed, std::int64_t trials, int threads) {
  check_trials(trials);
  SuiteReport report{"lemma-ineg"};
  report.detail["seed"] = seed;
  std::vector<json> examples(static_cast<std::size_t>(trials));
  parallel_for(trials, threads, [&](std::int64_t t) {
    Rng rng = Rng::for_stream(seed, static_cast<std::uint64_t>(t));
    const auto len = 1 + static_cast<std::size_t>(rng.uniform_below(8));
    auto draw = [&rng] {
      const auto raw = static_cast<std::int64_t>(rng.uniform_below(std::uint64_t{1} << 31)) - (std::int64_t{1} << 30);
      return std::ldexp(static_cast<double>(raw), -20);
    };
    std::vector<double> a(len), b(len), c(len), d(len);
    for (std::size_t i = 0; i < len; ++i) {
      a[i] = draw();
      b[i] = draw();
      c[i] = draw();
      d[i] = draw();
    }
    const MaxMinPerturbation r = max_min_perturbation(a, b, c, d);
    if (!(r.gap <= r.bound)) {
      examples[static_cast<std::size_t>(t)] = json{{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"gap", r.gap}, {"bound", r.bound}};
    }
  });
  std::int64_t bad = 0;
  for (const auto& e : examples) {
    if (e.is_null()) continue;
    ++bad;
    if (!report.detail.contains("first_counterexample")) report.detail["first_counterexample"] = e;
  }
  report.add_check("max-min perturbation inequality", bad == 0, {{"checked", trials}, {"violations", bad}});
  return report;
}

}  // namespace lci
