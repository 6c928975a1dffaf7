#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "lci/errors.hpp"
#include "lci/prob_laws.hpp"
#include "lci/rng.hpp"
#include "lci/stats.hpp"

using namespace lci;

namespace {

// Mean and variance from a PGF by central finite differences at x = 1.
Moments moments_from_pgf(const std::function<double(double)>& g) {
  const double h = 1e-4;
  const double d1 = (g(1 + h) - g(1 - h)) / (2 * h);
  const double d2 = (g(1 + h) - 2 * g(1) + g(1 - h)) / (h * h);
  return {d1, d2 + d1 - d1 * d1};
}

}  // namespace

TEST_CASE("LetterLaw validation") {
  CHECK(LetterLaw::uniform(4).is_uniform());
  CHECK(LetterLaw::uniform(4).p(3) == 0.25);
  CHECK_THROWS_AS(LetterLaw({0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(LetterLaw({1.2, -0.2}), DomainError);
  CHECK_THROWS_AS(LetterLaw::uniform(0), InputError);
  const LetterLaw law({0.4, 0.4, 0.2});
  CHECK(law.p_max() == 0.4);
  CHECK(law.multiplicity() == 2);
  CHECK_FALSE(law.is_uniform());
}

TEST_CASE("gap count generating function and moments") {
  for (int m : {2, 3, 5}) {
    const auto law = LetterLaw::uniform(m);
    CHECK(pgf_gap_count(law, 1, 2, 1.0) == doctest::Approx(1.0));
    CHECK(pgf_gap_count(law, 1, 2, 0.0) == doctest::Approx(0.5));
    const auto mo = moments_gap_count(law, 1, 2);
    CHECK(mo.mean == doctest::Approx(1.0));
    CHECK(mo.variance == doctest::Approx(2.0));
  }
  const LetterLaw law({0.5, 0.25, 0.25});
  const auto mo = moments_gap_count(law, 1, 2);
  CHECK(mo.mean == doctest::Approx(0.5));
  CHECK(mo.variance == doctest::Approx(0.75));
  const auto fd = moments_from_pgf([&](double x) { return pgf_gap_count(law, 1, 2, x); });
  CHECK(fd.mean == doctest::Approx(mo.mean).epsilon(1e-6));
  CHECK(fd.variance == doctest::Approx(mo.variance).epsilon(1e-5));
  CHECK_THROWS_AS(pgf_gap_count(law, 2, 2, 0.5), InputError);
}

TEST_CASE("joint gap generating function factorises the marginals") {
  const LetterLaw law({0.2, 0.5, 0.3});
  const std::vector<double> only_r{1.0, 0.3, 1.0};
  CHECK(pgf_gap_vector(law, 1, only_r) == doctest::Approx(pgf_gap_count(law, 1, 2, 0.3)));
  const std::vector<double> ones{0.7, 1.0, 1.0};
  CHECK(pgf_gap_vector(law, 1, ones) == doctest::Approx(1.0));
  // Mixed derivative at 1 gives E[N_r N_s]; subtract the means for the covariance.
  const double h = 1e-4;
  auto g = [&](double a, double b) {
    const std::vector<double> x{1.0, a, b};
    return pgf_gap_vector(law, 1, x);
  };
  const double mixed = (g(1 + h, 1 + h) - g(1 + h, 1 - h) - g(1 - h, 1 + h) + g(1 - h, 1 - h)) / (4 * h * h);
  const double mean_r = moments_gap_count(law, 1, 2).mean;
  const double mean_s = moments_gap_count(law, 1, 3).mean;
  CHECK(gap_count_covariance(law, 1, 2, 3) == doctest::Approx(mixed - mean_r * mean_s).epsilon(1e-5));
}

TEST_CASE("wasted-letter generating functions") {
  const auto law = LetterLaw::uniform(3);
  CHECK(pgf_nstar_component(law, 3, 1, 0, 0.3) == 1.0);
  CHECK(pgf_nstar_component(law, 3, 1, 5, 1.0) == doctest::Approx(1.0));
  CHECK(pgf_nstar_component(law, 3, 1, 3, 0.0) == doctest::Approx(0.125));
  CHECK(pgf_nstar(law, 3, PickVector{{0, 0}}, 0.4) == 1.0);
  CHECK(pgf_nstar(law, 3, PickVector{{2, 1}}, 0.5) == doctest::Approx(8.0 / 27.0));
  CHECK_THROWS_AS(pgf_nstar_component(law, 2, 2, 1, 0.5), InputError);

  const LetterLaw skew({0.5, 0.3, 0.2});
  const PickVector k{{3, 2}};
  const auto mo = moments_nstar(skew, 3, k);
  const auto fd = moments_from_pgf([&](double x) { return pgf_nstar(skew, 3, k, x); });
  CHECK(fd.mean == doctest::Approx(mo.mean).epsilon(1e-6));
  CHECK(fd.variance == doctest::Approx(mo.variance).epsilon(1e-5));
}

TEST_CASE("theta bounds agree with the variational forms") {
  for (double k : {1.0, 10.0, 100.0, 1000.0}) {
    for (double f : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      const double x = f * std::sqrt(k);
      const auto r = theta_r(k, x);
      CHECK(r.log <= 1e-12);
      CHECK(r.log == doctest::Approx(theta_r_variational(k, x)).epsilon(1e-7).scale(1.0));
      if (x <= k) {
        CHECK(theta_l(k, x).log == doctest::Approx(theta_l_variational(k, x)).epsilon(1e-7).scale(1.0));
      }
    }
  }
  CHECK(theta_r(5, 0).value == doctest::Approx(1.0));
  CHECK(theta_l(5, 0).value == doctest::Approx(1.0));
  CHECK(theta_l(4, 5).value == 0.0);
  CHECK(theta_l(4, 5).log == -std::numeric_limits<double>::infinity());
  // 0^0 = 1 at x = k.
  CHECK(std::isfinite(theta_l(4, 4).log));
  CHECK(theta_l(4, 4).log == doctest::Approx(4 * std::log(0.5)).epsilon(1e-12));
  CHECK_THROWS_AS(theta_r(1, -1), DomainError);
}

TEST_CASE("K_n bound and envelope") {
  CHECK(k_bound(10, 0).value == doctest::Approx(1.0));
  for (double n : {1.0, 10.0, 1000.0}) {
    for (double a : {-1.0, -0.5, 0.3, 1.0, 5.0}) {
      CHECK(k_bound(n, a * n).log == doctest::Approx(n * k_bound(1, a).log).epsilon(1e-9));
      CHECK(k_envelope_holds(kKEnvelope, n, a * n));
    }
  }
  const auto env = calibrate_k_envelope(-1, 10, 1e-3);
  CHECK(env.c >= kKEnvelope.c);
  CHECK(env.c == doctest::Approx(0.1699).epsilon(1e-3));
  CHECK_FALSE(k_envelope_holds(KEnvelope{0.2, 1.0}, 1.0, 1.0));
}

TEST_CASE("samplers") {
  CHECK(sample_word(LetterLaw::uniform(3), 50, 4) == sample_word(LetterLaw::uniform(3), 50, 4));
  CHECK(sample_word(LetterLaw::uniform(3), 0, 4).empty());

  Rng rng(31);
  const LetterLaw law({0.6, 0.3, 0.1});
  std::vector<double> freq(3, 0.0);
  const int draws = 200000;
  for (int t = 0; t < draws; ++t) freq[static_cast<std::size_t>(law.sample(rng) - 1)] += 1.0 / draws;
  for (Letter a = 1; a <= 3; ++a) {
    const double se = std::sqrt(law.p(a) * (1 - law.p(a)) / draws);
    CHECK(std::abs(freq[a - 1] - law.p(a)) <= 4 * se);
  }

  std::vector<double> geo;
  std::vector<double> nb;
  for (int t = 0; t < 20000; ++t) {
    geo.push_back(static_cast<double>(sample_geometric(0.25, rng)));
    nb.push_back(static_cast<double>(sample_negative_binomial(4, 0.5, rng)));
  }
  CHECK(moment_check(geo, 4.0, 0.75 / 0.0625).pass);
  CHECK(moment_check(nb, 8.0, 4 * 0.5 / 0.25).pass);
  CHECK(sample_geometric(1.0, 5) == 1);
  CHECK_THROWS_AS(sample_geometric(0.0, 5), DomainError);
}

TEST_CASE("limit covariance") {
  CHECK(limit_covariance(2).data == std::vector<double>{1.0});
  const auto c3 = limit_covariance(3);
  CHECK(c3.data == std::vector<double>{1.0, 0.5, 0.5, 1.0});
  for (int m : {2, 3, 4, 6}) {
    const auto c = limit_covariance(m);
    Eigen::MatrixXd mat(c.rows, c.cols);
    for (std::size_t r = 0; r < c.rows; ++r) {
      for (std::size_t s = 0; s < c.cols; ++s) mat(r, s) = c(r, s);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(mat);
    const auto ev = solver.eigenvalues();
    // 1/2 I + 1/2 J: eigenvalues 1/2 (m-2 times) and m/2.
    for (Eigen::Index e = 0; e + 1 < ev.size(); ++e) CHECK(ev(e) == doctest::Approx(0.5));
    CHECK(ev(ev.size() - 1) == doctest::Approx(m / 2.0));
  }
}

TEST_CASE("max-min perturbation") {
  const std::vector<double> a{1, 5}, b{3, 2}, c{0.5, -1}, d{0, 2};
  const auto r = max_min_perturbation(a, b, c, d);
  // max(1, 2) against max(1.5, 4): the bound is attained.
  CHECK(r.gap == doctest::Approx(2.0));
  CHECK(r.bound == doctest::Approx(2.0));
  const std::vector<double> shorter{1};
  CHECK_THROWS_AS(max_min_perturbation(a, b, c, shorter), InputError);
}
