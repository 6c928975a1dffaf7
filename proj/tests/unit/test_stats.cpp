#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "lci/errors.hpp"
#include "lci/rng.hpp"
#include "lci/stats.hpp"

using namespace lci;

namespace {

// sup |F_a - F_b| evaluated at every sample point by direct counting.
double ks_by_counting(const std::vector<double>& a, const std::vector<double>& b) {
  auto cdf = [](const std::vector<double>& v, double x) {
    return static_cast<double>(std::count_if(v.begin(), v.end(), [&](double y) { return y <= x; })) / v.size();
  };
  double d = 0.0;
  for (const auto* v : {&a, &b}) {
    for (double x : *v) d = std::max(d, std::abs(cdf(a, x) - cdf(b, x)));
  }
  return d;
}

SampleBatch make_batch(std::vector<double> values) {
  SampleBatch batch;
  batch.values = std::move(values);
  batch.meta = {"limit_test", 2, 100, 9, {{"grid", "100"}, {"what", "limit"}}};
  return batch;
}

}  // namespace

TEST_CASE("empirical distribution") {
  const std::vector<double> v{1, 2, 3};
  const Ecdf f(v);
  CHECK(f(2) == doctest::Approx(2.0 / 3));
  CHECK(f(0.5) == 0.0);
  CHECK(f(3) == 1.0);
  CHECK(f(7) == 1.0);
  const std::vector<double> dup{1, 1};
  CHECK(Ecdf(dup)(1) == 1.0);
  CHECK_THROWS_AS(Ecdf(std::vector<double>{}), InputError);
}

TEST_CASE("two-sample KS") {
  const std::vector<double> a{0.3, 1.2, -0.7, 2.0};
  const auto same = ks_two_sample(a, a, 0.01);
  CHECK(same.statistic == 0.0);
  CHECK(same.pass);

  const std::vector<double> zeros(50, 0.0), ones(50, 1.0);
  const auto apart = ks_two_sample(zeros, ones, 0.01);
  CHECK(apart.statistic == 1.0);
  CHECK_FALSE(apart.pass);

  CHECK(ks_coefficient(0.05) == doctest::Approx(1.3581).epsilon(1e-4));
  CHECK(ks_coefficient(0.01) == doctest::Approx(1.6276).epsilon(1e-4));
  CHECK(ks_critical(0.01, 2000, 2000) == doctest::Approx(1.6276 * std::sqrt(4000.0 / (2000.0 * 2000.0))).epsilon(1e-4));
  const auto biased = ks_two_sample(zeros, ones, 0.01, 1.0);
  CHECK(biased.pass);
  CHECK(biased.bias_allowance == 1.0);
  CHECK_THROWS_AS(ks_critical(0.0, 10, 10), DomainError);

  Rng rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> x, y;
    const auto nx = 1 + rng.uniform_below(40);
    const auto ny = 1 + rng.uniform_below(40);
    for (std::uint64_t i = 0; i < nx; ++i) x.push_back(static_cast<double>(rng.uniform_below(10)));
    for (std::uint64_t i = 0; i < ny; ++i) y.push_back(rng.normal() * 3 + 4);
    CHECK(ks_statistic(x, y) == doctest::Approx(ks_by_counting(x, y)).epsilon(1e-15));
  }

  const auto json = to_json(same);
  for (const char* key : {"statistic", "n1", "n2", "alpha", "critical", "bias_allowance", "pass"}) {
    CHECK(json.contains(key));
  }
}

TEST_CASE("moment_check") {
  const std::vector<double> constant(40, 2.5);
  CHECK(moment_check(constant, 2.5, 0.0).pass);

  Rng rng(12);
  std::vector<double> normals;
  for (int i = 0; i < 5000; ++i) normals.push_back(rng.normal());
  const auto ok = moment_check(normals, 0.0, 1.0);
  CHECK(ok.pass);
  const auto shifted = moment_check(normals, 10 * ok.mean_se, 1.0);
  CHECK_FALSE(shifted.mean_ok);
  CHECK_FALSE(shifted.pass);
  CHECK_FALSE(moment_check(normals, 0.0, 1.5).variance_ok);
  CHECK_THROWS_AS(moment_check(std::vector<double>(10, 1.0), 1.0, 0.0), InputError);
}

TEST_CASE("empirical generating function") {
  const std::vector<std::int64_t> v{0, 1, 2, 0, 3};
  const auto at_one = empirical_pgf(v, 1.0);
  CHECK(at_one.estimate == 1.0);
  CHECK(at_one.standard_error == 0.0);
  CHECK(empirical_pgf(v, 0.0).estimate == doctest::Approx(0.4));
  const std::vector<std::int64_t> zeros(7, 0);
  CHECK(empirical_pgf(zeros, 0.3).estimate == 1.0);
  CHECK(empirical_pgf(v, 0.5).estimate == doctest::Approx((1 + 0.5 + 0.25 + 1 + 0.125) / 5));
}

TEST_CASE("simple summaries") {
  const std::vector<double> v{1, 2, 3, 4};
  CHECK(mean_of(v) == 2.5);
  CHECK(variance_of(v) == doctest::Approx(5.0 / 3));
  CHECK(lag1_autocorrelation(std::vector<double>(5, 1.0)) == 0.0);
  const std::vector<double> alternating{1, -1, 1, -1, 1, -1};
  CHECK(lag1_autocorrelation(alternating) < -0.5);
}

TEST_CASE("sample CSV round trip and schema errors") {
  const auto batch = make_batch({0.1, -1.0 / 3, 12345.678901234567});
  std::stringstream io;
  write_batch_csv(io, batch);
  const std::string text = io.str();
  CHECK(text.find(kSampleCsvHeader) != std::string::npos);
  CHECK(text.rfind("# grid=100", 0) == 0);
  const auto back = read_batch_csv(io);
  CHECK(back.values == batch.values);
  CHECK(back.meta == batch.meta);

  std::stringstream no_header("limit_test,2,100,9,0,0.5\n");
  CHECK_THROWS_AS(read_batch_csv(no_header), SchemaError);
  std::stringstream wrong_header("kind,m,seed,value\n");
  CHECK_THROWS_AS(read_batch_csv(wrong_header), SchemaError);
  std::stringstream skipped(std::string(kSampleCsvHeader) + "\nk,2,10,1,0,0.5\nk,2,10,1,2,0.5\n");
  CHECK_THROWS_AS(read_batch_csv(skipped), SchemaError);
  std::stringstream mixed(std::string(kSampleCsvHeader) + "\nk,2,10,1,0,0.5\nk,3,10,1,1,0.5\n");
  CHECK_THROWS_AS(read_batch_csv(mixed), SchemaError);
  std::stringstream bad_value(std::string(kSampleCsvHeader) + "\nk,2,10,1,0,abc\n");
  CHECK_THROWS_AS(read_batch_csv(bad_value), SchemaError);

  const auto json = batch_to_json(batch);
  CHECK(json["kind"] == "limit_test");
  CHECK(json["values"].size() == 3);
}
