#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace lci {

struct BatchMeta {
  std::string kind;
  int m = 0;
  std::int64_t n_or_G = 0;
  std::uint64_t seed = 0;
  /// Remaining configuration, serialised as "# key=value" lines.
  std::map<std::string, std::string> params;

  friend bool operator==(const BatchMeta&, const BatchMeta&) = default;
};

struct SampleBatch {
  std::vector<double> values;
  BatchMeta meta;
};

/// Header of the sample CSV schema.
inline constexpr const char* kSampleCsvHeader = "kind,m,n_or_G,seed,sample_index,value";

/// "# key=value" lines for the params, the header, then one row per sample.
/// Values are printed with 17 significant digits so they round-trip exactly.
void write_batch_csv(std::ostream& out, const SampleBatch& batch);
/// Throws SchemaError on a missing or different header, a malformed row, or
/// rows that disagree on kind/m/n_or_G/seed or skip a sample index.
SampleBatch read_batch_csv(std::istream& in);
nlohmann::ordered_json batch_to_json(const SampleBatch& batch);

/// Right-continuous empirical distribution function.
class Ecdf {
 public:
  explicit Ecdf(std::span<const double> values);
  double operator()(double x) const;
  std::span<const double> sorted() const noexcept { return sorted_; }

 private:
  std::vector<double> sorted_;
};

struct KsReport {
  double statistic = 0.0;
  std::int64_t n1 = 0;
  std::int64_t n2 = 0;
  double alpha = 0.0;
  double critical = 0.0;
  double bias_allowance = 0.0;
  bool pass = false;
};

/// c(alpha) = sqrt(-ln(alpha / 2) / 2): 1.358 at 0.05, 1.628 at 0.01.
double ks_coefficient(double alpha);
double ks_critical(double alpha, std::int64_t n1, std::int64_t n2);
/// sup |F_a - F_b| by a merged sweep over the sorted samples.
double ks_statistic(std::span<const double> a, std::span<const double> b);
KsReport ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha,
                       double bias_allowance = 0.0);
KsReport ks_two_sample(const SampleBatch& a, const SampleBatch& b, double alpha, double bias_allowance = 0.0);
nlohmann::ordered_json to_json(const KsReport& report);

struct MomentReport {
  std::int64_t n = 0;
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  double target_mean = 0.0;
  double target_variance = 0.0;
  double mean_se = 0.0;
  double variance_se = 0.0;
  double z = 0.0;
  bool mean_ok = false;
  bool variance_ok = false;
  bool pass = false;
};

/**
 * |mean - target_mean| <= z sqrt(var / N) and |var - target_var| <= z se(var),
 * where se(var) = sqrt((m4 - var^2) / N) uses the empirical fourth central
 * moment m4. Requires N >= 30.
 */
MomentReport moment_check(std::span<const double> values, double target_mean, double target_var, double z = 4.0);
nlohmann::ordered_json to_json(const MomentReport& report);

struct PgfEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
};

/// Mean of x^v over the batch and its standard error. Values must be >= 0, |x| <= 1.
PgfEstimate empirical_pgf(std::span<const std::int64_t> values, double x);

/// Lag-1 sample autocorrelation; 0 for a constant sequence.
double lag1_autocorrelation(std::span<const double> values);

double mean_of(std::span<const double> values);
/// Unbiased sample variance (0 for fewer than two values).
double variance_of(std::span<const double> values);

}  // namespace lci
