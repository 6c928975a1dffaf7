#include "lci/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "lci/errors.hpp"

namespace lci {

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <class Int>
Int parse_integer(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used != text.size()) throw SchemaError(std::string("bad ") + what + " '" + text + "'");
    return static_cast<Int>(v);
  } catch (const std::logic_error&) {
    throw SchemaError(std::string("bad ") + what + " '" + text + "'");
  }
}

std::uint64_t parse_unsigned(const std::string& text) {
  try {
    std::size_t used = 0;
    if (!text.empty() && text.front() == '-') throw SchemaError("bad seed '" + text + "'");
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw SchemaError("bad seed '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw SchemaError("bad seed '" + text + "'");
  }
}

double parse_real(const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw SchemaError("bad value '" + text + "'");
    return v;
  } catch (const std::logic_error&) {
    throw SchemaError("bad value '" + text + "'");
  }
}

void require_finite(std::span<const double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError(std::string(what) + " contains a non-finite value");
  }
}

}  // namespace

void write_batch_csv(std::ostream& out, const SampleBatch& batch) {
  for (const auto& [key, value] : batch.meta.params) out << "# " << key << '=' << value << '\n';
  out << kSampleCsvHeader << '\n';
  const std::string prefix = batch.meta.kind + ',' + std::to_string(batch.meta.m) + ',' +
                             std::to_string(batch.meta.n_or_G) + ',' + std::to_string(batch.meta.seed) + ',';
  for (std::size_t i = 0; i < batch.values.size(); ++i) {
    out << prefix << i << ',' << format_double(batch.values[i]) << '\n';
  }
}

SampleBatch read_batch_csv(std::istream& in) {
  SampleBatch batch;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header_seen) {
      if (line.rfind("# ", 0) == 0) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw SchemaError("comment line without key=value: " + line);
        batch.meta.params[line.substr(2, eq - 2)] = line.substr(eq + 1);
        continue;
      }
      if (line != kSampleCsvHeader) throw SchemaError("expected header '" + std::string(kSampleCsvHeader) + "'");
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 6) throw SchemaError("row has " + std::to_string(cells.size()) + " fields, expected 6");
    const int m = parse_integer<int>(cells[1], "m");
    const auto n_or_g = parse_integer<std::int64_t>(cells[2], "n_or_G");
    const std::uint64_t seed = parse_unsigned(cells[3]);
    const auto index = parse_integer<std::int64_t>(cells[4], "sample_index");
    if (batch.values.empty()) {
      batch.meta.kind = cells[0];
      batch.meta.m = m;
      batch.meta.n_or_G = n_or_g;
      batch.meta.seed = seed;
    } else if (cells[0] != batch.meta.kind || m != batch.meta.m || n_or_g != batch.meta.n_or_G ||
               seed != batch.meta.seed) {
      throw SchemaError("rows disagree on kind, m, n_or_G or seed");
    }
    if (index != static_cast<std::int64_t>(batch.values.size())) {
      throw SchemaError("sample_index " + cells[4] + " is out of order");
    }
    batch.values.push_back(parse_real(cells[5]));
  }
  if (!header_seen) throw SchemaError("missing header '" + std::string(kSampleCsvHeader) + "'");
  return batch;
}

nlohmann::ordered_json batch_to_json(const SampleBatch& batch) {
  nlohmann::ordered_json j;
  j["kind"] = batch.meta.kind;
  j["m"] = batch.meta.m;
  j["n_or_G"] = batch.meta.n_or_G;
  j["seed"] = batch.meta.seed;
  j["params"] = batch.meta.params;
  j["values"] = batch.values;
  return j;
}

// ---------------------------------------------------------------------------

Ecdf::Ecdf(std::span<const double> values) : sorted_(values.begin(), values.end()) {
  if (sorted_.empty()) throw InputError("an empirical distribution needs at least one value");
  require_finite(values, "batch");
  std::sort(sorted_.begin(), sorted_.end());
}

double Ecdf::operator()(double x) const {
  const auto below = std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
  return static_cast<double>(below) / static_cast<double>(sorted_.size());
}

double ks_coefficient(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  return std::sqrt(-std::log(alpha / 2.0) / 2.0);
}

double ks_critical(double alpha, std::int64_t n1, std::int64_t n2) {
  if (n1 <= 0 || n2 <= 0) throw InputError("sample sizes must be positive");
  const auto a = static_cast<double>(n1);
  const auto b = static_cast<double>(n2);
  return ks_coefficient(alpha) * std::sqrt((a + b) / (a * b));
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  const Ecdf fa(a);
  const Ecdf fb(b);
  const auto xs = fa.sorted();
  const auto ys = fb.sorted();
  const auto n1 = static_cast<double>(xs.size());
  const auto n2 = static_cast<double>(ys.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < xs.size() && j < ys.size()) {
    const double v = std::min(xs[i], ys[j]);
    while (i < xs.size() && xs[i] == v) ++i;
    while (j < ys.size() && ys[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
  }
  return d;
}

KsReport ks_two_sample(std::span<const double> a, std::span<const double> b, double alpha, double bias_allowance) {
  if (!(bias_allowance >= 0.0)) throw InputError("bias allowance must be >= 0");
  KsReport r;
  r.statistic = ks_statistic(a, b);
  r.n1 = static_cast<std::int64_t>(a.size());
  r.n2 = static_cast<std::int64_t>(b.size());
  r.alpha = alpha;
  r.critical = ks_critical(alpha, r.n1, r.n2);
  r.bias_allowance = bias_allowance;
  r.pass = r.statistic <= r.critical + bias_allowance;
  return r;
}

KsReport ks_two_sample(const SampleBatch& a, const SampleBatch& b, double alpha, double bias_allowance) {
  return ks_two_sample(a.values, b.values, alpha, bias_allowance);
}

nlohmann::ordered_json to_json(const KsReport& r) {
  nlohmann::ordered_json j;
  j["statistic"] = r.statistic;
  j["n1"] = r.n1;
  j["n2"] = r.n2;
  j["alpha"] = r.alpha;
  j["critical"] = r.critical;
  j["bias_allowance"] = r.bias_allowance;
  j["pass"] = r.pass;
  return j;
}

// ---------------------------------------------------------------------------

double mean_of(std::span<const double> values) {
  if (values.empty()) throw InputError("mean of an empty batch");
  double s = 0.0;
  for (double v : values) s += v;
  return s / static_cast<double>(values.size());
}

double variance_of(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mu = mean_of(values);
  double s = 0.0;
  for (double v : values) s += (v - mu) * (v - mu);
  return s / static_cast<double>(values.size() - 1);
}

MomentReport moment_check(std::span<const double> values, double target_mean, double target_var, double z) {
  if (values.size() < 30) throw InputError("moment_check needs at least 30 values");
  require_finite(values, "batch");
  MomentReport r;
  r.n = static_cast<std::int64_t>(values.size());
  const auto n = static_cast<double>(values.size());
  r.mean = mean_of(values);
  double m2 = 0.0;
  double m4 = 0.0;
  for (double v : values) {
    const double d2 = (v - r.mean) * (v - r.mean);
    m2 += d2;
    m4 += d2 * d2;
  }
  m2 /= n;
  m4 /= n;
  r.variance = m2 * n / (n - 1.0);
  r.target_mean = target_mean;
  r.target_variance = target_var;
  r.z = z;
  r.mean_se = std::sqrt(r.variance / n);
  r.variance_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
  const double slack_mean = 1e-12 * std::max(1.0, std::abs(target_mean));
  const double slack_var = 1e-12 * std::max(1.0, std::abs(target_var));
  r.mean_ok = std::abs(r.mean - target_mean) <= z * r.mean_se + slack_mean;
  r.variance_ok = std::abs(r.variance - target_var) <= z * r.variance_se + slack_var;
  r.pass = r.mean_ok && r.variance_ok;
  return r;
}

nlohmann::ordered_json to_json(const MomentReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["mean"] = r.mean;
  j["variance"] = r.variance;
  j["target_mean"] = r.target_mean;
  j["target_variance"] = r.target_variance;
  j["mean_se"] = r.mean_se;
  j["variance_se"] = r.variance_se;
  j["z"] = r.z;
  j["mean_ok"] = r.mean_ok;
  j["variance_ok"] = r.variance_ok;
  j["pass"] = r.pass;
  return j;
}

PgfEstimate empirical_pgf(std::span<const std::int64_t> values, double x) {
  if (values.empty()) throw InputError("empirical_pgf needs at least one value");
  if (!(std::abs(x) <= 1.0)) throw DomainError("empirical_pgf needs |x| <= 1");
  std::vector<double> terms;
  terms.reserve(values.size());
  for (std::int64_t v : values) {
    if (v < 0) throw InputError("empirical_pgf needs nonnegative integers");
    terms.push_back(std::pow(x, static_cast<double>(v)));
  }
  const double n = static_cast<double>(terms.size());
  return {mean_of(terms), std::sqrt(variance_of(terms) / n)};
}

double lag1_autocorrelation(std::span<const double> values) {
  if (values.size() < 2) return 0.0;
  const double mu = mean_of(values);
  double num = 0.0;
  double den = 0.0;
  for (std::size_t t = 0; t < values.size(); ++t) {
    const double d = values[t] - mu;
    den += d * d;
    if (t + 1 < values.size()) num += d * (values[t + 1] - mu);
  }
  return den == 0.0 ? 0.0 : num / den;
}

}  // namespace lci
