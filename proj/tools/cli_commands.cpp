#include "cli_commands.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "lci/errors.hpp"
#include "lci/lci_exact.hpp"
#include "lci/limit_functionals.hpp"
#include "lci/percolation.hpp"
#include "lci/prob_laws.hpp"
#include "lci/stats.hpp"
#include "lci/suites.hpp"

namespace lci::cli {

namespace {

using json = nlohmann::ordered_json;

struct ExactConfig {
  int m = 2;
  std::optional<std::string> x;
  std::optional<std::string> y;
  std::string x_file;
  std::string y_file;
  std::string route = "dp";
  bool strict = false;
};

struct VerifyConfig {
  std::string suite;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> trials;
  int threads = 1;
  std::string out;
};

struct SimulateConfig {
  std::string what;
  int m = 2;
  bool m_given = false;
  std::int64_t n = 40000;
  std::optional<std::int64_t> grid;
  std::int64_t samples = 2000;
  std::uint64_t seed = 1;
  std::string probs;
  std::string out;
  std::string format = "csv";
  std::string single_letter = "top";
  int threads = 1;
};

struct CompareConfig {
  std::string a;
  std::string b;
  double alpha = 0.01;
  double bias = 0.0;
};

std::string read_first_line(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write '" + path + "'");
  file << text;
  if (!file) throw IoError("write to '" + path + "' failed");
}

Word load_word(const std::optional<std::string>& text, const std::string& file, int m, const char* name) {
  if (text && !file.empty()) throw InputError(std::string("give either --") + name + " or --" + name + "-file");
  if (text) return parse_word(*text, m);
  if (!file.empty()) {
    const std::string line = read_first_line(file);
    return parse_word(line, m);
  }
  throw InputError(std::string("missing --") + name + " or --" + name + "-file");
}

int cmd_exact(const ExactConfig& cfg, std::ostream& out) {
  const Word x = load_word(cfg.x, cfg.x_file, cfg.m, "x");
  const Word y = load_word(cfg.y, cfg.y_file, cfg.m, "y");
  LciResult result;
  if (cfg.route == "dp") {
    result = lci_dp(x, y, cfg.strict);
  } else if (cfg.route == "brute") {
    result = lci_bruteforce(x, y, cfg.strict);
  } else if (cfg.route == "repr") {
    if (cfg.strict) throw InputError("the representation route computes the weak LCI only");
    result = lci_representation(x, y);
  } else {
    if (cfg.strict) throw InputError("the percolation route computes the weak LCI only");
    result = LciResult{lci_percolation(x, y), std::nullopt, Route::percolation};
  }
  json j;
  j["route"] = to_string(result.route);
  j["m"] = cfg.m;
  j["strict"] = cfg.strict;
  j["length"] = result.length;
  if (result.argmax_k) j["argmax_k"] = result.argmax_k->k;
  out << j.dump() << '\n';
  return kExitPass;
}

int cmd_verify(const VerifyConfig& cfg, std::ostream& out) {
  SuiteReport report;
  if (cfg.suite == "representation") {
    report = run_representation_suite(cfg.seed, cfg.trials.value_or(500), cfg.threads);
  } else if (cfg.suite == "oracle-chain") {
    report = run_oracle_chain_suite(cfg.seed, cfg.trials.value_or(2000), cfg.threads);
  } else if (cfg.suite == "percolation") {
    report = run_percolation_suite(cfg.seed, cfg.trials.value_or(300), cfg.threads);
  } else if (cfg.suite == "laws") {
    LawsSuiteConfig laws;
    laws.seed = cfg.seed;
    laws.threads = cfg.threads;
    if (cfg.trials) laws.pgf_words = *cfg.trials;
    report = run_laws_suite(laws);
  } else if (cfg.suite == "tails") {
    report = run_tails_suite(cfg.seed, cfg.trials.value_or(100000), cfg.threads);
  } else {
    report = run_lemma_suite(cfg.seed, cfg.trials.value_or(1000000), cfg.threads);
  }
  write_output(cfg.out, report.to_json().dump(2) + "\n", out);
  return report.pass ? kExitPass : kExitFailure;
}

std::int64_t default_grid(int m) {
  switch (m) {
    case 2: return 2000;
    case 3: return 500;
    case 4: return 120;
  }
  return 40;
}

std::vector<double> parse_probs(const std::string& text) {
  std::vector<double> probs;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      probs.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw InputError("bad probability '" + cell + "'");
    } catch (const std::logic_error&) {
      throw InputError("bad probability '" + cell + "'");
    }
  }
  return probs;
}

int cmd_simulate(const SimulateConfig& cfg, std::ostream& out) {
  std::optional<LetterLaw> law;
  int m = cfg.m;
  if (!cfg.probs.empty()) {
    law.emplace(parse_probs(cfg.probs));
    if (cfg.m_given && cfg.m != law->m()) throw InputError("--m disagrees with the length of --probs");
    m = law->m();
  }
  if (m < 1) throw InputError("--m must be >= 1");
  const LetterLaw letters = law ? *law : LetterLaw::uniform(m);
  const std::int64_t grid = cfg.grid.value_or(default_grid(m));

  SampleBatch batch;
  const std::string& what = cfg.what;
  if (what == "prelimit") {
    batch = sample_prelimit_batch(letters, cfg.n, cfg.samples, cfg.seed, PrelimitStatistic::lci, cfg.threads);
  } else if (what == "prelimit-lconst") {
    const auto stat = cfg.single_letter == "best" ? PrelimitStatistic::single_letter_best : PrelimitStatistic::single_letter_top;
    batch = sample_prelimit_batch(letters, cfg.n, cfg.samples, cfg.seed, stat, cfg.threads);
  } else if (what == "limit") {
    batch = sample_functional_batch(FunctionalSpec::uniform(m), grid, cfg.samples, cfg.seed, cfg.threads);
  } else if (what == "binary") {
    batch = sample_functional_batch(FunctionalSpec::binary(), grid, cfg.samples, cfg.seed, cfg.threads);
  } else if (what == "lconst") {
    batch = sample_functional_batch(FunctionalSpec::lconst(m), grid, cfg.samples, cfg.seed, cfg.threads);
  } else if (what == "nonuniform") {
    if (!law) throw InputError("--what nonuniform needs --probs");
    batch = sample_functional_batch(FunctionalSpec::nonuniform(letters), grid, cfg.samples, cfg.seed, cfg.threads);
  } else if (what == "conjecture") {
    batch = sample_functional_batch(FunctionalSpec::driftfree(m), grid, cfg.samples, cfg.seed, cfg.threads);
  } else {
    batch = sample_exponential_lpp_batch(m, cfg.n, cfg.samples, cfg.seed, cfg.threads);
  }
  batch.meta.params["what"] = what;
  batch.meta.params["seed"] = std::to_string(cfg.seed);
  batch.meta.params["m"] = std::to_string(m);
  if (!cfg.probs.empty()) batch.meta.params["probs"] = cfg.probs;

  std::ostringstream text;
  if (cfg.format == "json") {
    text << batch_to_json(batch).dump(2) << '\n';
  } else {
    write_batch_csv(text, batch);
  }
  write_output(cfg.out, text.str(), out);
  return kExitPass;
}

SampleBatch load_batch(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  SampleBatch batch = read_batch_csv(in);
  if (batch.values.empty()) throw SchemaError("'" + path + "' has no samples");
  return batch;
}

int cmd_compare(const CompareConfig& cfg, std::ostream& out) {
  const SampleBatch a = load_batch(cfg.a);
  const SampleBatch b = load_batch(cfg.b);
  const KsReport report = ks_two_sample(a, b, cfg.alpha, cfg.bias);
  json j = to_json(report);
  j["a"] = json{{"file", cfg.a}, {"kind", a.meta.kind}, {"m", a.meta.m}, {"n_or_G", a.meta.n_or_G}, {"seed", a.meta.seed}};
  j["b"] = json{{"file", cfg.b}, {"kind", b.meta.kind}, {"m", b.meta.m}, {"n_or_G", b.meta.n_or_G}, {"seed", b.meta.seed}};
  out << j.dump(2) << '\n';
  return report.pass ? kExitPass : kExitFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Longest common increasing subsequences of random words: exact routes, limit laws and checks", "lci"};
  app.require_subcommand(1);

  ExactConfig exact;
  auto* exact_cmd = app.add_subcommand("exact", "Compute the LCI of two words");
  exact_cmd->add_option("--m", exact.m, "Alphabet size")->required()->check(CLI::Range(1, 1 << 20));
  exact_cmd->add_option("--x", exact.x, "First word (digits for m <= 9, else comma-separated)");
  exact_cmd->add_option("--y", exact.y, "Second word");
  exact_cmd->add_option("--x-file", exact.x_file, "File whose first line is the first word");
  exact_cmd->add_option("--y-file", exact.y_file, "File whose first line is the second word");
  exact_cmd->add_option("--route", exact.route, "dp | brute | repr | perc")
      ->check(CLI::IsMember({"dp", "brute", "repr", "perc"}));
  exact_cmd->add_flag("--strict", exact.strict, "Strictly increasing subsequences");

  VerifyConfig verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite and print a JSON report");
  verify_cmd->add_option("--suite", verify.suite, "representation | oracle-chain | percolation | laws | tails | lemma-ineg")
      ->required()
      ->check(CLI::IsMember({"representation", "oracle-chain", "percolation", "laws", "tails", "lemma-ineg"}));
  verify_cmd->add_option("--seed", verify.seed, "Master seed");
  verify_cmd->add_option("--trials", verify.trials, "Suite-specific trial count")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--threads", verify.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--out", verify.out, "Report file (default stdout)");

  SimulateConfig sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Write a batch of pre-limit or limit samples");
  sim_cmd->add_option("--what", sim.what, "prelimit | prelimit-lconst | limit | binary | lconst | nonuniform | conjecture | lpp")
      ->required()
      ->check(CLI::IsMember({"prelimit", "prelimit-lconst", "limit", "binary", "lconst", "nonuniform", "conjecture", "lpp"}));
  auto* m_opt = sim_cmd->add_option("--m", sim.m, "Alphabet size")->check(CLI::Range(1, 64));
  sim_cmd->add_option("--n", sim.n, "Word length (pre-limit) or lattice side (lpp)")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--grid", sim.grid, "Grid size G for limit functionals")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--samples", sim.samples, "Number of samples")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--seed", sim.seed, "Master seed");
  sim_cmd->add_option("--probs", sim.probs, "Comma-separated letter probabilities (uniform if omitted)");
  sim_cmd->add_option("--out", sim.out, "Output file (default stdout)");
  sim_cmd->add_option("--format", sim.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  sim_cmd->add_option("--single-letter", sim.single_letter, "top | best (prelimit-lconst only)")
      ->check(CLI::IsMember({"top", "best"}));
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);

  CompareConfig cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Two-sample Kolmogorov-Smirnov test between two sample files");
  cmp_cmd->add_option("--a", cmp.a, "First sample CSV")->required();
  cmp_cmd->add_option("--b", cmp.b, "Second sample CSV")->required();
  cmp_cmd->add_option("--alpha", cmp.alpha, "Significance level")->check(CLI::Range(1e-12, 1.0 - 1e-12));
  cmp_cmd->add_option("--bias", cmp.bias, "Bias allowance added to the critical value")->check(CLI::NonNegativeNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitPass : kExitUsage;
  }
  sim.m_given = m_opt->count() > 0;

  try {
    if (*exact_cmd) return cmd_exact(exact, out);
    if (*verify_cmd) return cmd_verify(verify, out);
    if (*sim_cmd) return cmd_simulate(sim, out);
    return cmd_compare(cmp, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace lci::cli
