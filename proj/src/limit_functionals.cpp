#include "lci/limit_functionals.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "lci/errors.hpp"
#include "lci/lci_exact.hpp"
#include "lci/parallel.hpp"
#include "lci/percolation.hpp"

namespace lci {

BrownianPathPair::BrownianPathPair(int dim, std::int64_t grid, std::uint64_t seed)
    : dim_(dim), grid_(grid), seed_(seed) {
  if (dim < 1) throw InputError("path dimension must be >= 1");
  if (grid < 1) throw InputError("grid size must be >= 1");
  values_.assign(2 * static_cast<std::size_t>(dim) * static_cast<std::size_t>(grid + 1), 0.0);
}

std::span<const double> BrownianPathPair::row(int j, int i) const {
  if (j < 0 || j > 1 || i < 0 || i >= dim_) throw InputError("path row out of range");
  const auto len = static_cast<std::size_t>(grid_ + 1);
  return {values_.data() + (static_cast<std::size_t>(j) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i)) * len, len};
}

std::span<double> BrownianPathPair::row(int j, int i) {
  const auto r = std::as_const(*this).row(j, i);
  return {const_cast<double*>(r.data()), r.size()};
}

BrownianPathPair BrownianPathPair::coarsen(std::int64_t factor) const {
  if (factor < 1 || grid_ % factor != 0) throw InputError("coarsening factor must divide the grid size");
  BrownianPathPair out(dim_, grid_ / factor, seed_);
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < dim_; ++i) {
      const auto src = row(j, i);
      auto dst = out.row(j, i);
      for (std::int64_t g = 0; g <= out.grid_; ++g) dst[static_cast<std::size_t>(g)] = src[static_cast<std::size_t>(g * factor)];
    }
  }
  return out;
}

BrownianPathPair BrownianPathPair::swapped() const {
  BrownianPathPair out(dim_, grid_, seed_);
  for (int i = 0; i < dim_; ++i) {
    std::ranges::copy(row(0, i), out.row(1, i).begin());
    std::ranges::copy(row(1, i), out.row(0, i).begin());
  }
  return out;
}

BrownianPathPair sample_path_pair(int dim, std::int64_t grid, std::uint64_t seed) {
  BrownianPathPair paths(dim, grid, seed);
  Rng rng(seed);
  const double step = std::sqrt(1.0 / static_cast<double>(grid));
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < dim; ++i) {
      auto r = paths.row(j, i);
      for (std::size_t g = 1; g < r.size(); ++g) r[g] = r[g - 1] + rng.normal() * step;
    }
  }
  return paths;
}

// ---------------------------------------------------------------------------

std::string to_string(FunctionalKind kind) {
  switch (kind) {
    case FunctionalKind::uniform_eq00: return "uniform_eq00";
    case FunctionalKind::binary_form: return "binary_form";
    case FunctionalKind::nonuniform_eq00max: return "nonuniform_eq00max";
    case FunctionalKind::single_letter_lconst: return "single_letter_lconst";
    case FunctionalKind::driftfree_conjecture: return "driftfree_conjecture";
  }
  return "unknown";
}

FunctionalKind functional_kind_from_string(const std::string& name) {
  for (auto kind : {FunctionalKind::uniform_eq00, FunctionalKind::binary_form, FunctionalKind::nonuniform_eq00max,
                    FunctionalKind::single_letter_lconst, FunctionalKind::driftfree_conjecture}) {
    if (to_string(kind) == name) return kind;
  }
  throw InputError("unknown functional kind '" + name + "'");
}

FunctionalSpec FunctionalSpec::uniform(int m) {
  if (m < 2) throw InputError("the uniform functional needs m >= 2");
  return {FunctionalKind::uniform_eq00, m, 1.0 / m, m};
}

FunctionalSpec FunctionalSpec::binary() { return {FunctionalKind::binary_form, 2, 0.5, 2}; }

FunctionalSpec FunctionalSpec::nonuniform(const LetterLaw& law) {
  if (law.m() < 2) throw InputError("the non-uniform functional needs m >= 2");
  return {FunctionalKind::nonuniform_eq00max, law.m(), law.p_max(), law.multiplicity()};
}

FunctionalSpec FunctionalSpec::lconst(int m) {
  if (m < 2) throw InputError("the single-letter functional needs m >= 2");
  return {FunctionalKind::single_letter_lconst, m, 1.0 / m, m};
}

FunctionalSpec FunctionalSpec::driftfree(int m) {
  if (m < 2) throw InputError("the drift-free functional needs m >= 2");
  return {FunctionalKind::driftfree_conjecture, m, 1.0 / m, m};
}

int FunctionalSpec::path_dim() const {
  switch (kind) {
    case FunctionalKind::uniform_eq00:
    case FunctionalKind::driftfree_conjecture: return m;
    case FunctionalKind::nonuniform_eq00max: return multiplicity;
    case FunctionalKind::binary_form:
    case FunctionalKind::single_letter_lconst: return 1;
  }
  return 1;
}

double FunctionalSpec::drift() const {
  switch (kind) {
    case FunctionalKind::uniform_eq00: return -1.0 / m;
    case FunctionalKind::driftfree_conjecture: return 0.0;
    case FunctionalKind::nonuniform_eq00max: {
      const double k = multiplicity;
      const double inside = 1.0 - k * p_max;
      if (inside < -1e-12) throw DomainError("multiplicity times p_max exceeds 1");
      return (std::sqrt(std::max(0.0, inside)) - 1.0) / k;
    }
    case FunctionalKind::binary_form:
    case FunctionalKind::single_letter_lconst: break;
  }
  throw InputError(to_string(kind) + " is not a chamber functional");
}

// ---------------------------------------------------------------------------

double chamber_objective(const BrownianPathPair& paths, double kappa, std::span<const std::int64_t> g) {
  const int d = paths.dim();
  const std::int64_t G = paths.grid();
  if (g.size() != static_cast<std::size_t>(d - 1)) throw InputError("chamber vector needs dim - 1 entries");
  std::vector<std::int64_t> t{0};
  t.insert(t.end(), g.begin(), g.end());
  t.push_back(G);
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (t[i] < t[i - 1] || t[i] > G) throw InputError("chamber vector must be nondecreasing inside [0, G]");
  }
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < 2; ++j) {
    double total = 0.0;
    double sum_end = 0.0;
    for (int i = 0; i < d; ++i) {
      const auto r = paths.row(j, i);
      sum_end += r[static_cast<std::size_t>(G)];
      total += r[static_cast<std::size_t>(t[static_cast<std::size_t>(i) + 1])] - r[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
    }
    best = std::min(best, kappa * sum_end + total);
  }
  return best;
}

namespace {

// max over g_1 <= ... <= g_{d-1} of min_j (c_j + sum_i D_j^i(g_i)), D^i = B^i - B^{i+1}.
class ChamberSearch {
 public:
  ChamberSearch(const BrownianPathPair& paths, double kappa) : d_(paths.dim()), len_(static_cast<std::size_t>(paths.grid() + 1)) {
    const auto G = static_cast<std::size_t>(paths.grid());
    for (int j = 0; j < 2; ++j) {
      double sum_end = 0.0;
      for (int i = 0; i < d_; ++i) sum_end += paths.row(j, i)[G];
      c_[j] = kappa * sum_end + paths.row(j, d_ - 1)[G];
      diff_[j].resize(static_cast<std::size_t>(d_ - 1) * len_);
      for (int i = 0; i + 1 < d_; ++i) {
        const auto lo = paths.row(j, i);
        const auto hi = paths.row(j, i + 1);
        double* out = diff_[j].data() + static_cast<std::size_t>(i) * len_;
        for (std::size_t g = 0; g < len_; ++g) out[g] = lo[g] - hi[g];
      }
    }
  }

  double run() const {
    if (d_ == 1) return std::min(c_[0], c_[1]);
    return descend(0, 0, c_[0], c_[1]);
  }

 private:
  double descend(int level, std::size_t from, double a0, double a1) const {
    const double* d0 = diff_[0].data() + static_cast<std::size_t>(level) * len_;
    const double* d1 = diff_[1].data() + static_cast<std::size_t>(level) * len_;
    double best = -std::numeric_limits<double>::infinity();
    if (level == d_ - 2) {
      for (std::size_t g = from; g < len_; ++g) best = std::max(best, std::min(a0 + d0[g], a1 + d1[g]));
      return best;
    }
    for (std::size_t g = from; g < len_; ++g) best = std::max(best, descend(level + 1, g, a0 + d0[g], a1 + d1[g]));
    return best;
  }

  int d_;
  std::size_t len_;
  double c_[2] = {0.0, 0.0};
  std::vector<double> diff_[2];
};

void check_dim(const BrownianPathPair& paths, const FunctionalSpec& spec) {
  if (paths.dim() != spec.path_dim()) {
    throw InputError(to_string(spec.kind) + " needs " + std::to_string(spec.path_dim()) +
                     "-dimensional paths, got " + std::to_string(paths.dim()));
  }
}

}  // namespace

double eval_functional(const BrownianPathPair& paths, const FunctionalSpec& spec) {
  check_dim(paths, spec);
  const auto G = static_cast<std::size_t>(paths.grid());
  switch (spec.kind) {
    case FunctionalKind::binary_form: {
      const auto b1 = paths.row(0, 0);
      const auto b2 = paths.row(1, 0);
      const double h1 = b1[G] / 2.0;
      const double h2 = b2[G] / 2.0;
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t g = 0; g <= G; ++g) best = std::max(best, std::min(b1[g] - h1, b2[g] - h2));
      return std::sqrt(2.0) * best;
    }
    case FunctionalKind::single_letter_lconst: {
      const double scale = std::sqrt(1.0 - 1.0 / spec.m);
      return std::min(scale * paths.row(0, 0)[G], scale * paths.row(1, 0)[G]);
    }
    case FunctionalKind::uniform_eq00:
    case FunctionalKind::nonuniform_eq00max:
    case FunctionalKind::driftfree_conjecture:
      return ChamberSearch(paths, spec.drift()).run();
  }
  throw InputError("unknown functional kind");
}

std::uint64_t sample_seed(std::uint64_t seed, std::int64_t sample_index) {
  return stream_seed(seed, static_cast<std::uint64_t>(sample_index));
}

namespace {

std::string format_param(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_samples(std::int64_t samples) {
  if (samples < 1) throw InputError("samples must be >= 1");
}

}  // namespace

SampleBatch sample_functional_batch(const FunctionalSpec& spec, std::int64_t grid, std::int64_t samples,
                                    std::uint64_t seed, int threads) {
  check_samples(samples);
  if (grid < 1) throw InputError("grid size must be >= 1");
  SampleBatch batch;
  batch.values.resize(static_cast<std::size_t>(samples));
  const int dim = spec.path_dim();
  parallel_for(samples, threads, [&](std::int64_t s) {
    const auto paths = sample_path_pair(dim, grid, sample_seed(seed, s));
    batch.values[static_cast<std::size_t>(s)] = eval_functional(paths, spec);
  });
  batch.meta.kind = to_string(spec.kind);
  batch.meta.m = spec.m;
  batch.meta.n_or_G = grid;
  batch.meta.seed = seed;
  batch.meta.params["functional"] = to_string(spec.kind);
  batch.meta.params["grid"] = std::to_string(grid);
  batch.meta.params["samples"] = std::to_string(samples);
  batch.meta.params["path_dim"] = std::to_string(dim);
  if (spec.kind == FunctionalKind::nonuniform_eq00max) {
    batch.meta.params["p_max"] = format_param(spec.p_max);
    batch.meta.params["multiplicity"] = std::to_string(spec.multiplicity);
  }
  return batch;
}

std::string to_string(PrelimitStatistic statistic) {
  switch (statistic) {
    case PrelimitStatistic::lci: return "lci";
    case PrelimitStatistic::single_letter_top: return "single_letter_top";
    case PrelimitStatistic::single_letter_best: return "single_letter_best";
  }
  return "unknown";
}

SampleBatch sample_prelimit_batch(const LetterLaw& law, std::int64_t n, std::int64_t samples, std::uint64_t seed,
                                  PrelimitStatistic statistic, int threads) {
  check_samples(samples);
  if (n < law.m()) throw InputError("pre-limit sampling needs n >= m");
  const double center = law.is_uniform() ? static_cast<double>(n) / law.m() : static_cast<double>(n) * law.p_max();
  const double scale = std::sqrt(center);
  SampleBatch batch;
  batch.values.resize(static_cast<std::size_t>(samples));
  parallel_for(samples, threads, [&](std::int64_t s) {
    Rng rng(sample_seed(seed, s));
    const Word x = sample_word(law, n, rng);
    const Word y = sample_word(law, n, rng);
    Count value = 0;
    switch (statistic) {
      case PrelimitStatistic::lci: value = lci_representation(x, y).length; break;
      case PrelimitStatistic::single_letter_top: value = single_letter_alignment(x, y, law.m()); break;
      case PrelimitStatistic::single_letter_best: value = best_single_letter_alignment(x, y); break;
    }
    batch.values[static_cast<std::size_t>(s)] = (static_cast<double>(value) - center) / scale;
  });
  batch.meta.kind = "prelimit_" + to_string(statistic);
  batch.meta.m = law.m();
  batch.meta.n_or_G = n;
  batch.meta.seed = seed;
  std::string probs;
  for (double p : law.probs()) probs += (probs.empty() ? "" : ",") + format_param(p);
  batch.meta.params["statistic"] = to_string(statistic);
  batch.meta.params["n"] = std::to_string(n);
  batch.meta.params["samples"] = std::to_string(samples);
  batch.meta.params["probs"] = law.is_uniform() ? "uniform" : probs;
  batch.meta.params["center"] = format_param(center);
  batch.meta.params["scale"] = format_param(scale);
  return batch;
}

SampleBatch sample_exponential_lpp_batch(int m, std::int64_t n, std::int64_t samples, std::uint64_t seed,
                                         int threads) {
  check_samples(samples);
  if (m < 1 || n < 1) throw InputError("exponential LPP needs m >= 1 and n >= 1");
  SampleBatch batch;
  batch.values.resize(static_cast<std::size_t>(samples));
  const auto side = static_cast<std::size_t>(n);
  parallel_for(samples, threads, [&](std::int64_t s) {
    const auto lattice = sample_exponential_lattice({side, side, static_cast<std::size_t>(m)}, 1.0, sample_seed(seed, s));
    batch.values[static_cast<std::size_t>(s)] =
        (lpp_t3(lattice) - static_cast<double>(n)) / std::sqrt(static_cast<double>(n));
  });
  batch.meta.kind = "exponential_lpp";
  batch.meta.m = m;
  batch.meta.n_or_G = n;
  batch.meta.seed = seed;
  batch.meta.params["n"] = std::to_string(n);
  batch.meta.params["samples"] = std::to_string(samples);
  batch.meta.params["rate"] = "1";
  return batch;
}

}  // namespace lci
