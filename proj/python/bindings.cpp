#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

#include "lci/alphabet_words.hpp"
#include "lci/errors.hpp"
#include "lci/lci_exact.hpp"
#include "lci/limit_functionals.hpp"
#include "lci/percolation.hpp"
#include "lci/prob_laws.hpp"
#include "lci/stats.hpp"

namespace py = pybind11;
using namespace lci;

namespace {

Word to_word(const std::vector<Letter>& letters, int m) { return Word(letters, Alphabet(m)); }

LetterLaw to_law(int m, const std::vector<double>& probs) {
  return probs.empty() ? LetterLaw::uniform(m) : LetterLaw(probs);
}

py::dict batch_dict(const SampleBatch& b) {
  py::dict d;
  d["kind"] = b.meta.kind;
  d["m"] = b.meta.m;
  d["n_or_G"] = b.meta.n_or_G;
  d["seed"] = b.meta.seed;
  d["params"] = b.meta.params;
  d["values"] = b.values;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Longest common increasing subsequences of random words";

  py::register_exception<InputError>(mod, "InputError", PyExc_ValueError);
  py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);

  mod.def("lci_dp", [](const std::vector<Letter>& x, const std::vector<Letter>& y, int m, bool strict) {
    return lci_dp(to_word(x, m), to_word(y, m), strict).length;
  }, py::arg("x"), py::arg("y"), py::arg("m"), py::arg("strict") = false);

  mod.def("lci_bruteforce", [](const std::vector<Letter>& x, const std::vector<Letter>& y, int m, bool strict) {
    return lci_bruteforce(to_word(x, m), to_word(y, m), strict).length;
  }, py::arg("x"), py::arg("y"), py::arg("m"), py::arg("strict") = false);

  mod.def("lci_representation", [](const std::vector<Letter>& x, const std::vector<Letter>& y, int m) {
    const auto r = lci_representation(to_word(x, m), to_word(y, m));
    std::vector<Count> k;
    if (r.argmax_k) k = r.argmax_k->k;
    return py::make_tuple(r.length, k);
  }, py::arg("x"), py::arg("y"), py::arg("m"),
     "Returns (length, argmax pick vector).");

  mod.def("lci_percolation", [](const std::vector<Letter>& x, const std::vector<Letter>& y, int m) {
    return lci_percolation(to_word(x, m), to_word(y, m));
  }, py::arg("x"), py::arg("y"), py::arg("m"));

  mod.def("star_counts", [](const std::vector<Letter>& w, int m, const std::vector<Count>& k) {
    const auto sc = star_counts(to_word(w, m), PickVector{k});
    py::dict d;
    d["feasible"] = sc.feasible;
    if (sc.feasible) {
      d["nstar"] = sc.nstar;
      d["r_stat"] = sc.r_stat;
    }
    return d;
  }, py::arg("w"), py::arg("m"), py::arg("k"));

  mod.def("lpp_t2", [](const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    const std::size_t m = n == 0 ? 0 : rows.front().size();
    WeightLattice lat({n, m});
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != m) throw InputError("ragged weight rows");
      for (std::size_t k = 0; k < m; ++k) lat.raw()[i * m + k] = rows[i][k];
    }
    return lpp_t2(lat);
  }, py::arg("weights"));

  mod.def("theta_r", [](double k, double x) { return theta_r(k, x).value; }, py::arg("k"), py::arg("x"));
  mod.def("theta_l", [](double k, double x) { return theta_l(k, x).value; }, py::arg("k"), py::arg("x"));

  mod.def("pgf_nstar", [](int m, Letter i, const std::vector<Count>& k, double x, const std::vector<double>& probs) {
    return pgf_nstar(to_law(m, probs), i, PickVector{k}, x);
  }, py::arg("m"), py::arg("i"), py::arg("k"), py::arg("x"), py::arg("probs") = std::vector<double>{});

  mod.def("sample_functional_batch", [](const std::string& kind, int m, std::int64_t grid, std::int64_t samples,
                                        std::uint64_t seed, int threads) {
    FunctionalSpec spec;
    switch (functional_kind_from_string(kind)) {
      case FunctionalKind::uniform_eq00: spec = FunctionalSpec::uniform(m); break;
      case FunctionalKind::binary_form: spec = FunctionalSpec::binary(); break;
      case FunctionalKind::single_letter_lconst: spec = FunctionalSpec::lconst(m); break;
      case FunctionalKind::driftfree_conjecture: spec = FunctionalSpec::driftfree(m); break;
      case FunctionalKind::nonuniform_eq00max:
        throw InputError("use sample_nonuniform_batch for the non-uniform functional");
    }
    SampleBatch batch;
    {
      py::gil_scoped_release release;
      batch = sample_functional_batch(spec, grid, samples, seed, threads);
    }
    return batch_dict(batch);
  }, py::arg("kind"), py::arg("m"), py::arg("grid"), py::arg("samples"), py::arg("seed") = 1, py::arg("threads") = 1);

  mod.def("sample_prelimit_batch", [](int m, std::int64_t n, std::int64_t samples, std::uint64_t seed,
                                      const std::vector<double>& probs, int threads) {
    const auto law = to_law(m, probs);
    SampleBatch batch;
    {
      py::gil_scoped_release release;
      batch = sample_prelimit_batch(law, n, samples, seed, PrelimitStatistic::lci, threads);
    }
    return batch_dict(batch);
  }, py::arg("m"), py::arg("n"), py::arg("samples"), py::arg("seed") = 1,
     py::arg("probs") = std::vector<double>{}, py::arg("threads") = 1);

  mod.def("ks_two_sample", [](const std::vector<double>& a, const std::vector<double>& b, double alpha, double bias) {
    const auto r = ks_two_sample(a, b, alpha, bias);
    py::dict d;
    d["statistic"] = r.statistic;
    d["critical"] = r.critical;
    d["bias_allowance"] = r.bias_allowance;
    d["pass"] = r.pass;
    return d;
  }, py::arg("a"), py::arg("b"), py::arg("alpha") = 0.01, py::arg("bias") = 0.0);
}
