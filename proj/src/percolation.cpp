#include "lci/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "lci/errors.hpp"
#include "lci/rng.hpp"

namespace lci {

template <class T>
BasicLattice<T>::BasicLattice(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.size() < 2) throw InputError("a lattice needs at least one horizontal extent and a level count");
  const std::size_t total =
      std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
  weights_.assign(total, T{});
}

template <class T>
std::size_t BasicLattice<T>::offset(std::span<const std::size_t> index) const {
  if (index.size() != dims_.size()) throw InputError("lattice index has the wrong dimension");
  std::size_t off = 0;
  for (std::size_t d = 0; d < dims_.size(); ++d) {
    if (index[d] < 1 || index[d] > dims_[d]) throw InputError("lattice index out of range");
    off = off * dims_[d] + (index[d] - 1);
  }
  return off;
}

template <class T>
T& BasicLattice<T>::at(std::span<const std::size_t> index) {
  return weights_[offset(index)];
}

template <class T>
T BasicLattice<T>::at(std::span<const std::size_t> index) const {
  return weights_[offset(index)];
}

template class BasicLattice<double>;
template class BasicLattice<std::int32_t>;

double lpp_t2(const WeightLattice& w) {
  if (w.p() != 1) throw InputError("lpp_t2 needs a two-dimensional lattice");
  const std::size_t n = w.dims()[0];
  const std::size_t m = w.dims()[1];
  if (n == 0 || m == 0) return 0.0;
  const auto omega = w.raw();
  // T(i, k) = omega(i, k) + max(T(i-1, k), T(i, k-1)) with zero boundary.
  std::vector<double> row(m + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t k = 1; k <= m; ++k) {
      row[k] = omega[(i - 1) * m + (k - 1)] + std::max(row[k], row[k - 1]);
    }
  }
  return row[m];
}

namespace {

template <class T>
void check_weights(const BasicLattice<T>& w) {
  for (T v : w.raw()) {
    if (!(v >= T{0}) || !std::isfinite(static_cast<double>(v))) {
      throw InputError("lattice weights must be finite and >= 0");
    }
  }
}

// p = 2, written out: prefix maxima of V over the (i, j) plane, one level at a time.
template <class T>
T lpp_t3_kernel(const BasicLattice<T>& w) {
  if (w.p() != 2) throw InputError("lpp_t3 needs a three-dimensional lattice");
  check_weights(w);
  const std::size_t n = w.dims()[0];
  const std::size_t n2 = w.dims()[1];
  const std::size_t m = w.dims()[2];
  if (n == 0 || n2 == 0 || m == 0) return T{0};
  const auto omega = w.raw();
  const std::size_t cols = n2 + 1;
  std::vector<T> v((n + 1) * cols, T{0});       // V(i, j) at the current level
  std::vector<T> prefix((n + 1) * cols, T{0});  // max of V over [1, i] x [1, j]; zero boundary
  for (std::size_t k = 1; k <= m; ++k) {
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = 1; j <= n2; ++j) {
        const std::size_t c = i * cols + j;
        const T om = omega[((i - 1) * n2 + (j - 1)) * m + (k - 1)];
        const T value = om + std::max(v[c], prefix[c - cols - 1]);
        v[c] = value;
        prefix[c] = std::max({value, prefix[c - cols], prefix[c - 1]});
      }
    }
  }
  return prefix[n * cols + n2];
}

// Any p: the same recursion on a padded row-major box, p look-backs per point.
template <class T>
T lpp_tp_kernel(const BasicLattice<T>& w, int p) {
  if (p < 1 || p > 3) throw InputError("lpp_tp supports p = 1, 2, 3");
  if (w.p() != static_cast<std::size_t>(p)) throw InputError("lattice dimension does not match p");
  check_weights(w);
  const auto& dims = w.dims();
  const std::size_t m = dims.back();
  const auto pp = static_cast<std::size_t>(p);
  for (std::size_t d = 0; d <= pp; ++d) {
    if (dims[d] == 0) return T{0};
  }
  std::vector<std::size_t> stride(pp, 1);
  for (std::size_t d = pp - 1; d-- > 0;) stride[d] = stride[d + 1] * (dims[d + 1] + 1);
  const std::size_t padded = stride[0] * (dims[0] + 1);
  std::size_t diagonal = 0;
  for (std::size_t d = 0; d < pp; ++d) diagonal += stride[d];

  const auto omega = w.raw();
  std::vector<T> v(padded, T{0});
  std::vector<T> prefix(padded, T{0});
  std::vector<std::size_t> coord(pp, 0);
  for (std::size_t k = 1; k <= m; ++k) {
    std::fill(coord.begin(), coord.end(), 0);
    std::size_t interior = 0;  // offset of coord in the unpadded (level-free) box
    for (std::size_t c = 0; c < padded; ++c) {
      // coord tracks the padded index c.
      if (c > 0) {
        std::size_t d = pp - 1;
        while (++coord[d] > dims[d]) {
          coord[d] = 0;
          --d;
        }
      }
      bool boundary = false;
      for (std::size_t d = 0; d < pp; ++d) boundary = boundary || coord[d] == 0;
      if (boundary) continue;
      const T om = omega[interior * m + (k - 1)];
      ++interior;
      const T value = om + std::max(v[c], prefix[c - diagonal]);
      v[c] = value;
      T best = value;
      for (std::size_t d = 0; d < pp; ++d) best = std::max(best, prefix[c - stride[d]]);
      prefix[c] = best;
    }
  }
  return prefix[padded - 1];
}

}  // namespace

double lpp_t3(const WeightLattice& w) { return lpp_t3_kernel(w); }
std::int64_t lpp_t3(const IndicatorLattice& w) { return lpp_t3_kernel(w); }
double lpp_tp(const WeightLattice& w, int p) { return lpp_tp_kernel(w, p); }
std::int64_t lpp_tp(const IndicatorLattice& w, int p) { return lpp_tp_kernel(w, p); }

IndicatorLattice indicator_lattice(std::span<const Word> words) {
  if (words.empty() || words.size() > 3) throw InputError("indicator lattices take 1 to 3 words");
  const int m = words.front().m();
  std::vector<std::size_t> dims;
  for (const auto& word : words) {
    if (word.m() != m) throw InputError("words are over different alphabets");
    dims.push_back(static_cast<std::size_t>(word.size()));
  }
  dims.push_back(static_cast<std::size_t>(m));
  IndicatorLattice lattice(dims);
  if (lattice.empty()) return lattice;
  auto raw = lattice.raw();
  const std::size_t p = words.size();
  std::vector<std::size_t> coord(p, 0);
  const std::size_t cells = raw.size() / static_cast<std::size_t>(m);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    if (cell > 0) {
      std::size_t d = p - 1;
      while (++coord[d] == dims[d]) {
        coord[d] = 0;
        --d;
      }
    }
    const Letter a = words[0][static_cast<Count>(coord[0])];
    bool same = true;
    for (std::size_t d = 1; d < p; ++d) same = same && words[d][static_cast<Count>(coord[d])] == a;
    if (same) raw[cell * static_cast<std::size_t>(m) + static_cast<std::size_t>(a - 1)] = 1;
  }
  return lattice;
}

IndicatorLattice indicator_lattice(const Word& x, const Word& y) {
  const Word pair[] = {x, y};
  return indicator_lattice(std::span<const Word>(pair));
}

std::int64_t lci_percolation(const Word& x, const Word& y) { return lpp_t3(indicator_lattice(x, y)); }

WeightLattice sample_exponential_lattice(std::vector<std::size_t> dims, double rate, std::uint64_t seed) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("exponential rate must be > 0");
  WeightLattice lattice(std::move(dims));
  Rng rng(seed);
  for (double& v : lattice.raw()) v = rng.exponential(rate);
  return lattice;
}

void write_lattice_csv(std::ostream& out, const WeightLattice& w) {
  out << w.p();
  for (std::size_t d : w.dims()) out << ',' << d;
  out << '\n';
  char buf[32];
  for (double v : w.raw()) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << buf << '\n';
  }
}

WeightLattice read_lattice_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("lattice CSV is empty");
  std::vector<std::size_t> header;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      std::size_t used = 0;
      const long long value = std::stoll(cell, &used);
      if (used != cell.size() || value < 0) throw InputError("bad lattice header field '" + cell + "'");
      header.push_back(static_cast<std::size_t>(value));
    } catch (const std::logic_error&) {
      throw InputError("bad lattice header field '" + cell + "'");
    }
  }
  if (header.size() < 3 || header[0] + 2 != header.size()) {
    throw InputError("lattice header must be p followed by p + 1 extents");
  }
  WeightLattice lattice(std::vector<std::size_t>(header.begin() + 1, header.end()));
  for (double& v : lattice.raw()) {
    if (!std::getline(in, line)) throw InputError("lattice CSV has too few weights");
    try {
      std::size_t used = 0;
      v = std::stod(line, &used);
      if (used != line.size()) throw InputError("bad lattice weight '" + line + "'");
    } catch (const std::logic_error&) {
      throw InputError("bad lattice weight '" + line + "'");
    }
  }
  while (std::getline(in, line)) {
    if (!line.empty()) throw InputError("lattice CSV has too many weights");
  }
  return lattice;
}

}  // namespace lci
