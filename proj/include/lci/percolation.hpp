#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "lci/alphabet_words.hpp"

namespace lci {

/**
 * Dense weights omega(i_1, ..., i_p, k) on the box [1, n_1] x ... x [1, n_p] x [1, m].
 *
 * Indices are 1-based; the boundary (any i_l = 0) is implicit and carries
 * weight 0. Storage is row-major with the level k fastest.
 */
template <class T>
class BasicLattice {
 public:
  using value_type = T;

  BasicLattice() = default;
  /// dims = (n_1, ..., n_p, m) with p >= 1. All weights start at 0.
  explicit BasicLattice(std::vector<std::size_t> dims);

  std::size_t p() const noexcept { return dims_.size() - 1; }
  std::size_t levels() const noexcept { return dims_.back(); }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return weights_.size(); }
  bool empty() const noexcept { return weights_.empty(); }

  /// 1-based (i_1, ..., i_p, k).
  T& at(std::span<const std::size_t> index);
  T at(std::span<const std::size_t> index) const;

  std::span<T> raw() noexcept { return weights_; }
  std::span<const T> raw() const noexcept { return weights_; }

 private:
  std::size_t offset(std::span<const std::size_t> index) const;

  std::vector<std::size_t> dims_{0, 0};
  std::vector<T> weights_;
};

using WeightLattice = BasicLattice<double>;
using IndicatorLattice = BasicLattice<std::int32_t>;

/// Classic two-dimensional last passage time to (n, m) over unit North/East steps.
double lpp_t2(const WeightLattice& w);

/**
 * Three-dimensional last passage time over paths made of unit steps up in k
 * and horizontal jumps (a, b, 0) with a, b >= 1, starting at the zero
 * boundary. The endpoint is free inside the box, so a path may finish before
 * reaching row n or column n'.
 */
double lpp_t3(const WeightLattice& w);
std::int64_t lpp_t3(const IndicatorLattice& w);

/// The same semantics for p = 1, 2, 3 horizontal coordinates (jumps strictly
/// increase every horizontal coordinate). Throws InputError for other p or a
/// lattice of a different dimension.
double lpp_tp(const WeightLattice& w, int p);
std::int64_t lpp_tp(const IndicatorLattice& w, int p);

/// omega(i_1, ..., i_p, k) = [w_1(i_1) = ... = w_p(i_p) = k]; every word uses the same alphabet.
IndicatorLattice indicator_lattice(std::span<const Word> words);
IndicatorLattice indicator_lattice(const Word& x, const Word& y);
/// LCI of two words through the percolation route.
std::int64_t lci_percolation(const Word& x, const Word& y);

/// iid exponential(rate) weights, filled in storage order from Rng(seed).
WeightLattice sample_exponential_lattice(std::vector<std::size_t> dims, double rate, std::uint64_t seed);

/// First line "p,n_1,...,n_p,m"; then one weight per line in storage order.
void write_lattice_csv(std::ostream& out, const WeightLattice& w);
WeightLattice read_lattice_csv(std::istream& in);

}  // namespace lci
