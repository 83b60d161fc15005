#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "idealseq/index_set.hpp"

namespace idealseq {

// Positive weight function on indices, from a named catalogue or a table.
struct WeightFn {
  std::string name;
  std::function<double(std::int64_t)> f;

  double operator()(std::int64_t i) const { return f(i); }

  static WeightFn constant();                       // f == 1
  static WeightFn one_over_i();                     // f(i) = 1/i
  static WeightFn power(double s);                  // f(i) = i^s
  static WeightFn tabulated(std::vector<double> values, std::string label);
};

// Monotone subadditive set function vanishing on the empty set, evaluated on
// explicit finite sets. Lower semicontinuity is exploited by evaluating on
// prefixes only.
struct Submeasure {
  std::string name;
  std::function<double(const IndexSet&)> eval;

  double operator()(const IndexSet& a) const { return eval(a); }
};

Submeasure erdos_ulam_submeasure(const WeightFn& f);   // phi_f
Submeasure summable_submeasure(const WeightFn& f);     // A -> sum of f over A
// Normalized weighted mass of A inside [lo, hi].
Submeasure block_weighted_submeasure(std::int64_t lo, std::int64_t hi, const WeightFn& w);

// Partition of [1, n_limit] into consecutive non-empty finite blocks,
// materialized as the list of block end indices.
class BlockPartition {
 public:
  static BlockPartition from_ends(std::vector<std::int64_t> ends);
  // {1,2}, (2,4], (4,8], ...
  static BlockPartition dyadic(std::int64_t n_limit);
  // Greedy blocks whose w-mass doubles: each block extends until its mass
  // reaches the total mass before it. For w == 1 this is dyadic().
  static BlockPartition mass_doubling(const WeightFn& w, std::int64_t n_limit);
  // Blocks at geometric w-mass quantiles, `blocks` of them over [1, n_limit].
  // Slowly diverging weights (1/i) get too few doubling blocks at practical
  // prefix lengths; fixing the block count keeps the windowed limsup usable.
  static BlockPartition mass_geometric(const WeightFn& w, std::int64_t n_limit, int blocks);

  int block_count() const { return static_cast<int>(ends_.size()); }
  std::int64_t covered_limit() const { return ends_.back(); }
  // 1-based inclusive range of block j (j = 1..block_count()).
  std::pair<std::int64_t, std::int64_t> block_range(int j) const;
  int block_of(std::int64_t i) const;  // 0 when i beyond covered range

 private:
  explicit BlockPartition(std::vector<std::int64_t> ends);
  std::vector<std::int64_t> ends_;
};

// Generalized-density data: a block partition with per-block submeasures.
// The weighted form (normalized w-mass per block) is the fast common case;
// arbitrary per-block submeasures are supported for small instances.
struct GdiSpec {
  std::shared_ptr<const BlockPartition> partition;
  std::optional<WeightFn> weight;             // weighted form
  std::vector<Submeasure> block_measures;     // explicit form, index j-1
  std::string label;

  bool weighted() const { return weight.has_value(); }
  double block_value(const IndexSet& a, int j) const;  // mu_j(A ∩ I_j)
  double block_value_full(int j) const;                // mu_j(I_j)

  static GdiSpec natural_density(std::int64_t n_limit);
  static GdiSpec weighted_blocks(const WeightFn& w, std::int64_t n_limit, std::string label);
  static GdiSpec explicit_blocks(BlockPartition partition, std::vector<Submeasure> mu,
                                 std::string label);
};

}  // namespace idealseq
