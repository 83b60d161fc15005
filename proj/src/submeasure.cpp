#include "idealseq/submeasure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace idealseq {

WeightFn WeightFn::constant() {
  return {"constant", [](std::int64_t) { return 1.0; }};
}

WeightFn WeightFn::one_over_i() {
  return {"one_over_i", [](std::int64_t i) { return 1.0 / static_cast<double>(i); }};
}

WeightFn WeightFn::power(double s) {
  return {"power:" + std::to_string(s),
          [s](std::int64_t i) { return std::pow(static_cast<double>(i), s); }};
}

WeightFn WeightFn::tabulated(std::vector<double> values, std::string label) {
  auto shared = std::make_shared<std::vector<double>>(std::move(values));
  return {std::move(label), [shared](std::int64_t i) {
            if (i < 1 || i > static_cast<std::int64_t>(shared->size()))
              throw std::out_of_range("tabulated weight: index beyond table");
            return (*shared)[static_cast<std::size_t>(i - 1)];
          }};
}

Submeasure erdos_ulam_submeasure(const WeightFn& f) {
  return {"phi_" + f.name, [f](const IndexSet& a) {
            std::int64_t n = a.n_max();
            auto elems = a.elements_up_to(n);
            if (elems.empty()) return 0.0;
            // sup over m of in-set mass / total mass; for a finite set the
            // sup over all m is attained at some m <= max(A)
            double total = 0.0, in_set = 0.0, sup = 0.0;
            std::size_t k = 0;
            for (std::int64_t m = 1; m <= elems.back(); ++m) {
              double w = f(m);
              if (w <= 0.0)
                throw std::invalid_argument("erdos_ulam_submeasure: weight must be positive");
              total += w;
              if (k < elems.size() && elems[k] == m) {
                in_set += w;
                ++k;
              }
              sup = std::max(sup, in_set / total);
            }
            return sup;
          }};
}

Submeasure summable_submeasure(const WeightFn& f) {
  return {"sum_" + f.name, [f](const IndexSet& a) {
            double s = 0.0;
            for (std::int64_t e : a.elements_up_to(a.n_max())) s += f(e);
            return s;
          }};
}

Submeasure block_weighted_submeasure(std::int64_t lo, std::int64_t hi, const WeightFn& w) {
  if (lo < 1 || hi < lo) throw std::invalid_argument("block submeasure: bad range");
  double norm = 0.0;
  for (std::int64_t i = lo; i <= hi; ++i) norm += w(i);
  if (norm <= 0.0) throw std::invalid_argument("block submeasure: zero block mass");
  return {"block[" + std::to_string(lo) + "," + std::to_string(hi) + "]_" + w.name,
          [lo, hi, w, norm](const IndexSet& a) {
            double s = 0.0;
            for (std::int64_t e : a.elements_up_to(std::min(hi, a.n_max())))
              if (e >= lo) s += w(e);
            return s / norm;
          }};
}

BlockPartition::BlockPartition(std::vector<std::int64_t> ends) : ends_(std::move(ends)) {
  if (ends_.empty()) throw std::invalid_argument("BlockPartition: no blocks");
  std::int64_t prev = 0;
  for (std::int64_t e : ends_) {
    if (e <= prev) throw std::invalid_argument("BlockPartition: ends must increase");
    prev = e;
  }
}

BlockPartition BlockPartition::from_ends(std::vector<std::int64_t> ends) {
  return BlockPartition(std::move(ends));
}

BlockPartition BlockPartition::dyadic(std::int64_t n_limit) {
  if (n_limit < 2) throw std::invalid_argument("BlockPartition: dyadic needs n_limit >= 2");
  std::vector<std::int64_t> ends;
  for (std::int64_t e = 2; e <= n_limit; e *= 2) ends.push_back(e);
  return BlockPartition(std::move(ends));
}

BlockPartition BlockPartition::mass_geometric(const WeightFn& w, std::int64_t n_limit,
                                              int blocks) {
  if (n_limit < 2) throw std::invalid_argument("BlockPartition: n_limit >= 2 required");
  if (blocks < 1) throw std::invalid_argument("BlockPartition: blocks >= 1 required");
  double total = 0.0;
  for (std::int64_t i = 1; i <= n_limit; ++i) {
    double wi = w(i);
    if (wi < 0.0) throw std::invalid_argument("BlockPartition: negative weight");
    total += wi;
  }
  if (!(total > 0.0)) throw std::invalid_argument("BlockPartition: zero total mass");
  // cumulative-mass targets total * r^(k - blocks) with r = total^(1/blocks)
  double r = std::pow(total, 1.0 / blocks);
  if (r < 1.0001) r = 1.0001;
  std::vector<std::int64_t> ends;
  double cum = 0.0;
  int k = 1;
  for (std::int64_t i = 1; i <= n_limit && k <= blocks; ++i) {
    cum += w(i);
    double target = total * std::pow(r, static_cast<double>(k - blocks));
    if (cum >= target || (k == blocks && i == n_limit)) {
      ends.push_back(k == blocks ? n_limit : i);
      ++k;
    }
  }
  if (ends.empty() || ends.back() != n_limit) {
    if (!ends.empty() && ends.back() < n_limit)
      ends.push_back(n_limit);
    else if (ends.empty())
      ends.push_back(n_limit);
  }
  return BlockPartition(std::move(ends));
}

BlockPartition BlockPartition::mass_doubling(const WeightFn& w, std::int64_t n_limit) {
  if (n_limit < 2) throw std::invalid_argument("BlockPartition: n_limit >= 2 required");
  std::vector<std::int64_t> ends;
  double before = 0.0, block = 0.0;
  for (std::int64_t i = 1; i <= n_limit; ++i) {
    double wi = w(i);
    if (wi < 0.0) throw std::invalid_argument("BlockPartition: negative weight");
    block += wi;
    if (block >= before && block > 0.0) {
      ends.push_back(i);
      before += block;
      block = 0.0;
    }
  }
  if (ends.empty()) throw std::invalid_argument("BlockPartition: weight mass never positive");
  return BlockPartition(std::move(ends));
}

std::pair<std::int64_t, std::int64_t> BlockPartition::block_range(int j) const {
  if (j < 1 || j > block_count()) throw std::out_of_range("BlockPartition: bad block index");
  std::int64_t lo = (j == 1) ? 1 : ends_[static_cast<std::size_t>(j - 2)] + 1;
  return {lo, ends_[static_cast<std::size_t>(j - 1)]};
}

int BlockPartition::block_of(std::int64_t i) const {
  if (i < 1 || i > ends_.back()) return 0;
  auto it = std::lower_bound(ends_.begin(), ends_.end(), i);
  return static_cast<int>(it - ends_.begin()) + 1;
}

double GdiSpec::block_value(const IndexSet& a, int j) const {
  auto [lo, hi] = partition->block_range(j);
  if (hi > a.n_max())
    throw std::domain_error("GdiSpec: block exceeds the set's enumeration bound");
  if (weight) {
    // Kahan accumulation, matching the streaming estimator kernels bit for bit
    double mass = 0.0, mass_c = 0.0, norm = 0.0, norm_c = 0.0;
    for (std::int64_t i = lo; i <= hi; ++i) {
      double w = (*weight)(i);
      double y = w - norm_c;
      double t = norm + y;
      norm_c = (t - norm) - y;
      norm = t;
      if (a.contains(i)) {
        double ym = w - mass_c;
        double tm = mass + ym;
        mass_c = (tm - mass) - ym;
        mass = tm;
      }
    }
    return norm > 0.0 ? mass / norm : 0.0;
  }
  const auto& mu = block_measures.at(static_cast<std::size_t>(j - 1));
  std::vector<std::int64_t> in_block;
  for (std::int64_t i = lo; i <= hi; ++i)
    if (a.contains(i)) in_block.push_back(i);
  if (in_block.empty()) return 0.0;
  return mu(IndexSet::from_elements(std::move(in_block), hi));
}

double GdiSpec::block_value_full(int j) const {
  auto [lo, hi] = partition->block_range(j);
  if (weight) return 1.0;
  std::vector<std::int64_t> full;
  for (std::int64_t i = lo; i <= hi; ++i) full.push_back(i);
  return block_measures.at(static_cast<std::size_t>(j - 1))(
      IndexSet::from_elements(std::move(full), hi));
}

GdiSpec GdiSpec::natural_density(std::int64_t n_limit) {
  GdiSpec g;
  g.partition = std::make_shared<BlockPartition>(BlockPartition::dyadic(n_limit));
  g.weight = WeightFn::constant();
  g.label = "natural-density";
  return g;
}

GdiSpec GdiSpec::weighted_blocks(const WeightFn& w, std::int64_t n_limit, std::string label) {
  GdiSpec g;
  g.partition =
      std::make_shared<BlockPartition>(BlockPartition::mass_geometric(w, n_limit, 16));
  g.weight = w;
  g.label = std::move(label);
  return g;
}

GdiSpec GdiSpec::explicit_blocks(BlockPartition partition, std::vector<Submeasure> mu,
                                 std::string label) {
  if (static_cast<int>(mu.size()) < partition.block_count())
    throw std::invalid_argument("GdiSpec: one submeasure per block required");
  GdiSpec g;
  g.partition = std::make_shared<BlockPartition>(std::move(partition));
  g.block_measures = std::move(mu);
  g.label = std::move(label);
  return g;
}

}  // namespace idealseq
