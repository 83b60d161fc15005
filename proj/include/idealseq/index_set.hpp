#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace idealseq {

// A set of positive integers, either an explicit sorted list or a membership
// predicate with an enumeration bound n_max. Explicit sets are finite by
// construction; predicate sets may stand for infinite sets and carry a
// declared_finite flag for the Fin-membership surrogate.
class IndexSet {
 public:
  static IndexSet from_elements(std::vector<std::int64_t> elems);
  static IndexSet from_elements(std::vector<std::int64_t> elems, std::int64_t n_max);
  static IndexSet from_predicate(std::function<bool(std::int64_t)> pred,
                                 std::int64_t n_max, bool declared_finite = false);
  static IndexSet empty_set(std::int64_t n_max);
  static IndexSet all(std::int64_t n_max);

  // Catalogue: evens, odds, squares, cubes, primes, powers-of-two,
  // multiples:<k>, residue:<m>:<r>, finite:<a>-<b>, all, empty.
  static IndexSet named(const std::string& name, std::int64_t n_max);

  bool contains(std::int64_t i) const;
  std::int64_t n_max() const { return n_max_; }
  bool is_explicit() const { return !pred_; }
  bool declared_finite() const { return declared_finite_; }

  std::int64_t count_up_to(std::int64_t n) const;
  std::int64_t max_element_up_to(std::int64_t n) const;  // 0 when none
  std::vector<std::int64_t> elements_up_to(std::int64_t n) const;

 private:
  IndexSet() = default;

  std::vector<std::int64_t> elems_;           // explicit form, sorted
  std::function<bool(std::int64_t)> pred_;    // predicate form when set
  std::int64_t n_max_ = 0;
  bool declared_finite_ = false;
};

IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_intersection(const IndexSet& a, const IndexSet& b);

}  // namespace idealseq
