#include "idealseq/index_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace idealseq {

namespace {

void validate_elements(const std::vector<std::int64_t>& elems, std::int64_t n_max) {
  std::int64_t prev = 0;
  for (std::int64_t e : elems) {
    if (e < 1) throw std::invalid_argument("IndexSet: elements must be >= 1");
    if (e <= prev) throw std::invalid_argument("IndexSet: elements must be strictly increasing");
    prev = e;
  }
  if (n_max < 1) throw std::invalid_argument("IndexSet: n_max must be >= 1");
  if (!elems.empty() && elems.back() > n_max)
    throw std::invalid_argument("IndexSet: n_max below largest element");
}

bool is_perfect_power(std::int64_t i, int k) {
  std::int64_t r = static_cast<std::int64_t>(std::llround(std::pow(static_cast<double>(i), 1.0 / k)));
  for (std::int64_t c = std::max<std::int64_t>(1, r - 2); c <= r + 2; ++c) {
    std::int64_t p = 1;
    for (int j = 0; j < k; ++j) p *= c;
    if (p == i) return true;
  }
  return false;
}

std::vector<std::int64_t> sieve_primes(std::int64_t n_max) {
  if (n_max > 20'000'000)
    throw std::invalid_argument("IndexSet: prime sieve bound too large");
  std::vector<bool> comp(static_cast<std::size_t>(n_max) + 1, false);
  std::vector<std::int64_t> out;
  for (std::int64_t i = 2; i <= n_max; ++i) {
    if (!comp[static_cast<std::size_t>(i)]) {
      out.push_back(i);
      for (std::int64_t j = i * i; j <= n_max; j += i) comp[static_cast<std::size_t>(j)] = true;
    }
  }
  return out;
}

}  // namespace

IndexSet IndexSet::from_elements(std::vector<std::int64_t> elems) {
  std::int64_t n_max = elems.empty() ? 1 : elems.back();
  return from_elements(std::move(elems), n_max);
}

IndexSet IndexSet::from_elements(std::vector<std::int64_t> elems, std::int64_t n_max) {
  validate_elements(elems, n_max);
  IndexSet s;
  s.elems_ = std::move(elems);
  s.n_max_ = n_max;
  s.declared_finite_ = true;
  return s;
}

IndexSet IndexSet::from_predicate(std::function<bool(std::int64_t)> pred,
                                  std::int64_t n_max, bool declared_finite) {
  if (!pred) throw std::invalid_argument("IndexSet: null predicate");
  if (n_max < 1) throw std::invalid_argument("IndexSet: n_max must be >= 1");
  IndexSet s;
  s.pred_ = std::move(pred);
  s.n_max_ = n_max;
  s.declared_finite_ = declared_finite;
  return s;
}

IndexSet IndexSet::empty_set(std::int64_t n_max) {
  return from_elements({}, n_max);
}

IndexSet IndexSet::all(std::int64_t n_max) {
  return from_predicate([](std::int64_t) { return true; }, n_max);
}

IndexSet IndexSet::named(const std::string& name, std::int64_t n_max) {
  if (name == "evens")
    return from_predicate([](std::int64_t i) { return i % 2 == 0; }, n_max);
  if (name == "odds")
    return from_predicate([](std::int64_t i) { return i % 2 == 1; }, n_max);
  if (name == "squares")
    return from_predicate([](std::int64_t i) { return is_perfect_power(i, 2); }, n_max);
  if (name == "cubes")
    return from_predicate([](std::int64_t i) { return is_perfect_power(i, 3); }, n_max);
  if (name == "powers-of-two")
    return from_predicate([](std::int64_t i) { return (i & (i - 1)) == 0; }, n_max);
  if (name == "primes") return from_elements(sieve_primes(n_max), n_max);
  if (name == "all") return all(n_max);
  if (name == "empty") return empty_set(n_max);
  if (name.rfind("multiples:", 0) == 0) {
    std::int64_t k = std::stoll(name.substr(10));
    if (k < 1) throw std::invalid_argument("IndexSet: multiples:<k> needs k >= 1");
    return from_predicate([k](std::int64_t i) { return i % k == 0; }, n_max);
  }
  if (name.rfind("residue:", 0) == 0) {
    auto rest = name.substr(8);
    auto colon = rest.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("IndexSet: residue:<m>:<r>");
    std::int64_t m = std::stoll(rest.substr(0, colon));
    std::int64_t r = std::stoll(rest.substr(colon + 1));
    if (m < 1) throw std::invalid_argument("IndexSet: residue modulus must be >= 1");
    return from_predicate([m, r](std::int64_t i) { return i % m == r; }, n_max);
  }
  if (name.rfind("finite:", 0) == 0) {
    auto rest = name.substr(7);
    auto dash = rest.find('-');
    if (dash == std::string::npos) throw std::invalid_argument("IndexSet: finite:<a>-<b>");
    std::int64_t a = std::stoll(rest.substr(0, dash));
    std::int64_t b = std::stoll(rest.substr(dash + 1));
    if (a < 1 || b < a) throw std::invalid_argument("IndexSet: bad finite range");
    std::vector<std::int64_t> v;
    for (std::int64_t i = a; i <= b; ++i) v.push_back(i);
    return from_elements(std::move(v), std::max(b, n_max));
  }
  throw std::invalid_argument("IndexSet: unknown set name '" + name + "'");
}

bool IndexSet::contains(std::int64_t i) const {
  if (i < 1 || i > n_max_) return false;
  if (pred_) return pred_(i);
  return std::binary_search(elems_.begin(), elems_.end(), i);
}

std::int64_t IndexSet::count_up_to(std::int64_t n) const {
  n = std::min(n, n_max_);
  if (!pred_) {
    return std::upper_bound(elems_.begin(), elems_.end(), n) - elems_.begin();
  }
  std::int64_t c = 0;
  for (std::int64_t i = 1; i <= n; ++i)
    if (pred_(i)) ++c;
  return c;
}

std::int64_t IndexSet::max_element_up_to(std::int64_t n) const {
  n = std::min(n, n_max_);
  if (!pred_) {
    auto it = std::upper_bound(elems_.begin(), elems_.end(), n);
    return it == elems_.begin() ? 0 : *(it - 1);
  }
  for (std::int64_t i = n; i >= 1; --i)
    if (pred_(i)) return i;
  return 0;
}

std::vector<std::int64_t> IndexSet::elements_up_to(std::int64_t n) const {
  n = std::min(n, n_max_);
  std::vector<std::int64_t> out;
  if (!pred_) {
    for (std::int64_t e : elems_) {
      if (e > n) break;
      out.push_back(e);
    }
    return out;
  }
  for (std::int64_t i = 1; i <= n; ++i)
    if (pred_(i)) out.push_back(i);
  return out;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
  std::int64_t n_max = std::min(a.n_max(), b.n_max());
  if (a.is_explicit() && b.is_explicit()) {
    auto ea = a.elements_up_to(n_max);
    auto eb = b.elements_up_to(n_max);
    std::vector<std::int64_t> out;
    std::set_union(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out));
    return IndexSet::from_elements(std::move(out), n_max);
  }
  return IndexSet::from_predicate(
      [a, b](std::int64_t i) { return a.contains(i) || b.contains(i); }, n_max,
      a.declared_finite() && b.declared_finite());
}

IndexSet set_intersection(const IndexSet& a, const IndexSet& b) {
  std::int64_t n_max = std::min(a.n_max(), b.n_max());
  if (a.is_explicit() && b.is_explicit()) {
    auto ea = a.elements_up_to(n_max);
    auto eb = b.elements_up_to(n_max);
    std::vector<std::int64_t> out;
    std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(), std::back_inserter(out));
    return IndexSet::from_elements(std::move(out), n_max);
  }
  return IndexSet::from_predicate(
      [a, b](std::int64_t i) { return a.contains(i) && b.contains(i); }, n_max,
      a.declared_finite() || b.declared_finite());
}

}  // namespace idealseq
