#include "idealseq/omega.hpp"

#include <algorithm>
#include <stdexcept>

#include "idealseq/prng.hpp"

namespace idealseq {

bool OmegaPrefix::digit(std::int64_t i) const {
  if (i < 1) throw std::domain_error("OmegaPrefix: digit index must be >= 1");
  if (i <= prefix_length()) return digits[static_cast<std::size_t>(i - 1)] != 0;
  std::int64_t m = prefix_length();
  if (std::holds_alternative<AllOnes>(tail)) return true;
  if (const auto* p = std::get_if<PeriodicOnes>(&tail)) return (i - m) % p->period == 0;
  const auto& c = std::get<CopyFrom>(tail);
  return c.donor->digit(i + c.offset);
}

std::string OmegaPrefix::tail_tag() const {
  if (std::holds_alternative<AllOnes>(tail)) return "all_ones";
  if (const auto* p = std::get_if<PeriodicOnes>(&tail))
    return "periodic_ones:" + std::to_string(p->period);
  return "copy_from:offset=" + std::to_string(std::get<CopyFrom>(tail).offset);
}

std::string OmegaPrefix::to_text() const {
  std::string s;
  s.reserve(digits.size() + 24);
  for (std::uint8_t d : digits) s += d ? '1' : '0';
  s += ";tail=";
  s += tail_tag();
  return s;
}

IndexSet decode(const OmegaPrefix& omega, std::int64_t n) {
  if (n < 1) throw std::domain_error("decode: n must be >= 1");
  std::vector<std::int64_t> sel;
  for (std::int64_t i = 1; i <= n; ++i)
    if (omega.digit(i)) sel.push_back(i);
  return IndexSet::from_elements(std::move(sel), n);
}

OmegaPrefix encode(const IndexSet& selected, std::int64_t m) {
  return encode(selected, m, OmegaPrefix::AllOnes{});
}

OmegaPrefix encode(const IndexSet& selected, std::int64_t m,
                   std::variant<OmegaPrefix::AllOnes, OmegaPrefix::PeriodicOnes,
                                OmegaPrefix::CopyFrom>
                       tail) {
  if (m < 1) throw std::domain_error("encode: m must be >= 1");
  if (!selected.is_explicit() && m > selected.n_max())
    throw std::domain_error("encode: m beyond the set's enumeration bound");
  OmegaPrefix w;
  w.digits.assign(static_cast<std::size_t>(m), 0);
  for (std::int64_t e : selected.elements_up_to(std::min(m, selected.n_max())))
    w.digits[static_cast<std::size_t>(e - 1)] = 1;
  struct MoveTail {
    OmegaPrefix& w;
    void operator()(OmegaPrefix::AllOnes t) { w.tail = t; }
    void operator()(OmegaPrefix::PeriodicOnes t) {
      if (t.period < 1) throw std::invalid_argument("encode: period must be >= 1");
      w.tail = t;
    }
    void operator()(OmegaPrefix::CopyFrom t) {
      if (!t.donor) throw std::invalid_argument("encode: copy-from tail without donor");
      w.tail = std::move(t);
    }
  };
  std::visit(MoveTail{w}, std::move(tail));
  return w;
}

DyadicValue dyadic_value(const OmegaPrefix& omega, int precision) {
  if (precision < 0 || precision > 120)
    throw std::domain_error("dyadic_value: precision must be in [0, 120]");
  std::int64_t m = omega.prefix_length();
  DyadicValue out;

  // closed-form tails sum exactly beyond the stored prefix
  if (std::holds_alternative<OmegaPrefix::AllOnes>(omega.tail) ||
      std::holds_alternative<OmegaPrefix::PeriodicOnes>(omega.tail)) {
    if (m > 120) throw std::domain_error("dyadic_value: prefix too long for exact mode");
    __int128 num = 0;
    for (std::int64_t i = 1; i <= m; ++i) {
      num <<= 1;
      if (omega.digit(i)) num += 1;
    }
    __int128 den = static_cast<__int128>(1) << m;
    Rat128 head = Rat128::make(num, den);
    Rat128 tail_value;
    if (std::holds_alternative<OmegaPrefix::AllOnes>(omega.tail)) {
      // sum_{i>m} 2^-i = 2^-m
      tail_value = Rat128::make(1, den);
    } else {
      auto period = std::get<OmegaPrefix::PeriodicOnes>(omega.tail).period;
      if (period > 100) throw std::domain_error("dyadic_value: period too large for exact mode");
      // sum_{j>=1} 2^-(m + j*period) = 2^-m / (2^period - 1)
      __int128 pden = (static_cast<__int128>(1) << period) - 1;
      tail_value = Rat128::make(1, den * pden);
    }
    out.value = head + tail_value;
    out.exact = true;
    return out;
  }

  // copy-from tail: partial sum to the requested precision only
  __int128 num = 0;
  for (std::int64_t i = 1; i <= precision; ++i) {
    num <<= 1;
    if (omega.digit(i)) num += 1;
  }
  out.value = Rat128::make(num, static_cast<__int128>(1) << precision);
  out.exact = false;
  return out;
}

SequencePrefix subsequence(const SequencePrefix& x, const OmegaPrefix& omega) {
  SequencePrefix y;
  y.space = x.space;
  y.label = x.label + "|omega";
  int dim = x.space.dimension;
  for (std::int64_t i = 1; i <= x.size; ++i) {
    if (!omega.digit(i)) continue;
    auto v = x.at(i);
    y.data.insert(y.data.end(), v.begin(), v.end());
  }
  y.size = static_cast<std::int64_t>(y.data.size()) / dim;
  return y;
}

OmegaPrefix sample_uniform(std::uint64_t seed, std::int64_t m) {
  if (m < 1) throw std::domain_error("sample_uniform: m must be >= 1");
  OmegaPrefix w;
  w.digits.resize(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i)
    w.digits[static_cast<std::size_t>(i)] =
        coin_flip(seed, static_cast<std::uint64_t>(i)) ? 1 : 0;
  return w;
}

OmegaPrefix splice(std::span<const std::uint8_t> prefix_bits, const OmegaPrefix& donor) {
  OmegaPrefix w;
  w.digits.assign(prefix_bits.begin(), prefix_bits.end());
  w.tail = OmegaPrefix::CopyFrom{std::make_shared<OmegaPrefix>(donor), 0};
  return w;
}

OmegaPrefix greedy_donor(const SequencePrefix& x, const Point& target, double eps) {
  if (!(eps > 0.0)) throw std::domain_error("greedy_donor: eps must be > 0");
  if (target.dim() != x.space.dimension)
    throw std::invalid_argument("greedy_donor: target dimension mismatch");
  OmegaPrefix w;
  w.digits.resize(static_cast<std::size_t>(x.size));
  for (std::int64_t i = 1; i <= x.size; ++i)
    w.digits[static_cast<std::size_t>(i - 1)] =
        x.space.distance(x.at(i), {target.coords.data(), target.coords.size()}) <= eps ? 1 : 0;
  return w;
}

SelectionReport generic_witness(const SequencePrefix& x,
                                const std::vector<std::pair<Point, OmegaPrefix>>& targets,
                                const WitnessSchedule& schedule) {
  if (targets.empty()) throw std::invalid_argument("generic_witness: no targets");
  if (schedule.base_quota < 1)
    throw std::invalid_argument("generic_witness: base quota must be >= 1");
  const std::int64_t n = x.size;
  const std::size_t t_count = targets.size();

  std::vector<std::uint8_t> digits(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> selected;
  SelectionReport report;

  std::int64_t cursor = 1;
  std::int64_t quota = schedule.base_quota;
  int cycle = 0;
  bool truncated = false;

  while (cursor <= n && !truncated) {
    std::vector<std::int64_t> picks_this_cycle(t_count, 0);
    for (std::size_t t = 0; t < t_count && !truncated; ++t) {
      const OmegaPrefix& donor = targets[t].second;
      std::int64_t range_start = cursor;
      std::int64_t picked = 0;
      while (picked < quota && cursor <= n) {
        if (donor.digit(cursor)) {
          digits[static_cast<std::size_t>(cursor - 1)] = 1;
          selected.push_back(cursor);
          ++picked;
        }
        ++cursor;
      }
      picks_this_cycle[t] = picked;
      report.construction_log.push_back(
          "cycle " + std::to_string(cycle) + " target " + std::to_string(t) + " range [" +
          std::to_string(range_start) + "," + std::to_string(cursor - 1) + "] picked " +
          std::to_string(picked) + "/" + std::to_string(quota));
      if (picked == 0 && cycle == 0)
        throw std::runtime_error("generic_witness: donor for target " + std::to_string(t) +
                                 " selects nothing in [" + std::to_string(range_start) + "," +
                                 std::to_string(n) + "]");
      if (picked < quota) truncated = true;  // ran out of indices mid-block
    }
    if (!truncated) {
      report.cycle_picks.push_back(std::move(picks_this_cycle));
      ++cycle;
      quota *= 2;
    }
  }
  if (truncated)
    report.construction_log.push_back("final cycle truncated at index bound " +
                                      std::to_string(n));

  report.omega.digits = std::move(digits);
  report.omega.tail = OmegaPrefix::AllOnes{};
  report.selected = IndexSet::from_elements(std::move(selected), n);
  return report;
}

}  // namespace idealseq
