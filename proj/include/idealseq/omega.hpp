#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "idealseq/index_set.hpp"
#include "idealseq/rational.hpp"
#include "idealseq/sequence.hpp"

namespace idealseq {

// Finite digit prefix of a dyadic expansion plus a tail policy. Every tail
// policy yields infinitely many 1s, so the implied omega lies in (0,1] with a
// non-terminating expansion.
struct OmegaPrefix {
  struct AllOnes {};
  struct PeriodicOnes {
    std::int64_t period = 1;  // digit i > M is 1 iff (i - M) % period == 0
  };
  struct CopyFrom {
    std::shared_ptr<const OmegaPrefix> donor;
    std::int64_t offset = 0;  // digit i > M is donor digit i + offset
  };

  std::vector<std::uint8_t> digits;  // d_1 .. d_M
  std::variant<AllOnes, PeriodicOnes, CopyFrom> tail = AllOnes{};

  std::int64_t prefix_length() const { return static_cast<std::int64_t>(digits.size()); }
  bool digit(std::int64_t i) const;

  std::string tail_tag() const;
  // Text record: digit string, tail tag, optional donor reference.
  std::string to_text() const;

  static OmegaPrefix all_ones() { return {}; }
};

// {i <= n : d_i = 1}, honoring the tail policy beyond the stored prefix.
IndexSet decode(const OmegaPrefix& omega, std::int64_t n);

// Digits of S over [1, m]; round-trips with decode on [1, m]. The tail policy
// defaults to AllOnes and must keep infinitely many 1s.
OmegaPrefix encode(const IndexSet& selected, std::int64_t m);
OmegaPrefix encode(const IndexSet& selected, std::int64_t m,
                   std::variant<OmegaPrefix::AllOnes, OmegaPrefix::PeriodicOnes,
                                OmegaPrefix::CopyFrom>
                       tail);

struct DyadicValue {
  Rat128 value;
  bool exact = false;  // true when the tail closed form was applied
};

// Partial sum of the expansion to `precision` digits, plus the closed-form
// tail for AllOnes / PeriodicOnes policies.
DyadicValue dyadic_value(const OmegaPrefix& omega, int precision);

// x restricted to the selected indices; may be empty (flagged by size == 0).
SequencePrefix subsequence(const SequencePrefix& x, const OmegaPrefix& omega);

// Fair-coin digits from the counter-based generator; tail AllOnes.
OmegaPrefix sample_uniform(std::uint64_t seed, std::int64_t m);

// Digits e_1..e_k over the prefix, donor digits beyond.
OmegaPrefix splice(std::span<const std::uint8_t> prefix_bits, const OmegaPrefix& donor);

// Selection of the indices whose value lies within eps of the target.
OmegaPrefix greedy_donor(const SequencePrefix& x, const Point& target, double eps);

struct WitnessSchedule {
  std::int64_t base_quota = 8;  // per-target selections in cycle 0; doubles each cycle
};

struct SelectionReport {
  OmegaPrefix omega;
  IndexSet selected = IndexSet::empty_set(1);
  std::vector<std::string> construction_log;
  // exact per-cycle pick counts, one row per completed cycle, one column per target
  std::vector<std::vector<std::int64_t>> cycle_picks;
};

// Builds one omega realizing every target as a recurring cluster value of
// x restricted to it. Consecutive index ranges cycle through the targets;
// within a cycle each target's range extends until its donor contributes the
// cycle quota, and quotas double from cycle to cycle.
SelectionReport generic_witness(const SequencePrefix& x,
                                const std::vector<std::pair<Point, OmegaPrefix>>& targets,
                                const WitnessSchedule& schedule = {});

}  // namespace idealseq
