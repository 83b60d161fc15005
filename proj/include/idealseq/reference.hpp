#pragma once

#include "idealseq/limitset.hpp"

namespace idealseq::reference {

// Serial reference estimators: materialize the per-resolution hit index sets
// explicitly and route them through the public membership / block-value
// operations. Slow and obviously faithful to the definitions; the test suite
// checks the fused parallel kernels against these, and the benchmark target
// compares their runtimes.

IndexSet hit_set(const SequencePrefix& x, const Point& p, double eps);

LimitSetReport estimate_L(const SequencePrefix& x, const NeighborhoodSchedule& schedule,
                          std::int64_t min_hits);

LimitSetReport estimate_Gamma(const SequencePrefix& x, const IdealSpec& ideal,
                              const NeighborhoodSchedule& schedule,
                              const MembershipConfig& config = {});

LimitSetReport estimate_Lambda_gdi(const SequencePrefix& x, const GdiSpec& gdi,
                                   const NeighborhoodSchedule& schedule,
                                   const QGrid& qgrid = {},
                                   const MembershipConfig& config = {});

}  // namespace idealseq::reference
