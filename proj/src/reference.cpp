#include "idealseq/reference.hpp"

#include <algorithm>
#include <cmath>

namespace idealseq::reference {

IndexSet hit_set(const SequencePrefix& x, const Point& p, double eps) {
  std::vector<std::int64_t> hits;
  for (std::int64_t n = 1; n <= x.size; ++n) {
    if (x.space.distance(x.at(n), {p.coords.data(), p.coords.size()}) <= eps)
      hits.push_back(n);
  }
  return IndexSet::from_elements(std::move(hits), x.size);
}

LimitSetReport estimate_L(const SequencePrefix& x, const NeighborhoodSchedule& schedule,
                          std::int64_t min_hits) {
  schedule.validate();
  auto grid = candidate_grid(x, schedule, std::min(min_hits, kCandidateHitterFloor));
  LimitSetReport rep;
  rep.kind = LimitSetReport::Kind::L;
  rep.n = x.size;
  rep.schedule = schedule;
  rep.min_hits = min_hits;
  for (const Point& p : grid) {
    CandidateStats cs;
    cs.point = p;
    bool ok = true;
    for (int m = 0; m <= schedule.levels; ++m) {
      auto hits = hit_set(x, p, schedule.eps(m)).count_up_to(x.size);
      cs.stats.push_back(static_cast<double>(hits));
      ok = ok && hits >= min_hits;
    }
    cs.status = ok ? 1 : 0;
    if (ok) rep.accepted.push_back(p);
    rep.per_point.push_back(std::move(cs));
  }
  return rep;
}

LimitSetReport estimate_Gamma(const SequencePrefix& x, const IdealSpec& ideal,
                              const NeighborhoodSchedule& schedule,
                              const MembershipConfig& config) {
  schedule.validate();
  config.validate();
  auto grid = candidate_grid(x, schedule, kCandidateHitterFloor);
  LimitSetReport rep;
  rep.kind = LimitSetReport::Kind::Gamma;
  rep.n = x.size;
  rep.schedule = schedule;
  rep.ideal_name = ideal.name();
  for (const Point& p : grid) {
    CandidateStats cs;
    cs.point = p;
    bool any_in = false, any_und = false;
    for (int m = 0; m <= schedule.levels; ++m) {
      auto verdict = membership(ideal, hit_set(x, p, schedule.eps(m)), x.size, config);
      cs.stats.push_back(verdict.statistic);
      cs.verdicts.push_back(verdict.verdict);
      any_in = any_in || verdict.verdict == Verdict::InIdeal;
      any_und = any_und || verdict.verdict == Verdict::Undecided;
    }
    cs.status = any_in ? 0 : (any_und ? 2 : 1);
    if (cs.status == 1) rep.accepted.push_back(p);
    if (cs.status == 2) rep.undecided.push_back(p);
    rep.per_point.push_back(std::move(cs));
  }
  return rep;
}

LimitSetReport estimate_Lambda_gdi(const SequencePrefix& x, const GdiSpec& gdi,
                                   const NeighborhoodSchedule& schedule, const QGrid& qgrid,
                                   const MembershipConfig& config) {
  schedule.validate();
  config.validate();
  qgrid.validate();
  double limsup_full = estimate_limsup_full_blocks(gdi, x.size, config.window_fraction);
  auto q_abs = qgrid.scaled(limsup_full);
  auto grid = candidate_grid(x, schedule, kCandidateHitterFloor);

  int complete = 0;
  while (complete < gdi.partition->block_count() &&
         gdi.partition->block_range(complete + 1).second <= x.size)
    ++complete;

  LimitSetReport rep;
  rep.kind = LimitSetReport::Kind::Lambda;
  rep.n = x.size;
  rep.schedule = schedule;
  rep.ideal_name = "gdi(" + gdi.label + ")";
  rep.qgrid_abs = q_abs;
  for (const Point& p : grid) {
    CandidateStats cs;
    cs.point = p;
    for (int m = 0; m <= schedule.levels; ++m) {
      IndexSet hits = hit_set(x, p, schedule.eps(m));
      std::vector<std::pair<std::int64_t, double>> values;
      for (int j = 1; j <= complete; ++j)
        values.emplace_back(gdi.partition->block_range(j).second, gdi.block_value(hits, j));
      cs.stats.push_back(limsup_estimate(values, config.window_fraction));
    }
    double floor = *std::min_element(cs.stats.begin(), cs.stats.end());
    for (double q : q_abs) {
      if (floor >= q) {
        cs.passing_q = q;
        break;
      }
    }
    cs.status = cs.passing_q > 0.0 ? 1 : 0;
    if (cs.status == 1) rep.accepted.push_back(p);
    rep.per_point.push_back(std::move(cs));
  }
  return rep;
}

}  // namespace idealseq::reference
