#include "idealseq/limitset.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace idealseq {

namespace {

bool inside_parallel_region() {
#ifdef _OPENMP
  return omp_in_parallel() != 0;
#else
  return false;
#endif
}

struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double v) {
    double y = v - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

// Largest m with eps(m) >= d; -1 when d exceeds the coarsest radius.
inline int level_of_distance(double d, const double* radii, int levels) {
  if (d > radii[0]) return -1;
  for (int m = levels; m >= 0; --m)
    if (d <= radii[m]) return m;
  return -1;
}

std::vector<double> radii_of(const NeighborhoodSchedule& s) {
  std::vector<double> r(static_cast<std::size_t>(s.levels) + 1);
  for (int m = 0; m <= s.levels; ++m) r[static_cast<std::size_t>(m)] = s.eps(m);
  return r;
}

inline double point_distance(const SequencePrefix& x, std::int64_t n, const Point& p) {
  if (x.space.dimension == 1)
    return std::fabs(x.data[static_cast<std::size_t>(n - 1)] - p.coords[0]);
  return x.space.distance(x.at(n), {p.coords.data(), p.coords.size()});
}

// Complete blocks of the partition inside [1, n]: pairs (lo, hi).
std::vector<std::pair<std::int64_t, std::int64_t>> complete_blocks(const BlockPartition& part,
                                                                   std::int64_t n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  for (int j = 1; j <= part.block_count(); ++j) {
    auto [lo, hi] = part.block_range(j);
    if (hi > n) break;
    out.emplace_back(lo, hi);
  }
  return out;
}

}  // namespace

double NeighborhoodSchedule::eps(int m) const {
  return eps0 * std::ldexp(1.0, -m);  // eps0 * 2^-m, exact scaling
}

void NeighborhoodSchedule::validate() const {
  if (!(eps0 > 0.0)) throw std::invalid_argument("schedule: eps0 must be > 0");
  if (levels < 0 || levels > 40) throw std::invalid_argument("schedule: levels must be in [0,40]");
}

std::vector<double> QGrid::scaled(double limsup_full) const {
  validate();
  if (!(limsup_full > 0.0))
    throw std::invalid_argument("qgrid: estimated limsup mu_n(I_n) must be positive");
  std::vector<double> out;
  out.reserve(relative.size());
  for (double r : relative) out.push_back(r * limsup_full);
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

void QGrid::validate() const {
  if (relative.empty()) throw std::invalid_argument("qgrid: empty");
  for (double r : relative)
    if (!(r > 0.0) || !(r < 1.0))
      throw std::invalid_argument("qgrid: relative levels must lie in (0,1)");
}

std::string LimitSetReport::kind_name(Kind k) {
  switch (k) {
    case Kind::L: return "L";
    case Kind::Gamma: return "Gamma";
    case Kind::Lambda: return "Lambda";
  }
  return "?";
}

std::vector<Point> candidate_grid(const SequencePrefix& x, const NeighborhoodSchedule& schedule,
                                  std::int64_t min_hits) {
  schedule.validate();
  if (x.size < 1) throw std::invalid_argument("candidate_grid: empty prefix");
  const int dim = x.space.dimension;
  const double spacing = schedule.finest();

  std::vector<double> lo(dim), hi(dim);
  for (int k = 0; k < dim; ++k) lo[k] = hi[k] = x.data[static_cast<std::size_t>(k)];
  for (std::int64_t n = 1; n <= x.size; ++n) {
    auto v = x.at(n);
    for (int k = 0; k < dim; ++k) {
      lo[k] = std::min(lo[k], v[k]);
      hi[k] = std::max(hi[k], v[k]);
    }
  }

  std::vector<std::int64_t> steps(dim);
  double total = 1.0;
  for (int k = 0; k < dim; ++k) {
    steps[k] = static_cast<std::int64_t>(std::ceil((hi[k] - lo[k]) / spacing)) + 1;
    total *= static_cast<double>(steps[k]);
  }
  if (total > 2e6)
    throw std::invalid_argument(
        "candidate_grid: schedule finer than the data span supports (grid would need " +
        std::to_string(static_cast<std::int64_t>(total)) + " points)");

  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(total));
  std::vector<std::int64_t> odo(dim, 0);
  for (;;) {
    Point p;
    p.coords.resize(dim);
    for (int k = 0; k < dim; ++k)
      p.coords[k] = lo[k] + static_cast<double>(odo[k]) * spacing;
    pts.push_back(std::move(p));
    int k = dim - 1;
    while (k >= 0 && ++odo[k] == steps[k]) odo[k--] = 0;
    if (k < 0) break;
  }

  // heavy hitters: exact values occurring at least min_hits times
  std::map<std::vector<double>, std::int64_t> counts;
  for (std::int64_t n = 1; n <= x.size; ++n) {
    auto v = x.at(n);
    ++counts[std::vector<double>(v.begin(), v.end())];
  }
  for (const auto& [coords, cnt] : counts)
    if (cnt >= min_hits) pts.push_back(Point{std::vector<double>(coords)});

  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// --- L ----------------------------------------------------------------------

LimitSetReport estimate_L(const SequencePrefix& x, const NeighborhoodSchedule& schedule,
                          std::int64_t min_hits) {
  schedule.validate();
  if (min_hits < 1) throw std::invalid_argument("estimate_L: min_hits must be >= 1");
  if (x.size < min_hits) throw std::invalid_argument("estimate_L: prefix shorter than min_hits");
  auto grid = candidate_grid(x, schedule, std::min(min_hits, kCandidateHitterFloor));
  const int levels = schedule.levels;
  const auto radii_v = radii_of(schedule);
  const double* radii = radii_v.data();

  std::vector<CandidateStats> per_point(grid.size());
#pragma omp parallel for schedule(dynamic) if (!inside_parallel_region())
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(grid.size()); ++c) {
    const Point& p = grid[static_cast<std::size_t>(c)];
    std::vector<std::int64_t> hits(static_cast<std::size_t>(levels) + 1, 0);
    for (std::int64_t n = 1; n <= x.size; ++n) {
      int m_max = level_of_distance(point_distance(x, n, p), radii, levels);
      for (int m = 0; m <= m_max; ++m) ++hits[static_cast<std::size_t>(m)];
    }
    CandidateStats cs;
    cs.point = p;
    cs.stats.assign(hits.begin(), hits.end());
    bool ok = true;
    for (auto h : hits) ok = ok && h >= min_hits;
    cs.status = ok ? 1 : 0;
    per_point[static_cast<std::size_t>(c)] = std::move(cs);
  }

  LimitSetReport rep;
  rep.kind = LimitSetReport::Kind::L;
  rep.n = x.size;
  rep.schedule = schedule;
  rep.min_hits = min_hits;
  for (auto& cs : per_point)
    if (cs.status == 1) rep.accepted.push_back(cs.point);
  rep.per_point = std::move(per_point);
  return rep;
}

// --- Gamma -------------------------------------------------------------------

namespace {

// Per-candidate statistic pass for each ideal family. All passes walk the
// prefix once in index order; per-resolution accumulators are updated for
// m <= m_max(n). Window maxima only need refreshing at hits (the ratio decays
// between hits) and at the window start.

std::vector<double> gamma_stats_density(const SequencePrefix& x, const Point& p,
                                        const NeighborhoodSchedule& schedule,
                                        const std::vector<double>& w,
                                        const std::vector<double>& cumw, std::int64_t window_lo) {
  const int levels = schedule.levels;
  const auto radii_v = radii_of(schedule);
  const double* radii = radii_v.data();
  std::vector<Kahan> acc(static_cast<std::size_t>(levels) + 1);
  std::vector<double> best(static_cast<std::size_t>(levels) + 1, 0.0);
  for (std::int64_t n = 1; n <= x.size; ++n) {
    int m_max = level_of_distance(point_distance(x, n, p), radii, levels);
    for (int m = 0; m <= m_max; ++m) acc[static_cast<std::size_t>(m)].add(w[static_cast<std::size_t>(n - 1)]);
    if (n == window_lo) {
      for (int m = 0; m <= levels; ++m)
        best[static_cast<std::size_t>(m)] =
            acc[static_cast<std::size_t>(m)].sum / cumw[static_cast<std::size_t>(n - 1)];
    } else if (n > window_lo) {
      for (int m = 0; m <= m_max; ++m)
        best[static_cast<std::size_t>(m)] =
            std::max(best[static_cast<std::size_t>(m)],
                     acc[static_cast<std::size_t>(m)].sum / cumw[static_cast<std::size_t>(n - 1)]);
    }
  }
  return best;
}

std::vector<double> gamma_stats_erdos_ulam(const SequencePrefix& x, const Point& p,
                                           const NeighborhoodSchedule& schedule,
                                           const std::vector<double>& w,
                                           const std::vector<double>& cumw, std::int64_t cut) {
  const int levels = schedule.levels;
  const auto radii_v = radii_of(schedule);
  const double* radii = radii_v.data();
  std::vector<Kahan> tail(static_cast<std::size_t>(levels) + 1);
  std::vector<double> sup(static_cast<std::size_t>(levels) + 1, 0.0);
  for (std::int64_t n = cut + 1; n <= x.size; ++n) {
    int m_max = level_of_distance(point_distance(x, n, p), radii, levels);
    for (int m = 0; m <= m_max; ++m) {
      auto mi = static_cast<std::size_t>(m);
      tail[mi].add(w[static_cast<std::size_t>(n - 1)]);
      sup[mi] = std::max(sup[mi], tail[mi].sum / cumw[static_cast<std::size_t>(n - 1)]);
    }
  }
  return sup;
}

std::vector<double> gamma_stats_summable(const SequencePrefix& x, const Point& p,
                                         const NeighborhoodSchedule& schedule,
                                         const std::vector<double>& w, std::int64_t cut) {
  const int levels = schedule.levels;
  const auto radii_v = radii_of(schedule);
  const double* radii = radii_v.data();
  std::vector<Kahan> tail(static_cast<std::size_t>(levels) + 1);
  for (std::int64_t n = cut + 1; n <= x.size; ++n) {
    int m_max = level_of_distance(point_distance(x, n, p), radii, levels);
    for (int m = 0; m <= m_max; ++m)
      tail[static_cast<std::size_t>(m)].add(w[static_cast<std::size_t>(n - 1)]);
  }
  std::vector<double> out(static_cast<std::size_t>(levels) + 1);
  for (int m = 0; m <= levels; ++m) out[static_cast<std::size_t>(m)] = tail[static_cast<std::size_t>(m)].sum;
  return out;
}

std::vector<double> gamma_stats_fin(const SequencePrefix& x, const Point& p,
                                    const NeighborhoodSchedule& schedule, std::int64_t cut,
                                    const MembershipConfig& config) {
  const int levels = schedule.levels;
  const auto radii_v = radii_of(schedule);
  const double* radii = radii_v.data();
  std::vector<std::int64_t> tail(static_cast<std::size_t>(levels) + 1, 0);
  for (std::int64_t n = cut + 1; n <= x.size; ++n) {
    int m_max = level_of_distance(point_distance(x, n, p), radii, levels);
    for (int m = 0; m <= m_max; ++m) ++tail[static_cast<std::size_t>(m)];
  }
  std::vector<double> out(static_cast<std::size_t>(levels) + 1);
  for (int m = 0; m <= levels; ++m)
    out[static_cast<std::size_t>(m)] = config.not_in_threshold *
                                       static_cast<double>(tail[static_cast<std::size_t>(m)]) /
                                       static_cast<double>(config.fin_tail_floor);
  return out;
}

// Shared per-estimate precomputation: complete blocks, weights, normalizers.
struct BlockPlan {
  std::vector<std::pair<std::int64_t, std::int64_t>> blocks;
  std::vector<double> w;     // per index n-1 (weighted form only)
  std::vector<double> norm;  // per block
  std::int64_t window_cut = 1;
};

BlockPlan make_block_plan(const GdiSpec& gdi, std::int64_t n, double window_fraction) {
  BlockPlan plan;
  plan.blocks = complete_blocks(*gdi.partition, n);
  if (plan.blocks.empty())
    throw std::domain_error("block statistics: no complete block inside the prefix");
  const std::int64_t hi_last = plan.blocks.back().second;
  plan.window_cut =
      static_cast<std::int64_t>(std::ceil(window_fraction * static_cast<double>(hi_last)));
  if (gdi.weighted()) {
    plan.w.resize(static_cast<std::size_t>(hi_last));
    for (std::int64_t i = 1; i <= hi_last; ++i)
      plan.w[static_cast<std::size_t>(i - 1)] = (*gdi.weight)(i);
    plan.norm.reserve(plan.blocks.size());
    for (auto [lo, hi] : plan.blocks) {
      Kahan s;
      for (std::int64_t i = lo; i <= hi; ++i) s.add(plan.w[static_cast<std::size_t>(i - 1)]);
      plan.norm.push_back(s.sum);
    }
  }
  return plan;
}

// Windowed limsup over complete blocks of the per-block hit measure; the
// workhorse for both Gamma under a GDI ideal and the Lambda statistics.
std::vector<double> block_stats(const SequencePrefix& x, const Point& p, const GdiSpec& gdi,
                                const NeighborhoodSchedule& schedule, const BlockPlan& plan) {
  const int levels = schedule.levels;
  const auto radii_v = radii_of(schedule);
  const double* radii = radii_v.data();
  std::vector<double> best(static_cast<std::size_t>(levels) + 1, 0.0);
  std::vector<bool> seen(static_cast<std::size_t>(levels) + 1, false);

  if (gdi.weighted()) {
    std::vector<Kahan> acc(static_cast<std::size_t>(levels) + 1);
    for (std::size_t j = 0; j < plan.blocks.size(); ++j) {
      auto [lo, hi] = plan.blocks[j];
      if (hi < plan.window_cut || plan.norm[j] <= 0.0) continue;
      for (auto& a : acc) a = Kahan{};
      for (std::int64_t n = lo; n <= hi; ++n) {
        int m_max = level_of_distance(point_distance(x, n, p), radii, levels);
        if (m_max < 0) continue;
        double wn = plan.w[static_cast<std::size_t>(n - 1)];
        for (int m = 0; m <= m_max; ++m) acc[static_cast<std::size_t>(m)].add(wn);
      }
      for (int m = 0; m <= levels; ++m) {
        auto mi = static_cast<std::size_t>(m);
        double v = acc[mi].sum / plan.norm[j];
        best[mi] = seen[mi] ? std::max(best[mi], v) : v;
        seen[mi] = true;
      }
    }
  } else {
    for (std::size_t j = 0; j < plan.blocks.size(); ++j) {
      auto [lo, hi] = plan.blocks[j];
      if (hi < plan.window_cut) continue;
      std::vector<std::vector<std::int64_t>> hits(static_cast<std::size_t>(levels) + 1);
      for (std::int64_t n = lo; n <= hi; ++n) {
        int m_max = level_of_distance(point_distance(x, n, p), radii, levels);
        for (int m = 0; m <= m_max; ++m) hits[static_cast<std::size_t>(m)].push_back(n);
      }
      const auto& mu = gdi.block_measures.at(j);
      for (int m = 0; m <= levels; ++m) {
        auto mi = static_cast<std::size_t>(m);
        double v = hits[mi].empty()
                       ? 0.0
                       : mu(IndexSet::from_elements(std::vector<std::int64_t>(hits[mi]), hi));
        best[mi] = seen[mi] ? std::max(best[mi], v) : v;
        seen[mi] = true;
      }
    }
  }
  return best;
}

}  // namespace

LimitSetReport estimate_Gamma(const SequencePrefix& x, const IdealSpec& ideal,
                              const NeighborhoodSchedule& schedule,
                              const MembershipConfig& config) {
  schedule.validate();
  config.validate();
  if (x.size < 1) throw std::invalid_argument("estimate_Gamma: empty prefix");
  const int levels = schedule.levels;
  auto grid = candidate_grid(x, schedule, kCandidateHitterFloor);

  // family-wide precomputation shared by every candidate
  std::vector<double> w, cumw;
  std::int64_t window_lo = config.window_lo(x.size);
  std::int64_t cut = 0;
  const DensityAlphaIdeal* density = std::get_if<DensityAlphaIdeal>(&ideal.family);
  const ErdosUlamIdeal* erdos = std::get_if<ErdosUlamIdeal>(&ideal.family);
  const SummableIdeal* summable = std::get_if<SummableIdeal>(&ideal.family);
  const GdiIdeal* gdi = std::get_if<GdiIdeal>(&ideal.family);
  if (density) {
    w.resize(static_cast<std::size_t>(x.size));
    cumw.resize(static_cast<std::size_t>(x.size));
    Kahan t;
    for (std::int64_t n = 1; n <= x.size; ++n) {
      w[static_cast<std::size_t>(n - 1)] = std::pow(static_cast<double>(n), density->alpha);
      t.add(w[static_cast<std::size_t>(n - 1)]);
      cumw[static_cast<std::size_t>(n - 1)] = t.sum;
    }
  } else if (erdos) {
    w.resize(static_cast<std::size_t>(x.size));
    cumw.resize(static_cast<std::size_t>(x.size));
    Kahan t;
    for (std::int64_t n = 1; n <= x.size; ++n) {
      double wn = erdos->f(n);
      if (wn <= 0.0) throw std::invalid_argument("estimate_Gamma: erdos_ulam weight must be positive");
      w[static_cast<std::size_t>(n - 1)] = wn;
      t.add(wn);
      cumw[static_cast<std::size_t>(n - 1)] = t.sum;
    }
    cut = weight_mass_cut(erdos->f, x.size, config.window_fraction);
  } else if (summable) {
    w.resize(static_cast<std::size_t>(x.size));
    for (std::int64_t n = 1; n <= x.size; ++n) {
      double wn = summable->f(n);
      if (wn < 0.0) throw std::invalid_argument("estimate_Gamma: summable weight must be non-negative");
      w[static_cast<std::size_t>(n - 1)] = wn;
    }
    cut = config.effective_fin_cut(x.size);
  } else {
    cut = config.effective_fin_cut(x.size);
  }
  BlockPlan gdi_plan;
  if (gdi) gdi_plan = make_block_plan(gdi->spec, x.size, config.window_fraction);

  std::vector<CandidateStats> per_point(grid.size());
#pragma omp parallel for schedule(dynamic) if (!inside_parallel_region())
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(grid.size()); ++c) {
    const Point& p = grid[static_cast<std::size_t>(c)];
    std::vector<double> stats;
    if (density)
      stats = gamma_stats_density(x, p, schedule, w, cumw, window_lo);
    else if (erdos)
      stats = gamma_stats_erdos_ulam(x, p, schedule, w, cumw, cut);
    else if (summable)
      stats = gamma_stats_summable(x, p, schedule, w, cut);
    else if (gdi)
      stats = block_stats(x, p, gdi->spec, schedule, gdi_plan);
    else
      stats = gamma_stats_fin(x, p, schedule, cut, config);

    CandidateStats cs;
    cs.point = p;
    cs.stats = std::move(stats);
    cs.verdicts.resize(static_cast<std::size_t>(levels) + 1);
    bool any_in = false, any_undecided = false;
    for (int m = 0; m <= levels; ++m) {
      Verdict v = config.classify(cs.stats[static_cast<std::size_t>(m)]);
      cs.verdicts[static_cast<std::size_t>(m)] = v;
      any_in = any_in || v == Verdict::InIdeal;
      any_undecided = any_undecided || v == Verdict::Undecided;
    }
    cs.status = any_in ? 0 : (any_undecided ? 2 : 1);
    per_point[static_cast<std::size_t>(c)] = std::move(cs);
  }

  LimitSetReport rep;
  rep.kind = LimitSetReport::Kind::Gamma;
  rep.n = x.size;
  rep.schedule = schedule;
  rep.ideal_name = ideal.name();
  for (auto& cs : per_point) {
    if (cs.status == 1) rep.accepted.push_back(cs.point);
    if (cs.status == 2) rep.undecided.push_back(cs.point);
  }
  rep.per_point = std::move(per_point);
  return rep;
}

// --- Lambda -------------------------------------------------------------------

std::vector<double> v_ell_statistic(const SequencePrefix& x, const OmegaPrefix& omega,
                                    const Point& ell, const GdiSpec& gdi,
                                    const NeighborhoodSchedule& schedule,
                                    double window_fraction) {
  schedule.validate();
  SequencePrefix y = subsequence(x, omega);
  if (y.size == 0) throw std::domain_error("v_ell_statistic: empty subsequence");
  return block_stats(y, ell, gdi, schedule, make_block_plan(gdi, y.size, window_fraction));
}

double estimate_limsup_full_blocks(const GdiSpec& gdi, std::int64_t n, double window_fraction) {
  auto blocks = complete_blocks(*gdi.partition, n);
  if (blocks.empty()) throw std::domain_error("no complete block inside the prefix");
  std::vector<std::pair<std::int64_t, double>> full;
  int j = 1;
  for (auto [lo, hi] : blocks) {
    full.emplace_back(hi, gdi.block_value_full(j));
    ++j;
  }
  return limsup_estimate(full, window_fraction);
}

bool lambda_accepts(const SequencePrefix& x, const GdiSpec& gdi, const Point& ell, double q,
                    const NeighborhoodSchedule& schedule, double window_fraction) {
  auto stats = block_stats(x, ell, gdi, schedule, make_block_plan(gdi, x.size, window_fraction));
  for (double s : stats)
    if (s < q) return false;
  return true;
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
  BlockPlan plan = make_block_plan(gdi, x.size, config.window_fraction);

  std::vector<CandidateStats> per_point(grid.size());
#pragma omp parallel for schedule(dynamic) if (!inside_parallel_region())
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(grid.size()); ++c) {
    const Point& p = grid[static_cast<std::size_t>(c)];
    CandidateStats cs;
    cs.point = p;
    cs.stats = block_stats(x, p, gdi, schedule, plan);
    double floor = cs.stats.front();
    for (double s : cs.stats) floor = std::min(floor, s);
    cs.passing_q = 0.0;
    for (double q : q_abs) {
      if (floor >= q) {
        cs.passing_q = q;  // q_abs is sorted descending
        break;
      }
    }
    cs.status = cs.passing_q > 0.0 ? 1 : 0;
    per_point[static_cast<std::size_t>(c)] = std::move(cs);
  }

  LimitSetReport rep;
  rep.kind = LimitSetReport::Kind::Lambda;
  rep.n = x.size;
  rep.schedule = schedule;
  rep.ideal_name = "gdi(" + gdi.label + ")";
  rep.qgrid_abs = q_abs;
  for (auto& cs : per_point)
    if (cs.status == 1) rep.accepted.push_back(cs.point);
  rep.per_point = std::move(per_point);
  return rep;
}

WitnessExtraction extract_lambda_witness(const SequencePrefix& x, const Point& ell,
                                         const GdiSpec& gdi, double q,
                                         const NeighborhoodSchedule& schedule) {
  schedule.validate();
  if (!(q > 0.0)) throw std::invalid_argument("extract_lambda_witness: q must be > 0");
  auto blocks = complete_blocks(*gdi.partition, x.size);
  if (blocks.empty()) throw std::domain_error("extract_lambda_witness: no complete block");
  const int levels = schedule.levels;
  const int block_count = static_cast<int>(blocks.size());
  const auto radii = radii_of(schedule);

  // per-resolution per-block hit measures
  std::vector<std::vector<double>> nu(static_cast<std::size_t>(levels) + 1,
                                      std::vector<double>(static_cast<std::size_t>(block_count), 0.0));
  std::vector<std::vector<std::vector<std::int64_t>>> hit_sets(
      static_cast<std::size_t>(levels) + 1);
  for (auto& h : hit_sets) h.resize(static_cast<std::size_t>(block_count));
  for (int j = 0; j < block_count; ++j) {
    auto [lo, hi] = blocks[static_cast<std::size_t>(j)];
    for (std::int64_t n = lo; n <= hi; ++n) {
      int m_max = level_of_distance(point_distance(x, n, ell), radii.data(), levels);
      for (int m = 0; m <= m_max; ++m)
        hit_sets[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)].push_back(n);
    }
    for (int m = 0; m <= levels; ++m) {
      const auto& hits = hit_sets[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
      if (hits.empty()) continue;
      if (gdi.weighted()) {
        double mass = 0.0, norm = 0.0;
        for (std::int64_t n = lo; n <= hi; ++n) norm += (*gdi.weight)(n);
        for (std::int64_t n : hits) mass += (*gdi.weight)(n);
        nu[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] =
            norm > 0.0 ? mass / norm : 0.0;
      } else {
        nu[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] =
            gdi.block_measures.at(static_cast<std::size_t>(j))(
                IndexSet::from_elements(std::vector<std::int64_t>(hits), hi));
      }
    }
  }

  WitnessExtraction out;
  int prev_block = -1;
  int r = 0;
  for (int m = 0; m <= levels; ++m) {
    ++r;
    double threshold = q * (1.0 - std::ldexp(1.0, -r));
    int found = -1;
    double best_remaining = -1.0;
    int best_block = -1;
    for (int j = prev_block + 1; j < block_count; ++j) {
      double v = nu[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
      if (v > best_remaining) {
        best_remaining = v;
        best_block = j;
      }
      if (v >= threshold) {
        found = j;
        break;
      }
    }
    if (found < 0) {
      out.success = false;
      out.failure = "level m=" + std::to_string(m) + ": no block after #" +
                    std::to_string(prev_block + 1) + " reaches q*(1-2^-" + std::to_string(r) +
                    ") = " + std::to_string(threshold) +
                    (best_block >= 0 ? "; best remaining block #" + std::to_string(best_block + 1) +
                                           " has value " + std::to_string(best_remaining)
                                     : "; no blocks remain");
      return out;
    }
    ExtractionRow row;
    row.m = m;
    row.r = r;
    row.block = found + 1;
    row.block_lo = blocks[static_cast<std::size_t>(found)].first;
    row.block_hi = blocks[static_cast<std::size_t>(found)].second;
    row.value = nu[static_cast<std::size_t>(m)][static_cast<std::size_t>(found)];
    row.threshold = threshold;
    out.rows.push_back(row);
    const auto& hits = hit_sets[static_cast<std::size_t>(m)][static_cast<std::size_t>(found)];
    out.selected.insert(out.selected.end(), hits.begin(), hits.end());
    prev_block = found;
  }
  std::sort(out.selected.begin(), out.selected.end());
  out.success = true;
  return out;
}

bool brute_force_lambda_oracle(const SequencePrefix& x, const GdiSpec& gdi, const Point& ell,
                               double q, double eps) {
  if (x.size > 24) throw std::invalid_argument("brute_force_lambda_oracle: refused for size > 24");
  if (!(eps > 0.0)) throw std::invalid_argument("brute_force_lambda_oracle: eps must be > 0");
  auto blocks = complete_blocks(*gdi.partition, x.size);
  if (blocks.empty()) throw std::domain_error("brute_force_lambda_oracle: no complete block");

  // only indices whose value lies in the ball can appear in a qualifying K
  std::vector<std::int64_t> ball;
  for (std::int64_t n = 1; n <= x.size; ++n)
    if (point_distance(x, n, ell) <= eps) ball.push_back(n);
  if (ball.empty()) return false;

  const auto b = static_cast<std::uint32_t>(ball.size());
  for (std::uint32_t mask = 1; mask < (1u << b); ++mask) {
    std::vector<std::int64_t> k;
    for (std::uint32_t i = 0; i < b; ++i)
      if (mask & (1u << i)) k.push_back(ball[i]);
    IndexSet ks = IndexSet::from_elements(std::move(k), x.size);
    for (int j = 1; j <= static_cast<int>(blocks.size()); ++j) {
      if (gdi.block_value(ks, j) >= q) return true;
    }
  }
  return false;
}

SetComparison compare_sets(const std::vector<Point>& a, const std::vector<Point>& b, double tol,
                           const MetricSpace& space) {
  if (!(tol >= 0.0)) throw std::invalid_argument("compare_sets: tol must be >= 0");
  SetComparison out;
  auto directed = [&](const std::vector<Point>& from, const std::vector<Point>& to,
                      std::vector<Point>& unmatched) {
    double worst = 0.0;
    for (const Point& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const Point& q : to)
        best = std::min(best, space.distance({p.coords.data(), p.coords.size()},
                                             {q.coords.data(), q.coords.size()}));
      if (to.empty()) best = std::numeric_limits<double>::infinity();
      if (!(best <= tol)) unmatched.push_back(p);
      worst = std::max(worst, best);
    }
    return from.empty() ? 0.0 : worst;
  };
  double h1 = directed(a, b, out.a_minus_b);
  double h2 = directed(b, a, out.b_minus_a);
  out.hausdorff = std::max(h1, h2);
  out.equal = out.a_minus_b.empty() && out.b_minus_a.empty();
  return out;
}

}  // namespace idealseq
