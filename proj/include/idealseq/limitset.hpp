#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "idealseq/ideal.hpp"
#include "idealseq/omega.hpp"
#include "idealseq/sequence.hpp"
#include "idealseq/submeasure.hpp"

namespace idealseq {

// Decreasing neighborhood radii eps(m) = eps0 * 2^-m for m = 0..levels.
struct NeighborhoodSchedule {
  double eps0 = 0.5;
  int levels = 8;

  double eps(int m) const;
  double finest() const { return eps(levels); }
  void validate() const;
};

// Relative q levels in (0,1), scaled by the estimated limsup mu_n(I_n).
// The smallest default level matches the NotInIdeal promotion threshold, so
// the accepted limit-point set stays inside the accepted cluster-point set.
struct QGrid {
  std::vector<double> relative{0.5, 0.25, 0.1, 0.05};

  std::vector<double> scaled(double limsup_full) const;
  void validate() const;
};

struct CandidateStats {
  Point point;
  std::vector<double> stats;      // per resolution m = 0..levels
  std::vector<Verdict> verdicts;  // Gamma reports only
  double passing_q = 0.0;         // Lambda reports only; 0 when none
  int status = 0;                 // 0 rejected, 1 accepted, 2 undecided
};

struct LimitSetReport {
  enum class Kind { L, Gamma, Lambda };

  Kind kind = Kind::L;
  std::vector<Point> accepted;   // sorted by coordinates
  std::vector<Point> undecided;  // Gamma only: any resolution Undecided
  std::vector<CandidateStats> per_point;
  std::int64_t n = 0;
  NeighborhoodSchedule schedule;
  std::string ideal_name;
  std::vector<double> qgrid_abs;
  std::int64_t min_hits = 0;

  static std::string kind_name(Kind k);
};

// Shared heavy-hitter floor for candidate grids, so the L / Gamma / Lambda
// estimators of one run evaluate identical candidate sets.
inline constexpr std::int64_t kCandidateHitterFloor = 20;

// Grid over the prefix's bounding box at the finest spacing, plus every
// distinct value occurring at least min_hits times. Sorted, deduplicated.
std::vector<Point> candidate_grid(const SequencePrefix& x, const NeighborhoodSchedule& schedule,
                                  std::int64_t min_hits);

// Ordinary limit points: candidate accepted iff it has >= min_hits values
// within eps(m) at every resolution m.
LimitSetReport estimate_L(const SequencePrefix& x, const NeighborhoodSchedule& schedule,
                          std::int64_t min_hits);

// Ideal cluster points: candidate accepted iff the index set of values within
// eps(m) is NotInIdeal at every m; a candidate with any Undecided verdict and
// no InIdeal verdict is reported as undecided.
LimitSetReport estimate_Gamma(const SequencePrefix& x, const IdealSpec& ideal,
                              const NeighborhoodSchedule& schedule,
                              const MembershipConfig& config = {});

// Per-resolution windowed limsup over complete blocks j of
// mu_j({k : (x|omega)_k within eps(m) of ell} ∩ I_j); k indexes the
// subsequence, not the original sequence.
std::vector<double> v_ell_statistic(const SequencePrefix& x, const OmegaPrefix& omega,
                                    const Point& ell, const GdiSpec& gdi,
                                    const NeighborhoodSchedule& schedule,
                                    double window_fraction = 0.5);

// Ideal limit points for a generalized-density ideal: candidate accepted iff
// some q in the grid is cleared by the per-m statistics at every m; the
// largest passing q is recorded.
LimitSetReport estimate_Lambda_gdi(const SequencePrefix& x, const GdiSpec& gdi,
                                   const NeighborhoodSchedule& schedule,
                                   const QGrid& qgrid = {},
                                   const MembershipConfig& config = {});

// Windowed limsup of the full-block values mu_j(I_j).
double estimate_limsup_full_blocks(const GdiSpec& gdi, std::int64_t n, double window_fraction);

struct ExtractionRow {
  int m = 0;
  int r = 0;
  int block = 0;
  std::int64_t block_lo = 0, block_hi = 0;
  double value = 0.0;      // mu_j of the selected indices inside the block
  double threshold = 0.0;  // q * (1 - 2^-r)
};

struct WitnessExtraction {
  bool success = false;
  std::vector<std::int64_t> selected;  // K, sorted
  std::vector<ExtractionRow> rows;
  std::string failure;  // diagnostics when success == false
};

// Realizes the accepted (ell, q) pair as an explicit index set: one block per
// resolution level, strictly increasing, with block values clearing
// q * (1 - 2^-r) for increasing r; fails with diagnostics when no block
// sequence reaches the thresholds at this prefix length.
WitnessExtraction extract_lambda_witness(const SequencePrefix& x, const Point& ell,
                                         const GdiSpec& gdi, double q,
                                         const NeighborhoodSchedule& schedule);

// Exhaustive search over subsets of the in-ball index set for K with every
// value within eps of ell and max over blocks of mu_j(K ∩ I_j) >= q.
// Refused for x.size > 24.
bool brute_force_lambda_oracle(const SequencePrefix& x, const GdiSpec& gdi, const Point& ell,
                               double q, double eps);

// Acceptance rule shared by estimate_Lambda_gdi and the oracle comparisons:
// true iff every per-m statistic reaches q.
bool lambda_accepts(const SequencePrefix& x, const GdiSpec& gdi, const Point& ell, double q,
                    const NeighborhoodSchedule& schedule, double window_fraction = 0.5);

struct SetComparison {
  bool equal = false;
  std::vector<Point> a_minus_b;  // points of a with no b-point within tol
  std::vector<Point> b_minus_a;
  double hausdorff = 0.0;
};

SetComparison compare_sets(const std::vector<Point>& a, const std::vector<Point>& b,
                           double tol, const MetricSpace& space);

}  // namespace idealseq
