#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "idealseq/index_set.hpp"
#include "idealseq/rational.hpp"
#include "idealseq/submeasure.hpp"

namespace idealseq {

struct FinIdeal {};
struct DensityAlphaIdeal {
  double alpha = 0.0;
};
struct ErdosUlamIdeal {
  WeightFn f;
};
struct SummableIdeal {
  WeightFn f;
};
struct GdiIdeal {
  GdiSpec spec;
};

struct IdealSpec {
  std::variant<FinIdeal, DensityAlphaIdeal, ErdosUlamIdeal, SummableIdeal, GdiIdeal> family;

  std::string name() const;

  static IdealSpec fin() { return {FinIdeal{}}; }
  static IdealSpec density_alpha(double alpha);
  static IdealSpec erdos_ulam(WeightFn f);
  static IdealSpec summable(WeightFn f);
  static IdealSpec gdi(GdiSpec spec) { return {GdiIdeal{std::move(spec)}}; }

  // Family invariants checked numerically on [1, n]; violations of hard
  // preconditions throw, non-decidable ones (divergence floors) come back
  // as warnings.
  std::vector<std::string> validate(std::int64_t n) const;
};

enum class Verdict { InIdeal, NotInIdeal, Undecided };

std::string to_string(Verdict v);

struct MembershipConfig {
  double in_threshold = 1e-2;      // statistic below -> InIdeal
  double not_in_threshold = 5e-2;  // statistic at or above -> NotInIdeal
  double window_fraction = 0.5;    // limsup window starts at ceil(wf * N)
  std::int64_t fin_cut = 0;        // 0: derive as ceil(wf * N)
  // Fin verdicts rest on presence beyond the cut: the statistic is scaled so
  // that fin_tail_floor tail elements reach the promotion threshold.
  std::int64_t fin_tail_floor = 20;
  double summable_divergence_floor = 10.0;

  void validate() const;
  std::int64_t window_lo(std::int64_t n) const;
  std::int64_t effective_fin_cut(std::int64_t n) const;
  Verdict classify(double statistic) const;
};

struct MembershipVerdict {
  Verdict verdict = Verdict::Undecided;
  double statistic = 0.0;
  std::int64_t window_lo = 0;
  std::int64_t window_hi = 0;
  double threshold = 0.0;  // the threshold the verdict was compared against
};

// Ratio of alpha-weighted mass of A over [1,n] to the full alpha-weighted
// mass, sum_{i in A, i<=n} i^alpha / sum_{i<=n} i^alpha. Compensated float
// summation; exact-rational oracle path for integer alpha >= 0.
double alpha_weight_ratio(const IndexSet& a, double alpha, std::int64_t n);
Rat128 alpha_weight_ratio_exact(const IndexSet& a, int alpha, std::int64_t n);

// Finite limsup surrogate: max of the values over indices in
// [ceil(window_fraction * N), N], N = largest index present.
double limsup_estimate(std::span<const std::pair<std::int64_t, double>> values,
                       double window_fraction);

// sup over m <= n of (f-mass of A over [1,m]) / (f-mass of [1,m]).
double erdos_ulam_phi(const WeightFn& f, const IndexSet& a, std::int64_t n);

// phi((A \ [1,cut]) ∩ [1,n]) — the prefix approximation of the Exh tail.
double exh_tail_value(const Submeasure& phi, const IndexSet& a, std::int64_t cut,
                      std::int64_t n);

// mu_j(A ∩ I_j) for one block of a generalized-density spec.
double gdi_block_value(const GdiSpec& spec, const IndexSet& a, int j);

MembershipVerdict membership(const IdealSpec& ideal, const IndexSet& a, std::int64_t n,
                             const MembershipConfig& config = {});

struct AlphaProbeRow {
  double alpha = 0.0;
  double statistic = 0.0;
  Verdict verdict = Verdict::Undecided;
};

std::vector<AlphaProbeRow> alpha_equivalence_probe(const IndexSet& a,
                                                   std::span<const double> alphas,
                                                   std::int64_t n,
                                                   const MembershipConfig& config = {});

// Generalized-density representation of an ideal for the Lambda machinery:
// weight-mass-doubling blocks with normalized per-block weighted counting.
// Defined for DensityAlpha, ErdosUlam and Gdi families.
GdiSpec gdi_representation(const IdealSpec& ideal, std::int64_t n_limit);

// Index at which the f-prefix mass first reaches `fraction` of the [1,n]
// mass. Used as the Exh tail cut (for f == 1 this is ceil(fraction * n)).
std::int64_t weight_mass_cut(const WeightFn& f, std::int64_t n, double fraction);

}  // namespace idealseq
