#include "idealseq/ideal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace idealseq {

namespace {

// Kahan accumulator.
struct Kahan {
  double sum = 0.0, c = 0.0;
  void add(double v) {
    double y = v - c;
    double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
};

__int128 ipow128(std::int64_t base, int exp) {
  __int128 r = 1;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

}  // namespace

IdealSpec IdealSpec::density_alpha(double alpha) {
  if (alpha < -1.0) throw std::domain_error("density_alpha: alpha must be >= -1");
  return {DensityAlphaIdeal{alpha}};
}

IdealSpec IdealSpec::erdos_ulam(WeightFn f) { return {ErdosUlamIdeal{std::move(f)}}; }

IdealSpec IdealSpec::summable(WeightFn f) { return {SummableIdeal{std::move(f)}}; }

std::string IdealSpec::name() const {
  struct Namer {
    std::string operator()(const FinIdeal&) const { return "fin"; }
    std::string operator()(const DensityAlphaIdeal& d) const {
      return "density_alpha(" + std::to_string(d.alpha) + ")";
    }
    std::string operator()(const ErdosUlamIdeal& e) const {
      return "erdos_ulam(" + e.f.name + ")";
    }
    std::string operator()(const SummableIdeal& s) const {
      return "summable(" + s.f.name + ")";
    }
    std::string operator()(const GdiIdeal& g) const { return "gdi(" + g.spec.label + ")"; }
  };
  return std::visit(Namer{}, family);
}

std::vector<std::string> IdealSpec::validate(std::int64_t n) const {
  std::vector<std::string> warnings;
  if (const auto* eu = std::get_if<ErdosUlamIdeal>(&family)) {
    double total = 0.0, max_tail_ratio = 0.0;
    for (std::int64_t i = 1; i <= n; ++i) {
      double w = eu->f(i);
      if (w <= 0.0)
        throw std::invalid_argument("erdos_ulam: weight must be strictly positive");
      total += w;
      if (i >= n / 2) max_tail_ratio = std::max(max_tail_ratio, w / total);
    }
    if (total < 10.0)
      warnings.push_back("erdos_ulam: partial weight sum " + std::to_string(total) +
                         " below divergence floor 10 on the available prefix");
    if (max_tail_ratio > 0.1)
      warnings.push_back("erdos_ulam: f(n)/sum f not small on the prefix (max ratio " +
                         std::to_string(max_tail_ratio) + ")");
  } else if (const auto* su = std::get_if<SummableIdeal>(&family)) {
    double total = 0.0;
    for (std::int64_t i = 1; i <= n; ++i) {
      double w = su->f(i);
      if (w < 0.0) throw std::invalid_argument("summable: weight must be non-negative");
      total += w;
    }
    if (total < 10.0)
      warnings.push_back("summable: partial weight sum " + std::to_string(total) +
                         " below divergence floor 10 on the available prefix");
  } else if (const auto* g = std::get_if<GdiIdeal>(&family)) {
    std::vector<std::pair<std::int64_t, double>> full;
    for (int j = 1; j <= g->spec.partition->block_count(); ++j)
      full.emplace_back(g->spec.partition->block_range(j).second, g->spec.block_value_full(j));
    double limsup = limsup_estimate(full, 0.5);
    if (limsup <= 0.0)
      warnings.push_back("gdi: limsup mu_n(I_n) estimated as 0 on the prefix");
  }
  return warnings;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::InIdeal: return "in_ideal";
    case Verdict::NotInIdeal: return "not_in_ideal";
    case Verdict::Undecided: return "undecided";
  }
  return "undecided";
}

void MembershipConfig::validate() const {
  if (!(in_threshold > 0.0) || !(not_in_threshold > in_threshold))
    throw std::invalid_argument(
        "membership config: need 0 < in_threshold < not_in_threshold");
  if (!(window_fraction > 0.0) || !(window_fraction < 1.0))
    throw std::invalid_argument("membership config: window_fraction must be in (0,1)");
  if (fin_cut < 0) throw std::invalid_argument("membership config: fin_cut must be >= 0");
}

std::int64_t MembershipConfig::window_lo(std::int64_t n) const {
  auto lo = static_cast<std::int64_t>(std::ceil(window_fraction * static_cast<double>(n)));
  return std::clamp<std::int64_t>(lo, 1, n);
}

std::int64_t MembershipConfig::effective_fin_cut(std::int64_t n) const {
  std::int64_t cut = fin_cut > 0 ? fin_cut : window_lo(n);
  return std::min(cut, n - 1 > 0 ? n - 1 : 1);
}

Verdict MembershipConfig::classify(double statistic) const {
  if (statistic < in_threshold) return Verdict::InIdeal;
  if (statistic >= not_in_threshold) return Verdict::NotInIdeal;
  return Verdict::Undecided;
}

double alpha_weight_ratio(const IndexSet& a, double alpha, std::int64_t n) {
  if (n < 1) throw std::domain_error("alpha_weight_ratio: n must be >= 1");
  if (alpha < -1.0) throw std::domain_error("alpha_weight_ratio: alpha must be >= -1");
  if (n > a.n_max()) throw std::domain_error("alpha_weight_ratio: n beyond set bound");
  Kahan num, den;
  for (std::int64_t i = 1; i <= n; ++i) {
    double w = std::pow(static_cast<double>(i), alpha);
    den.add(w);
    if (a.contains(i)) num.add(w);
  }
  return den.sum > 0.0 ? num.sum / den.sum : 0.0;
}

Rat128 alpha_weight_ratio_exact(const IndexSet& a, int alpha, std::int64_t n) {
  if (n < 1) throw std::domain_error("alpha_weight_ratio_exact: n must be >= 1");
  if (alpha < 0) throw std::domain_error("alpha_weight_ratio_exact: integer alpha must be >= 0");
  if (n > a.n_max()) throw std::domain_error("alpha_weight_ratio_exact: n beyond set bound");
  __int128 num = 0, den = 0;
  for (std::int64_t i = 1; i <= n; ++i) {
    __int128 w = ipow128(i, alpha);
    den += w;
    if (a.contains(i)) num += w;
  }
  if (den == 0) return Rat128::from_int(0);
  return Rat128::make(num, den);
}

double limsup_estimate(std::span<const std::pair<std::int64_t, double>> values,
                       double window_fraction) {
  if (values.empty()) throw std::domain_error("limsup_estimate: empty input");
  if (!(window_fraction > 0.0) || !(window_fraction < 1.0))
    throw std::domain_error("limsup_estimate: window_fraction must be in (0,1)");
  std::int64_t n_last = values.back().first;
  auto lo = static_cast<std::int64_t>(
      std::ceil(window_fraction * static_cast<double>(n_last)));
  double best = 0.0;
  bool seen = false;
  for (const auto& [idx, v] : values) {
    if (idx < lo) continue;
    best = seen ? std::max(best, v) : v;
    seen = true;
  }
  if (!seen) {
    // window always contains the last index
    best = values.back().second;
  }
  return best;
}

double erdos_ulam_phi(const WeightFn& f, const IndexSet& a, std::int64_t n) {
  if (n < 1) throw std::domain_error("erdos_ulam_phi: n must be >= 1");
  double total = 0.0, in_set = 0.0, sup = 0.0;
  for (std::int64_t m = 1; m <= n; ++m) {
    double w = f(m);
    if (w <= 0.0)
      throw std::invalid_argument("erdos_ulam_phi: weight must be strictly positive");
    total += w;
    if (a.contains(m)) in_set += w;
    sup = std::max(sup, in_set / total);
  }
  return sup;
}

double exh_tail_value(const Submeasure& phi, const IndexSet& a, std::int64_t cut,
                      std::int64_t n) {
  if (cut > n) throw std::domain_error("exh_tail_value: cut beyond n");
  if (n > a.n_max()) throw std::domain_error("exh_tail_value: n beyond set bound");
  std::vector<std::int64_t> tail;
  for (std::int64_t e : a.elements_up_to(n))
    if (e > cut) tail.push_back(e);
  if (tail.empty()) return 0.0;
  return phi(IndexSet::from_elements(std::move(tail), n));
}

double gdi_block_value(const GdiSpec& spec, const IndexSet& a, int j) {
  return spec.block_value(a, j);
}

std::int64_t weight_mass_cut(const WeightFn& f, std::int64_t n, double fraction) {
  double total = 0.0;
  for (std::int64_t i = 1; i <= n; ++i) total += f(i);
  double target = fraction * total;
  double acc = 0.0;
  for (std::int64_t i = 1; i <= n; ++i) {
    acc += f(i);
    if (acc >= target) return std::min(i, n - 1 > 0 ? n - 1 : 1);
  }
  return n - 1 > 0 ? n - 1 : 1;
}

namespace {

MembershipVerdict verdict_from(double statistic, const MembershipConfig& config,
                               std::int64_t window_lo, std::int64_t window_hi) {
  MembershipVerdict v;
  v.statistic = statistic;
  v.verdict = config.classify(statistic);
  v.window_lo = window_lo;
  v.window_hi = window_hi;
  v.threshold = v.verdict == Verdict::NotInIdeal ? config.not_in_threshold
                                                 : config.in_threshold;
  return v;
}

MembershipVerdict membership_fin(const IndexSet& a, std::int64_t n,
                                 const MembershipConfig& config) {
  std::int64_t cut = config.effective_fin_cut(n);
  std::int64_t tail = a.count_up_to(n) - a.count_up_to(cut);
  // presence count beyond the cut, scaled so `fin_tail_floor` elements promote
  double statistic = config.not_in_threshold * static_cast<double>(tail) /
                     static_cast<double>(config.fin_tail_floor);
  auto v = verdict_from(statistic, config, cut + 1, n);
  // A predicate-form set not declared finite never gets a positive Fin verdict
  // from an empty tail alone.
  if (v.verdict == Verdict::InIdeal && !a.is_explicit() && !a.declared_finite())
    v.verdict = Verdict::Undecided;
  return v;
}

MembershipVerdict membership_density(const IndexSet& a, double alpha, std::int64_t n,
                                     const MembershipConfig& config) {
  std::int64_t lo = config.window_lo(n);
  Kahan num, den;
  double best = 0.0;
  bool seen = false;
  for (std::int64_t i = 1; i <= n; ++i) {
    double w = std::pow(static_cast<double>(i), alpha);
    den.add(w);
    if (a.contains(i)) num.add(w);
    if (i >= lo && den.sum > 0.0) {
      double r = num.sum / den.sum;
      best = seen ? std::max(best, r) : r;
      seen = true;
    }
  }
  return verdict_from(best, config, lo, n);
}

MembershipVerdict membership_erdos_ulam(const WeightFn& f, const IndexSet& a,
                                        std::int64_t n, const MembershipConfig& config) {
  // tail value at the f-mass median cut; sup runs over the whole prefix
  std::int64_t cut = weight_mass_cut(f, n, config.window_fraction);
  Kahan total, tail_mass;
  double sup = 0.0;
  for (std::int64_t m = 1; m <= n; ++m) {
    double w = f(m);
    if (w <= 0.0)
      throw std::invalid_argument("erdos_ulam membership: weight must be positive");
    total.add(w);
    if (m > cut && a.contains(m)) {
      tail_mass.add(w);
      sup = std::max(sup, tail_mass.sum / total.sum);
    }
  }
  return verdict_from(sup, config, cut + 1, n);
}

MembershipVerdict membership_summable(const WeightFn& f, const IndexSet& a, std::int64_t n,
                                      const MembershipConfig& config) {
  std::int64_t cut = config.effective_fin_cut(n);
  Kahan tail;
  for (std::int64_t i = cut + 1; i <= n; ++i) {
    double w = f(i);
    if (w < 0.0) throw std::invalid_argument("summable membership: negative weight");
    if (a.contains(i)) tail.add(w);
  }
  return verdict_from(tail.sum, config, cut + 1, n);
}

MembershipVerdict membership_gdi(const GdiSpec& spec, const IndexSet& a, std::int64_t n,
                                 const MembershipConfig& config) {
  std::vector<std::pair<std::int64_t, double>> values;
  for (int j = 1; j <= spec.partition->block_count(); ++j) {
    auto [lo, hi] = spec.partition->block_range(j);
    if (hi > n) break;  // only blocks fully inside [1, n]
    values.emplace_back(hi, spec.block_value(a, j));
  }
  if (values.empty())
    throw std::domain_error("gdi membership: no complete block inside [1, n]");
  double statistic = limsup_estimate(values, config.window_fraction);
  return verdict_from(statistic, config, values.front().first, values.back().first);
}

}  // namespace

MembershipVerdict membership(const IdealSpec& ideal, const IndexSet& a, std::int64_t n,
                             const MembershipConfig& config) {
  config.validate();
  if (n < 1) throw std::domain_error("membership: n must be >= 1");
  if (n > a.n_max()) throw std::domain_error("membership: n beyond set bound");
  struct Visitor {
    const IndexSet& a;
    std::int64_t n;
    const MembershipConfig& config;
    MembershipVerdict operator()(const FinIdeal&) const {
      return membership_fin(a, n, config);
    }
    MembershipVerdict operator()(const DensityAlphaIdeal& d) const {
      return membership_density(a, d.alpha, n, config);
    }
    MembershipVerdict operator()(const ErdosUlamIdeal& e) const {
      return membership_erdos_ulam(e.f, a, n, config);
    }
    MembershipVerdict operator()(const SummableIdeal& s) const {
      return membership_summable(s.f, a, n, config);
    }
    MembershipVerdict operator()(const GdiIdeal& g) const {
      return membership_gdi(g.spec, a, n, config);
    }
  };
  return std::visit(Visitor{a, n, config}, ideal.family);
}

std::vector<AlphaProbeRow> alpha_equivalence_probe(const IndexSet& a,
                                                   std::span<const double> alphas,
                                                   std::int64_t n,
                                                   const MembershipConfig& config) {
  config.validate();
  std::vector<AlphaProbeRow> rows;
  rows.reserve(alphas.size());
  for (double alpha : alphas) {
    if (alpha <= -1.0)
      throw std::domain_error("alpha_equivalence_probe: alphas must be > -1");
    auto v = membership(IdealSpec::density_alpha(alpha), a, n, config);
    rows.push_back({alpha, v.statistic, v.verdict});
  }
  return rows;
}

GdiSpec gdi_representation(const IdealSpec& ideal, std::int64_t n_limit) {
  if (const auto* d = std::get_if<DensityAlphaIdeal>(&ideal.family)) {
    if (d->alpha == 0.0) return GdiSpec::natural_density(n_limit);
    return GdiSpec::weighted_blocks(WeightFn::power(d->alpha), n_limit,
                                    "density-alpha:" + std::to_string(d->alpha));
  }
  if (const auto* e = std::get_if<ErdosUlamIdeal>(&ideal.family)) {
    return GdiSpec::weighted_blocks(e->f, n_limit, "erdos-ulam:" + e->f.name);
  }
  if (const auto* g = std::get_if<GdiIdeal>(&ideal.family)) return g->spec;
  throw std::invalid_argument("gdi_representation: not a generalized-density family: " +
                              ideal.name());
}

}  // namespace idealseq
