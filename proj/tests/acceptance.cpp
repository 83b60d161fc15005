// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. Sizes, tolerances and seeds are pinned here.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "idealseq/harness.hpp"
#include "idealseq/prng.hpp"
#include "idealseq/reference.hpp"

using namespace idealseq;

namespace {

constexpr std::int64_t kN = 100000;
constexpr std::uint64_t kSeed = 20260801;

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.empty() ? "" : " - ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<IdealSpec> criterion_ideals(std::int64_t n) {
  std::vector<IdealSpec> ideals;
  ideals.push_back(IdealSpec::fin());
  ideals.push_back(IdealSpec::density_alpha(0.0));
  ideals.push_back(IdealSpec::density_alpha(1.0));
  ideals.push_back(IdealSpec::erdos_ulam(WeightFn::one_over_i()));
  ideals.push_back(IdealSpec::summable(WeightFn::one_over_i()));
  ideals.push_back(IdealSpec::gdi(GdiSpec::natural_density(n)));
  return ideals;
}

// ---------------------------------------------------------------------------

void criterion_1_inclusion_chain() {
  auto t0 = std::chrono::steady_clock::now();
  MembershipConfig config;
  QGrid qgrid;
  auto ideals = criterion_ideals(kN);
  std::int64_t combos = 0, violations = 0;
  std::string first_violation;

  for (const auto& entry : zoo_catalogue()) {
    auto x = generate(entry.spec, kN);
    NeighborhoodSchedule sched{entry.eps0, entry.levels};

    std::vector<std::pair<std::string, OmegaPrefix>> omegas;
    omegas.emplace_back("all-ones", OmegaPrefix::all_ones());
    for (int k = 0; k < 5; ++k)
      omegas.emplace_back("random-" + std::to_string(k),
                          sample_uniform(derive_seed(kSeed, static_cast<std::uint64_t>(k)), kN));
    {
      std::vector<Point> targets = entry.witness_targets;
      if (targets.empty()) {
        auto l_full = estimate_L(x, sched, entry.min_hits);
        double spacing = 2.0 * sched.finest();
        for (const Point& p : l_full.accepted) {
          bool covered = false;
          for (const Point& k : targets)
            covered = covered || std::fabs(p.coords[0] - k.coords[0]) < spacing;
          if (!covered) targets.push_back(p);
        }
      }
      auto witness = generic_witness(x, witness_inputs(x, targets, entry.donor_rule, sched));
      omegas.emplace_back("witness", witness.omega);
    }

    for (const auto& [omega_name, omega] : omegas) {
      auto y = subsequence(x, omega);
      if (y.size < entry.min_hits) continue;
      auto l = estimate_L(y, sched, entry.min_hits);
      for (const auto& ideal : ideals) {
        auto g = estimate_Gamma(y, ideal, sched, config);
        auto lam = estimate_lambda_for_ideal(y, ideal, sched, qgrid, config, entry.min_hits);
        ++combos;
        bool lam_in_g = std::includes(g.accepted.begin(), g.accepted.end(),
                                      lam.accepted.begin(), lam.accepted.end());
        bool g_in_l = std::includes(l.accepted.begin(), l.accepted.end(), g.accepted.begin(),
                                    g.accepted.end());
        if (!lam_in_g || !g_in_l) {
          ++violations;
          if (first_violation.empty())
            first_violation = entry.name + "/" + ideal.name() + "/" + omega_name +
                              (lam_in_g ? " (Gamma in L)" : " (Lambda in Gamma)");
        }
      }
    }
  }
  char detail[160];
  std::snprintf(detail, sizeof(detail), "%lld violations over %lld combos, %.0fs%s%s",
                static_cast<long long>(violations), static_cast<long long>(combos),
                seconds_since(t0), first_violation.empty() ? "" : "; first: ",
                first_violation.c_str());
  report(1, "inclusion chain Lambda within Gamma within L", violations == 0, detail);
}

void criterion_2_exact_oracles() {
  const std::int64_t n = 10000;
  auto corpus = density_test_corpus(n);
  std::int64_t checks = 0;
  bool ok = corpus.size() == 20;
  std::string detail;
  for (const auto& [name, set] : corpus) {
    auto elems = set.elements_up_to(n);
    for (int alpha : {0, 1, 2}) {
      __int128 num = 0, den = 0;
      std::size_t k = 0;
      for (std::int64_t i = 1; i <= n; ++i) {
        __int128 w = 1;
        for (int e = 0; e < alpha; ++e) w *= i;
        den += w;
        if (k < elems.size() && elems[k] == i) {
          num += w;
          ++k;
        }
      }
      Rat128 expect = Rat128::make(num, den);
      bool rational_equal = alpha_weight_ratio_exact(set, alpha, n) == expect;
      double f = alpha_weight_ratio(set, static_cast<double>(alpha), n);
      double e = expect.to_double();
      double rel = e == 0.0 ? std::fabs(f) : std::fabs(f - e) / std::fabs(e);
      ++checks;
      if (!rational_equal || rel > 1e-12) {
        ok = false;
        if (detail.empty())
          detail = name + " alpha=" + std::to_string(alpha) +
                   (rational_equal ? " float rel err " + format_double(rel)
                                   : " rational mismatch");
      }
    }
  }
  if (detail.empty())
    detail = std::to_string(checks) + " checks over " + std::to_string(corpus.size()) +
             " sets, exact + <=1e-12";
  report(2, "exact-rational density oracles", ok, detail);
}

void criterion_3_codecs() {
  bool ok = true;
  std::string detail;
  for (int c = 0; c < 1000 && ok; ++c) {
    std::uint64_t s = derive_seed(kSeed ^ 0xC0DEC, static_cast<std::uint64_t>(c));
    auto m = static_cast<std::int64_t>(1 + counter_word(s, 0) % 300);
    std::vector<std::int64_t> elems;
    for (std::int64_t i = 1; i <= m; ++i)
      if (coin_flip(s, static_cast<std::uint64_t>(i))) elems.push_back(i);
    IndexSet set = elems.empty() ? IndexSet::empty_set(m) : IndexSet::from_elements(elems, m);
    if (decode(encode(set, m), m).elements_up_to(m) != elems) {
      ok = false;
      detail = "round-trip failure at case " + std::to_string(c);
    }
  }
  OmegaPrefix half;
  half.digits = {0};
  OmegaPrefix third;
  third.digits = {0, 1};
  third.tail = OmegaPrefix::PeriodicOnes{2};
  if (!(dyadic_value(OmegaPrefix::all_ones(), 16).value == Rat128::from_int(1)) ||
      !(dyadic_value(half, 16).value == Rat128::make(1, 2)) ||
      !(dyadic_value(third, 16).value == Rat128::make(1, 3))) {
    ok = false;
    detail = "closed-form dyadic values not exact";
  }
  if (detail.empty()) detail = "1000 round-trips; 1, 1/2, 1/3 exact";
  report(3, "subsequence codec round-trips", ok, detail);
}

ExperimentConfig montecarlo_config(const std::string& seq) {
  ExperimentConfig c;
  c.sequence_name = seq;
  c.ideal_name = "I0";
  c.n = kN;
  c.n_explicit = true;
  c.trials = 200;
  c.seed = kSeed;
  c.apply_defaults();
  return c;
}

void criterion_4_measure_side() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (const char* seq : {"squares-indicator", "evens-indicator"}) {
    auto summary = run_montecarlo(montecarlo_config(seq));
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s gamma=%.3f lambda=%.3f voided=%lld; ", seq,
                  summary.fraction_gamma_preserved, summary.fraction_lambda_preserved,
                  static_cast<long long>(summary.voided));
    detail += buf;
    ok = ok && summary.fraction_gamma_preserved >= 0.95 &&
         summary.fraction_lambda_preserved >= 0.95;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.0fs", seconds_since(t0));
  detail += buf;
  report(4, "measure-side preservation at 200 trials", ok, detail);
}

void criterion_5_category_side() {
  ExperimentConfig c = montecarlo_config("squares-indicator");
  c.trials = 5;
  auto rep = run_dichotomy(c);
  auto rep2 = run_dichotomy(c);

  double tol = c.compare_tolerance();
  MetricSpace space;
  std::vector<Point> zero_one{Point{0.0}, Point{1.0}};
  std::vector<Point> zero{Point{0.0}};

  bool l_is_01 = compare_sets(rep.l.accepted, zero_one, tol, space).equal;
  bool gamma_is_0 = compare_sets(rep.gamma.accepted, zero, tol, space).equal;
  bool dichotomy_case = !rep.preserving;
  bool witness_restores = rep.witness_gamma_vs_l.equal;
  bool collapse_on_witness = rep.witness_gamma_vs_lambda.equal;
  bool deterministic = dichotomy_to_structured(c, rep).dump() ==
                       dichotomy_to_structured(c, rep2).dump();
  bool ok = l_is_01 && gamma_is_0 && dichotomy_case && witness_restores &&
            collapse_on_witness && deterministic;
  std::string detail = std::string("L={0,1}:") + (l_is_01 ? "y" : "n") +
                       " Gamma={0}:" + (gamma_is_0 ? "y" : "n") +
                       " witnessGamma=L:" + (witness_restores ? "y" : "n") +
                       " witnessGamma=witnessLambda:" + (collapse_on_witness ? "y" : "n") +
                       " deterministic:" + (deterministic ? "y" : "n");
  report(5, "category-side dichotomy on the squares indicator", ok, detail);
}

void criterion_6_fin_witness() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (const auto& entry : zoo_catalogue()) {
    ExperimentConfig c;
    c.sequence_name = entry.name;
    c.ideal_name = "fin";
    c.n = kN;
    c.n_explicit = true;
    c.trials = 2;
    c.seed = kSeed;
    c.apply_defaults();
    auto rep = run_corollary_fin(c);
    if (!rep.witness_vs_base.equal) {
      ok = false;
      detail += entry.name + " hausdorff=" + format_double(rep.witness_vs_base.hausdorff) + "; ";
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%zu sequences, %.0fs", zoo_catalogue().size(),
                seconds_since(t0));
  report(6, "ordinary-limit-point witness preservation", ok, detail + buf);
}

void criterion_7_lambda_machinery() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;

  // (a) estimator vs exhaustive search on tiny instances
  int agreements = 0;
  for (int c = 0; c < 50; ++c) {
    std::uint64_t s = derive_seed(kSeed ^ 0x7111, static_cast<std::uint64_t>(c));
    auto n = static_cast<std::int64_t>(8 + counter_word(s, 0) % 13);
    SequencePrefix x;
    x.space = MetricSpace{};
    x.size = n;
    for (std::int64_t i = 0; i < n; ++i)
      x.data.push_back(
          static_cast<double>(counter_word(s, 10 + static_cast<std::uint64_t>(i)) % 5) / 4.0);
    int blocks = 2 + static_cast<int>(counter_word(s, 1) % 3);
    std::vector<std::int64_t> ends;
    std::int64_t prev = 0;
    for (int b = 0; b < blocks - 1; ++b) {
      std::int64_t remaining = n - prev - (blocks - 1 - b);
      if (remaining < 1) break;
      std::int64_t len = 1 + static_cast<std::int64_t>(
                                 counter_word(s, 2 + static_cast<std::uint64_t>(b)) %
                                 static_cast<std::uint64_t>(remaining));
      prev += len;
      ends.push_back(prev);
    }
    ends.push_back(n);
    GdiSpec gdi;
    gdi.partition = std::make_shared<BlockPartition>(BlockPartition::from_ends(ends));
    gdi.weight = WeightFn::constant();
    gdi.label = "tiny";
    Point ell{static_cast<double>(counter_word(s, 3) % 5) / 4.0};
    double q = 0.05 + 0.9 * static_cast<double>(counter_word(s, 4) % 100) / 100.0;
    NeighborhoodSchedule one_level{0.13, 0};
    bool est = lambda_accepts(x, gdi, ell, q, one_level, 1e-9);
    bool oracle = brute_force_lambda_oracle(x, gdi, ell, q, 0.13);
    if (est == oracle) {
      ++agreements;
    } else if (ok) {
      ok = false;
      detail = "tiny instance " + std::to_string(c) + " disagrees; ";
    }
  }

  // (b) extraction succeeds on every accepted (point, q) across the zoo
  std::int64_t extracted = 0;
  for (const auto& entry : zoo_catalogue()) {
    auto x = generate(entry.spec, kN);
    NeighborhoodSchedule sched{entry.eps0, entry.levels};
    auto gdi = GdiSpec::natural_density(kN);
    auto rep = estimate_Lambda_gdi(x, gdi, sched);
    for (const auto& cs : rep.per_point) {
      if (cs.status != 1) continue;
      auto w = extract_lambda_witness(x, cs.point, gdi, cs.passing_q, sched);
      ++extracted;
      if (!w.success) {
        ok = false;
        if (detail.size() < 120)
          detail += entry.name + "@" + format_double(cs.point.coords[0]) + " q=" +
                    format_double(cs.passing_q) + " failed: " + w.failure + "; ";
      }
    }
  }

  // (c) the squares value fails with diagnostics
  auto squares = generate(zoo("squares-indicator").spec, kN);
  auto fail = extract_lambda_witness(squares, Point{1.0}, GdiSpec::natural_density(kN), 0.1,
                                     NeighborhoodSchedule{});
  if (fail.success || fail.failure.empty()) {
    ok = false;
    detail += "expected failure at squares ell=1 q=0.1; ";
  }

  char buf[120];
  std::snprintf(buf, sizeof(buf), "%d/50 tiny agreements, %lld extractions, %.0fs", agreements,
                static_cast<long long>(extracted), seconds_since(t0));
  report(7, "limit-point machinery vs exhaustive oracle and extraction", ok, detail + buf);
}

void criterion_8_alpha_equivalence() {
  const double alphas[] = {0.0, 0.5, 1.0, 2.0};
  bool ok = true;
  std::string detail;
  auto corpus = density_test_corpus(kN);
  for (const auto& [name, set] : corpus) {
    auto rows = alpha_equivalence_probe(set, alphas, kN);
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].verdict != rows[0].verdict) {
        ok = false;
        if (detail.size() < 120)
          detail += name + " alpha=" + format_double(rows[i].alpha) + ": " +
                    to_string(rows[i].verdict) + " vs " + to_string(rows[0].verdict) + "; ";
      }
    }
  }
  if (detail.empty())
    detail = std::to_string(corpus.size()) + " sets, alpha in {0, 0.5, 1, 2}";
  report(8, "alpha-equivalence of density verdicts", ok, detail);
}

void criterion_9_determinism() {
  ExperimentConfig c;
  c.sequence_name = "squares-indicator";
  c.ideal_name = "I0";
  c.n = 20000;
  c.n_explicit = true;
  c.trials = 10;
  c.seed = kSeed;
  c.apply_defaults();

  auto m1 = run_montecarlo(c);
  auto m2 = run_montecarlo(c);
  bool mc_ok = summary_to_structured(c, m1).dump() == summary_to_structured(c, m2).dump() &&
               summary_to_tabular(m1) == summary_to_tabular(m2);

  c.trials = 3;
  auto d1 = run_dichotomy(c);
  auto d2 = run_dichotomy(c);
  bool dich_ok = dichotomy_to_structured(c, d1).dump() == dichotomy_to_structured(c, d2).dump();

  auto f1 = run_corollary_fin(c);
  auto f2 = run_corollary_fin(c);
  bool fin_ok = corollary_to_structured(c, f1).dump() == corollary_to_structured(c, f2).dump();

  auto x = generate(c.sequence(), c.n);
  auto r1 = estimate_Gamma(x, c.ideal(), c.schedule, c.thresholds);
  auto r2 = estimate_Gamma(x, c.ideal(), c.schedule, c.thresholds);
  bool rep_ok = report_to_structured(r1).dump() == report_to_structured(r2).dump() &&
                report_to_tabular(r1) == report_to_tabular(r2);

  bool ok = mc_ok && dich_ok && fin_ok && rep_ok;
  std::string detail = std::string("montecarlo:") + (mc_ok ? "y" : "n") +
                       " dichotomy:" + (dich_ok ? "y" : "n") +
                       " corollary-fin:" + (fin_ok ? "y" : "n") +
                       " limitsets:" + (rep_ok ? "y" : "n");
  report(9, "byte-identical reruns", ok, detail);
}

}  // namespace

int main() {
  auto t0 = std::chrono::steady_clock::now();
  criterion_1_inclusion_chain();
  criterion_2_exact_oracles();
  criterion_3_codecs();
  criterion_4_measure_side();
  criterion_5_category_side();
  criterion_6_fin_witness();
  criterion_7_lambda_machinery();
  criterion_8_alpha_equivalence();
  criterion_9_determinism();
  std::printf("acceptance total: %.0fs, %d failure(s)\n", seconds_since(t0), failures);
  return failures == 0 ? 0 : 1;
}
