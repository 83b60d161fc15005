#include "idealseq/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "idealseq/prng.hpp"
#include "idealseq/reference.hpp"

namespace idealseq {

using nlohmann::json;

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  json j = json::parse(text);
  ExperimentConfig c;
  if (j.contains("sequence")) c.sequence_name = j["sequence"].get<std::string>();
  if (j.contains("ideal")) c.ideal_name = j["ideal"].get<std::string>();
  if (j.contains("n")) {
    c.n = j["n"].get<std::int64_t>();
    c.n_explicit = true;
  }
  if (j.contains("trials")) c.trials = j["trials"].get<std::int64_t>();
  if (j.contains("seed")) c.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("schedule")) {
    const auto& s = j["schedule"];
    if (s.contains("eps0")) c.schedule.eps0 = s["eps0"].get<double>();
    if (s.contains("levels")) c.schedule.levels = s["levels"].get<int>();
    c.schedule_explicit = true;
  }
  if (j.contains("thresholds")) {
    const auto& t = j["thresholds"];
    if (t.contains("in_threshold")) c.thresholds.in_threshold = t["in_threshold"].get<double>();
    if (t.contains("not_in_threshold"))
      c.thresholds.not_in_threshold = t["not_in_threshold"].get<double>();
    if (t.contains("window_fraction"))
      c.thresholds.window_fraction = t["window_fraction"].get<double>();
    if (t.contains("fin_cut")) c.thresholds.fin_cut = t["fin_cut"].get<std::int64_t>();
  }
  if (j.contains("qgrid")) c.qgrid.relative = j["qgrid"].get<std::vector<double>>();
  if (j.contains("min_hits")) {
    c.min_hits = j["min_hits"].get<std::int64_t>();
    c.min_hits_explicit = true;
  }
  if (j.contains("out")) c.out_path = j["out"].get<std::string>();
  if (j.contains("format")) {
    std::string f = j["format"].get<std::string>();
    if (f == "tabular")
      c.format = Format::Tabular;
    else if (f == "structured")
      c.format = Format::Structured;
    else
      throw std::invalid_argument("config: format must be tabular or structured");
  }
  if (j.contains("parallel")) c.parallel_trials = j["parallel"].get<bool>();
  if (j.contains("lambda")) c.compute_lambda = j["lambda"].get<bool>();
  c.apply_defaults();
  return c;
}

bool ExperimentConfig::sequence_is_zoo() const {
  return sequence_name.rfind("file:", 0) != 0;
}

void ExperimentConfig::apply_defaults() {
  if (sequence_is_zoo()) {
    const ZooEntry& e = zoo(sequence_name);
    if (!schedule_explicit) {
      schedule.eps0 = e.eps0;
      schedule.levels = e.levels;
    }
    if (!min_hits_explicit) min_hits = e.min_hits;
  }
  // logarithmic-density runs converge slowly; raise the default size
  if (!n_explicit && ideal_name.rfind("I-1", 0) == 0) n = 1000000;
}

void ExperimentConfig::validate() const {
  thresholds.validate();
  schedule.validate();
  qgrid.validate();
  if (n < 1) throw std::invalid_argument("config: n must be >= 1");
  if (trials < 1) throw std::invalid_argument("config: trials must be >= 1");
  if (min_hits < 1) throw std::invalid_argument("config: min_hits must be >= 1");
  if (n < 10 * min_hits) throw std::invalid_argument("config: n must be >= 10 * min_hits");
  sequence();  // name must resolve
}

SequenceSpec ExperimentConfig::sequence() const { return parse_sequence(sequence_name); }

IdealSpec ExperimentConfig::ideal() const { return parse_ideal(ideal_name, n); }

LimitSetReport estimate_lambda_for_ideal(const SequencePrefix& x, const IdealSpec& ideal,
                                         const NeighborhoodSchedule& schedule,
                                         const QGrid& qgrid, const MembershipConfig& config,
                                         std::int64_t min_hits) {
  if (std::holds_alternative<FinIdeal>(ideal.family)) {
    LimitSetReport rep = estimate_L(x, schedule, min_hits);
    rep.kind = LimitSetReport::Kind::Lambda;
    rep.ideal_name = "fin (via ordinary limit points)";
    return rep;
  }
  if (std::holds_alternative<SummableIdeal>(ideal.family)) {
    LimitSetReport rep = estimate_Gamma(x, ideal, schedule, config);
    rep.kind = LimitSetReport::Kind::Lambda;
    rep.ideal_name = ideal.name() + " (via cluster points, F-sigma collapse)";
    // undecided candidates remain reported, not accepted
    return rep;
  }
  GdiSpec rep_spec = gdi_representation(ideal, x.size);
  LimitSetReport rep = estimate_Lambda_gdi(x, rep_spec, schedule, qgrid, config);
  rep.ideal_name = ideal.name() + " (via " + rep_spec.label + ")";
  return rep;
}

namespace {

std::int64_t mismatch_count(const SetComparison& c) {
  return static_cast<std::int64_t>(c.a_minus_b.size() + c.b_minus_a.size());
}

}  // namespace

PreservationSummary run_montecarlo(const ExperimentConfig& config) {
  config.validate();
  const SequencePrefix x = generate(config.sequence(), config.n);
  const IdealSpec ideal = config.ideal();
  const double tol = config.compare_tolerance();

  PreservationSummary summary;
  summary.trials = config.trials;
  summary.lambda_computed = config.compute_lambda;

  LimitSetReport gamma_base = estimate_Gamma(x, ideal, config.schedule, config.thresholds);
  summary.gamma_base = gamma_base.accepted;
  LimitSetReport lambda_base;
  if (config.compute_lambda) {
    lambda_base = estimate_lambda_for_ideal(x, ideal, config.schedule, config.qgrid,
                                            config.thresholds, config.min_hits);
    summary.lambda_base = lambda_base.accepted;
  }

  summary.records.resize(static_cast<std::size_t>(config.trials));
#pragma omp parallel for schedule(dynamic) if (config.parallel_trials)
  for (std::int64_t t = 0; t < config.trials; ++t) {
    TrialRecord rec;
    rec.trial = t;
    rec.trial_seed = derive_seed(config.seed, static_cast<std::uint64_t>(t));
    OmegaPrefix omega = sample_uniform(rec.trial_seed, config.n);
    SequencePrefix y = subsequence(x, omega);
    rec.subseq_len = y.size;
    if (y.size < config.min_hits) {
      rec.voided = true;
    } else {
      LimitSetReport gamma_y = estimate_Gamma(y, ideal, config.schedule, config.thresholds);
      auto cmp = compare_sets(gamma_y.accepted, summary.gamma_base, tol, x.space);
      rec.gamma_equal = cmp.equal;
      rec.gamma_mismatch = mismatch_count(cmp);
      rec.gamma_undecided = static_cast<std::int64_t>(gamma_y.undecided.size());
      if (config.compute_lambda) {
        LimitSetReport lambda_y = estimate_lambda_for_ideal(
            y, ideal, config.schedule, config.qgrid, config.thresholds, config.min_hits);
        auto lcmp = compare_sets(lambda_y.accepted, summary.lambda_base, tol, x.space);
        rec.lambda_equal = lcmp.equal;
        rec.lambda_mismatch = mismatch_count(lcmp);
      }
    }
    summary.records[static_cast<std::size_t>(t)] = std::move(rec);
  }

  std::int64_t live = 0, g_ok = 0, l_ok = 0;
  for (const auto& rec : summary.records) {
    if (rec.voided) {
      ++summary.voided;
      continue;
    }
    ++live;
    if (rec.gamma_equal) ++g_ok;
    if (rec.lambda_equal) ++l_ok;
  }
  summary.fraction_gamma_preserved =
      live > 0 ? static_cast<double>(g_ok) / static_cast<double>(live) : 0.0;
  summary.fraction_lambda_preserved =
      live > 0 ? static_cast<double>(l_ok) / static_cast<double>(live) : 0.0;
  return summary;
}

std::vector<std::pair<Point, OmegaPrefix>> witness_inputs(const SequencePrefix& x,
                                                          const std::vector<Point>& targets,
                                                          DonorRule rule,
                                                          const NeighborhoodSchedule& schedule) {
  std::vector<std::pair<Point, OmegaPrefix>> inputs;
  inputs.reserve(targets.size());
  for (const Point& t : targets) {
    OmegaPrefix donor = rule == DonorRule::AllOnes ? OmegaPrefix::all_ones()
                                                   : greedy_donor(x, t, schedule.finest());
    inputs.emplace_back(t, std::move(donor));
  }
  return inputs;
}

namespace {

// Thin a dense accepted set to the comparison spacing: a witness only has
// index budget for O(span / spacing) targets, and every dropped point stays
// within the comparison tolerance of a kept one.
std::vector<Point> thin_targets(const std::vector<Point>& pts, double spacing,
                                const MetricSpace& space) {
  std::vector<Point> kept;
  for (const Point& p : pts) {
    bool covered = false;
    for (const Point& k : kept) {
      if (space.distance({p.coords.data(), p.coords.size()},
                         {k.coords.data(), k.coords.size()}) < spacing) {
        covered = true;
        break;
      }
    }
    if (!covered) kept.push_back(p);
  }
  return kept;
}

std::pair<std::vector<Point>, DonorRule> witness_targets_for(const ExperimentConfig& config,
                                                             const LimitSetReport& l_report,
                                                             const MetricSpace& space) {
  if (config.sequence_is_zoo()) {
    const ZooEntry& e = zoo(config.sequence_name);
    if (!e.witness_targets.empty()) return {e.witness_targets, e.donor_rule};
    return {thin_targets(l_report.accepted, config.compare_tolerance(), space), e.donor_rule};
  }
  return {thin_targets(l_report.accepted, config.compare_tolerance(), space),
          DonorRule::GreedyFinest};
}

}  // namespace

DichotomyReport run_dichotomy(const ExperimentConfig& config,
                              const std::vector<Point>* targets_override) {
  config.validate();
  const SequencePrefix x = generate(config.sequence(), config.n);
  const IdealSpec ideal = config.ideal();

  DichotomyReport rep;
  rep.tolerance = config.compare_tolerance();
  rep.l = estimate_L(x, config.schedule, config.min_hits);
  rep.gamma = estimate_Gamma(x, ideal, config.schedule, config.thresholds);
  rep.lambda = estimate_lambda_for_ideal(x, ideal, config.schedule, config.qgrid,
                                         config.thresholds, config.min_hits);
  rep.preserving =
      compare_sets(rep.gamma.accepted, rep.l.accepted, rep.tolerance, x.space).equal;

  auto [targets, rule] = witness_targets_for(config, rep.l, x.space);
  if (targets_override) targets = *targets_override;
  if (targets.empty()) throw std::runtime_error("run_dichotomy: no witness targets available");
  rep.witness = generic_witness(x, witness_inputs(x, targets, rule, config.schedule));

  SequencePrefix y = subsequence(x, rep.witness.omega);
  rep.witness_gamma = estimate_Gamma(y, ideal, config.schedule, config.thresholds);
  rep.witness_lambda = estimate_lambda_for_ideal(y, ideal, config.schedule, config.qgrid,
                                                 config.thresholds, config.min_hits);
  rep.witness_gamma_vs_l =
      compare_sets(rep.witness_gamma.accepted, rep.l.accepted, rep.tolerance, x.space);
  rep.witness_gamma_vs_lambda = compare_sets(rep.witness_gamma.accepted,
                                             rep.witness_lambda.accepted, rep.tolerance, x.space);

  rep.random_side = run_montecarlo(config);
  return rep;
}

CorollaryFinReport run_corollary_fin(const ExperimentConfig& config) {
  config.validate();
  const SequencePrefix x = generate(config.sequence(), config.n);
  const double tol = config.compare_tolerance();

  CorollaryFinReport rep;
  rep.tolerance = tol;
  rep.trials = config.trials;
  rep.l = estimate_L(x, config.schedule, config.min_hits);

  auto [targets, rule] = witness_targets_for(config, rep.l, x.space);
  if (targets.empty()) throw std::runtime_error("run_corollary_fin: no witness targets");
  rep.witness = generic_witness(x, witness_inputs(x, targets, rule, config.schedule));
  SequencePrefix y = subsequence(x, rep.witness.omega);
  rep.witness_l = estimate_L(y, config.schedule, config.min_hits);
  rep.witness_vs_base = compare_sets(rep.witness_l.accepted, rep.l.accepted, tol, x.space);

  rep.records.resize(static_cast<std::size_t>(config.trials));
#pragma omp parallel for schedule(dynamic) if (config.parallel_trials)
  for (std::int64_t t = 0; t < config.trials; ++t) {
    TrialRecord rec;
    rec.trial = t;
    rec.trial_seed = derive_seed(config.seed, static_cast<std::uint64_t>(t));
    OmegaPrefix omega = sample_uniform(rec.trial_seed, config.n);
    SequencePrefix yy = subsequence(x, omega);
    rec.subseq_len = yy.size;
    if (yy.size < config.min_hits) {
      rec.voided = true;
    } else {
      auto ly = estimate_L(yy, config.schedule, config.min_hits);
      auto cmp = compare_sets(ly.accepted, rep.l.accepted, tol, x.space);
      rec.gamma_equal = cmp.equal;  // reused field: L preservation
      rec.gamma_mismatch = mismatch_count(cmp);
    }
    rep.records[static_cast<std::size_t>(t)] = std::move(rec);
  }
  std::int64_t live = 0, ok = 0;
  for (const auto& r : rep.records) {
    if (r.voided) {
      ++rep.voided;
      continue;
    }
    ++live;
    if (r.gamma_equal) ++ok;
  }
  rep.fraction_l_preserved = live > 0 ? static_cast<double>(ok) / static_cast<double>(live) : 0.0;
  return rep;
}

bool OracleSuiteResult::all_pass() const {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

// --- oracle batteries ---------------------------------------------------------

std::vector<std::pair<std::string, IndexSet>> density_test_corpus(std::int64_t n_max) {
  std::vector<std::pair<std::string, IndexSet>> corpus;
  auto add = [&](const std::string& name) {
    corpus.emplace_back(name, IndexSet::named(name, n_max));
  };
  add("evens");
  add("odds");
  add("multiples:3");
  add("multiples:5");
  add("multiples:7");
  add("residue:4:1");
  add("squares");
  add("cubes");
  add("powers-of-two");
  add("primes");
  corpus.emplace_back("evens|squares",
                      set_union(IndexSet::named("evens", n_max), IndexSet::named("squares", n_max)));
  corpus.emplace_back("evens&multiples:3", set_intersection(IndexSet::named("evens", n_max),
                                                            IndexSet::named("multiples:3", n_max)));
  corpus.emplace_back("odds&primes", set_intersection(IndexSet::named("odds", n_max),
                                                      IndexSet::named("primes", n_max)));
  corpus.emplace_back("squares|cubes", set_union(IndexSet::named("squares", n_max),
                                                 IndexSet::named("cubes", n_max)));
  corpus.emplace_back("evens&squares", set_intersection(IndexSet::named("evens", n_max),
                                                        IndexSet::named("squares", n_max)));
  add("finite:1-300");
  corpus.emplace_back("multiples:3|multiples:5",
                      set_union(IndexSet::named("multiples:3", n_max),
                                IndexSet::named("multiples:5", n_max)));
  add("residue:9:2");
  corpus.emplace_back("mod100-band", IndexSet::from_predicate(
                                         [](std::int64_t i) { return i % 100 < 50; }, n_max));
  corpus.emplace_back("pronic", IndexSet::from_predicate(
                                    [](std::int64_t i) {
                                      auto k = static_cast<std::int64_t>(std::sqrt(static_cast<double>(i)));
                                      for (std::int64_t c = std::max<std::int64_t>(0, k - 2); c <= k + 2; ++c)
                                        if (c * c + c == i) return true;
                                      return false;
                                    },
                                    n_max));
  return corpus;
}

namespace {

OracleResult oracle_exact_alpha_ratios(std::int64_t n) {
  OracleResult res{"exact-rational alpha ratios vs float path", true, ""};
  auto corpus = density_test_corpus(n);
  for (const auto& [name, set] : corpus) {
    for (int alpha : {0, 1, 2}) {
      // independent oracle: direct integer summation over the materialized set
      __int128 num = 0, den = 0;
      auto elems = set.elements_up_to(n);
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
      Rat128 got = alpha_weight_ratio_exact(set, alpha, n);
      if (!(expect == got)) {
        res.pass = false;
        res.detail = name + " alpha=" + std::to_string(alpha) + ": rational mismatch";
        return res;
      }
      double f = alpha_weight_ratio(set, static_cast<double>(alpha), n);
      double e = expect.to_double();
      double rel = e == 0.0 ? std::fabs(f) : std::fabs(f - e) / std::fabs(e);
      if (rel > 1e-12) {
        res.pass = false;
        res.detail = name + " alpha=" + std::to_string(alpha) +
                     ": float relative error " + format_double(rel);
        return res;
      }
    }
  }
  res.detail = std::to_string(corpus.size()) + " sets x alpha in {0,1,2}";
  return res;
}

OracleResult oracle_dyadic_closed_forms() {
  OracleResult res{"dyadic expansion closed forms", true, ""};
  auto one = dyadic_value(OmegaPrefix::all_ones(), 16);
  OmegaPrefix half;
  half.digits = {0};
  auto h = dyadic_value(half, 16);
  OmegaPrefix third;
  third.digits = {0, 1};
  third.tail = OmegaPrefix::PeriodicOnes{2};
  auto t = dyadic_value(third, 16);
  bool ok = one.exact && one.value == Rat128::from_int(1) && h.exact &&
            h.value == Rat128::make(1, 2) && t.exact && t.value == Rat128::make(1, 3);
  res.pass = ok;
  res.detail = "1, 1/2, 1/3 as exact rationals";
  if (!ok)
    res.detail = "got " + one.value.to_string() + ", " + h.value.to_string() + ", " +
                 t.value.to_string();
  return res;
}

OracleResult oracle_codec_roundtrips(std::uint64_t seed) {
  OracleResult res{"encode/decode round-trips", true, ""};
  for (int c = 0; c < 1000; ++c) {
    std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(c));
    auto m = static_cast<std::int64_t>(1 + counter_word(s, 0) % 200);
    std::vector<std::int64_t> elems;
    for (std::int64_t i = 1; i <= m; ++i)
      if (coin_flip(s, static_cast<std::uint64_t>(i))) elems.push_back(i);
    IndexSet set = elems.empty() ? IndexSet::empty_set(m) : IndexSet::from_elements(elems, m);
    auto round = decode(encode(set, m), m).elements_up_to(m);
    if (round != elems) {
      res.pass = false;
      res.detail = "case " + std::to_string(c) + " (m=" + std::to_string(m) + ")";
      return res;
    }
  }
  res.detail = "1000 randomized (S, M) cases";
  return res;
}

OracleResult oracle_lambda_bruteforce(std::uint64_t seed) {
  OracleResult res{"tiny-instance Lambda acceptance vs exhaustive search", true, ""};
  int agreements = 0;
  for (int c = 0; c < 50; ++c) {
    std::uint64_t s = derive_seed(seed ^ 0xABCDEF, static_cast<std::uint64_t>(c));
    auto n = static_cast<std::int64_t>(8 + counter_word(s, 0) % 13);  // 8..20
    // values from a small alphabet
    SequencePrefix x;
    x.space = MetricSpace{};
    x.size = n;
    for (std::int64_t i = 0; i < n; ++i)
      x.data.push_back(static_cast<double>(counter_word(s, 10 + static_cast<std::uint64_t>(i)) % 5) / 4.0);
    // random partition into 2..4 blocks
    int blocks = 2 + static_cast<int>(counter_word(s, 1) % 3);
    std::vector<std::int64_t> ends;
    std::int64_t prev = 0;
    for (int b = 0; b < blocks - 1; ++b) {
      std::int64_t remaining = n - prev - (blocks - 1 - b);
      if (remaining < 1) break;
      std::int64_t len = 1 + static_cast<std::int64_t>(counter_word(s, 2 + static_cast<std::uint64_t>(b)) %
                                                       static_cast<std::uint64_t>(remaining));
      prev += len;
      ends.push_back(prev);
    }
    ends.push_back(n);
    GdiSpec gdi;
    gdi.partition = std::make_shared<BlockPartition>(BlockPartition::from_ends(ends));
    gdi.label = "tiny";
    if (c % 2 == 0) {
      gdi.weight = WeightFn::constant();
    } else {
      // capped counting: monotone, subadditive, not additive
      std::vector<Submeasure> mu;
      for (int j = 1; j <= gdi.partition->block_count(); ++j) {
        auto [lo, hi] = gdi.partition->block_range(j);
        double len = static_cast<double>(hi - lo + 1);
        mu.push_back({"capped_counting", [len](const IndexSet& a) {
                        return std::min(1.0, 2.0 * static_cast<double>(a.count_up_to(a.n_max())) / len);
                      }});
      }
      gdi.block_measures = std::move(mu);
    }
    Point ell{static_cast<double>(counter_word(s, 3) % 5) / 4.0};
    double q = 0.05 + 0.9 * static_cast<double>(counter_word(s, 4) % 100) / 100.0;
    double eps = 0.13;
    NeighborhoodSchedule sched{eps, 0};
    bool est = lambda_accepts(x, gdi, ell, q, sched, 1e-9);
    bool oracle = brute_force_lambda_oracle(x, gdi, ell, q, eps);
    if (est != oracle) {
      res.pass = false;
      res.detail = "case " + std::to_string(c) + ": estimator " + std::to_string(est) +
                   " vs exhaustive " + std::to_string(oracle);
      return res;
    }
    ++agreements;
  }
  res.detail = std::to_string(agreements) + "/50 agreements";
  return res;
}

OracleResult oracle_erdos_ulam_sup(std::uint64_t seed) {
  OracleResult res{"erdos-ulam phi vs brute-force sup", true, ""};
  WeightFn weights[] = {WeightFn::constant(), WeightFn::one_over_i()};
  for (int c = 0; c < 40; ++c) {
    std::uint64_t s = derive_seed(seed ^ 0x515151, static_cast<std::uint64_t>(c));
    auto n = static_cast<std::int64_t>(20 + counter_word(s, 0) % 180);
    std::vector<std::int64_t> elems;
    for (std::int64_t i = 1; i <= n; ++i)
      if (coin_flip(s, static_cast<std::uint64_t>(i))) elems.push_back(i);
    IndexSet set = elems.empty() ? IndexSet::empty_set(n) : IndexSet::from_elements(elems, n);
    const WeightFn& f = weights[c % 2];
    // brute force: evaluate the ratio at every m
    double sup = 0.0;
    for (std::int64_t m = 1; m <= n; ++m) {
      double num = 0.0, den = 0.0;
      for (std::int64_t i = 1; i <= m; ++i) {
        den += f(i);
        if (set.contains(i)) num += f(i);
      }
      sup = std::max(sup, num / den);
    }
    double got = erdos_ulam_phi(f, set, n);
    if (std::fabs(got - sup) > 1e-12) {
      res.pass = false;
      res.detail = "case " + std::to_string(c) + ": " + format_double(got) + " vs " +
                   format_double(sup);
      return res;
    }
  }
  res.detail = "40 randomized sets, two weight functions";
  return res;
}

OracleResult oracle_limsup_examples() {
  OracleResult res{"windowed limsup surrogate", true, ""};
  std::vector<std::pair<std::int64_t, double>> constant, harmonic, alternating;
  for (std::int64_t i = 1; i <= 100; ++i) {
    constant.emplace_back(i, 0.3);
    harmonic.emplace_back(i, 1.0 / static_cast<double>(i));
    alternating.emplace_back(i, i % 2 == 0 ? 1.0 : 0.0);
  }
  bool ok = limsup_estimate(constant, 0.5) == 0.3 &&
            limsup_estimate(harmonic, 0.5) == 0.02 && limsup_estimate(alternating, 0.5) == 1.0;
  res.pass = ok;
  res.detail = "constant, 1/n, alternating";
  return res;
}

OracleResult oracle_membership_counts() {
  OracleResult res{"membership window statistics by exact counting", true, ""};
  const std::int64_t n = 100000;
  auto squares = IndexSet::named("squares", n);
  auto evens = IndexSet::named("evens", n);
  auto v1 = membership(IdealSpec::density_alpha(0.0), squares, n);
  auto v2 = membership(IdealSpec::density_alpha(0.0), evens, n);
  // window max of floor(sqrt(m))/m over [50000, 100000] is 1/224 at m = 224^2
  bool ok = v1.verdict == Verdict::InIdeal && std::fabs(v1.statistic - 1.0 / 224.0) < 1e-15 &&
            v2.verdict == Verdict::NotInIdeal && std::fabs(v2.statistic - 0.5) < 1e-9;
  res.pass = ok;
  res.detail = "squares stat=" + format_double(v1.statistic) +
               ", evens stat=" + format_double(v2.statistic);
  return res;
}

OracleResult oracle_config_validation() {
  OracleResult res{"threshold band validation", true, ""};
  MembershipConfig bad;
  bad.in_threshold = 0.05;
  bad.not_in_threshold = 0.01;  // inverted band
  try {
    bad.validate();
    res.pass = false;
    res.detail = "inverted band accepted";
  } catch (const std::invalid_argument&) {
    res.detail = "inverted band rejected before execution";
  }
  return res;
}

}  // namespace

OracleSuiteResult run_oracle_suite(std::uint64_t seed) {
  OracleSuiteResult out;
  out.results.push_back(oracle_exact_alpha_ratios(10000));
  out.results.push_back(oracle_dyadic_closed_forms());
  out.results.push_back(oracle_codec_roundtrips(seed));
  out.results.push_back(oracle_lambda_bruteforce(seed));
  out.results.push_back(oracle_erdos_ulam_sup(seed));
  out.results.push_back(oracle_limsup_examples());
  out.results.push_back(oracle_membership_counts());
  out.results.push_back(oracle_config_validation());
  return out;
}

// --- serialization -------------------------------------------------------------

namespace {

SNode point_node(const Point& p) {
  SNode arr = SNode::array();
  for (double c : p.coords) arr.push(c);
  return arr;
}

SNode points_node(const std::vector<Point>& pts) {
  SNode arr = SNode::array();
  for (const auto& p : pts) arr.push(point_node(p));
  return arr;
}

SNode comparison_node(const SetComparison& c) {
  SNode n = SNode::object();
  n.set("equal", c.equal);
  n.set("hausdorff", c.hausdorff);
  n.set("a_minus_b", points_node(c.a_minus_b));
  n.set("b_minus_a", points_node(c.b_minus_a));
  return n;
}

std::string point_text(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.coords.size(); ++i) {
    if (i) s += ';';
    s += format_double(p.coords[i]);
  }
  return s;
}

}  // namespace

SNode config_echo(const ExperimentConfig& config) {
  SNode n = SNode::object();
  n.set("sequence", config.sequence_name);
  n.set("ideal", config.ideal_name);
  n.set("n", config.n);
  n.set("trials", config.trials);
  n.set("seed", static_cast<std::int64_t>(config.seed));
  SNode sched = SNode::object();
  sched.set("eps0", config.schedule.eps0);
  sched.set("levels", config.schedule.levels);
  n.set("schedule", std::move(sched));
  SNode thr = SNode::object();
  thr.set("in_threshold", config.thresholds.in_threshold);
  thr.set("not_in_threshold", config.thresholds.not_in_threshold);
  thr.set("window_fraction", config.thresholds.window_fraction);
  thr.set("fin_cut", config.thresholds.fin_cut);
  n.set("thresholds", std::move(thr));
  SNode qg = SNode::array();
  for (double q : config.qgrid.relative) qg.push(q);
  n.set("qgrid", std::move(qg));
  n.set("min_hits", config.min_hits);
  return n;
}

SNode report_to_structured(const LimitSetReport& rep) {
  SNode n = SNode::object();
  n.set("kind", LimitSetReport::kind_name(rep.kind));
  n.set("n", rep.n);
  n.set("eps0", rep.schedule.eps0);
  n.set("levels", rep.schedule.levels);
  if (!rep.ideal_name.empty()) n.set("ideal", rep.ideal_name);
  if (rep.min_hits > 0) n.set("min_hits", rep.min_hits);
  if (!rep.qgrid_abs.empty()) {
    SNode qs = SNode::array();
    for (double q : rep.qgrid_abs) qs.push(q);
    n.set("qgrid", std::move(qs));
  }
  n.set("accepted", points_node(rep.accepted));
  if (rep.kind == LimitSetReport::Kind::Gamma) n.set("undecided", points_node(rep.undecided));
  SNode per = SNode::array();
  for (const auto& cs : rep.per_point) {
    SNode c = SNode::object();
    c.set("point", point_node(cs.point));
    c.set("status", cs.status == 1 ? "accepted" : (cs.status == 2 ? "undecided" : "rejected"));
    SNode stats = SNode::array();
    for (double s : cs.stats) stats.push(s);
    c.set("stats", std::move(stats));
    if (!cs.verdicts.empty()) {
      SNode vs = SNode::array();
      for (Verdict v : cs.verdicts) vs.push(to_string(v));
      c.set("verdicts", std::move(vs));
    }
    if (rep.kind == LimitSetReport::Kind::Lambda) c.set("passing_q", cs.passing_q);
    per.push(std::move(c));
  }
  n.set("per_point", std::move(per));
  return n;
}

std::string report_to_tabular(const LimitSetReport& rep) {
  std::string out;
  std::vector<std::string> header{"kind", "point", "status", "passing_q"};
  int levels = rep.schedule.levels;
  for (int m = 0; m <= levels; ++m) header.push_back("stat_m" + std::to_string(m));
  for (int m = 0; m <= levels && rep.kind == LimitSetReport::Kind::Gamma; ++m)
    header.push_back("verdict_m" + std::to_string(m));
  out += csv_row(header);
  for (const auto& cs : rep.per_point) {
    std::vector<std::string> row{
        LimitSetReport::kind_name(rep.kind), point_text(cs.point),
        cs.status == 1 ? "accepted" : (cs.status == 2 ? "undecided" : "rejected"),
        format_double(cs.passing_q)};
    for (double s : cs.stats) row.push_back(format_double(s));
    for (Verdict v : cs.verdicts) row.push_back(to_string(v));
    out += csv_row(row);
  }
  return out;
}

SNode summary_to_structured(const ExperimentConfig& config, const PreservationSummary& s) {
  SNode n = SNode::object();
  n.set("experiment", "montecarlo");
  n.set("config", config_echo(config));
  n.set("trials", s.trials);
  n.set("voided", s.voided);
  n.set("fraction_gamma_preserved", s.fraction_gamma_preserved);
  if (s.lambda_computed) n.set("fraction_lambda_preserved", s.fraction_lambda_preserved);
  n.set("gamma_base", points_node(s.gamma_base));
  if (s.lambda_computed) n.set("lambda_base", points_node(s.lambda_base));
  SNode recs = SNode::array();
  for (const auto& r : s.records) {
    SNode rn = SNode::object();
    rn.set("trial", r.trial);
    rn.set("trial_seed", static_cast<std::int64_t>(r.trial_seed));
    rn.set("subseq_len", r.subseq_len);
    rn.set("voided", r.voided);
    rn.set("gamma_equal", r.gamma_equal);
    if (s.lambda_computed) rn.set("lambda_equal", r.lambda_equal);
    rn.set("gamma_mismatch", r.gamma_mismatch);
    if (s.lambda_computed) rn.set("lambda_mismatch", r.lambda_mismatch);
    rn.set("gamma_undecided", r.gamma_undecided);
    recs.push(std::move(rn));
  }
  n.set("records", std::move(recs));
  return n;
}

std::string summary_to_tabular(const PreservationSummary& s) {
  std::string out = csv_row({"trial", "trial_seed", "subseq_len", "voided", "gamma_equal",
                             "lambda_equal", "gamma_mismatch", "lambda_mismatch",
                             "gamma_undecided"});
  for (const auto& r : s.records) {
    out += csv_row({std::to_string(r.trial), std::to_string(r.trial_seed),
                    std::to_string(r.subseq_len), r.voided ? "1" : "0",
                    r.gamma_equal ? "1" : "0", r.lambda_equal ? "1" : "0",
                    std::to_string(r.gamma_mismatch), std::to_string(r.lambda_mismatch),
                    std::to_string(r.gamma_undecided)});
  }
  return out;
}

SNode selection_to_structured(const SelectionReport& sel) {
  SNode n = SNode::object();
  n.set("omega_digits", static_cast<std::int64_t>(sel.omega.prefix_length()));
  n.set("omega_tail", sel.omega.tail_tag());
  n.set("selected_count", sel.selected.count_up_to(sel.selected.n_max()));
  SNode log = SNode::array();
  for (const auto& line : sel.construction_log) log.push(line);
  n.set("construction_log", std::move(log));
  SNode cyc = SNode::array();
  for (const auto& row : sel.cycle_picks) {
    SNode r = SNode::array();
    for (std::int64_t p : row) r.push(SNode::integer(p));
    cyc.push(std::move(r));
  }
  n.set("cycle_picks", std::move(cyc));
  return n;
}

SNode dichotomy_to_structured(const ExperimentConfig& config, const DichotomyReport& rep) {
  SNode n = SNode::object();
  n.set("experiment", "dichotomy");
  n.set("config", config_echo(config));
  n.set("classification", rep.preserving ? "preserving" : "dichotomy");
  n.set("tolerance", rep.tolerance);
  n.set("l_accepted", points_node(rep.l.accepted));
  n.set("gamma_accepted", points_node(rep.gamma.accepted));
  n.set("gamma_undecided", points_node(rep.gamma.undecided));
  n.set("lambda_accepted", points_node(rep.lambda.accepted));
  n.set("witness", selection_to_structured(rep.witness));
  n.set("witness_gamma_accepted", points_node(rep.witness_gamma.accepted));
  n.set("witness_lambda_accepted", points_node(rep.witness_lambda.accepted));
  n.set("witness_gamma_vs_l", comparison_node(rep.witness_gamma_vs_l));
  n.set("witness_gamma_vs_lambda", comparison_node(rep.witness_gamma_vs_lambda));
  SNode rnd = SNode::object();
  rnd.set("trials", rep.random_side.trials);
  rnd.set("voided", rep.random_side.voided);
  rnd.set("fraction_gamma_preserved", rep.random_side.fraction_gamma_preserved);
  rnd.set("fraction_lambda_preserved", rep.random_side.fraction_lambda_preserved);
  n.set("random_side", std::move(rnd));
  return n;
}

SNode corollary_to_structured(const ExperimentConfig& config, const CorollaryFinReport& rep) {
  SNode n = SNode::object();
  n.set("experiment", "corollary-fin");
  n.set("config", config_echo(config));
  n.set("tolerance", rep.tolerance);
  n.set("l_accepted", points_node(rep.l.accepted));
  n.set("witness", selection_to_structured(rep.witness));
  n.set("witness_l_accepted", points_node(rep.witness_l.accepted));
  n.set("witness_vs_base", comparison_node(rep.witness_vs_base));
  n.set("trials", rep.trials);
  n.set("voided", rep.voided);
  n.set("fraction_l_preserved", rep.fraction_l_preserved);
  return n;
}

SNode zoo_catalogue_to_structured() {
  SNode arr = SNode::array();
  for (const auto& e : zoo_catalogue()) {
    SNode n = SNode::object();
    n.set("name", e.name);
    n.set("spec", e.spec.label);
    auto truth = [&](const TruthSet& t) {
      SNode tn = SNode::object();
      if (t.is_interval) {
        tn.set("interval", SNode::array().push(t.lo).push(t.hi));
      } else {
        tn.set("points", points_node(t.points));
      }
      return tn;
    };
    n.set("L", truth(e.truth_l));
    n.set("Gamma_I0", truth(e.truth_gamma0));
    n.set("Lambda_I0", truth(e.truth_lambda0));
    n.set("justification", e.justification);
    n.set("eps0", e.eps0);
    n.set("levels", e.levels);
    n.set("min_hits", e.min_hits);
    arr.push(std::move(n));
  }
  return arr;
}

}  // namespace idealseq
