#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "idealseq/harness.hpp"
#include "idealseq/ideal.hpp"
#include "idealseq/prng.hpp"

using namespace idealseq;

namespace {

// independent reference: direct integer summation
Rat128 direct_ratio(const IndexSet& a, int alpha, std::int64_t n) {
  __int128 num = 0, den = 0;
  for (std::int64_t i = 1; i <= n; ++i) {
    __int128 w = 1;
    for (int e = 0; e < alpha; ++e) w *= i;
    den += w;
    if (a.contains(i)) num += w;
  }
  return Rat128::make(num, den);
}

IndexSet random_subset(std::uint64_t seed, std::int64_t universe, int max_size) {
  std::vector<std::int64_t> elems;
  for (std::int64_t i = 1; i <= universe; ++i)
    if (counter_word(seed, static_cast<std::uint64_t>(i)) % universe <
        static_cast<std::uint64_t>(max_size))
      elems.push_back(i);
  while (static_cast<int>(elems.size()) > max_size) elems.pop_back();
  if (elems.empty()) return IndexSet::empty_set(universe);
  return IndexSet::from_elements(elems, universe);
}

}  // namespace

TEST_CASE("alpha_weight_ratio on the pinned examples") {
  auto empty = IndexSet::empty_set(1000);
  CHECK(alpha_weight_ratio(empty, 0.0, 100) == 0.0);

  auto all = IndexSet::all(1000);
  CHECK(alpha_weight_ratio(all, 0.0, 100) == doctest::Approx(1.0).epsilon(1e-15));

  auto evens = IndexSet::named("evens", 1000);
  CHECK(alpha_weight_ratio(evens, 0.0, 1000) == doctest::Approx(0.5).epsilon(1e-14));

  auto squares = IndexSet::named("squares", 10000);
  CHECK(alpha_weight_ratio(squares, 0.0, 10000) == doctest::Approx(0.01).epsilon(1e-13));
  CHECK(alpha_weight_ratio_exact(squares, 0, 10000) == Rat128::make(100, 10000));

  CHECK_THROWS_AS(alpha_weight_ratio(evens, 0.0, 0), std::domain_error);
  CHECK_THROWS_AS(alpha_weight_ratio(evens, -1.5, 100), std::domain_error);
}

TEST_CASE("exact-rational oracle path matches direct summation, float within 1e-12") {
  const std::int64_t n = 10000;
  for (const char* name : {"evens", "squares", "primes", "cubes"}) {
    auto set = IndexSet::named(name, n);
    for (int alpha : {0, 1, 2}) {
      Rat128 expect = direct_ratio(set, alpha, n);
      CHECK(alpha_weight_ratio_exact(set, alpha, n) == expect);
      double f = alpha_weight_ratio(set, static_cast<double>(alpha), n);
      double e = expect.to_double();
      CHECK(std::fabs(f - e) <= 1e-12 * std::max(1.0, std::fabs(e)));
    }
  }
}

TEST_CASE("limsup_estimate window semantics") {
  std::vector<std::pair<std::int64_t, double>> constant, harmonic, alternating;
  for (std::int64_t i = 1; i <= 100; ++i) {
    constant.emplace_back(i, 0.3);
    harmonic.emplace_back(i, 1.0 / static_cast<double>(i));
    alternating.emplace_back(i, i % 2 == 0 ? 1.0 : 0.0);
  }
  CHECK(limsup_estimate(constant, 0.5) == 0.3);
  CHECK(limsup_estimate(harmonic, 0.5) == 0.02);  // max of 1/n over [50,100]
  CHECK(limsup_estimate(alternating, 0.5) == 1.0);
  CHECK_THROWS_AS(limsup_estimate({}, 0.5), std::domain_error);
  CHECK_THROWS_AS(limsup_estimate(constant, 1.5), std::domain_error);
}

TEST_CASE("erdos_ulam_phi sup over prefixes") {
  auto ones = WeightFn::constant();
  auto odds = IndexSet::named("odds", 100);
  CHECK(erdos_ulam_phi(ones, odds, 100) == 1.0);  // ratio 1/1 at m = 1

  CHECK(erdos_ulam_phi(ones, IndexSet::empty_set(100), 100) == 0.0);

  auto singleton = IndexSet::from_elements({1}, 10);
  CHECK(erdos_ulam_phi(WeightFn::one_over_i(), singleton, 10) == 1.0);

  WeightFn bad{"bad", [](std::int64_t i) { return i == 3 ? 0.0 : 1.0; }};
  CHECK_THROWS_AS(erdos_ulam_phi(bad, odds, 10), std::invalid_argument);
}

TEST_CASE("erdos_ulam_phi is monotone non-decreasing in n") {
  auto f = WeightFn::one_over_i();
  auto set = IndexSet::named("multiples:3", 500);
  double prev = 0.0;
  for (std::int64_t n = 10; n <= 500; n += 35) {
    double v = erdos_ulam_phi(f, set, n);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("exh_tail_value prefix approximation") {
  auto phi = erdos_ulam_submeasure(WeightFn::constant());
  CHECK(exh_tail_value(phi, IndexSet::empty_set(1000), 10, 1000) == 0.0);

  auto evens = IndexSet::named("evens", 1000);
  // brute force: sup over m of |evens ∩ (10, m]| / m
  double sup = 0.0;
  for (std::int64_t m = 1; m <= 1000; ++m) {
    std::int64_t cnt = 0;
    for (std::int64_t i = 11; i <= m; ++i)
      if (i % 2 == 0) ++cnt;
    sup = std::max(sup, static_cast<double>(cnt) / static_cast<double>(m));
  }
  double got = exh_tail_value(phi, evens, 10, 1000);
  CHECK(got == doctest::Approx(sup).epsilon(1e-12));
  CHECK(std::fabs(got - 0.5) < 0.01);

  auto finite = IndexSet::from_elements({2, 5, 9}, 1000);
  CHECK(exh_tail_value(phi, finite, 9, 1000) == 0.0);
  CHECK_THROWS_AS(exh_tail_value(phi, evens, 500, 100), std::domain_error);
}

TEST_CASE("gdi_block_value on the natural-density representation") {
  auto gdi = GdiSpec::natural_density(100000);
  auto empty = IndexSet::empty_set(100000);
  for (int j = 1; j <= 6; ++j) CHECK(gdi.block_value(empty, j) == 0.0);

  auto evens = IndexSet::named("evens", 100000);
  CHECK(gdi.block_value(evens, 5) == 0.5);  // |evens ∩ (16,32]| / 16 = 8/16
  CHECK(gdi.block_value(IndexSet::all(100000), 5) == gdi.block_value_full(5));

  auto small = IndexSet::named("evens", 20);
  CHECK_THROWS_AS(gdi.block_value(small, 6), std::domain_error);
}

TEST_CASE("membership verdicts on the pinned examples") {
  const std::int64_t n = 100000;
  auto squares = IndexSet::named("squares", n);
  auto v = membership(IdealSpec::density_alpha(0.0), squares, n);
  CHECK(v.verdict == Verdict::InIdeal);
  // window max of floor(sqrt(m))/m over [50000,100000] is 1/224 at m = 224^2
  CHECK(v.statistic == doctest::Approx(1.0 / 224.0).epsilon(1e-12));
  CHECK(v.statistic < v.threshold);

  auto evens = IndexSet::named("evens", n);
  auto ve = membership(IdealSpec::density_alpha(0.0), evens, n);
  CHECK(ve.verdict == Verdict::NotInIdeal);
  CHECK(ve.statistic == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(ve.statistic >= ve.threshold);

  auto finite = IndexSet::named("finite:1-10", n);
  CHECK(membership(IdealSpec::fin(), finite, n).verdict == Verdict::InIdeal);
}

TEST_CASE("membership under Fin: presence beyond the cut decides") {
  const std::int64_t n = 100000;
  // sparse but unbounded: squares keep appearing beyond any cut
  auto squares = IndexSet::named("squares", n);
  CHECK(membership(IdealSpec::fin(), squares, n).verdict == Verdict::NotInIdeal);

  // a predicate set with an empty tail but no finiteness declaration stays open
  auto bounded_pred = IndexSet::from_predicate([](std::int64_t i) { return i <= 100; }, n);
  CHECK(membership(IdealSpec::fin(), bounded_pred, n).verdict == Verdict::Undecided);

  auto declared = IndexSet::from_predicate([](std::int64_t i) { return i <= 100; }, n, true);
  CHECK(membership(IdealSpec::fin(), declared, n).verdict == Verdict::InIdeal);
}

TEST_CASE("membership across families: finite sets are in every ideal") {
  const std::int64_t n = 10000;
  auto finite = IndexSet::named("finite:1-12", n);
  std::vector<IdealSpec> ideals;
  ideals.push_back(IdealSpec::fin());
  ideals.push_back(IdealSpec::density_alpha(0.0));
  ideals.push_back(IdealSpec::density_alpha(1.0));
  ideals.push_back(IdealSpec::erdos_ulam(WeightFn::one_over_i()));
  ideals.push_back(IdealSpec::summable(WeightFn::one_over_i()));
  ideals.push_back(IdealSpec::gdi(GdiSpec::natural_density(n)));
  for (const auto& ideal : ideals) {
    auto v = membership(ideal, finite, n);
    CHECK_MESSAGE(v.verdict == Verdict::InIdeal, ideal.name());
  }
}

TEST_CASE("membership statistics are monotone in the set") {
  const std::int64_t n = 2000;
  std::vector<IdealSpec> ideals;
  ideals.push_back(IdealSpec::fin());
  ideals.push_back(IdealSpec::density_alpha(0.0));
  ideals.push_back(IdealSpec::density_alpha(1.0));
  ideals.push_back(IdealSpec::erdos_ulam(WeightFn::one_over_i()));
  ideals.push_back(IdealSpec::summable(WeightFn::one_over_i()));
  ideals.push_back(IdealSpec::gdi(GdiSpec::natural_density(n)));
  for (int c = 0; c < 20; ++c) {
    auto b_elems = random_subset(derive_seed(99, static_cast<std::uint64_t>(c)), n, 400)
                       .elements_up_to(n);
    std::vector<std::int64_t> a_elems;
    for (std::size_t i = 0; i < b_elems.size(); i += 2) a_elems.push_back(b_elems[i]);
    if (a_elems.empty() || b_elems.empty()) continue;
    auto a = IndexSet::from_elements(a_elems, n);
    auto b = IndexSet::from_elements(b_elems, n);
    for (const auto& ideal : ideals) {
      CHECK_MESSAGE(membership(ideal, a, n).statistic <= membership(ideal, b, n).statistic,
                    ideal.name());
    }
  }
}

TEST_CASE("submeasure axioms on randomized small sets") {
  std::vector<Submeasure> instances;
  instances.push_back(erdos_ulam_submeasure(WeightFn::constant()));
  instances.push_back(erdos_ulam_submeasure(WeightFn::one_over_i()));
  instances.push_back(summable_submeasure(WeightFn::one_over_i()));
  instances.push_back(block_weighted_submeasure(1, 256, WeightFn::constant()));

  const std::int64_t universe = 256;
  for (const auto& phi : instances) {
    CHECK(phi(IndexSet::empty_set(universe)) == 0.0);
    for (int c = 0; c < 30; ++c) {
      auto a = random_subset(derive_seed(7, static_cast<std::uint64_t>(2 * c)), universe, 64);
      auto b = random_subset(derive_seed(7, static_cast<std::uint64_t>(2 * c + 1)), universe, 64);
      auto ab = set_union(a, b);
      // monotone
      CHECK(phi(a) <= phi(ab) + 1e-12);
      CHECK(phi(b) <= phi(ab) + 1e-12);
      // subadditive
      CHECK(phi(ab) <= phi(a) + phi(b) + 1e-12);
      // singletons finite
      auto single = IndexSet::from_elements({1 + static_cast<std::int64_t>(c)}, universe);
      CHECK(std::isfinite(phi(single)));
    }
  }
}

TEST_CASE("natural-density verdicts agree across representations on the corpus") {
  const std::int64_t n = 100000;
  auto gdi = IdealSpec::gdi(GdiSpec::natural_density(n));
  auto density = IdealSpec::density_alpha(0.0);
  for (const auto& [name, set] : density_test_corpus(n)) {
    auto a = membership(density, set, n);
    auto b = membership(gdi, set, n);
    CHECK_MESSAGE(a.verdict == b.verdict,
                  name, ": density stat ", a.statistic, " vs gdi stat ", b.statistic);
  }
}

TEST_CASE("alpha_equivalence_probe: verdicts agree across alpha on the corpus") {
  const std::int64_t n = 100000;
  const double alphas[] = {0.0, 0.5, 1.0, 2.0};
  for (const auto& [name, set] : density_test_corpus(n)) {
    auto rows = alpha_equivalence_probe(set, alphas, n);
    for (std::size_t i = 1; i < rows.size(); ++i)
      CHECK_MESSAGE(rows[i].verdict == rows[0].verdict,
                    name, " alpha=", rows[i].alpha, " stat=", rows[i].statistic,
                    " vs alpha=0 stat=", rows[0].statistic);
  }
}

TEST_CASE("alpha_equivalence_probe pinned examples") {
  const std::int64_t n = 100000;
  const double alphas[] = {0.0, 1.0, 2.0};
  auto squares_rows = alpha_equivalence_probe(IndexSet::named("squares", n), alphas, n);
  for (const auto& r : squares_rows) CHECK(r.verdict == Verdict::InIdeal);

  const double two[] = {0.0, 1.0};
  auto evens_rows = alpha_equivalence_probe(IndexSet::named("evens", n), two, n);
  for (const auto& r : evens_rows) {
    CHECK(r.verdict == Verdict::NotInIdeal);
    CHECK(r.statistic == doctest::Approx(0.5).epsilon(1e-4));
  }

  auto empty_rows = alpha_equivalence_probe(IndexSet::empty_set(n), alphas, n);
  for (const auto& r : empty_rows) CHECK(r.statistic == 0.0);

  const double bad[] = {-1.0};
  CHECK_THROWS_AS(alpha_equivalence_probe(IndexSet::named("evens", n), bad, n),
                  std::domain_error);
}

TEST_CASE("ideal family invariant checks") {
  WeightFn negative{"neg", [](std::int64_t) { return -1.0; }};
  CHECK_THROWS_AS(IdealSpec::erdos_ulam(negative).validate(100), std::invalid_argument);

  // summable weights with convergent partial sums get flagged, not rejected
  auto warnings = IdealSpec::summable(WeightFn::power(-2.0)).validate(10000);
  CHECK(!warnings.empty());

  // exponential weights break f(n) = o(sum f): flagged
  std::vector<double> expw;
  double v = 1.0;
  for (int i = 0; i < 60; ++i, v *= 2.0) expw.push_back(v);
  auto w2 = IdealSpec::erdos_ulam(WeightFn::tabulated(expw, "exp")).validate(60);
  CHECK(!w2.empty());

  // healthy families: no warnings
  CHECK(IdealSpec::erdos_ulam(WeightFn::one_over_i()).validate(100000).empty());
  CHECK(IdealSpec::summable(WeightFn::one_over_i()).validate(100000).empty());
}

TEST_CASE("threshold band must be ordered") {
  MembershipConfig bad;
  bad.in_threshold = 0.05;
  bad.not_in_threshold = 0.01;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_THROWS_AS(membership(IdealSpec::fin(), IndexSet::all(100), 100, bad),
                  std::invalid_argument);
}

TEST_CASE("weight_mass_cut: median index adapts to the weight") {
  CHECK(weight_mass_cut(WeightFn::constant(), 10000, 0.5) == 5000);
  // harmonic mass median sits near sqrt(n)
  auto cut = weight_mass_cut(WeightFn::one_over_i(), 10000, 0.5);
  CHECK(cut >= 60);
  CHECK(cut <= 120);
}

TEST_CASE("gdi_representation covers the density-type families") {
  const std::int64_t n = 100000;
  auto nat = gdi_representation(IdealSpec::density_alpha(0.0), n);
  CHECK(nat.label == "natural-density");
  CHECK(nat.partition->block_range(5).second == 32);

  auto eu = gdi_representation(IdealSpec::erdos_ulam(WeightFn::one_over_i()), n);
  CHECK(eu.partition->block_count() >= 12);
  CHECK(eu.partition->covered_limit() == n);

  CHECK_THROWS_AS(gdi_representation(IdealSpec::fin(), n), std::invalid_argument);
  CHECK_THROWS_AS(gdi_representation(IdealSpec::summable(WeightFn::one_over_i()), n),
                  std::invalid_argument);
}

TEST_CASE("index set catalogue and invariants") {
  CHECK_THROWS_AS(IndexSet::from_elements({3, 2}), std::invalid_argument);
  CHECK_THROWS_AS(IndexSet::from_elements({0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(IndexSet::from_elements({5}, 3), std::invalid_argument);
  CHECK_THROWS_AS(IndexSet::named("nope", 10), std::invalid_argument);

  auto primes = IndexSet::named("primes", 100);
  CHECK(primes.count_up_to(100) == 25);
  CHECK(primes.contains(97));
  CHECK(!primes.contains(91));

  auto evens = IndexSet::named("evens", 100);
  auto mult3 = IndexSet::named("multiples:3", 100);
  CHECK(set_intersection(evens, mult3).count_up_to(100) == 16);  // multiples of 6
  CHECK(set_union(evens, mult3).count_up_to(100) == 50 + 33 - 16);
  CHECK(IndexSet::named("squares", 10000).max_element_up_to(150) == 144);
}
