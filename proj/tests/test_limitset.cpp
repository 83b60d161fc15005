#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "idealseq/harness.hpp"
#include "idealseq/limitset.hpp"
#include "idealseq/prng.hpp"

using namespace idealseq;

namespace {

SequencePrefix zoo_prefix(const std::string& name, std::int64_t n) {
  return generate(zoo(name).spec, n);
}

bool has_point_near(const std::vector<Point>& pts, double v, double tol) {
  for (const auto& p : pts)
    if (std::fabs(p.coords[0] - v) <= tol) return true;
  return false;
}

bool all_near_some(const std::vector<Point>& pts, std::vector<double> centers, double tol) {
  for (const auto& p : pts) {
    bool ok = false;
    for (double c : centers) ok = ok || std::fabs(p.coords[0] - c) <= tol;
    if (!ok) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("candidate_grid covers the bounding box and picks up heavy values") {
  auto x = zoo_prefix("squares-indicator", 10000);
  NeighborhoodSchedule sched;
  auto grid = candidate_grid(x, sched, 20);
  CHECK(grid.size() == 513);  // [0,1] at 2^-9 spacing; 0 and 1 are net points
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(grid.front() == Point{0.0});
  CHECK(grid.back() == Point{1.0});

  // degenerate schedule: grid beyond the size guard
  NeighborhoodSchedule fine{0.5, 40};
  CHECK_THROWS_AS(candidate_grid(x, fine, 20), std::invalid_argument);
}

TEST_CASE("estimate_L on the pinned examples") {
  NeighborhoodSchedule sched;
  auto constant = zoo_prefix("constant-zero", 1000);
  auto rep = estimate_L(constant, sched, 20);
  CHECK(rep.accepted == std::vector<Point>{Point{0.0}});

  auto squares = zoo_prefix("squares-indicator", 10000);
  auto rep2 = estimate_L(squares, sched, 20);
  double tol = 2 * sched.finest();
  CHECK(has_point_near(rep2.accepted, 0.0, tol));
  CHECK(has_point_near(rep2.accepted, 1.0, tol));
  CHECK(all_near_some(rep2.accepted, {0.0, 1.0}, tol));

  // 1/n: each value recurs once; only the accumulation point survives
  auto inv = zoo_prefix("inverse-n", 10000);
  auto rep3 = estimate_L(inv, sched, 400);
  CHECK(!rep3.accepted.empty());
  CHECK(all_near_some(rep3.accepted, {0.0}, tol));

  CHECK_THROWS_AS(estimate_L(constant, sched, 0), std::invalid_argument);
  CHECK_THROWS_AS(estimate_L(constant, sched, 5000), std::invalid_argument);
}

TEST_CASE("estimate_Gamma: squares under natural density") {
  NeighborhoodSchedule sched;
  const std::int64_t n = 100000;
  auto x = zoo_prefix("squares-indicator", n);
  auto rep = estimate_Gamma(x, IdealSpec::density_alpha(0.0), sched);
  double tol = 2 * sched.finest();
  CHECK(all_near_some(rep.accepted, {0.0}, tol));
  CHECK(has_point_near(rep.accepted, 0.0, tol));
  CHECK(!has_point_near(rep.accepted, 1.0, 0.4));
  CHECK(rep.undecided.empty());

  // candidate at exactly 1.0 is rejected with the exact-count statistic 1/224
  for (const auto& cs : rep.per_point) {
    if (cs.point == Point{1.0}) {
      CHECK(cs.status == 0);
      CHECK(cs.stats.back() == doctest::Approx(1.0 / 224.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("estimate_Gamma: at smaller scale the squares value lands in the open band") {
  NeighborhoodSchedule sched;
  auto x = zoo_prefix("squares-indicator", 10000);
  auto rep = estimate_Gamma(x, IdealSpec::density_alpha(0.0), sched);
  // window max of floor(sqrt(m))/m over [5000,10000] is 1/71: inside the band
  CHECK(has_point_near(rep.undecided, 1.0, 0.01));
}

TEST_CASE("estimate_Gamma: constant and two-level sequences") {
  NeighborhoodSchedule sched;
  auto constant = zoo_prefix("constant-zero", 2000);
  for (const auto& ideal :
       {IdealSpec::fin(), IdealSpec::density_alpha(0.0),
        IdealSpec::summable(WeightFn::one_over_i())}) {
    auto rep = estimate_Gamma(constant, ideal, sched);
    CHECK(rep.accepted == std::vector<Point>{Point{0.0}});
  }

  auto evens = zoo_prefix("evens-indicator", 20000);
  auto rep = estimate_Gamma(evens, IdealSpec::density_alpha(0.0), sched);
  double tol = 2 * sched.finest();
  CHECK(has_point_near(rep.accepted, 0.0, tol));
  CHECK(has_point_near(rep.accepted, 1.0, tol));
  CHECK(all_near_some(rep.accepted, {0.0, 1.0}, tol));
}

TEST_CASE("v_ell_statistic: subsequence positions index the blocks") {
  const std::int64_t n = 20000;
  auto x = zoo_prefix("constant-zero", n);
  auto gdi = GdiSpec::natural_density(n);
  NeighborhoodSchedule sched;

  auto stats = v_ell_statistic(x, OmegaPrefix::all_ones(), Point{0.0}, gdi, sched);
  REQUIRE(stats.size() == static_cast<std::size_t>(sched.levels) + 1);
  for (double s : stats) CHECK(s == 1.0);

  // all-ones omega reduces to the Gamma statistic of x itself
  auto gamma = estimate_Gamma(x, IdealSpec::gdi(gdi), sched);
  for (const auto& cs : gamma.per_point)
    if (cs.point == Point{0.0})
      for (std::size_t m = 0; m < stats.size(); ++m) CHECK(cs.stats[m] == stats[m]);

  // selecting only squares from the squares indicator: every value is 1
  auto sq = zoo_prefix("squares-indicator", n);
  auto omega = greedy_donor(sq, Point{1.0}, 0.25);
  auto stats1 = v_ell_statistic(sq, omega, Point{1.0}, gdi, sched);
  for (double s : stats1) CHECK(s == 1.0);

  OmegaPrefix none;
  none.digits.assign(static_cast<std::size_t>(n), 0);
  CHECK_THROWS_AS(v_ell_statistic(sq, none, Point{0.0}, gdi, sched), std::domain_error);
}

TEST_CASE("estimate_Lambda_gdi on the pinned examples") {
  NeighborhoodSchedule sched;
  const std::int64_t n = 100000;
  auto gdi = GdiSpec::natural_density(n);
  double tol = 2 * sched.finest();

  auto constant = zoo_prefix("constant-zero", n);
  auto rep = estimate_Lambda_gdi(constant, gdi, sched);
  CHECK(rep.accepted == std::vector<Point>{Point{0.0}});
  CHECK(rep.per_point.front().passing_q == 0.5);  // largest level of the grid

  auto squares = zoo_prefix("squares-indicator", n);
  auto rep2 = estimate_Lambda_gdi(squares, gdi, sched);
  CHECK(all_near_some(rep2.accepted, {0.0}, tol));
  CHECK(!has_point_near(rep2.accepted, 1.0, 0.4));

  auto evens = zoo_prefix("evens-indicator", n);
  auto rep3 = estimate_Lambda_gdi(evens, gdi, sched);
  CHECK(has_point_near(rep3.accepted, 0.0, tol));
  CHECK(has_point_near(rep3.accepted, 1.0, tol));
  for (const auto& cs : rep3.per_point) {
    if (cs.point == Point{0.0} || cs.point == Point{1.0}) {
      CHECK(cs.status == 1);
      CHECK(cs.passing_q == 0.5);  // block measures are exactly 1/2
    }
  }

  QGrid empty;
  empty.relative.clear();
  CHECK_THROWS_AS(estimate_Lambda_gdi(evens, gdi, sched, empty), std::invalid_argument);
}

TEST_CASE("q-monotonicity: higher levels accept fewer points") {
  const std::int64_t n = 50000;
  auto x = zoo_prefix("multiples-of-three-indicator", n);
  auto gdi = GdiSpec::natural_density(n);
  NeighborhoodSchedule sched;
  QGrid lo, hi;
  lo.relative = {0.25};
  hi.relative = {0.5};
  auto rep_lo = estimate_Lambda_gdi(x, gdi, sched, lo);
  auto rep_hi = estimate_Lambda_gdi(x, gdi, sched, hi);
  CHECK(std::includes(rep_lo.accepted.begin(), rep_lo.accepted.end(),
                      rep_hi.accepted.begin(), rep_hi.accepted.end()));
  // value 1 sits at block measure 1/3: passes 0.25, fails 0.5
  CHECK(has_point_near(rep_lo.accepted, 1.0, 0.01));
  CHECK(!has_point_near(rep_hi.accepted, 1.0, 0.01));
  CHECK(has_point_near(rep_hi.accepted, 0.0, 0.01));  // value 0 at 2/3
}

TEST_CASE("extract_lambda_witness succeeds where block measures allow") {
  NeighborhoodSchedule sched;
  const std::int64_t n = 100000;
  auto gdi = GdiSpec::natural_density(n);

  auto constant = zoo_prefix("constant-zero", n);
  auto w = extract_lambda_witness(constant, Point{0.0}, gdi, 0.5, sched);
  REQUIRE(w.success);
  CHECK(w.rows.size() == static_cast<std::size_t>(sched.levels) + 1);
  int prev_block = 0;
  int prev_r = 0;
  for (const auto& row : w.rows) {
    CHECK(row.block > prev_block);
    CHECK(row.r > prev_r);
    CHECK(row.value >= row.threshold);
    CHECK(row.threshold == doctest::Approx(0.5 * (1.0 - std::ldexp(1.0, -row.r))));
    prev_block = row.block;
    prev_r = row.r;
  }
  CHECK(!w.selected.empty());

  auto evens = zoo_prefix("evens-indicator", n);
  auto we = extract_lambda_witness(evens, Point{1.0}, gdi, 0.4, sched);
  REQUIRE(we.success);
  for (const auto& row : we.rows) {
    CHECK(row.value == 0.5);  // exact per-block count
    CHECK(row.value >= 0.4 * (1.0 - std::ldexp(1.0, -row.r)));
  }
}

TEST_CASE("extract_lambda_witness fails with diagnostics on the squares value") {
  NeighborhoodSchedule sched;
  const std::int64_t n = 100000;
  auto squares = zoo_prefix("squares-indicator", n);
  auto w = extract_lambda_witness(squares, Point{1.0}, GdiSpec::natural_density(n), 0.1, sched);
  CHECK(!w.success);
  CHECK(!w.failure.empty());
  CHECK(w.failure.find("level m=") != std::string::npos);
}

TEST_CASE("brute_force_lambda_oracle on hand-built instances") {
  SequencePrefix x;
  x.space = MetricSpace{};
  x.size = 12;
  x.data = {0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  GdiSpec gdi;
  gdi.partition = std::make_shared<BlockPartition>(BlockPartition::from_ends({4, 8, 12}));
  gdi.weight = WeightFn::constant();
  gdi.label = "tiny";

  CHECK(brute_force_lambda_oracle(x, gdi, Point{0.5}, 1.0, 0.1));
  CHECK(!brute_force_lambda_oracle(x, gdi, Point{0.0}, 0.25, 0.1));  // nothing in the ball

  // one passing block: values near 0 fill exactly the second block
  SequencePrefix y = x;
  y.data = {1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 0, 1};
  CHECK(brute_force_lambda_oracle(y, gdi, Point{0.0}, 0.9, 0.1));
  CHECK(!brute_force_lambda_oracle(y, gdi, Point{0.5}, 0.9, 0.1));  // nothing near 0.5

  // matches the streaming acceptance rule at a single resolution
  NeighborhoodSchedule one_level{0.1, 0};
  CHECK(lambda_accepts(y, gdi, Point{0.0}, 0.9, one_level, 1e-9) ==
        brute_force_lambda_oracle(y, gdi, Point{0.0}, 0.9, 0.1));

  SequencePrefix big;
  big.space = MetricSpace{};
  big.size = 25;
  big.data.assign(25, 0.0);
  CHECK_THROWS_AS(brute_force_lambda_oracle(big, gdi, Point{0.0}, 0.5, 0.1),
                  std::invalid_argument);
}

TEST_CASE("compare_sets: Hausdorff at tolerance") {
  MetricSpace space;
  std::vector<Point> a{Point{0.0}}, b{Point{0.0}, Point{1.0}};
  CHECK(compare_sets(a, a, 0.01, space).equal);

  auto cmp = compare_sets(a, b, 0.1, space);
  CHECK(!cmp.equal);
  CHECK(cmp.a_minus_b.empty());
  CHECK(cmp.b_minus_a == std::vector<Point>{Point{1.0}});
  CHECK(cmp.hausdorff == doctest::Approx(1.0));

  // eps-net against a finer net: equal at tolerance eps
  std::vector<Point> coarse, fine;
  for (double v = 0.0; v <= 1.0001; v += 0.125) coarse.push_back(Point{v});
  for (double v = 0.0; v <= 1.0001; v += 0.0625) fine.push_back(Point{v});
  CHECK(compare_sets(coarse, fine, 0.125, space).equal);
}

TEST_CASE("inclusion chain at small scale across ideals and omegas") {
  const std::int64_t n = 20000;
  auto x = zoo_prefix("multiples-of-three-indicator", n);
  NeighborhoodSchedule sched;
  MembershipConfig config;
  QGrid qgrid;

  std::vector<OmegaPrefix> omegas{OmegaPrefix::all_ones(), sample_uniform(1, n),
                                  sample_uniform(2, n)};
  std::vector<std::pair<Point, OmegaPrefix>> targets;
  targets.emplace_back(Point{0.0}, greedy_donor(x, Point{0.0}, sched.finest()));
  targets.emplace_back(Point{1.0}, greedy_donor(x, Point{1.0}, sched.finest()));
  omegas.push_back(generic_witness(x, targets).omega);

  std::vector<IdealSpec> ideals;
  ideals.push_back(IdealSpec::fin());
  ideals.push_back(IdealSpec::density_alpha(0.0));
  ideals.push_back(IdealSpec::erdos_ulam(WeightFn::one_over_i()));
  ideals.push_back(IdealSpec::summable(WeightFn::one_over_i()));

  for (const auto& omega : omegas) {
    auto y = subsequence(x, omega);
    auto l = estimate_L(y, sched, 20);
    for (const auto& ideal : ideals) {
      auto g = estimate_Gamma(y, ideal, sched, config);
      auto lam = estimate_lambda_for_ideal(y, ideal, sched, qgrid, config, 20);
      CHECK_MESSAGE(std::includes(g.accepted.begin(), g.accepted.end(),
                                  lam.accepted.begin(), lam.accepted.end()),
                    "Lambda inside Gamma, ", ideal.name());
      CHECK_MESSAGE(std::includes(l.accepted.begin(), l.accepted.end(), g.accepted.begin(),
                                  g.accepted.end()),
                    "Gamma inside L, ", ideal.name());
    }
  }
}

TEST_CASE("Gamma under Fin accepts exactly the L set on the zoo") {
  for (const auto& e : zoo_catalogue()) {
    auto x = generate(e.spec, 50000);
    NeighborhoodSchedule sched{e.eps0, e.levels};
    MembershipConfig config;
    config.fin_tail_floor = e.min_hits;
    auto l = estimate_L(x, sched, e.min_hits);
    auto g = estimate_Gamma(x, IdealSpec::fin(), sched, config);
    CHECK_MESSAGE(l.accepted == g.accepted, e.name);
  }
}

TEST_CASE("grid refinement can only shrink the accepted set (soft check)") {
  auto x = zoo_prefix("squares-indicator", 10000);
  NeighborhoodSchedule coarse{0.5, 4}, fine{0.5, 6};
  auto rc = estimate_Gamma(x, IdealSpec::density_alpha(0.0), coarse);
  auto rf = estimate_Gamma(x, IdealSpec::density_alpha(0.0), fine);
  double tol = 2 * coarse.finest();
  for (const auto& p : rf.accepted) {
    bool covered = false;
    for (const auto& q : rc.accepted)
      covered = covered || std::fabs(p.coords[0] - q.coords[0]) <= tol;
    WARN_MESSAGE(covered, "refined point escaped the coarse accepted set");
  }
}

TEST_CASE("two-dimensional candidate grid and estimators") {
  SequenceSpec s;
  s.generator = IndicatorSeq::named("evens", Point{1.0, 0.0}, Point{0.0, 1.0});
  s.space = MetricSpace{2, Metric::Euclidean, "R^2"};
  s.label = "evens-2d";
  auto x = generate(s, 5000);
  NeighborhoodSchedule sched{0.5, 3};
  auto rep = estimate_L(x, sched, 20);
  bool found_on = false, found_off = false;
  for (const auto& p : rep.accepted) {
    double d_on = std::hypot(p.coords[0] - 1.0, p.coords[1]);
    double d_off = std::hypot(p.coords[0], p.coords[1] - 1.0);
    found_on = found_on || d_on <= 2 * sched.finest();
    found_off = found_off || d_off <= 2 * sched.finest();
  }
  CHECK(found_on);
  CHECK(found_off);
}
