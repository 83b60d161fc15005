#include "idealseq/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace idealseq {

double MetricSpace::distance(std::span<const double> a, std::span<const double> b) const {
  if (dimension == 1) return std::fabs(a[0] - b[0]);
  if (metric == Metric::Euclidean) {
    double s = 0.0;
    for (int k = 0; k < dimension; ++k) {
      double d = a[k] - b[k];
      s += d * d;
    }
    return std::sqrt(s);
  }
  double m = 0.0;
  for (int k = 0; k < dimension; ++k) m = std::max(m, std::fabs(a[k] - b[k]));
  return m;
}

IndicatorSeq IndicatorSeq::named(const std::string& set_name, Point on, Point off) {
  IndicatorSeq s;
  s.make_set = [set_name](std::int64_t n) { return IndexSet::named(set_name, n); };
  s.set_label = set_name;
  s.on = std::move(on);
  s.off = std::move(off);
  return s;
}

namespace {

void check_finite(const Point& p) {
  for (double c : p.coords)
    if (!std::isfinite(c)) throw std::invalid_argument("point with non-finite coordinate");
}

// Dyadic rationals of [0,1] in level order: 0, 1, 1/2, 1/4, 3/4, 1/8, ...
// index is 1-based; levels 0..9 cover exactly the 513-point 1/512 net.
double dyadic_level_value(std::int64_t index) {
  if (index == 1) return 0.0;
  if (index == 2) return 1.0;
  std::int64_t rest = index - 2;         // position within levels >= 1
  std::int64_t level = 1, level_size = 1;
  while (rest > level_size) {
    rest -= level_size;
    ++level;
    level_size *= 2;
  }
  return static_cast<double>(2 * rest - 1) / std::pow(2.0, static_cast<double>(level));
}

constexpr std::int64_t kNetSize = 513;  // levels 0..9

std::int64_t two_adic_valuation(std::int64_t m) {
  std::int64_t v = 0;
  while (m % 2 == 0) {
    m /= 2;
    ++v;
  }
  return v;
}

// Odd slots and shallow even slots cycle the 513-value net (flat positive
// density per value); even slots whose half-index is divisible by 2^6 carry
// one value of levels >= 10, value t at slot density 2^-(t+7). Every
// enumerated rational recurs with positive density and the transition from
// net-level to deep-level frequencies stays far from the verdict thresholds.
double rational_enumeration_value(const RationalEnumerationSeq& spec, std::int64_t n) {
  double v;
  if (n % 2 == 1) {
    std::int64_t m = (n + 1) / 2;
    v = dyadic_level_value(1 + (m - 1) % kNetSize);
  } else {
    std::int64_t m = n / 2;
    std::int64_t val = two_adic_valuation(m);
    if (val < 6) {
      v = dyadic_level_value(1 + (m - 1) % kNetSize);
    } else {
      v = dyadic_level_value(kNetSize + (val - 5));
    }
  }
  return spec.lo + v * (spec.hi - spec.lo);
}

std::vector<Point> parse_tabulated(const std::string& path, std::int64_t n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("tabulated sequence: cannot open " + path);
  std::vector<Point> pts;
  std::string line;
  while (static_cast<std::int64_t>(pts.size()) < n && std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> coords;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) coords.push_back(std::stod(cell));
    if (coords.empty()) continue;
    pts.emplace_back(std::move(coords));
  }
  if (static_cast<std::int64_t>(pts.size()) < n)
    throw std::runtime_error("tabulated sequence: file holds fewer than requested entries");
  return pts;
}

struct Generator {
  const SequenceSpec& spec;
  std::int64_t n;

  SequencePrefix operator()(const ConstantSeq& c) const {
    check_finite(c.value);
    SequencePrefix p = frame(c.value.dim());
    for (std::int64_t i = 0; i < n; ++i)
      for (int k = 0; k < c.value.dim(); ++k) p.data.push_back(c.value.coords[k]);
    return p;
  }

  SequencePrefix operator()(const IndicatorSeq& s) const {
    check_finite(s.on);
    check_finite(s.off);
    if (s.on.dim() != s.off.dim())
      throw std::invalid_argument("indicator sequence: on/off dimension mismatch");
    IndexSet set = s.make_set(n);
    SequencePrefix p = frame(s.on.dim());
    for (std::int64_t i = 1; i <= n; ++i) {
      const Point& v = set.contains(i) ? s.on : s.off;
      for (double c : v.coords) p.data.push_back(c);
    }
    return p;
  }

  SequencePrefix operator()(const RationalEnumerationSeq& s) const {
    if (!(s.hi > s.lo)) throw std::invalid_argument("rational enumeration: empty interval");
    SequencePrefix p = frame(1);
    for (std::int64_t i = 1; i <= n; ++i) p.data.push_back(rational_enumeration_value(s, i));
    return p;
  }

  SequencePrefix operator()(const BlockPatternSeq& s) const {
    if (s.levels.empty()) throw std::invalid_argument("block pattern: no levels");
    int dim = s.levels.front().dim();
    for (const Point& l : s.levels) {
      check_finite(l);
      if (l.dim() != dim) throw std::invalid_argument("block pattern: level dimension mismatch");
    }
    SequencePrefix p = frame(dim);
    std::int64_t written = 0, block_len = 1;
    std::size_t level = 0;
    while (written < n) {
      const Point& v = s.levels[level];
      for (std::int64_t k = 0; k < block_len && written < n; ++k, ++written)
        for (double c : v.coords) p.data.push_back(c);
      level = (level + 1) % s.levels.size();
      block_len *= 2;
      if (s.length_cap > 0) block_len = std::min(block_len, s.length_cap);
    }
    return p;
  }

  SequencePrefix operator()(const TabulatedSeq& s) const {
    auto pts = parse_tabulated(s.path, n);
    int dim = pts.front().dim();
    for (const Point& q : pts) {
      check_finite(q);
      if (q.dim() != dim) throw std::runtime_error("tabulated sequence: ragged dimensions");
    }
    SequencePrefix p = frame(dim);
    for (const Point& q : pts)
      for (double c : q.coords) p.data.push_back(c);
    return p;
  }

  SequencePrefix operator()(const PowerDecaySeq& s) const {
    if (!(s.exponent > 0.0)) throw std::invalid_argument("power decay: exponent must be > 0");
    SequencePrefix p = frame(1);
    for (std::int64_t i = 1; i <= n; ++i)
      p.data.push_back(std::pow(static_cast<double>(i), -s.exponent));
    return p;
  }

  SequencePrefix frame(int dim) const {
    SequencePrefix p;
    p.space = spec.space;
    p.space.dimension = dim;
    p.size = n;
    p.label = spec.label;
    p.data.reserve(static_cast<std::size_t>(n) * dim);
    return p;
  }
};

}  // namespace

SequencePrefix generate(const SequenceSpec& spec, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("generate: n must be >= 1");
  return std::visit(Generator{spec, n}, spec.generator);
}

std::vector<Point> TruthSet::materialize(double spacing) const {
  if (!is_interval) return points;
  if (!(spacing > 0.0)) throw std::invalid_argument("TruthSet: spacing must be > 0");
  std::vector<Point> out;
  for (double v = lo; v < hi + spacing / 2; v += spacing) out.push_back(Point{std::min(v, hi)});
  return out;
}

namespace {

SequenceSpec one_dim(std::string label,
                     std::variant<ConstantSeq, IndicatorSeq, RationalEnumerationSeq,
                                  BlockPatternSeq, TabulatedSeq, PowerDecaySeq>
                         gen) {
  SequenceSpec s;
  s.generator = std::move(gen);
  s.space = MetricSpace{1, Metric::Euclidean, "R^1, euclidean"};
  s.label = std::move(label);
  return s;
}

std::vector<ZooEntry> build_zoo() {
  std::vector<ZooEntry> z;

  {
    ZooEntry e;
    e.name = "constant-zero";
    e.spec = one_dim(e.name, ConstantSeq{Point{0.0}});
    e.truth_l = e.truth_gamma0 = e.truth_lambda0 = TruthSet::of_points({Point{0.0}});
    e.justification = "constant sequence: the single value is the only limit point";
    e.witness_targets = {Point{0.0}};
    e.donor_rule = DonorRule::AllOnes;
    z.push_back(std::move(e));
  }
  {
    ZooEntry e;
    e.name = "squares-indicator";
    e.spec = one_dim(e.name, IndicatorSeq::named("squares", Point{1.0}, Point{0.0}));
    e.truth_l = TruthSet::of_points({Point{0.0}, Point{1.0}});
    e.truth_gamma0 = TruthSet::of_points({Point{0.0}});
    e.truth_lambda0 = TruthSet::of_points({Point{0.0}});
    e.justification =
        "perfect squares have natural density 0 (count floor(sqrt(n))/n), so the value 1 "
        "recurs infinitely often but on a density-zero set";
    e.witness_targets = {Point{0.0}, Point{1.0}};
    z.push_back(std::move(e));
  }
  {
    ZooEntry e;
    e.name = "evens-indicator";
    e.spec = one_dim(e.name, IndicatorSeq::named("evens", Point{1.0}, Point{0.0}));
    e.truth_l = e.truth_gamma0 = e.truth_lambda0 =
        TruthSet::of_points({Point{0.0}, Point{1.0}});
    e.justification = "both residue classes mod 2 have density 1/2";
    e.witness_targets = {Point{0.0}, Point{1.0}};
    z.push_back(std::move(e));
  }
  {
    ZooEntry e;
    e.name = "multiples-of-three-indicator";
    e.spec = one_dim(e.name, IndicatorSeq::named("multiples:3", Point{1.0}, Point{0.0}));
    e.truth_l = e.truth_gamma0 = e.truth_lambda0 =
        TruthSet::of_points({Point{0.0}, Point{1.0}});
    e.justification = "the level sets have densities 1/3 and 2/3";
    e.witness_targets = {Point{0.0}, Point{1.0}};
    z.push_back(std::move(e));
  }
  {
    ZooEntry e;
    e.name = "inverse-n";
    e.spec = one_dim(e.name, PowerDecaySeq{1.0});
    e.truth_l = e.truth_gamma0 = e.truth_lambda0 = TruthSet::of_points({Point{0.0}});
    e.justification = "1/n converges to 0; every subsequence converges to 0";
    e.witness_targets = {Point{0.0}};
    e.donor_rule = DonorRule::AllOnes;
    // 1/n packs many near-zero values at gaps below the finest resolution;
    // a higher hit floor keeps accepted points within tolerance of 0.
    e.min_hits = 400;
    z.push_back(std::move(e));
  }
  {
    ZooEntry e;
    e.name = "two-level-blocks";
    e.spec = one_dim(e.name, BlockPatternSeq{{Point{0.0}, Point{1.0}}, 1024});
    e.truth_l = e.truth_gamma0 = e.truth_lambda0 =
        TruthSet::of_points({Point{0.0}, Point{1.0}});
    e.justification =
        "alternating runs capped at length 1024: beyond the cap every long index range "
        "carries both values with frequency 1/2";
    e.witness_targets = {Point{0.0}, Point{1.0}};
    z.push_back(std::move(e));
  }
  {
    ZooEntry e;
    e.name = "rational-enumeration-[0,1]";
    e.spec = one_dim(e.name, RationalEnumerationSeq{0.0, 1.0});
    e.truth_l = e.truth_gamma0 = e.truth_lambda0 = TruthSet::interval(0.0, 1.0);
    e.justification =
        "each of the 513 net rationals recurs with density about 1/513 (odd plus shallow even "
        "slots) and the t-th deeper dyadic value recurs with density 2^-(t+7), so every "
        "enumerated rational has positive density and the values are dense in [0,1]";
    // witness targets come from the L estimate
    e.levels = 4;
    z.push_back(std::move(e));
  }

  return z;
}

}  // namespace

const std::vector<ZooEntry>& zoo_catalogue() {
  static const std::vector<ZooEntry> z = build_zoo();
  return z;
}

const ZooEntry& zoo(const std::string& name) {
  for (const auto& e : zoo_catalogue()) {
    if (e.name == name) return e;
  }
  if (name == "rational-enumeration-01") return zoo("rational-enumeration-[0,1]");
  throw std::invalid_argument("zoo: unknown entry '" + name + "'");
}

}  // namespace idealseq
