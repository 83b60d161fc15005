#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "idealseq/index_set.hpp"

namespace idealseq {

struct Point {
  std::vector<double> coords;

  Point() = default;
  Point(std::initializer_list<double> c) : coords(c) {}
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}

  int dim() const { return static_cast<int>(coords.size()); }
  bool operator==(const Point& o) const { return coords == o.coords; }
  bool operator<(const Point& o) const { return coords < o.coords; }
};

enum class Metric { Euclidean, MaxCoordinate };

struct MetricSpace {
  int dimension = 1;
  Metric metric = Metric::Euclidean;
  std::string description = "R^1, euclidean";

  double distance(std::span<const double> a, std::span<const double> b) const;
};

// --- sequence generators ---------------------------------------------------

struct ConstantSeq {
  Point value;
};

struct IndicatorSeq {
  std::function<IndexSet(std::int64_t)> make_set;  // set materialized at bound n
  std::string set_label;
  Point on, off;

  static IndicatorSeq named(const std::string& set_name, Point on, Point off);
};

enum class RationalOrdering { DyadicLevelInterleaved };

// Enumeration of the rationals of [lo, hi] arranged so the first 513 dyadic
// levels cycle with flat frequency on odd slots while deeper levels appear on
// even slots with geometrically decaying frequency; every enumerated rational
// recurs with positive density.
struct RationalEnumerationSeq {
  double lo = 0.0, hi = 1.0;
  RationalOrdering ordering = RationalOrdering::DyadicLevelInterleaved;
};

// Consecutive blocks cycling through the level values; block lengths double,
// optionally capped.
struct BlockPatternSeq {
  std::vector<Point> levels;
  std::int64_t length_cap = 0;  // 0: uncapped doubling
};

struct TabulatedSeq {
  std::string path;
};

// x_n = n^(-exponent)
struct PowerDecaySeq {
  double exponent = 1.0;
};

struct SequenceSpec {
  std::variant<ConstantSeq, IndicatorSeq, RationalEnumerationSeq, BlockPatternSeq,
               TabulatedSeq, PowerDecaySeq>
      generator;
  MetricSpace space;
  std::string label;
};

struct SequencePrefix {
  MetricSpace space;
  std::int64_t size = 0;
  std::vector<double> data;  // row-major, size * dimension
  std::string label;

  std::span<const double> at(std::int64_t n) const {  // 1-based
    return {data.data() + (n - 1) * space.dimension,
            static_cast<std::size_t>(space.dimension)};
  }
};

SequencePrefix generate(const SequenceSpec& spec, std::int64_t n);

// --- zoo -------------------------------------------------------------------

// Ground truth set: finite points or an interval of R (reported as an eps-net
// at whatever resolution the consumer materializes).
struct TruthSet {
  std::vector<Point> points;
  bool is_interval = false;
  double lo = 0.0, hi = 0.0;

  static TruthSet of_points(std::vector<Point> p) { return {std::move(p), false, 0, 0}; }
  static TruthSet interval(double lo, double hi) { return {{}, true, lo, hi}; }
  std::vector<Point> materialize(double spacing) const;
};

enum class DonorRule { AllOnes, GreedyFinest };

struct ZooEntry {
  std::string name;
  SequenceSpec spec;
  TruthSet truth_l, truth_gamma0, truth_lambda0;
  std::string justification;
  // Witness construction inputs: fixed targets, or (when empty) the points
  // accepted by the L estimator.
  std::vector<Point> witness_targets;
  DonorRule donor_rule = DonorRule::GreedyFinest;
  // Estimator parameters this entry is calibrated for.
  double eps0 = 0.5;
  int levels = 8;
  std::int64_t min_hits = 20;
};

const std::vector<ZooEntry>& zoo_catalogue();
const ZooEntry& zoo(const std::string& name);

}  // namespace idealseq
