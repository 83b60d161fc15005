#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "idealseq/ideal.hpp"
#include "idealseq/io.hpp"
#include "idealseq/limitset.hpp"
#include "idealseq/omega.hpp"
#include "idealseq/sequence.hpp"

namespace idealseq {

struct ExperimentConfig {
  std::string sequence_name = "squares-indicator";
  std::string ideal_name = "I0";
  std::int64_t n = 100000;
  bool n_explicit = false;  // alpha = -1 runs raise the default n to 10^6
  std::int64_t trials = 200;
  std::uint64_t seed = 20260801;
  NeighborhoodSchedule schedule;
  bool schedule_explicit = false;  // zoo entries carry calibrated parameters
  MembershipConfig thresholds;
  QGrid qgrid;
  std::int64_t min_hits = 20;
  bool min_hits_explicit = false;
  std::string out_path;
  enum class Format { Tabular, Structured } format = Format::Structured;
  bool parallel_trials = true;
  bool compute_lambda = true;

  static ExperimentConfig load(const std::string& path);
  static ExperimentConfig from_json_text(const std::string& text);
  void apply_defaults();  // zoo calibration, alpha = -1 size bump
  void validate() const;

  SequenceSpec sequence() const;
  IdealSpec ideal() const;
  double compare_tolerance() const { return 2.0 * schedule.finest(); }
  bool sequence_is_zoo() const;
};

// Lambda estimation routed per family: Fin via the ordinary-limit-point
// estimator, F-sigma (summable) via the cluster-point estimator, density /
// Erdos-Ulam / GDI via the generalized-density machinery.
LimitSetReport estimate_lambda_for_ideal(const SequencePrefix& x, const IdealSpec& ideal,
                                         const NeighborhoodSchedule& schedule,
                                         const QGrid& qgrid, const MembershipConfig& config,
                                         std::int64_t min_hits);

struct TrialRecord {
  std::int64_t trial = 0;
  std::uint64_t trial_seed = 0;
  std::int64_t subseq_len = 0;
  bool voided = false;
  bool gamma_equal = false;
  bool lambda_equal = false;
  std::int64_t gamma_mismatch = 0;   // unmatched points, both directions
  std::int64_t lambda_mismatch = 0;
  std::int64_t gamma_undecided = 0;  // undecided candidates in the trial's report
};

struct PreservationSummary {
  std::int64_t trials = 0;
  std::int64_t voided = 0;
  double fraction_gamma_preserved = 0.0;
  double fraction_lambda_preserved = 0.0;
  bool lambda_computed = false;
  std::vector<Point> gamma_base, lambda_base;
  std::vector<TrialRecord> records;
};

PreservationSummary run_montecarlo(const ExperimentConfig& config);

struct DichotomyReport {
  LimitSetReport l, gamma, lambda;
  bool preserving = false;  // Gamma == L at tolerance
  double tolerance = 0.0;
  SelectionReport witness;
  LimitSetReport witness_gamma, witness_lambda;
  SetComparison witness_gamma_vs_l;       // category side: constructed omega
  SetComparison witness_gamma_vs_lambda;  // cluster = limit points on the witness
  PreservationSummary random_side;        // measure side: sampled omega
};

DichotomyReport run_dichotomy(const ExperimentConfig& config,
                              const std::vector<Point>* targets_override = nullptr);

struct CorollaryFinReport {
  LimitSetReport l, witness_l;
  SelectionReport witness;
  SetComparison witness_vs_base;
  double tolerance = 0.0;
  std::int64_t trials = 0, voided = 0;
  double fraction_l_preserved = 0.0;
  std::vector<TrialRecord> records;
};

CorollaryFinReport run_corollary_fin(const ExperimentConfig& config);

struct OracleResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct OracleSuiteResult {
  std::vector<OracleResult> results;
  bool all_pass() const;
};

OracleSuiteResult run_oracle_suite(std::uint64_t seed = 20260801);

// The 20-set corpus used by the cross-representation and alpha-equivalence
// checks: residue classes, sparse power sets, primes, and combinations.
std::vector<std::pair<std::string, IndexSet>> density_test_corpus(std::int64_t n_max);

// Witness targets + donors for a sequence: zoo-declared targets when
// available, the accepted L points otherwise; donors follow the entry's rule.
std::vector<std::pair<Point, OmegaPrefix>> witness_inputs(const SequencePrefix& x,
                                                          const std::vector<Point>& targets,
                                                          DonorRule rule,
                                                          const NeighborhoodSchedule& schedule);

// --- report serialization ----------------------------------------------------

SNode report_to_structured(const LimitSetReport& rep);
std::string report_to_tabular(const LimitSetReport& rep);
SNode summary_to_structured(const ExperimentConfig& config, const PreservationSummary& s);
std::string summary_to_tabular(const PreservationSummary& s);
SNode dichotomy_to_structured(const ExperimentConfig& config, const DichotomyReport& rep);
SNode corollary_to_structured(const ExperimentConfig& config, const CorollaryFinReport& rep);
SNode selection_to_structured(const SelectionReport& sel);
SNode config_echo(const ExperimentConfig& config);
SNode zoo_catalogue_to_structured();

}  // namespace idealseq
