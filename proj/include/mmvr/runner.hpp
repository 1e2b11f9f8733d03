#pragma once

// Sweep orchestration: channel -> beamforming -> link metrics -> QoS for
// every (scenario, codebook, Es/N0) point, constraint checking, summary
// statistics.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmvr/beamforming.hpp"
#include "mmvr/channel.hpp"
#include "mmvr/config.hpp"
#include "mmvr/linkmetrics.hpp"

namespace mmvr {

/// One broken constraint: (a) users per AP, (b) minimum DL rate, (c) power
/// budget, (d) analog precoder modulus, (e) analog combiner modulus.
struct Violation {
  char constraint = '?';
  int ap = 0;    // 0-based index
  int user = -1; // 0-based index, -1 for AP-wide constraints
  double measured = 0.0;
  double required = 0.0;

  std::string describe() const;
};

/// Hybrid designs of every (user, AP) link for one codebook.
class LinkDesigns {
public:
  LinkDesigns(int users, int aps) : users_(users), aps_(aps), designs_(users * aps) {}

  const BeamformingSolution<double>& at(int user, int ap) const { return designs_.at(user * aps_ + ap); }
  BeamformingSolution<double>& at(int user, int ap) { return designs_.at(user * aps_ + ap); }
  int num_users() const { return users_; }
  int num_aps() const { return aps_; }

private:
  int users_;
  int aps_;
  std::vector<BeamformingSolution<double>> designs_;
};

struct ConstraintInputs {
  std::span<const int> users_per_ap;
  int max_users_per_ap = 0;
  const Eigen::MatrixXd* rate_dl_bps = nullptr;  // users x APs
  double r_min_bps = 0.0;
  std::span<const double> user_power_w;
  std::span<const double> ap_power_w;
  const LinkDesigns* designs = nullptr;
};

inline constexpr double kModulusTolerance = 1e-12;
inline constexpr double kPowerTolerance = 1e-12;  // relative

/// Empty iff all five constraint families hold.
std::vector<Violation> check_constraints(const ConstraintInputs& in);

struct LinkRecord {
  GainAggregation scenario = GainAggregation::Mean;
  int n_tx = 0;
  int n_rf = 0;
  double esn0_db = 0.0;
  int ap = 0;    // AP id
  int user = 0;  // user id
  double rate_dl_bps = 0.0;
  double rate_ul_bps = 0.0;  // mean over subcarriers
  double d_trans_s = 0.0;    // mean over subcarriers
  double d_proc_s = 0.0;
  double d_queue_s = 0.0;
  double d_total_s = 0.0;    // d_trans + d_proc + d_queue
  std::optional<double> utility;  // mean over subcarriers, only when feasible
  double utility_sum = 0.0;       // sum over subcarriers (objective contribution)
  bool feasible = true;
  std::string violations;  // constraint letters joined by ';'
};

struct SweepPoint {
  GainAggregation scenario = GainAggregation::Mean;
  Codebook codebook;
  double esn0_db = 0.0;
  double objective = 0.0;  // sum over links and subcarriers of utility
  bool feasible = true;    // no violations at this point
  std::vector<Violation> violations;
};

struct PointEvaluation {
  SweepPoint point;
  std::vector<LinkRecord> records;
};

/// Everything that does not depend on scenario or Es/N0: topology, UL
/// channels and, per codebook, the DL channels and hybrid designs.
class SweepContext {
public:
  explicit SweepContext(const SweepConfig& config);

  const SweepConfig& config() const { return config_; }
  const NetworkTopology& topology() const { return topology_; }
  const UlChannelCoeffs& uplink() const { return uplink_; }
  const std::vector<Codebook>& codebooks() const { return codebooks_; }
  const LinkDesigns& designs(std::size_t codebook_index) const { return designs_.at(codebook_index); }

  /// Per-subcarrier beamformed DL gains of link (user, AP) for a codebook.
  std::vector<double> dl_gains(std::size_t codebook_index, int user, int ap) const;

  PointEvaluation evaluate(GainAggregation scenario, std::size_t codebook_index,
                           double esn0_db) const;

private:
  SweepConfig config_;
  TrafficModel traffic_;
  NetworkTopology topology_;
  UlChannelCoeffs uplink_;
  std::vector<Codebook> codebooks_;
  std::vector<LinkDesigns> designs_;
};

/// Convenience wrapper that builds a context for a single point.
PointEvaluation evaluate_sweep_point(const SweepConfig& config, GainAggregation scenario,
                                     const Codebook& codebook, double esn0_db);

struct CodebookUtility {
  GainAggregation scenario;
  Codebook codebook;
  double mean_utility = 0.0;  // over feasible records and Es/N0 points
};

struct DelayStatistic {
  GainAggregation scenario;
  Codebook codebook;
  int ap = 0;
  int user = 0;
  double min_d_trans_s = 0.0;
  double mode_d_trans_s = 0.0;
};

struct BestCodebook {
  GainAggregation scenario;
  double esn0_db = 0.0;
  std::optional<Codebook> codebook;  // empty: no feasible codebook
};

struct SweepSummary {
  std::vector<CodebookUtility> utilities;
  std::vector<DelayStatistic> delays;
  std::vector<BestCodebook> best;
};

struct SweepResult {
  std::vector<LinkRecord> records;  // sorted by (scenario, n_tx, n_rf, esn0, ap, user)
  std::vector<SweepPoint> points;
  SweepSummary summary;
};

/// Codebook with the largest objective among violation-free points at
/// this (scenario, Es/N0). Ties go to fewer antennas, then fewer RF chains.
std::optional<Codebook> select_best_codebook(std::span<const SweepPoint> points,
                                             GainAggregation scenario, double esn0_db);

double min_statistic(std::span<const double> values);

/// Lower edge of the most populated bin of width `bin_width`; ties go to
/// the lower bin.
double mode_statistic(std::span<const double> values, double bin_width);

/// Evaluates scenarios x codebooks x Es/N0. `threads` = 0 picks the
/// hardware concurrency; output order does not depend on it.
SweepResult run_sweep(const SweepConfig& config, unsigned threads = 0);

/// Same, reusing an existing context.
SweepResult run_sweep(const SweepContext& context, unsigned threads = 0);

bool record_less(const LinkRecord& a, const LinkRecord& b);

}  // namespace mmvr
