#pragma once

// Delay chain (transmission + processing + M/M/1 queue) and the
// multi-attribute utility built on top of it.

#include <span>

namespace mmvr {

struct TrafficModel {
  double s_bits = 512.0 * 24.0;  // DL payload per frame
  double a_bits = 6.0;           // UL tracking vector
  double v_bits = 5.0;           // rendering workload, 0 <= v <= s
  double m_capacity = 1e9;       // AP processing limit, work units/s
  double n_share = 2.0;          // per-user processing share
  double mu = 4e-9;              // service rate, requests/s
  double lambda = 2e-9;          // arrival rate, requests/s

  /// Throws ConfigError unless s, a > 0, 0 <= v <= s, M, N > 0 and mu > lambda.
  void validate() const;
};

struct DelayBreakdown {
  double transmission = 0.0;
  double processing = 0.0;
  double queue = 0.0;
  double total = 0.0;
};

struct UtilityReport {
  double conditional_utility = 0.0;
  double tracking_utility = 0.0;
  double total_utility = 0.0;
  double d_max = 0.0;
  double gamma_d = 0.0;
};

/// s / rate_dl + a / rate_ul. Throws InfeasibleLink when either rate is not
/// positive.
double transmission_delay(double s_bits, double a_bits, double rate_dl_bps, double rate_ul_bps);

/// v / (M / N). Throws ConfigError when M or N is not positive.
double processing_delay(double v_bits, double m_capacity, double n_share);

/// Mean M/M/1 sojourn time 1 / (mu - lambda). Throws ConfigError unless
/// mu > lambda.
double queue_delay(double mu, double lambda);

/// total is the plain sum of the three parts.
DelayBreakdown total_delay(double transmission, double processing, double queue);

/// 1 for d below the tolerance gamma_d, otherwise the linear ramp
/// (d_max - d) / (d_max - gamma_d), which is exactly 1 at gamma_d and
/// exactly 0 at d_max. Throws InvalidInput for d > d_max.
double conditional_utility(double d, double d_max, double gamma_d);

/// 1 - error / max(errors). An all-zero error vector counts as perfect
/// tracking (1). Throws InvalidInput for an empty vector or an error above
/// the maximum.
double tracking_utility(double error, std::span<const double> all_errors);

/// Position error implied by an uplink SINR: epsilon0 / sqrt(1 + sinr).
double tracking_error(double sinr_ul, double epsilon0);

double total_utility(double conditional, double tracking);

}  // namespace mmvr
