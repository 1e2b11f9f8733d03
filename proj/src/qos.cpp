#include "mmvr/qos.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mmvr/error.hpp"

namespace mmvr {

void TrafficModel::validate() const {
  if (!(s_bits > 0.0)) throw ConfigError("traffic: s_bits must be positive");
  if (!(a_bits > 0.0)) throw ConfigError("traffic: a_bits must be positive");
  if (!(v_bits >= 0.0 && v_bits <= s_bits))
    throw ConfigError("traffic: v_bits must lie in [0, s_bits]");
  if (!(m_capacity > 0.0)) throw ConfigError("traffic: m_capacity must be positive");
  if (!(n_share > 0.0)) throw ConfigError("traffic: n_share must be positive");
  if (!(mu > lambda))
    throw ConfigError("traffic: service rate mu must exceed arrival rate lambda");
}

double transmission_delay(double s_bits, double a_bits, double rate_dl_bps, double rate_ul_bps) {
  if (!(rate_dl_bps > 0.0)) throw InfeasibleLink("transmission_delay: DL rate is zero");
  if (!(rate_ul_bps > 0.0)) throw InfeasibleLink("transmission_delay: UL rate is zero");
  return s_bits / rate_dl_bps + a_bits / rate_ul_bps;
}

double processing_delay(double v_bits, double m_capacity, double n_share) {
  if (!(m_capacity > 0.0) || !(n_share > 0.0))
    throw ConfigError("processing_delay: capacity and share must be positive");
  return v_bits / (m_capacity / n_share);
}

double queue_delay(double mu, double lambda) {
  if (!(mu > lambda))
    throw ConfigError("queue_delay: service rate must exceed arrival rate (mu=" +
                      std::to_string(mu) + ", lambda=" + std::to_string(lambda) + ")");
  return 1.0 / (mu - lambda);
}

DelayBreakdown total_delay(double transmission, double processing, double queue) {
  if (!(transmission >= 0.0 && processing >= 0.0 && queue >= 0.0))
    throw InvalidInput("total_delay: delay components must be non-negative");
  return {transmission, processing, queue, transmission + processing + queue};
}

double conditional_utility(double d, double d_max, double gamma_d) {
  if (d > d_max)
    throw InvalidInput("conditional_utility: delay " + std::to_string(d) +
                       " exceeds the maximum " + std::to_string(d_max));
  if (d <= gamma_d) return 1.0;
  // Here gamma_d < d <= d_max, so the denominator is positive.
  return (d_max - d) / (d_max - gamma_d);
}

double tracking_utility(double error, std::span<const double> all_errors) {
  if (all_errors.empty()) throw InvalidInput("tracking_utility: empty error vector");
  const double worst = *std::max_element(all_errors.begin(), all_errors.end());
  if (error > worst) throw InvalidInput("tracking_utility: error exceeds the vector maximum");
  if (worst == 0.0) return 1.0;
  return 1.0 - error / worst;
}

double tracking_error(double sinr_ul, double epsilon0) {
  if (!(sinr_ul >= 0.0)) throw InvalidInput("tracking_error: SINR must be non-negative");
  if (!(epsilon0 > 0.0)) throw InvalidInput("tracking_error: epsilon0 must be positive");
  return epsilon0 / std::sqrt(1.0 + sinr_ul);
}

double total_utility(double conditional, double tracking) {
  if (!(conditional >= 0.0 && conditional <= 1.0 && tracking >= 0.0 && tracking <= 1.0))
    throw InvalidInput("total_utility: factors must lie in [0, 1]");
  return conditional * tracking;
}

}  // namespace mmvr
