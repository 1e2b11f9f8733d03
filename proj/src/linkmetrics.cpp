#include "mmvr/linkmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mmvr/error.hpp"

namespace mmvr {

namespace {

void check_indices(int user, int ap, const Eigen::MatrixXd& gains, std::size_t powers,
                   std::size_t expected_powers, const char* what) {
  if (user < 0 || user >= gains.rows() || ap < 0 || ap >= gains.cols())
    throw InvalidInput(std::string(what) + ": user/AP index out of range");
  if (powers != expected_powers)
    throw ShapeError(std::string(what) + ": power vector does not match gain table");
}

void check_noise(double noise_w, const char* what) {
  if (!(noise_w > 0.0)) throw InvalidInput(std::string(what) + ": noise power must be positive");
}

}  // namespace

std::string_view to_string(GainAggregation mode) {
  return mode == GainAggregation::Mean ? "mean" : "min";
}

GainAggregation parse_aggregation(std::string_view text) {
  if (text == "mean") return GainAggregation::Mean;
  if (text == "min") return GainAggregation::Min;
  throw ConfigError("unknown gain scenario '" + std::string(text) + "' (expected mean|min)");
}

double noise_power(double esn0_db, double reference_power_w) {
  if (!(reference_power_w > 0.0)) throw InvalidInput("noise_power: reference power must be > 0");
  return reference_power_w / std::pow(10.0, esn0_db / 10.0);
}

double sinr_ul(int user, int ap, std::span<const double> user_power_w,
               const Eigen::MatrixXd& gains, double noise_w) {
  check_indices(user, ap, gains, user_power_w.size(), static_cast<std::size_t>(gains.rows()),
                "sinr_ul");
  check_noise(noise_w, "sinr_ul");
  double intra = 0.0;
  for (int l = 0; l < gains.rows(); ++l)
    if (l != user) intra += user_power_w[l] * gains(l, ap);
  double inter = 0.0;
  for (int b = 0; b < gains.cols(); ++b) {
    if (b == ap) continue;
    for (int k = 0; k < gains.rows(); ++k)
      if (k != user) inter += user_power_w[k] * gains(k, b);
  }
  return user_power_w[user] * gains(user, ap) / (noise_w + intra + inter);
}

double sinr_dl(int user, int ap, std::span<const double> ap_power_w, const Eigen::MatrixXd& gains,
               double noise_w) {
  check_indices(user, ap, gains, ap_power_w.size(), static_cast<std::size_t>(gains.cols()),
                "sinr_dl");
  check_noise(noise_w, "sinr_dl");
  double intra = 0.0;
  for (int l = 0; l < gains.rows(); ++l)
    if (l != user) intra += ap_power_w[ap] * gains(l, ap);
  double inter = 0.0;
  for (int b = 0; b < gains.cols(); ++b) {
    if (b == ap) continue;
    for (int k = 0; k < gains.rows(); ++k)
      if (k != user) inter += ap_power_w[b] * gains(k, b);
  }
  return ap_power_w[ap] * gains(user, ap) / (noise_w + intra + inter);
}

double rate(double bandwidth_hz, double sinr) {
  if (!(bandwidth_hz > 0.0)) throw InvalidInput("rate: bandwidth must be positive");
  if (!(sinr >= 0.0)) throw InvalidInput("rate: SINR must be non-negative");
  return bandwidth_hz * (std::log1p(sinr) / std::numbers::ln2);
}

double aggregate_gain(std::span<const double> gains, GainAggregation mode) {
  if (gains.empty()) throw InvalidInput("aggregate_gain: empty gain vector");
  const double lowest = *std::min_element(gains.begin(), gains.end());
  if (mode == GainAggregation::Min) return lowest;
  double excess = 0.0;
  for (double g : gains) excess += g - lowest;
  return lowest + excess / static_cast<double>(gains.size());
}

}  // namespace mmvr
