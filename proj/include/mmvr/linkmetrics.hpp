#pragma once

// SINR and Shannon rate for the uplink (per subcarrier) and the downlink
// (per link, after aggregating the beamformed gain over subcarriers).
//
// Gain tables are users x APs matrices of squared channel magnitudes. Every
// user is in the coverage of every AP, so the intra-cell sum runs over all
// other users and the inter-cell sum over all other (AP, user) pairs.

#include <span>
#include <string_view>

#include <Eigen/Core>

namespace mmvr {

enum class GainAggregation { Mean, Min };

std::string_view to_string(GainAggregation mode);
GainAggregation parse_aggregation(std::string_view text);

/// sigma^2 = reference_power / 10^(esn0_db / 10).
double noise_power(double esn0_db, double reference_power_w);

/// P_U[i] g(i,j) / (sigma^2 + sum_{l!=i} P_U[l] g(l,j)
///                  + sum_{b!=j} sum_{k!=i} P_U[k] g(k,b))
double sinr_ul(int user, int ap, std::span<const double> user_power_w,
               const Eigen::MatrixXd& gains, double noise_w);

/// P_B[j] g(i,j) / (sigma^2 + sum_{l!=i} P_B[j] g(l,j)
///                  + sum_{b!=j} sum_{k!=i} P_B[b] g(k,b))
double sinr_dl(int user, int ap, std::span<const double> ap_power_w, const Eigen::MatrixXd& gains,
               double noise_w);

/// bw * log2(1 + sinr), evaluated through log1p so tiny SINRs keep their
/// precision instead of rounding to a zero rate.
double rate(double bandwidth_hz, double sinr);

/// Arithmetic mean or minimum of non-negative per-subcarrier gains. The
/// mean is accumulated as min + mean(g - min), which can never round below
/// the minimum.
double aggregate_gain(std::span<const double> gains, GainAggregation mode);

}  // namespace mmvr
