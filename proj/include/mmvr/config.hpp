#pragma once

// Sweep configuration and its flat `key = value` file format.
//
//   # comment
//   fc = 60e9
//   n_t = 2, 4, 8
//   ap_positions = 2,4,2.5 ; 8,13,2.5
//
// Keys mirror the simulation-parameter symbols; see README.md for the list.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mmvr/beamforming.hpp"
#include "mmvr/channel.hpp"
#include "mmvr/linkmetrics.hpp"
#include "mmvr/qos.hpp"
#include "mmvr/topology.hpp"

namespace mmvr {

struct EsN0Grid {
  double start_db = 0.0;
  double stop_db = 20.0;
  double step_db = 1.0;

  /// start, start + step, ... up to stop (inclusive, within 1e-9 step).
  std::vector<double> points() const;
  void validate() const;
};

/// Interpretation of the mu / lambda pair. `Reciprocal` replaces them with
/// the 4e9 / 2e9 preset.
enum class QueueUnits { Paper, Reciprocal };

struct SweepConfig {
  IndoorArea area;
  int num_aps = 2;
  int num_users = 2;
  std::vector<Position3D> ap_positions{{2.0, 4.0, 2.5}, {8.0, 13.0, 2.5}};
  std::vector<Position3D> user_positions{{3.0, 8.0, 1.5}, {7.0, 10.0, 1.5}};
  bool random_placement = false;

  double p_b = 10e-3;         // AP power, W
  double p_u = 0.0;           // user power, W; 0 splits p_b evenly over users
  double gamma_d = 20e-3;     // delay tolerance, s
  double epsilon0 = 1.0;      // tracking error at zero UL SINR, m
  double noise_ref_w = 0.0;   // Es/N0 reference power; 0 means p_b

  ChannelConfig channel;
  std::vector<int> n_t{2, 4, 8};
  std::vector<int> n_rf{1, 2};
  int n_r = 1;
  int n_ds = 1;
  std::vector<Codebook> codebook_filter;  // non-empty replaces n_t x n_rf

  EsN0Grid esn0;
  std::vector<GainAggregation> scenarios{GainAggregation::Mean, GainAggregation::Min};
  TrafficModel traffic;
  QueueUnits queue_units = QueueUnits::Paper;
  double r_min_bps = 0.0;
  int v_j = 2;
  std::uint64_t seed = 1;
  double mode_bin_s = 1e-6;
  std::string output = "results";

  /// Codebooks to sweep: the explicit list when one is given (duplicates
  /// dropped), otherwise every valid (n_t, n_rf) pair in listed order.
  std::vector<Codebook> codebooks() const;

  /// Traffic model with the queue-unit preset applied.
  TrafficModel effective_traffic() const;

  double user_power_w() const { return p_u > 0.0 ? p_u : p_b / num_users; }
  double noise_reference_w() const { return noise_ref_w > 0.0 ? noise_ref_w : p_b; }

  /// Builds the node layout (explicit positions or seeded uniform draw).
  NetworkTopology topology() const;

  /// Throws ConfigError describing the first problem found.
  void validate() const;
};

/// Parses `key = value` lines on top of the defaults. Throws ConfigError on
/// unknown keys or malformed values.
SweepConfig parse_config(std::string_view text);

/// Throws IoError if the file cannot be read, ConfigError if it is invalid.
SweepConfig load_config(const std::filesystem::path& path);

/// "0:1:20" -> {0, 1, 20}.
EsN0Grid parse_esn0_range(std::string_view text);

/// "2x1,8x2" -> codebooks with the configured n_rx / n_ds.
std::vector<Codebook> parse_codebook_list(std::string_view text, int n_rx, int n_ds);

std::vector<GainAggregation> parse_scenarios(std::string_view text);

QueueUnits parse_queue_units(std::string_view text);

}  // namespace mmvr
