#pragma once

// Per-subcarrier uplink scalar channels and downlink LoS channel matrices.

#include <complex>
#include <cstdint>
#include <vector>

#include "mmvr/numerics.hpp"
#include "mmvr/topology.hpp"

namespace mmvr {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

struct SubcarrierGrid {
  int n_sc = 64;
  double carrier_frequency_hz = 60e9;
  double total_bandwidth_hz = 2.16e9;

  double subcarrier_bandwidth_hz() const { return total_bandwidth_hz / n_sc; }
  double wavelength_m() const { return kSpeedOfLight / carrier_frequency_hz; }
  void validate() const;
};

/// Time grid of the delay-decay sum: t = k * spacing for k = 0..count-1.
/// A spacing of zero means one sampling period of the whole band.
struct TapProfile {
  int tap_count = 4;
  double tap_spacing_s = 0.0;

  double spacing_for(const SubcarrierGrid& grid) const {
    return tap_spacing_s > 0.0 ? tap_spacing_s : 1.0 / grid.total_bandwidth_hz;
  }
};

struct ArrayShape {
  int n_tx = 2;
  int n_rx = 1;
};

enum class UlGainModel {
  PhaseRamp,  // g_n = exp(j n pi/180), unit modulus
  Gaussian,   // seeded circularly-symmetric CN(0, 1) per subcarrier
};

struct ChannelConfig {
  SubcarrierGrid grid;
  TapProfile taps;
  double pathloss_exponent = 3.2;
  double element_spacing_over_wavelength = 0.5;
  UlGainModel ul_gain_model = UlGainModel::PhaseRamp;
  std::uint64_t seed = 1;
};

struct PathGain {
  double gain_db = 0.0;
  double phase_rad = 0.0;
};

/// Element n (1-based) is exp(j n pi / 180).
ComplexVectorXd subcarrier_phase_ramp(int n_sc);

/// ramp_n * d^-w. Throws DegenerateGeometry for d <= 0.
std::complex<double> ul_channel(double distance_m, double pathloss_exponent,
                                std::complex<double> ramp_n);

/// 20 log10(lambda / (4 pi d)). Throws DegenerateGeometry for d <= 0.
double fspl_db(double distance_m, double wavelength_m);

/// Same free-space gain on every subcarrier, phase n pi/180 on subcarrier n.
std::vector<PathGain> path_gain_per_subcarrier(double distance_m, const SubcarrierGrid& grid);

/// ULA response, element k = exp(-j k 2 pi (d/lambda) sin(theta)) / sqrt(N).
ComplexVectorXd steering_vector(int n_elements, double azimuth_deg,
                                double spacing_over_wavelength = 0.5);

/// sum_{k=0}^{count-1} exp(-k * spacing / tau).
double tap_sum(int tap_count, double tap_spacing_s, double propagation_delay_s);

/// Rank-one LoS matrix (n_rx x n_tx) for subcarrier `n` (1-based):
///   10^(pg/10) e^{j n pi/180} * tap_sum * a_rx(aoa) a_tx(aod)^H.
ComplexMatrixXd dl_channel_matrix(double distance_m, const AngleOfDepartureArrival& angles,
                                  int subcarrier, ArrayShape shape, const ChannelConfig& config);

/// Per-(user, AP) vectors of per-subcarrier uplink coefficients.
class UlChannelCoeffs {
public:
  UlChannelCoeffs(int users, int aps, int n_sc);

  const ComplexVectorXd& at(int user, int ap) const { return coeffs_.at(index(user, ap)); }
  ComplexVectorXd& at(int user, int ap) { return coeffs_.at(index(user, ap)); }

  /// |h_{ijn}|^2 for one subcarrier (0-based), users x APs.
  Eigen::MatrixXd gains(int subcarrier) const;

  /// Sum over subcarriers of h_{ijn}.
  std::complex<double> aggregate(int user, int ap) const { return at(user, ap).sum(); }

  int num_users() const { return users_; }
  int num_aps() const { return aps_; }
  int num_subcarriers() const { return n_sc_; }

private:
  std::size_t index(int user, int ap) const {
    return static_cast<std::size_t>(user) * static_cast<std::size_t>(aps_) +
           static_cast<std::size_t>(ap);
  }
  int users_;
  int aps_;
  int n_sc_;
  std::vector<ComplexVectorXd> coeffs_;
};

struct DlLink {
  std::vector<ComplexMatrixXd> matrices;  // one n_rx x n_tx matrix per subcarrier
  double propagation_delay_s = 0.0;
  std::vector<PathGain> path_gain;
};

class DlChannelSet {
public:
  DlChannelSet(int users, int aps, ArrayShape shape);

  const DlLink& link(int user, int ap) const { return links_.at(index(user, ap)); }
  DlLink& link(int user, int ap) { return links_.at(index(user, ap)); }
  ArrayShape shape() const { return shape_; }
  int num_users() const { return users_; }
  int num_aps() const { return aps_; }

private:
  std::size_t index(int user, int ap) const {
    return static_cast<std::size_t>(user) * static_cast<std::size_t>(aps_) +
           static_cast<std::size_t>(ap);
  }
  int users_;
  int aps_;
  ArrayShape shape_;
  std::vector<DlLink> links_;
};

UlChannelCoeffs synthesize_ul(const NetworkTopology& topology, const ChannelConfig& config);
DlChannelSet synthesize_dl(const NetworkTopology& topology, const ChannelConfig& config,
                           ArrayShape shape);

}  // namespace mmvr
