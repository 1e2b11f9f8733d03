#include "mmvr/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "mmvr/error.hpp"

namespace mmvr {

namespace {

constexpr double kDegree = std::numbers::pi / 180.0;

void require_positive_distance(double d, const char* what) {
  if (!(d > 0.0))
    throw DegenerateGeometry(std::string(what) + ": distance must be positive, got " +
                             std::to_string(d));
}

// One CN(0, 1) sample via Box-Muller on the raw 64-bit stream.
std::complex<double> complex_gaussian(std::mt19937_64& rng) {
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;          // [0, 1)
  const double radius = std::sqrt(-std::log(u1));  // sqrt(-2 ln u1) / sqrt(2)
  return std::polar(radius, 2.0 * std::numbers::pi * u2);
}

}  // namespace

void SubcarrierGrid::validate() const {
  if (n_sc < 1) throw ConfigError("subcarrier grid: n_sc must be >= 1");
  if (!(carrier_frequency_hz > 0.0)) throw ConfigError("subcarrier grid: carrier must be > 0");
  if (!(total_bandwidth_hz > 0.0)) throw ConfigError("subcarrier grid: bandwidth must be > 0");
}

ComplexVectorXd subcarrier_phase_ramp(int n_sc) {
  if (n_sc < 1) throw InvalidInput("subcarrier_phase_ramp: n_sc must be >= 1");
  ComplexVectorXd ramp(n_sc);
  for (int n = 1; n <= n_sc; ++n) ramp(n - 1) = std::polar(1.0, n * kDegree);
  return ramp;
}

std::complex<double> ul_channel(double distance_m, double pathloss_exponent,
                                std::complex<double> ramp_n) {
  require_positive_distance(distance_m, "ul_channel");
  if (!(pathloss_exponent > 0.0)) throw InvalidInput("ul_channel: exponent must be positive");
  return ramp_n * std::pow(distance_m, -pathloss_exponent);
}

double fspl_db(double distance_m, double wavelength_m) {
  require_positive_distance(distance_m, "fspl_db");
  if (!(wavelength_m > 0.0)) throw InvalidInput("fspl_db: wavelength must be positive");
  return 20.0 * std::log10(wavelength_m / (4.0 * std::numbers::pi * distance_m));
}

std::vector<PathGain> path_gain_per_subcarrier(double distance_m, const SubcarrierGrid& grid) {
  const double gain = fspl_db(distance_m, grid.wavelength_m());
  std::vector<PathGain> out;
  out.reserve(static_cast<std::size_t>(grid.n_sc));
  for (int n = 1; n <= grid.n_sc; ++n) out.push_back({gain, n * kDegree});
  return out;
}

ComplexVectorXd steering_vector(int n_elements, double azimuth_deg,
                                double spacing_over_wavelength) {
  if (n_elements < 1) throw InvalidInput("steering_vector: need at least one element");
  if (!(spacing_over_wavelength > 0.0))
    throw InvalidInput("steering_vector: element spacing must be positive");
  const double progression =
      2.0 * std::numbers::pi * spacing_over_wavelength * std::sin(azimuth_deg * kDegree);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_elements));
  ComplexVectorXd a(n_elements);
  for (int k = 0; k < n_elements; ++k) a(k) = std::polar(scale, -k * progression);
  return a;
}

double tap_sum(int tap_count, double tap_spacing_s, double propagation_delay_s) {
  if (tap_count < 1) throw InvalidInput("tap_sum: tap_count must be >= 1");
  if (!(propagation_delay_s > 0.0)) throw DegenerateGeometry("tap_sum: delay must be positive");
  double sum = 0.0;
  for (int k = 0; k < tap_count; ++k) sum += std::exp(-(k * tap_spacing_s) / propagation_delay_s);
  return sum;
}

ComplexMatrixXd dl_channel_matrix(double distance_m, const AngleOfDepartureArrival& angles,
                                  int subcarrier, ArrayShape shape, const ChannelConfig& config) {
  require_positive_distance(distance_m, "dl_channel_matrix");
  if (subcarrier < 1 || subcarrier > config.grid.n_sc)
    throw InvalidInput("dl_channel_matrix: subcarrier index out of range");

  const double gain_db = fspl_db(distance_m, config.grid.wavelength_m());
  const double delay = distance_m / kSpeedOfLight;
  const double taps =
      tap_sum(config.taps.tap_count, config.taps.spacing_for(config.grid), delay);
  const std::complex<double> scalar =
      std::polar(std::pow(10.0, gain_db / 10.0) * taps, subcarrier * kDegree);

  const ComplexVectorXd a_tx =
      steering_vector(shape.n_tx, angles.aod_az_deg, config.element_spacing_over_wavelength);
  const ComplexVectorXd a_rx =
      steering_vector(shape.n_rx, angles.aoa_az_deg, config.element_spacing_over_wavelength);
  return scalar * (a_rx * a_tx.adjoint());
}

UlChannelCoeffs::UlChannelCoeffs(int users, int aps, int n_sc)
    : users_(users),
      aps_(aps),
      n_sc_(n_sc),
      coeffs_(static_cast<std::size_t>(users) * static_cast<std::size_t>(aps),
              ComplexVectorXd::Zero(n_sc)) {}

Eigen::MatrixXd UlChannelCoeffs::gains(int subcarrier) const {
  Eigen::MatrixXd g(users_, aps_);
  for (int i = 0; i < users_; ++i)
    for (int j = 0; j < aps_; ++j) g(i, j) = std::norm(at(i, j)(subcarrier));
  return g;
}

DlChannelSet::DlChannelSet(int users, int aps, ArrayShape shape)
    : users_(users),
      aps_(aps),
      shape_(shape),
      links_(static_cast<std::size_t>(users) * static_cast<std::size_t>(aps)) {}

UlChannelCoeffs synthesize_ul(const NetworkTopology& topology, const ChannelConfig& config) {
  config.grid.validate();
  const int n_sc = config.grid.n_sc;
  UlChannelCoeffs out(topology.num_users(), topology.num_aps(), n_sc);
  const ComplexVectorXd ramp = subcarrier_phase_ramp(n_sc);

  for (int i = 0; i < topology.num_users(); ++i)
    for (int j = 0; j < topology.num_aps(); ++j) {
      const double d = topology.distance(i, j);
      ComplexVectorXd& h = out.at(i, j);
      if (config.ul_gain_model == UlGainModel::Gaussian) {
        std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                          static_cast<std::uint32_t>(config.seed >> 32),
                          static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)};
        std::mt19937_64 rng(seq);
        for (int n = 0; n < n_sc; ++n)
          h(n) = ul_channel(d, config.pathloss_exponent, complex_gaussian(rng));
      } else {
        for (int n = 0; n < n_sc; ++n) h(n) = ul_channel(d, config.pathloss_exponent, ramp(n));
      }
    }
  return out;
}

DlChannelSet synthesize_dl(const NetworkTopology& topology, const ChannelConfig& config,
                           ArrayShape shape) {
  config.grid.validate();
  if (shape.n_tx < 1 || shape.n_rx < 1) throw ConfigError("array shape must be at least 1x1");
  DlChannelSet out(topology.num_users(), topology.num_aps(), shape);
  for (int i = 0; i < topology.num_users(); ++i)
    for (int j = 0; j < topology.num_aps(); ++j) {
      const double d = topology.distance(i, j);
      const AngleOfDepartureArrival angles = topology.downlink_angles(i, j);
      DlLink& link = out.link(i, j);
      link.propagation_delay_s = d / kSpeedOfLight;
      link.path_gain = path_gain_per_subcarrier(d, config.grid);
      link.matrices.reserve(static_cast<std::size_t>(config.grid.n_sc));
      for (int n = 1; n <= config.grid.n_sc; ++n)
        link.matrices.push_back(dl_channel_matrix(d, angles, n, shape, config));
    }
  return out;
}

}  // namespace mmvr
