#pragma once

// One-shot SVD hybrid beamforming for a single (user, AP) link.
//
// The analog stage is shared by all subcarriers and built from the
// subcarrier-summed channel covariances; the digital stage is the SVD of the
// per-subcarrier channel seen through the analog stage. Nothing iterates.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mmvr/error.hpp"
#include "mmvr/numerics.hpp"

namespace mmvr {

/// Antenna / RF-chain configuration of one link.
struct Codebook {
  int n_tx = 2;  // AP antennas
  int n_rf = 1;  // AP RF chains
  int n_rx = 1;  // user antennas
  int n_ds = 1;  // data streams per user

  void validate() const {
    if (n_ds < 1 || n_rx < 1) throw ConfigError("codebook: n_ds and n_rx must be >= 1");
    if (!(n_ds <= n_rf && n_rf <= n_tx))
      throw ConfigError("codebook " + label() + ": need n_ds <= n_rf <= n_tx");
    if (n_ds > n_rx) throw ConfigError("codebook " + label() + ": need n_ds <= n_rx");
  }

  /// "2A1R" style tag: antennas then RF chains.
  std::string label() const { return std::to_string(n_tx) + "A" + std::to_string(n_rf) + "R"; }

  friend bool operator==(const Codebook&, const Codebook&) = default;
};

/// The six antenna / RF-chain pairs evaluated by default.
inline std::vector<Codebook> default_codebooks() {
  return {{2, 1, 1, 1}, {2, 2, 1, 1}, {4, 1, 1, 1}, {4, 2, 1, 1}, {8, 1, 1, 1}, {8, 2, 1, 1}};
}

template <typename Scalar>
struct DigitalPair {
  ComplexMatrix<Scalar> precoder;
  ComplexMatrix<Scalar> combiner;
};

template <typename Scalar>
struct BeamformingSolution {
  ComplexMatrix<Scalar> analog_precoder;  // n_tx x n_rf, entries of modulus 1/sqrt(n_tx)
  ComplexMatrix<Scalar> analog_combiner;  // n_rx x 1, entries of modulus 1/sqrt(n_rx)
  std::vector<ComplexMatrix<Scalar>> digital_precoders;  // n_rf x n_ds, semi-unitary
  std::vector<ComplexMatrix<Scalar>> digital_combiners;  // 1 x n_ds
  // Transmitted digital precoder on subcarrier n is power_scales[n] * digital_precoders[n].
  std::vector<Scalar> power_scales;
  // G_D^H (G_A^H H P_A) F_n with F_n normalized to unit power per stream, so
  // the transmit power enters the SINR separately.
  std::vector<ComplexMatrix<Scalar>> effective_channels;
  Scalar link_power_w = 0;

  std::size_t num_subcarriers() const { return digital_precoders.size(); }

  ComplexMatrix<Scalar> transmit_precoder(std::size_t n) const {
    return analog_precoder * (power_scales.at(n) * digital_precoders.at(n));
  }

  /// Sum over subcarriers and streams of radiated power.
  Scalar transmit_power() const {
    Scalar total = 0;
    for (std::size_t n = 0; n < num_subcarriers(); ++n) total += transmit_precoder(n).squaredNorm();
    return total;
  }

  /// Per-stream average of |[H_eff]_ss|^2 on subcarrier n.
  Scalar effective_gain(std::size_t n) const {
    const auto& h = effective_channels.at(n);
    return h.diagonal().cwiseAbs2().mean();
  }
};

/// Conformance of a solution to the analog modulus and digital
/// semi-unitarity requirements.
template <typename Scalar>
struct SolutionDiagnostics {
  Scalar precoder_modulus_sq_error = 0;  // max | |p|^2 - 1/n_tx |
  Scalar combiner_modulus_sq_error = 0;  // max | |g|^2 - 1/n_rx |
  Scalar semi_unitarity_error = 0;       // max_n ||P_n^H P_n - I||_F
};

template <typename Scalar>
SolutionDiagnostics<Scalar> diagnose(const BeamformingSolution<Scalar>& s) {
  SolutionDiagnostics<Scalar> d;
  const Scalar inv_tx = Scalar(1) / static_cast<Scalar>(s.analog_precoder.rows());
  const Scalar inv_rx = Scalar(1) / static_cast<Scalar>(s.analog_combiner.rows());
  d.precoder_modulus_sq_error = (s.analog_precoder.cwiseAbs2().array() - inv_tx).abs().maxCoeff();
  d.combiner_modulus_sq_error = (s.analog_combiner.cwiseAbs2().array() - inv_rx).abs().maxCoeff();
  for (const auto& p : s.digital_precoders)
    d.semi_unitarity_error = std::max(d.semi_unitarity_error, unitarity_error(p));
  return d;
}

/// Unconstrained per-subcarrier SVD beamformer: the precoder takes the
/// leading n_ds right singular vectors (n_tx rows), the combiner the leading
/// n_ds left singular vectors (n_rx rows).
template <typename Derived>
DigitalPair<typename Eigen::NumTraits<typename Derived::Scalar>::Real> full_digital(
    const Eigen::MatrixBase<Derived>& channel, int n_ds) {
  if (n_ds < 1 || n_ds > std::min(channel.rows(), channel.cols()))
    throw ShapeError("full_digital: n_ds must lie in [1, min(rows, cols)]");
  const auto f = svd(channel);
  return {f.right.leftCols(n_ds), f.left.leftCols(n_ds)};
}

/// G^H H P.
template <typename DG, typename DH, typename DP>
ComplexMatrix<typename Eigen::NumTraits<typename DH::Scalar>::Real> effective_channel(
    const Eigen::MatrixBase<DG>& combiner, const Eigen::MatrixBase<DH>& channel,
    const Eigen::MatrixBase<DP>& precoder) {
  if (combiner.rows() != channel.rows() || channel.cols() != precoder.rows())
    throw ShapeError("effective_channel: combiner, channel and precoder do not conform");
  return combiner.adjoint() * channel * precoder;
}

/// Analog combiner from sum_n H_n H_n^H: leading left singular vector with
/// every entry forced to modulus 1/sqrt(n_rx). Shape n_rx x 1.
template <typename Scalar>
ComplexMatrix<Scalar> analog_combiner(const std::vector<ComplexMatrix<Scalar>>& channels) {
  if (channels.empty()) throw InvalidInput("analog_combiner: no subcarrier channels");
  const Eigen::Index n_rx = channels.front().rows();
  ComplexMatrix<Scalar> covariance = ComplexMatrix<Scalar>::Zero(n_rx, n_rx);
  for (const auto& h : channels) {
    if (h.rows() != n_rx) throw ShapeError("analog_combiner: channel shapes differ");
    covariance += h * h.adjoint();
  }
  const auto f = svd(covariance);
  return unit_modulus_normalize(f.left.leftCols(1),
                                Scalar(1) / std::sqrt(static_cast<Scalar>(n_rx)));
}

/// Analog precoder from sum_n H_n^H H_n: leading n_rf left singular vectors
/// with every entry forced to modulus 1/sqrt(n_tx). Shape n_tx x n_rf.
template <typename Scalar>
ComplexMatrix<Scalar> analog_precoder(const std::vector<ComplexMatrix<Scalar>>& channels,
                                      int n_rf) {
  if (channels.empty()) throw InvalidInput("analog_precoder: no subcarrier channels");
  const Eigen::Index n_tx = channels.front().cols();
  if (n_rf < 1 || n_rf > n_tx) throw ShapeError("analog_precoder: need 1 <= n_rf <= n_tx");
  ComplexMatrix<Scalar> covariance = ComplexMatrix<Scalar>::Zero(n_tx, n_tx);
  for (const auto& h : channels) {
    if (h.cols() != n_tx) throw ShapeError("analog_precoder: channel shapes differ");
    covariance += h.adjoint() * h;
  }
  const auto f = svd(covariance);
  return unit_modulus_normalize(f.left.leftCols(n_rf),
                                Scalar(1) / std::sqrt(static_cast<Scalar>(n_tx)));
}

/// Digital stage on the analog-reduced channel H_D = G_A^H H P_A. The
/// precoder is the leading n_ds right singular vectors (n_rf x n_ds), the
/// combiner the leading n_ds left singular vectors.
template <typename Derived>
DigitalPair<typename Eigen::NumTraits<typename Derived::Scalar>::Real> hybrid_digital(
    const Eigen::MatrixBase<Derived>& reduced_channel, int n_ds, int n_rf) {
  if (reduced_channel.cols() != n_rf)
    throw ShapeError("hybrid_digital: reduced channel must have n_rf columns");
  if (n_ds < 1 || n_ds > std::min<Eigen::Index>(reduced_channel.rows(), n_rf))
    throw ShapeError("hybrid_digital: n_ds must lie in [1, min(rows, n_rf)]");
  const auto f = svd(reduced_channel);
  return {f.right.leftCols(n_ds), f.left.leftCols(n_ds)};
}

/// Hybrid design with caller-supplied analog matrices. Each subcarrier's
/// digital precoder is normalized so the composite analog*digital precoder
/// carries unit power per stream, then scaled so the link radiates
/// `link_power_w` in total, split evenly over subcarriers.
template <typename Scalar>
BeamformingSolution<Scalar> design_link_with_analog(
    const std::vector<ComplexMatrix<Scalar>>& channels, const ComplexMatrix<Scalar>& combiner,
    const ComplexMatrix<Scalar>& precoder, int n_ds, Scalar link_power_w) {
  if (channels.empty()) throw InvalidInput("design_link: no subcarrier channels");
  if (!(link_power_w >= Scalar(0))) throw InvalidInput("design_link: negative link power");

  const int n_rf = static_cast<int>(precoder.cols());
  const auto n_sc = static_cast<Scalar>(channels.size());
  const Scalar per_stream_power = link_power_w / (n_sc * static_cast<Scalar>(n_ds));

  BeamformingSolution<Scalar> s;
  s.analog_combiner = combiner;
  s.analog_precoder = precoder;
  s.link_power_w = link_power_w;
  for (const auto& h : channels) {
    const ComplexMatrix<Scalar> reduced = effective_channel(combiner, h, precoder);
    DigitalPair<Scalar> digital = hybrid_digital(reduced, n_ds, n_rf);

    const Scalar composite_norm = (precoder * digital.precoder).norm();
    const Scalar unit_scale =
        composite_norm > Scalar(0) ? std::sqrt(static_cast<Scalar>(n_ds)) / composite_norm
                                   : Scalar(0);

    s.effective_channels.push_back(
        effective_channel(digital.combiner, reduced, (unit_scale * digital.precoder).eval()));
    s.power_scales.push_back(unit_scale * std::sqrt(per_stream_power));
    s.digital_precoders.push_back(std::move(digital.precoder));
    s.digital_combiners.push_back(std::move(digital.combiner));
  }
  return s;
}

/// Full hybrid design for one link: analog combiner and precoder from the
/// summed covariances, then the per-subcarrier digital stage.
template <typename Scalar>
BeamformingSolution<Scalar> design_link(const std::vector<ComplexMatrix<Scalar>>& channels,
                                        const Codebook& codebook, Scalar link_power_w) {
  codebook.validate();
  if (channels.empty()) throw InvalidInput("design_link: no subcarrier channels");
  for (const auto& h : channels)
    if (h.rows() != codebook.n_rx || h.cols() != codebook.n_tx)
      throw ShapeError("design_link: channel is not n_rx x n_tx for codebook " +
                       codebook.label());
  return design_link_with_analog(channels, analog_combiner(channels),
                                 analog_precoder(channels, codebook.n_rf), codebook.n_ds,
                                 link_power_w);
}

}  // namespace mmvr
