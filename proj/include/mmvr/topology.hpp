#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace mmvr {

/// Node coordinates in meters (x, y, z).
using Position3D = Eigen::Vector3d;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return v >= lo && v <= hi; }
};

/// Axis-aligned indoor box the nodes live in.
struct IndoorArea {
  Interval x{0.0, 10.0};
  Interval y{0.0, 17.0};
  Interval z{0.0, 3.0};

  bool contains(const Position3D& p) const {
    return x.contains(p.x()) && y.contains(p.y()) && z.contains(p.z());
  }
  void validate() const;
};

struct AccessPoint {
  int id = 0;
  Position3D position = Position3D::Zero();
  double power_w = 10e-3;
  double service_rate = 4e-9;  // mu, requests/s
};

struct User {
  int id = 0;
  Position3D position = Position3D::Zero();
  double power_w = 5e-3;
  double arrival_rate = 2e-9;   // lambda, requests/s
  double delay_tolerance_s = 20e-3;
  Position3D reference_position = Position3D::Zero();
};

struct AngleOfDepartureArrival {
  double aod_az_deg = 0.0;
  double aoa_az_deg = 0.0;
};

/// APs and users placed in an indoor area. Validated on construction:
/// non-empty node lists, unique ids, every position inside the area, and
/// mu > lambda for every (user, AP) pair.
class NetworkTopology {
public:
  NetworkTopology(IndoorArea area, std::vector<AccessPoint> aps, std::vector<User> users);

  const IndoorArea& area() const { return area_; }
  const std::vector<AccessPoint>& aps() const { return aps_; }
  const std::vector<User>& users() const { return users_; }
  int num_aps() const { return static_cast<int>(aps_.size()); }
  int num_users() const { return static_cast<int>(users_.size()); }

  double distance(int user, int ap) const;

  /// AP is the transmitter, the user the receiver (downlink geometry).
  AngleOfDepartureArrival downlink_angles(int user, int ap) const;

private:
  IndoorArea area_;
  std::vector<AccessPoint> aps_;
  std::vector<User> users_;
};

double distance(const Position3D& p, const Position3D& q);

/// Azimuth of the direction rx - tx (departure) and of its reverse
/// (arrival), in degrees within [0, 360). The arrival angle is exactly the
/// departure angle rotated by 180 degrees.
///
/// Throws DegenerateGeometry when tx and rx share (x, y).
AngleOfDepartureArrival departure_arrival_angles(const Position3D& tx, const Position3D& rx);

/// Draws `count` positions uniformly inside `area` from a 64-bit seed. The
/// draw uses only the raw Mersenne Twister output stream, so the same seed
/// places nodes identically across standard libraries.
std::vector<Position3D> random_positions(const IndoorArea& area, int count, std::uint64_t seed);

}  // namespace mmvr
