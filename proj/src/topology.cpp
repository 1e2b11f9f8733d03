#include "mmvr/topology.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "mmvr/error.hpp"

namespace mmvr {

namespace {

std::string describe(const Position3D& p) {
  std::ostringstream os;
  os << "(" << p.x() << ", " << p.y() << ", " << p.z() << ")";
  return os.str();
}

double wrap_degrees(double deg) {
  double wrapped = std::fmod(deg, 360.0);
  if (wrapped < 0.0) wrapped += 360.0;
  // fmod of a tiny negative plus 360 can round up to 360 itself.
  if (wrapped >= 360.0) wrapped = 0.0;
  return wrapped;
}

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

void IndoorArea::validate() const {
  for (const Interval* iv : {&x, &y, &z}) {
    if (!std::isfinite(iv->lo) || !std::isfinite(iv->hi) || iv->lo > iv->hi)
      throw ConfigError("indoor area: every interval needs finite bounds with lo <= hi");
  }
}

NetworkTopology::NetworkTopology(IndoorArea area, std::vector<AccessPoint> aps,
                                 std::vector<User> users)
    : area_(area), aps_(std::move(aps)), users_(std::move(users)) {
  area_.validate();
  if (aps_.empty()) throw ConfigError("topology: at least one AP is required");
  if (users_.empty()) throw ConfigError("topology: at least one user is required");

  std::set<int> ap_ids, user_ids;
  for (const auto& ap : aps_) {
    if (!ap_ids.insert(ap.id).second)
      throw ConfigError("topology: duplicate AP id " + std::to_string(ap.id));
    if (!ap.position.allFinite() || !area_.contains(ap.position))
      throw ConfigError("topology: AP " + std::to_string(ap.id) + " at " +
                        describe(ap.position) + " is outside the indoor area");
    if (!(ap.power_w >= 0.0)) throw ConfigError("topology: AP power must be non-negative");
  }
  for (const auto& u : users_) {
    if (!user_ids.insert(u.id).second)
      throw ConfigError("topology: duplicate user id " + std::to_string(u.id));
    if (!u.position.allFinite() || !area_.contains(u.position))
      throw ConfigError("topology: user " + std::to_string(u.id) + " at " +
                        describe(u.position) + " is outside the indoor area");
    if (!(u.power_w >= 0.0)) throw ConfigError("topology: user power must be non-negative");
  }
  for (const auto& ap : aps_)
    for (const auto& u : users_)
      if (!(ap.service_rate > u.arrival_rate))
        throw ConfigError("topology: service rate of AP " + std::to_string(ap.id) +
                          " must exceed the arrival rate of user " + std::to_string(u.id));
}

double NetworkTopology::distance(int user, int ap) const {
  return mmvr::distance(users_.at(user).position, aps_.at(ap).position);
}

AngleOfDepartureArrival NetworkTopology::downlink_angles(int user, int ap) const {
  return departure_arrival_angles(aps_.at(ap).position, users_.at(user).position);
}

double distance(const Position3D& p, const Position3D& q) { return (p - q).norm(); }

AngleOfDepartureArrival departure_arrival_angles(const Position3D& tx, const Position3D& rx) {
  const Position3D departure = rx - tx;
  if (departure.x() == 0.0 && departure.y() == 0.0)
    throw DegenerateGeometry("azimuth undefined: tx " + describe(tx) + " and rx " +
                             describe(rx) + " share x and y");
  const double aod =
      wrap_degrees(std::atan2(departure.y(), departure.x()) * 180.0 / std::numbers::pi);
  return {aod, wrap_degrees(aod + 180.0)};
}

std::vector<Position3D> random_positions(const IndoorArea& area, int count, std::uint64_t seed) {
  area.validate();
  std::mt19937_64 rng(seed);
  std::vector<Position3D> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double x = area.x.lo + (area.x.hi - area.x.lo) * unit_draw(rng);
    const double y = area.y.lo + (area.y.hi - area.y.lo) * unit_draw(rng);
    const double z = area.z.lo + (area.z.hi - area.z.lo) * unit_draw(rng);
    out.emplace_back(x, y, z);
  }
  return out;
}

}  // namespace mmvr
