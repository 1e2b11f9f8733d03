#include "mmvr/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mmvr/error.hpp"

namespace mmvr {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  while (true) {
    const auto end = s.find(sep, begin);
    parts.push_back(trim(s.substr(begin, end - begin)));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return parts;
}

double to_double(std::string_view text, std::string_view key) {
  // std::from_chars for double is available in libstdc++ 11.
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
    throw ConfigError("key '" + std::string(key) + "': '" + std::string(text) +
                      "' is not a finite number");
  return value;
}

long long to_integer(std::string_view text, std::string_view key) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw ConfigError("key '" + std::string(key) + "': '" + std::string(text) +
                      "' is not an integer");
  return value;
}

int to_int(std::string_view text, std::string_view key) {
  return static_cast<int>(to_integer(text, key));
}

std::vector<int> to_int_list(std::string_view text, std::string_view key) {
  std::vector<int> out;
  for (auto part : split(text, ',')) out.push_back(to_int(part, key));
  return out;
}

Interval to_interval(std::string_view text, std::string_view key) {
  const auto parts = split(text, ',');
  if (parts.size() != 2)
    throw ConfigError("key '" + std::string(key) + "': expected 'lo, hi'");
  return {to_double(parts[0], key), to_double(parts[1], key)};
}

std::vector<Position3D> to_positions(std::string_view text, std::string_view key) {
  std::vector<Position3D> out;
  for (auto triple : split(text, ';')) {
    const auto xyz = split(triple, ',');
    if (xyz.size() != 3)
      throw ConfigError("key '" + std::string(key) + "': positions are 'x,y,z ; x,y,z ...'");
    out.emplace_back(to_double(xyz[0], key), to_double(xyz[1], key), to_double(xyz[2], key));
  }
  return out;
}

using Setter = std::function<void(SweepConfig&, std::string_view, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"fc", [](auto& c, auto v, auto k) { c.channel.grid.carrier_frequency_hz = to_double(v, k); }},
      {"bw_total", [](auto& c, auto v, auto k) { c.channel.grid.total_bandwidth_hz = to_double(v, k); }},
      {"n_sc", [](auto& c, auto v, auto k) { c.channel.grid.n_sc = to_int(v, k); }},
      {"w", [](auto& c, auto v, auto k) { c.channel.pathloss_exponent = to_double(v, k); }},
      {"tap_count", [](auto& c, auto v, auto k) { c.channel.taps.tap_count = to_int(v, k); }},
      {"tap_spacing", [](auto& c, auto v, auto k) { c.channel.taps.tap_spacing_s = to_double(v, k); }},
      {"element_spacing", [](auto& c, auto v, auto k) { c.channel.element_spacing_over_wavelength = to_double(v, k); }},
      {"ul_gain", [](auto& c, auto v, auto) {
         if (v == "ramp") c.channel.ul_gain_model = UlGainModel::PhaseRamp;
         else if (v == "gaussian") c.channel.ul_gain_model = UlGainModel::Gaussian;
         else throw ConfigError("key 'ul_gain': expected ramp|gaussian");
       }},
      {"n_t", [](auto& c, auto v, auto k) { c.n_t = to_int_list(v, k); }},
      {"n_rf", [](auto& c, auto v, auto k) { c.n_rf = to_int_list(v, k); }},
      {"n_r", [](auto& c, auto v, auto k) { c.n_r = to_int(v, k); }},
      {"n_ds", [](auto& c, auto v, auto k) { c.n_ds = to_int(v, k); }},
      {"codebooks", [](auto& c, auto v, auto) { c.codebook_filter = parse_codebook_list(v, c.n_r, c.n_ds); }},
      {"s_i", [](auto& c, auto v, auto k) { c.traffic.s_bits = to_double(v, k); }},
      {"a_i", [](auto& c, auto v, auto k) { c.traffic.a_bits = to_double(v, k); }},
      {"v", [](auto& c, auto v, auto k) { c.traffic.v_bits = to_double(v, k); }},
      {"m_capacity", [](auto& c, auto v, auto k) { c.traffic.m_capacity = to_double(v, k); }},
      {"n_share", [](auto& c, auto v, auto k) { c.traffic.n_share = to_double(v, k); }},
      {"mu", [](auto& c, auto v, auto k) { c.traffic.mu = to_double(v, k); }},
      {"lambda", [](auto& c, auto v, auto k) { c.traffic.lambda = to_double(v, k); }},
      {"queue_units", [](auto& c, auto v, auto) { c.queue_units = parse_queue_units(v); }},
      {"b", [](auto& c, auto v, auto k) { c.num_aps = to_int(v, k); }},
      {"u", [](auto& c, auto v, auto k) { c.num_users = to_int(v, k); }},
      {"p_b", [](auto& c, auto v, auto k) { c.p_b = to_double(v, k); }},
      {"p_u", [](auto& c, auto v, auto k) { c.p_u = to_double(v, k); }},
      {"gamma_d", [](auto& c, auto v, auto k) { c.gamma_d = to_double(v, k); }},
      {"epsilon0", [](auto& c, auto v, auto k) { c.epsilon0 = to_double(v, k); }},
      {"noise_ref", [](auto& c, auto v, auto k) { c.noise_ref_w = to_double(v, k); }},
      {"r_min", [](auto& c, auto v, auto k) { c.r_min_bps = to_double(v, k); }},
      {"v_j", [](auto& c, auto v, auto k) { c.v_j = to_int(v, k); }},
      {"esn0_start", [](auto& c, auto v, auto k) { c.esn0.start_db = to_double(v, k); }},
      {"esn0_stop", [](auto& c, auto v, auto k) { c.esn0.stop_db = to_double(v, k); }},
      {"esn0_step", [](auto& c, auto v, auto k) { c.esn0.step_db = to_double(v, k); }},
      {"scenario", [](auto& c, auto v, auto) { c.scenarios = parse_scenarios(v); }},
      {"seed", [](auto& c, auto v, auto k) {
         const long long s = to_integer(v, k);
         if (s < 0) throw ConfigError("key 'seed': must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
         c.channel.seed = c.seed;
       }},
      {"mode_bin", [](auto& c, auto v, auto k) { c.mode_bin_s = to_double(v, k); }},
      {"output", [](auto& c, auto v, auto) { c.output = std::string(v); }},
      {"area_x", [](auto& c, auto v, auto k) { c.area.x = to_interval(v, k); }},
      {"area_y", [](auto& c, auto v, auto k) { c.area.y = to_interval(v, k); }},
      {"area_z", [](auto& c, auto v, auto k) { c.area.z = to_interval(v, k); }},
      {"placement", [](auto& c, auto v, auto) {
         if (v == "random") c.random_placement = true;
         else if (v == "fixed") c.random_placement = false;
         else throw ConfigError("key 'placement': expected fixed|random");
       }},
      {"ap_positions", [](auto& c, auto v, auto k) { c.ap_positions = to_positions(v, k); }},
      {"user_positions", [](auto& c, auto v, auto k) { c.user_positions = to_positions(v, k); }},
  };
  return table;
}

}  // namespace

std::vector<double> EsN0Grid::points() const {
  validate();
  std::vector<double> out;
  const double span = (stop_db - start_db) / step_db;
  const auto count = static_cast<long long>(std::floor(span + 1e-9)) + 1;
  out.reserve(static_cast<std::size_t>(count));
  for (long long k = 0; k < count; ++k) out.push_back(start_db + static_cast<double>(k) * step_db);
  return out;
}

void EsN0Grid::validate() const {
  if (!std::isfinite(start_db) || !std::isfinite(stop_db) || !std::isfinite(step_db))
    throw ConfigError("esn0 grid: bounds must be finite");
  if (!(step_db > 0.0)) throw ConfigError("esn0 grid: step must be positive");
  if (stop_db < start_db) throw ConfigError("esn0 grid: stop must not be below start");
}

std::vector<Codebook> SweepConfig::codebooks() const {
  std::vector<Codebook> out;
  if (!codebook_filter.empty()) {
    for (const auto& f : codebook_filter) {
      const Codebook cb{f.n_tx, f.n_rf, n_r, n_ds};
      if (std::find(out.begin(), out.end(), cb) == out.end()) out.push_back(cb);
    }
    return out;
  }
  for (int nt : n_t)
    for (int nrf : n_rf)
      if (nrf <= nt && n_ds <= nrf) out.push_back({nt, nrf, n_r, n_ds});
  return out;
}

TrafficModel SweepConfig::effective_traffic() const {
  TrafficModel t = traffic;
  if (queue_units == QueueUnits::Reciprocal) {
    t.mu = 4e9;
    t.lambda = 2e9;
  }
  return t;
}

NetworkTopology SweepConfig::topology() const {
  const TrafficModel t = effective_traffic();
  std::vector<Position3D> ap_pos = ap_positions;
  std::vector<Position3D> user_pos = user_positions;
  if (random_placement) {
    const auto drawn = random_positions(area, num_aps + num_users, seed);
    ap_pos.assign(drawn.begin(), drawn.begin() + num_aps);
    user_pos.assign(drawn.begin() + num_aps, drawn.end());
  }
  if (static_cast<int>(ap_pos.size()) != num_aps)
    throw ConfigError("ap_positions lists " + std::to_string(ap_pos.size()) +
                      " positions but b = " + std::to_string(num_aps));
  if (static_cast<int>(user_pos.size()) != num_users)
    throw ConfigError("user_positions lists " + std::to_string(user_pos.size()) +
                      " positions but u = " + std::to_string(num_users));

  std::vector<AccessPoint> aps;
  for (int j = 0; j < num_aps; ++j) aps.push_back({j + 1, ap_pos[j], p_b, t.mu});
  std::vector<User> users;
  for (int i = 0; i < num_users; ++i)
    users.push_back({i + 1, user_pos[i], user_power_w(), t.lambda, gamma_d, user_pos[i]});
  return NetworkTopology(area, std::move(aps), std::move(users));
}

void SweepConfig::validate() const {
  if (num_aps < 1 || num_users < 1) throw ConfigError("b and u must be >= 1");
  if (!(p_b > 0.0)) throw ConfigError("p_b must be positive");
  if (p_u < 0.0) throw ConfigError("p_u must be non-negative");
  if (!(gamma_d >= 0.0)) throw ConfigError("gamma_d must be non-negative");
  if (!(epsilon0 > 0.0)) throw ConfigError("epsilon0 must be positive");
  if (noise_ref_w < 0.0) throw ConfigError("noise_ref must be non-negative");
  if (r_min_bps < 0.0) throw ConfigError("r_min must be non-negative");
  if (v_j < 1) throw ConfigError("v_j must be >= 1");
  if (!(mode_bin_s > 0.0)) throw ConfigError("mode_bin must be positive");
  if (scenarios.empty()) throw ConfigError("scenario list is empty");
  channel.grid.validate();
  if (channel.taps.tap_count < 1) throw ConfigError("tap_count must be >= 1");
  if (channel.taps.tap_spacing_s < 0.0) throw ConfigError("tap_spacing must be non-negative");
  if (!(channel.pathloss_exponent > 0.0)) throw ConfigError("w must be positive");
  if (!(channel.element_spacing_over_wavelength > 0.0))
    throw ConfigError("element_spacing must be positive");
  esn0.validate();
  effective_traffic().validate();
  for (int nt : n_t)
    if (nt < 1) throw ConfigError("n_t entries must be >= 1");
  for (int nrf : n_rf)
    if (nrf < 1) throw ConfigError("n_rf entries must be >= 1");
  const auto books = codebooks();
  if (books.empty()) throw ConfigError("no valid codebook in n_t x n_rf");
  for (const auto& cb : books) cb.validate();
  (void)topology();
}

SweepConfig parse_config(std::string_view text) {
  SweepConfig config;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const auto end = text.find('\n', begin);
    std::string_view line = text.substr(begin, end == std::string_view::npos ? end : end - begin);
    begin = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto it = setters().find(key);
    if (it == setters().end())
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                        std::string(key) + "'");
    if (value.empty())
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + std::string(key) +
                        "' has no value");
    try {
      it->second(config, value, key);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return config;
}

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("error while reading config file '" + path.string() + "'");
  return parse_config(buffer.str());
}

EsN0Grid parse_esn0_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ConfigError("Es/N0 range must be 'start:step:stop'");
  EsN0Grid grid{to_double(parts[0], "esn0"), to_double(parts[2], "esn0"),
                to_double(parts[1], "esn0")};
  grid.validate();
  return grid;
}

std::vector<Codebook> parse_codebook_list(std::string_view text, int n_rx, int n_ds) {
  std::vector<Codebook> out;
  for (auto item : split(text, ',')) {
    const auto x = item.find_first_of("xX");
    if (x == std::string_view::npos)
      throw ConfigError("codebook '" + std::string(item) + "' must look like NTxNRF");
    out.push_back({to_int(trim(item.substr(0, x)), "codebook"),
                   to_int(trim(item.substr(x + 1)), "codebook"), n_rx, n_ds});
  }
  return out;
}

std::vector<GainAggregation> parse_scenarios(std::string_view text) {
  if (text == "both") return {GainAggregation::Mean, GainAggregation::Min};
  std::vector<GainAggregation> out;
  for (auto item : split(text, ',')) {
    if (item.empty()) continue;
    out.push_back(parse_aggregation(item));
  }
  if (out.empty()) throw ConfigError("scenario list is empty");
  return out;
}

QueueUnits parse_queue_units(std::string_view text) {
  if (text == "paper") return QueueUnits::Paper;
  if (text == "reciprocal") return QueueUnits::Reciprocal;
  throw ConfigError("queue units must be paper|reciprocal");
}

}  // namespace mmvr
