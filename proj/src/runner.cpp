#include "mmvr/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <thread>
#include <tuple>

#include "mmvr/error.hpp"
#include "mmvr/qos.hpp"

namespace mmvr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string join_letters(const std::vector<Violation>& violations) {
  std::string letters;
  for (char c : {'a', 'b', 'c', 'd', 'e'}) {
    const bool hit = std::any_of(violations.begin(), violations.end(),
                                 [c](const Violation& v) { return v.constraint == c; });
    if (!hit) continue;
    if (!letters.empty()) letters += ';';
    letters += c;
  }
  return letters;
}

bool codebook_less(const Codebook& a, const Codebook& b) {
  return std::tie(a.n_tx, a.n_rf) < std::tie(b.n_tx, b.n_rf);
}

}  // namespace

std::string Violation::describe() const {
  std::ostringstream os;
  os << "(" << constraint << ") AP " << ap;
  if (user >= 0) os << " user " << user;
  os << ": measured " << measured << ", required " << required;
  if (constraint == 'b' && required > 0.0) os << " (ratio " << measured / required << ")";
  return os.str();
}

std::vector<Violation> check_constraints(const ConstraintInputs& in) {
  std::vector<Violation> out;
  const int aps = static_cast<int>(in.ap_power_w.size());
  const int users = static_cast<int>(in.user_power_w.size());

  // (a) users attached to each AP
  for (int j = 0; j < static_cast<int>(in.users_per_ap.size()); ++j)
    if (in.users_per_ap[j] > in.max_users_per_ap)
      out.push_back({'a', j, -1, static_cast<double>(in.users_per_ap[j]),
                     static_cast<double>(in.max_users_per_ap)});

  // (b) minimum DL rate; a zero rate never counts as a served link
  if (in.rate_dl_bps != nullptr)
    for (int i = 0; i < in.rate_dl_bps->rows(); ++i)
      for (int j = 0; j < in.rate_dl_bps->cols(); ++j) {
        const double r = (*in.rate_dl_bps)(i, j);
        if (!(r >= in.r_min_bps) || !(r > 0.0)) out.push_back({'b', j, i, r, in.r_min_bps});
      }

  // (c) user power sum and radiated DL power within each AP budget
  for (int j = 0; j < aps; ++j) {
    const double budget = in.ap_power_w[j] * (1.0 + kPowerTolerance);
    double user_sum = 0.0;
    for (int i = 0; i < users; ++i) user_sum += in.user_power_w[i];
    if (user_sum > budget) out.push_back({'c', j, -1, user_sum, in.ap_power_w[j]});
    if (in.designs != nullptr) {
      double radiated = 0.0;
      for (int i = 0; i < in.designs->num_users(); ++i) radiated += in.designs->at(i, j).transmit_power();
      if (radiated > budget) out.push_back({'c', j, -1, radiated, in.ap_power_w[j]});
    }
  }

  // (d), (e) constant-modulus analog stages
  if (in.designs != nullptr)
    for (int i = 0; i < in.designs->num_users(); ++i)
      for (int j = 0; j < in.designs->num_aps(); ++j) {
        const auto diag = diagnose(in.designs->at(i, j));
        const auto& s = in.designs->at(i, j);
        if (diag.precoder_modulus_sq_error > kModulusTolerance)
          out.push_back({'d', j, i, diag.precoder_modulus_sq_error,
                         1.0 / static_cast<double>(s.analog_precoder.rows())});
        if (diag.combiner_modulus_sq_error > kModulusTolerance)
          out.push_back({'e', j, i, diag.combiner_modulus_sq_error,
                         1.0 / static_cast<double>(s.analog_combiner.rows())});
      }
  return out;
}

SweepContext::SweepContext(const SweepConfig& config)
    : config_((config.validate(), config)),
      traffic_(config.effective_traffic()),
      topology_(config.topology()),
      uplink_(synthesize_ul(topology_, config.channel)),
      codebooks_(config.codebooks()) {
  const double link_power = config_.p_b / topology_.num_users();
  designs_.reserve(codebooks_.size());
  for (const auto& cb : codebooks_) {
    const DlChannelSet dl = synthesize_dl(topology_, config_.channel, {cb.n_tx, cb.n_rx});
    LinkDesigns designs(topology_.num_users(), topology_.num_aps());
    for (int i = 0; i < topology_.num_users(); ++i)
      for (int j = 0; j < topology_.num_aps(); ++j)
        designs.at(i, j) = design_link(dl.link(i, j).matrices, cb, link_power);
    designs_.push_back(std::move(designs));
  }
}

std::vector<double> SweepContext::dl_gains(std::size_t codebook_index, int user, int ap) const {
  const auto& s = designs(codebook_index).at(user, ap);
  std::vector<double> gains(s.num_subcarriers());
  for (std::size_t n = 0; n < gains.size(); ++n) gains[n] = s.effective_gain(n);
  return gains;
}

PointEvaluation SweepContext::evaluate(GainAggregation scenario, std::size_t codebook_index,
                                       double esn0_db) const {
  const Codebook& cb = codebooks_.at(codebook_index);
  const int users = topology_.num_users();
  const int aps = topology_.num_aps();
  const int n_sc = config_.channel.grid.n_sc;
  const double noise = noise_power(esn0_db, config_.noise_reference_w());
  const double bw = config_.channel.grid.subcarrier_bandwidth_hz();

  std::vector<double> user_power, ap_power;
  for (const auto& u : topology_.users()) user_power.push_back(u.power_w);
  for (const auto& ap : topology_.aps()) ap_power.push_back(ap.power_w);

  Eigen::MatrixXd dl_gain(users, aps);
  for (int i = 0; i < users; ++i)
    for (int j = 0; j < aps; ++j) dl_gain(i, j) = aggregate_gain(dl_gains(codebook_index, i, j), scenario);

  Eigen::MatrixXd rate_dl(users, aps);
  for (int i = 0; i < users; ++i)
    for (int j = 0; j < aps; ++j) rate_dl(i, j) = rate(bw, sinr_dl(i, j, ap_power, dl_gain, noise));

  // ul_sinr[n](i, j)
  std::vector<Eigen::MatrixXd> ul_sinr(static_cast<std::size_t>(n_sc), Eigen::MatrixXd(users, aps));
  for (int n = 0; n < n_sc; ++n) {
    const Eigen::MatrixXd g = uplink_.gains(n);
    for (int i = 0; i < users; ++i)
      for (int j = 0; j < aps; ++j) ul_sinr[n](i, j) = sinr_ul(i, j, user_power, g, noise);
  }

  const std::vector<int> users_per_ap(static_cast<std::size_t>(aps), users);
  ConstraintInputs inputs{users_per_ap, config_.v_j, &rate_dl, config_.r_min_bps,
                          user_power, ap_power, &designs_.at(codebook_index)};

  PointEvaluation out;
  out.point = {scenario, cb, esn0_db, 0.0, true, check_constraints(inputs)};

  const double processing =
      processing_delay(traffic_.v_bits, traffic_.m_capacity, traffic_.n_share);

  for (int i = 0; i < users; ++i)
    for (int j = 0; j < aps; ++j) {
      const auto& user = topology_.users()[i];
      const auto& ap = topology_.aps()[j];

      LinkRecord rec;
      rec.scenario = scenario;
      rec.n_tx = cb.n_tx;
      rec.n_rf = cb.n_rf;
      rec.esn0_db = esn0_db;
      rec.ap = ap.id;
      rec.user = user.id;
      rec.rate_dl_bps = rate_dl(i, j);
      rec.d_proc_s = processing;
      rec.d_queue_s = queue_delay(ap.service_rate, user.arrival_rate);

      std::vector<double> rate_ul(n_sc), errors(n_sc);
      for (int n = 0; n < n_sc; ++n) {
        rate_ul[n] = rate(bw, ul_sinr[n](i, j));
        errors[n] = tracking_error(ul_sinr[n](i, j), config_.epsilon0);
      }
      double rate_ul_sum = 0.0;
      for (double r : rate_ul) rate_ul_sum += r;
      rec.rate_ul_bps = rate_ul_sum / n_sc;

      std::vector<Violation> link_violations;
      for (const auto& v : out.point.violations)
        if (v.ap == j && (v.user == i || v.user < 0)) link_violations.push_back(v);
      rec.violations = join_letters(link_violations);

      const bool rates_positive =
          rec.rate_dl_bps > 0.0 &&
          std::all_of(rate_ul.begin(), rate_ul.end(), [](double r) { return r > 0.0; });
      if (!rates_positive) {
        rec.feasible = false;
        rec.d_trans_s = rec.d_total_s = kNaN;
        out.point.feasible = false;
        out.records.push_back(rec);
        continue;
      }

      std::vector<double> total(n_sc);
      double trans_sum = 0.0;
      for (int n = 0; n < n_sc; ++n) {
        const double trans =
            transmission_delay(traffic_.s_bits, traffic_.a_bits, rec.rate_dl_bps, rate_ul[n]);
        trans_sum += trans;
        total[n] = total_delay(trans, rec.d_proc_s, rec.d_queue_s).total;
      }
      rec.d_trans_s = trans_sum / n_sc;
      rec.d_total_s = rec.d_trans_s + rec.d_proc_s + rec.d_queue_s;

      rec.feasible = link_violations.empty();
      if (rec.feasible) {
        const double d_max = *std::max_element(total.begin(), total.end());
        double utility_sum = 0.0;
        for (int n = 0; n < n_sc; ++n)
          utility_sum += total_utility(conditional_utility(total[n], d_max, user.delay_tolerance_s),
                                       tracking_utility(errors[n], errors));
        rec.utility_sum = utility_sum;
        rec.utility = utility_sum / n_sc;
        out.point.objective += utility_sum;
      } else {
        out.point.feasible = false;
      }
      out.records.push_back(rec);
    }
  if (!out.point.violations.empty()) out.point.feasible = false;
  return out;
}

PointEvaluation evaluate_sweep_point(const SweepConfig& config, GainAggregation scenario,
                                     const Codebook& codebook, double esn0_db) {
  SweepConfig single = config;
  single.n_t = {codebook.n_tx};
  single.n_rf = {codebook.n_rf};
  single.n_r = codebook.n_rx;
  single.n_ds = codebook.n_ds;
  single.codebook_filter.clear();
  const SweepContext context(single);
  return context.evaluate(scenario, 0, esn0_db);
}

std::optional<Codebook> select_best_codebook(std::span<const SweepPoint> points,
                                             GainAggregation scenario, double esn0_db) {
  const SweepPoint* best = nullptr;
  for (const auto& p : points) {
    if (p.scenario != scenario || p.esn0_db != esn0_db || !p.feasible) continue;
    if (best == nullptr || p.objective > best->objective ||
        (p.objective == best->objective && codebook_less(p.codebook, best->codebook)))
      best = &p;
  }
  if (best == nullptr) return std::nullopt;
  return best->codebook;
}

double min_statistic(std::span<const double> values) {
  if (values.empty()) throw InvalidInput("min_statistic: empty vector");
  return *std::min_element(values.begin(), values.end());
}

double mode_statistic(std::span<const double> values, double bin_width) {
  if (values.empty()) throw InvalidInput("mode_statistic: empty vector");
  if (!(bin_width > 0.0)) throw InvalidInput("mode_statistic: bin width must be positive");
  std::map<double, int> counts;
  for (double v : values) ++counts[std::floor(v / bin_width)];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it)
    if (it->second > best->second) best = it;
  return best->first * bin_width;
}

bool record_less(const LinkRecord& a, const LinkRecord& b) {
  return std::make_tuple(to_string(a.scenario), a.n_tx, a.n_rf, a.esn0_db, a.ap, a.user) <
         std::make_tuple(to_string(b.scenario), b.n_tx, b.n_rf, b.esn0_db, b.ap, b.user);
}

SweepResult run_sweep(const SweepConfig& config, unsigned threads) {
  const SweepContext context(config);
  return run_sweep(context, threads);
}

SweepResult run_sweep(const SweepContext& context, unsigned threads) {
  const SweepConfig& config = context.config();
  const std::vector<double> grid = config.esn0.points();

  struct Task {
    GainAggregation scenario;
    std::size_t codebook;
    double esn0;
  };
  std::vector<Task> tasks;
  for (auto scenario : config.scenarios)
    for (std::size_t c = 0; c < context.codebooks().size(); ++c)
      for (double e : grid) tasks.push_back({scenario, c, e});

  std::vector<PointEvaluation> evaluations(tasks.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size() && !failed; k = next++) {
      try {
        evaluations[k] = context.evaluate(tasks[k].scenario, tasks[k].codebook, tasks[k].esn0);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult result;
  for (auto& e : evaluations) {
    result.points.push_back(e.point);
    result.records.insert(result.records.end(), e.records.begin(), e.records.end());
  }
  std::stable_sort(result.records.begin(), result.records.end(), record_less);

  for (auto scenario : config.scenarios)
    for (const auto& cb : context.codebooks()) {
      double sum = 0.0;
      std::size_t count = 0;
      std::map<std::pair<int, int>, std::vector<double>> delays;
      for (const auto& r : result.records) {
        if (r.scenario != scenario || r.n_tx != cb.n_tx || r.n_rf != cb.n_rf) continue;
        if (r.utility) {
          sum += *r.utility;
          ++count;
        }
        if (std::isfinite(r.d_trans_s)) delays[{r.ap, r.user}].push_back(r.d_trans_s);
      }
      result.summary.utilities.push_back({scenario, cb, count ? sum / count : 0.0});
      for (const auto& [key, values] : delays)
        result.summary.delays.push_back({scenario, cb, key.first, key.second, min_statistic(values),
                                         mode_statistic(values, config.mode_bin_s)});
    }
  for (auto scenario : config.scenarios)
    for (double e : grid)
      result.summary.best.push_back({scenario, e, select_best_codebook(result.points, scenario, e)});
  return result;
}

}  // namespace mmvr
