// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>

#include "mmvr/beamforming.hpp"
#include "mmvr/qos.hpp"
#include "mmvr/results_csv.hpp"
#include "mmvr/runner.hpp"
#include "test_support.hpp"

using namespace mmvr;
using mmvr::test::random_complex;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

// The default sweep is shared by criteria 3 and 5 to 8.
const SweepContext& default_context() {
  static const SweepContext context{SweepConfig{}};
  return context;
}

const SweepResult& default_result() {
  static const SweepResult result = run_sweep(default_context());
  return result;
}

Outcome svd_contract() {
  const auto start = Clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> dim(1, 8);
  double worst_rec = 0, worst_unit = 0;
  bool ordered = true;
  for (int k = 0; k < 1000; ++k) {
    const int rows = dim(rng), cols = dim(rng);
    const ComplexMatrixXd m = random_complex(rows, cols, rng);
    const auto f = svd(m);
    ComplexMatrixXd sigma = ComplexMatrixXd::Zero(rows, cols);
    for (Eigen::Index s = 0; s < f.singular_values.size(); ++s) {
      sigma(s, s) = f.singular_values(s);
      if (f.singular_values(s) < 0) ordered = false;
      if (s > 0 && f.singular_values(s) > f.singular_values(s - 1)) ordered = false;
    }
    worst_rec = std::max(worst_rec, (f.left * sigma * f.right.adjoint() - m).norm() / m.norm());
    worst_unit = std::max({worst_unit, unitarity_error(f.left), unitarity_error(f.right)});
  }
  const double elapsed = seconds_since(start);
  std::ostringstream os;
  os << "max reconstruction " << worst_rec << ", max unitarity " << worst_unit << ", "
     << elapsed << " s";
  return {worst_rec < 1e-9 && worst_unit < 1e-9 && ordered && elapsed < 5.0, os.str()};
}

Outcome optimality_bound() {
  std::mt19937_64 rng(77);
  const int n_sc = 64;
  double worst_excess = -1e300, worst_reduction = 0;
  for (const auto& cb : default_codebooks()) {
    for (int set = 0; set < 200; ++set) {
      std::vector<ComplexMatrixXd> channels;
      for (int n = 0; n < n_sc; ++n) channels.push_back(random_complex(1, cb.n_tx, rng));
      const auto hybrid = design_link(channels, cb, 1.0);
      const ComplexMatrixXd g = ComplexMatrixXd::Identity(1, 1);
      const ComplexMatrixXd p = ComplexMatrixXd::Identity(cb.n_tx, cb.n_tx);
      const auto reduced = design_link_with_analog(channels, g, p, 1, 1.0);
      for (int n = 0; n < n_sc; ++n) {
        const auto fd = full_digital(channels[n], 1);
        const double full = std::abs(effective_channel(fd.combiner, channels[n], fd.precoder)(0, 0));
        worst_excess = std::max(worst_excess, std::sqrt(hybrid.effective_gain(n)) - full);
        worst_reduction =
            std::max(worst_reduction, std::abs(std::sqrt(reduced.effective_gain(n)) - full));
      }
    }
  }
  std::ostringstream os;
  os << "max hybrid - full " << worst_excess << ", max reduction gap " << worst_reduction;
  return {worst_excess <= 1e-9 && worst_reduction <= 1e-9, os.str()};
}

Outcome constraint_conformance() {
  const auto& ctx = default_context();
  double modulus = 0, unitarity = 0;
  int count = 0;
  for (std::size_t c = 0; c < ctx.codebooks().size(); ++c)
    for (int i = 0; i < ctx.topology().num_users(); ++i)
      for (int j = 0; j < ctx.topology().num_aps(); ++j) {
        const auto d = diagnose(ctx.designs(c).at(i, j));
        modulus = std::max({modulus, d.precoder_modulus_sq_error, d.combiner_modulus_sq_error});
        unitarity = std::max(unitarity, d.semi_unitarity_error);
        ++count;
      }
  bool no_de = true;
  for (const auto& r : default_result().records)
    if (r.violations.find('d') != std::string::npos || r.violations.find('e') != std::string::npos)
      no_de = false;
  std::ostringstream os;
  os << count << " solutions, max modulus^2 error " << modulus << ", max semi-unitarity error "
     << unitarity;
  return {modulus <= 1e-12 && unitarity <= 1e-9 && no_de, os.str()};
}

// Independent form of the interference sums: visit every (b, k) pair once
// and classify it.
double brute_force_sinr(int user, int ap, const std::vector<double>& user_power,
                        const Eigen::MatrixXd& g, double noise, bool downlink,
                        const std::vector<double>& p) {
  double interference = 0.0;
  for (int b = 0; b < g.cols(); ++b)
    for (int k = 0; k < g.rows(); ++k) {
      if (k == user) continue;
      const double pk = downlink ? p[b] : user_power[k];
      interference += pk * g(k, b);  // same cell (b == ap) or other cell alike
    }
  const double signal = (downlink ? p[ap] : user_power[user]) * g(user, ap);
  return signal / (noise + interference);
}

Outcome interference_oracle() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0;
  int evaluated = 0;
  auto compare = [&](double fast, double slow) {
    const double rel = slow == 0.0 ? std::abs(fast) : std::abs(fast - slow) / std::abs(slow);
    worst = std::max(worst, rel);
    ++evaluated;
  };
  for (int users = 1; users <= 3; ++users)
    for (int aps = 1; aps <= 2; ++aps)
      for (int trial = 0; trial < 200; ++trial) {
        Eigen::MatrixXd g(users, aps);
        for (Eigen::Index e = 0; e < g.size(); ++e) g(e) = std::pow(10.0, -12.0 * unit(rng));
        std::vector<double> pu(users), pb(aps);
        for (auto& x : pu) x = unit(rng);
        for (auto& x : pb) x = unit(rng);
        const double noise = std::pow(10.0, -14.0 * unit(rng));
        for (int i = 0; i < users; ++i)
          for (int j = 0; j < aps; ++j) {
            compare(sinr_ul(i, j, pu, g, noise), brute_force_sinr(i, j, pu, g, noise, false, pb));
            compare(sinr_dl(i, j, pb, g, noise), brute_force_sinr(i, j, pu, g, noise, true, pb));
          }
      }
  // Simulator-produced gain tables, including a three-user layout.
  for (int users : {2, 3}) {
    SweepConfig cfg;
    cfg.num_users = users;
    cfg.random_placement = users == 3;
    cfg.channel.grid.n_sc = 8;
    cfg.n_t = {4};
    cfg.n_rf = {2};
    const SweepContext ctx(cfg);
    std::vector<double> pu(users, cfg.user_power_w()), pb(2, cfg.p_b);
    const double noise = noise_power(7.0, cfg.noise_reference_w());
    for (int n = 0; n < 8; ++n) {
      const Eigen::MatrixXd g = ctx.uplink().gains(n);
      for (int i = 0; i < users; ++i)
        for (int j = 0; j < 2; ++j)
          compare(sinr_ul(i, j, pu, g, noise), brute_force_sinr(i, j, pu, g, noise, false, pb));
    }
    Eigen::MatrixXd dl(users, 2);
    for (int i = 0; i < users; ++i)
      for (int j = 0; j < 2; ++j) dl(i, j) = aggregate_gain(ctx.dl_gains(0, i, j), GainAggregation::Mean);
    for (int i = 0; i < users; ++i)
      for (int j = 0; j < 2; ++j)
        compare(sinr_dl(i, j, pb, dl, noise), brute_force_sinr(i, j, pu, dl, noise, true, pb));
  }
  std::ostringstream os;
  os << evaluated << " SINR values, max relative difference " << worst;
  return {worst < 1e-12, os.str()};
}

Outcome utility_boundaries() {
  bool exact = true;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(1e-6, 1e3);
  for (int k = 0; k < 1000; ++k) {
    const double gamma = u(rng), dmax = gamma + u(rng);
    if (conditional_utility(gamma, dmax, gamma) != 1.0) exact = false;
    if (conditional_utility(dmax, dmax, gamma) != 0.0) exact = false;
  }
  int records = 0;
  bool in_range = true;
  for (const auto& r : default_result().records) {
    if (!r.utility) continue;
    ++records;
    if (!(*r.utility >= 0.0 && *r.utility <= 1.0)) in_range = false;
  }
  std::ostringstream os;
  os << "boundary identities " << (exact ? "exact" : "violated") << ", " << records
     << " record utilities in [0,1]: " << (in_range ? "yes" : "no");
  return {exact && in_range && records > 0, os.str()};
}

using LinkKey = std::tuple<GainAggregation, int, int, int, int>;  // scenario, tx, rf, ap, user

Outcome delay_trend() {
  std::map<LinkKey, std::vector<std::pair<double, double>>> series;
  for (const auto& r : default_result().records)
    series[{r.scenario, r.n_tx, r.n_rf, r.ap, r.user}].push_back({r.esn0_db, r.d_trans_s});
  int violations = 0, steps = 0;
  for (auto& [key, s] : series) {
    std::sort(s.begin(), s.end());
    for (std::size_t k = 1; k < s.size(); ++k, ++steps)
      if (!(s[k].second <= s[k - 1].second)) ++violations;
  }
  std::ostringstream os;
  os << series.size() << " delay curves, " << steps << " steps, " << violations << " increases";
  return {violations == 0 && steps > 0, os.str()};
}

Outcome scenario_ordering() {
  const auto& result = default_result();
  std::map<std::tuple<GainAggregation, int, int, double, int, int>, const LinkRecord*> index;
  for (const auto& r : result.records) index[{r.scenario, r.n_tx, r.n_rf, r.esn0_db, r.ap, r.user}] = &r;

  int compared = 0, violations = 0;
  for (const auto& r : result.records) {
    if (r.scenario != GainAggregation::Min) continue;
    const auto it = index.find({GainAggregation::Mean, r.n_tx, r.n_rf, r.esn0_db, r.ap, r.user});
    if (it == index.end()) continue;
    const LinkRecord& mean = *it->second;
    ++compared;
    if (!(r.d_trans_s >= mean.d_trans_s)) ++violations;
    if (r.utility && mean.utility && !(*r.utility <= *mean.utility)) ++violations;
  }
  std::map<std::tuple<int, int, double>, double> mean_objective;
  for (const auto& p : result.points)
    if (p.scenario == GainAggregation::Mean)
      mean_objective[{p.codebook.n_tx, p.codebook.n_rf, p.esn0_db}] = p.objective;
  for (const auto& p : result.points)
    if (p.scenario == GainAggregation::Min &&
        !(p.objective <= mean_objective.at({p.codebook.n_tx, p.codebook.n_rf, p.esn0_db})))
      ++violations;

  // Sweep-averaged min-scenario utility against antenna count.
  std::map<int, std::vector<std::pair<int, double>>> by_rf;
  for (const auto& u : result.summary.utilities)
    if (u.scenario == GainAggregation::Min) by_rf[u.codebook.n_rf].push_back({u.codebook.n_tx, u.mean_utility});
  int trend_breaks = 0;
  for (auto& [rf, curve] : by_rf) {
    std::sort(curve.begin(), curve.end());
    for (std::size_t k = 1; k < curve.size(); ++k)
      if (!(curve[k].second >= curve[k - 1].second)) ++trend_breaks;
  }
  std::ostringstream os;
  os << compared << " link pairs, " << violations << " ordering violations, " << trend_breaks
     << " antenna-trend breaks";
  return {compared > 0 && violations == 0 && trend_breaks == 0, os.str()};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "mmvr_acceptance";
  std::filesystem::create_directories(dir);
  const auto start = Clock::now();
  const SweepResult first = run_sweep(SweepConfig{});
  const double elapsed = seconds_since(start);
  const SweepResult second = run_sweep(SweepConfig{}, 3);
  write_results_csv(first.records, dir / "a.csv");
  write_results_csv(second.records, dir / "b.csv");
  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const std::string a = slurp(dir / "a.csv"), b = slurp(dir / "b.csv");
  std::filesystem::remove_all(dir);
  std::ostringstream os;
  os << first.points.size() << " points, " << first.records.size() << " records, "
     << (a == b ? "identical" : "different") << " CSV bytes (" << a.size() << "), full sweep "
     << elapsed << " s";
  return {a == b && !a.empty() && first.records.size() == 1008 && elapsed < 60.0, os.str()};
}

struct OracleRow {
  GainAggregation scenario;
  int ap, user;
  double rate_dl, rate_ul, d_trans, d_proc, d_queue, d_total, utility;
};

// Frozen from tests/oracle/hand_oracle.py.
const OracleRow kOracle[] = {
    {GainAggregation::Mean, 1, 1, 5.4553207175284964e-07, 23357.662412395806, 22524798515.543835, 1e-08, 499999999.99999994, 23024798515.543835, 0},
    {GainAggregation::Mean, 1, 2, 4.8064717637601589e-08, 447.24618417340542, 255655304014.26096, 1e-08, 499999999.99999994, 256155304014.26096, 0},
    {GainAggregation::Mean, 2, 1, 7.0656147735614006e-08, 834.02157049158382, 173912679841.82474, 1e-08, 499999999.99999994, 174412679841.82474, 0},
    {GainAggregation::Mean, 2, 2, 1.4224898538971537e-06, 113042.36095911484, 8638374443.4696693, 1e-08, 499999999.99999994, 9138374443.4696693, 0},
    {GainAggregation::Min, 1, 1, 5.4553207175284964e-07, 23357.662412395806, 22524798515.543835, 1e-08, 499999999.99999994, 23024798515.543835, 0},
    {GainAggregation::Min, 1, 2, 4.8064717637601563e-08, 447.24618417340542, 255655304014.26111, 1e-08, 499999999.99999994, 256155304014.26111, 0},
    {GainAggregation::Min, 2, 1, 7.0656147735613993e-08, 834.02157049158382, 173912679841.82477, 1e-08, 499999999.99999994, 174412679841.82477, 0},
    {GainAggregation::Min, 2, 2, 1.422489853897153e-06, 113042.36095911484, 8638374443.4696732, 1e-08, 499999999.99999994, 9138374443.4696732, 0},
};

Outcome hand_oracle() {
  double worst = 0;
  int matched = 0;
  auto compare = [&](double sim, double ref) {
    // Relative agreement; an exactly-zero reference needs an absolute bound.
    const double err = ref == 0.0 ? (std::abs(sim) <= 1e-12 ? 0.0 : 1.0) : std::abs(sim - ref) / std::abs(ref);
    worst = std::max(worst, err);
  };
  for (auto scenario : {GainAggregation::Mean, GainAggregation::Min}) {
    const auto eval = evaluate_sweep_point(SweepConfig{}, scenario, {2, 1, 1, 1}, 10.0);
    for (const auto& row : kOracle) {
      if (row.scenario != scenario) continue;
      for (const auto& r : eval.records) {
        if (r.ap != row.ap || r.user != row.user) continue;
        ++matched;
        compare(r.rate_dl_bps, row.rate_dl);
        compare(r.rate_ul_bps, row.rate_ul);
        compare(r.d_trans_s, row.d_trans);
        compare(r.d_proc_s, row.d_proc);
        compare(r.d_queue_s, row.d_queue);
        compare(r.d_total_s, row.d_total);
        compare(r.utility.value_or(-1.0), row.utility);
      }
    }
  }
  std::ostringstream os;
  os << matched << " links, max relative error " << worst;
  return {matched == 8 && worst < 1e-6, os.str()};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"1 SVD contract", svd_contract},
      {"2 beamforming optimality bound", optimality_bound},
      {"3 constraint conformance", constraint_conformance},
      {"4 interference oracle", interference_oracle},
      {"5 utility boundary identities", utility_boundaries},
      {"6 delay trend over Es/N0", delay_trend},
      {"7 scenario ordering", scenario_ordering},
      {"8 determinism and runtime", determinism},
      {"9 end-to-end hand oracle", hand_oracle},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += o.pass ? 0 : 1;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  }
  std::printf("%d of 9 criteria passed\n", 9 - failures);
  return failures == 0 ? 0 : 1;
}
