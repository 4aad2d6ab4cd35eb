#include "driftk/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <optional>
#include <stdexcept>

#include <json.hpp>

#include "driftk/planner.hpp"

namespace driftk {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string opt17(const std::optional<double>& v) {
  return v ? g17(*v) : std::string();
}

long total_samples(const RunResult& run) {
  long total = 0;
  for (const auto& rec : run.records) total += rec.k_n;
  return total;
}

double total_cost(const RunResult& run) {
  return run.records.empty() ? 0.0 : run.records.back().cum_cost;
}

VecD xi_of(const RunResult& run) {
  VecD xi;
  xi.reserve(run.records.size());
  for (const auto& rec : run.records) xi.push_back(rec.xi);
  return xi;
}

std::optional<double> mean_opt(const std::vector<std::optional<double>>& vals) {
  double sum = 0.0;
  long count = 0;
  for (const auto& v : vals) {
    if (v) {
      sum += *v;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

std::optional<double> run_mean(const RunResult& run,
                               std::optional<double> RunRecord::* field) {
  std::vector<std::optional<double>> vals;
  vals.reserve(run.records.size());
  for (const auto& rec : run.records) vals.push_back(rec.*field);
  return mean_opt(vals);
}

struct MeanSd {
  std::optional<double> mean;
  std::optional<double> sd;
};

// Mean and sample standard deviation over the present values.
MeanSd mean_sd(const std::vector<std::optional<double>>& vals) {
  std::vector<double> xs;
  for (const auto& v : vals) {
    if (v) xs.push_back(*v);
  }
  if (xs.empty()) return {};
  double mean = std::accumulate(xs.begin(), xs.end(), 0.0) /
                static_cast<double>(xs.size());
  if (xs.size() == 1) return {mean, 0.0};
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / static_cast<double>(xs.size() - 1))};
}

void write_steps_csv(const fs::path& path, const std::vector<RunResult>& runs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "run,n,K_n,rho_hat,t_n,eps_hat,xi,excess_exact,test_loss,auc,cum_cost\n";
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (const auto& rec : runs[r].records) {
      out << r << ',' << rec.n << ',' << rec.k_n << ',' << g17(rec.rho_hat)
          << ',' << g17(rec.t_n) << ',' << g17(rec.eps_hat) << ','
          << g17(rec.xi) << ',' << opt17(rec.excess_exact) << ','
          << opt17(rec.test_loss) << ',' << opt17(rec.auc) << ','
          << g17(rec.cum_cost) << '\n';
    }
  }
}

void write_aggregate_csv(const fs::path& path, const std::vector<RunResult>& runs) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  const char* cols[] = {"K_n",   "rho_hat",      "t_n",       "eps_hat", "xi",
                        "excess_exact", "test_loss", "auc",     "cum_cost"};
  out << "n";
  for (const char* c : cols) out << ',' << c << "_mean," << c << "_sd";
  out << '\n';
  if (runs.empty()) return;
  std::size_t t = runs.front().records.size();
  for (std::size_t i = 0; i < t; ++i) {
    // One optional-valued sample per run for each column, in column order.
    std::vector<std::vector<std::optional<double>>> samples(9);
    for (const auto& run : runs) {
      const auto& rec = run.records.at(i);
      samples[0].push_back(static_cast<double>(rec.k_n));
      samples[1].push_back(rec.rho_hat);
      samples[2].push_back(rec.t_n);
      samples[3].push_back(rec.eps_hat);
      samples[4].push_back(rec.xi);
      samples[5].push_back(rec.excess_exact);
      samples[6].push_back(rec.test_loss);
      samples[7].push_back(rec.auc);
      samples[8].push_back(rec.cum_cost);
    }
    out << runs.front().records[i].n;
    for (const auto& col : samples) {
      MeanSd ms = mean_sd(col);
      out << ',' << (ms.mean ? g17(*ms.mean) : std::string()) << ','
          << (ms.sd ? g17(*ms.sd) : std::string());
    }
    out << '\n';
  }
}

ordered_json summarize_runs(const std::vector<RunResult>& runs, PhiKind phi) {
  ordered_json j;
  std::vector<std::optional<double>> excess, test_loss, auc;
  double sum_samples = 0.0;
  double sum_cost = 0.0;
  double sum_phi = 0.0;
  long saturated = 0;
  for (const auto& run : runs) {
    excess.push_back(run_mean(run, &RunRecord::excess_exact));
    test_loss.push_back(run_mean(run, &RunRecord::test_loss));
    auc.push_back(run_mean(run, &RunRecord::auc));
    sum_samples += static_cast<double>(total_samples(run));
    sum_cost += total_cost(run);
    VecD xi = xi_of(run);
    sum_phi += phi_loss(phi, xi);
    for (const auto& rec : run.records) saturated += rec.saturated ? 1 : 0;
  }
  auto n = static_cast<double>(runs.size());
  auto put_opt = [&](const char* key, const std::optional<double>& v) {
    if (v) {
      j[key] = *v;
    } else {
      j[key] = nullptr;
    }
  };
  put_opt("mean_excess_exact", mean_opt(excess));
  put_opt("mean_test_loss", mean_opt(test_loss));
  put_opt("mean_auc", mean_opt(auc));
  j["mean_total_samples"] = runs.empty() ? 0.0 : sum_samples / n;
  j["mean_total_cost"] = runs.empty() ? 0.0 : sum_cost / n;
  j["mean_phi"] = runs.empty() ? 0.0 : sum_phi / n;
  j["saturated_steps"] = saturated;
  return j;
}

void write_summary(const fs::path& path, const ExperimentResult& result) {
  const Config& cfg = result.cfg;
  ordered_json j;
  j["config"] = ordered_json::parse(config_to_json(cfg));

  PhiKind phi = PhiKind::max_increasing_run;
  if (cfg.cost.phi == "mean") phi = PhiKind::mean;
  if (cfg.cost.phi == "max") phi = PhiKind::max;

  ordered_json head = summarize_runs(result.main_runs, phi);
  head["runs"] = result.main_runs.size();
  head["horizon"] = cfg.run.horizon;
  head["eps"] = cfg.policy.eps;
  long covered = 0;
  for (const auto& run : result.main_runs) {
    auto m = run_mean(run, &RunRecord::excess_exact);
    if (m && *m <= cfg.policy.eps) ++covered;
  }
  head["runs_with_mean_excess_le_eps"] = covered;
  j["headline"] = head;

  if (!result.upfront_runs.empty() || !result.periodic_runs.empty()) {
    ordered_json base;
    if (!result.upfront_runs.empty()) {
      base["up-front"] = summarize_runs(result.upfront_runs, phi);
    }
    if (!result.periodic_runs.empty()) {
      base["periodic"] = summarize_runs(result.periodic_runs, phi);
    }
    j["baselines"] = base;
  }

  ordered_json per_run = ordered_json::array();
  for (std::size_t r = 0; r < result.main_runs.size(); ++r) {
    const RunResult& run = result.main_runs[r];
    ordered_json e;
    e["run"] = r;
    e["seed"] = cfg.run.seed + r;
    e["total_samples"] = total_samples(run);
    e["total_cost"] = total_cost(run);
    auto put_opt = [&](const char* key, const std::optional<double>& v) {
      if (v) {
        e[key] = *v;
      } else {
        e[key] = nullptr;
      }
    };
    put_opt("mean_excess_exact", run_mean(run, &RunRecord::excess_exact));
    put_opt("mean_test_loss", run_mean(run, &RunRecord::test_loss));
    put_opt("mean_auc", run_mean(run, &RunRecord::auc));
    VecD xi = xi_of(run);
    e["phi"] = phi_loss(phi, xi);
    if (!run.selected_lambda.empty()) e["selected_lambda"] = run.selected_lambda;
    per_run.push_back(std::move(e));
  }
  j["per_run"] = per_run;

  ordered_json warnings = ordered_json::array();
  for (std::size_t r = 0; r < result.main_runs.size(); ++r) {
    for (const auto& w : result.main_runs[r].warnings) {
      warnings.push_back("run " + std::to_string(r) + ": " + w);
    }
  }
  j["warnings"] = warnings;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

} // namespace

ExperimentResult run_experiment(const Config& resolved_cfg) {
  auto rc = resolve(resolved_cfg);
  const Config& cfg = rc->resolved;
  int runs = cfg.run.runs;

  ExperimentResult result;
  result.cfg = cfg;
  result.main_runs.resize(runs);
  bool with_baselines = cfg.run.compare != "none";
  if (with_baselines) {
    result.upfront_runs.resize(runs);
    result.periodic_runs.resize(runs);
  }

  // Cost-budget baselines do not depend on the main run, so build them once.
  std::vector<long> upfront_cost_schedule;
  std::vector<long> periodic_cost_schedule;
  if (cfg.run.compare == "cost") {
    upfront_cost_schedule =
        upfront_schedule_cost(rc->setup.cost, cfg.cost.budget, cfg.run.horizon);
    periodic_cost_schedule = periodic_schedule_cost(
        rc->setup.cost, cfg.cost.budget, cfg.run.horizon, cfg.policy.delta_t);
  }

  std::vector<std::string> errors(runs);
#if defined(DRIFTK_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic)
#endif
  for (int r = 0; r < runs; ++r) {
    try {
      std::uint64_t seed = cfg.run.seed + static_cast<std::uint64_t>(r);
      result.main_runs[r] = run_sequence(rc->setup, seed);
      if (!with_baselines) continue;
      RunSetup base = rc->setup;
      base.cv = nullptr;
      base.forced_schedule.clear();
      if (cfg.run.compare == "up-front") {
        // Match the samples the adaptive policy actually spent in this run.
        long total = total_samples(result.main_runs[r]);
        base.policy.kind = PolicyKind::up_front;
        base.policy.total_samples = total;
        result.upfront_runs[r] = run_sequence(base, seed);
        base.policy.kind = PolicyKind::periodic;
        result.periodic_runs[r] = run_sequence(base, seed);
      } else {
        base.policy.kind = PolicyKind::no_update;
        base.forced_schedule = upfront_cost_schedule;
        result.upfront_runs[r] = run_sequence(base, seed);
        base.forced_schedule = periodic_cost_schedule;
        result.periodic_runs[r] = run_sequence(base, seed);
      }
    } catch (const std::exception& e) {
      errors[r] = e.what();
      if (errors[r].empty()) errors[r] = "unknown error";
    }
  }
  for (int r = 0; r < runs; ++r) {
    if (!errors[r].empty()) {
      throw std::runtime_error("run " + std::to_string(r) + ": " + errors[r]);
    }
  }
  return result;
}

void write_experiment(const ExperimentResult& result, const std::string& out_dir,
                      bool force) {
  fs::path out(out_dir);
  if (fs::exists(out) && !fs::is_empty(out) && !force) {
    throw ConfigError("output directory \"" + out_dir +
                      "\" is not empty (pass --force to overwrite)");
  }
  fs::create_directories(out);

  write_steps_csv(out / "steps.csv", result.main_runs);
  write_aggregate_csv(out / "aggregate.csv", result.main_runs);
  if (!result.upfront_runs.empty()) {
    write_steps_csv(out / "baseline_upfront_steps.csv", result.upfront_runs);
    write_aggregate_csv(out / "baseline_upfront_aggregate.csv", result.upfront_runs);
  }
  if (!result.periodic_runs.empty()) {
    write_steps_csv(out / "baseline_periodic_steps.csv", result.periodic_runs);
    write_aggregate_csv(out / "baseline_periodic_aggregate.csv",
                        result.periodic_runs);
  }
  write_summary(out / "summary.json", result);
}

} // namespace driftk
