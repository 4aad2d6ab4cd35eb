#pragma once

#include <string>
#include <vector>

#include "driftk/config.hpp"
#include "driftk/runner.hpp"

namespace driftk {

// A full multi-run experiment: the configured policy across `runs` seeded
// repetitions, plus comparison baselines when [run] compare asks for them.
// Baselines are matched per run: sample-budget baselines (compare=up-front)
// receive exactly the samples the main policy spent in that run, cost-budget
// baselines (compare=cost) receive the same monetary budget.
struct ExperimentResult {
  Config cfg; // resolved
  std::vector<RunResult> main_runs;
  std::vector<RunResult> upfront_runs;
  std::vector<RunResult> periodic_runs;
};

ExperimentResult run_experiment(const Config& resolved_cfg);

// Writes out_dir/steps.csv, out_dir/aggregate.csv (mean and sample SD across
// runs, per step), baseline_*.csv when baselines ran, and summary.json with
// the full resolved config plus headline metrics. Refuses to reuse a
// non-empty directory unless force is set.
void write_experiment(const ExperimentResult& result, const std::string& out_dir,
                      bool force);

} // namespace driftk
