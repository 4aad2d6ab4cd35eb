#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "driftk/experiment.hpp"
#include "driftk/presets.hpp"

namespace {

int run_cli(int argc, char** argv) {
  CLI::App app{"driftk: adaptive sample-size policies for drifting stochastic "
               "optimization"};

  std::string config_path;
  std::string preset;
  std::string out_dir;
  std::uint64_t seed = 0;
  int runs = 0;
  bool force = false;

  auto* config_opt =
      app.add_option("--config", config_path, "INI experiment file");
  auto* preset_opt = app.add_option(
      "--preset", preset, "built-in experiment (use `list` to enumerate)");
  auto* seed_opt =
      app.add_option("--seed", seed, "base seed, overrides config and env");
  auto* runs_opt = app.add_option("--runs", runs, "number of seeded runs");
  app.add_option("--out", out_dir, "results directory (default results/<name>)");
  app.add_flag("--force", force, "overwrite a non-empty results directory");
  config_opt->excludes(preset_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (preset == "list") {
      for (const auto& name : driftk::preset_names()) {
        std::cout << name << '\n';
      }
      return 0;
    }
    driftk::Config cfg;
    if (!preset.empty()) {
      cfg = driftk::preset_config(preset);
    } else if (!config_path.empty()) {
      cfg = driftk::parse_config_file(config_path);
    } else {
      std::cerr << "error: pass --config PATH or --preset NAME\n";
      return 2;
    }

    // Seed precedence: --seed beats DRIFTK_SEED beats the config value.
    if (const char* env = std::getenv("DRIFTK_SEED");
        env && seed_opt->count() == 0) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0') {
        std::cerr << "error: DRIFTK_SEED is not an unsigned integer: \"" << env
                  << "\"\n";
        return 2;
      }
      cfg.run.seed = static_cast<std::uint64_t>(v);
    }
    if (seed_opt->count() > 0) cfg.run.seed = seed;
    if (runs_opt->count() > 0) {
      if (runs < 1) {
        std::cerr << "error: --runs must be >= 1\n";
        return 2;
      }
      cfg.run.runs = runs;
    }
    if (out_dir.empty()) out_dir = "results/" + cfg.name;

    driftk::ExperimentResult result = driftk::run_experiment(cfg);
    driftk::write_experiment(result, out_dir, force);

    std::cout << "wrote " << out_dir << " (" << result.main_runs.size()
              << " runs of " << cfg.run.horizon << " steps, seed "
              << result.cfg.run.seed << ")\n";
    long warnings = 0;
    for (const auto& run : result.main_runs) {
      warnings += static_cast<long>(run.warnings.size());
    }
    if (warnings > 0) {
      std::cout << warnings << " warning(s); see summary.json\n";
    }
    return 0;
  } catch (const driftk::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}

} // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
