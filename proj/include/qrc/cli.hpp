#pragma once

// Experiment harness behind the `qrc` command-line tool.
//
// Every command is also callable as a function so tests drive the same code
// paths as the binary. Variant i of any run is seeded with
// mix_seed(master_seed, i) (see random.hpp), which makes all outputs
// independent of the worker count.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrc/engine.hpp"
#include "qrc/levelio.hpp"
#include "qrc/metrics.hpp"

namespace qrc::cli {

enum class SweepAxis { Temperature, Qubits, Depol };

std::string to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& name);

enum class Baseline { Unigram, Markov };

std::string to_string(Baseline baseline);

struct ExperimentConfig {
  std::filesystem::path level_path;
  std::filesystem::path rules_path;        // optional
  std::filesystem::path calibration_path;  // optional; switches the reservoir to noisy mode
  std::filesystem::path model_path = "model.qrc";
  std::filesystem::path output_dir = "out";

  ReservoirConfig reservoir;
  TrainConfig train;
  EngineConfig engine;
  GenerationConfig generation;  // length 0 means "match the training level"

  SweepAxis axis = SweepAxis::Temperature;
  std::vector<double> sweep_values{1.0};
  std::size_t variants = 100;
  std::uint64_t master_seed = 0;
  std::size_t workers = 0;  // 0: hardware concurrency
  std::vector<std::size_t> lengths;  // originality L values; empty means 2..20
  bool plots = false;

  std::vector<std::size_t> originality_lengths() const;
  void validate() const;
};

/// Resolved configuration for provenance. The worker count is left out on
/// purpose so that echoes are identical across scheduling settings.
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Mean of per-variant rates, with counts summed over variants.
struct AggregatedErrors {
  std::size_t broken = 0;
  std::size_t eligible = 0;
  MeanStd rate;
};

struct SweepPoint {
  std::string label;  // sweep value or baseline name as written to CSV
  OriginalityCurve originality;
  std::optional<AggregatedErrors> transitions;  // needs rules with follow directives
  std::optional<AggregatedErrors> ordered;      // needs rules with order directives
  std::optional<MeanStd> save_points;           // needs a save directive
  std::optional<double> final_loss;
  double seconds = 0.0;
  std::vector<TokenSequence> variants;
};

struct SweepResult {
  std::vector<SweepPoint> points;
};

struct TrainSummary {
  double final_loss = 0.0;
  std::vector<double> loss_history;
};

/// Trains on the level and writes the model file.
TrainSummary cmd_train(const ExperimentConfig& config);
/// Writes `variants` level files (variant_000.lvl, ...) into the output directory.
std::vector<std::filesystem::path> cmd_generate(const ExperimentConfig& config);
/// Runs the configured sweep and writes originality.csv, errors.csv,
/// ordered_errors.csv, savepoints.csv and summary.csv.
SweepResult cmd_sweep(const ExperimentConfig& config);
SweepResult cmd_baseline(const ExperimentConfig& config, const std::vector<Baseline>& which);
/// Scores externally supplied level files against the original level.
SweepResult cmd_evaluate(const ExperimentConfig& config, const std::vector<std::filesystem::path>& files);

/// Scores variants against the original level; exposed for tests.
SweepPoint evaluate_variants(std::string label, std::vector<TokenSequence> variants, const Level& original,
                             const std::optional<ConstraintRules>& rules, const std::vector<std::size_t>& lengths);

/// Entry point of the binary. Exit codes: 0 success, 1 usage, 2 data error,
/// 3 numeric failure.
int run(int argc, char** argv);

}  // namespace qrc::cli
